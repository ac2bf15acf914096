//! Enumerated finite groups: permutation closures, semidirect products
//! `N ⋊ H` with abelian `N`, subgroups, cosets and double cosets.

mod finite;
mod semidirect;
mod subgroup;

pub use finite::{group_from_permutations, group_from_permutations_bounded, FiniteGroup, Group, DEFAULT_CLOSURE_BOUND};
pub use semidirect::{AbelianGroupSpec, IntMatrix, SemidirectGroup};
pub use subgroup::{
    conj_intersection, conjugate_subgroup, double_coset, double_coset_reps, left_coset_reps, left_coset_table,
    Subgroup,
};
