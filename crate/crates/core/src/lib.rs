//! Exact computations with representations of finite groups over finite
//! fields whose characteristic does not divide the group order.
//!
//! The crate covers intertwining numbers, induction and restriction, a
//! MeatAxe-style irreducibility test and decomposition, double-coset
//! criteria for irreducibility and isomorphism of induced modules, and the
//! little-groups construction of all irreducible representations of
//! `N ⋊ H` with `N` abelian that have a one-dimensional `N`-constituent.

pub mod cli;
pub mod error;
pub mod fields;
pub mod groups;
pub mod linalg;
pub mod littlegroups;
pub mod mackey;
pub mod repr;

pub use error::{Error, Result};
