//! Shared generators for the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use modrep::fields::{FieldSpec, Scalar};
use modrep::groups::{group_from_permutations, AbelianGroupSpec, IntMatrix, SemidirectGroup};
use modrep::linalg::Matrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const S3_GF7: &str = r#"{"field": {"p": 7}, "N": {"moduli": [3]}, "H": {"perm_gens": [[1, 0]]}, "action": [[[-1]]]}"#;
pub const S3_GF5: &str = r#"{"field": {"p": 5}, "N": {"moduli": [3]}, "H": {"perm_gens": [[1, 0]]}, "action": [[[-1]]]}"#;
pub const D4_GF5: &str = r#"{"field": {"p": 5}, "N": {"moduli": [4]}, "H": {"perm_gens": [[1, 0]]}, "action": [[[-1]]]}"#;
/// C4 with the nontrivial character of its subgroup of order 2 over GF(3).
pub const C4_GF3: &str = r#"{"field": {"p": 3}, "N": {"moduli": [4]}, "H": {"perm_gens": []}, "action": [],
    "reps": {"L": {"subgroup": ["n0^2"], "images": [[[2]]]}}}"#;

const H_CATALOG: &[&[&[u32]]] = &[
    &[],
    &[&[1, 0]],
    &[&[1, 2, 0]],
    &[&[1, 2, 3, 0]],
    &[&[1, 0, 3, 2], &[2, 3, 0, 1]],
    &[&[1, 0, 2], &[1, 2, 0]],
    &[&[1, 2, 3, 4, 5, 0]],
];

const N_CATALOG: &[&[u64]] = &[
    &[2], &[3], &[4], &[5], &[6], &[7], &[8], &[9], &[10], &[11], &[12], &[13], &[2, 2], &[3, 3], &[2, 4], &[4, 4], &[2, 6],
];

/// (p, k) pairs used for the sweep.
pub const SWEEP_FIELDS: &[(u64, usize)] = &[(5, 1), (7, 1), (11, 1), (13, 1), (5, 2)];

/// GF(p^k) with a fixed irreducible polynomial for the extensions we use.
pub fn field(p: u64, k: usize) -> FieldSpec {
    let min_poly: Option<&[u64]> = match (p, k) {
        (_, 1) => None,
        (2, 2) => Some(&[1, 1, 1]),
        (2, 3) => Some(&[1, 1, 0, 1]),
        (3, 2) | (7, 2) => Some(&[1, 0, 1]),
        (3, 3) => Some(&[1, 2, 0, 1]),
        (5, 2) => Some(&[2, 1, 1]),
        _ => panic!("no minimal polynomial on file for GF({p}^{k})"),
    };
    FieldSpec::new(p, k, min_poly).unwrap()
}

pub struct Instance {
    pub sd: SemidirectGroup,
    pub field: FieldSpec,
    pub label: String,
}

fn random_action(n: &[u64], rng: &mut ChaCha8Rng) -> IntMatrix {
    let top = *n.iter().max().unwrap() as i64;
    (0..n.len()).map(|_| (0..n.len()).map(|_| rng.gen_range(0..top)).collect()).collect()
}

/// A random `N ⋊ H` with `|G| <= max_order` together with a field of
/// characteristic prime to `|G|`, by rejection sampling.
pub fn random_instance(rng: &mut ChaCha8Rng, max_order: usize, fields: &[(u64, usize)]) -> Instance {
    loop {
        let n = N_CATALOG[rng.gen_range(0..N_CATALOG.len())];
        let hg = H_CATALOG[rng.gen_range(0..H_CATALOG.len())];
        let perms: Vec<Vec<u32>> = hg.iter().map(|p| p.to_vec()).collect();
        let h = Arc::new(group_from_permutations(&perms).unwrap());
        let order = n.iter().product::<u64>() as usize * h.order();
        if order > max_order {
            continue;
        }
        let action: Vec<IntMatrix> = (0..perms.len()).map(|_| random_action(n, rng)).collect();
        let Ok(sd) = SemidirectGroup::new(AbelianGroupSpec::new(n.to_vec()).unwrap(), &h, action.clone()) else {
            continue;
        };
        let ok: Vec<_> = fields.iter().filter(|(p, _)| !(order as u64).is_multiple_of(*p)).collect();
        if ok.is_empty() {
            continue;
        }
        let &(p, k) = ok[rng.gen_range(0..ok.len())];
        let field = field(p, k);
        let label = format!("N={n:?} H={perms:?} action={action:?} over GF({})", field.order());
        return Instance { sd, field, label };
    }
}

pub fn random_matrix(field: &FieldSpec, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let q = field.order();
    let data: Vec<Scalar> = (0..rows * cols).map(|_| rng.gen_range(0..q) as Scalar).collect();
    Matrix::from_vec(field, rows, cols, data).unwrap()
}

pub fn random_invertible(field: &FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m = random_matrix(field, n, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Checks `P^-1 rho(g) P` is the direct sum of the summand images.
pub fn block_diagonal_certificate(
    m: &modrep::repr::Representation,
    dec: &modrep::repr::DecompositionResult,
) -> Result<(), String> {
    let conj = m.change_basis(&dec.change_of_basis).map_err(|e| e.to_string())?;
    if dec.block_dims().iter().sum::<usize>() != m.dim() {
        return Err("block dimensions do not add up".into());
    }
    for (slot, img) in conj.images().iter().enumerate() {
        let mut expected = Matrix::identity(m.field(), 0);
        for (s, mult) in &dec.summands {
            for _ in 0..*mult {
                expected = expected.direct_sum(&s.images()[slot]);
            }
        }
        if img != &expected {
            return Err(format!("generator {slot} is not block diagonal"));
        }
    }
    Ok(())
}
