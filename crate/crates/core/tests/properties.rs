//! Randomized invariants of the library.

mod common;

use modrep::fields::Scalar;
use modrep::groups::{left_coset_reps, Subgroup};
use modrep::linalg::{factor_poly_seeded, Poly};
use modrep::repr::{
    decompose_with, induce, intertwining_number, irreducibles_of_group_with, is_irreducible_with, restrict, Config,
    Representation,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

const FIELDS: &[(u64, usize)] = &[(2, 1), (3, 1), (5, 1), (7, 1), (11, 1), (2, 2), (3, 2), (5, 2), (2, 3)];

fn small_instance(seed: u64) -> (Instance, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inst = random_instance(&mut rng, 24, SWEEP_FIELDS);
    (inst, rng)
}

fn random_subgroup(inst: &Instance, rng: &mut ChaCha8Rng) -> Subgroup {
    let g = inst.sd.group();
    let gens: Vec<usize> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..g.order())).collect();
    Subgroup::generated(g, &gens).unwrap()
}

fn random_irreducible(s: &Subgroup, inst: &Instance, rng: &mut ChaCha8Rng) -> Representation {
    let irr = irreducibles_of_group_with(s.group(), &inst.field, &Config::default()).unwrap();
    irr[rng.gen_range(0..irr.len())].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_inverse_and_distributivity(fi in 0..FIELDS.len(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let (p, k) = FIELDS[fi];
        let f = field(p, k);
        let q = f.order() as u32;
        let (a, b, c) = (a % q, b % q, c % q);
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a)), f.one());
            prop_assert_eq!(f.pow(a, (q - 1) as i64), f.one());
        }
    }

    #[test]
    fn factorization_multiplies_back(fi in 0..FIELDS.len(), coeffs in prop::collection::vec(any::<u32>(), 2..12), seed in any::<u64>()) {
        let (p, k) = FIELDS[fi];
        let f = field(p, k);
        let q = f.order() as u32;
        let mut c: Vec<Scalar> = coeffs.iter().map(|x| x % q).collect();
        let last = c.len() - 1;
        if c[last] == 0 {
            c[last] = 1;
        }
        let poly = Poly::new(&f, c);
        let fac = factor_poly_seeded(&poly, seed).unwrap();
        prop_assert_eq!(fac.product(&f), poly.clone());
        let total: usize = fac.factors.iter().map(|(g, m)| g.degree().unwrap() * m).sum();
        prop_assert_eq!(total, poly.degree().unwrap());
    }

    #[test]
    fn frobenius_reciprocity(seed in any::<u64>()) {
        let (inst, mut rng) = small_instance(seed);
        let h = random_subgroup(&inst, &mut rng);
        let w = random_irreducible(&h, &inst, &mut rng);
        let whole = Subgroup::whole(inst.sd.group());
        let v = random_irreducible(&whole, &inst, &mut rng);
        let lhs = intertwining_number(&induce(&w, &h).unwrap(), &v).unwrap();
        let rhs = intertwining_number(&w, &restrict(&v, &h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn induced_dimension_is_index_times_degree(seed in any::<u64>()) {
        let (inst, mut rng) = small_instance(seed);
        let h = random_subgroup(&inst, &mut rng);
        let w = random_irreducible(&h, &inst, &mut rng);
        let ind = induce(&w, &h).unwrap();
        prop_assert_eq!(ind.dim(), left_coset_reps(&h).len() * w.dim());
        prop_assert!(ind.check_relations().is_ok());
    }

    #[test]
    fn intertwining_is_symmetric_and_basis_free(seed in any::<u64>()) {
        let (inst, mut rng) = small_instance(seed);
        let whole = Subgroup::whole(inst.sd.group());
        let m = random_irreducible(&whole, &inst, &mut rng).direct_sum(&random_irreducible(&whole, &inst, &mut rng)).unwrap();
        let n = random_irreducible(&whole, &inst, &mut rng);
        let p = random_invertible(&inst.field, m.dim(), &mut rng);
        let m2 = m.change_basis(&p).unwrap();
        let i = intertwining_number(&m, &n).unwrap();
        prop_assert_eq!(i, intertwining_number(&n, &m).unwrap());
        prop_assert_eq!(i, intertwining_number(&m2, &n).unwrap());
    }

    #[test]
    fn decomposition_is_block_diagonal(seed in any::<u64>()) {
        let (inst, mut rng) = small_instance(seed);
        let whole = Subgroup::whole(inst.sd.group());
        let mut m = random_irreducible(&whole, &inst, &mut rng);
        for _ in 0..rng.gen_range(0..3) {
            m = m.direct_sum(&random_irreducible(&whole, &inst, &mut rng)).unwrap();
        }
        let m = m.change_basis(&random_invertible(&inst.field, m.dim(), &mut rng)).unwrap();
        let dec = decompose_with(&m, &Config::seeded(seed)).unwrap();
        prop_assert_eq!(block_diagonal_certificate(&m, &dec), Ok(()));
        for (s, _) in &dec.summands {
            let cfg = Config { seed, force_oracle: true };
            prop_assert!(is_irreducible_with(s, &cfg).unwrap().irreducible);
        }
    }
}
