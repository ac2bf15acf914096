use rand::Rng;

use super::{hom_basis, require_semisimple, Config, Representation};
use crate::error::{Error, Result};
use crate::fields::Scalar;
use crate::linalg::{factor_poly_seeded, spin, Matrix, Subspace};

/// Largest number of projective points the exhaustive oracle will visit.
pub const ORACLE_POINT_LIMIT: u64 = 1 << 14;

const MEATAXE_TRIES: usize = 40;
const WORD_POOL: usize = 16;
const END_CANDIDATES: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IrreducibilityMethod {
    OneDimensional,
    MeatAxe,
    ExhaustiveSpin,
    EndomorphismField,
}

impl IrreducibilityMethod {
    pub fn name(self) -> &'static str {
        match self {
            IrreducibilityMethod::OneDimensional => "one_dimensional",
            IrreducibilityMethod::MeatAxe => "meataxe",
            IrreducibilityMethod::ExhaustiveSpin => "exhaustive_spin",
            IrreducibilityMethod::EndomorphismField => "endomorphism_field",
        }
    }
}

#[derive(Clone, Debug)]
pub struct IrreducibilityVerdict {
    pub irreducible: bool,
    /// A proper nonzero invariant subspace whenever `irreducible` is false.
    pub witness: Option<Subspace>,
    pub method: IrreducibilityMethod,
}

impl IrreducibilityVerdict {
    fn irreducible(method: IrreducibilityMethod) -> Self {
        IrreducibilityVerdict { irreducible: true, witness: None, method }
    }

    fn reducible(witness: Subspace, method: IrreducibilityMethod) -> Self {
        IrreducibilityVerdict { irreducible: false, witness: Some(witness), method }
    }
}

/// `(q^d - 1) / (q - 1)`, saturating.
fn projective_points(q: u64, d: usize) -> u64 {
    let mut total: u64 = 0;
    let mut pw: u64 = 1;
    for _ in 0..d {
        total = total.saturating_add(pw);
        pw = pw.saturating_mul(q);
    }
    total
}

pub fn oracle_feasible(m: &Representation) -> bool {
    projective_points(m.field().order(), m.dim()) <= ORACLE_POINT_LIMIT
}

fn is_invariant(m: &Representation, w: &Subspace) -> bool {
    w.basis().iter().all(|v| m.images().iter().all(|a| w.contains(&a.apply(v))))
}

fn proper(w: &Subspace) -> bool {
    w.dim() > 0 && !w.is_full()
}

pub fn is_irreducible(m: &Representation) -> Result<IrreducibilityVerdict> {
    is_irreducible_with(m, &Config::default())
}

/// Decides irreducibility. Reducible verdicts carry an invariant subspace
/// which has been checked against every generator image.
pub fn is_irreducible_with(m: &Representation, cfg: &Config) -> Result<IrreducibilityVerdict> {
    if m.dim() == 0 {
        return Err(Error::ZeroModule);
    }
    require_semisimple(m.group().order(), m.field())?;
    let verdict = decide(m, cfg)?;
    if let Some(w) = &verdict.witness {
        if !proper(w) || !is_invariant(m, w) {
            return Err(Error::Certification("reducibility witness is not a proper invariant subspace".into()));
        }
    }
    if cfg.force_oracle && oracle_feasible(m) {
        let oracle = exhaustive_spin_oracle(m).expect("feasibility checked");
        if oracle.is_none() != verdict.irreducible {
            return Err(Error::Certification("irreducibility verdict disagrees with exhaustive spin".into()));
        }
    }
    Ok(verdict)
}

fn decide(m: &Representation, cfg: &Config) -> Result<IrreducibilityVerdict> {
    let field = m.field();
    let d = m.dim();
    if d == 1 {
        return Ok(IrreducibilityVerdict::irreducible(IrreducibilityMethod::OneDimensional));
    }
    if m.images().is_empty() {
        // every subspace is invariant
        let mut e0 = vec![0; d];
        e0[0] = 1;
        return Ok(IrreducibilityVerdict::reducible(
            Subspace::spanned_by(field, d, &[e0]),
            IrreducibilityMethod::MeatAxe,
        ));
    }
    if let Some(v) = meataxe(m, cfg)? {
        return Ok(v);
    }
    if oracle_feasible(m) {
        let verdict = match exhaustive_spin_oracle(m).expect("feasibility checked") {
            None => IrreducibilityVerdict::irreducible(IrreducibilityMethod::ExhaustiveSpin),
            Some(w) => IrreducibilityVerdict::reducible(w, IrreducibilityMethod::ExhaustiveSpin),
        };
        return Ok(verdict);
    }
    endomorphism_field_check(m, cfg)
}

/// Seeded random element of the enveloping algebra: a K-combination of a
/// pool of short words in the generator images.
fn random_algebra_element(pool: &mut Vec<Matrix>, rng: &mut impl Rng, q: u32) -> Matrix {
    if pool.len() < WORD_POOL {
        let a = rng.gen_range(0..pool.len());
        let b = rng.gen_range(0..pool.len());
        let prod = pool[a].mul(&pool[b]);
        pool.push(prod);
    }
    let field = pool[0].field().clone();
    let d = pool[0].rows();
    let mut theta = Matrix::zeros(&field, d, d);
    loop {
        for w in pool.iter() {
            theta.add_scaled(rng.gen_range(0..q), w);
        }
        if !theta.is_zero() {
            return theta;
        }
    }
}

/// Holt-Rees style test. `None` when no attempt was conclusive.
fn meataxe(m: &Representation, cfg: &Config) -> Result<Option<IrreducibilityVerdict>> {
    let field = m.field();
    let d = m.dim();
    let q = field.order() as u32;
    let gens = m.images();
    let gens_t: Vec<Matrix> = gens.iter().map(Matrix::transpose).collect();
    let mut rng = cfg.rng(0x3ea7);
    let mut pool = gens.to_vec();
    for attempt in 0..MEATAXE_TRIES {
        let theta = random_algebra_element(&mut pool, &mut rng, q);
        let mu = theta.min_poly();
        let fac = factor_poly_seeded(&mu, cfg.seed.wrapping_add(attempt as u64))?;
        for (f, _) in &fac.factors {
            let deg = f.degree().expect("nonzero factor");
            let ft = theta.eval_poly(f);
            let kernel = ft.nullspace();
            let Some(v) = kernel.first() else { continue };
            let u = spin(field, d, std::slice::from_ref(v), gens);
            if !u.is_full() {
                return Ok(Some(IrreducibilityVerdict::reducible(u, IrreducibilityMethod::MeatAxe)));
            }
            let kernel_t = ft.transpose().nullspace();
            let ut = spin(field, d, &kernel_t[..1], &gens_t);
            if !ut.is_full() {
                return Ok(Some(IrreducibilityVerdict::reducible(ut.annihilator(), IrreducibilityMethod::MeatAxe)));
            }
            if kernel.len() == deg {
                return Ok(Some(IrreducibilityVerdict::irreducible(IrreducibilityMethod::MeatAxe)));
            }
        }
    }
    Ok(None)
}

/// Independent check: spin one vector per projective point. Returns `None`
/// for irreducible modules and a proper invariant subspace otherwise, or
/// `None` wrapped in `None` when the search space exceeds the limit.
pub fn exhaustive_spin_oracle(m: &Representation) -> Option<Option<Subspace>> {
    if !oracle_feasible(m) {
        return None;
    }
    let field = m.field();
    let d = m.dim();
    let q = field.order() as Scalar;
    // vectors whose first nonzero coordinate is 1
    for lead in 0..d {
        let free = d - lead - 1;
        let mut tail = vec![0 as Scalar; free];
        loop {
            let mut v = vec![0; d];
            v[lead] = 1;
            v[lead + 1..].copy_from_slice(&tail);
            let u = spin(field, d, &[v], m.images());
            if !u.is_full() {
                return Some(Some(u));
            }
            let mut i = 0;
            while i < free {
                tail[i] += 1;
                if tail[i] < q {
                    break;
                }
                tail[i] = 0;
                i += 1;
            }
            if i == free {
                break;
            }
        }
    }
    Some(None)
}

/// Certificate through the endomorphism algebra `E = End_KG(M)`, valid for
/// semisimple `M`: `M` is irreducible iff `E` is a division algebra, hence a
/// field. An element of `E` whose minimal polynomial is irreducible of degree
/// `dim E` generates `E`, proving it a field; an element with reducible
/// minimal polynomial `f g` yields the invariant subspace `ker f(B)`.
pub fn endomorphism_field_check(m: &Representation, cfg: &Config) -> Result<IrreducibilityVerdict> {
    let field = m.field();
    let basis = hom_basis(m, m)?;
    let e = basis.len();
    if e == 1 {
        return Ok(IrreducibilityVerdict::irreducible(IrreducibilityMethod::EndomorphismField));
    }
    let q = field.order() as u32;
    let mut rng = cfg.rng(0xe4d);
    for attempt in 0..END_CANDIDATES {
        let b = if attempt < e {
            basis[attempt].clone()
        } else {
            let mut b = Matrix::zeros(field, m.dim(), m.dim());
            for x in &basis {
                b.add_scaled(rng.gen_range(0..q), x);
            }
            b
        };
        let mu = b.min_poly();
        let fac = factor_poly_seeded(&mu, cfg.seed.wrapping_add(attempt as u64))?;
        let (f, mult) = &fac.factors[0];
        if fac.factors.len() > 1 || *mult > 1 {
            let kernel = b.eval_poly(f).nullspace();
            let w = Subspace::spanned_by(field, m.dim(), &kernel);
            return Ok(IrreducibilityVerdict::reducible(w, IrreducibilityMethod::EndomorphismField));
        }
        if f.degree() == Some(e) {
            return Ok(IrreducibilityVerdict::irreducible(IrreducibilityMethod::EndomorphismField));
        }
    }
    Err(Error::Certification("endomorphism algebra test was inconclusive".into()))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fields::FieldSpec;
    use crate::groups::{group_from_permutations, Group};
    use crate::repr::induce;
    use crate::groups::Subgroup;

    fn cyclic(n: usize) -> Group {
        let perm: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        Arc::new(group_from_permutations(&[perm]).unwrap())
    }

    #[test]
    fn one_dimensional_is_irreducible() {
        let f7 = FieldSpec::prime(7).unwrap();
        let c3 = cyclic(3);
        let r = Representation::linear(&c3, &f7, &[2]).unwrap();
        assert!(is_irreducible(&r).unwrap().irreducible);
    }

    #[test]
    fn induced_module_of_c4_over_gf3() {
        let f3 = FieldSpec::prime(3).unwrap();
        let g = cyclic(4);
        let s = g.generators()[0];
        let h = Subgroup::generated(&g, &[g.mul(s, s)]).unwrap();
        let l = Representation::linear(h.group(), &f3, &[2]).unwrap();
        let ind = induce(&l, &h).unwrap();
        let v = is_irreducible(&ind).unwrap();
        assert!(v.irreducible);
        assert_eq!(exhaustive_spin_oracle(&ind).unwrap().map(|w| w.dim()), None);
        assert!(endomorphism_field_check(&ind, &Config::default()).unwrap().irreducible);
    }

    #[test]
    fn regular_rep_of_c2_splits() {
        let f7 = FieldSpec::prime(7).unwrap();
        let reg = Representation::regular(&cyclic(2), &f7);
        let v = is_irreducible(&reg).unwrap();
        assert!(!v.irreducible);
        let w = v.witness.unwrap();
        assert_eq!(w.dim(), 1);
        let line = &w.basis()[0];
        assert!(line == &vec![1, 1] || line == &vec![1, 6]);
        let e = endomorphism_field_check(&reg, &Config::default()).unwrap();
        assert!(!e.irreducible);
        assert!(is_invariant(&reg, e.witness.as_ref().unwrap()));
    }

    #[test]
    fn regular_rep_of_c3_over_gf5() {
        let f5 = FieldSpec::prime(5).unwrap();
        let reg = Representation::regular(&cyclic(3), &f5);
        assert!(!is_irreducible(&reg).unwrap().irreducible);
        let cfg = Config { seed: 9, force_oracle: true };
        assert!(!is_irreducible_with(&reg, &cfg).unwrap().irreducible);
    }

    #[test]
    fn zero_module_and_modular_case_rejected() {
        let f7 = FieldSpec::prime(7).unwrap();
        let c3 = cyclic(3);
        let z = Representation::from_images_unchecked(&c3, &f7, 0, vec![Matrix::zeros(&f7, 0, 0)]);
        assert_eq!(is_irreducible(&z).unwrap_err(), Error::ZeroModule);
        let f3 = FieldSpec::prime(3).unwrap();
        let t = Representation::trivial(&c3, &f3);
        assert!(matches!(is_irreducible(&t), Err(Error::CharacteristicDivides { .. })));
    }

    #[test]
    fn oracle_agrees_on_small_cases() {
        let f5 = FieldSpec::prime(5).unwrap();
        for n in [2usize, 3, 4] {
            let reg = Representation::regular(&cyclic(n), &f5);
            let v = is_irreducible(&reg).unwrap();
            let o = exhaustive_spin_oracle(&reg).unwrap();
            assert_eq!(v.irreducible, o.is_none());
        }
    }
}
