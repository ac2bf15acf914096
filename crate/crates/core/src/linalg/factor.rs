//! Factorization of univariate polynomials over GF(q): squarefree
//! decomposition, distinct-degree splitting, then Cantor–Zassenhaus
//! equal-degree splitting driven by a seeded generator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Poly;
use crate::error::{Error, Result};
use crate::fields::FieldSpec;

/// `f = unit * prod(factor^multiplicity)` with monic irreducible factors
/// sorted by degree, then coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: u32,
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    /// Multiplies everything back together.
    pub fn product(&self, field: &FieldSpec) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(field, self.unit), |acc, (g, m)| acc.mul(&g.pow(*m as u64)))
    }
}

/// Full factorization with the default seed 0.
pub fn factor_poly(f: &Poly) -> Result<Factorization> {
    factor_poly_seeded(f, 0)
}

pub fn factor_poly_seeded(f: &Poly, seed: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = f.lead();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (sqf, mult) in squarefree(&f.monic()) {
        for (part, d) in distinct_degree(&sqf) {
            for g in equal_degree(&part, d, &mut rng) {
                factors.push((g, mult));
            }
        }
    }
    factors.sort_by(|(a, ma), (b, mb)| {
        a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())).then(ma.cmp(mb))
    });
    // merge equal factors that arrived through different multiplicity classes
    let mut merged: Vec<(Poly, usize)> = Vec::new();
    for (g, m) in factors {
        match merged.last_mut() {
            Some((h, hm)) if *h == g => *hm += m,
            _ => merged.push((g, m)),
        }
    }
    Ok(Factorization { unit, factors: merged })
}

/// p-th root of a polynomial whose derivative vanishes.
fn pth_root(f: &Poly) -> Poly {
    let field = f.field();
    let p = field.characteristic() as usize;
    let k = field.degree() as i64;
    // c^(p^(k-1)) is the p-th root of c in GF(p^k)
    let root_exp = (field.characteristic() as i64).pow((k - 1) as u32);
    let coeffs = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|&c| field.pow(c, root_exp))
        .collect();
    Poly::new(field, coeffs)
}

/// Squarefree parts with multiplicities for a monic input.
fn squarefree(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    squarefree_rec(f, 1, &mut out);
    out
}

fn squarefree_rec(f: &Poly, scale: usize, out: &mut Vec<(Poly, usize)>) {
    if f.degree().unwrap_or(0) == 0 {
        return;
    }
    let p = f.field().characteristic() as usize;
    let d = f.derivative();
    if d.is_zero() {
        squarefree_rec(&pth_root(f), scale * p, out);
        return;
    }
    let mut c = f.gcd(&d);
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_rem(&y).0;
        if !fac.is_one() {
            out.push((fac.monic(), i * scale));
        }
        w = y;
        c = c.div_rem(&w).0;
        i += 1;
    }
    if !c.is_one() {
        squarefree_rec(&pth_root(&c.monic()), scale * p, out);
    }
}

/// Splits a squarefree monic polynomial into products of irreducibles of
/// equal degree, returned as `(product, degree)`.
fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field();
    let q = field.order();
    let x = Poly::x(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut frob = x.clone();
    let mut d = 0;
    while rest.degree().unwrap_or(0) > 0 {
        d += 1;
        if rest.degree().unwrap() < 2 * d {
            let deg = rest.degree().unwrap();
            out.push((rest.clone(), deg));
            break;
        }
        frob = frob.pow_mod(q, &rest);
        let g = rest.gcd(&frob.sub(&x));
        if !g.is_one() {
            rest = rest.div_rem(&g).0;
            frob = frob.rem(&rest);
            out.push((g, d));
        }
    }
    out
}

/// Cantor–Zassenhaus splitting of a product of distinct monic irreducibles
/// of degree `d`.
fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field();
    let q = field.order();
    loop {
        let a = Poly::new(field, (0..n).map(|_| rng.gen_range(0..q as u32)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let candidate = if q % 2 == 1 {
            // a^((q^d - 1)/2) = (a^(1 + q + .. + q^(d-1)))^((q-1)/2)
            let mut norm = Poly::one(field);
            let mut conj = a.rem(f);
            for _ in 0..d {
                norm = norm.mul_mod(&conj, f);
                conj = conj.pow_mod(q, f);
            }
            norm.pow_mod((q - 1) / 2, f).sub(&Poly::one(field))
        } else {
            // trace map a + a^2 + a^4 + .. over GF(2)
            let bits = field.degree() * d;
            let mut sum = Poly::zero(field);
            let mut cur = a.rem(f);
            for _ in 0..bits {
                sum = sum.add(&cur);
                cur = cur.mul_mod(&cur, f);
            }
            sum
        };
        let g = f.gcd(&candidate);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let h = f.div_rem(&g).0;
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h.monic(), d, rng));
            return out;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roots(f: &Poly) -> Vec<u32> {
        f.field().elements().filter(|&x| f.eval(x) == 0).collect()
    }

    #[test]
    fn x2_minus_1_over_gf7() {
        let f7 = FieldSpec::prime(7).unwrap();
        let f = Poly::new(&f7, vec![6, 0, 1]);
        let fac = factor_poly(&f).unwrap();
        assert_eq!(
            fac.factors,
            vec![(Poly::linear(&f7, 6), 1), (Poly::linear(&f7, 1), 1)]
        );
    }

    #[test]
    fn x2_plus_1_irreducible_over_gf3() {
        let f3 = FieldSpec::prime(3).unwrap();
        let f = Poly::new(&f3, vec![1, 0, 1]);
        assert!(roots(&f).is_empty());
        let fac = factor_poly(&f).unwrap();
        assert_eq!(fac.factors, vec![(f.clone(), 1)]);
    }

    #[test]
    fn x3_minus_1_over_gf7() {
        let f7 = FieldSpec::prime(7).unwrap();
        let f = Poly::new(&f7, vec![6, 0, 0, 1]);
        assert_eq!(roots(&f), vec![1, 2, 4]);
        let fac = factor_poly(&f).unwrap();
        let lin: Vec<Poly> = [4, 2, 1].iter().map(|&r| Poly::linear(&f7, r)).collect();
        assert_eq!(fac.factors.iter().map(|(g, _)| g.clone()).collect::<Vec<_>>(), lin);
    }

    #[test]
    fn repeated_and_inseparable_factors() {
        let f3 = FieldSpec::prime(3).unwrap();
        // (x - 1)^3 (x^2 + 1)^2 (x + 1)
        let f = Poly::linear(&f3, 1)
            .pow(3)
            .mul(&Poly::new(&f3, vec![1, 0, 1]).pow(2))
            .mul(&Poly::linear(&f3, 2))
            .scale(2);
        let fac = factor_poly(&f).unwrap();
        assert_eq!(fac.unit, 2);
        assert_eq!(
            fac.factors,
            vec![
                (Poly::linear(&f3, 2), 1),
                (Poly::linear(&f3, 1), 3),
                (Poly::new(&f3, vec![1, 0, 1]), 2)
            ]
        );
        assert_eq!(fac.product(&f3), f);
    }

    #[test]
    fn characteristic_two_extension() {
        let f8 = FieldSpec::new(2, 3, Some(&[1, 1, 0, 1])).unwrap();
        // x^7 - 1 splits into linear factors over GF(8)
        let f = Poly::new(&f8, vec![1, 0, 0, 0, 0, 0, 0, 1]);
        let fac = factor_poly(&f).unwrap();
        assert_eq!(fac.factors.len(), 7);
        assert!(fac.factors.iter().all(|(g, m)| g.degree() == Some(1) && *m == 1));
        assert_eq!(fac.product(&f8), f);
    }

    #[test]
    fn zero_is_rejected() {
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(factor_poly(&Poly::zero(&f3)).unwrap_err(), Error::ZeroPolynomial);
    }
}
