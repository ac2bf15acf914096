//! Arithmetic in finite fields GF(p^k).
//!
//! Elements are stored as packed integers: the little-endian coefficient
//! vector `(c_0, .., c_{k-1})` of a polynomial in the adjoined root is encoded
//! as `c_0 + c_1 p + .. + c_{k-1} p^{k-1}`. For prime fields this is just the
//! residue. Multiplication goes through discrete log tables built once per
//! field, so a [`FieldSpec`] is cheap to clone and share.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::Poly;

/// Largest field order for which tables are built.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Raw packed field element. Only meaningful together with its [`FieldSpec`].
pub type Scalar = u32;

struct Inner {
    p: u32,
    k: usize,
    q: u32,
    min_poly: Option<Vec<u32>>,
    /// `exp[i] = g^i` for a fixed primitive element `g`, `0 <= i < q - 1`.
    exp: Vec<u32>,
    /// Inverse of `exp`; `log[0]` is unused.
    log: Vec<u32>,
}

/// A validated finite field GF(p^k).
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.min_poly == other.0.min_poly)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.min_poly {
            None => write!(f, "GF({})", self.0.p),
            Some(m) => write!(f, "GF({}^{}; {:?})", self.0.p, self.0.k, m),
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Multiplication of packed elements without tables, used while the tables
/// are being built.
fn slow_mul(p: u32, k: usize, min_poly: &[u32], a: u32, b: u32) -> u32 {
    if k == 1 {
        return ((a as u64 * b as u64) % p as u64) as u32;
    }
    let da = digits(p, k, a);
    let db = digits(p, k, b);
    let mut prod = vec![0u64; 2 * k - 1];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    // reduce by the monic minimal polynomial, highest degree first
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for (i, &m) in min_poly[..k].iter().enumerate() {
            let t = prod[d - k + i] + (p as u64 - c) * m as u64 % p as u64;
            prod[d - k + i] = t % p as u64;
        }
    }
    pack(p, &prod[..k].iter().map(|&c| c as u32).collect::<Vec<_>>())
}

fn slow_pow(p: u32, k: usize, min_poly: &[u32], mut a: u32, mut e: u64) -> u32 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = slow_mul(p, k, min_poly, acc, a);
        }
        a = slow_mul(p, k, min_poly, a, a);
        e >>= 1;
    }
    acc
}

fn digits(p: u32, k: usize, mut a: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        out.push(a % p);
        a /= p;
    }
    out
}

fn pack(p: u32, coeffs: &[u32]) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl FieldSpec {
    /// Builds GF(p^k). `min_poly` is a monic little-endian coefficient list of
    /// length `k + 1`, required exactly when `k > 1`.
    pub fn new(p: u64, k: usize, min_poly: Option<&[u64]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let q = (p as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
        if q > MAX_FIELD_ORDER as u128 {
            return Err(Error::FieldTooLarge(q.min(u64::MAX as u128) as u64));
        }
        let p32 = p as u32;
        let q = q as u32;
        let min_poly = match (k, min_poly) {
            (1, None) => None,
            (1, Some(_)) => {
                return Err(Error::DegreeMismatch(
                    "a minimal polynomial is only accepted for k > 1".into(),
                ))
            }
            (_, None) => {
                return Err(Error::DegreeMismatch(format!(
                    "GF({p}^{k}) needs a minimal polynomial of degree {k}"
                )))
            }
            (_, Some(m)) => {
                if m.len() != k + 1 {
                    return Err(Error::DegreeMismatch(format!(
                        "minimal polynomial has {} coefficients, expected {}",
                        m.len(),
                        k + 1
                    )));
                }
                if m[k] % p != 1 {
                    return Err(Error::InvalidField("minimal polynomial must be monic".into()));
                }
                let reduced: Vec<u32> = m.iter().map(|&c| (c % p) as u32).collect();
                if !Self::is_irreducible_over_prime(p32, &reduced)? {
                    return Err(Error::ReducibleMinPoly(p));
                }
                Some(reduced)
            }
        };
        let mp = min_poly.clone().unwrap_or_default();
        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let generator = (1..q)
            .find(|&g| {
                slow_pow(p32, k, &mp, g, order) == 1
                    && factors.iter().all(|&r| slow_pow(p32, k, &mp, g, order / r) != 1)
            })
            .ok_or_else(|| Error::InvalidField("no primitive element found".into()))?;
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u32;
        for i in 0..order as u32 {
            exp.push(cur);
            log[cur as usize] = i;
            cur = slow_mul(p32, k, &mp, cur, generator);
        }
        Ok(FieldSpec(Arc::new(Inner { p: p32, k, q, min_poly, exp, log })))
    }

    /// The prime field GF(p).
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// gcd(f, x^(p^i) - x) = 1 for i < k and f | x^(p^k) - x.
    fn is_irreducible_over_prime(p: u32, f: &[u32]) -> Result<bool> {
        let base = FieldSpec::prime(p as u64)?;
        let f = Poly::new(&base, f.to_vec());
        let k = f.degree().unwrap_or(0);
        let x = Poly::x(&base);
        let mut frob = x.clone();
        for i in 1..=k {
            frob = frob.pow_mod(p as u64, &f);
            let diff = frob.sub(&x);
            if i < k {
                if f.gcd(&diff).degree() != Some(0) {
                    return Ok(false);
                }
            } else if !diff.rem(&f).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p as u64
    }

    pub fn degree(&self) -> usize {
        self.0.k
    }

    /// Number of elements q = p^k.
    pub fn order(&self) -> u64 {
        self.0.q as u64
    }

    pub fn min_poly(&self) -> Option<&[u32]> {
        self.0.min_poly.as_deref()
    }

    /// A fixed generator of the multiplicative group.
    pub fn primitive_element(&self) -> Scalar {
        if self.0.q == 2 {
            1
        } else {
            self.0.exp[1]
        }
    }

    #[inline]
    pub fn zero(&self) -> Scalar {
        0
    }

    #[inline]
    pub fn one(&self) -> Scalar {
        1
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Scalar {
        n.rem_euclid(self.0.p as i64) as Scalar
    }

    #[inline]
    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        let p = self.0.p;
        if self.0.k == 1 {
            let s = a + b;
            if s >= p {
                s - p
            } else {
                s
            }
        } else {
            let (mut a, mut b) = (a, b);
            let mut out = 0;
            let mut place = 1;
            for _ in 0..self.0.k {
                out += ((a % p + b % p) % p) * place;
                a /= p;
                b /= p;
                place *= p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: Scalar) -> Scalar {
        let p = self.0.p;
        if self.0.k == 1 {
            if a == 0 {
                0
            } else {
                p - a
            }
        } else {
            let mut a = a;
            let mut out = 0;
            let mut place = 1;
            for _ in 0..self.0.k {
                out += ((p - a % p) % p) * place;
                a /= p;
                place *= p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.0.k == 1 {
            return ((a as u64 * b as u64) % self.0.p as u64) as Scalar;
        }
        let n = self.0.q - 1;
        let s = self.0.log[a as usize] + self.0.log[b as usize];
        self.0.exp[(if s >= n { s - n } else { s }) as usize]
    }

    /// `a + b * c`, the inner step of every elimination loop.
    #[inline]
    pub fn mul_add(&self, a: Scalar, b: Scalar, c: Scalar) -> Scalar {
        self.add(a, self.mul(b, c))
    }

    /// Multiplicative inverse. Panics on zero; use [`FieldElement::inv`] for
    /// a checked version.
    #[inline]
    pub fn inv(&self, a: Scalar) -> Scalar {
        assert!(a != 0, "inverse of zero");
        if self.0.q == 2 {
            return 1;
        }
        let n = self.0.q - 1;
        let l = self.0.log[a as usize];
        self.0.exp[((n - l) % n) as usize]
    }

    /// `a^e` for any integer exponent; `0^e` for negative `e` panics.
    pub fn pow(&self, a: Scalar, e: i64) -> Scalar {
        if a == 0 {
            assert!(e >= 0, "negative power of zero");
            return if e == 0 { 1 } else { 0 };
        }
        let n = (self.0.q - 1) as i64;
        if n == 1 {
            return 1;
        }
        let l = self.0.log[a as usize] as i64;
        let idx = ((l as i128 * e as i128).rem_euclid(n as i128)) as usize;
        self.0.exp[idx]
    }

    /// Least d >= 1 with a^d = 1. Panics on zero.
    pub fn multiplicative_order(&self, a: Scalar) -> u64 {
        assert!(a != 0, "zero has no multiplicative order");
        let n = self.order() - 1;
        if n == 1 {
            return 1;
        }
        let l = self.0.log[a as usize] as u64;
        n / gcd(l, n)
    }

    /// All solutions of x^d = 1, sorted by encoding. There are gcd(d, q - 1).
    pub fn elements_of_order_dividing(&self, d: u64) -> Vec<Scalar> {
        let n = self.order() - 1;
        let e = gcd(d.max(1), n);
        let step = n / e;
        let mut out: Vec<Scalar> = if n == 1 {
            vec![1]
        } else {
            (0..e).map(|j| self.0.exp[(step * j) as usize]).collect()
        };
        out.sort_unstable();
        out
    }

    /// Little-endian coefficient vector of a packed element.
    pub fn coeffs(&self, a: Scalar) -> Vec<u32> {
        digits(self.0.p, self.0.k, a)
    }

    /// Packs a coefficient vector. Entries are reduced mod p; missing
    /// trailing coefficients are zero.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<Scalar> {
        if coeffs.len() > self.0.k {
            return Err(Error::DegreeMismatch(format!(
                "element has {} coefficients, field degree is {}",
                coeffs.len(),
                self.0.k
            )));
        }
        let p = self.0.p as i64;
        let reduced: Vec<u32> = coeffs.iter().map(|&c| c.rem_euclid(p) as u32).collect();
        Ok(pack(self.0.p, &reduced))
    }

    /// Iterator over all q elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Scalar> {
        0..self.0.q
    }

    pub fn element(&self, value: Scalar) -> FieldElement {
        FieldElement { field: self.clone(), value: value % self.0.q }
    }
}

/// A field element bound to its field; arithmetic checks that both operands
/// come from the same field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: FieldSpec,
    value: Scalar,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree() == 1 {
            write!(f, "{}", self.value)
        } else {
            write!(f, "{:?}", self.field.coeffs(self.value))
        }
    }
}

impl FieldElement {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn value(&self) -> Scalar {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn wrap(&self, value: Scalar) -> FieldElement {
        FieldElement { field: self.field.clone(), value }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.wrap(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn neg(&self) -> FieldElement {
        self.wrap(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.value == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.wrap(self.field.inv(self.value)))
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        if self.value == 0 && e < 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.wrap(self.field.pow(self.value, e)))
    }

    pub fn multiplicative_order(&self) -> Result<u64> {
        if self.value == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.field.multiplicative_order(self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_pow(f: &FieldSpec, a: Scalar, e: u64) -> Scalar {
        (0..e).fold(1, |acc, _| f.mul(acc, a))
    }

    #[test]
    fn prime_fields() {
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(f3.order(), 3);
        assert_eq!(f3.mul(2, 2), 1);
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(f7.inv(2), 4);
        assert_eq!(f7.pow(2, 3), 1);
        assert_eq!(f7.pow(2, -1), 4);
    }

    #[test]
    fn gf25_with_cyclotomic_modulus() {
        // x^2 + x + 1 has no root mod 5: discriminant -3 = 2 is a non-residue
        assert!((0..5u64).all(|x| (x * x + x + 1) % 5 != 0));
        assert!((0..5u64).all(|x| (x * x) % 5 != 2));
        let f = FieldSpec::new(5, 2, Some(&[1, 1, 1])).unwrap();
        assert_eq!(f.order(), 25);
        // the root t satisfies t^2 = -t - 1
        let t = f.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f.mul(t, t), f.from_coeffs(&[4, 4]).unwrap());
        assert_eq!(f.pow(t, 3), 1);
    }

    #[test]
    fn rejects_bad_fields() {
        assert_eq!(FieldSpec::prime(9).unwrap_err(), Error::NotPrime(9));
        assert_eq!(FieldSpec::new(5, 2, Some(&[4, 0, 1])).unwrap_err(), Error::ReducibleMinPoly(5));
        assert!(matches!(FieldSpec::new(5, 2, None), Err(Error::DegreeMismatch(_))));
        assert!(matches!(FieldSpec::new(5, 2, Some(&[1, 1, 1, 1])), Err(Error::DegreeMismatch(_))));
        assert!(matches!(FieldSpec::new(5, 1, Some(&[1, 1])), Err(Error::DegreeMismatch(_))));
        // x^4 + 1 = (x^2 + x + 2)(x^2 - x + 2) over GF(3), no roots but reducible
        assert!((0..3u64).all(|x| (x.pow(4) + 1) % 3 != 0));
        assert_eq!(FieldSpec::new(3, 4, Some(&[1, 0, 0, 0, 1])).unwrap_err(), Error::ReducibleMinPoly(3));
    }

    #[test]
    fn orders_in_gf7() {
        let f = FieldSpec::prime(7).unwrap();
        assert_eq!(f.multiplicative_order(1), 1);
        assert_eq!(f.multiplicative_order(2), 3);
        assert_eq!(f.multiplicative_order(3), 6);
        assert_eq!(f.elements_of_order_dividing(3), vec![1, 2, 4]);
        assert_eq!(FieldSpec::prime(5).unwrap().elements_of_order_dividing(3), vec![1]);
        assert_eq!(f.elements_of_order_dividing(1), vec![1]);
    }

    #[test]
    fn checked_element_ops() {
        let f7 = FieldSpec::prime(7).unwrap();
        let f5 = FieldSpec::prime(5).unwrap();
        let a = f7.element(3);
        assert_eq!(a.inv().unwrap().value(), 5);
        assert_eq!(f7.element(0).inv().unwrap_err(), Error::ZeroInverse);
        assert_eq!(a.add(&f5.element(1)).unwrap_err(), Error::FieldMismatch);
        assert_eq!(a.multiplicative_order().unwrap(), 6);
    }

    #[test]
    fn fermat_and_unit_counts_small_fields() {
        let fields = [
            FieldSpec::prime(2).unwrap(),
            FieldSpec::prime(5).unwrap(),
            FieldSpec::prime(13).unwrap(),
            FieldSpec::new(2, 3, Some(&[1, 1, 0, 1])).unwrap(),
            FieldSpec::new(3, 2, Some(&[1, 0, 1])).unwrap(),
            FieldSpec::new(5, 2, Some(&[1, 1, 1])).unwrap(),
        ];
        for f in &fields {
            let q = f.order();
            for x in f.elements() {
                assert_eq!(brute_pow(f, x, q), x, "{f:?}");
            }
            for d in 1..=24u64 {
                let brute: Vec<Scalar> = f.elements().filter(|&x| x != 0 && brute_pow(f, x, d) == 1).collect();
                assert_eq!(f.elements_of_order_dividing(d), brute);
                assert_eq!(brute.len() as u64, gcd(d, q - 1));
            }
            for x in f.elements().skip(1) {
                let brute = (1..q).find(|&d| brute_pow(f, x, d) == 1).unwrap();
                assert_eq!(f.multiplicative_order(x), brute);
            }
        }
    }
}
