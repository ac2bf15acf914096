use std::fmt;

use crate::error::{Error, Result};
use crate::fields::{FieldSpec, Scalar};

use super::Poly;

/// Dense row-major matrix over a finite field. Matrices act on column
/// vectors from the left.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
    field: FieldSpec,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{:?}", self.to_rows())
    }
}

impl Matrix {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols], field: field.clone() }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn scalar(field: &FieldSpec, n: usize, s: Scalar) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = s;
        }
        m
    }

    pub fn from_vec(field: &FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&x| x as u64 >= field.order()) {
            return Err(Error::InvalidField(format!("entry {bad} is not an element of {field:?}")));
        }
        Ok(Matrix { rows, cols, data, field: field.clone() })
    }

    /// Builds a matrix from rows of packed entries.
    pub fn from_rows(field: &FieldSpec, rows: &[Vec<Scalar>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::from_vec(field, rows.len(), cols, rows.concat())
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: &FieldSpec, dim: usize, cols: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, dim, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..dim {
                m.data[i * cols.len() + j] = c[i];
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == (i == j) as Scalar))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    if b != 0 {
                        *o = f.mul_add(*o, a, b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data, field: f.clone() }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data, field: f.clone() }
    }

    pub fn scale(&self, s: Scalar) -> Matrix {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.mul(a, s)).collect();
        Matrix { rows: self.rows, cols: self.cols, data, field: f.clone() }
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, s: Scalar, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if s == 0 {
            return;
        }
        let f = self.field.clone();
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.mul_add(*a, s, b);
        }
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| if a == 0 || b == 0 { acc } else { f.mul_add(acc, a, b) })
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c));
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                m.set(self.rows + r, self.cols + c, other.get(r, c));
            }
        }
        m
    }

    /// Kronecker product.
    pub fn kronecker(&self, other: &Matrix) -> Matrix {
        let f = &self.field;
        let mut m = Matrix::zeros(f, self.rows * other.rows, self.cols * other.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a == 0 {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        m.set(r1 * other.rows + r2, c1 * other.cols + c2, f.mul(a, other.get(r2, c2)));
                    }
                }
            }
        }
        m
    }

    /// Reduced row echelon form in place with leftmost-nonzero pivoting;
    /// returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            for j in c..cols {
                self.data[r * cols + j] = f.mul(self.data[r * cols + j], inv);
            }
            let pivot_row: Vec<Scalar> = self.data[r * cols + c..(r + 1) * cols].to_vec();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c];
                if factor == 0 {
                    continue;
                }
                let nf = f.neg(factor);
                for (j, &pv) in pivot_row.iter().enumerate() {
                    if pv != 0 {
                        let e = &mut self.data[i * cols + c + j];
                        *e = f.mul_add(*e, nf, pv);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : M v = 0}`, one vector per free column, with a 1 in
    /// that free position.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0; self.cols];
                v[free] = 1;
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(r.get(i, free));
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Evaluates a polynomial at this (square) matrix by Horner's rule.
    pub fn eval_poly(&self, p: &Poly) -> Matrix {
        let n = self.rows;
        let mut acc = Matrix::zeros(&self.field, n, n);
        for &c in p.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                let e = &mut acc.data[i * n + i];
                *e = self.field.add(*e, c);
            }
        }
        acc
    }

    /// Monic polynomial of least degree annihilating this matrix.
    pub fn min_poly(&self) -> Poly {
        assert!(self.is_square());
        let f = &self.field;
        let n = self.rows;
        let mut covered = Subspace::new(f, n);
        let mut result = Poly::one(f);
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            if covered.contains(&e) {
                continue;
            }
            let (mu, krylov) = self.vector_min_poly(&e);
            for v in krylov {
                covered.insert(v);
            }
            result = result.lcm(&mu);
        }
        result
    }

    /// Least-degree monic `mu` with `mu(M) v = 0`, plus the Krylov vectors.
    fn vector_min_poly(&self, v: &[Scalar]) -> (Poly, Vec<Vec<Scalar>>) {
        let f = &self.field;
        let n = self.rows;
        // rows: (reduced vector, pivot, combination of Krylov vectors giving it)
        let mut rows: Vec<(Vec<Scalar>, usize, Vec<Scalar>)> = Vec::new();
        let mut krylov = Vec::new();
        let mut cur = v.to_vec();
        for d in 0..=n {
            krylov.push(cur.clone());
            let mut w = cur.clone();
            let mut comb = vec![0; n + 1];
            comb[d] = 1;
            for (rv, piv, rc) in &rows {
                let factor = w[*piv];
                if factor == 0 {
                    continue;
                }
                let nf = f.neg(factor);
                for (a, &b) in w.iter_mut().zip(rv) {
                    *a = f.mul_add(*a, nf, b);
                }
                for (a, &b) in comb.iter_mut().zip(rc) {
                    *a = f.mul_add(*a, nf, b);
                }
            }
            match w.iter().position(|&x| x != 0) {
                None => {
                    krylov.pop();
                    return (Poly::new(f, comb[..=d].to_vec()), krylov);
                }
                Some(piv) => {
                    let inv = f.inv(w[piv]);
                    w.iter_mut().for_each(|x| *x = f.mul(*x, inv));
                    comb.iter_mut().for_each(|x| *x = f.mul(*x, inv));
                    rows.push((w, piv, comb));
                }
            }
            cur = self.apply(&cur);
        }
        unreachable!("Krylov sequence longer than the dimension")
    }
}

/// Subspace of `K^n` kept as a reduced echelon basis. Coordinates of a vector
/// in the span are read off at the pivot positions.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: FieldSpec,
    dim: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(field: &FieldSpec, ambient_dim: usize) -> Self {
        Subspace { field: field.clone(), dim: ambient_dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn spanned_by(field: &FieldSpec, ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Self {
        let mut s = Self::new(field, ambient_dim);
        for v in vectors {
            s.insert(v.clone());
        }
        s
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Echelon basis, ordered by pivot position.
    pub fn basis(&self) -> Vec<Vec<Scalar>> {
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&i| self.pivots[i]);
        idx.into_iter().map(|i| self.rows[i].clone()).collect()
    }

    pub fn pivots_sorted(&self) -> Vec<usize> {
        let mut p = self.pivots.clone();
        p.sort_unstable();
        p
    }

    fn reduce(&self, v: &mut [Scalar]) {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let factor = v[p];
            if factor == 0 {
                continue;
            }
            let nf = f.neg(factor);
            for (a, &b) in v.iter_mut().zip(row) {
                if b != 0 {
                    *a = f.mul_add(*a, nf, b);
                }
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        let f = self.field.clone();
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[p]);
        v.iter_mut().for_each(|x| *x = f.mul(*x, inv));
        // keep the basis fully reduced
        for row in &mut self.rows {
            let factor = row[p];
            if factor == 0 {
                continue;
            }
            let nf = f.neg(factor);
            for (a, &b) in row.iter_mut().zip(&v) {
                if b != 0 {
                    *a = f.mul_add(*a, nf, b);
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    /// Coordinates of a vector of the span with respect to [`Self::basis`].
    pub fn coordinates(&self, v: &[Scalar]) -> Vec<Scalar> {
        debug_assert!(self.contains(v));
        self.pivots_sorted().into_iter().map(|p| v[p]).collect()
    }

    /// The subspace `{v : w . v = 0 for all w in self}`.
    pub fn annihilator(&self) -> Subspace {
        let mut m = Matrix::zeros(&self.field, self.rows.len(), self.dim);
        for (i, r) in self.rows.iter().enumerate() {
            m.data[i * self.dim..(i + 1) * self.dim].copy_from_slice(r);
        }
        Subspace::spanned_by(&self.field, self.dim, &m.nullspace())
    }
}

/// Smallest subspace of `K^dim` containing `seeds` and invariant under every
/// matrix in `gens`.
pub fn spin(field: &FieldSpec, dim: usize, seeds: &[Vec<Scalar>], gens: &[Matrix]) -> Subspace {
    let mut space = Subspace::new(field, dim);
    let mut queue: Vec<Vec<Scalar>> = Vec::new();
    for s in seeds {
        if space.insert(s.clone()) {
            queue.push(s.clone());
        }
    }
    let mut next = 0;
    while next < queue.len() && !space.is_full() {
        let v = queue[next].clone();
        next += 1;
        for g in gens {
            let w = g.apply(&v);
            if space.insert(w.clone()) {
                queue.push(w);
            }
        }
    }
    space
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(field: &FieldSpec, rows: &[&[u32]]) -> Matrix {
        Matrix::from_rows(field, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn nullspace_examples() {
        let f3 = FieldSpec::prime(3).unwrap();
        assert!(Matrix::identity(&f3, 2).nullspace().is_empty());
        assert_eq!(Matrix::zeros(&f3, 2, 2).nullspace().len(), 2);
        let f5 = FieldSpec::prime(5).unwrap();
        let a = m(&f5, &[&[1, 2], &[2, 4]]);
        let ns = a.nullspace();
        assert_eq!(ns, vec![vec![3, 1]]);
        assert!(a.apply(&ns[0]).iter().all(|&x| x == 0));
    }

    #[test]
    fn inverse_roundtrip() {
        let f7 = FieldSpec::prime(7).unwrap();
        let a = m(&f7, &[&[1, 2, 3], &[0, 1, 4], &[5, 6, 0]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(m(&f7, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn min_poly_examples() {
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(Matrix::identity(&f3, 3).min_poly(), Poly::linear(&f3, 1));
        let a = m(&f3, &[&[0, 2], &[1, 0]]);
        assert_eq!(a.mul(&a), Matrix::scalar(&f3, 2, 2));
        assert_eq!(a.min_poly(), Poly::new(&f3, vec![1, 0, 1]));
        let f7 = FieldSpec::prime(7).unwrap();
        let d = m(&f7, &[&[1, 0], &[0, 6]]);
        assert_eq!(d.min_poly(), Poly::linear(&f7, 1).mul(&Poly::linear(&f7, 6)));
        assert!(d.eval_poly(&d.min_poly()).is_zero());
    }

    #[test]
    fn spin_examples() {
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(spin(&f3, 2, &[vec![1, 0]], &[Matrix::identity(&f3, 2)]).dim(), 1);
        assert_eq!(spin(&f3, 2, &[vec![1, 0]], &[m(&f3, &[&[0, 2], &[1, 0]])]).dim(), 2);
        let f7 = FieldSpec::prime(7).unwrap();
        let s = spin(&f7, 2, &[vec![1, 0]], &[m(&f7, &[&[1, 0], &[0, 6]])]);
        assert_eq!(s.basis(), vec![vec![1, 0]]);
    }

    #[test]
    fn annihilator_is_orthogonal_complement() {
        let f5 = FieldSpec::prime(5).unwrap();
        let s = Subspace::spanned_by(&f5, 3, &[vec![1, 2, 0]]);
        let ann = s.annihilator();
        assert_eq!(ann.dim(), 2);
        for v in ann.basis() {
            assert_eq!(f5.add(v[0], f5.mul(2, v[1])), 0);
        }
    }
}
