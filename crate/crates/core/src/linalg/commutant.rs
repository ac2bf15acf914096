//! Solution spaces of intertwining equations `X A_i = B_i X`.
//!
//! The linear system has one unknown per entry of `X` and, for monomial
//! matrices such as induced or permutation representations, only a couple of
//! nonzero coefficients per equation. Elimination therefore runs on sparse
//! rows against a dense scratch row.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::Matrix;
use crate::error::{Error, Result};
use crate::fields::{FieldSpec, Scalar};

/// Row echelon system over sparse rows. Every stored row is normalized so
/// that its smallest column (the pivot) carries a 1.
pub struct SparseEchelon {
    field: FieldSpec,
    unknowns: usize,
    pivot_row: Vec<Option<usize>>,
    rows: Vec<Vec<(usize, Scalar)>>,
    scratch: Vec<Scalar>,
}

impl SparseEchelon {
    pub fn new(field: &FieldSpec, unknowns: usize) -> Self {
        SparseEchelon {
            field: field.clone(),
            unknowns,
            pivot_row: vec![None; unknowns],
            rows: Vec::new(),
            scratch: vec![0; unknowns],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn nullity(&self) -> usize {
        self.unknowns - self.rows.len()
    }

    /// Adds the equation `sum coeff * x_col = 0`. Repeated columns are summed.
    pub fn push(&mut self, terms: &[(usize, Scalar)]) {
        let f = self.field.clone();
        let mut heap = BinaryHeap::new();
        for &(c, v) in terms {
            if v == 0 {
                continue;
            }
            if self.scratch[c] == 0 {
                heap.push(Reverse(c));
            }
            self.scratch[c] = f.add(self.scratch[c], v);
        }
        let mut last = usize::MAX;
        while let Some(Reverse(c)) = heap.pop() {
            if c == last || self.scratch[c] == 0 {
                continue;
            }
            last = c;
            match self.pivot_row[c] {
                Some(r) => {
                    let factor = f.neg(self.scratch[c]);
                    for &(col, val) in &self.rows[r] {
                        let before = self.scratch[col];
                        self.scratch[col] = f.mul_add(before, factor, val);
                        if before == 0 && col != c {
                            heap.push(Reverse(col));
                        }
                    }
                }
                None => {
                    let inv = f.inv(self.scratch[c]);
                    let mut row = vec![(c, 1)];
                    self.scratch[c] = 0;
                    let mut rest: Vec<usize> = heap.drain().map(|Reverse(x)| x).collect();
                    rest.sort_unstable();
                    rest.dedup();
                    for col in rest {
                        let v = self.scratch[col];
                        if v != 0 {
                            row.push((col, f.mul(v, inv)));
                            self.scratch[col] = 0;
                        }
                    }
                    self.pivot_row[c] = Some(self.rows.len());
                    self.rows.push(row);
                    return;
                }
            }
        }
        // reduced to zero; scratch is clean apart from explicit zeros
    }

    /// Basis of the solution space by back substitution, one vector per free
    /// unknown in increasing order.
    pub fn solutions(&self) -> Vec<Vec<Scalar>> {
        let f = &self.field;
        let free: Vec<usize> = (0..self.unknowns).filter(|&c| self.pivot_row[c].is_none()).collect();
        let pivots: Vec<usize> = (0..self.unknowns).filter(|&c| self.pivot_row[c].is_some()).collect();
        free.iter()
            .map(|&fc| {
                let mut x = vec![0; self.unknowns];
                x[fc] = 1;
                for &p in pivots.iter().rev() {
                    let row = &self.rows[self.pivot_row[p].unwrap()];
                    let s = row[1..].iter().fold(0, |acc, &(c, v)| f.mul_add(acc, v, x[c]));
                    x[p] = f.neg(s);
                }
                x
            })
            .collect()
    }
}

fn check_dims(a: &[Matrix], b: &[Matrix]) -> Result<(usize, usize)> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} source generators against {} target generators",
            a.len(),
            b.len()
        )));
    }
    let n = a.first().map_or(0, Matrix::rows);
    let m = b.first().map_or(0, Matrix::rows);
    if a.iter().any(|x| !x.is_square() || x.rows() != n) || b.iter().any(|x| !x.is_square() || x.rows() != m) {
        return Err(Error::DimensionMismatch("generator images must be square of a common size".into()));
    }
    if let (Some(x), Some(y)) = (a.first(), b.first()) {
        if x.field() != y.field() {
            return Err(Error::FieldMismatch);
        }
    }
    Ok((n, m))
}

fn build_system(field: &FieldSpec, a: &[Matrix], b: &[Matrix], n: usize, m: usize) -> SparseEchelon {
    let mut sys = SparseEchelon::new(field, m * n);
    let mut terms = Vec::new();
    for (ai, bi) in a.iter().zip(b) {
        // column lists of A for the X A term
        let a_cols: Vec<Vec<(usize, Scalar)>> = (0..n)
            .map(|c| (0..n).filter_map(|k| Some((k, ai.get(k, c))).filter(|t| t.1 != 0)).collect())
            .collect();
        let b_rows: Vec<Vec<(usize, Scalar)>> = (0..m)
            .map(|r| (0..m).filter_map(|k| Some((k, bi.get(r, k))).filter(|t| t.1 != 0)).collect())
            .collect();
        for r in 0..m {
            for c in 0..n {
                terms.clear();
                // (X A)[r][c] = sum_k X[r][k] A[k][c]
                for &(k, v) in &a_cols[c] {
                    terms.push((r * n + k, v));
                }
                // -(B X)[r][c] = -sum_k B[r][k] X[k][c]
                for &(k, v) in &b_rows[r] {
                    terms.push((k * n + c, field.neg(v)));
                }
                sys.push(&terms);
            }
        }
    }
    sys
}

/// Basis of `{X (m x n) : X A_i = B_i X for all i}` where the `A_i` are
/// `n x n` and the `B_i` are `m x m`.
pub fn solve_commutant(field: &FieldSpec, a: &[Matrix], b: &[Matrix], n: usize, m: usize) -> Result<Vec<Matrix>> {
    let (na, mb) = check_dims(a, b)?;
    if !a.is_empty() && (na != n || mb != m) {
        return Err(Error::DimensionMismatch("declared sizes disagree with the generators".into()));
    }
    let sys = build_system(field, a, b, n, m);
    Ok(sys
        .solutions()
        .into_iter()
        .map(|x| Matrix::from_vec(field, m, n, x).expect("solution has m*n entries"))
        .collect())
}

/// Dimension of the commutant space without materializing a basis.
pub fn commutant_dim(field: &FieldSpec, a: &[Matrix], b: &[Matrix], n: usize, m: usize) -> Result<usize> {
    let (na, mb) = check_dims(a, b)?;
    if !a.is_empty() && (na != n || mb != m) {
        return Err(Error::DimensionMismatch("declared sizes disagree with the generators".into()));
    }
    Ok(build_system(field, a, b, n, m).nullity())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(f: &FieldSpec, rows: &[&[u32]]) -> Matrix {
        Matrix::from_rows(f, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn commutant_examples() {
        let f3 = FieldSpec::prime(3).unwrap();
        let g = mat(&f3, &[&[0, 2], &[1, 0]]);
        let sols = solve_commutant(&f3, std::slice::from_ref(&g), std::slice::from_ref(&g), 2, 2).unwrap();
        assert_eq!(sols.len(), 2);
        for x in &sols {
            assert_eq!(x.mul(&g), g.mul(x));
        }
        let id = Matrix::identity(&f3, 2);
        assert_eq!(commutant_dim(&f3, std::slice::from_ref(&id), std::slice::from_ref(&id), 2, 2).unwrap(), 4);
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(commutant_dim(&f7, &[mat(&f7, &[&[2]])], &[mat(&f7, &[&[4]])], 1, 1).unwrap(), 0);
    }

    #[test]
    fn rectangular_solutions_satisfy_equations() {
        let f5 = FieldSpec::prime(5).unwrap();
        // A = diag(1, 4, 4), B = [[4]]: X = (0, a, b)
        let a = mat(&f5, &[&[1, 0, 0], &[0, 4, 0], &[0, 0, 4]]);
        let b = mat(&f5, &[&[4]]);
        let sols = solve_commutant(&f5, std::slice::from_ref(&a), std::slice::from_ref(&b), 3, 1).unwrap();
        assert_eq!(sols.len(), 2);
        for x in sols {
            assert_eq!(x.mul(&a), b.mul(&x));
        }
    }

    #[test]
    fn mismatched_inputs() {
        let f5 = FieldSpec::prime(5).unwrap();
        let a = Matrix::identity(&f5, 2);
        assert!(matches!(commutant_dim(&f5, std::slice::from_ref(&a), &[], 2, 2), Err(Error::DimensionMismatch(_))));
    }
}
