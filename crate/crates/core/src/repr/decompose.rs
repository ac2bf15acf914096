use super::{find_isomorphism, intertwining_number, is_irreducible_with, require_semisimple, Config, Representation};
use crate::error::{Error, Result};
use crate::fields::{FieldSpec, Scalar};
use crate::groups::Group;
use crate::linalg::{Matrix, Subspace};

/// Direct-sum decomposition into irreducibles.
///
/// `change_of_basis` has one block of columns per irreducible copy, grouped
/// by summand in the order of `summands`; `P^-1 rho(g) P` is block diagonal
/// with the blocks equal to the summand images in this order.
#[derive(Clone, Debug)]
pub struct DecompositionResult {
    pub summands: Vec<(Representation, usize)>,
    pub change_of_basis: Matrix,
}

impl DecompositionResult {
    /// Dimensions of the diagonal blocks, in basis order.
    pub fn block_dims(&self) -> Vec<usize> {
        self.summands.iter().flat_map(|(s, m)| std::iter::repeat_n(s.dim(), *m)).collect()
    }
}

/// Images of the module action restricted to an invariant subspace, written
/// in the subspace's echelon basis.
fn restricted_images(m: &Representation, w: &Subspace) -> Vec<Matrix> {
    let basis = w.basis();
    m.images()
        .iter()
        .map(|a| {
            let cols: Vec<Vec<Scalar>> = basis.iter().map(|v| w.coordinates(&a.apply(v))).collect();
            Matrix::from_columns(m.field(), w.dim(), &cols)
        })
        .collect()
}

/// A G-stable complement of the invariant subspace `u`: the kernel of the
/// group average of the projection onto `u` along the coordinate axes off
/// its pivots.
fn complement(m: &Representation, u: &Subspace) -> Subspace {
    let field = m.field();
    let d = m.dim();
    let basis = u.basis();
    let pivots = u.pivots_sorted();
    let r = basis.len();
    let u_cols = Matrix::from_columns(field, d, &basis);
    let mut avg = Matrix::zeros(field, d, d);
    let g = m.group();
    for x in 0..g.order() {
        // rho(x) P rho(x^-1) with P = U S, S selecting the pivot coordinates
        let left = m.image(x).mul(&u_cols);
        let inv = m.image(g.inv(x));
        let mut right = Matrix::zeros(field, r, d);
        for (i, &p) in pivots.iter().enumerate() {
            for c in 0..d {
                right.set(i, c, inv.get(p, c));
            }
        }
        avg = avg.add(&left.mul(&right));
    }
    Subspace::spanned_by(field, d, &avg.nullspace())
}

/// Irreducible pieces of `m` with their bases as columns in `m`'s coordinates.
fn split(m: &Representation, cfg: &Config, out: &mut Vec<(Representation, Matrix)>, basis: Matrix) -> Result<()> {
    let verdict = is_irreducible_with(m, cfg)?;
    let Some(u) = verdict.witness else {
        out.push((m.clone(), basis));
        return Ok(());
    };
    let w = complement(m, &u);
    if w.dim() + u.dim() != m.dim() {
        return Err(Error::Certification("averaged projection has the wrong rank".into()));
    }
    for part in [u, w] {
        let sub = Representation::from_images_unchecked(m.group(), m.field(), part.dim(), restricted_images(m, &part));
        let cols = Matrix::from_columns(m.field(), m.dim(), &part.basis());
        split(&sub, cfg, out, basis.mul(&cols))?;
    }
    Ok(())
}

pub fn decompose(m: &Representation) -> Result<DecompositionResult> {
    decompose_with(m, &Config::default())
}

/// Splits `m` recursively along invariant subspaces and Maschke complements,
/// then groups isomorphic pieces. Summands are sorted by `(dim, encoding)`.
pub fn decompose_with(m: &Representation, cfg: &Config) -> Result<DecompositionResult> {
    require_semisimple(m.group().order(), m.field())?;
    if m.dim() == 0 {
        return Ok(DecompositionResult { summands: Vec::new(), change_of_basis: Matrix::identity(m.field(), 0) });
    }
    let mut pieces = Vec::new();
    split(m, cfg, &mut pieces, Matrix::identity(m.field(), m.dim()))?;
    let mut classes: Vec<(Representation, Vec<Matrix>)> = Vec::new();
    for (rep, cols) in pieces {
        let mut found = None;
        for (i, (s, _)) in classes.iter().enumerate() {
            if s.dim() == rep.dim() && intertwining_number(s, &rep)? > 0 {
                found = Some(i);
                break;
            }
        }
        match found {
            Some(i) => {
                // rewrite the copy in the basis of the class representative
                let x = find_isomorphism(&rep, &classes[i].0, cfg)?
                    .ok_or_else(|| Error::Certification("no invertible intertwiner between isomorphic pieces".into()))?;
                let xi = x.inverse().expect("intertwiner is invertible");
                classes[i].1.push(cols.mul(&xi));
            }
            None => classes.push((rep, vec![cols])),
        }
    }
    classes.sort_by_key(|(s, _)| s.sort_key());
    let mut all_cols: Vec<Vec<Scalar>> = Vec::with_capacity(m.dim());
    let mut summands = Vec::with_capacity(classes.len());
    for (s, blocks) in classes {
        for b in &blocks {
            for c in 0..b.cols() {
                all_cols.push(b.column(c));
            }
        }
        summands.push((s, blocks.len()));
    }
    let change_of_basis = Matrix::from_columns(m.field(), m.dim(), &all_cols);
    if !change_of_basis.is_invertible() {
        return Err(Error::Certification("decomposition bases are not independent".into()));
    }
    Ok(DecompositionResult { summands, change_of_basis })
}

pub fn irreducibles_of_group(group: &Group, field: &FieldSpec) -> Result<Vec<Representation>> {
    irreducibles_of_group_with(group, field, &Config::default())
}

/// Every irreducible representation of `group` over `field`, up to
/// isomorphism, from the decomposition of the regular module. Certified by
/// `sum dim(V)^2 / i(V, V) = |G|` and by each multiplicity being
/// `dim V / i(V, V)`.
pub fn irreducibles_of_group_with(
    group: &Group,
    field: &FieldSpec,
    cfg: &Config,
) -> Result<Vec<Representation>> {
    require_semisimple(group.order(), field)?;
    let reg = Representation::regular(group, field);
    let dec = decompose_with(&reg, cfg)?;
    let mut total = 0;
    let mut out = Vec::with_capacity(dec.summands.len());
    for (s, mult) in dec.summands {
        let e = intertwining_number(&s, &s)?;
        if s.dim() % e != 0 || mult != s.dim() / e {
            return Err(Error::Certification(format!(
                "irreducible of dimension {} has multiplicity {mult} in the regular module but i(V, V) = {e}",
                s.dim()
            )));
        }
        total += s.dim() * s.dim() / e;
        out.push(s);
    }
    if total != group.order() {
        return Err(Error::Certification(format!("Wedderburn count {total} differs from the group order {}", group.order())));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use FieldSpec;
    use crate::groups::{group_from_permutations, Group};

    fn cyclic(n: usize) -> Group {
        let perm: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        Arc::new(group_from_permutations(&[perm]).unwrap())
    }

    fn s3() -> Group {
        Arc::new(group_from_permutations(&[vec![1, 2, 0], vec![1, 0, 2]]).unwrap())
    }

    fn check_block_diagonal(m: &Representation, dec: &DecompositionResult) {
        let p = &dec.change_of_basis;
        let conj = m.change_basis(p).unwrap();
        let dims = dec.block_dims();
        assert_eq!(dims.iter().sum::<usize>(), m.dim());
        let mut blocks = Vec::new();
        for (s, mult) in &dec.summands {
            for _ in 0..*mult {
                blocks.push(s);
            }
        }
        for (slot, img) in conj.images().iter().enumerate() {
            let mut expected = Matrix::identity(m.field(), 0);
            for s in &blocks {
                expected = expected.direct_sum(&s.images()[slot]);
            }
            assert_eq!(img, &expected);
        }
    }

    #[test]
    fn regular_rep_of_c2_over_gf7() {
        let f7 = FieldSpec::prime(7).unwrap();
        let reg = Representation::regular(&cyclic(2), &f7);
        let dec = decompose(&reg).unwrap();
        let imgs: Vec<_> = dec.summands.iter().map(|(s, m)| (s.images()[0].get(0, 0), *m)).collect();
        assert_eq!(imgs, vec![(1, 1), (6, 1)]);
        check_block_diagonal(&reg, &dec);
    }

    #[test]
    fn regular_rep_of_c3_over_gf7_and_gf5() {
        let f7 = FieldSpec::prime(7).unwrap();
        let reg = Representation::regular(&cyclic(3), &f7);
        let dec = decompose(&reg).unwrap();
        let imgs: Vec<_> = dec.summands.iter().map(|(s, _)| s.images()[0].get(0, 0)).collect();
        assert_eq!(imgs, vec![1, 2, 4]);
        check_block_diagonal(&reg, &dec);

        let f5 = FieldSpec::prime(5).unwrap();
        let reg = Representation::regular(&cyclic(3), &f5);
        let dec = decompose(&reg).unwrap();
        assert_eq!(dec.block_dims(), vec![1, 2]);
        check_block_diagonal(&reg, &dec);
        let irr = irreducibles_of_group(&cyclic(3), &f5).unwrap();
        assert_eq!(irr.iter().map(Representation::dim).collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(intertwining_number(&irr[1], &irr[1]).unwrap(), 2);
    }

    #[test]
    fn irreducibles_of_s3() {
        let f7 = FieldSpec::prime(7).unwrap();
        let irr = irreducibles_of_group(&s3(), &f7).unwrap();
        assert_eq!(irr.iter().map(Representation::dim).collect::<Vec<_>>(), vec![1, 1, 2]);
        for r in &irr {
            r.check_relations().unwrap();
            assert!(super::super::exhaustive_spin_oracle(r).unwrap().is_none());
        }
        let reg = Representation::regular(&s3(), &f7);
        let dec = decompose(&reg).unwrap();
        assert_eq!(dec.summands.iter().map(|(_, m)| *m).collect::<Vec<_>>(), vec![1, 1, 2]);
        check_block_diagonal(&reg, &dec);
    }

    #[test]
    fn multiplicities_match_intertwining_numbers() {
        let f5 = FieldSpec::prime(5).unwrap();
        let g = s3();
        let reg = Representation::regular(&g, &f5);
        let m = reg.direct_sum(&Representation::trivial(&g, &f5)).unwrap();
        let dec = decompose(&m).unwrap();
        for (s, mult) in &dec.summands {
            let num = intertwining_number(&m, s).unwrap();
            let den = intertwining_number(s, s).unwrap();
            assert_eq!(num / den, *mult);
        }
        check_block_diagonal(&m, &dec);
    }

    #[test]
    fn modular_case_rejected() {
        let f3 = FieldSpec::prime(3).unwrap();
        assert!(matches!(irreducibles_of_group(&s3(), &f3), Err(Error::CharacteristicDivides { p: 3, order: 6 })));
    }
}
