//! Representations as systems of generator images: restriction, induction,
//! conjugation, intertwining numbers, irreducibility and decomposition.

mod decompose;
mod irreducible;

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use decompose::{decompose, decompose_with, irreducibles_of_group, irreducibles_of_group_with, DecompositionResult};
pub use irreducible::{
    endomorphism_field_check, exhaustive_spin_oracle, is_irreducible, is_irreducible_with, oracle_feasible,
    IrreducibilityMethod, IrreducibilityVerdict, ORACLE_POINT_LIMIT,
};

use crate::error::{Error, Result};
use crate::fields::{FieldSpec, Scalar};
use crate::groups::{conjugate_subgroup, left_coset_table, Group, Subgroup};
use crate::linalg::{commutant_dim, solve_commutant, Matrix};

/// Knobs shared by every randomized routine. All randomness is derived from
/// `seed`, so equal configurations give identical results.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Config {
    pub seed: u64,
    /// Run exhaustive-spin cross-checks wherever they are feasible.
    pub force_oracle: bool,
}

impl Config {
    pub fn seeded(seed: u64) -> Self {
        Config { seed, force_oracle: false }
    }

    pub(crate) fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

/// A representation `G -> GL_d(K)` stored through the images of the
/// generators of `G`. Images of arbitrary elements are derived from the
/// generator words on first use and cached.
#[derive(Clone)]
pub struct Representation {
    group: Group,
    field: FieldSpec,
    dim: usize,
    images: Vec<Matrix>,
    elements: OnceLock<Arc<Vec<Matrix>>>,
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Representation")
            .field("group_order", &self.group.order())
            .field("dim", &self.dim)
            .field("images", &self.images)
            .finish()
    }
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        self.group.same_as(&other.group) && self.field == other.field && self.images == other.images && self.dim == other.dim
    }
}

/// Refuses to work in characteristic dividing the group order.
pub fn require_semisimple(order: usize, field: &FieldSpec) -> Result<()> {
    if (order as u64).is_multiple_of(field.characteristic()) {
        return Err(Error::CharacteristicDivides { p: field.characteristic(), order });
    }
    Ok(())
}

impl Representation {
    /// Validated construction: images must be square of size `dim`,
    /// invertible, and satisfy every relation of the group.
    pub fn from_images(group: &Group, field: &FieldSpec, dim: usize, images: Vec<Matrix>) -> Result<Self> {
        if images.len() != group.generators().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} images for {} generators",
                images.len(),
                group.generators().len()
            )));
        }
        for (i, m) in images.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(format!("image {i} is not {dim}x{dim}")));
            }
            if m.field() != field {
                return Err(Error::FieldMismatch);
            }
            if !m.is_invertible() {
                return Err(Error::SingularImage(i));
            }
        }
        let rep = Self::from_images_unchecked(group, field, dim, images);
        rep.check_relations()?;
        Ok(rep)
    }

    pub(crate) fn from_images_unchecked(group: &Group, field: &FieldSpec, dim: usize, images: Vec<Matrix>) -> Self {
        Representation { group: group.clone(), field: field.clone(), dim, images, elements: OnceLock::new() }
    }

    /// `rho(g) rho(s) = rho(g s)` for every element `g` and generator `s`,
    /// which together with the word construction makes `rho` a homomorphism.
    pub fn check_relations(&self) -> Result<()> {
        let g = &self.group;
        for a in 0..g.order() {
            for (slot, &s) in g.generators().iter().enumerate() {
                if self.image(a).mul(&self.images[slot]) != *self.image(g.mul(a, s)) {
                    return Err(Error::RelationViolation(format!("{} * {}", g.word_string(a), g.generator_names()[slot])));
                }
            }
        }
        Ok(())
    }

    pub fn trivial(group: &Group, field: &FieldSpec) -> Self {
        let images = vec![Matrix::identity(field, 1); group.generators().len()];
        Self::from_images_unchecked(group, field, 1, images)
    }

    /// One-dimensional representation from scalar generator images.
    pub fn linear(group: &Group, field: &FieldSpec, values: &[Scalar]) -> Result<Self> {
        let images = values.iter().map(|&v| Matrix::scalar(field, 1, v)).collect();
        Self::from_images(group, field, 1, images)
    }

    /// Left regular representation on the basis `e_g`, `rho(x) e_g = e_{xg}`.
    pub fn regular(group: &Group, field: &FieldSpec) -> Self {
        let n = group.order();
        let images = group
            .generators()
            .iter()
            .map(|&s| {
                let mut m = Matrix::zeros(field, n, n);
                for g in 0..n {
                    m.set(group.mul(s, g), g, 1);
                }
                m
            })
            .collect();
        Self::from_images_unchecked(group, field, n, images)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn images(&self) -> &[Matrix] {
        &self.images
    }

    fn element_images(&self) -> &Arc<Vec<Matrix>> {
        self.elements.get_or_init(|| {
            let g = &self.group;
            let mut out = vec![Matrix::identity(&self.field, self.dim); g.order()];
            for &e in &g.bfs_order()[1..] {
                let (prev, slot) = g.parent(e).expect("non-identity has a parent");
                out[e] = out[prev].mul(&self.images[slot]);
            }
            Arc::new(out)
        })
    }

    /// Image of an arbitrary group element.
    pub fn image(&self, g: usize) -> &Matrix {
        &self.element_images()[g]
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        if !self.group.same_as(&other.group) {
            return Err(Error::GroupMismatch);
        }
        let images = self.images.iter().zip(&other.images).map(|(a, b)| a.direct_sum(b)).collect();
        Ok(Self::from_images_unchecked(&self.group, &self.field, self.dim + other.dim, images))
    }

    /// The same module written in another basis: images `P^-1 rho(s) P`.
    pub fn change_basis(&self, p: &Matrix) -> Result<Representation> {
        let inv = p.inverse().ok_or_else(|| Error::DimensionMismatch("change of basis is singular".into()))?;
        let images = self.images.iter().map(|a| inv.mul(a).mul(p)).collect();
        Ok(Self::from_images_unchecked(&self.group, &self.field, self.dim, images))
    }

    /// Row-major concatenation of the generator images, used for
    /// deterministic ordering.
    pub fn encoding(&self) -> Vec<Scalar> {
        self.images.iter().flat_map(|m| m.data().iter().copied()).collect()
    }

    /// `(dim, encoding)` sort key.
    pub fn sort_key(&self) -> (usize, Vec<Scalar>) {
        (self.dim, self.encoding())
    }
}

/// `V_S`: the same space with images of the generators of `s`.
pub fn restrict(v: &Representation, s: &Subgroup) -> Result<Representation> {
    if !v.group.same_as(s.ambient()) {
        return Err(Error::NotSubgroup);
    }
    let images = s.ambient_generators().iter().map(|&g| v.image(g).clone()).collect();
    Ok(Representation::from_images_unchecked(s.group(), &v.field, v.dim, images))
}

/// The induced module `L^G` for `L` a representation of `h.group()`.
///
/// The basis is coset-representative-major: block `i` is `t_i ⊗ L` for the
/// left coset representatives `t_i`. Writing `g t_i = t_j k` with `k` in `H`,
/// the image of `g` has block `(j, i)` equal to `rho_L(k)`.
pub fn induce(l: &Representation, h: &Subgroup) -> Result<Representation> {
    if !l.group.same_as(h.group()) {
        return Err(Error::NotSubgroup);
    }
    let g = h.ambient();
    let (reps, which) = left_coset_table(h);
    let n = reps.len();
    let d = l.dim;
    let images = g
        .generators()
        .iter()
        .map(|&s| {
            let mut m = Matrix::zeros(&l.field, n * d, n * d);
            for (i, &t) in reps.iter().enumerate() {
                let st = g.mul(s, t);
                let j = which[st];
                let k = g.mul(g.inv(reps[j]), st);
                let block = l.image(h.to_local(k).expect("coset decomposition lands in H"));
                for r in 0..d {
                    for c in 0..d {
                        m.set(j * d + r, i * d + c, block.get(r, c));
                    }
                }
            }
            m
        })
        .collect();
    Ok(Representation::from_images_unchecked(g, &l.field, n * d, images))
}

/// `x ⊗ L` as a representation of `x H x^-1`: `g ↦ rho_L(x^-1 g x)`.
pub fn conjugate_rep(l: &Representation, h: &Subgroup, x: usize) -> Result<(Subgroup, Representation)> {
    if !l.group.same_as(h.group()) {
        return Err(Error::NotSubgroup);
    }
    if x >= h.ambient().order() {
        return Err(Error::NotSubgroup);
    }
    let k = conjugate_subgroup(h, x)?;
    let rep = Representation::from_images_unchecked(k.group(), &l.field, l.dim, l.images.clone());
    Ok((k, rep))
}

fn check_pair(m: &Representation, n: &Representation) -> Result<()> {
    if !m.group.same_as(&n.group) {
        return Err(Error::GroupMismatch);
    }
    if m.field != n.field {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

/// `i(M, N) = dim Hom_KG(M, N)`.
pub fn intertwining_number(m: &Representation, n: &Representation) -> Result<usize> {
    check_pair(m, n)?;
    commutant_dim(&m.field, &m.images, &n.images, m.dim, n.dim)
}

/// Basis of `Hom_KG(M, N)` as `dim N x dim M` matrices.
pub fn hom_basis(m: &Representation, n: &Representation) -> Result<Vec<Matrix>> {
    check_pair(m, n)?;
    solve_commutant(&m.field, &m.images, &n.images, m.dim, n.dim)
}

/// Disjointness (no common composition factor), which for semisimple
/// modules is `i(M, N) = 0`.
pub fn is_disjoint(m: &Representation, n: &Representation) -> Result<bool> {
    require_semisimple(m.group.order(), &m.field)?;
    Ok(intertwining_number(m, n)? == 0)
}

/// An invertible intertwiner `M -> N`, if one exists among the first few
/// thousand candidates of the homomorphism space. For irreducible `M` and
/// `N` every nonzero homomorphism is invertible, so the first basis element
/// already decides.
pub fn find_isomorphism(m: &Representation, n: &Representation, cfg: &Config) -> Result<Option<Matrix>> {
    check_pair(m, n)?;
    if m.dim != n.dim {
        return Ok(None);
    }
    let basis = hom_basis(m, n)?;
    if basis.is_empty() {
        return Ok(None);
    }
    for b in &basis {
        if b.is_invertible() {
            return Ok(Some(b.clone()));
        }
    }
    let q = m.field.order() as u32;
    // deterministic sweep over small coefficient vectors
    let mut tried = 0usize;
    let mut coeffs = vec![0u32; basis.len()];
    'outer: loop {
        let mut i = 0;
        loop {
            if i == coeffs.len() {
                break 'outer;
            }
            coeffs[i] += 1;
            if coeffs[i] < q.min(3) {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
        let mut x = Matrix::zeros(&m.field, n.dim, m.dim);
        for (c, b) in coeffs.iter().zip(&basis) {
            x.add_scaled(*c, b);
        }
        if x.is_invertible() {
            return Ok(Some(x));
        }
        tried += 1;
        if tried >= 1000 {
            break;
        }
    }
    let mut rng = cfg.rng(0x150);
    for _ in 0..1000 {
        let mut x = Matrix::zeros(&m.field, n.dim, m.dim);
        for b in &basis {
            x.add_scaled(rng.gen_range(0..q), b);
        }
        if x.is_invertible() {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// Isomorphism of irreducible modules: `i(M, N) != 0`.
pub fn is_isomorphic_irreducible(m: &Representation, n: &Representation) -> Result<bool> {
    Ok(m.dim == n.dim && intertwining_number(m, n)? != 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{group_from_permutations, AbelianGroupSpec, SemidirectGroup};

    fn s3_sd(p: u64) -> (SemidirectGroup, FieldSpec) {
        let c2 = Arc::new(group_from_permutations(&[vec![1, 0]]).unwrap());
        let g = SemidirectGroup::new(AbelianGroupSpec::new(vec![3]).unwrap(), &c2, vec![vec![vec![-1]]]).unwrap();
        (g, FieldSpec::prime(p).unwrap())
    }

    fn c4() -> Group {
        Arc::new(group_from_permutations(&[vec![1, 2, 3, 0]]).unwrap())
    }

    fn mat(f: &FieldSpec, rows: &[&[u32]]) -> Matrix {
        Matrix::from_rows(f, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn validated_construction() {
        let f7 = FieldSpec::prime(7).unwrap();
        let c2 = Arc::new(group_from_permutations(&[vec![1, 0]]).unwrap());
        assert!(Representation::linear(&c2, &f7, &[6]).is_ok());
        let c3 = Arc::new(group_from_permutations(&[vec![1, 2, 0]]).unwrap());
        assert!(Representation::linear(&c3, &f7, &[2]).is_ok());
        assert!(matches!(Representation::linear(&c3, &f7, &[3]), Err(Error::RelationViolation(_))));
        assert_eq!(Representation::linear(&c3, &f7, &[0]).unwrap_err(), Error::SingularImage(0));
    }

    #[test]
    fn induction_from_c2_to_c4() {
        let f3 = FieldSpec::prime(3).unwrap();
        let g = c4();
        let gen = g.generators()[0];
        let h = Subgroup::generated(&g, &[g.mul(gen, gen)]).unwrap();
        let l = Representation::linear(h.group(), &f3, &[2]).unwrap();
        let ind = induce(&l, &h).unwrap();
        assert_eq!(ind.images()[0], mat(&f3, &[&[0, 2], &[1, 0]]));
        ind.check_relations().unwrap();
        assert_eq!(intertwining_number(&ind, &ind).unwrap(), 2);
        assert_eq!(intertwining_number(&l, &l).unwrap(), 1);
        // conjugating by the generator changes nothing on the centre
        let (k, conj) = conjugate_rep(&l, &h, gen).unwrap();
        assert!(k.same_elements(&h));
        assert_eq!(conj.images(), l.images());
    }

    #[test]
    fn induction_from_c3_to_s3() {
        let (sd, f7) = s3_sd(7);
        let n = sd.n_subgroup();
        let chi2 = Representation::linear(n.group(), &f7, &[2]).unwrap();
        let ind = induce(&chi2, n).unwrap();
        ind.check_relations().unwrap();
        assert_eq!(ind.images()[0], mat(&f7, &[&[2, 0], &[0, 4]]));
        assert_eq!(ind.images()[1], mat(&f7, &[&[0, 1], &[1, 0]]));
        let res = restrict(&ind, n).unwrap();
        assert_eq!(res.images()[0], mat(&f7, &[&[2, 0], &[0, 4]]));
        let b = sd.group().generators()[1];
        let (k, conj) = conjugate_rep(&chi2, n, b).unwrap();
        assert!(k.same_elements(n));
        let on_n = restrict(&conj, &n.relative_to(&k).unwrap()).unwrap();
        let chi4 = Representation::linear(n.group(), &f7, &[4]).unwrap();
        assert_eq!(on_n, chi4);
    }

    #[test]
    fn intertwining_of_characters_of_c3() {
        let f7 = FieldSpec::prime(7).unwrap();
        let c3 = Arc::new(group_from_permutations(&[vec![1, 2, 0]]).unwrap());
        let chi2 = Representation::linear(&c3, &f7, &[2]).unwrap();
        let chi4 = Representation::linear(&c3, &f7, &[4]).unwrap();
        assert_eq!(intertwining_number(&chi2, &chi4).unwrap(), 0);
        assert!(is_disjoint(&chi2, &chi4).unwrap());
        assert!(!is_disjoint(&chi2, &chi2).unwrap());
        let triv = Representation::trivial(&c3, &f7);
        assert_eq!(intertwining_number(&triv, &triv).unwrap(), 1);
    }

    #[test]
    fn disjointness_refused_in_modular_case() {
        let f3 = FieldSpec::prime(3).unwrap();
        let c3 = Arc::new(group_from_permutations(&[vec![1, 2, 0]]).unwrap());
        let t = Representation::trivial(&c3, &f3);
        assert_eq!(is_disjoint(&t, &t).unwrap_err(), Error::CharacteristicDivides { p: 3, order: 3 });
    }

    #[test]
    fn explicit_isomorphism_found() {
        let (sd, f7) = s3_sd(7);
        let n = sd.n_subgroup();
        let a = induce(&Representation::linear(n.group(), &f7, &[2]).unwrap(), n).unwrap();
        let b = induce(&Representation::linear(n.group(), &f7, &[4]).unwrap(), n).unwrap();
        let x = find_isomorphism(&a, &b, &Config::default()).unwrap().unwrap();
        for (ga, gb) in a.images().iter().zip(b.images()) {
            assert_eq!(x.mul(ga), gb.mul(&x));
        }
    }
}
