//! Irreducible representations of `G = N ⋊ H` with `N` abelian, built from
//! orbits of one-dimensional characters of `N` and irreducibles of their
//! stabilizers in `H`.

use crate::error::{Error, Result};
use crate::fields::{gcd, FieldSpec, Scalar};
use crate::groups::{AbelianGroupSpec, SemidirectGroup, Subgroup};
use crate::linalg::Matrix;
use crate::mackey::{mackey_sufficient, MackeyReport};
use crate::repr::{
    induce, intertwining_number, irreducibles_of_group_with, is_irreducible_with, require_semisimple, Config,
    Representation,
};

/// A homomorphism `N -> K*`, stored as the images `x_i` of the generators
/// of `N`; `chi(n) = prod x_i^{n_i}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Character {
    pub values: Vec<Scalar>,
}

impl Character {
    pub fn eval(&self, n: &AbelianGroupSpec, field: &FieldSpec, index: usize) -> Scalar {
        n.vector(index)
            .iter()
            .zip(&self.values)
            .fold(field.one(), |acc, (&e, &x)| field.mul(acc, field.pow(x, e as i64)))
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&x| x == 1)
    }
}

/// Every character of `N` over `field`, in lexicographic order of value
/// vectors.
pub fn characters(n: &AbelianGroupSpec, field: &FieldSpec) -> Result<Vec<Character>> {
    require_semisimple(n.order(), field)?;
    let roots: Vec<Vec<Scalar>> = n.moduli().iter().map(|&m| field.elements_of_order_dividing(m)).collect();
    let mut out = vec![Character { values: Vec::new() }];
    for r in &roots {
        out = out
            .into_iter()
            .flat_map(|c| {
                r.iter().map(move |&x| {
                    let mut v = c.values.clone();
                    v.push(x);
                    Character { values: v }
                })
            })
            .collect();
    }
    Ok(out)
}

/// Number of characters, `prod gcd(m_i, q - 1)`.
pub fn character_count(n: &AbelianGroupSpec, field: &FieldSpec) -> usize {
    n.moduli().iter().map(|&m| gcd(m, field.order() - 1) as usize).product()
}

/// `chi^g(a) = chi(g^-1 a g)`. Only the `H`-part of `g` matters since `N`
/// is abelian.
pub fn char_action(sd: &SemidirectGroup, field: &FieldSpec, chi: &Character, g: usize) -> Character {
    let (_, h) = sd.parts(g);
    let hinv = sd.h_group().inv(h);
    let n = sd.n_spec();
    let perm = sd.action_of(hinv);
    let values = (0..n.rank())
        .map(|j| {
            let mut e = vec![0; n.rank()];
            e[j] = 1;
            chi.eval(n, field, perm[n.index(&e)])
        })
        .collect();
    Character { values }
}

/// One orbit of `G` on the characters of `N`.
#[derive(Clone, Debug)]
pub struct OrbitData {
    pub rep: Character,
    /// Sorted.
    pub orbit: Vec<Character>,
    /// `I = {(n, h) : h ∈ H_chi}`, a subgroup of `G`.
    pub stabilizer: Subgroup,
    /// `H_chi = I ∩ H`, as a subgroup of `H`.
    pub h_stabilizer: Subgroup,
}

pub fn orbits(sd: &SemidirectGroup, field: &FieldSpec, chars: &[Character]) -> Result<Vec<OrbitData>> {
    orbits_with_offset(sd, field, chars, 0)
}

/// Orbits in order of their smallest member. The representative is the
/// member at position `offset` (mod the orbit size) of the sorted orbit;
/// offset 0 gives the smallest.
pub fn orbits_with_offset(
    sd: &SemidirectGroup,
    field: &FieldSpec,
    chars: &[Character],
    offset: usize,
) -> Result<Vec<OrbitData>> {
    let mut sorted = chars.to_vec();
    sorted.sort();
    let mut seen = std::collections::BTreeSet::new();
    let h = sd.h_group();
    let nn = sd.n_spec().order();
    let mut out = Vec::new();
    for chi in &sorted {
        if seen.contains(chi) {
            continue;
        }
        let mut orbit: Vec<Character> =
            (0..h.order()).map(|x| char_action(sd, field, chi, sd.element(0, x))).collect();
        orbit.sort();
        orbit.dedup();
        if orbit.iter().any(|c| sorted.binary_search(c).is_err()) {
            return Err(Error::Hypothesis("character list is not closed under the action".into()));
        }
        seen.extend(orbit.iter().cloned());
        let rep = orbit[offset % orbit.len()].clone();
        let h_elems: Vec<usize> = (0..h.order()).filter(|&x| char_action(sd, field, &rep, sd.element(0, x)) == rep).collect();
        let g_elems: Vec<usize> = h_elems.iter().flat_map(|&x| (0..nn).map(move |n| sd.element(n, x))).collect();
        let h_stabilizer = Subgroup::from_elements(h, &h_elems)?;
        let stabilizer = Subgroup::from_elements(sd.group(), &g_elems)?;
        out.push(OrbitData { rep, orbit, stabilizer, h_stabilizer });
    }
    Ok(out)
}

/// `(n, h) ↦ chi(n)` on the stabilizer `I` of `chi`.
pub fn extend_character(sd: &SemidirectGroup, field: &FieldSpec, chi: &Character, i: &Subgroup) -> Result<Representation> {
    let values: Vec<Scalar> = i
        .ambient_generators()
        .iter()
        .map(|&g| chi.eval(sd.n_spec(), field, sd.parts(g).0))
        .collect();
    Representation::linear(i.group(), field, &values).map_err(|e| match e {
        Error::RelationViolation(_) => Error::Hypothesis("subgroup does not stabilize the character".into()),
        other => other,
    })
}

/// `(n, h) ↦ chi(n) rho(h)` on `I`, with `rho` a representation of
/// `h_stab.group()` and `chi_ext` from [`extend_character`].
pub fn tensor_char(
    sd: &SemidirectGroup,
    chi_ext: &Representation,
    rho: &Representation,
    i: &Subgroup,
    h_stab: &Subgroup,
) -> Result<Representation> {
    if chi_ext.dim() != 1 || !chi_ext.group().same_as(i.group()) || !rho.group().same_as(h_stab.group()) {
        return Err(Error::DimensionMismatch("tensor factors do not match the stabilizer".into()));
    }
    let field = rho.field();
    let images = i
        .ambient_generators()
        .iter()
        .enumerate()
        .map(|(slot, &g)| {
            let (_, h) = sd.parts(g);
            let local = h_stab.to_local(h).ok_or(Error::NotSubgroup)?;
            Ok(rho.image(local).scale(chi_ext.images()[slot].get(0, 0)))
        })
        .collect::<Result<Vec<Matrix>>>()?;
    Representation::from_images(i.group(), field, rho.dim(), images)
}

#[derive(Clone, Debug)]
pub struct ClassificationEntry {
    pub orbit_index: usize,
    pub chi: Character,
    pub orbit_size: usize,
    pub stabilizer_order: usize,
    /// `I`, the stabilizer of `chi` in `G`; `inducing` is a representation
    /// of its group.
    pub stabilizer: Subgroup,
    pub rho_index: usize,
    /// Irreducible representation of the stabilizer in `H`.
    pub rho: Representation,
    /// `chi ⊗ rho` on the stabilizer in `G`.
    pub inducing: Representation,
    pub theta: Representation,
    pub dim_theta: usize,
    pub endo_dim: usize,
    pub certified_irreducible: bool,
    pub mackey: MackeyReport,
}

pub fn classify(sd: &SemidirectGroup, field: &FieldSpec, cfg: &Config) -> Result<Vec<ClassificationEntry>> {
    classify_with_offset(sd, field, cfg, 0)
}

/// Classification with orbit representatives chosen by
/// [`orbits_with_offset`].
pub fn classify_with_offset(
    sd: &SemidirectGroup,
    field: &FieldSpec,
    cfg: &Config,
    offset: usize,
) -> Result<Vec<ClassificationEntry>> {
    require_semisimple(sd.order(), field)?;
    let chars = characters(sd.n_spec(), field)?;
    let orbit_list = orbits_with_offset(sd, field, &chars, offset)?;
    let mut entries = Vec::new();
    for (j, od) in orbit_list.iter().enumerate() {
        if od.orbit.len() * od.stabilizer.order() != sd.order() {
            return Err(Error::Certification("orbit-stabilizer count fails".into()));
        }
        let ext = extend_character(sd, field, &od.rep, &od.stabilizer)?;
        let irr_h = irreducibles_of_group_with(od.h_stabilizer.group(), field, cfg)?;
        for (r, rho) in irr_h.into_iter().enumerate() {
            let psi = tensor_char(sd, &ext, &rho, &od.stabilizer, &od.h_stabilizer)?;
            let theta = induce(&psi, &od.stabilizer)?;
            let mackey = mackey_sufficient(&psi, &od.stabilizer, cfg)?;
            if !mackey.condition_holds {
                return Err(Error::Certification(format!(
                    "orbit {j}, irreducible {r}: a double coset outside the stabilizer is not disjoint"
                )));
            }
            if !is_irreducible_with(&theta, cfg)?.irreducible {
                return Err(Error::Certification(format!("orbit {j}, irreducible {r}: induced module is reducible")));
            }
            if theta.dim() != od.orbit.len() * rho.dim() {
                return Err(Error::Certification("induced dimension is not index times degree".into()));
            }
            entries.push(ClassificationEntry {
                orbit_index: j,
                chi: od.rep.clone(),
                orbit_size: od.orbit.len(),
                stabilizer_order: od.stabilizer.order(),
                stabilizer: od.stabilizer.clone(),
                rho_index: r,
                dim_theta: theta.dim(),
                endo_dim: mackey.direct_total,
                certified_irreducible: true,
                rho,
                inducing: psi,
                theta,
                mackey,
            });
        }
    }
    for a in 0..entries.len() {
        for b in a + 1..entries.len() {
            if intertwining_number(&entries[a].theta, &entries[b].theta)? != 0 {
                return Err(Error::Certification(format!("entries {a} and {b} are isomorphic")));
            }
        }
    }
    Ok(entries)
}

/// `(sum dim(theta)^2 / i(theta, theta), sum == |G|)`.
pub fn completeness_check(entries: &[ClassificationEntry], group_order: usize) -> (usize, bool) {
    let sum = entries.iter().map(|e| e.dim_theta * e.dim_theta / e.endo_dim).sum();
    (sum, sum == group_order)
}

/// Every irreducible `KN`-module is one-dimensional exactly when the
/// exponent of `N` divides `q - 1`.
pub fn field_compat(n: &AbelianGroupSpec, field: &FieldSpec) -> bool {
    (field.order() - 1).is_multiple_of(n.exponent())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchResult {
    /// Index into the entry list.
    Entry(usize),
    /// The restriction to `N` has no one-dimensional constituent.
    NoLinearConstituent,
}

/// `V_chi = {v : V(a) v = chi(a) v for all a in N}`, as a basis.
pub fn isotypic_space(sd: &SemidirectGroup, v: &Representation, chi: &Character) -> Vec<Vec<Scalar>> {
    let field = v.field();
    let d = v.dim();
    let k = sd.n_spec().rank();
    let mut stacked = Matrix::zeros(field, k * d, d);
    for i in 0..k {
        let a = &v.images()[i];
        for r in 0..d {
            for c in 0..d {
                let mut x = a.get(r, c);
                if r == c {
                    x = field.sub(x, chi.values[i]);
                }
                stacked.set(i * d + r, c, x);
            }
        }
    }
    stacked.nullspace()
}

/// Locates an irreducible `V` of `G` in the classification, or reports that
/// `V_N` has no one-dimensional constituent.
pub fn match_irreducible(
    sd: &SemidirectGroup,
    v: &Representation,
    entries: &[ClassificationEntry],
    cfg: &Config,
) -> Result<MatchResult> {
    if !v.group().same_as(sd.group()) {
        return Err(Error::GroupMismatch);
    }
    require_semisimple(sd.order(), v.field())?;
    if !is_irreducible_with(v, cfg)?.irreducible {
        return Err(Error::Hypothesis("representation is reducible".into()));
    }
    let chars = characters(sd.n_spec(), v.field())?;
    if chars.iter().all(|chi| isotypic_space(sd, v, chi).is_empty()) {
        return Ok(MatchResult::NoLinearConstituent);
    }
    let mut hits = Vec::new();
    for (idx, e) in entries.iter().enumerate() {
        if e.dim_theta == v.dim() && intertwining_number(v, &e.theta)? != 0 {
            hits.push(idx);
        }
    }
    match hits.as_slice() {
        [one] => Ok(MatchResult::Entry(*one)),
        [] => Err(Error::Certification("module with a linear constituent on N matches no entry".into())),
        _ => Err(Error::Certification(format!("module matches {} entries", hits.len()))),
    }
}

/// Reclassifies with a different representative in each orbit and checks
/// that the two listings agree entry for entry up to isomorphism.
pub fn rotated_representatives_agree(
    sd: &SemidirectGroup,
    field: &FieldSpec,
    entries: &[ClassificationEntry],
    cfg: &Config,
) -> Result<bool> {
    let rotated = classify_with_offset(sd, field, cfg, 1)?;
    if rotated.len() != entries.len() {
        return Ok(false);
    }
    let mut used = vec![false; rotated.len()];
    for e in entries {
        let mut found = false;
        for (i, r) in rotated.iter().enumerate() {
            if !used[i] && r.orbit_index == e.orbit_index && r.dim_theta == e.dim_theta
                && intertwining_number(&e.theta, &r.theta)? != 0
            {
                used[i] = true;
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::groups::{group_from_permutations, Group};
    use crate::repr::irreducibles_of_group;

    fn c2() -> Group {
        Arc::new(group_from_permutations(&[vec![1, 0]]).unwrap())
    }

    fn dihedral(n: u64, p: u64) -> (SemidirectGroup, FieldSpec) {
        let g = SemidirectGroup::new(AbelianGroupSpec::new(vec![n]).unwrap(), &c2(), vec![vec![vec![-1]]]).unwrap();
        (g, FieldSpec::prime(p).unwrap())
    }

    fn values(cs: &[Character]) -> Vec<Vec<Scalar>> {
        cs.iter().map(|c| c.values.clone()).collect()
    }

    #[test]
    fn character_lists() {
        let f7 = FieldSpec::prime(7).unwrap();
        let f5 = FieldSpec::prime(5).unwrap();
        let n3 = AbelianGroupSpec::new(vec![3]).unwrap();
        let n4 = AbelianGroupSpec::new(vec![4]).unwrap();
        assert_eq!(values(&characters(&n3, &f7).unwrap()), vec![vec![1], vec![2], vec![4]]);
        assert_eq!(values(&characters(&n3, &f5).unwrap()), vec![vec![1]]);
        assert_eq!(values(&characters(&n4, &f5).unwrap()), vec![vec![1], vec![2], vec![3], vec![4]]);
        assert_eq!(character_count(&n4, &f5), 4);
        assert!(field_compat(&n3, &f7));
        assert!(!field_compat(&n3, &f5));
        assert!(field_compat(&n4, &f5));
    }

    #[test]
    fn action_and_orbits_for_s3() {
        let (sd, f7) = dihedral(3, 7);
        let chars = characters(sd.n_spec(), &f7).unwrap();
        let b = sd.group().generators()[1];
        let a = sd.group().generators()[0];
        assert_eq!(char_action(&sd, &f7, &chars[1], b).values, vec![4]);
        assert_eq!(char_action(&sd, &f7, &chars[1], a), chars[1]);
        assert_eq!(char_action(&sd, &f7, &chars[0], b), chars[0]);
        let orbs = orbits(&sd, &f7, &chars).unwrap();
        assert_eq!(orbs.len(), 2);
        assert_eq!(orbs[0].orbit.len(), 1);
        assert_eq!(orbs[0].stabilizer.order(), 6);
        assert_eq!(orbs[0].h_stabilizer.order(), 2);
        assert_eq!(values(&orbs[1].orbit), vec![vec![2], vec![4]]);
        assert!(orbs[1].stabilizer.same_elements(sd.n_subgroup()));
        assert_eq!(orbs[1].h_stabilizer.order(), 1);
    }

    #[test]
    fn extension_and_tensor() {
        let (sd, f7) = dihedral(3, 7);
        let chars = characters(sd.n_spec(), &f7).unwrap();
        let orbs = orbits(&sd, &f7, &chars).unwrap();
        let whole = &orbs[0].stabilizer;
        let ext = extend_character(&sd, &f7, &chars[0], whole).unwrap();
        assert_eq!(ext, Representation::trivial(whole.group(), &f7));
        let irr = irreducibles_of_group(orbs[0].h_stabilizer.group(), &f7).unwrap();
        let sign = &irr[1];
        let t = tensor_char(&sd, &ext, sign, whole, &orbs[0].h_stabilizer).unwrap();
        let a = sd.group().generators()[0];
        let b = sd.group().generators()[1];
        let la = whole.to_local(a).unwrap();
        let lb = whole.to_local(b).unwrap();
        assert_eq!(t.image(la).get(0, 0), 1);
        assert_eq!(t.image(lb).get(0, 0), 6);
        // G does not stabilize chi_2
        assert!(matches!(extend_character(&sd, &f7, &chars[1], whole), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn classification_of_s3_over_gf7() {
        let (sd, f7) = dihedral(3, 7);
        let entries = classify(&sd, &f7, &Config::default()).unwrap();
        assert_eq!(entries.iter().map(|e| e.dim_theta).collect::<Vec<_>>(), vec![1, 1, 2]);
        assert_eq!(entries.iter().map(|e| e.endo_dim).collect::<Vec<_>>(), vec![1, 1, 1]);
        assert_eq!(completeness_check(&entries, 6), (6, true));
        let irr = irreducibles_of_group(sd.group(), &f7).unwrap();
        let two = irr.iter().find(|r| r.dim() == 2).unwrap();
        assert_eq!(match_irreducible(&sd, two, &entries, &Config::default()).unwrap(), MatchResult::Entry(2));
        let triv = Representation::trivial(sd.group(), &f7);
        assert_eq!(match_irreducible(&sd, &triv, &entries, &Config::default()).unwrap(), MatchResult::Entry(0));
        assert!(rotated_representatives_agree(&sd, &f7, &entries, &Config::default()).unwrap());
    }

    #[test]
    fn classification_of_d4_over_gf5() {
        let (sd, f5) = dihedral(4, 5);
        let entries = classify(&sd, &f5, &Config::default()).unwrap();
        let mut dims: Vec<usize> = entries.iter().map(|e| e.dim_theta).collect();
        assert_eq!(dims, vec![1, 1, 2, 1, 1]);
        dims.sort();
        assert_eq!(dims, vec![1, 1, 1, 1, 2]);
        assert_eq!(completeness_check(&entries, 8), (8, true));
        let orbs = orbits(&sd, &f5, &characters(sd.n_spec(), &f5).unwrap()).unwrap();
        assert_eq!(orbs.iter().map(|o| o.orbit.len()).collect::<Vec<_>>(), vec![1, 2, 1]);
    }

    #[test]
    fn s3_over_gf5_is_incomplete() {
        let (sd, f5) = dihedral(3, 5);
        let entries = classify(&sd, &f5, &Config::default()).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(completeness_check(&entries, 6), (2, false));
        let irr = irreducibles_of_group(sd.group(), &f5).unwrap();
        let two = irr.iter().find(|r| r.dim() == 2).unwrap();
        assert_eq!(
            match_irreducible(&sd, two, &entries, &Config::default()).unwrap(),
            MatchResult::NoLinearConstituent
        );
    }

    #[test]
    fn direct_products_are_abelian() {
        let f7 = FieldSpec::prime(7).unwrap();
        let sd = SemidirectGroup::new(AbelianGroupSpec::new(vec![3]).unwrap(), &c2(), vec![vec![vec![1]]]).unwrap();
        let entries = classify(&sd, &f7, &Config::default()).unwrap();
        assert_eq!(entries.len(), 6);
        assert!(entries.iter().all(|e| e.dim_theta == 1));
        let f3 = FieldSpec::prime(3).unwrap();
        let sd = SemidirectGroup::new(AbelianGroupSpec::new(vec![2]).unwrap(), &c2(), vec![vec![vec![1]]]).unwrap();
        let entries = classify(&sd, &f3, &Config::default()).unwrap();
        assert_eq!(completeness_check(&entries, 4), (4, true));
    }
}
