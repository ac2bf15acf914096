use std::sync::Arc;

use super::finite::{FiniteGroup, Group};
use crate::error::{Error, Result};

/// A subgroup together with its own enumerated group structure.
///
/// `group` is a standalone [`FiniteGroup`] whose element `i` is the ambient
/// element `to_ambient[i]`; local element order follows ambient order, so the
/// identity stays first. Representations of the subgroup are representations
/// of `group`.
#[derive(Clone, Debug)]
pub struct Subgroup {
    ambient: Group,
    group: Group,
    to_ambient: Vec<usize>,
    from_ambient: Vec<Option<usize>>,
}

impl Subgroup {
    /// The whole group as a subgroup of itself.
    pub fn whole(g: &Group) -> Self {
        Subgroup {
            ambient: g.clone(),
            group: g.clone(),
            to_ambient: (0..g.order()).collect(),
            from_ambient: (0..g.order()).map(Some).collect(),
        }
    }

    /// Subgroup generated by ambient elements; the local generators are
    /// exactly `gens`, in order.
    pub fn generated(ambient: &Group, gens: &[usize]) -> Result<Self> {
        if gens.iter().any(|&g| g >= ambient.order()) {
            return Err(Error::NotSubgroup);
        }
        let elems = ambient.closure(gens);
        let names = gens.iter().map(|&g| ambient.word_string(g)).collect();
        Self::build(ambient, elems, gens.to_vec(), names)
    }

    /// Subgroup with the given element set. Generators are chosen greedily in
    /// ambient order.
    pub fn from_elements(ambient: &Group, elems: &[usize]) -> Result<Self> {
        let mut sorted = elems.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.first() != Some(&0) || sorted.iter().any(|&g| g >= ambient.order()) {
            return Err(Error::NotSubgroup);
        }
        let mut member = vec![false; ambient.order()];
        for &g in &sorted {
            member[g] = true;
        }
        for &a in &sorted {
            for &b in &sorted {
                if !member[ambient.mul(a, b)] {
                    return Err(Error::NotSubgroup);
                }
            }
        }
        let mut gens = Vec::new();
        let mut covered = vec![0usize];
        for &g in &sorted {
            if covered.binary_search(&g).is_err() {
                gens.push(g);
                covered = ambient.closure(&gens);
            }
        }
        let names = gens.iter().map(|&g| ambient.word_string(g)).collect();
        Self::build(ambient, sorted, gens, names)
    }

    fn build(ambient: &Group, elems: Vec<usize>, gens: Vec<usize>, names: Vec<String>) -> Result<Self> {
        let n = elems.len();
        let mut from_ambient = vec![None; ambient.order()];
        for (i, &g) in elems.iter().enumerate() {
            from_ambient[g] = Some(i);
        }
        let mut mult = vec![0u32; n * n];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                mult[i * n + j] = from_ambient[ambient.mul(a, b)].ok_or(Error::NotSubgroup)? as u32;
            }
        }
        let local_gens = gens.iter().map(|&g| from_ambient[g].unwrap()).collect();
        let group = FiniteGroup::from_table(n, mult, local_gens, names)?;
        Ok(Subgroup { ambient: ambient.clone(), group: Arc::new(group), to_ambient: elems, from_ambient })
    }

    /// Views `self` (a subgroup of some group containing `outer`) as a
    /// subgroup of `outer.group()`, sharing `self`'s group structure.
    pub fn relative_to(&self, outer: &Subgroup) -> Result<Subgroup> {
        if !self.ambient.same_as(&outer.ambient) {
            return Err(Error::GroupMismatch);
        }
        let mut from_ambient = vec![None; outer.order()];
        let mut to_ambient = Vec::with_capacity(self.order());
        for (i, &g) in self.to_ambient.iter().enumerate() {
            let local = outer.from_ambient[g].ok_or(Error::NotSubgroup)?;
            from_ambient[local] = Some(i);
            to_ambient.push(local);
        }
        Ok(Subgroup { ambient: outer.group.clone(), group: self.group.clone(), to_ambient, from_ambient })
    }

    pub fn ambient(&self) -> &Group {
        &self.ambient
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.to_ambient.len()
    }

    pub fn index(&self) -> usize {
        self.ambient.order() / self.order()
    }

    /// Ambient elements, sorted.
    pub fn elements(&self) -> &[usize] {
        &self.to_ambient
    }

    pub fn contains(&self, g: usize) -> bool {
        self.from_ambient.get(g).is_some_and(Option::is_some)
    }

    pub fn to_ambient(&self, local: usize) -> usize {
        self.to_ambient[local]
    }

    pub fn to_local(&self, g: usize) -> Option<usize> {
        self.from_ambient.get(g).copied().flatten()
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.ambient;
        (0..g.order()).all(|x| self.to_ambient.iter().all(|&h| self.contains(g.conjugate(x, h))))
    }

    /// Generators of the subgroup as ambient elements.
    pub fn ambient_generators(&self) -> Vec<usize> {
        self.group.generators().iter().map(|&l| self.to_ambient[l]).collect()
    }

    pub fn same_elements(&self, other: &Subgroup) -> bool {
        self.ambient.same_as(&other.ambient) && self.to_ambient == other.to_ambient
    }
}

/// Left coset representatives of `h` in its ambient group: first element of
/// each coset `tH` in ambient order, so the identity comes first.
pub fn left_coset_reps(h: &Subgroup) -> Vec<usize> {
    let g = h.ambient();
    let mut covered = vec![false; g.order()];
    let mut reps = Vec::with_capacity(h.index());
    for t in 0..g.order() {
        if covered[t] {
            continue;
        }
        reps.push(t);
        for &x in h.elements() {
            covered[g.mul(t, x)] = true;
        }
    }
    reps
}

/// Index of the left coset containing each ambient element, aligned with
/// [`left_coset_reps`].
pub fn left_coset_table(h: &Subgroup) -> (Vec<usize>, Vec<usize>) {
    let g = h.ambient();
    let reps = left_coset_reps(h);
    let mut which = vec![0; g.order()];
    for (i, &t) in reps.iter().enumerate() {
        for &x in h.elements() {
            which[g.mul(t, x)] = i;
        }
    }
    (reps, which)
}

/// Elements of the double coset `h1 x h2`, sorted.
pub fn double_coset(h1: &Subgroup, x: usize, h2: &Subgroup) -> Vec<usize> {
    let g = h1.ambient();
    let mut hit = vec![false; g.order()];
    for &a in h1.elements() {
        let ax = g.mul(a, x);
        for &b in h2.elements() {
            hit[g.mul(ax, b)] = true;
        }
    }
    (0..g.order()).filter(|&i| hit[i]).collect()
}

/// One representative per double coset `H1 x H2`, the first element of each
/// in ambient order.
pub fn double_coset_reps(h1: &Subgroup, h2: &Subgroup) -> Result<Vec<usize>> {
    if !h1.ambient().same_as(h2.ambient()) {
        return Err(Error::GroupMismatch);
    }
    let g = h1.ambient();
    let mut covered = vec![false; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if covered[x] {
            continue;
        }
        reps.push(x);
        for y in double_coset(h1, x, h2) {
            covered[y] = true;
        }
    }
    Ok(reps)
}

/// The conjugate subgroup `x H x^-1`, generated by the conjugates of `h`'s
/// generators in the same order.
pub fn conjugate_subgroup(h: &Subgroup, x: usize) -> Result<Subgroup> {
    let g = h.ambient();
    let gens: Vec<usize> = h.ambient_generators().iter().map(|&s| g.conjugate(x, s)).collect();
    Subgroup::generated(g, &gens)
}

/// `x H x^-1 ∩ K` as a subgroup of the ambient group.
pub fn conj_intersection(h: &Subgroup, x: usize, k: &Subgroup) -> Result<Subgroup> {
    if !h.ambient().same_as(k.ambient()) {
        return Err(Error::GroupMismatch);
    }
    let g = h.ambient();
    let elems: Vec<usize> =
        h.elements().iter().map(|&y| g.conjugate(x, y)).filter(|&y| k.contains(y)).collect();
    Subgroup::from_elements(g, &elems)
}
