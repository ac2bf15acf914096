use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Shared handle to an enumerated group.
pub type Group = Arc<FiniteGroup>;

/// Default bound on the closure computed by [`group_from_permutations`].
pub const DEFAULT_CLOSURE_BOUND: usize = 10_000;

/// Largest order for which associativity is checked on every triple.
const FULL_ASSOCIATIVITY_CHECK: usize = 64;

/// A finite group given by its full multiplication table.
///
/// Element 0 is the identity. Every element carries a word in the
/// generators, found breadth-first, through which representations extend
/// generator images to the whole group.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<u32>,
    inv: Vec<u32>,
    gens: Vec<usize>,
    gen_names: Vec<String>,
    /// `(prefix element, generator slot)` with `element = prefix * gens[slot]`.
    parent: Vec<Option<(usize, usize)>>,
    /// Elements in breadth-first order, identity first.
    bfs: Vec<usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {}, gens {:?})", self.order, self.gen_names)
    }
}

impl FiniteGroup {
    /// Builds a group from a multiplication table (`mult[a * order + b] = a*b`)
    /// and a generating list of elements.
    pub fn from_table(order: usize, mult: Vec<u32>, gens: Vec<usize>, gen_names: Vec<String>) -> Result<Self> {
        if order == 0 || mult.len() != order * order {
            return Err(Error::InvalidTable("table size does not match the order".into()));
        }
        if gens.len() != gen_names.len() || gens.iter().any(|&g| g >= order) {
            return Err(Error::InvalidTable("bad generator list".into()));
        }
        if mult.iter().any(|&x| x as usize >= order) {
            return Err(Error::InvalidTable("entry out of range".into()));
        }
        for a in 0..order {
            if mult[a] as usize != a || mult[a * order] as usize != a {
                return Err(Error::InvalidTable("element 0 is not the identity".into()));
            }
        }
        let mut inv = vec![u32::MAX; order];
        for a in 0..order {
            let row = &mult[a * order..(a + 1) * order];
            match row.iter().position(|&x| x == 0) {
                Some(b) => inv[a] = b as u32,
                None => return Err(Error::InvalidTable(format!("element {a} has no inverse"))),
            }
        }
        let mut parent = vec![None; order];
        let mut seen = vec![false; order];
        seen[0] = true;
        let mut bfs = vec![0];
        let mut next = 0;
        while next < bfs.len() {
            let g = bfs[next];
            next += 1;
            for (slot, &s) in gens.iter().enumerate() {
                let h = mult[g * order + s] as usize;
                if !seen[h] {
                    seen[h] = true;
                    parent[h] = Some((g, slot));
                    bfs.push(h);
                }
            }
        }
        if bfs.len() != order {
            return Err(Error::InvalidTable("generators do not generate the group".into()));
        }
        let group = FiniteGroup { order, mult, inv, gens, gen_names, parent, bfs };
        group.check_associativity()?;
        Ok(group)
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.order;
        let bad = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c));
        if n <= FULL_ASSOCIATIVITY_CHECK {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if bad(a, b, c) {
                            return Err(Error::InvalidTable(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for _ in 0..20_000 {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if bad(a, b, c) {
                    return Err(Error::InvalidTable(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `x g x^-1`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(x, g), self.inv(x))
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn generator_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn bfs_order(&self) -> &[usize] {
        &self.bfs
    }

    pub fn parent(&self, g: usize) -> Option<(usize, usize)> {
        self.parent[g]
    }

    /// Word in generator slots whose product is `g`.
    pub fn word(&self, mut g: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while let Some((prev, slot)) = self.parent[g] {
            w.push(slot);
            g = prev;
        }
        w.reverse();
        w
    }

    /// The word of `g` written with generator names, `1` for the identity.
    pub fn word_string(&self, g: usize) -> String {
        let w = self.word(g);
        if w.is_empty() {
            return "1".into();
        }
        // collapse runs into powers
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            let name = &self.gen_names[w[i]];
            parts.push(if j - i == 1 { name.clone() } else { format!("{name}^{}", j - i) });
            i = j;
        }
        parts.join("*")
    }

    /// Parses `a*b^2*c` (also accepting whitespace as separator and `1` for
    /// the identity) into an element.
    pub fn parse_word(&self, word: &str) -> Result<usize> {
        let names: HashMap<&str, usize> =
            self.gen_names.iter().enumerate().map(|(i, n)| (n.as_str(), self.gens[i])).collect();
        let mut acc = 0;
        for token in word.split(|c: char| c == '*' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            if token == "1" || token == "e" {
                continue;
            }
            let (name, exp) = match token.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e.trim().parse().map_err(|_| Error::Parse(format!("bad exponent in {token:?}")))?;
                    (n.trim(), e)
                }
                None => (token, 1),
            };
            let &g = names
                .get(name)
                .ok_or_else(|| Error::Parse(format!("unknown generator {name:?} in word {word:?}")))?;
            let base = if exp < 0 { self.inv(g) } else { g };
            for _ in 0..exp.unsigned_abs() {
                acc = self.mul(acc, base);
            }
        }
        Ok(acc)
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Closure of a set of elements under multiplication, sorted.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut out = vec![0];
        let mut next = 0;
        while next < out.len() {
            let g = out[next];
            next += 1;
            for &s in gens {
                let h = self.mul(g, s);
                if !seen[h] {
                    seen[h] = true;
                    out.push(h);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Structural equality of the group presentations used by
    /// representations: same table and same generators.
    pub fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }
}

fn compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    // (a b)(i) = a(b(i)): apply b first
    b.iter().map(|&i| a[i as usize]).collect()
}

/// Enumerates the group generated by permutations of `{0..n-1}`, given as
/// image arrays. Elements are numbered in breadth-first discovery order
/// (multiplying on the right by the generators in the given order).
pub fn group_from_permutations(gens: &[Vec<u32>]) -> Result<FiniteGroup> {
    group_from_permutations_bounded(gens, DEFAULT_CLOSURE_BOUND).map(|(g, _)| g)
}

/// As [`group_from_permutations`], also returning the permutation of each
/// element.
pub fn group_from_permutations_bounded(gens: &[Vec<u32>], bound: usize) -> Result<(FiniteGroup, Vec<Vec<u32>>)> {
    let degree = gens.first().map_or(0, Vec::len);
    for (i, g) in gens.iter().enumerate() {
        let mut hit = vec![false; degree];
        if g.len() != degree {
            return Err(Error::NotBijection(i));
        }
        for &x in g {
            if x as usize >= degree || hit[x as usize] {
                return Err(Error::NotBijection(i));
            }
            hit[x as usize] = true;
        }
    }
    let identity: Vec<u32> = (0..degree as u32).collect();
    let mut elems = vec![identity.clone()];
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    index.insert(identity, 0);
    let mut next = 0;
    while next < elems.len() {
        let g = elems[next].clone();
        next += 1;
        for s in gens {
            let h = compose(&g, s);
            if !index.contains_key(&h) {
                if elems.len() >= bound {
                    return Err(Error::ClosureTooLarge(bound));
                }
                index.insert(h.clone(), elems.len());
                elems.push(h);
            }
        }
    }
    let n = elems.len();
    let mut mult = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            mult[a * n + b] = index[&compose(&elems[a], &elems[b])] as u32;
        }
    }
    let gen_idx: Vec<usize> = gens.iter().map(|s| index[s]).collect();
    let names = (0..gens.len()).map(|i| format!("g{i}")).collect();
    Ok((FiniteGroup::from_table(n, mult, gen_idx, names)?, elems))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_permutation_groups() {
        assert_eq!(group_from_permutations(&[vec![1, 2, 0]]).unwrap().order(), 3);
        let s3 = group_from_permutations(&[vec![1, 2, 0], vec![1, 0, 2]]).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        let v4 = group_from_permutations(&[vec![1, 0, 2, 3], vec![0, 1, 3, 2]]).unwrap();
        assert_eq!(v4.order(), 4);
        assert!((1..4).all(|g| v4.element_order(g) == 2));
    }

    #[test]
    fn trivial_group_from_no_generators() {
        let g = group_from_permutations(&[]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.word_string(0), "1");
    }

    #[test]
    fn rejects_non_bijections_and_big_closures() {
        assert_eq!(group_from_permutations(&[vec![0, 0, 1]]).unwrap_err(), Error::NotBijection(0));
        let s5 = [vec![1, 2, 3, 4, 0], vec![1, 0, 2, 3, 4]];
        assert_eq!(group_from_permutations_bounded(&s5, 100).unwrap_err(), Error::ClosureTooLarge(100));
        assert_eq!(group_from_permutations(&s5).unwrap().order(), 120);
    }

    #[test]
    fn words_evaluate_to_their_elements() {
        let s4 = group_from_permutations(&[vec![1, 2, 3, 0], vec![1, 0, 2, 3]]).unwrap();
        for g in 0..s4.order() {
            let w = s4.word(g);
            let val = w.iter().fold(0, |acc, &slot| s4.mul(acc, s4.generators()[slot]));
            assert_eq!(val, g);
            assert_eq!(s4.parse_word(&s4.word_string(g)).unwrap(), g);
        }
        assert!(s4.parse_word("g7").is_err());
    }
}
