use std::sync::Arc;

use super::finite::{FiniteGroup, Group};
use super::subgroup::Subgroup;
use crate::error::{Error, Result};
use crate::fields::lcm;

/// Finite abelian group `Z/m_1 x .. x Z/m_k`. Elements are exponent vectors,
/// indexed in lexicographic order (first component most significant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroupSpec {
    moduli: Vec<u64>,
}

impl AbelianGroupSpec {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if moduli.iter().any(|&m| m < 2) {
            return Err(Error::InvalidTable("cyclic factor moduli must be at least 2".into()));
        }
        Ok(AbelianGroupSpec { moduli })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> usize {
        self.moduli.iter().product::<u64>() as usize
    }

    /// lcm of the moduli.
    pub fn exponent(&self) -> u64 {
        self.moduli.iter().fold(1, |a, &m| lcm(a, m))
    }

    pub fn vector(&self, mut index: usize) -> Vec<u64> {
        let mut v = vec![0; self.moduli.len()];
        for (i, &m) in self.moduli.iter().enumerate().rev() {
            v[i] = index as u64 % m;
            index /= m as usize;
        }
        v
    }

    pub fn index(&self, v: &[u64]) -> usize {
        v.iter().zip(&self.moduli).fold(0, |acc, (&x, &m)| acc * m as usize + (x % m) as usize)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (va, vb) = (self.vector(a), self.vector(b));
        let s: Vec<u64> = va.iter().zip(&vb).zip(&self.moduli).map(|((&x, &y), &m)| (x + y) % m).collect();
        self.index(&s)
    }

    /// Image of an exponent vector under an integer matrix.
    pub fn apply(&self, mat: &IntMatrix, v: &[u64]) -> Vec<u64> {
        mat.iter()
            .zip(&self.moduli)
            .map(|(row, &m)| {
                let s: i128 = row.iter().zip(v).map(|(&a, &x)| a as i128 * x as i128).sum();
                s.rem_euclid(m as i128) as u64
            })
            .collect()
    }

    /// Checks that `mat` induces a well-defined automorphism.
    pub fn check_automorphism(&self, mat: &IntMatrix, gen: usize) -> Result<Vec<usize>> {
        let k = self.rank();
        if mat.len() != k || mat.iter().any(|r| r.len() != k) {
            return Err(Error::NotAutomorphism { gen, reason: format!("expected a {k}x{k} matrix") });
        }
        // entry (i, j) sends m_j * e_j to A_ij m_j e_i, which must vanish mod m_i
        for i in 0..k {
            for j in 0..k {
                if (mat[i][j] as i128 * self.moduli[j] as i128).rem_euclid(self.moduli[i] as i128) != 0 {
                    return Err(Error::NotAutomorphism {
                        gen,
                        reason: format!("entry ({i},{j}) is incompatible with moduli {} and {}", self.moduli[i], self.moduli[j]),
                    });
                }
            }
        }
        let n = self.order();
        let mut perm = Vec::with_capacity(n);
        let mut hit = vec![false; n];
        for idx in 0..n {
            let img = self.index(&self.apply(mat, &self.vector(idx)));
            if hit[img] {
                return Err(Error::NotAutomorphism { gen, reason: "map is not invertible".into() });
            }
            hit[img] = true;
            perm.push(img);
        }
        Ok(perm)
    }
}

/// Square integer matrix acting on exponent vectors (column convention).
pub type IntMatrix = Vec<Vec<i64>>;

fn mat_mul(a: &IntMatrix, b: &IntMatrix, moduli: &[u64]) -> IntMatrix {
    let k = a.len();
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let s: i128 = (0..k).map(|t| a[i][t] as i128 * b[t][j] as i128).sum();
                    // row i only matters modulo m_i
                    s.rem_euclid(moduli[i] as i128) as i64
                })
                .collect()
        })
        .collect()
}

fn identity_mat(k: usize) -> IntMatrix {
    (0..k).map(|i| (0..k).map(|j| (i == j) as i64).collect()).collect()
}

/// `G = N ⋊ H` with `N` abelian and `H` acting through integer matrices.
///
/// Elements are pairs `(n, h)` stored at index `h * |N| + n`, multiplied by
/// `(n1, h1)(n2, h2) = (n1 + h1·n2, h1 h2)`. The generators of `G` are the
/// unit vectors of `N` (named `n0, n1, ..`) followed by the generators of `H`
/// (named `h0, h1, ..`).
#[derive(Clone, Debug)]
pub struct SemidirectGroup {
    n: AbelianGroupSpec,
    h: Group,
    action_gens: Vec<IntMatrix>,
    /// Per element of H: the permutation of N's element indices.
    action: Vec<Vec<usize>>,
    /// Per element of H: an integer matrix representing its action.
    action_mats: Vec<IntMatrix>,
    group: Group,
    n_sub: Subgroup,
    h_sub: Subgroup,
}

impl SemidirectGroup {
    pub fn new(n: AbelianGroupSpec, h: &Group, action_on_gens: Vec<IntMatrix>) -> Result<Self> {
        if action_on_gens.len() != h.generators().len() {
            return Err(Error::ActionNotHomomorphism(format!(
                "{} action matrices for {} generators of H",
                action_on_gens.len(),
                h.generators().len()
            )));
        }
        let gen_perms: Vec<Vec<usize>> = action_on_gens
            .iter()
            .enumerate()
            .map(|(i, m)| n.check_automorphism(m, i))
            .collect::<Result<_>>()?;
        let nn = n.order();
        let hn = h.order();
        let k = n.rank();
        // extend along breadth-first words: phi(g s) = phi(g) phi(s)
        let mut action = vec![Vec::new(); hn];
        let mut action_mats = vec![Vec::new(); hn];
        action[0] = (0..nn).collect();
        action_mats[0] = identity_mat(k);
        for &g in &h.bfs_order()[1..] {
            let (prev, slot) = h.parent(g).expect("non-identity has a parent");
            action[g] = gen_perms[slot].iter().map(|&x| action[prev][x]).collect();
            action_mats[g] = mat_mul(&action_mats[prev], &action_on_gens[slot], n.moduli());
        }
        for a in 0..hn {
            for b in 0..hn {
                let ab = h.mul(a, b);
                if (0..nn).any(|x| action[ab][x] != action[a][action[b][x]]) {
                    return Err(Error::ActionNotHomomorphism(format!(
                        "phi({}) != phi({}) phi({})",
                        h.word_string(ab),
                        h.word_string(a),
                        h.word_string(b)
                    )));
                }
            }
        }
        let order = nn * hn;
        let n_add: Vec<usize> = (0..nn * nn).map(|x| n.add(x / nn, x % nn)).collect();
        let mut mult = vec![0u32; order * order];
        for g1 in 0..order {
            let (n1, h1) = (g1 % nn, g1 / nn);
            for g2 in 0..order {
                let (n2, h2) = (g2 % nn, g2 / nn);
                let nprod = n_add[n1 * nn + action[h1][n2]];
                mult[g1 * order + g2] = (h.mul(h1, h2) * nn + nprod) as u32;
            }
        }
        let mut gens = Vec::new();
        let mut names = Vec::new();
        for i in 0..k {
            let mut e = vec![0; k];
            e[i] = 1;
            gens.push(n.index(&e));
            names.push(format!("n{i}"));
        }
        for (i, &s) in h.generators().iter().enumerate() {
            gens.push(s * nn);
            names.push(format!("h{i}"));
        }
        let group: Group = Arc::new(FiniteGroup::from_table(order, mult, gens.clone(), names)?);
        let n_sub = Subgroup::generated(&group, &gens[..k])?;
        let h_sub = Subgroup::generated(&group, &gens[k..])?;
        Ok(SemidirectGroup { n, h: h.clone(), action_gens: action_on_gens, action, action_mats, group, n_sub, h_sub })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn n_spec(&self) -> &AbelianGroupSpec {
        &self.n
    }

    pub fn h_group(&self) -> &Group {
        &self.h
    }

    pub fn action_generators(&self) -> &[IntMatrix] {
        &self.action_gens
    }

    /// `N` embedded as `{(n, 1)}`.
    pub fn n_subgroup(&self) -> &Subgroup {
        &self.n_sub
    }

    /// `H` embedded as `{(0, h)}`.
    pub fn h_subgroup(&self) -> &Subgroup {
        &self.h_sub
    }

    pub fn element(&self, n_index: usize, h: usize) -> usize {
        h * self.n.order() + n_index
    }

    /// `(n index, h)` of an element of `G`.
    pub fn parts(&self, g: usize) -> (usize, usize) {
        (g % self.n.order(), g / self.n.order())
    }

    /// Permutation of N's element indices induced by `h`.
    pub fn action_of(&self, h: usize) -> &[usize] {
        &self.action[h]
    }

    /// Integer matrix of the action of `h` on exponent vectors.
    pub fn action_matrix(&self, h: usize) -> &IntMatrix {
        &self.action_mats[h]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::group_from_permutations;

    fn c2() -> Group {
        Arc::new(group_from_permutations(&[vec![1, 0]]).unwrap())
    }

    #[test]
    fn abelian_indexing() {
        let a = AbelianGroupSpec::new(vec![2, 3]).unwrap();
        assert_eq!(a.order(), 6);
        assert_eq!(a.exponent(), 6);
        for i in 0..6 {
            assert_eq!(a.index(&a.vector(i)), i);
        }
        assert_eq!(a.vector(1), vec![0, 1]);
    }

    #[test]
    fn s3_as_c3_by_c2() {
        let n = AbelianGroupSpec::new(vec![3]).unwrap();
        let g = SemidirectGroup::new(n, &c2(), vec![vec![vec![-1]]]).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.group().is_abelian());
        assert!(g.n_subgroup().is_normal());
        assert_eq!(g.h_subgroup().order(), 2);
    }

    #[test]
    fn direct_product_is_abelian() {
        let n = AbelianGroupSpec::new(vec![3]).unwrap();
        let g = SemidirectGroup::new(n, &c2(), vec![vec![vec![1]]]).unwrap();
        assert!(g.group().is_abelian());
        assert!((0..6).any(|x| g.group().element_order(x) == 6));
    }

    #[test]
    fn non_automorphisms_rejected() {
        let n = AbelianGroupSpec::new(vec![4]).unwrap();
        assert!(matches!(
            SemidirectGroup::new(n, &c2(), vec![vec![vec![2]]]),
            Err(Error::NotAutomorphism { gen: 0, .. })
        ));
        // Z/2 x Z/4: sending e_0 (order 2) to e_1 (order 4) is ill-defined
        let n = AbelianGroupSpec::new(vec![2, 4]).unwrap();
        assert!(matches!(
            SemidirectGroup::new(n, &c2(), vec![vec![vec![0, 1], vec![1, 0]]]),
            Err(Error::NotAutomorphism { .. })
        ));
    }

    #[test]
    fn action_must_respect_relations() {
        // x -> 2x has order 2 mod 3 but C3 needs an automorphism of order dividing 3
        let c3 = Arc::new(group_from_permutations(&[vec![1, 2, 0]]).unwrap());
        let n = AbelianGroupSpec::new(vec![3]).unwrap();
        assert!(matches!(
            SemidirectGroup::new(n.clone(), &c3, vec![vec![vec![2]]]),
            Err(Error::ActionNotHomomorphism(_))
        ));
        let n7 = AbelianGroupSpec::new(vec![7]).unwrap();
        // 2 has order 3 mod 7: C7 ⋊ C3, the Frobenius group of order 21
        let f21 = SemidirectGroup::new(n7, &c3, vec![vec![vec![2]]]).unwrap();
        assert_eq!(f21.order(), 21);
    }
}
