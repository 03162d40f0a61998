//! Finite groups presented by explicit multiplication tables, with
//! element index 0 as the identity. This is the encoding used for the
//! acting group and for the total groups of extensions; it is fully
//! general and in particular admits nonabelian groups.

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl FiniteGroup {
    /// Validates the table: index 0 must be the identity, rows and
    /// columns must be permutations, the operation associative.
    pub fn from_table(mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = mul.len();
        let bad = || Error::MalformedExtension("invalid multiplication table".into());
        if n == 0 {
            return Err(bad());
        }
        for row in &mul {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(bad());
            }
        }
        for i in 0..n {
            if mul[0][i] != i || mul[i][0] != i {
                return Err(bad());
            }
        }
        for i in 0..n {
            let mut seen_r = vec![false; n];
            let mut seen_c = vec![false; n];
            for j in 0..n {
                seen_r[mul[i][j]] = true;
                seen_c[mul[j][i]] = true;
            }
            if seen_r.contains(&false) || seen_c.contains(&false) {
                return Err(bad());
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(bad());
                    }
                }
            }
        }
        let mut inv = vec![0usize; n];
        for a in 0..n {
            inv[a] = (0..n).find(|&b| mul[a][b] == 0).ok_or_else(bad)?;
        }
        Ok(FiniteGroup { mul, inv })
    }

    pub fn trivial() -> Self {
        FiniteGroup {
            mul: vec![vec![0]],
            inv: vec![0],
        }
    }

    /// Cyclic group of order n.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let mul = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        FiniteGroup::from_table(mul).expect("cyclic table is valid")
    }

    /// Direct product, elements indexed as `a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Self {
        let n = self.order();
        let m = other.order();
        let mul = (0..n * m)
            .map(|x| {
                let (a1, b1) = (x / m, x % m);
                (0..n * m)
                    .map(|y| {
                        let (a2, b2) = (y / m, y % m);
                        self.mul[a1][a2] * m + other.mul[b1][b2]
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(mul).expect("product table is valid")
    }

    /// Dihedral group of order 2n: rotations 0..n, reflections n..2n.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        let ord = 2 * n;
        let mut mul = vec![vec![0usize; ord]; ord];
        for i in 0..ord {
            for j in 0..ord {
                let (ri, fi) = (i % n, i / n);
                let (rj, fj) = (j % n, j / n);
                // r^ri f^fi . r^rj f^fj, with f r = r^-1 f
                let r = if fi == 0 { (ri + rj) % n } else { (ri + n - rj % n) % n };
                let f = (fi + fj) % 2;
                mul[i][j] = f * n + r;
            }
        }
        FiniteGroup::from_table(mul).expect("dihedral table is valid")
    }

    /// Symmetric group S3 as a table (identity first).
    pub fn s3() -> Self {
        FiniteGroup::dihedral(3)
    }

    /// A named small group: "C1", "C2", "C3", "C4", "C2xC2", "C6", "S3".
    pub fn named(name: &str) -> Result<Self> {
        match name {
            "C1" => Ok(FiniteGroup::trivial()),
            "C2" => Ok(FiniteGroup::cyclic(2)),
            "C3" => Ok(FiniteGroup::cyclic(3)),
            "C4" => Ok(FiniteGroup::cyclic(4)),
            "C6" => Ok(FiniteGroup::cyclic(6)),
            "C2xC2" => Ok(FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2))),
            "S3" => Ok(FiniteGroup::s3()),
            "D4" => Ok(FiniteGroup::dihedral(4)),
            other => Err(Error::MalformedExtension(format!("unknown group name {other:?}"))),
        }
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a..n).all(|b| self.mul[a][b] == self.mul[b][a]))
    }

    pub fn elem_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.op(x, a);
            k += 1;
        }
        k
    }

    /// Closure of a set of elements under multiplication and inverses.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut set = vec![false; self.order()];
        set[0] = true;
        let mut stack: Vec<usize> = vec![0];
        let mut frontier: Vec<usize> = gens.to_vec();
        while let Some(g) = frontier.pop() {
            if !set[g] {
                set[g] = true;
                stack.push(g);
                for &h in &stack.clone() {
                    frontier.push(self.op(g, h));
                    frontier.push(self.op(h, g));
                }
                frontier.push(self.inv(g));
            }
        }
        let mut out: Vec<usize> = (0..self.order()).filter(|&i| set[i]).collect();
        out.sort_unstable();
        out
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        if !elems.contains(&0) {
            return false;
        }
        elems
            .iter()
            .all(|&a| elems.iter().all(|&b| elems.contains(&self.op(a, b))))
    }

    pub fn is_normal(&self, elems: &[usize]) -> bool {
        self.is_subgroup(elems)
            && (0..self.order()).all(|g| {
                elems
                    .iter()
                    .all(|&h| elems.contains(&self.op(self.op(g, h), self.inv(g))))
            })
    }

    /// A small generating set found greedily.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.subgroup_closure(&gens);
        for g in 1..self.order() {
            if !span.contains(&g) {
                gens.push(g);
                span = self.subgroup_closure(&gens);
                if span.len() == self.order() {
                    break;
                }
            }
        }
        gens
    }

    /// Words expressing every element as a product of the given
    /// generators (indices into `gens`), found by BFS from the identity.
    pub fn words(&self, gens: &[usize]) -> Option<Vec<Vec<usize>>> {
        let n = self.order();
        let mut words: Vec<Option<Vec<usize>>> = vec![None; n];
        words[0] = Some(vec![]);
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (gi, &g) in gens.iter().enumerate() {
                let y = self.op(x, g);
                if words[y].is_none() {
                    let mut w = words[x].clone().unwrap();
                    w.push(gi);
                    words[y] = Some(w);
                    queue.push_back(y);
                }
            }
        }
        words.into_iter().collect()
    }

    /// Quotient by a normal subgroup. Returns the quotient group, the
    /// projection (element -> quotient index), and a section picking the
    /// smallest representative per coset (identity coset first).
    pub fn quotient(&self, normal: &[usize]) -> Result<(FiniteGroup, Vec<usize>, Vec<usize>)> {
        if !self.is_normal(normal) {
            return Err(Error::MalformedExtension("subgroup is not normal".into()));
        }
        let n = self.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps: Vec<usize> = Vec::new();
        for g in 0..n {
            if coset_of[g] == usize::MAX {
                let idx = reps.len();
                reps.push(g);
                for &h in normal {
                    coset_of[self.op(g, h)] = idx;
                }
            }
        }
        let q = reps.len();
        let mut mul = vec![vec![0usize; q]; q];
        for a in 0..q {
            for b in 0..q {
                mul[a][b] = coset_of[self.op(reps[a], reps[b])];
            }
        }
        let qg = FiniteGroup::from_table(mul)?;
        Ok((qg, coset_of, reps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_and_product() {
        let c4 = FiniteGroup::cyclic(4);
        assert_eq!(c4.elem_order(1), 4);
        assert_eq!(c4.inv(3), 1);
        let v4 = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2));
        assert!(v4.is_abelian());
        assert!((1..4).all(|i| v4.elem_order(i) == 2));
    }

    #[test]
    fn s3_is_nonabelian_with_normal_c3() {
        let s3 = FiniteGroup::s3();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        let rot = s3.subgroup_closure(&[1]);
        assert_eq!(rot.len(), 3);
        assert!(s3.is_normal(&rot));
        let refl = s3.subgroup_closure(&[3]);
        assert_eq!(refl.len(), 2);
        assert!(!s3.is_normal(&refl));
        let (q, _, _) = s3.quotient(&rot).unwrap();
        assert_eq!(q.order(), 2);
    }

    #[test]
    fn words_express_elements() {
        let d4 = FiniteGroup::dihedral(4);
        let gens = d4.generating_set();
        let words = d4.words(&gens).unwrap();
        for (x, w) in words.iter().enumerate() {
            let mut acc = 0usize;
            for &gi in w {
                acc = d4.op(acc, gens[gi]);
            }
            assert_eq!(acc, x);
        }
    }
}
