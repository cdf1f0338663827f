//! Immutable finite posets stored as their full transitive closure.
//!
//! Elements are the dense labels `0..n`. Every constructor returns a value
//! whose relation is irreflexive, antisymmetric and transitively closed;
//! operations that relabel elements return the label map alongside.

use serde::{Deserialize, Serialize};

use crate::bits::ElemSet;
use crate::error::{Error, Result};

/// Hard ceiling on the number of elements. The ideal dynamic program keys
/// downsets by fixed-width masks of up to eight words.
pub const MAX_ELEMENTS: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    /// `below[v]` = { u : u ≺ v }
    below: Vec<ElemSet>,
    /// `above[u]` = { v : u ≺ v }
    above: Vec<ElemSet>,
    names: Option<Vec<String>>,
}

impl Poset {
    /// Builds the poset generated by `pairs` (each `(u, v)` meaning `u ≺ v`).
    /// Any generating set is accepted; the transitive closure is taken.
    pub fn from_relations(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_ELEMENTS {
            return Err(Error::CapExceeded {
                what: "poset size",
                limit: MAX_ELEMENTS,
                got: n,
                flag: "a smaller input",
            });
        }
        let mut above: Vec<ElemSet> = (0..n).map(|_| ElemSet::with_capacity(n)).collect();
        for &(u, v) in pairs {
            for l in [u, v] {
                if l >= n {
                    return Err(Error::LabelOutOfRange { label: l, n });
                }
            }
            if u == v {
                return Err(Error::CycleDetected(u));
            }
            above[u].insert(v);
        }
        // Warshall on bit rows.
        for k in 0..n {
            let row_k = above[k].clone();
            for row in above.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        if let Some(u) = (0..n).find(|&u| above[u].contains(u)) {
            return Err(Error::CycleDetected(u));
        }
        Ok(Self::from_above(n, above))
    }

    /// Same as [`Poset::from_relations`]; the name mirrors Hasse-diagram input.
    pub fn from_cover_relations(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        Self::from_relations(n, covers)
    }

    fn from_above(n: usize, above: Vec<ElemSet>) -> Self {
        let mut below: Vec<ElemSet> = (0..n).map(|_| ElemSet::with_capacity(n)).collect();
        for (u, row) in above.iter().enumerate() {
            for v in row.iter() {
                below[v].insert(u);
            }
        }
        Poset {
            n,
            below,
            above,
            names: None,
        }
    }

    /// Builds a poset from a closure predicate. The caller guarantees the
    /// predicate is a strict partial order; `validate` is run in debug builds.
    pub(crate) fn from_closed_fn(n: usize, lt: impl Fn(usize, usize) -> bool) -> Self {
        let above = (0..n)
            .map(|u| ElemSet::from_iter_n(n, (0..n).filter(|&v| lt(u, v))))
            .collect();
        let p = Self::from_above(n, above);
        debug_assert!(p.validate().is_ok());
        p
    }

    pub fn chain(n: usize) -> Self {
        Self::from_closed_fn(n, |u, v| u < v)
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_closed_fn(n, |_, _| false)
    }

    pub fn empty() -> Self {
        Self::antichain(0)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n {
            return Err(Error::precondition(format!(
                "{} names for {} elements",
                names.len(),
                self.n
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn name(&self, u: usize) -> String {
        match &self.names {
            Some(ns) => ns[u].clone(),
            None => u.to_string(),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `u ≺ v`
    #[inline]
    pub fn lt(&self, u: usize, v: usize) -> bool {
        self.above[u].contains(v)
    }

    /// `u ⪯ v`
    #[inline]
    pub fn le(&self, u: usize, v: usize) -> bool {
        u == v || self.lt(u, v)
    }

    #[inline]
    pub fn comparable(&self, u: usize, v: usize) -> bool {
        self.lt(u, v) || self.lt(v, u)
    }

    #[inline]
    pub fn incomparable(&self, u: usize, v: usize) -> bool {
        u != v && !self.comparable(u, v)
    }

    /// Strict down-set `{ u : u ≺ v }`.
    pub fn below(&self, v: usize) -> &ElemSet {
        &self.below[v]
    }

    /// Strict up-set `{ v : u ≺ v }`.
    pub fn above(&self, u: usize) -> &ElemSet {
        &self.above[u]
    }

    pub fn check_label(&self, u: usize) -> Result<()> {
        if u < self.n {
            Ok(())
        } else {
            Err(Error::LabelOutOfRange {
                label: u,
                n: self.n,
            })
        }
    }

    /// All pairs `(u, v)` with `u ≺ v`.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.above[u].iter().map(move |v| (u, v)))
            .collect()
    }

    /// Cover pairs `(u, v)`: `u ≺ v` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.above[u].iter() {
                let mut between = self.above[u].clone();
                between.intersect_with(&self.below[v]);
                if between.is_empty() {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Checks irreflexivity, antisymmetry, transitivity and the consistency
    /// of the two stored orientations.
    pub fn validate(&self) -> Result<()> {
        for u in 0..self.n {
            if self.lt(u, u) {
                return Err(Error::InternalContradiction(format!("{u} ≺ {u}")));
            }
            for v in self.above[u].iter() {
                if self.lt(v, u) {
                    return Err(Error::InternalContradiction(format!(
                        "{u} ≺ {v} and {v} ≺ {u}"
                    )));
                }
                if !self.below[v].contains(u) {
                    return Err(Error::InternalContradiction(format!(
                        "orientation mismatch at ({u}, {v})"
                    )));
                }
                if !self.above[v].is_subset(&self.above[u]) {
                    return Err(Error::InternalContradiction(format!(
                        "not transitively closed above {u} ≺ {v}"
                    )));
                }
            }
            if self.below[u].iter().any(|w| !self.lt(w, u)) {
                return Err(Error::InternalContradiction(format!(
                    "orientation mismatch below {u}"
                )));
            }
        }
        Ok(())
    }

    pub fn dual(&self) -> Self {
        Poset {
            n: self.n,
            below: self.above.clone(),
            above: self.below.clone(),
            names: self.names.clone(),
        }
    }

    /// `P + Q`: elements of `q` are relabeled by the offset `self.len()`.
    pub fn disjoint_sum(&self, q: &Poset) -> Self {
        let m = self.n;
        Self::from_closed_fn(m + q.n, |u, v| match (u < m, v < m) {
            (true, true) => self.lt(u, v),
            (false, false) => q.lt(u - m, v - m),
            _ => false,
        })
    }

    /// `P ⊕ Q`: every element of `self` lies below every element of `q`.
    pub fn linear_sum(&self, q: &Poset) -> Self {
        let m = self.n;
        Self::from_closed_fn(m + q.n, |u, v| match (u < m, v < m) {
            (true, true) => self.lt(u, v),
            (false, false) => q.lt(u - m, v - m),
            (true, false) => true,
            (false, true) => false,
        })
    }

    /// Induced subposet on `keep`, relabeled compactly in ascending label
    /// order. Returns the poset and `map[new] = old`.
    pub fn subposet(&self, keep: &[usize]) -> Result<(Poset, Vec<usize>)> {
        for &u in keep {
            self.check_label(u)?;
        }
        let mut map: Vec<usize> = keep.to_vec();
        map.sort_unstable();
        map.dedup();
        let sub = Self::from_closed_fn(map.len(), |i, j| self.lt(map[i], map[j]));
        let sub = match &self.names {
            Some(ns) => Poset {
                names: Some(map.iter().map(|&o| ns[o].clone()).collect()),
                ..sub
            },
            None => sub,
        };
        Ok((sub, map))
    }

    /// `P − z`, with `map[new] = old`.
    pub fn delete(&self, z: usize) -> Result<(Poset, Vec<usize>)> {
        self.check_label(z)?;
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != z).collect();
        self.subposet(&keep)
    }

    pub fn minimals(&self) -> Vec<usize> {
        (0..self.n).filter(|&u| self.below[u].is_empty()).collect()
    }

    pub fn maximals(&self) -> Vec<usize> {
        (0..self.n).filter(|&u| self.above[u].is_empty()).collect()
    }

    pub fn is_minimal(&self, x: usize) -> bool {
        x < self.n && self.below[x].is_empty()
    }

    /// `C(x)`: elements comparable to `x`, excluding `x`.
    pub fn comparable_set(&self, x: usize) -> Result<Vec<usize>> {
        self.check_label(x)?;
        let mut s = self.below[x].clone();
        s.union_with(&self.above[x]);
        Ok(s.iter().collect())
    }

    /// Cardinality of a longest chain.
    pub fn height(&self) -> usize {
        // Longest chain ending at each element, processed in a linear order.
        let order = self.some_linear_order();
        let mut best = vec![0usize; self.n];
        for &v in &order {
            best[v] = 1 + self.below[v].iter().map(|u| best[u]).max().unwrap_or(0);
        }
        best.into_iter().max().unwrap_or(0)
    }

    /// Size of a largest antichain, via Dilworth: `n` minus a maximum
    /// matching in the bipartite graph `u → v` for `u ≺ v`.
    pub fn width(&self) -> usize {
        let mut match_right: Vec<Option<usize>> = vec![None; self.n];
        let mut matched = 0;
        for u in 0..self.n {
            let mut seen = vec![false; self.n];
            if self.augment(u, &mut seen, &mut match_right) {
                matched += 1;
            }
        }
        self.n - matched
    }

    fn augment(&self, u: usize, seen: &mut [bool], match_right: &mut [Option<usize>]) -> bool {
        for v in self.above[u].iter() {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            let free = match match_right[v] {
                None => true,
                Some(w) => self.augment(w, seen, match_right),
            };
            if free {
                match_right[v] = Some(u);
                return true;
            }
        }
        false
    }

    /// A linear extension as a sequence of elements (smallest available
    /// label first).
    pub fn some_linear_order(&self) -> Vec<usize> {
        let mut indeg: Vec<usize> = (0..self.n).map(|v| self.below[v].len()).collect();
        let mut placed = vec![false; self.n];
        let mut out = Vec::with_capacity(self.n);
        while out.len() < self.n {
            let u = (0..self.n)
                .find(|&u| !placed[u] && indeg[u] == 0)
                .expect("closure is acyclic");
            placed[u] = true;
            out.push(u);
            for v in self.above[u].iter() {
                indeg[v] -= 1;
            }
        }
        out
    }

    /// Relabels by `perm` (`perm[old] = new`).
    pub fn relabel(&self, perm: &[usize]) -> Result<Poset> {
        if perm.len() != self.n {
            return Err(Error::precondition("permutation length mismatch"));
        }
        let mut inv = vec![usize::MAX; self.n];
        for (old, &new) in perm.iter().enumerate() {
            if new >= self.n || inv[new] != usize::MAX {
                return Err(Error::precondition("not a permutation"));
            }
            inv[new] = old;
        }
        Ok(Self::from_closed_fn(self.n, |a, b| self.lt(inv[a], inv[b])))
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            n: self.n,
            relations: self.covers().into_iter().map(|(u, v)| [u, v]).collect(),
            names: self.names.clone(),
        }
    }

    pub fn from_json(j: &PosetJson) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = j.relations.iter().map(|r| (r[0], r[1])).collect();
        let p = Self::from_relations(j.n, &pairs)?;
        match &j.names {
            Some(ns) => p.with_names(ns.clone()),
            None => Ok(p),
        }
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let j: PosetJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&j)
    }
}

/// Wire format: `{"n": int, "relations": [[u, v], ...]}` with `u ≺ v`.
/// Input relations may be any generating set; output relations are covers.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PosetJson {
    pub n: usize,
    pub relations: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v_poset() -> Poset {
        // x=0 ≺ y=1, x ≺ z=2
        Poset::from_relations(3, &[(0, 1), (0, 2)]).unwrap()
    }

    fn brute_width(p: &Poset) -> usize {
        let n = p.len();
        (0u32..1 << n)
            .filter(|&s| {
                (0..n).all(|u| {
                    s >> u & 1 == 0 || (0..n).all(|v| s >> v & 1 == 0 || !p.comparable(u, v))
                })
            })
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn closure_of_chain_covers() {
        let p = Poset::from_cover_relations(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.lt(0, 2));
        assert_eq!(p, Poset::chain(3));
        p.validate().unwrap();
    }

    #[test]
    fn empty_relation_is_antichain() {
        assert_eq!(Poset::from_relations(3, &[]).unwrap(), Poset::antichain(3));
    }

    #[test]
    fn cycle_and_range_errors() {
        assert_eq!(
            Poset::from_relations(2, &[(0, 1), (1, 0)]),
            Err(Error::CycleDetected(0))
        );
        assert!(matches!(
            Poset::from_relations(2, &[(0, 5)]),
            Err(Error::LabelOutOfRange { label: 5, n: 2 })
        ));
        assert!(matches!(
            Poset::from_relations(1, &[(0, 0)]),
            Err(Error::CycleDetected(0))
        ));
    }

    #[test]
    fn dual_examples() {
        let c = Poset::chain(3);
        let d = c.dual();
        assert!(d.lt(2, 1) && d.lt(1, 0) && d.lt(2, 0));
        assert_eq!(Poset::antichain(4).dual(), Poset::antichain(4));
        let lambda = v_poset().dual();
        assert!(lambda.lt(1, 0) && lambda.lt(2, 0) && !lambda.comparable(1, 2));
        assert_eq!(v_poset().dual().dual(), v_poset());
    }

    #[test]
    fn sums() {
        let s = Poset::chain(2).disjoint_sum(&Poset::chain(1));
        assert_eq!(s.len(), 3);
        assert_eq!(s.covers(), vec![(0, 1)]);
        assert_eq!(
            Poset::antichain(2).disjoint_sum(&Poset::antichain(2)),
            Poset::antichain(4)
        );
        assert_eq!(v_poset().disjoint_sum(&Poset::empty()), v_poset());

        assert_eq!(Poset::chain(1).linear_sum(&Poset::chain(1)), Poset::chain(2));
        let d = Poset::antichain(2).linear_sum(&Poset::antichain(2));
        assert_eq!(d.covers().len(), 4);
        assert_eq!(d.height(), 2);
        assert_eq!(d.width(), 2);
        assert_eq!(Poset::empty().linear_sum(&v_poset()), v_poset());
    }

    #[test]
    fn chains_and_antichains() {
        assert!(Poset::chain(0).is_empty());
        assert_eq!((Poset::chain(4).height(), Poset::chain(4).width()), (4, 1));
        assert_eq!(
            (Poset::antichain(4).height(), Poset::antichain(4).width()),
            (1, 4)
        );
        assert_eq!((Poset::chain(5).height(), Poset::chain(5).width()), (5, 1));
        assert_eq!(
            (Poset::antichain(5).height(), Poset::antichain(5).width()),
            (1, 5)
        );
    }

    #[test]
    fn subposets() {
        let (d, map) = Poset::chain(3).delete(1).unwrap();
        assert_eq!(d, Poset::chain(2));
        assert_eq!(map, vec![0, 2]);
        let v = v_poset();
        assert_eq!(v.subposet(&[0, 1, 2]).unwrap().0, v);
        assert_eq!(
            Poset::antichain(5).subposet(&[4, 1, 2]).unwrap().0,
            Poset::antichain(3)
        );
        assert!(v.subposet(&[7]).is_err());
    }

    #[test]
    fn extremes_and_comparable_sets() {
        assert_eq!(Poset::chain(3).minimals(), vec![0]);
        assert_eq!(Poset::chain(3).maximals(), vec![2]);
        assert!(Poset::antichain(3).comparable_set(1).unwrap().is_empty());
        let v = v_poset();
        assert_eq!(v.comparable_set(0).unwrap(), vec![1, 2]);
        assert_eq!(v.comparable_set(1).unwrap(), vec![0]);
    }

    #[test]
    fn width_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(0..=9);
            let mut pairs = vec![];
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.3) {
                        pairs.push((u, v));
                    }
                }
            }
            let p = Poset::from_relations(n, &pairs).unwrap();
            p.validate().unwrap();
            assert_eq!(p.width(), brute_width(&p));
            assert_eq!(p.dual().dual(), p);
        }
    }

    #[test]
    fn json_round_trip_uses_covers() {
        let p = Poset::from_relations(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let j = p.to_json();
        assert_eq!(j.relations, vec![[0, 1], [1, 2]]);
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(text, r#"{"n":3,"relations":[[0,1],[1,2]]}"#);
        assert_eq!(Poset::parse_json(&text).unwrap(), p);
    }

    #[test]
    fn wide_posets() {
        let p = Poset::chain(200);
        assert!(p.lt(0, 199));
        assert_eq!(p.height(), 200);
        assert!(Poset::from_relations(MAX_ELEMENTS + 1, &[]).is_err());
    }
}
