//! Finite posets and the order-theoretic primitives everything else is built
//! on: down-closure, existing joins and meets, down-set enumeration, covers.

use std::collections::HashMap;

use crate::subset::{Subset, MAX_ELEMENTS};
use crate::{Error, Result};

/// Default cap on the number of items an enumeration may produce.
pub const DEFAULT_SIZE_GUARD: u64 = 1 << 20;

/// A finite partially ordered set with labelled elements.
///
/// The order is stored as principal up-sets and down-sets, so `p ≤ q` is a
/// single bit test. Values are immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    up: Vec<Subset>,
    down: Vec<Subset>,
}

impl Poset {
    /// Builds a poset on elements `0..labels.len()` whose order is the
    /// reflexive-transitive closure of `pairs` (each pair `(p, q)` means
    /// `p ≤ q`). Fails on duplicate labels or if the closure is not
    /// antisymmetric.
    pub fn new<S: Into<String>>(labels: Vec<S>, pairs: &[(usize, usize)]) -> Result<Poset> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        if n > MAX_ELEMENTS {
            return Err(Error::TooManyElements(n));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let mut up: Vec<Subset> = (0..n).map(Subset::singleton).collect();
        for &(p, q) in pairs {
            for i in [p, q] {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, len: n });
                }
            }
            up[p].insert(q);
        }
        // Warshall over bit rows
        for k in 0..n {
            let row_k = up[k];
            for row in up.iter_mut() {
                if row.contains(k) {
                    *row = row.union(row_k);
                }
            }
        }
        let mut down = vec![Subset::EMPTY; n];
        for (p, row) in up.iter().enumerate() {
            for q in row.iter() {
                if q != p && up[q].contains(p) {
                    let (a, b) = (p.min(q), p.max(q));
                    return Err(Error::Cycle(labels[a].clone(), labels[b].clone()));
                }
                down[q].insert(p);
            }
        }
        Ok(Poset {
            labels,
            index,
            up,
            down,
        })
    }

    /// Like [`Poset::new`] but with the generating pairs given by label.
    pub fn from_labeled<S: AsRef<str>>(labels: &[S], pairs: &[(S, S)]) -> Result<Poset> {
        let owned: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        let mut lookup = HashMap::new();
        for (i, l) in owned.iter().enumerate() {
            if lookup.insert(l.as_str(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let find = |s: &S| {
            lookup
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| Error::UnknownLabel(s.as_ref().to_string()))
        };
        let idx_pairs = pairs
            .iter()
            .map(|(p, q)| Ok((find(p)?, find(q)?)))
            .collect::<Result<Vec<_>>>()?;
        Poset::new(owned, &idx_pairs)
    }

    /// Builds a poset directly from a full order relation given as principal
    /// up-sets. Used by generators that already hold a closed relation.
    pub fn from_up_sets<S: Into<String>>(labels: Vec<S>, up: &[Subset]) -> Result<Poset> {
        let pairs: Vec<(usize, usize)> = up
            .iter()
            .enumerate()
            .flat_map(|(p, row)| row.iter().map(move |q| (p, q)))
            .collect();
        Poset::new(labels, &pairs)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Subset from element labels.
    pub fn subset<S: AsRef<str>>(&self, labels: &[S]) -> Result<Subset> {
        labels
            .iter()
            .map(|l| self.index_of(l.as_ref()))
            .collect::<Result<Subset>>()
    }

    /// Checks that every member of `s` is an element of this poset.
    pub fn check(&self, s: Subset) -> Result<Subset> {
        match s.last() {
            Some(i) if i >= self.len() => Err(Error::IndexOutOfRange {
                index: i,
                len: self.len(),
            }),
            _ => Ok(s),
        }
    }

    /// The whole carrier.
    #[inline]
    pub fn top_set(&self) -> Subset {
        Subset::full(self.len())
    }

    #[inline]
    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.up[p].contains(q)
    }

    #[inline]
    pub fn lt(&self, p: usize, q: usize) -> bool {
        p != q && self.leq(p, q)
    }

    #[inline]
    pub fn comparable(&self, p: usize, q: usize) -> bool {
        self.leq(p, q) || self.leq(q, p)
    }

    /// `p↓`
    #[inline]
    pub fn principal_down(&self, p: usize) -> Subset {
        self.down[p]
    }

    /// `p↑`
    #[inline]
    pub fn principal_up(&self, p: usize) -> Subset {
        self.up[p]
    }

    /// `S↓ = {p : p ≤ s for some s ∈ S}`.
    pub fn down_closure(&self, s: Subset) -> Subset {
        s.iter()
            .fold(Subset::EMPTY, |acc, i| acc.union(self.down[i]))
    }

    pub fn up_closure(&self, s: Subset) -> Subset {
        s.iter().fold(Subset::EMPTY, |acc, i| acc.union(self.up[i]))
    }

    pub fn is_down_set(&self, s: Subset) -> bool {
        self.down_closure(s) == s
    }

    /// Common upper bounds of `s` (the whole carrier when `s` is empty).
    pub fn upper_bounds(&self, s: Subset) -> Subset {
        s.iter()
            .fold(self.top_set(), |acc, i| acc.intersection(self.up[i]))
    }

    pub fn lower_bounds(&self, s: Subset) -> Subset {
        s.iter()
            .fold(self.top_set(), |acc, i| acc.intersection(self.down[i]))
    }

    /// Least element of `s`, if it has one.
    pub fn least_of(&self, s: Subset) -> Option<usize> {
        s.iter().find(|&u| s.is_subset(self.up[u]))
    }

    /// Greatest element of `s`, if it has one.
    pub fn greatest_of(&self, s: Subset) -> Option<usize> {
        s.iter().find(|&u| s.is_subset(self.down[u]))
    }

    /// `⋁S` when it exists. The empty join is never taken.
    pub fn join_of(&self, s: Subset) -> Result<Option<usize>> {
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(self.least_of(self.upper_bounds(self.check(s)?)))
    }

    /// `⋀S` when it exists. The empty meet is never taken.
    pub fn meet_of(&self, s: Subset) -> Result<Option<usize>> {
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(self.greatest_of(self.lower_bounds(self.check(s)?)))
    }

    /// Join of a nonempty set; `None` for undefined or empty input.
    #[inline]
    pub fn join(&self, s: Subset) -> Option<usize> {
        if s.is_empty() {
            None
        } else {
            self.least_of(self.upper_bounds(s))
        }
    }

    #[inline]
    pub fn meet(&self, s: Subset) -> Option<usize> {
        if s.is_empty() {
            None
        } else {
            self.greatest_of(self.lower_bounds(s))
        }
    }

    #[inline]
    pub fn join2(&self, a: usize, b: usize) -> Option<usize> {
        self.least_of(self.up[a].intersection(self.up[b]))
    }

    #[inline]
    pub fn meet2(&self, a: usize, b: usize) -> Option<usize> {
        self.greatest_of(self.down[a].intersection(self.down[b]))
    }

    /// Elements in an order compatible with `≤` (smaller elements first).
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        // |p↓| strictly grows along strict order
        order.sort_by_key(|&p| (self.down[p].len(), p));
        order
    }

    /// Elements covered by `p`.
    pub fn lower_covers(&self, p: usize) -> Subset {
        let below = self.down[p].without(p);
        below
            .iter()
            .filter(|&q| self.up[q].intersection(below).len() == 1)
            .collect()
    }

    pub fn upper_covers(&self, p: usize) -> Subset {
        let above = self.up[p].without(p);
        above
            .iter()
            .filter(|&q| self.down[q].intersection(above).len() == 1)
            .collect()
    }

    /// Cover pairs `(p, q)` with `p ⋖ q`.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|q| self.lower_covers(q).iter().map(move |p| (p, q)))
            .collect()
    }

    /// Every down-set of the poset, in canonical order. Refuses once the count
    /// exceeds `limit`.
    pub fn all_downsets(&self, limit: u64) -> Result<Vec<Subset>> {
        let order = self.linear_extension();
        let mut out = Vec::new();
        let mut stack = vec![(0usize, Subset::EMPTY)];
        // every branch completes, so the search tree has no dead ends
        while let Some((k, acc)) = stack.pop() {
            if k == order.len() {
                if out.len() as u64 >= limit {
                    return Err(Error::SizeGuard { limit });
                }
                out.push(acc);
                continue;
            }
            let e = order[k];
            stack.push((k + 1, acc));
            if self.down[e].without(e).is_subset(acc) {
                stack.push((k + 1, acc.with(e)));
            }
        }
        out.sort();
        Ok(out)
    }

    /// Whether every pair of elements has a join and a meet.
    pub fn lattice_failure(&self) -> Option<String> {
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                if self.join2(a, b).is_none() {
                    return Some(format!("`{}` ∨ `{}` is undefined", self.labels[a], self.labels[b]));
                }
                if self.meet2(a, b).is_none() {
                    return Some(format!("`{}` ∧ `{}` is undefined", self.labels[a], self.labels[b]));
                }
            }
        }
        None
    }

    pub fn is_lattice(&self) -> bool {
        !self.is_empty() && self.lattice_failure().is_none()
    }

    /// Join-irreducible elements: those with exactly one lower cover.
    pub fn join_irreducibles(&self) -> Result<Subset> {
        if self.is_empty() {
            return Err(Error::NotALattice("empty poset".into()));
        }
        if let Some(why) = self.lattice_failure() {
            return Err(Error::NotALattice(why));
        }
        Ok((0..self.len())
            .filter(|&p| self.lower_covers(p).len() == 1)
            .collect())
    }

    /// Subposet induced on `keep`, relabelled densely in index order.
    pub fn induced(&self, keep: Subset) -> Poset {
        let idx: Vec<usize> = keep.iter().collect();
        let labels: Vec<String> = idx.iter().map(|&i| self.labels[i].clone()).collect();
        let mut pairs = Vec::new();
        for (a, &p) in idx.iter().enumerate() {
            for (b, &q) in idx.iter().enumerate() {
                if self.leq(p, q) {
                    pairs.push((a, b));
                }
            }
        }
        Poset::new(labels, &pairs).expect("induced suborder of a partial order")
    }

    /// Order-dual poset (same labels, reversed order).
    pub fn dual(&self) -> Poset {
        Poset {
            labels: self.labels.clone(),
            index: self.index.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
        }
    }

    /// Renders a subset as `{x,y}` using element labels.
    pub fn fmt_subset(&self, s: Subset) -> String {
        let parts: Vec<&str> = s.iter().map(|i| self.labels[i].as_str()).collect();
        format!("{{{}}}", parts.join(","))
    }

    pub fn subset_labels(&self, s: Subset) -> Vec<String> {
        s.iter().map(|i| self.labels[i].clone()).collect()
    }

    /// Order relation packed row-major into an `n²`-bit key (`n ≤ 8`),
    /// minimised over all relabellings. Two posets are isomorphic iff their
    /// keys agree.
    pub fn canonical_key(&self) -> u64 {
        let n = self.len();
        assert!(n <= 8, "canonical keys are only computed for up to 8 elements");
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = u64::MAX;
        permute(&mut perm, 0, &mut |p| {
            let mut key = 0u64;
            for i in 0..n {
                for j in 0..n {
                    if self.leq(p[i], p[j]) {
                        key |= 1 << (i * n + j);
                    }
                }
            }
            best = best.min(key);
        });
        best
    }

    pub fn is_isomorphic(&self, other: &Poset) -> bool {
        self.len() == other.len() && self.canonical_key() == other.canonical_key()
    }
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn closes_generators_and_detects_cycles() {
        let p = fixtures::vee5();
        let x = p.index_of("x").unwrap();
        let z = p.index_of("z").unwrap();
        assert!(p.leq(x, z));
        let err = Poset::from_labeled(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(err, Error::Cycle(..)));
        let err = Poset::from_labeled(&["a", "a"], &[]).unwrap_err();
        assert_eq!(err, Error::DuplicateLabel("a".into()));
        let err = Poset::from_labeled(&["a"], &[("a", "q")]).unwrap_err();
        assert_eq!(err, Error::UnknownLabel("q".into()));
    }

    #[test]
    fn longer_cycle_is_rejected() {
        let err = Poset::new(vec!["a", "b", "c"], &[(0, 1), (1, 2), (2, 0)]).unwrap_err();
        assert!(matches!(err, Error::Cycle(..)));
    }

    #[test]
    fn antichain_has_trivial_order() {
        let p = fixtures::antichain3();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(p.leq(a, b), a == b);
            }
        }
    }

    #[test]
    fn down_closure_examples() {
        let p = fixtures::vee5();
        assert_eq!(p.down_closure(p.subset(&["z"]).unwrap()), p.top_set());
        assert_eq!(p.down_closure(Subset::EMPTY), Subset::EMPTY);
        let h = fixtures::hmgap4();
        assert_eq!(
            h.down_closure(h.subset(&["a"]).unwrap()),
            h.subset(&["a", "c"]).unwrap()
        );
    }

    #[test]
    fn join_examples() {
        let p = fixtures::vee5();
        let xy = p.subset(&["x", "y"]).unwrap();
        assert_eq!(p.join_of(xy).unwrap(), Some(p.index_of("z").unwrap()));
        let x1y1 = p.subset(&["x'", "y'"]).unwrap();
        assert_eq!(p.join_of(x1y1).unwrap(), Some(p.index_of("z").unwrap()));
        assert_eq!(p.join_of(Subset::singleton(2)).unwrap(), Some(2));
        let a = fixtures::antichain3();
        assert_eq!(a.join_of(a.subset(&["a", "b"]).unwrap()).unwrap(), None);
        assert_eq!(a.join_of(Subset::EMPTY), Err(Error::EmptySet));
        assert!(a.join_of(Subset::singleton(9)).is_err());
    }

    #[test]
    fn meet_examples() {
        let h = fixtures::hmgap4();
        let c = h.index_of("c").unwrap();
        assert_eq!(h.meet_of(h.subset(&["a", "d"]).unwrap()).unwrap(), Some(c));
        assert_eq!(h.meet_of(h.subset(&["a", "b"]).unwrap()).unwrap(), None);
        assert_eq!(h.meet_of(Subset::singleton(1)).unwrap(), Some(1));
        assert_eq!(h.meet_of(Subset::EMPTY), Err(Error::EmptySet));
    }

    #[test]
    fn downset_counts() {
        assert_eq!(fixtures::antichain3().all_downsets(DEFAULT_SIZE_GUARD).unwrap().len(), 8);
        assert_eq!(fixtures::chain(3).all_downsets(DEFAULT_SIZE_GUARD).unwrap().len(), 4);
        let err = fixtures::antichain(10).all_downsets(100).unwrap_err();
        assert_eq!(err, Error::SizeGuard { limit: 100 });
    }

    #[test]
    fn hmgap4_downsets_match_brute_force() {
        let h = fixtures::hmgap4();
        // oracle: filter every subset by down-closure
        let brute: Vec<Subset> = {
            let mut v: Vec<_> = h
                .top_set()
                .subsets()
                .filter(|&s| {
                    s.iter()
                        .all(|e| (0..h.len()).all(|q| !h.leq(q, e) || s.contains(q)))
                })
                .collect();
            v.sort();
            v
        };
        assert_eq!(h.all_downsets(DEFAULT_SIZE_GUARD).unwrap(), brute);
        // the seven sets usually listed, plus d↓ = {b,c,d}
        let named: Vec<Subset> = [
            &[][..],
            &["b"],
            &["c"],
            &["b", "c"],
            &["a", "c"],
            &["a", "b", "c"],
            &["b", "c", "d"],
            &["a", "b", "c", "d"],
        ]
        .iter()
        .map(|l| h.subset(l).unwrap())
        .collect();
        let mut named_sorted = named.clone();
        named_sorted.sort();
        assert_eq!(brute, named_sorted);
    }

    #[test]
    fn join_irreducibles_examples() {
        let b2 = fixtures::boolean(2);
        let atoms: Subset = (0..b2.len())
            .filter(|&p| b2.principal_down(p).len() == 2)
            .collect();
        assert_eq!(b2.join_irreducibles().unwrap(), atoms);
        let c = fixtures::chain(3);
        assert_eq!(c.join_irreducibles().unwrap(), Subset::from_indices([1, 2]));
        assert!(matches!(
            fixtures::hmgap4().join_irreducibles(),
            Err(Error::NotALattice(_))
        ));
    }

    #[test]
    fn canonical_key_detects_isomorphism() {
        let a = Poset::from_labeled(&["p", "q", "r"], &[("p", "q")]).unwrap();
        let b = Poset::from_labeled(&["p", "q", "r"], &[("r", "p")]).unwrap();
        let c = Poset::from_labeled(&["p", "q", "r"], &[("p", "q"), ("q", "r")]).unwrap();
        assert!(a.is_isomorphic(&b));
        assert!(!a.is_isomorphic(&c));
    }

    #[test]
    fn covers() {
        let p = fixtures::vee5();
        let z = p.index_of("z").unwrap();
        assert_eq!(p.lower_covers(z), p.subset(&["x'", "y'"]).unwrap());
        assert_eq!(p.cover_pairs().len(), 4);
    }
}
