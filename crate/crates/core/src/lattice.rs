//! The join-completion `Γ[℘(P)]` as an explicit finite lattice, with frame
//! and α-distributivity checks and the Birkhoff embedding of finite
//! distributive lattices into powersets.

use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::cardinal::Cardinal;
use crate::closure::ClosureFamily;
use crate::joinspec::{same_poset, JoinSpec};
use crate::poset::Poset;
use crate::subset::{k_subsets, Subset, MAX_ELEMENTS};
use crate::{Error, Result};

/// Default cap on the number of distributivity instances a check may visit.
pub const DEFAULT_CHECK_GUARD: u64 = 1 << 27;

/// A finite lattice with elements `0..size()`.
pub trait FiniteLattice {
    fn size(&self) -> usize;
    fn leq(&self, a: usize, b: usize) -> bool;
    fn meet(&self, a: usize, b: usize) -> usize;
    fn join(&self, a: usize, b: usize) -> usize;
    fn bottom(&self) -> usize;

    fn join_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize
    where
        Self: Sized,
    {
        items
            .into_iter()
            .fold(self.bottom(), |acc, y| self.join(acc, y))
    }

    /// Elements that are not the join of the elements strictly below them.
    fn join_irreducibles(&self) -> Vec<usize>
    where
        Self: Sized,
    {
        (0..self.size())
            .filter(|&x| {
                let below = (0..self.size()).filter(|&y| y != x && self.leq(y, x));
                self.join_all(below) != x
            })
            .collect()
    }
}

/// The lattice of closed sets of a standard closure operator, ordered by
/// inclusion, together with the canonical embedding `φ(p) = p↓`.
///
/// Element `i` is the `i`-th closed set in canonical order, so element `0` is
/// the bottom and the last element is `P`.
#[derive(Debug)]
pub struct CompletionLattice {
    family: ClosureFamily,
    phi: Vec<usize>,
    join_table: OnceLock<Vec<u32>>,
}

const JOIN_TABLE_MAX: usize = 1024;

impl CompletionLattice {
    pub fn new(family: ClosureFamily) -> CompletionLattice {
        let poset = family.poset().clone();
        let phi = (0..poset.len())
            .map(|p| {
                family
                    .closed_sets()
                    .binary_search(&poset.principal_down(p))
                    .expect("standard family contains every p↓")
            })
            .collect();
        CompletionLattice {
            family,
            phi,
            join_table: OnceLock::new(),
        }
    }

    /// Completion by the `U`-ideals of a join-specification.
    pub fn of_spec(spec: &JoinSpec, limit: u64) -> Result<CompletionLattice> {
        Ok(Self::new(spec.ideals(limit)?))
    }

    pub fn family(&self) -> &ClosureFamily {
        &self.family
    }

    pub fn poset(&self) -> &Arc<Poset> {
        self.family.poset()
    }

    pub fn elements(&self) -> &[Subset] {
        self.family.closed_sets()
    }

    pub fn element(&self, i: usize) -> Subset {
        self.family.closed_sets()[i]
    }

    /// Index of a closed set.
    pub fn index_of(&self, s: Subset) -> Option<usize> {
        self.family.closed_sets().binary_search(&s).ok()
    }

    /// `φ(p)` as an element index.
    pub fn phi(&self, p: usize) -> usize {
        self.phi[p]
    }

    /// Index of `Γ(S)`: the first closed set in size order containing `S`.
    pub fn closure_index(&self, s: Subset) -> usize {
        self.family
            .closed_sets()
            .iter()
            .position(|c| s.is_subset(*c))
            .expect("P is closed")
    }

    fn compute_join(&self, a: usize, b: usize) -> usize {
        self.closure_index(self.element(a).union(self.element(b)))
    }

    /// Pairs `(i, j)` where closed set `j` covers closed set `i`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let els = self.elements();
        let mut out = Vec::new();
        for (j, &b) in els.iter().enumerate() {
            for (i, &a) in els.iter().enumerate() {
                if a != b
                    && a.is_subset(b)
                    && !els
                        .iter()
                        .any(|&c| c != a && c != b && a.is_subset(c) && c.is_subset(b))
                {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Checks that `φ` preserves every existing meet and the joins of the
    /// members of `spec`. Singletons are skipped.
    pub fn phi_preservation(&self, spec: &JoinSpec, limit: u64) -> Result<PreservationReport> {
        let poset = self.poset();
        if !same_poset(poset, spec.poset()) {
            return Err(Error::PosetMismatch);
        }
        let n = poset.len();
        if n < 64 && (1u64 << n) > limit {
            return Err(Error::SizeGuard { limit });
        }
        let mut meet_violations = Vec::new();
        for s in poset.top_set().subsets().filter(|s| s.len() > 1) {
            if let Some(t) = poset.meet(s) {
                let inter = s
                    .iter()
                    .fold(poset.top_set(), |acc, q| acc.intersection(poset.principal_down(q)));
                if inter != poset.principal_down(t) {
                    meet_violations.push(s);
                }
            }
        }
        let mut join_violations = Vec::new();
        for (s, j) in spec.iter().filter(|(s, _)| s.len() > 1) {
            let joined = self.join_all(s.iter().map(|q| self.phi[q]));
            if joined != self.phi[j] {
                join_violations.push(s);
            }
        }
        Ok(PreservationReport {
            meet_violations,
            join_violations,
        })
    }

    /// Frame check on the completion.
    pub fn is_frame(&self, mode: FrameCheck, limit: u64) -> Result<FrameVerdict> {
        is_frame(self, mode, limit)
    }

    /// Renders a distributivity witness with closed sets as label lists.
    pub fn describe_witness(&self, w: &DistributivityWitness) -> WitnessReport {
        let poset = self.poset();
        WitnessReport {
            x: poset.subset_labels(self.element(w.x)),
            ys: w
                .ys
                .iter()
                .map(|&y| poset.subset_labels(self.element(y)))
                .collect(),
        }
    }
}

impl FiniteLattice for CompletionLattice {
    fn size(&self) -> usize {
        self.family.len()
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        self.element(a).is_subset(self.element(b))
    }

    fn meet(&self, a: usize, b: usize) -> usize {
        self.index_of(self.element(a).intersection(self.element(b)))
            .expect("closed sets are intersection-closed")
    }

    fn join(&self, a: usize, b: usize) -> usize {
        let n = self.size();
        if n > JOIN_TABLE_MAX {
            return self.compute_join(a, b);
        }
        let table = self.join_table.get_or_init(|| {
            let mut t = vec![0u32; n * n];
            for i in 0..n {
                for j in i..n {
                    let k = self.compute_join(i, j) as u32;
                    t[i * n + j] = k;
                    t[j * n + i] = k;
                }
            }
            t
        });
        table[a * n + b] as usize
    }

    fn bottom(&self) -> usize {
        0
    }
}

/// A poset that is a lattice, with precomputed operation tables.
#[derive(Clone, Debug)]
pub struct PosetLattice {
    poset: Poset,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
}

impl PosetLattice {
    pub fn new(poset: Poset) -> Result<PosetLattice> {
        if poset.is_empty() {
            return Err(Error::NotALattice("empty poset".into()));
        }
        if let Some(why) = poset.lattice_failure() {
            return Err(Error::NotALattice(why));
        }
        let n = poset.len();
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                meet[a * n + b] = poset.meet2(a, b).expect("lattice");
                join[a * n + b] = poset.join2(a, b).expect("lattice");
            }
        }
        let bottom = poset.least_of(poset.top_set()).expect("finite lattice has a bottom");
        Ok(PosetLattice {
            poset,
            meet,
            join,
            bottom,
        })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }
}

impl FiniteLattice for PosetLattice {
    fn size(&self) -> usize {
        self.poset.len()
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size() + b]
    }

    fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size() + b]
    }

    fn bottom(&self) -> usize {
        self.bottom
    }
}

/// Failures of `φ` to preserve meets or specified joins.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PreservationReport {
    pub meet_violations: Vec<Subset>,
    pub join_violations: Vec<Subset>,
}

impl PreservationReport {
    pub fn is_clean(&self) -> bool {
        self.meet_violations.is_empty() && self.join_violations.is_empty()
    }
}

/// `x ∧ ⋁Y ≠ ⋁_Y (x ∧ y)` for the given element `x` and family `Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributivityWitness {
    pub x: usize,
    pub ys: Vec<usize>,
}

impl DistributivityWitness {
    /// Re-evaluates both sides; `true` when they differ.
    pub fn fails_in<L: FiniteLattice>(&self, l: &L) -> bool {
        let lhs = l.meet(self.x, l.join_all(self.ys.iter().copied()));
        let rhs = l.join_all(self.ys.iter().map(|&y| l.meet(self.x, y)));
        lhs != rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub x: Vec<String>,
    pub ys: Vec<Vec<String>>,
}

/// How [`is_frame`] quantifies over families `Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrameCheck {
    /// Binary distributivity, which suffices for finite lattices.
    Fast,
    /// Every subfamily `Y` of the lattice.
    Audit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameVerdict {
    pub frame: bool,
    pub witness: Option<DistributivityWitness>,
    /// Families of size `< sigma_checked` were examined.
    pub sigma_checked: Cardinal,
}

/// Least `(x, y, z)` (lexicographically, `y < z`) with
/// `x ∧ (y ∨ z) ≠ (x ∧ y) ∨ (x ∧ z)`.
pub fn binary_distributivity_failure<L: FiniteLattice>(l: &L) -> Option<DistributivityWitness> {
    let n = l.size();
    for x in 0..n {
        for y in 0..n {
            let xy = l.meet(x, y);
            for z in y + 1..n {
                if l.meet(x, l.join(y, z)) != l.join(xy, l.meet(x, z)) {
                    return Some(DistributivityWitness { x, ys: vec![y, z] });
                }
            }
        }
    }
    None
}

/// Distributivity restricted to families `Y` with `|Y| < alpha`. Families are
/// visited by size, then lexicographically, so the witness is the least one.
pub fn alpha_distributive<L: FiniteLattice>(
    l: &L,
    alpha: Cardinal,
    limit: u64,
) -> Result<FrameVerdict> {
    alpha.require_at_least(2)?;
    let n = l.size();
    let max = alpha.max_size_within(n);
    let verdict = |witness: Option<DistributivityWitness>| FrameVerdict {
        frame: witness.is_none(),
        witness,
        sigma_checked: alpha,
    };
    if max < 2 {
        return Ok(verdict(None));
    }
    if max == 2 {
        guard(n as u64 * n as u64 * n as u64, limit)?;
        return Ok(verdict(binary_distributivity_failure(l)));
    }
    if n > MAX_ELEMENTS {
        return Err(Error::SizeGuard { limit });
    }
    let mut budget = 0u64;
    for k in 2..=max {
        for ys in k_subsets(n, k) {
            budget += n as u64;
            guard(budget, limit)?;
            let joined = l.join_all(ys.iter());
            for x in 0..n {
                let lhs = l.meet(x, joined);
                let rhs = l.join_all(ys.iter().map(|y| l.meet(x, y)));
                if lhs != rhs {
                    return Ok(verdict(Some(DistributivityWitness {
                        x,
                        ys: ys.iter().collect(),
                    })));
                }
            }
        }
    }
    Ok(verdict(None))
}

fn guard(count: u64, limit: u64) -> Result<()> {
    if count > limit {
        Err(Error::SizeGuard { limit })
    } else {
        Ok(())
    }
}

/// Whether finite meets distribute over arbitrary joins.
pub fn is_frame<L: FiniteLattice>(l: &L, mode: FrameCheck, limit: u64) -> Result<FrameVerdict> {
    match mode {
        FrameCheck::Fast => {
            let n = l.size() as u64;
            guard(n * n * n, limit)?;
            let witness = binary_distributivity_failure(l);
            Ok(FrameVerdict {
                frame: witness.is_none(),
                witness,
                sigma_checked: Cardinal::Finite(3),
            })
        }
        FrameCheck::Audit => {
            let full = Cardinal::Finite(l.size() + 1);
            alpha_distributive(l, full, limit)
        }
    }
}

/// Embedding of a finite distributive lattice into the powerset of its
/// join-irreducibles: `x ↦ {j : j ≤ x}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BirkhoffEmbedding {
    /// Lattice elements forming the ground set; bit `i` of an image refers to
    /// `irreducibles[i]`.
    pub irreducibles: Vec<usize>,
    pub images: Vec<Subset>,
}

pub fn birkhoff_embed<L: FiniteLattice>(l: &L) -> Result<BirkhoffEmbedding> {
    if binary_distributivity_failure(l).is_some() {
        return Err(Error::NotDistributive);
    }
    let irreducibles = l.join_irreducibles();
    if irreducibles.len() > MAX_ELEMENTS {
        return Err(Error::GroundTooLarge(irreducibles.len()));
    }
    let images = (0..l.size())
        .map(|x| {
            irreducibles
                .iter()
                .enumerate()
                .filter(|&(_, &j)| l.leq(j, x))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    Ok(BirkhoffEmbedding {
        irreducibles,
        images,
    })
}

impl BirkhoffEmbedding {
    /// Pairs of elements on which the embedding fails to be an injective
    /// lattice homomorphism. Empty for a correct embedding.
    pub fn violations<L: FiniteLattice>(&self, l: &L) -> Vec<(usize, usize)> {
        let mut bad = Vec::new();
        for a in 0..l.size() {
            for b in 0..l.size() {
                let (ia, ib) = (self.images[a], self.images[b]);
                let ok = (a == b || ia != ib)
                    && self.images[l.meet(a, b)] == ia.intersection(ib)
                    && self.images[l.join(a, b)] == ia.union(ib)
                    && l.leq(a, b) == ia.is_subset(ib);
                if !ok {
                    bad.push((a, b));
                }
            }
        }
        bad
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::poset::DEFAULT_SIZE_GUARD as G;

    fn arc(p: Poset) -> Arc<Poset> {
        Arc::new(p)
    }

    fn neq_lattice() -> CompletionLattice {
        let p = arc(fixtures::antichain3());
        let closed: Vec<Subset> = [&[][..], &["a"], &["b"], &["c"], &["a", "b", "c"]]
            .iter()
            .map(|l| p.subset(l).unwrap())
            .collect();
        CompletionLattice::new(ClosureFamily::new(p, closed).unwrap())
    }

    fn vee5_lattice() -> CompletionLattice {
        let p = arc(fixtures::vee5());
        let xy = p.subset(&["x", "y"]).unwrap();
        CompletionLattice::of_spec(&JoinSpec::new(p, [xy]).unwrap(), G).unwrap()
    }

    #[test]
    fn neq_completion_is_m3() {
        let l = neq_lattice();
        assert_eq!(l.size(), 5);
        assert_eq!(l.covers().len(), 6);
        let v = l.is_frame(FrameCheck::Fast, DEFAULT_CHECK_GUARD).unwrap();
        assert!(!v.frame);
        let w = v.witness.unwrap();
        let r = l.describe_witness(&w);
        assert_eq!(r.x, vec!["a"]);
        assert_eq!(r.ys, vec![vec!["b"], vec!["c"]]);
        let a3 = alpha_distributive(&l, Cardinal::Finite(3), DEFAULT_CHECK_GUARD).unwrap();
        assert!(!a3.frame);
    }

    #[test]
    fn alexandroff_on_antichain_is_boolean() {
        let p = arc(fixtures::antichain3());
        let l = CompletionLattice::new(ClosureFamily::alexandroff(p, G).unwrap());
        assert_eq!(l.size(), 8);
        assert!(l.is_frame(FrameCheck::Fast, DEFAULT_CHECK_GUARD).unwrap().frame);
        assert!(l.is_frame(FrameCheck::Audit, DEFAULT_CHECK_GUARD).unwrap().frame);
        assert_eq!(l.join_irreducibles().len(), 3);
    }

    #[test]
    fn vee5_completion_fails_distributivity() {
        let l = vee5_lattice();
        assert_eq!(l.size(), 6);
        let v = l.is_frame(FrameCheck::Fast, DEFAULT_CHECK_GUARD).unwrap();
        let w = v.witness.unwrap();
        assert!(w.fails_in(&l));
        let r = l.describe_witness(&w);
        assert_eq!(r.x, vec!["x", "x'"]);
        assert_eq!(r.ys, vec![vec!["x"], vec!["y"]]);
        // the pair ({y,y'}, {x}) below the same x is another failure
        let p = l.poset().clone();
        let alt = DistributivityWitness {
            x: l.index_of(p.subset(&["x", "x'"]).unwrap()).unwrap(),
            ys: vec![
                l.index_of(p.subset(&["y", "y'"]).unwrap()).unwrap(),
                l.index_of(p.subset(&["x"]).unwrap()).unwrap(),
            ],
        };
        assert!(alt.fails_in(&l));
        let a3 = alpha_distributive(&l, Cardinal::Finite(3), DEFAULT_CHECK_GUARD).unwrap();
        assert!(!a3.frame);
        assert_eq!(a3.witness.unwrap().ys.len(), 2);
    }

    #[test]
    fn alpha_two_is_always_true() {
        let l = neq_lattice();
        assert!(alpha_distributive(&l, Cardinal::Finite(2), DEFAULT_CHECK_GUARD).unwrap().frame);
        assert!(alpha_distributive(&l, Cardinal::Finite(1), DEFAULT_CHECK_GUARD).is_err());
    }

    #[test]
    fn fast_and_audit_agree_on_fixtures() {
        for p in [
            fixtures::m3(),
            fixtures::n5(),
            fixtures::boolean(2),
            fixtures::chain(4),
            fixtures::vee5(),
            fixtures::hmgap4(),
        ] {
            let p = arc(p);
            for gamma in [Cardinal::Finite(2), Cardinal::Finite(3), Cardinal::Omega] {
                let u = JoinSpec::u_gamma(p.clone(), gamma, G).unwrap();
                let l = CompletionLattice::of_spec(&u, G).unwrap();
                let fast = l.is_frame(FrameCheck::Fast, DEFAULT_CHECK_GUARD).unwrap();
                let audit = l.is_frame(FrameCheck::Audit, DEFAULT_CHECK_GUARD).unwrap();
                assert_eq!(fast.frame, audit.frame);
            }
        }
    }

    #[test]
    fn phi_preserves_meets_and_spec_joins() {
        let l = vee5_lattice();
        let p = l.poset().clone();
        let xy = p.subset(&["x", "y"]).unwrap();
        let spec = JoinSpec::new(p.clone(), [xy]).unwrap();
        assert!(l.phi_preservation(&spec, G).unwrap().is_clean());
        let z = p.index_of("z").unwrap();
        let x = l.phi(p.index_of("x").unwrap());
        let y = l.phi(p.index_of("y").unwrap());
        assert_eq!(l.join(x, y), l.phi(z));

        let h = arc(fixtures::hmgap4());
        let u = JoinSpec::u_gamma(h.clone(), Cardinal::Omega, G).unwrap();
        let lh = CompletionLattice::of_spec(&u, G).unwrap();
        assert!(lh.phi_preservation(&u, G).unwrap().is_clean());
        let b = lh.phi(h.index_of("b").unwrap());
        let c = lh.phi(h.index_of("c").unwrap());
        let d = h.index_of("d").unwrap();
        assert_eq!(lh.join(b, c), lh.phi(d));
        assert_eq!(lh.element(lh.phi(d)), h.subset(&["b", "c", "d"]).unwrap());
    }

    #[test]
    fn phi_is_an_order_embedding() {
        let l = vee5_lattice();
        let p = l.poset();
        for a in 0..p.len() {
            for b in 0..p.len() {
                assert_eq!(p.leq(a, b), l.leq(l.phi(a), l.phi(b)));
            }
        }
    }

    #[test]
    fn birkhoff_on_chain() {
        let l = PosetLattice::new(fixtures::chain(3)).unwrap();
        let e = birkhoff_embed(&l).unwrap();
        assert_eq!(e.irreducibles, vec![1, 2]);
        assert_eq!(
            e.images,
            vec![Subset::EMPTY, Subset::from_indices([0]), Subset::from_indices([0, 1])]
        );
        assert!(e.violations(&l).is_empty());
    }

    #[test]
    fn birkhoff_on_boolean_is_identity_like() {
        let l = PosetLattice::new(fixtures::boolean(2)).unwrap();
        let e = birkhoff_embed(&l).unwrap();
        assert_eq!(e.irreducibles, vec![1, 2]);
        assert_eq!(e.images[3], Subset::full(2));
        assert!(e.violations(&l).is_empty());
        assert_eq!(birkhoff_embed(&PosetLattice::new(fixtures::m3()).unwrap()), Err(Error::NotDistributive));
    }

    #[test]
    fn birkhoff_on_hmgap4_downsets() {
        let h = arc(fixtures::hmgap4());
        let l = CompletionLattice::new(ClosureFamily::alexandroff(h.clone(), G).unwrap());
        let e = birkhoff_embed(&l).unwrap();
        let named: Vec<Subset> = [&["b"][..], &["c"], &["a", "c"], &["b", "c", "d"]]
            .iter()
            .map(|s| h.subset(s).unwrap())
            .collect();
        // oracle: elements with exactly one lower cover in the Hasse diagram
        let covers = l.covers();
        let mut by_cover: Vec<Subset> = (0..l.size())
            .filter(|&j| covers.iter().filter(|&&(_, t)| t == j).count() == 1)
            .map(|j| l.element(j))
            .collect();
        by_cover.sort();
        let mut got: Vec<Subset> = e.irreducibles.iter().map(|&i| l.element(i)).collect();
        got.sort();
        let mut expected = named.clone();
        expected.sort();
        assert_eq!(by_cover, expected);
        assert_eq!(got, expected);
        assert!(e.violations(&l).is_empty());
    }

    #[test]
    fn poset_lattice_rejects_non_lattices() {
        assert!(matches!(PosetLattice::new(fixtures::vee5()), Err(Error::NotALattice(_))));
    }
}
