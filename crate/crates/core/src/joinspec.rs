//! Join-specifications: families of nonempty subsets with existing joins that
//! contain every singleton.

use std::sync::Arc;

use crate::cardinal::Cardinal;
use crate::poset::Poset;
use crate::subset::{k_subsets, Subset};
use crate::{Error, Result};

/// A join-specification `U` on a fixed poset.
///
/// Members are deduplicated and kept in canonical [`Subset`] order; the join
/// of each member is cached alongside it.
#[derive(Clone, Debug)]
pub struct JoinSpec {
    poset: Arc<Poset>,
    members: Vec<Subset>,
    joins: Vec<usize>,
}

impl PartialEq for JoinSpec {
    fn eq(&self, other: &Self) -> bool {
        same_poset(&self.poset, &other.poset) && self.members == other.members
    }
}

impl Eq for JoinSpec {}

pub(crate) fn same_poset(a: &Arc<Poset>, b: &Arc<Poset>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl JoinSpec {
    /// The singletons together with `sets`. Every supplied set must be
    /// nonempty and have a join.
    pub fn new<I>(poset: Arc<Poset>, sets: I) -> Result<JoinSpec>
    where
        I: IntoIterator<Item = Subset>,
    {
        let mut members: Vec<Subset> = (0..poset.len()).map(Subset::singleton).collect();
        for s in sets {
            poset.check(s)?;
            if s.is_empty() {
                return Err(Error::EmptyMember);
            }
            if poset.join(s).is_none() {
                return Err(Error::NoJoin(poset.fmt_subset(s)));
            }
            members.push(s);
        }
        Ok(Self::from_checked(poset, members))
    }

    /// Builds from members already known to satisfy the definition.
    pub(crate) fn from_checked(poset: Arc<Poset>, mut members: Vec<Subset>) -> JoinSpec {
        members.sort_unstable();
        members.dedup();
        let joins = members
            .iter()
            .map(|&s| poset.join(s).expect("member has a join"))
            .collect();
        JoinSpec {
            poset,
            members,
            joins,
        }
    }

    /// The smallest join-specification: singletons only.
    pub fn singletons(poset: Arc<Poset>) -> JoinSpec {
        let members = (0..poset.len()).map(Subset::singleton).collect();
        Self::from_checked(poset, members)
    }

    /// `U_γ`: every nonempty set of size `< γ` whose join exists.
    pub fn u_gamma(poset: Arc<Poset>, gamma: Cardinal, limit: u64) -> Result<JoinSpec> {
        gamma.require_at_least(2)?;
        let n = poset.len();
        let max = gamma.max_size_within(n);
        let mut members = Vec::new();
        let mut scanned = 0u64;
        for k in 1..=max {
            for s in k_subsets(n, k) {
                scanned += 1;
                if scanned > limit {
                    return Err(Error::SizeGuard { limit });
                }
                if poset.join(s).is_some() {
                    members.push(s);
                }
            }
        }
        Ok(Self::from_checked(poset, members))
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    /// Members paired with their joins.
    pub fn iter(&self) -> impl Iterator<Item = (Subset, usize)> + '_ {
        self.members.iter().copied().zip(self.joins.iter().copied())
    }

    /// Members of size at least two.
    pub fn nontrivial(&self) -> impl Iterator<Item = Subset> + '_ {
        self.members.iter().copied().filter(|s| s.len() > 1)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    pub fn is_subfamily_of(&self, other: &JoinSpec) -> bool {
        self.members.iter().all(|&s| other.contains(s))
    }

    /// Smallest cardinal exceeding every member size, i.e. `max |S| + 1`.
    pub fn radius(&self) -> usize {
        self.members.iter().map(|s| s.len()).max().unwrap_or(0) + 1
    }

    /// Members of size `< r` (singletons are always kept).
    pub fn truncated(&self, r: usize) -> JoinSpec {
        let members = self
            .members
            .iter()
            .copied()
            .filter(|s| s.len() < r.max(2))
            .collect();
        Self::from_checked(self.poset.clone(), members)
    }

    pub fn union(&self, other: &JoinSpec) -> Result<JoinSpec> {
        if !same_poset(&self.poset, &other.poset) {
            return Err(Error::PosetMismatch);
        }
        let members = self.members.iter().chain(&other.members).copied().collect();
        Ok(Self::from_checked(self.poset.clone(), members))
    }

    pub fn intersection(&self, other: &JoinSpec) -> Result<JoinSpec> {
        if !same_poset(&self.poset, &other.poset) {
            return Err(Error::PosetMismatch);
        }
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&s| other.contains(s))
            .collect();
        Ok(Self::from_checked(self.poset.clone(), members))
    }

    /// Members rendered with element labels.
    pub fn labelled_members(&self) -> Vec<Vec<String>> {
        self.members
            .iter()
            .map(|&s| self.poset.subset_labels(s))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::poset::DEFAULT_SIZE_GUARD;

    fn arc(p: Poset) -> Arc<Poset> {
        Arc::new(p)
    }

    #[test]
    fn vee5_spec_adds_singletons() {
        let p = arc(fixtures::vee5());
        let xy = p.subset(&["x", "y"]).unwrap();
        let u = JoinSpec::new(p.clone(), [xy]).unwrap();
        assert_eq!(u.len(), 6);
        assert!(u.contains(xy));
        assert!((0..5).all(|i| u.contains(Subset::singleton(i))));
        assert_eq!(u.radius(), 3);
    }

    #[test]
    fn antichain_specs() {
        let p = arc(fixtures::antichain3());
        let u = JoinSpec::new(p.clone(), []).unwrap();
        assert_eq!(u, JoinSpec::singletons(p.clone()));
        assert_eq!(u.radius(), 2);
        let ab = p.subset(&["a", "b"]).unwrap();
        assert_eq!(JoinSpec::new(p.clone(), [ab]), Err(Error::NoJoin("{a,b}".into())));
        assert_eq!(JoinSpec::new(p, [Subset::EMPTY]), Err(Error::EmptyMember));
    }

    #[test]
    fn u_gamma_small_bound_is_singletons() {
        let p = arc(fixtures::vee5());
        let u = JoinSpec::u_gamma(p.clone(), Cardinal::Finite(2), DEFAULT_SIZE_GUARD).unwrap();
        assert_eq!(u, JoinSpec::singletons(p.clone()));
        assert!(matches!(
            JoinSpec::u_gamma(p, Cardinal::Finite(1), DEFAULT_SIZE_GUARD),
            Err(Error::CardinalTooSmall { .. })
        ));
    }

    #[test]
    fn u_gamma_vee5_pairs_match_brute_force() {
        let p = arc(fixtures::vee5());
        let u = JoinSpec::u_gamma(p.clone(), Cardinal::Finite(3), DEFAULT_SIZE_GUARD).unwrap();
        // oracle: every 1- or 2-subset that has a least upper bound, checked
        // straight from the order relation
        let mut expected = Vec::new();
        for mask in 1u64..32 {
            let s = Subset::from_bits(mask);
            if s.len() > 2 {
                continue;
            }
            let ubs: Vec<usize> = (0..5).filter(|&q| s.iter().all(|e| p.leq(e, q))).collect();
            if ubs.iter().any(|&l| ubs.iter().all(|&q| p.leq(l, q))) {
                expected.push(s);
            }
        }
        expected.sort();
        assert_eq!(u.members(), &expected[..]);
        // every pair in vee5 has a join
        assert_eq!(u.nontrivial().count(), 10);
        let named = ["x", "y"];
        assert!(u.contains(p.subset(&named).unwrap()));
    }

    #[test]
    fn hmgap4_omega_family_and_radius() {
        let p = arc(fixtures::hmgap4());
        let u = JoinSpec::u_gamma(p.clone(), Cardinal::Omega, DEFAULT_SIZE_GUARD).unwrap();
        assert!(u.contains(p.subset(&["b", "c"]).unwrap()));
        assert!(u.contains(p.subset(&["b", "c", "d"]).unwrap()));
        assert!(!u.contains(p.subset(&["a", "b"]).unwrap()));
        // oracle: largest subset with a join, found by scanning all 16 subsets
        let largest = p
            .top_set()
            .subsets()
            .filter(|&s| !s.is_empty() && p.join(s).is_some())
            .map(|s| s.len())
            .max()
            .unwrap();
        assert_eq!(largest, 3);
        assert_eq!(u.radius(), 4);
    }

    #[test]
    fn union_and_intersection() {
        let p = arc(fixtures::vee5());
        let xy = p.subset(&["x", "y"]).unwrap();
        let x1y1 = p.subset(&["x'", "y'"]).unwrap();
        let u1 = JoinSpec::new(p.clone(), [xy]).unwrap();
        let u2 = JoinSpec::new(p.clone(), [x1y1]).unwrap();
        let single = JoinSpec::singletons(p.clone());
        assert_eq!(u1.union(&single).unwrap(), u1);
        assert_eq!(u1.intersection(&u2).unwrap(), single);
        assert_eq!(u1.union(&u2).unwrap().radius(), 3);
        let other = JoinSpec::singletons(arc(fixtures::antichain3()));
        assert_eq!(u1.union(&other), Err(Error::PosetMismatch));
    }

    #[test]
    fn union_of_all_specs_is_u_omega() {
        let p = arc(fixtures::vee5());
        let omega = JoinSpec::u_gamma(p.clone(), Cardinal::Omega, DEFAULT_SIZE_GUARD).unwrap();
        // every join-spec is singletons plus a subfamily of the nontrivial
        // joinable sets; the union over all of them is the union over the
        // one-extra-set specs
        let mut acc = JoinSpec::singletons(p.clone());
        for s in p.top_set().subsets() {
            if s.len() > 1 && p.join(s).is_some() {
                acc = acc.union(&JoinSpec::new(p.clone(), [s]).unwrap()).unwrap();
            }
        }
        assert_eq!(acc, omega);
    }
}
