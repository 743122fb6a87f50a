//! Standard closure operators on the subsets of a poset, stored extensionally
//! as their families of closed sets, and the two maps relating them to
//! join-specifications: `U ↦ Γ_U` and `Γ ↦ U_Γ`.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::joinspec::{same_poset, JoinSpec};
use crate::poset::Poset;
use crate::subset::Subset;
use crate::{Error, Result};

/// The closed sets of a standard closure operator `Γ` on `℘(P)`.
///
/// Invariants: the family contains `P`, is closed under intersection, every
/// member is a down-set and every principal down-set `p↓` is a member (so
/// `Γ({p}) = p↓`). Members are kept in canonical [`Subset`] order.
#[derive(Clone, Debug)]
pub struct ClosureFamily {
    poset: Arc<Poset>,
    closed: Vec<Subset>,
}

impl PartialEq for ClosureFamily {
    fn eq(&self, other: &Self) -> bool {
        same_poset(&self.poset, &other.poset) && self.closed == other.closed
    }
}

impl Eq for ClosureFamily {}

/// Result of iterating `Γ_0(S) = S↓`, `Γ_{k+1}(S) = {⋁T : T ∈ U, T ⊆ Γ_k(S)}↓`
/// to its fixpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GammaClosure {
    pub set: Subset,
    /// Successor steps computed, including the one that confirmed the
    /// fixpoint.
    pub steps: usize,
}

/// Radius of a closure operator: the least radius of a join-specification
/// generating it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenerationRadius {
    Radius(usize),
    /// No join-specification generates this operator.
    NotGenerated,
}

/// Both sides of the Galois-connection biconditional for one pair `(U, Γ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaloisCheck {
    /// `Γ_U(T) ⊆ Γ(T)` for every `T ⊆ P`.
    pub gamma_le: bool,
    /// `U ⊆ U_Γ`.
    pub spec_le: bool,
}

impl GaloisCheck {
    pub fn holds(&self) -> bool {
        self.gamma_le == self.spec_le
    }
}

impl ClosureFamily {
    /// Validates `closed` as the closed sets of a standard closure operator.
    pub fn new<I>(poset: Arc<Poset>, closed: I) -> Result<ClosureFamily>
    where
        I: IntoIterator<Item = Subset>,
    {
        let mut sets: Vec<Subset> = closed.into_iter().collect();
        for &s in &sets {
            poset.check(s)?;
        }
        sets.sort_unstable();
        sets.dedup();
        if sets.binary_search(&poset.top_set()).is_err() {
            return Err(Error::MissingTop);
        }
        for &s in &sets {
            if !poset.is_down_set(s) {
                return Err(Error::NotDownSet(poset.fmt_subset(s)));
            }
        }
        for (i, &a) in sets.iter().enumerate() {
            for &b in &sets[i + 1..] {
                if sets.binary_search(&a.intersection(b)).is_err() {
                    return Err(Error::NotIntersectionClosed(format!(
                        "{} ∩ {}",
                        poset.fmt_subset(a),
                        poset.fmt_subset(b)
                    )));
                }
            }
        }
        for p in 0..poset.len() {
            if sets.binary_search(&poset.principal_down(p)).is_err() {
                return Err(Error::NotStandard(poset.label(p).to_string()));
            }
        }
        Ok(ClosureFamily {
            poset,
            closed: sets,
        })
    }

    pub(crate) fn from_checked(poset: Arc<Poset>, mut closed: Vec<Subset>) -> ClosureFamily {
        closed.sort_unstable();
        closed.dedup();
        ClosureFamily { poset, closed }
    }

    /// The intersection-closure of the principal down-sets, `P` and the given
    /// down-sets: the least standard closure family containing `extra`.
    pub fn generated_by<I>(poset: Arc<Poset>, extra: I) -> Result<ClosureFamily>
    where
        I: IntoIterator<Item = Subset>,
    {
        let mut family: BTreeSet<Subset> = BTreeSet::new();
        let mut work: Vec<Subset> = (0..poset.len()).map(|p| poset.principal_down(p)).collect();
        work.push(poset.top_set());
        for s in extra {
            poset.check(s)?;
            if !poset.is_down_set(s) {
                return Err(Error::NotDownSet(poset.fmt_subset(s)));
            }
            work.push(s);
        }
        while let Some(s) = work.pop() {
            if family.insert(s) {
                work.extend(family.iter().map(|&t| t.intersection(s)));
            }
        }
        Ok(Self::from_checked(poset, family.into_iter().collect()))
    }

    /// The Alexandroff family: every down-set is closed.
    pub fn alexandroff(poset: Arc<Poset>, limit: u64) -> Result<ClosureFamily> {
        let closed = poset.all_downsets(limit)?;
        Ok(Self::from_checked(poset, closed))
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn closed_sets(&self) -> &[Subset] {
        &self.closed
    }

    pub fn len(&self) -> usize {
        self.closed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.closed.is_empty()
    }

    pub fn is_closed(&self, s: Subset) -> bool {
        self.closed.binary_search(&s).is_ok()
    }

    /// `Γ(S)`: the intersection of all closed sets containing `S`.
    pub fn closure(&self, s: Subset) -> Subset {
        self.closed
            .iter()
            .filter(|c| s.is_subset(**c))
            .fold(self.poset.top_set(), |acc, &c| acc.intersection(c))
    }

    /// Whether `self ≤ other` pointwise, i.e. `Γ_self(T) ⊆ Γ_other(T)` for all
    /// `T`. Equivalent to every `other`-closed set being `self`-closed.
    pub fn le(&self, other: &ClosureFamily) -> bool {
        other.closed.iter().all(|&c| self.is_closed(c))
    }

    /// `U_Γ`: every nonempty `S` with a join `⋁S` that lies in every closed
    /// set containing `S`.
    pub fn induced_spec(&self, limit: u64) -> Result<JoinSpec> {
        let n = self.poset.len();
        if n < 64 && (1u64 << n) > limit {
            return Err(Error::SizeGuard { limit });
        }
        let mut members = Vec::new();
        for s in self.poset.top_set().subsets().skip(1) {
            let Some(p) = self.poset.join(s) else { continue };
            let preserved = self
                .closed
                .iter()
                .all(|&c| !s.is_subset(c) || c.contains(p));
            if preserved {
                members.push(s);
            }
        }
        Ok(JoinSpec::from_checked(self.poset.clone(), members))
    }

    /// Least radius of a join-specification generating this operator.
    ///
    /// `Γ` is generated by some spec of radius `r` iff it is generated by
    /// `{S ∈ U_Γ : |S| < r}`, so only those truncations are tried.
    pub fn minimal_radius(&self, limit: u64) -> Result<GenerationRadius> {
        let u = self.induced_spec(limit)?;
        if u.ideals(limit)? != *self {
            return Ok(GenerationRadius::NotGenerated);
        }
        for r in 2..u.radius() {
            if u.truncated(r).ideals(limit)? == *self {
                return Ok(GenerationRadius::Radius(r));
            }
        }
        Ok(GenerationRadius::Radius(u.radius()))
    }

    /// Closed sets rendered with element labels.
    pub fn labelled(&self) -> Vec<Vec<String>> {
        self.closed
            .iter()
            .map(|&s| self.poset.subset_labels(s))
            .collect()
    }
}

impl JoinSpec {
    /// `Γ_U(S)` with the number of successor steps taken.
    pub fn gamma(&self, s: Subset) -> GammaClosure {
        let poset = self.poset();
        let mut cur = poset.down_closure(s);
        let mut steps = 0;
        loop {
            steps += 1;
            let joins: Subset = self
                .iter()
                .filter(|(t, _)| t.is_subset(cur))
                .map(|(_, j)| j)
                .collect();
            let next = poset.down_closure(joins);
            if next == cur {
                return GammaClosure { set: cur, steps };
            }
            cur = next;
        }
    }

    /// Whether `s` is a `U`-ideal: a down-set closed under joins of members.
    pub fn is_ideal(&self, s: Subset) -> bool {
        self.poset().is_down_set(s) && self.iter().all(|(t, j)| !t.is_subset(s) || s.contains(j))
    }

    /// Every `U`-ideal (including `∅`): the closed sets of `Γ_U`.
    pub fn ideals(&self, limit: u64) -> Result<ClosureFamily> {
        let downsets = self.poset().all_downsets(limit)?;
        let closed = downsets.into_iter().filter(|&s| self.is_ideal(s)).collect();
        Ok(ClosureFamily::from_checked(self.poset().clone(), closed))
    }

    /// Both sides of the Galois biconditional between `Γ_U ≤ Γ` and `U ⊆ U_Γ`.
    pub fn galois_check(&self, family: &ClosureFamily, limit: u64) -> Result<GaloisCheck> {
        if !same_poset(self.poset(), family.poset()) {
            return Err(Error::PosetMismatch);
        }
        let n = self.poset().len();
        if n < 64 && (1u64 << n) > limit {
            return Err(Error::SizeGuard { limit });
        }
        let gamma_le = self
            .poset()
            .top_set()
            .subsets()
            .all(|t| self.gamma(t).set.is_subset(family.closure(t)));
        let spec_le = self.is_subfamily_of(&family.induced_spec(limit)?);
        Ok(GaloisCheck { gamma_le, spec_le })
    }
}
