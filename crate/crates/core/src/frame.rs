//! The non-down-closing recursion `Υ`, the executable form of the
//! characterisation "`Φ = Υ` iff the completion is a frame", the bounded
//! distributivity witnesses it yields, and the one-step closure property
//! `HM_κ`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cardinal::Cardinal;
use crate::joinspec::JoinSpec;
use crate::lattice::{CompletionLattice, DistributivityWitness, FiniteLattice, FrameCheck};
use crate::poset::Poset;
use crate::subset::Subset;
use crate::Result;

/// Seed for the sampled quantification over `S` on large carriers.
pub const SAMPLE_SEED: u64 = 0x5eed;
pub const SAMPLE_COUNT: usize = 4096;

/// Stages `Υ_0(S) = S↓`, `Υ_{k+1}(S) = {⋁T : T ∈ U_Φ, T ⊆ Υ_k(S)}` up to
/// stabilisation. The last two stages are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpsilonTrace {
    pub stages: Vec<Subset>,
    /// Index of the first stage equal to its successor.
    pub stabilized_at: usize,
}

impl UpsilonTrace {
    pub fn result(&self) -> Subset {
        *self.stages.last().expect("at least two stages")
    }
}

/// `Φ = Γ_V` for a join-specification `V`, its completion lattice and the
/// induced specification `U_Φ`.
#[derive(Debug)]
pub struct FrameAnalysis {
    spec: JoinSpec,
    lattice: CompletionLattice,
    u_phi: JoinSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MainTheoremVerdict {
    pub phi_eq_upsilon: bool,
    pub frame: bool,
    /// Least `S` (as a down-set) with `Φ(S) ≠ Υ(S)`.
    pub upsilon_witness: Option<Subset>,
    pub frame_witness: Option<DistributivityWitness>,
    pub sets_checked: usize,
    pub exhaustive: bool,
}

impl MainTheoremVerdict {
    /// The biconditional itself.
    pub fn holds(&self) -> bool {
        self.phi_eq_upsilon == self.frame
    }
}

/// `T ∈ V` and `p ≤ ⋁T` with `φ(p) ∧ ⋁φ[T] ≠ ⋁_T (φ(p) ∧ φ(t))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CboundWitness {
    pub t: Subset,
    pub p: usize,
    pub lhs: Subset,
    pub rhs: Subset,
    /// `|T|` is below the radius of `V`.
    pub within_radius: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HmVerdict {
    pub holds: bool,
    /// Least down-set `S` where the one-step set differs from `Φ(S)`.
    pub witness: Option<Subset>,
}

impl FrameAnalysis {
    pub fn new(spec: JoinSpec, limit: u64) -> Result<FrameAnalysis> {
        let lattice = CompletionLattice::of_spec(&spec, limit)?;
        let u_phi = lattice.family().induced_spec(limit)?;
        Ok(FrameAnalysis {
            spec,
            lattice,
            u_phi,
        })
    }

    pub fn spec(&self) -> &JoinSpec {
        &self.spec
    }

    pub fn lattice(&self) -> &CompletionLattice {
        &self.lattice
    }

    pub fn u_phi(&self) -> &JoinSpec {
        &self.u_phi
    }

    pub fn poset(&self) -> &Arc<Poset> {
        self.spec.poset()
    }

    /// `Φ(S)`.
    pub fn phi(&self, s: Subset) -> Subset {
        self.lattice.family().closure(s)
    }

    pub fn upsilon(&self, s: Subset) -> UpsilonTrace {
        let mut stages = vec![self.poset().down_closure(s)];
        loop {
            let cur = *stages.last().unwrap();
            let next: Subset = self
                .u_phi
                .iter()
                .filter(|(t, _)| t.is_subset(cur))
                .map(|(_, j)| j)
                .collect();
            stages.push(next);
            if next == cur {
                let stabilized_at = stages.len() - 2;
                return UpsilonTrace {
                    stages,
                    stabilized_at,
                };
            }
        }
    }

    /// Sets `S` over which `Φ = Υ` is quantified. Both sides only depend on
    /// `S↓`, so the down-sets cover every `S`; past the guard a seeded sample
    /// of arbitrary subsets is drawn instead.
    fn quantified_sets(&self, limit: u64) -> (Vec<Subset>, bool) {
        let poset = self.poset();
        match poset.all_downsets(limit) {
            Ok(d) => (d, true),
            Err(_) => {
                let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
                let top = poset.top_set().bits();
                let sample = (0..SAMPLE_COUNT)
                    .map(|_| Subset::from_bits(rng.gen::<u64>() & top))
                    .collect();
                (sample, false)
            }
        }
    }

    /// Evaluates both sides of "`Φ(S) = Υ(S)` for all `S`" ⟺ "frame".
    pub fn check_main_theorem(&self, limit: u64) -> Result<MainTheoremVerdict> {
        let (sets, exhaustive) = self.quantified_sets(limit);
        let upsilon_witness = sets
            .iter()
            .copied()
            .find(|&s| self.phi(s) != self.upsilon(s).result());
        let frame = self.lattice.is_frame(FrameCheck::Fast, u64::MAX)?;
        Ok(MainTheoremVerdict {
            phi_eq_upsilon: upsilon_witness.is_none(),
            frame: frame.frame,
            upsilon_witness,
            frame_witness: frame.witness,
            sets_checked: sets.len(),
            exhaustive,
        })
    }

    /// A distributivity failure between some `φ(p)` and the images of some
    /// `T ∈ V`, or `None` when the completion is a frame.
    pub fn cbound_witness(&self) -> Option<CboundWitness> {
        let l = &self.lattice;
        let radius = self.spec.radius();
        for (t, top) in self.spec.iter().filter(|(t, _)| t.len() > 1) {
            let joined = l.join_all(t.iter().map(|q| l.phi(q)));
            for p in self.poset().principal_down(top).iter() {
                let fp = l.phi(p);
                let lhs = l.meet(fp, joined);
                let rhs = l.join_all(t.iter().map(|q| l.meet(fp, l.phi(q))));
                if lhs != rhs {
                    return Some(CboundWitness {
                        t,
                        p,
                        lhs: l.element(lhs),
                        rhs: l.element(rhs),
                        within_radius: t.len() < radius,
                    });
                }
            }
        }
        None
    }

    /// `{⋁T : T ∈ V, T ⊆ S↓}`.
    pub fn one_step(&self, s: Subset) -> Subset {
        one_step(&self.spec, s)
    }
}

fn one_step(spec: &JoinSpec, s: Subset) -> Subset {
    let down = spec.poset().down_closure(s);
    spec.iter()
        .filter(|(t, _)| t.is_subset(down))
        .map(|(_, j)| j)
        .collect()
}

/// `HM_κ`: with `V = U_κ`, `Φ(S) = {⋁T : T ∈ U_κ, T ⊆ S↓}` for every `S`.
/// Checking down-sets suffices since both sides depend only on `S↓`.
pub fn check_hm(poset: Arc<Poset>, kappa: Cardinal, limit: u64) -> Result<HmVerdict> {
    let spec = JoinSpec::u_gamma(poset.clone(), kappa, limit)?;
    let family = spec.ideals(limit)?;
    let witness = poset
        .all_downsets(limit)?
        .into_iter()
        .find(|&s| family.closure(s) != one_step(&spec, s));
    Ok(HmVerdict {
        holds: witness.is_none(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::poset::DEFAULT_SIZE_GUARD as G;

    fn vee5() -> FrameAnalysis {
        let p = Arc::new(fixtures::vee5());
        let xy = p.subset(&["x", "y"]).unwrap();
        FrameAnalysis::new(JoinSpec::new(p, [xy]).unwrap(), G).unwrap()
    }

    #[test]
    fn upsilon_on_vee5() {
        let a = vee5();
        let p = a.poset().clone();
        let xy = p.subset(&["x", "y"]).unwrap();
        let xyz = p.subset(&["x", "y", "z"]).unwrap();
        let tr = a.upsilon(xy);
        assert_eq!(tr.stages, vec![xy, xyz, xyz]);
        assert_eq!(tr.stabilized_at, 1);
        assert!(!p.is_down_set(tr.result()));
    }

    #[test]
    fn upsilon_fixes_ideals() {
        let a = vee5();
        for &i in a.lattice().elements() {
            assert_eq!(a.upsilon(i).result(), i);
        }
    }

    #[test]
    fn upsilon_on_hmgap4() {
        let p = Arc::new(fixtures::hmgap4());
        let u = JoinSpec::u_gamma(p.clone(), Cardinal::Omega, G).unwrap();
        let a = FrameAnalysis::new(u, G).unwrap();
        let bc = p.subset(&["b", "c"]).unwrap();
        let tr = a.upsilon(bc);
        assert_eq!(tr.stages[1], p.subset(&["b", "c", "d"]).unwrap());
        assert_eq!(tr.stabilized_at, 1);
    }

    #[test]
    fn main_theorem_examples() {
        let p = Arc::new(fixtures::antichain3());
        let a = FrameAnalysis::new(JoinSpec::singletons(p), G).unwrap();
        let v = a.check_main_theorem(G).unwrap();
        assert!(v.phi_eq_upsilon && v.frame && v.holds());

        let v = vee5().check_main_theorem(G).unwrap();
        assert!(!v.phi_eq_upsilon && !v.frame && v.holds());
        let a = vee5();
        let xy = a.poset().subset(&["x", "y"]).unwrap();
        assert_eq!(a.phi(xy), a.poset().top_set());
        assert!(v.exhaustive);

        let h = Arc::new(fixtures::hmgap4());
        let u = JoinSpec::u_gamma(h, Cardinal::Omega, G).unwrap();
        let v = FrameAnalysis::new(u, G).unwrap().check_main_theorem(G).unwrap();
        assert!(v.phi_eq_upsilon && v.frame);
    }

    #[test]
    fn cbound_on_vee5() {
        let a = vee5();
        let p = a.poset().clone();
        let w = a.cbound_witness().unwrap();
        assert_eq!(w.t, p.subset(&["x", "y"]).unwrap());
        assert_eq!(w.p, p.index_of("x'").unwrap());
        assert_eq!(w.lhs, p.subset(&["x", "x'"]).unwrap());
        assert_eq!(w.rhs, p.subset(&["x"]).unwrap());
        assert!(w.within_radius);
    }

    #[test]
    fn cbound_none_on_frame() {
        let p = Arc::new(fixtures::boolean(2));
        let u = JoinSpec::u_gamma(p, Cardinal::Omega, G).unwrap();
        assert_eq!(FrameAnalysis::new(u, G).unwrap().cbound_witness(), None);
    }

    #[test]
    fn hm_examples() {
        let h = Arc::new(fixtures::hmgap4());
        for k in [Cardinal::Finite(2), Cardinal::Finite(3), Cardinal::Finite(4), Cardinal::Omega] {
            assert!(check_hm(h.clone(), k, G).unwrap().holds, "kappa {k}");
        }
        let v = Arc::new(fixtures::vee5());
        let r = check_hm(v.clone(), Cardinal::Finite(3), G).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness, Some(v.subset(&["x", "y"]).unwrap()));
        assert!(check_hm(Arc::new(fixtures::chain(5)), Cardinal::Omega, G).unwrap().holds);
    }
}
