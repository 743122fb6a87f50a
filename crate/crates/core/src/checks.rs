//! Named property checks over a poset with a join-specification and a
//! standard closure family. Each check returns `Ok(None)` when the property
//! holds and `Ok(Some(description))` on a violation.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cardinal::Cardinal;
use crate::closure::ClosureFamily;
use crate::frame::{check_hm, FrameAnalysis, SAMPLE_SEED};
use crate::joinspec::JoinSpec;
use crate::lattice::{alpha_distributive, CompletionLattice, FiniteLattice, FrameCheck};
use crate::poset::Poset;
use crate::representation::{
    build_representation, classify_triples, is_lmd, lmd_implies_frame_check,
    representation_via_completion, verify_representation, TripleClass,
};
use crate::subset::Subset;
use crate::Result;

pub type Outcome = Option<String>;

/// A poset together with a join-specification and an unrelated standard
/// closure family on it.
#[derive(Clone, Debug)]
pub struct Instance {
    pub spec: JoinSpec,
    pub family: ClosureFamily,
}

impl Instance {
    pub fn new(spec: JoinSpec, family: ClosureFamily) -> Instance {
        Instance { spec, family }
    }

    /// Uses `Γ_U` itself as the family.
    pub fn from_spec(spec: JoinSpec, limit: u64) -> Result<Instance> {
        let family = spec.ideals(limit)?;
        Ok(Instance { spec, family })
    }

    pub fn poset(&self) -> &Arc<Poset> {
        self.spec.poset()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    MainTheorem,
    Cbound,
    Galois,
    Relate,
    Lfix,
    Lequiv,
    Ptrans,
    Pmorph,
    Lsub,
    Ldist,
    LargestCompletion,
    DualRoundTrip,
    PhiEmbedding,
    FrameAgreement,
    LmdImpliesFrame,
    Representation,
    Classification,
    HmChain,
}

impl Check {
    pub const ALL: [Check; 18] = [
        Check::MainTheorem,
        Check::Cbound,
        Check::Galois,
        Check::Relate,
        Check::Lfix,
        Check::Lequiv,
        Check::Ptrans,
        Check::Pmorph,
        Check::Lsub,
        Check::Ldist,
        Check::LargestCompletion,
        Check::DualRoundTrip,
        Check::PhiEmbedding,
        Check::FrameAgreement,
        Check::LmdImpliesFrame,
        Check::Representation,
        Check::Classification,
        Check::HmChain,
    ];

    /// The closure-operator suite.
    pub const GALOIS_SUITE: [Check; 8] = [
        Check::Galois,
        Check::Relate,
        Check::Lfix,
        Check::Lequiv,
        Check::Ptrans,
        Check::Pmorph,
        Check::Lsub,
        Check::Ldist,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::MainTheorem => "main_theorem",
            Check::Cbound => "cbound",
            Check::Galois => "galois",
            Check::Relate => "relate",
            Check::Lfix => "lfix",
            Check::Lequiv => "lequiv",
            Check::Ptrans => "ptrans",
            Check::Pmorph => "pmorph",
            Check::Lsub => "lsub",
            Check::Ldist => "ldist",
            Check::LargestCompletion => "largest_completion",
            Check::DualRoundTrip => "dual_round_trip",
            Check::PhiEmbedding => "phi_embedding",
            Check::FrameAgreement => "frame_agreement",
            Check::LmdImpliesFrame => "lmd_implies_frame",
            Check::Representation => "representation",
            Check::Classification => "classification",
            Check::HmChain => "hm_chain",
        }
    }

    /// Whether the outcome depends on the poset alone.
    pub fn poset_only(self) -> bool {
        matches!(
            self,
            Check::LmdImpliesFrame | Check::Representation | Check::Classification | Check::HmChain
        )
    }

    pub fn run(self, inst: &Instance, limit: u64) -> Result<Outcome> {
        match self {
            Check::MainTheorem => main_theorem(&inst.spec, limit),
            Check::Cbound => cbound(&inst.spec, limit),
            Check::Galois => galois(inst, limit),
            Check::Relate => relate(inst, limit),
            Check::Lfix => lfix(&inst.spec, limit),
            Check::Lequiv => lequiv(&inst.family, limit),
            Check::Ptrans => ptrans(&inst.spec, limit),
            Check::Pmorph => pmorph(&inst.spec, limit),
            Check::Lsub => lsub(&inst.spec, limit),
            Check::Ldist => ldist(&inst.spec, limit),
            Check::LargestCompletion => largest_completion(inst, limit),
            Check::DualRoundTrip => dual_round_trip(&inst.family),
            Check::PhiEmbedding => phi_embedding(&inst.family),
            Check::FrameAgreement => frame_agreement(&inst.family),
            Check::LmdImpliesFrame => lmd_implies_frame(inst.poset(), limit),
            Check::Representation => representation(inst.poset(), limit),
            Check::Classification => classification(inst.poset(), limit),
            Check::HmChain => hm_chain(inst.poset(), limit),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Check, String> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown check `{s}`"))
    }
}

fn guard_subsets(poset: &Poset, limit: u64) -> Result<()> {
    let n = poset.len();
    if n < 64 && (1u64 << n) > limit {
        return Err(crate::Error::SizeGuard { limit });
    }
    Ok(())
}

/// Finite bounds `3..=|P|` followed by `ω`.
fn bounds_from_three(poset: &Poset) -> Vec<Cardinal> {
    (3..=poset.len())
        .map(Cardinal::Finite)
        .chain([Cardinal::Omega])
        .collect()
}

/// `Φ = Υ` on every `S` iff the completion is a frame.
pub fn main_theorem(spec: &JoinSpec, limit: u64) -> Result<Outcome> {
    let v = FrameAnalysis::new(spec.clone(), limit)?.check_main_theorem(limit)?;
    Ok((!v.holds()).then(|| {
        format!(
            "phi_eq_upsilon = {} but frame = {}",
            v.phi_eq_upsilon, v.frame
        )
    }))
}

/// A non-frame completion has a witness `(T, p)` with `T ∈ V`, `p ≤ ⋁T`,
/// `|T|` below the radius, and the distributive law failing; a frame has none.
pub fn cbound(spec: &JoinSpec, limit: u64) -> Result<Outcome> {
    let a = FrameAnalysis::new(spec.clone(), limit)?;
    let frame = a.lattice().is_frame(FrameCheck::Fast, u64::MAX)?.frame;
    let w = a.cbound_witness();
    let p = a.poset();
    Ok(match (frame, w) {
        (true, None) => None,
        (true, Some(w)) => Some(format!("frame but witness T = {}", p.fmt_subset(w.t))),
        (false, None) => Some("not a frame but no witness in V".into()),
        (false, Some(w)) => {
            let l = a.lattice();
            let top = spec.poset().join(w.t);
            let below = top.is_some_and(|j| p.leq(w.p, j));
            let fp = l.phi(w.p);
            let lhs = l.meet(fp, l.join_all(w.t.iter().map(|q| l.phi(q))));
            let rhs = l.join_all(w.t.iter().map(|q| l.meet(fp, l.phi(q))));
            if !spec.contains(w.t) || !below || !w.within_radius || w.t.len() >= spec.radius() || lhs == rhs {
                Some(format!(
                    "bad witness T = {}, p = {}",
                    p.fmt_subset(w.t),
                    p.label(w.p)
                ))
            } else {
                None
            }
        }
    })
}

/// `Γ_U ≤ Γ ⟺ U ⊆ U_Γ`.
pub fn galois(inst: &Instance, limit: u64) -> Result<Outcome> {
    let g = inst.spec.galois_check(&inst.family, limit)?;
    Ok((!g.holds()).then(|| format!("gamma_le = {}, spec_le = {}", g.gamma_le, g.spec_le)))
}

/// The four consequences of the Galois connection.
pub fn relate(inst: &Instance, limit: u64) -> Result<Outcome> {
    let f = &inst.family;
    let u = &inst.spec;
    let u_f = f.induced_spec(limit)?;
    let gamma_u_f = u_f.ideals(limit)?;
    if !gamma_u_f.le(f) {
        return Ok(Some("Γ_{U_Γ} ≰ Γ".into()));
    }
    let gamma_u = u.ideals(limit)?;
    let u_gamma_u = gamma_u.induced_spec(limit)?;
    if !u.is_subfamily_of(&u_gamma_u) {
        return Ok(Some("U ⊄ U_{Γ_U}".into()));
    }
    if u_gamma_u.ideals(limit)? != gamma_u {
        return Ok(Some("Γ_{U_{Γ_U}} ≠ Γ_U".into()));
    }
    if gamma_u_f.induced_spec(limit)? != u_f {
        return Ok(Some("U_{Γ_{U_Γ}} ≠ U_Γ".into()));
    }
    Ok(None)
}

/// If `Γ_U(S) = p↓` then `⋁S = p`; if `p = ⋁S ∈ Γ_U(S)` then `S ∈ U_{Γ_U}`.
pub fn lfix(spec: &JoinSpec, limit: u64) -> Result<Outcome> {
    let p = spec.poset();
    guard_subsets(p, limit)?;
    let induced = spec.ideals(limit)?.induced_spec(limit)?;
    for s in p.top_set().subsets().skip(1) {
        let g = spec.gamma(s).set;
        let join = p.join(s);
        if let Some(q) = (0..p.len()).find(|&q| p.principal_down(q) == g) {
            if join != Some(q) {
                return Ok(Some(format!("Γ({}) = {}↓ but the join differs", p.fmt_subset(s), p.label(q))));
            }
        }
        if let Some(j) = join {
            if g.contains(j) && !induced.contains(s) {
                return Ok(Some(format!("{} not in U_Γ", p.fmt_subset(s))));
            }
        }
    }
    Ok(None)
}

/// `S ∈ U_Γ` iff `⋁S` exists and `φ(⋁S) = ⋁φ[S]`.
pub fn lequiv(family: &ClosureFamily, limit: u64) -> Result<Outcome> {
    let p = family.poset();
    guard_subsets(p, limit)?;
    let induced = family.induced_spec(limit)?;
    for s in p.top_set().subsets().skip(1) {
        let rhs = p
            .join(s)
            .is_some_and(|j| family.closure(s) == p.principal_down(j));
        if induced.contains(s) != rhs {
            return Ok(Some(format!("disagreement at {}", p.fmt_subset(s))));
        }
    }
    Ok(None)
}

/// `Γ_U(S)` is the least `U`-ideal containing `S`, reached within `|P| + 1`
/// steps, and `Γ_U` is a standard closure operator.
pub fn ptrans(spec: &JoinSpec, limit: u64) -> Result<Outcome> {
    let p = spec.poset();
    guard_subsets(p, limit)?;
    let ideals = spec.ideals(limit)?;
    for s in p.top_set().subsets() {
        let g = spec.gamma(s);
        if g.set != ideals.closure(s) {
            return Ok(Some(format!("Γ({}) differs from the least ideal", p.fmt_subset(s))));
        }
        if g.steps > p.len() + 1 {
            return Ok(Some(format!("Γ({}) took {} steps", p.fmt_subset(s), g.steps)));
        }
        if !s.is_subset(g.set) || spec.gamma(g.set).set != g.set {
            return Ok(Some(format!("Γ not extensive or idempotent at {}", p.fmt_subset(s))));
        }
        for e in p.top_set().difference(s).iter() {
            if !g.set.is_subset(spec.gamma(s.with(e)).set) {
                return Ok(Some(format!("Γ not monotone at {}", p.fmt_subset(s))));
            }
        }
    }
    for q in 0..p.len() {
        if spec.gamma(Subset::singleton(q)).set != p.principal_down(q) {
            return Ok(Some(format!("Γ not standard at {}", p.label(q))));
        }
    }
    Ok(None)
}

/// `φ` preserves existing meets and the joins of members of `U`.
pub fn pmorph(spec: &JoinSpec, limit: u64) -> Result<Outcome> {
    let l = CompletionLattice::of_spec(spec, limit)?;
    let r = l.phi_preservation(spec, limit)?;
    let p = spec.poset();
    Ok((!r.is_clean()).then(|| {
        let first = r.meet_violations.first().or(r.join_violations.first()).unwrap();
        format!("φ fails to preserve {}", p.fmt_subset(*first))
    }))
}

/// `Υ(S) ⊆ Φ(S)`.
pub fn lsub(spec: &JoinSpec, limit: u64) -> Result<Outcome> {
    let a = FrameAnalysis::new(spec.clone(), limit)?;
    let p = spec.poset();
    guard_subsets(p, limit)?;
    Ok(p
        .top_set()
        .subsets()
        .find(|&s| !a.upsilon(s).result().is_subset(a.phi(s)))
        .map(|s| format!("Υ({}) ⊄ Φ({0})", p.fmt_subset(s))))
}

/// Number of sampled `(I, K₁, K₂)` triples in [`ldist`].
pub const LDIST_SAMPLES: usize = 256;

/// `I ∩ Υ(⋃K_j) ⊆ Φ(⋃(I ∩ K_j))` for closed `I` and families of closed
/// `K_j`: all single `K`, the whole family, and sampled pairs.
pub fn ldist(spec: &JoinSpec, limit: u64) -> Result<Outcome> {
    let a = FrameAnalysis::new(spec.clone(), limit)?;
    let closed = a.lattice().elements().to_vec();
    let p = spec.poset();
    let holds = |i: Subset, ks: &[Subset]| {
        let union = ks.iter().fold(Subset::EMPTY, |acc, &k| acc.union(k));
        let meets = ks.iter().fold(Subset::EMPTY, |acc, &k| acc.union(i.intersection(k)));
        i.intersection(a.upsilon(union).result()).is_subset(a.phi(meets))
    };
    let report = |i: Subset, ks: &[Subset]| {
        let ks: Vec<String> = ks.iter().map(|&k| p.fmt_subset(k)).collect();
        format!("fails for I = {}, K = [{}]", p.fmt_subset(i), ks.join(", "))
    };
    for &i in &closed {
        for &k in &closed {
            if !holds(i, &[k]) {
                return Ok(Some(report(i, &[k])));
            }
        }
        if !holds(i, &closed) {
            return Ok(Some(report(i, &closed)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    for _ in 0..LDIST_SAMPLES {
        let i = closed[rng.gen_range(0..closed.len())];
        let ks = [
            closed[rng.gen_range(0..closed.len())],
            closed[rng.gen_range(0..closed.len())],
        ];
        if !holds(i, &ks) {
            return Ok(Some(report(i, &ks)));
        }
    }
    Ok(None)
}

/// Any standard family preserving the joins of `U` has only `U`-ideals as
/// closed sets.
pub fn largest_completion(inst: &Instance, limit: u64) -> Result<Outcome> {
    let f = &inst.family;
    if !inst.spec.is_subfamily_of(&f.induced_spec(limit)?) {
        return Ok(None);
    }
    let p = inst.poset();
    Ok(f.closed_sets()
        .iter()
        .find(|&&c| !inst.spec.is_ideal(c))
        .map(|&c| format!("{} preserves U but is no U-ideal", p.fmt_subset(c))))
}

/// Each closed set `C` is recovered as `{p : φ(p) ≤ C}`.
pub fn dual_round_trip(family: &ClosureFamily) -> Result<Outcome> {
    let l = CompletionLattice::new(family.clone());
    let p = family.poset();
    for (i, &c) in l.elements().iter().enumerate() {
        let back: Subset = (0..p.len()).filter(|&q| l.leq(l.phi(q), i)).collect();
        if back != c {
            return Ok(Some(format!("{} not recovered", p.fmt_subset(c))));
        }
    }
    let rebuilt = ClosureFamily::new(p.clone(), l.elements().iter().copied())?;
    Ok((rebuilt != *family).then(|| "rebuilt family differs".to_string()))
}

/// `φ` is injective and reflects order.
pub fn phi_embedding(family: &ClosureFamily) -> Result<Outcome> {
    let l = CompletionLattice::new(family.clone());
    let p = family.poset();
    for a in 0..p.len() {
        for b in 0..p.len() {
            if a != b && l.phi(a) == l.phi(b) {
                return Ok(Some(format!("φ({}) = φ({})", p.label(a), p.label(b))));
            }
            if p.leq(a, b) != l.leq(l.phi(a), l.phi(b)) {
                return Ok(Some(format!("order between {} and {} not reflected", p.label(a), p.label(b))));
            }
        }
    }
    Ok(None)
}

/// Largest completion size on which the exhaustive audit runs.
pub const AUDIT_MAX_ELEMENTS: usize = 12;

/// The binary fast path agrees with `α`-distributivity for `α = |L| + 1`.
pub fn frame_agreement(family: &ClosureFamily) -> Result<Outcome> {
    let l = CompletionLattice::new(family.clone());
    let fast = l.is_frame(FrameCheck::Fast, u64::MAX)?.frame;
    if l.size() > AUDIT_MAX_ELEMENTS {
        return Ok(None);
    }
    let audit = alpha_distributive(&l, Cardinal::Finite(l.size() + 1), u64::MAX)?.frame;
    Ok((fast != audit).then(|| format!("fast path says {fast}, audit says {audit}")))
}

/// `LMD_γ ⇒` the `U_γ` completion is a frame.
pub fn lmd_implies_frame(poset: &Arc<Poset>, limit: u64) -> Result<Outcome> {
    for g in bounds_from_three(poset) {
        if !lmd_implies_frame_check(poset.clone(), g, limit)?.consistent() {
            return Ok(Some(format!("LMD_{g} but the U_{g} completion is not a frame")));
        }
    }
    Ok(None)
}

/// Every `LMD_n` poset gets an `(ω, n)`-representation that verifies.
pub fn representation(poset: &Arc<Poset>, limit: u64) -> Result<Outcome> {
    for n in bounds_from_three(poset) {
        if !is_lmd(poset, n, limit)?.holds {
            continue;
        }
        let r = build_representation(poset.clone(), n, limit)?;
        let report = verify_representation(poset, &r, limit)?;
        if !report.is_valid() {
            return Ok(Some(format!("(ω,{n})-representation fails: {:?}", report.violations)));
        }
    }
    Ok(None)
}

/// Exactly one class, and class `L` coincides with `LMD_3`.
pub fn classification(poset: &Arc<Poset>, limit: u64) -> Result<Outcome> {
    let c = classify_triples(poset);
    let consistent = match c.class {
        TripleClass::S => c.split_count > 0,
        TripleClass::I => c.split_count == 0 && c.indeterminate_count > 0,
        TripleClass::L => c.split_count == 0 && c.indeterminate_count == 0,
    };
    if !consistent {
        return Ok(Some(format!("class {:?} contradicts triple counts", c.class)));
    }
    let lmd = is_lmd(poset, Cardinal::Finite(3), limit)?.holds;
    Ok((lmd != (c.class == TripleClass::L)).then(|| format!("LMD_3 = {lmd} but class {:?}", c.class)))
}

/// `LMD_ω ⇒ HM_ω ⇒` an `(ω, ω)`-representation exists.
pub fn hm_chain(poset: &Arc<Poset>, limit: u64) -> Result<Outcome> {
    let lmd = is_lmd(poset, Cardinal::Omega, limit)?.holds;
    let hm = check_hm(poset.clone(), Cardinal::Omega, limit)?.holds;
    if lmd && !hm {
        return Ok(Some("LMD_ω but not HM_ω".into()));
    }
    if hm {
        let r = match representation_via_completion(poset.clone(), Cardinal::Omega, limit) {
            Ok(r) => r,
            Err(crate::Error::NotDistributive) => {
                return Ok(Some("HM_ω but the U_ω completion is not distributive".into()))
            }
            Err(e) => return Err(e),
        };
        if !verify_representation(poset, &r, limit)?.is_valid() {
            return Ok(Some("HM_ω but the completion representation fails".into()));
        }
    }
    Ok(None)
}
