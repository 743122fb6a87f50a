//! Meet-distributivity conditions on posets, triple classification, and
//! embeddings of posets into powerset algebras that preserve bounded meets
//! and joins.

use std::sync::Arc;

use serde::Serialize;

use crate::cardinal::Cardinal;
use crate::joinspec::JoinSpec;
use crate::lattice::{birkhoff_embed, CompletionLattice, FrameCheck};
use crate::poset::Poset;
use crate::subset::{k_subsets, Subset, MAX_ELEMENTS};
use crate::{Error, Result};

/// Outcome of an `LMD_α` check. The witness is the first failing `(a, X)`
/// ordered by `a`, then `|X|`, then mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LmdVerdict {
    pub holds: bool,
    pub witness: Option<(usize, Subset)>,
}

/// `LMD_α`: whenever `|X| < α` and `a ∧ ⋁X` is defined, `⋁_X (a ∧ x)` is
/// defined and equal to it.
pub fn is_lmd(poset: &Poset, alpha: Cardinal, limit: u64) -> Result<LmdVerdict> {
    alpha.require_at_least(3)?;
    let n = poset.len();
    let max = alpha.max_size_within(n);
    let mut joinable = Vec::new();
    let mut scanned = 0u64;
    for k in 2..=max {
        for x in k_subsets(n, k) {
            scanned += 1;
            if scanned > limit {
                return Err(Error::SizeGuard { limit });
            }
            if let Some(j) = poset.join(x) {
                joinable.push((x, j));
            }
        }
    }
    for a in 0..n {
        for &(x, j) in &joinable {
            let Some(m) = poset.meet2(a, j) else { continue };
            let meets: Option<Subset> = x.iter().map(|e| poset.meet2(a, e)).collect();
            let ok = meets.and_then(|ms| poset.join(ms)) == Some(m);
            if !ok {
                return Ok(LmdVerdict {
                    holds: false,
                    witness: Some((a, x)),
                });
            }
        }
    }
    Ok(LmdVerdict {
        holds: true,
        witness: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Triple {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TripleKind {
    /// `(a∧b) ∨ (a∧c)` is defined and differs from `a ∧ (b∨c)`.
    Split,
    /// `(a∧b) ∨ (a∧c)` is undefined.
    Indeterminate,
    LmdOk,
}

/// How `(a, b, c)` behaves, or `None` when `a ∧ (b ∨ c)` is undefined.
pub fn triple_kind(poset: &Poset, t: Triple) -> Option<TripleKind> {
    let bc = poset.join2(t.b, t.c)?;
    let lhs = poset.meet2(t.a, bc)?;
    let rhs = match (poset.meet2(t.a, t.b), poset.meet2(t.a, t.c)) {
        (Some(x), Some(y)) => poset.join2(x, y),
        _ => None,
    };
    Some(match rhs {
        None => TripleKind::Indeterminate,
        Some(r) if r == lhs => TripleKind::LmdOk,
        Some(_) => TripleKind::Split,
    })
}

/// The three classes partitioning all posets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TripleClass {
    /// Has a split triple.
    S,
    /// Has an indeterminate triple but no split triple.
    I,
    /// LMD.
    L,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleClassification {
    pub class: TripleClass,
    pub first_split: Option<Triple>,
    pub first_indeterminate: Option<Triple>,
    pub split_count: usize,
    pub indeterminate_count: usize,
    pub triple_count: usize,
}

pub fn classify_triples(poset: &Poset) -> TripleClassification {
    let n = poset.len();
    let mut out = TripleClassification {
        class: TripleClass::L,
        first_split: None,
        first_indeterminate: None,
        split_count: 0,
        indeterminate_count: 0,
        triple_count: 0,
    };
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let t = Triple { a, b, c };
                match triple_kind(poset, t) {
                    None => continue,
                    Some(TripleKind::Split) => {
                        out.split_count += 1;
                        out.first_split.get_or_insert(t);
                    }
                    Some(TripleKind::Indeterminate) => {
                        out.indeterminate_count += 1;
                        out.first_indeterminate.get_or_insert(t);
                    }
                    Some(TripleKind::LmdOk) => {}
                }
                out.triple_count += 1;
            }
        }
    }
    out.class = if out.split_count > 0 {
        TripleClass::S
    } else if out.indeterminate_count > 0 {
        TripleClass::I
    } else {
        TripleClass::L
    };
    out
}

/// An embedding `h : P → ℘(ground)` meant to preserve nonempty meets of size
/// `< m` and nonempty joins of size `< n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub ground: Vec<String>,
    /// Image of each poset element, as a set of ground indices.
    pub map: Vec<Subset>,
    pub m: Cardinal,
    pub n: Cardinal,
}

/// Builds an `(ω, n)`-representation of an `LMD_n` poset: embed into the
/// completion by `U_n`-ideals (a frame), then into the powerset of its
/// join-irreducibles. Ground points shared by every image are dropped.
pub fn build_representation(poset: Arc<Poset>, n: Cardinal, limit: u64) -> Result<Representation> {
    n.require_at_least(3)?;
    let lmd = is_lmd(&poset, n, limit)?;
    if let Some((a, x)) = lmd.witness {
        return Err(Error::NotLmd {
            alpha: n.to_string(),
            a: poset.label(a).to_string(),
            x: poset.fmt_subset(x),
        });
    }
    representation_via_completion(poset, n, limit)
}

/// `φ` into the `U_n` completion followed by the Birkhoff embedding. Fails
/// with [`Error::NotDistributive`] when that completion is not a frame.
pub fn representation_via_completion(
    poset: Arc<Poset>,
    n: Cardinal,
    limit: u64,
) -> Result<Representation> {
    let spec = JoinSpec::u_gamma(poset.clone(), n, limit)?;
    let lattice = CompletionLattice::of_spec(&spec, limit)?;
    let embedding = birkhoff_embed(&lattice)?;
    let images: Vec<Subset> = (0..poset.len())
        .map(|p| embedding.images[lattice.phi(p)])
        .collect();
    let common = images
        .iter()
        .fold(Subset::full(embedding.irreducibles.len()), |acc, &s| acc.intersection(s));
    let kept: Vec<usize> = (0..embedding.irreducibles.len())
        .filter(|&i| !common.contains(i))
        .collect();
    let ground = kept
        .iter()
        .map(|&i| {
            let closed = lattice.element(embedding.irreducibles[i]);
            match (0..poset.len()).find(|&p| poset.principal_down(p) == closed) {
                Some(p) => poset.label(p).to_string(),
                None => poset.fmt_subset(closed),
            }
        })
        .collect();
    let map = images
        .iter()
        .map(|&s| {
            kept.iter()
                .enumerate()
                .filter(|&(_, &i)| s.contains(i))
                .map(|(k, _)| k)
                .collect()
        })
        .collect();
    Ok(Representation {
        ground,
        map,
        m: Cardinal::Omega,
        n,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    WrongArity { expected: usize, got: usize },
    OutsideGround(usize),
    NotInjective(usize, usize),
    /// `p ≤ q` in one structure but not the other.
    Order(usize, usize),
    Meet(Subset),
    Join(Subset),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationReport {
    pub violations: Vec<Violation>,
    pub meets_checked: usize,
    pub joins_checked: usize,
}

impl RepresentationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks injectivity, order reflection and preservation of every existing
/// nonempty meet of size `< m` and join of size `< n` (singletons excluded).
pub fn verify_representation(
    poset: &Poset,
    rep: &Representation,
    limit: u64,
) -> Result<RepresentationReport> {
    let size = poset.len();
    let mut violations = Vec::new();
    if rep.map.len() != size {
        violations.push(Violation::WrongArity {
            expected: size,
            got: rep.map.len(),
        });
        return Ok(RepresentationReport {
            violations,
            meets_checked: 0,
            joins_checked: 0,
        });
    }
    if rep.ground.len() > MAX_ELEMENTS {
        return Err(Error::GroundTooLarge(rep.ground.len()));
    }
    if size < 64 && (1u64 << size) > limit {
        return Err(Error::SizeGuard { limit });
    }
    let ground = Subset::full(rep.ground.len());
    for (p, &img) in rep.map.iter().enumerate() {
        if !img.is_subset(ground) {
            violations.push(Violation::OutsideGround(p));
        }
    }
    for p in 0..size {
        for q in 0..size {
            if p < q && rep.map[p] == rep.map[q] {
                violations.push(Violation::NotInjective(p, q));
            }
            if poset.leq(p, q) != rep.map[p].is_subset(rep.map[q]) {
                violations.push(Violation::Order(p, q));
            }
        }
    }
    let (mut meets_checked, mut joins_checked) = (0, 0);
    for s in poset.top_set().subsets().filter(|s| s.len() > 1) {
        if rep.m.exceeds(s.len()) {
            if let Some(t) = poset.meet(s) {
                meets_checked += 1;
                let inter = s.iter().fold(ground, |acc, q| acc.intersection(rep.map[q]));
                if inter != rep.map[t] {
                    violations.push(Violation::Meet(s));
                }
            }
        }
        if rep.n.exceeds(s.len()) {
            if let Some(t) = poset.join(s) {
                joins_checked += 1;
                let union = s.iter().fold(Subset::EMPTY, |acc, q| acc.union(rep.map[q]));
                if union != rep.map[t] {
                    violations.push(Violation::Join(s));
                }
            }
        }
    }
    Ok(RepresentationReport {
        violations,
        meets_checked,
        joins_checked,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Found(Representation),
    /// No representation into a ground set of at most `bound` points.
    NoneWithinBound { bound: usize },
}

impl Decision {
    pub fn is_found(&self) -> bool {
        matches!(self, Decision::Found(_))
    }
}

/// A meet or join requirement `op(set) = target`, checked once every element
/// involved has an image.
#[derive(Clone, Copy, Debug)]
struct Constraint {
    set: Subset,
    target: usize,
    is_meet: bool,
}

/// Backtracking search for an `(m, n)`-representation into a ground set of
/// at most `ground_bound` points. Ground points are interchangeable, so each
/// image may only use fresh points as a prefix of the unused ones.
///
/// This is a semi-decision: `NoneWithinBound` says nothing about larger
/// ground sets.
pub fn decide_representable(
    poset: &Poset,
    m: Cardinal,
    n: Cardinal,
    ground_bound: usize,
    limit: u64,
) -> Result<Decision> {
    if ground_bound == 0 {
        return Err(Error::CardinalTooSmall {
            min: 1,
            got: "0".into(),
        });
    }
    if ground_bound > MAX_ELEMENTS {
        return Err(Error::GroundTooLarge(ground_bound));
    }
    let size = poset.len();
    if size < 64 && (1u64 << size) > limit {
        return Err(Error::SizeGuard { limit });
    }
    let order = poset.linear_extension();
    let mut position = vec![0; size];
    for (k, &e) in order.iter().enumerate() {
        position[e] = k;
    }
    let mut by_step: Vec<Vec<Constraint>> = vec![Vec::new(); size];
    for s in poset.top_set().subsets().filter(|s| s.len() > 1) {
        // sets containing their own meet/join follow from order preservation
        let mut add = |target: usize, is_meet: bool| {
            if !s.contains(target) {
                let last = s.iter().chain([target]).map(|e| position[e]).max().unwrap();
                by_step[last].push(Constraint {
                    set: s,
                    target,
                    is_meet,
                });
            }
        };
        if m.exceeds(s.len()) {
            if let Some(t) = poset.meet(s) {
                add(t, true);
            }
        }
        if n.exceeds(s.len()) {
            if let Some(t) = poset.join(s) {
                add(t, false);
            }
        }
    }
    let mut search = Search {
        poset,
        order: &order,
        by_step: &by_step,
        bound: ground_bound,
        images: vec![Subset::EMPTY; size],
    };
    if search.extend(0, 0) {
        let used = search
            .images
            .iter()
            .fold(Subset::EMPTY, |acc, &s| acc.union(s))
            .last()
            .map_or(0, |l| l + 1);
        Ok(Decision::Found(Representation {
            ground: (0..used).map(|i| format!("g{i}")).collect(),
            map: search.images,
            m,
            n,
        }))
    } else {
        Ok(Decision::NoneWithinBound {
            bound: ground_bound,
        })
    }
}

struct Search<'a> {
    poset: &'a Poset,
    order: &'a [usize],
    by_step: &'a [Vec<Constraint>],
    bound: usize,
    images: Vec<Subset>,
}

impl Search<'_> {
    fn extend(&mut self, k: usize, used: usize) -> bool {
        if k == self.order.len() {
            return true;
        }
        let e = self.order[k];
        for old in Subset::full(used).subsets() {
            for fresh in 0..=self.bound - used {
                let img = old.union(Subset::from_bits(Subset::full(used + fresh).bits() & !Subset::full(used).bits()));
                if self.admissible(k, e, img) {
                    self.images[e] = img;
                    if self.extend(k + 1, used + fresh) {
                        return true;
                    }
                }
            }
        }
        false
    }

    fn admissible(&self, k: usize, e: usize, img: Subset) -> bool {
        for &q in &self.order[..k] {
            let iq = self.images[q];
            if iq == img
                || self.poset.leq(q, e) != iq.is_subset(img)
                || self.poset.leq(e, q) != img.is_subset(iq)
            {
                return false;
            }
        }
        let image = |x: usize| if x == e { img } else { self.images[x] };
        self.by_step[k].iter().all(|c| {
            let combined = if c.is_meet {
                c.set
                    .iter()
                    .fold(Subset::full(self.bound), |acc, q| acc.intersection(image(q)))
            } else {
                c.set.iter().fold(Subset::EMPTY, |acc, q| acc.union(image(q)))
            };
            combined == image(c.target)
        })
    }
}

/// `LMD_γ` together with the frame verdict on the `U_γ` completion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LmdFrameVerdict {
    pub lmd: bool,
    pub frame: bool,
}

impl LmdFrameVerdict {
    /// `LMD_γ ⇒ frame`.
    pub fn consistent(&self) -> bool {
        !self.lmd || self.frame
    }
}

pub fn lmd_implies_frame_check(
    poset: Arc<Poset>,
    gamma: Cardinal,
    limit: u64,
) -> Result<LmdFrameVerdict> {
    let lmd = is_lmd(&poset, gamma, limit)?.holds;
    let spec = JoinSpec::u_gamma(poset, gamma, limit)?;
    let lattice = CompletionLattice::of_spec(&spec, limit)?;
    let frame = lattice.is_frame(FrameCheck::Fast, u64::MAX)?.frame;
    Ok(LmdFrameVerdict { lmd, frame })
}

impl Representation {
    /// Image of each element as ground labels, keyed by element label.
    pub fn labelled_map(&self, poset: &Poset) -> Vec<(String, Vec<String>)> {
        self.map
            .iter()
            .enumerate()
            .map(|(p, s)| {
                (
                    poset.label(p).to_string(),
                    s.iter().map(|i| self.ground[i].clone()).collect(),
                )
            })
            .collect()
    }
}
