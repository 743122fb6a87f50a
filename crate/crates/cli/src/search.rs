use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use posetkit::formats::{PosetFile, SpecFile};
use posetkit::frame::check_hm;
use posetkit::generate::nonisomorphic_posets;
use posetkit::lattice::alpha_distributive;
use posetkit::representation::{classify_triples, is_lmd, TripleClass};
use posetkit::{Cardinal, CompletionLattice, JoinSpec, Poset, Subset};

use crate::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// `HM_ω` but not `LMD_ω`.
    HmNotLmd,
    /// A spec of the given radius whose completion is not
    /// radius-distributive.
    FrameFailSigma { radius: usize },
    SplitTriple,
    IndeterminateNoSplit,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::HmNotLmd => "hm_not_lmd",
            Target::FrameFailSigma { .. } => "frame_fail_sigma",
            Target::SplitTriple => "split_triple",
            Target::IndeterminateNoSplit => "indeterminate_no_split",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Target, String> {
        match s {
            "hm_not_lmd" => Ok(Target::HmNotLmd),
            "frame_fail_sigma" => Ok(Target::FrameFailSigma { radius: 3 }),
            "split_triple" => Ok(Target::SplitTriple),
            "indeterminate_no_split" => Ok(Target::IndeterminateNoSplit),
            _ => Err(format!("unknown search target `{s}`")),
        }
    }
}

/// Spec enumeration refuses more candidate members than this.
pub const MAX_SPEC_ITEMS: usize = 16;

#[derive(Clone, Debug, Serialize)]
pub struct SizeScan {
    pub size: usize,
    pub posets: usize,
    pub hits: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchHit {
    pub size: usize,
    pub poset: PosetFile,
    pub spec: Option<SpecFile>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub target: String,
    pub max_size: usize,
    /// Every size scanned, each exhaustively up to isomorphism.
    pub scanned: Vec<SizeScan>,
    pub minimal_size: Option<usize>,
    /// All non-isomorphic instances at the minimal size, or at every size
    /// when scanning all sizes.
    pub instances: Vec<SearchHit>,
}

fn hit(p: &Poset, detail: String) -> SearchHit {
    SearchHit {
        size: p.len(),
        poset: PosetFile::from_poset(p),
        spec: None,
        detail,
    }
}

fn probe(target: Target, p: Poset, limit: u64) -> posetkit::Result<Option<SearchHit>> {
    let p = Arc::new(p);
    Ok(match target {
        Target::HmNotLmd => {
            let lmd = is_lmd(&p, Cardinal::Omega, limit)?;
            match lmd.witness {
                Some((a, x)) if check_hm(p.clone(), Cardinal::Omega, limit)?.holds => Some(hit(
                    &p,
                    format!("HM_ω holds; LMD_ω fails at a = {}, X = {}", p.label(a), p.fmt_subset(x)),
                )),
                _ => None,
            }
        }
        Target::SplitTriple | Target::IndeterminateNoSplit => {
            let c = classify_triples(&p);
            let (want, t) = match target {
                Target::SplitTriple => (TripleClass::S, c.first_split),
                _ => (TripleClass::I, c.first_indeterminate),
            };
            (c.class == want).then(|| {
                let t = t.expect("class implies a triple");
                hit(
                    &p,
                    format!("({}, {}, {})", p.label(t.a), p.label(t.b), p.label(t.c)),
                )
            })
        }
        Target::FrameFailSigma { radius } => frame_fail(&p, radius, limit)?,
    })
}

/// The least spec (by member list) with members of size below `radius`
/// whose completion fails `radius`-distributivity.
fn frame_fail(p: &Arc<Poset>, radius: usize, limit: u64) -> posetkit::Result<Option<SearchHit>> {
    let items: Vec<Subset> = JoinSpec::u_gamma(p.clone(), Cardinal::Finite(radius), limit)?
        .nontrivial()
        .collect();
    if items.len() > MAX_SPEC_ITEMS {
        return Err(posetkit::Error::SizeGuard {
            limit: MAX_SPEC_ITEMS as u64,
        });
    }
    let mut choices: Vec<Vec<Subset>> = Subset::full(items.len())
        .subsets()
        .map(|c| c.iter().map(|i| items[i]).collect())
        .collect();
    choices.sort();
    for sets in choices {
        let spec = JoinSpec::new(p.clone(), sets)?;
        if spec.radius() != radius {
            continue;
        }
        let l = CompletionLattice::of_spec(&spec, limit)?;
        let v = alpha_distributive(&l, Cardinal::Finite(radius), u64::MAX)?;
        if let Some(w) = v.witness {
            let r = l.describe_witness(&w);
            return Ok(Some(SearchHit {
                size: p.len(),
                poset: PosetFile::from_poset(p),
                spec: Some(SpecFile::from_spec(&spec)),
                detail: format!("not {radius}-distributive: x = {:?}, Y = {:?}", r.x, r.ys),
            }));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub max_size: usize,
    /// Keep scanning after the first size with an instance and report the
    /// instances of every size.
    pub all_sizes: bool,
    pub limit: u64,
}

/// Scans sizes `1..=max_size` exhaustively, up to isomorphism.
pub fn search(target: Target, opts: SearchOptions) -> CliResult<SearchReport> {
    if opts.max_size > posetkit::generate::MAX_EXHAUSTIVE_SIZE {
        return Err(CliError::Input(format!(
            "search is exhaustive and limited to {} elements",
            posetkit::generate::MAX_EXHAUSTIVE_SIZE
        )));
    }
    if let Target::FrameFailSigma { radius } = target {
        if radius < 3 {
            return Err(CliError::Input("a failing spec needs radius at least 3".into()));
        }
    }
    let mut report = SearchReport {
        target: target.name().to_string(),
        max_size: opts.max_size,
        scanned: Vec::new(),
        minimal_size: None,
        instances: Vec::new(),
    };
    for size in 1..=opts.max_size {
        let posets = nonisomorphic_posets(size)?;
        let count = posets.len();
        let hits: Vec<SearchHit> = posets
            .into_par_iter()
            .map(|p| probe(target, p, opts.limit))
            .collect::<posetkit::Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        report.scanned.push(SizeScan {
            size,
            posets: count,
            hits: hits.len(),
        });
        if !hits.is_empty() {
            report.minimal_size.get_or_insert(size);
            report.instances.extend(hits);
            if !opts.all_sizes {
                break;
            }
        }
    }
    Ok(report)
}
