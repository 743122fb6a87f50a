use std::sync::Arc;

use serde::Serialize;

use posetkit::checks::{Check, Instance};
use posetkit::frame::{check_hm, FrameAnalysis};
use posetkit::lattice::{FrameCheck, WitnessReport};
use posetkit::representation::{classify_triples, is_lmd, Triple, TripleClass};
use posetkit::{Cardinal, ClosureFamily, GenerationRadius, JoinSpec, Poset};

use crate::{CliError, CliResult};

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    /// Used when no explicit spec is given.
    pub gamma: Cardinal,
    pub frame_check: FrameCheck,
    pub checks: Vec<Check>,
    pub limit: u64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            gamma: Cardinal::Omega,
            frame_check: FrameCheck::Fast,
            checks: Vec::new(),
            limit: posetkit::DEFAULT_SIZE_GUARD,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalyzeReport {
    pub poset: PosetSummary,
    pub spec: SpecSummary,
    pub completion: CompletionSummary,
    pub frame: FrameSummary,
    pub main_theorem: MainTheoremSummary,
    pub cbound: Option<CboundSummary>,
    pub minimal_radius: String,
    pub lmd: Vec<LmdSummary>,
    pub hm: Vec<HmSummary>,
    pub triples: TripleSummary,
    pub checks: Vec<CheckSummary>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PosetSummary {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
    pub lattice: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecSummary {
    /// `U_γ` when the spec was not given explicitly.
    pub gamma: Option<Cardinal>,
    pub sets: Vec<Vec<String>>,
    pub radius: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompletionSummary {
    pub size: usize,
    pub elements: Vec<Vec<String>>,
    /// Index pairs into `elements`.
    pub covers: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FrameSummary {
    pub frame: bool,
    pub witness: Option<WitnessReport>,
    pub sigma_checked: Cardinal,
}

#[derive(Clone, Debug, Serialize)]
pub struct MainTheoremSummary {
    pub phi_eq_upsilon: bool,
    pub frame: bool,
    pub holds: bool,
    pub witness: Option<Vec<String>>,
    pub sets_checked: usize,
    pub exhaustive: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CboundSummary {
    pub t: Vec<String>,
    pub p: String,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
    pub within_radius: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LmdSummary {
    pub alpha: Cardinal,
    pub holds: bool,
    pub witness: Option<LmdWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LmdWitness {
    pub a: String,
    pub x: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HmSummary {
    pub kappa: Cardinal,
    pub holds: bool,
    pub witness: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TripleSummary {
    pub class: TripleClass,
    pub triples: usize,
    pub split: usize,
    pub indeterminate: usize,
    pub first_split: Option<[String; 3]>,
    pub first_indeterminate: Option<[String; 3]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckSummary {
    pub check: String,
    pub violation: Option<String>,
}

fn labels_of(p: &Poset, t: Triple) -> [String; 3] {
    [t.a, t.b, t.c].map(|i| p.label(i).to_string())
}

/// Cardinal bounds `3..=|P|` and `ω`; larger finite bounds coincide with `ω`.
fn bounds(p: &Poset, from: usize) -> Vec<Cardinal> {
    (from..=p.len().max(from))
        .map(Cardinal::Finite)
        .chain([Cardinal::Omega])
        .collect()
}

/// Full report for `spec` (or `U_γ`) on `poset`. A failed named check, or a
/// contradiction between the two sides of the frame characterisation, is a
/// violation.
pub fn analyze(
    poset: Arc<Poset>,
    spec: Option<JoinSpec>,
    family: Option<ClosureFamily>,
    opts: &AnalyzeOptions,
) -> CliResult<AnalyzeReport> {
    let limit = opts.limit;
    let (spec, gamma) = match spec {
        Some(s) => (s, None),
        None => (
            JoinSpec::u_gamma(poset.clone(), opts.gamma, limit)?,
            Some(opts.gamma),
        ),
    };
    let analysis = FrameAnalysis::new(spec.clone(), limit)?;
    let lattice = analysis.lattice();
    let frame = lattice.is_frame(opts.frame_check, limit)?;
    let main = analysis.check_main_theorem(limit)?;
    let cbound = analysis.cbound_witness().map(|w| CboundSummary {
        t: poset.subset_labels(w.t),
        p: poset.label(w.p).to_string(),
        lhs: poset.subset_labels(w.lhs),
        rhs: poset.subset_labels(w.rhs),
        within_radius: w.within_radius,
    });
    let minimal_radius = match lattice.family().minimal_radius(limit)? {
        GenerationRadius::Radius(r) => r.to_string(),
        GenerationRadius::NotGenerated => "not-generated".to_string(),
    };
    let lmd = bounds(&poset, 3)
        .into_iter()
        .map(|alpha| {
            let v = is_lmd(&poset, alpha, limit)?;
            Ok(LmdSummary {
                alpha,
                holds: v.holds,
                witness: v.witness.map(|(a, x)| LmdWitness {
                    a: poset.label(a).to_string(),
                    x: poset.subset_labels(x),
                }),
            })
        })
        .collect::<posetkit::Result<Vec<_>>>()?;
    let hm = bounds(&poset, 2)
        .into_iter()
        .map(|kappa| {
            let v = check_hm(poset.clone(), kappa, limit)?;
            Ok(HmSummary {
                kappa,
                holds: v.holds,
                witness: v.witness.map(|s| poset.subset_labels(s)),
            })
        })
        .collect::<posetkit::Result<Vec<_>>>()?;
    let c = classify_triples(&poset);
    let triples = TripleSummary {
        class: c.class,
        triples: c.triple_count,
        split: c.split_count,
        indeterminate: c.indeterminate_count,
        first_split: c.first_split.map(|t| labels_of(&poset, t)),
        first_indeterminate: c.first_indeterminate.map(|t| labels_of(&poset, t)),
    };
    let instance = Instance::new(
        spec.clone(),
        family.unwrap_or_else(|| lattice.family().clone()),
    );
    let checks = opts
        .checks
        .iter()
        .map(|&c| {
            Ok(CheckSummary {
                check: c.name().to_string(),
                violation: c.run(&instance, limit)?,
            })
        })
        .collect::<posetkit::Result<Vec<_>>>()?;
    let report = AnalyzeReport {
        poset: PosetSummary {
            elements: poset.labels().to_vec(),
            covers: poset
                .cover_pairs()
                .into_iter()
                .map(|(a, b)| (poset.label(a).to_string(), poset.label(b).to_string()))
                .collect(),
            lattice: poset.is_lattice(),
        },
        spec: SpecSummary {
            gamma,
            sets: spec.labelled_members(),
            radius: spec.radius(),
        },
        completion: CompletionSummary {
            size: lattice.elements().len(),
            elements: lattice
                .elements()
                .iter()
                .map(|&s| poset.subset_labels(s))
                .collect(),
            covers: lattice.covers(),
        },
        frame: FrameSummary {
            frame: frame.frame,
            witness: frame.witness.as_ref().map(|w| lattice.describe_witness(w)),
            sigma_checked: frame.sigma_checked,
        },
        main_theorem: MainTheoremSummary {
            phi_eq_upsilon: main.phi_eq_upsilon,
            frame: main.frame,
            holds: main.holds(),
            witness: main.upsilon_witness.map(|s| poset.subset_labels(s)),
            sets_checked: main.sets_checked,
            exhaustive: main.exhaustive,
        },
        cbound,
        minimal_radius,
        lmd,
        hm,
        triples,
        checks,
    };
    if !report.main_theorem.holds || report.checks.iter().any(|c| c.violation.is_some()) {
        return Err(CliError::Violation(posetkit::formats::to_json(&report)));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use posetkit::fixtures;

    fn run(p: Poset, spec: &[&[&str]]) -> AnalyzeReport {
        let p = Arc::new(p);
        let spec = (!spec.is_empty()).then(|| {
            let sets = spec.iter().map(|s| p.subset(s).unwrap());
            JoinSpec::new(p.clone(), sets).unwrap()
        });
        analyze(p, spec, None, &AnalyzeOptions::default()).unwrap()
    }

    #[test]
    fn vee5_with_spec() {
        let r = run(fixtures::vee5(), &[&["x", "y"]]);
        assert!(!r.frame.frame);
        let w = r.frame.witness.unwrap();
        assert_eq!(w.x, vec!["x", "x'"]);
        let c = r.cbound.unwrap();
        assert_eq!((c.t, c.p), (vec!["x".to_string(), "y".to_string()], "x'".to_string()));
        assert_eq!(r.minimal_radius, "3");
        assert_eq!(r.completion.size, 6);
        assert!(!r.main_theorem.phi_eq_upsilon);
    }

    #[test]
    fn boolean2_is_a_frame_in_class_l() {
        let r = run(fixtures::boolean(2), &[]);
        assert!(r.frame.frame);
        assert_eq!(r.triples.class, TripleClass::L);
        assert!(r.lmd.iter().all(|l| l.holds));
    }

    #[test]
    fn hmgap4_gap() {
        let r = run(fixtures::hmgap4(), &[]);
        assert_eq!(r.triples.class, TripleClass::I);
        let lmd3 = &r.lmd[0];
        assert_eq!(lmd3.alpha, Cardinal::Finite(3));
        assert!(!lmd3.holds);
        assert_eq!(
            lmd3.witness,
            Some(LmdWitness {
                a: "a".into(),
                x: vec!["b".into(), "c".into()]
            })
        );
        let hm_omega = r.hm.iter().find(|h| h.kappa == Cardinal::Omega).unwrap();
        assert!(hm_omega.holds);
    }

    #[test]
    fn named_checks_are_reported() {
        let p = Arc::new(fixtures::vee5());
        let opts = AnalyzeOptions {
            checks: Check::ALL.to_vec(),
            ..AnalyzeOptions::default()
        };
        let r = analyze(p, None, None, &opts).unwrap();
        assert_eq!(r.checks.len(), Check::ALL.len());
    }
}
