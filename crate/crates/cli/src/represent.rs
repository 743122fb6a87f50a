use std::sync::Arc;

use serde::Serialize;

use posetkit::formats::{to_json, RepresentationFile};
use posetkit::representation::{is_lmd, Violation};
use posetkit::{build_representation, verify_representation, Cardinal, Poset, Representation};

use crate::analyze::LmdWitness;
use crate::{CliError, CliResult};

/// Why a poset was refused.
#[derive(Clone, Debug, Serialize)]
pub struct Refusal {
    pub lmd: bool,
    pub alpha: Cardinal,
    pub witness: LmdWitness,
}

/// The representation file contents, after an independent verification.
/// A poset that is not `LMD_n` is refused with its witness as a violation.
pub fn represent(poset: Arc<Poset>, n: Cardinal, limit: u64) -> CliResult<RepresentationFile> {
    if n < Cardinal::Finite(3) {
        return Err(CliError::Input(format!("n must be at least 3, got {n}")));
    }
    let v = is_lmd(&poset, n, limit)?;
    if let Some((a, x)) = v.witness {
        let refusal = Refusal {
            lmd: false,
            alpha: n,
            witness: LmdWitness {
                a: poset.label(a).to_string(),
                x: poset.subset_labels(x),
            },
        };
        return Err(CliError::Violation(to_json(&refusal)));
    }
    let rep = build_representation(poset.clone(), n, limit)?;
    let report = verify_representation(&poset, &rep, limit)?;
    if !report.is_valid() {
        return Err(CliError::Violation(format!(
            "constructed representation fails verification: {:?}",
            report.violations
        )));
    }
    Ok(RepresentationFile::from_representation(&poset, &rep))
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub valid: bool,
    pub meets_checked: usize,
    pub joins_checked: usize,
    pub violations: Vec<String>,
}

fn describe(p: &Poset, v: &Violation) -> String {
    match v {
        Violation::WrongArity { expected, got } => format!("map has {got} entries, expected {expected}"),
        Violation::OutsideGround(a) => format!("image of {} leaves the ground set", p.label(*a)),
        Violation::NotInjective(a, b) => format!("{} and {} share an image", p.label(*a), p.label(*b)),
        Violation::Order(a, b) => format!("order between {} and {} not reflected", p.label(*a), p.label(*b)),
        Violation::Meet(s) => format!("meet of {} not preserved", p.fmt_subset(*s)),
        Violation::Join(s) => format!("join of {} not preserved", p.fmt_subset(*s)),
    }
}

pub fn verify(poset: &Poset, rep: &Representation, limit: u64) -> CliResult<VerifyReport> {
    let r = verify_representation(poset, rep, limit)?;
    let report = VerifyReport {
        valid: r.is_valid(),
        meets_checked: r.meets_checked,
        joins_checked: r.joins_checked,
        violations: r.violations.iter().map(|v| describe(poset, v)).collect(),
    };
    if report.valid {
        Ok(report)
    } else {
        Err(CliError::Violation(to_json(&report)))
    }
}
