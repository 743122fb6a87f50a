use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use posetkit::checks::{Check, Instance, Outcome};
use posetkit::formats::{to_json, FamilyFile, PosetFile, SpecFile};
use posetkit::generate::{
    closed_specs, nonisomorphic_posets_upto, random_poset_sweep, random_spec,
    random_standard_family,
};
use posetkit::{ClosureFamily, JoinSpec, Subset};

use crate::{CliError, CliResult};

#[derive(Clone, Debug)]
pub struct CampaignConfig {
    pub seed: u64,
    pub min_size: usize,
    pub max_size: usize,
    pub samples: usize,
    pub checks: Vec<Check>,
    /// Also run every non-isomorphic poset up to `max_size` with one spec per
    /// closure operator `Γ_V`.
    pub exhaustive: bool,
    pub dump: Option<PathBuf>,
    pub limit: u64,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            seed: 0,
            min_size: 1,
            max_size: 5,
            samples: 100,
            checks: Check::ALL.to_vec(),
            exhaustive: false,
            dump: None,
            limit: posetkit::DEFAULT_SIZE_GUARD,
        }
    }
}

/// Largest size accepted for the exhaustive sweep.
pub const MAX_EXHAUSTIVE_SIZE: usize = 6;
/// Violations kept in full in the report.
pub const MAX_RECORDED: usize = 20;

#[derive(Clone, Debug, Serialize)]
pub struct CampaignReport {
    pub seed: u64,
    pub min_size: usize,
    pub max_size: usize,
    pub samples: usize,
    pub exhaustive: bool,
    pub checks: Vec<String>,
    pub exhaustive_posets: usize,
    pub instances: usize,
    pub tallies: Vec<Tally>,
    pub violation_count: usize,
    pub violations: Vec<ViolationRecord>,
}

impl CampaignReport {
    pub fn tally(&self, check: Check) -> Option<&Tally> {
        self.tallies.iter().find(|t| t.check == check.name())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Tally {
    pub check: String,
    pub runs: usize,
    pub violations: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceDump {
    pub poset: PosetFile,
    pub spec: SpecFile,
    pub family: FamilyFile,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ViolationRecord {
    pub instance: String,
    pub check: String,
    pub original: InstanceDump,
    pub minimized: InstanceDump,
    /// Command re-running the minimized instance, when files were dumped.
    pub rerun: Option<String>,
}

struct Job {
    id: String,
    instance: Instance,
    /// Run the checks that only look at the poset.
    poset_checks: bool,
}

/// Random instance `index`; the stream is derived from the seed and the
/// index alone, so instances do not depend on scheduling.
pub fn random_instance(seed: u64, index: u64, min: usize, max: usize, limit: u64) -> posetkit::Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let n = rng.gen_range(min..=max);
    let p = Arc::new(random_poset_sweep(&mut rng, n));
    let density = rng.gen_range(0.0..=1.0);
    let spec = random_spec(&mut rng, p.clone(), density, limit)?;
    let family = random_standard_family(&mut rng, p, limit)?;
    Ok(Instance::new(spec, family))
}

fn exhaustive_jobs(max: usize, limit: u64) -> posetkit::Result<(usize, Vec<Job>)> {
    let posets = nonisomorphic_posets_upto(max)?;
    let per_poset: Vec<Vec<Job>> = posets
        .into_par_iter()
        .enumerate()
        .map(|(i, p)| {
            let p = Arc::new(p);
            closed_specs(p, limit)?
                .into_iter()
                .enumerate()
                .map(|(j, spec)| {
                    Ok(Job {
                        id: format!("exhaustive#{i}.{j}"),
                        instance: Instance::from_spec(spec, limit)?,
                        poset_checks: j == 0,
                    })
                })
                .collect()
        })
        .collect::<posetkit::Result<_>>()?;
    let count = per_poset.len();
    Ok((count, per_poset.into_iter().flatten().collect()))
}

pub fn run_campaign(cfg: &CampaignConfig) -> CliResult<CampaignReport> {
    if cfg.min_size == 0 || cfg.min_size > cfg.max_size || cfg.max_size > posetkit::MAX_ELEMENTS {
        return Err(CliError::Input(format!(
            "sizes must satisfy 1 <= min ({}) <= max ({}) <= {}",
            cfg.min_size,
            cfg.max_size,
            posetkit::MAX_ELEMENTS
        )));
    }
    if cfg.exhaustive && cfg.max_size > MAX_EXHAUSTIVE_SIZE {
        return Err(CliError::Input(format!(
            "exhaustive sweeps are limited to {MAX_EXHAUSTIVE_SIZE} elements"
        )));
    }
    let limit = cfg.limit;
    let (exhaustive_posets, mut jobs) = if cfg.exhaustive {
        exhaustive_jobs(cfg.max_size, limit)?
    } else {
        (0, Vec::new())
    };
    let random: Vec<Job> = (0..cfg.samples as u64)
        .into_par_iter()
        .map(|i| {
            Ok(Job {
                id: format!("random#{i}"),
                instance: random_instance(cfg.seed, i, cfg.min_size, cfg.max_size, limit)?,
                poset_checks: true,
            })
        })
        .collect::<posetkit::Result<_>>()?;
    jobs.extend(random);

    let outcomes: Vec<Vec<(Check, Outcome)>> = jobs
        .par_iter()
        .map(|job| {
            cfg.checks
                .iter()
                .filter(|c| job.poset_checks || !c.poset_only())
                .map(|&c| Ok((c, c.run(&job.instance, limit)?)))
                .collect()
        })
        .collect::<posetkit::Result<_>>()?;

    let mut tallies: Vec<Tally> = cfg
        .checks
        .iter()
        .map(|c| Tally {
            check: c.name().to_string(),
            runs: 0,
            violations: 0,
        })
        .collect();
    let mut failing = Vec::new();
    for (job, results) in jobs.iter().zip(&outcomes) {
        for (c, outcome) in results {
            let k = cfg.checks.iter().position(|x| x == c).unwrap();
            tallies[k].runs += 1;
            if let Some(msg) = outcome {
                tallies[k].violations += 1;
                failing.push((job, *c, msg.clone()));
            }
        }
    }
    let violation_count = failing.len();
    let violations = failing
        .into_iter()
        .take(MAX_RECORDED)
        .enumerate()
        .map(|(k, (job, check, message))| record(k, job, check, message, cfg))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(CampaignReport {
        seed: cfg.seed,
        min_size: cfg.min_size,
        max_size: cfg.max_size,
        samples: cfg.samples,
        exhaustive: cfg.exhaustive,
        checks: cfg.checks.iter().map(|c| c.name().to_string()).collect(),
        exhaustive_posets,
        instances: jobs.len(),
        tallies,
        violation_count,
        violations,
    })
}

fn dump_of(inst: &Instance, message: String) -> InstanceDump {
    InstanceDump {
        poset: PosetFile::from_poset(inst.poset()),
        spec: SpecFile::from_spec(&inst.spec),
        family: FamilyFile::from_family(&inst.family),
        message,
    }
}

fn record(k: usize, job: &Job, check: Check, message: String, cfg: &CampaignConfig) -> CliResult<ViolationRecord> {
    let fails = |i: &Instance| check.run(i, cfg.limit);
    let small = minimize(&job.instance, &fails)?;
    let small_message = fails(&small)?.unwrap_or_default();
    let minimized = dump_of(&small, small_message);
    let rerun = match &cfg.dump {
        Some(dir) => Some(write_dump(dir, k, check, &minimized)?),
        None => None,
    };
    Ok(ViolationRecord {
        instance: job.id.clone(),
        check: check.name().to_string(),
        original: dump_of(&job.instance, message),
        minimized,
        rerun,
    })
}

fn write_dump(dir: &Path, k: usize, check: Check, d: &InstanceDump) -> CliResult<String> {
    let io = |e: std::io::Error| CliError::Input(format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    let path = |kind: &str| dir.join(format!("violation{k}.{kind}.json"));
    fs::write(path("poset"), to_json(&d.poset)).map_err(io)?;
    fs::write(path("spec"), to_json(&d.spec)).map_err(io)?;
    fs::write(path("family"), to_json(&d.family)).map_err(io)?;
    Ok(format!(
        "posetkit analyze {} --spec {} --family {} --checks {}",
        path("poset").display(),
        path("spec").display(),
        path("family").display(),
        check
    ))
}

/// Renumbers the points of `s` inside `keep` consecutively.
fn compress(s: Subset, keep: Subset) -> Subset {
    keep.iter()
        .enumerate()
        .filter(|&(_, i)| s.contains(i))
        .map(|(k, _)| k)
        .collect()
}

/// The instance restricted to the points of `keep`: members of the spec that
/// survive with a join, and the family generated by the traces of closed sets.
pub fn restrict(inst: &Instance, keep: Subset) -> posetkit::Result<Instance> {
    let p = Arc::new(inst.poset().induced(keep));
    let sets: Vec<Subset> = inst
        .spec
        .nontrivial()
        .filter(|s| s.is_subset(keep))
        .map(|s| compress(s, keep))
        .filter(|&s| p.join(s).is_some())
        .collect();
    let spec = JoinSpec::new(p.clone(), sets)?;
    let traces: Vec<Subset> = inst
        .family
        .closed_sets()
        .iter()
        .map(|&c| compress(c.intersection(keep), keep))
        .collect();
    let family = ClosureFamily::generated_by(p, traces)?;
    Ok(Instance::new(spec, family))
}

/// Greedily drops points, then spec members, while `fails` keeps reporting a
/// violation.
pub fn minimize<F>(inst: &Instance, fails: &F) -> posetkit::Result<Instance>
where
    F: Fn(&Instance) -> posetkit::Result<Outcome>,
{
    let mut cur = inst.clone();
    loop {
        let mut shrunk = false;
        let top = cur.poset().top_set();
        for e in top.iter() {
            if top.len() == 1 {
                break;
            }
            let cand = restrict(&cur, top.without(e))?;
            if fails(&cand)?.is_some() {
                cur = cand;
                shrunk = true;
                break;
            }
        }
        if shrunk {
            continue;
        }
        let members: Vec<Subset> = cur.spec.nontrivial().collect();
        for &m in &members {
            let rest = members.iter().copied().filter(|&s| s != m);
            let cand = Instance::new(JoinSpec::new(cur.poset().clone(), rest)?, cur.family.clone());
            if fails(&cand)?.is_some() {
                cur = cand;
                shrunk = true;
                break;
            }
        }
        if !shrunk {
            return Ok(cur);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use posetkit::{fixtures, DEFAULT_SIZE_GUARD as G};

    #[test]
    fn reports_are_reproducible() {
        let cfg = CampaignConfig {
            seed: 11,
            max_size: 5,
            samples: 40,
            ..CampaignConfig::default()
        };
        let a = to_json(&run_campaign(&cfg).unwrap());
        let b = to_json(&run_campaign(&cfg).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn small_exhaustive_sweep_is_clean() {
        let cfg = CampaignConfig {
            max_size: 3,
            samples: 0,
            exhaustive: true,
            checks: vec![Check::MainTheorem, Check::Cbound],
            ..CampaignConfig::default()
        };
        let r = run_campaign(&cfg).unwrap();
        assert_eq!(r.exhaustive_posets, 1 + 2 + 5);
        assert_eq!(r.violation_count, 0);
    }

    #[test]
    fn minimize_shrinks_to_the_core() {
        let p = Arc::new(fixtures::vee5());
        let inst = Instance::from_spec(JoinSpec::singletons(p), G).unwrap();
        // "has two incomparable points" is minimally witnessed by a 2-antichain
        let fails = |i: &Instance| -> posetkit::Result<Outcome> {
            let q = i.poset();
            let found = (0..q.len()).any(|a| (0..q.len()).any(|b| !q.comparable(a, b)));
            Ok(found.then(|| "incomparable pair".to_string()))
        };
        let small = minimize(&inst, &fails).unwrap();
        assert_eq!(small.poset().len(), 2);
        assert!(small.poset().is_isomorphic(&fixtures::antichain(2)));
    }

    #[test]
    fn restrict_keeps_surviving_members() {
        let p = Arc::new(fixtures::vee5());
        let xy = p.subset(&["x", "y"]).unwrap();
        let inst = Instance::from_spec(JoinSpec::new(p.clone(), [xy]).unwrap(), G).unwrap();
        let keep = p.top_set().without(p.index_of("x'").unwrap());
        let r = restrict(&inst, keep).unwrap();
        assert_eq!(r.poset().len(), 4);
        assert_eq!(r.spec.nontrivial().count(), 1);
        let drop_z = restrict(&inst, p.top_set().without(p.index_of("z").unwrap())).unwrap();
        assert_eq!(drop_z.spec.nontrivial().count(), 0);
    }
}
