use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use posetkit::checks::Check;
use posetkit::formats::to_json;
use posetkit::lattice::FrameCheck;
use posetkit::{Cardinal, DEFAULT_SIZE_GUARD};
use posetkit_cli::analyze::{analyze, AnalyzeOptions};
use posetkit_cli::campaign::{run_campaign, CampaignConfig};
use posetkit_cli::input::{load_family, load_poset, load_representation, load_spec};
use posetkit_cli::represent::{represent, verify};
use posetkit_cli::search::{search, SearchOptions, Target};
use posetkit_cli::{CliError, CliResult};

/// Join-specifications, closure operators, frames and powerset
/// representations of finite posets.
///
/// POSET arguments are JSON files or fixture names (antichain3, vee5,
/// hmgap4, m3, n5, lmd6, chain_N, boolean_N, antichain_N).
/// Exit codes: 0 ok, 1 property violation, 2 input error.
#[derive(Parser)]
#[command(name = "posetkit", version)]
struct Cli {
    /// Refuse enumerations larger than this.
    #[arg(long, global = true, default_value_t = DEFAULT_SIZE_GUARD)]
    size_guard: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Completion lattice, frame verdict, LMD/HM verdicts, triple class and
    /// minimal radius as one JSON report.
    Analyze {
        poset: String,
        /// Join-specification file; defaults to U_gamma.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, default_value = "omega")]
        gamma: Cardinal,
        /// Closure family used by the named checks; defaults to the ideals
        /// of the spec.
        #[arg(long)]
        family: Option<PathBuf>,
        /// Check distributivity over all subfamilies instead of triples.
        #[arg(long)]
        audit: bool,
        /// Named checks to run on the instance.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<Check>,
    },
    /// Build and verify an (omega, n)-representation of an LMD_n poset.
    Represent {
        poset: String,
        #[arg(long)]
        n: Cardinal,
        /// Write the representation here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a representation file against a poset.
    Verify { poset: String, representation: PathBuf },
    /// Run property suites over random (and optionally all small) instances.
    Campaign {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        min_size: usize,
        #[arg(long, default_value_t = 5)]
        max_size: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Comma-separated check names; all checks when omitted.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<Check>,
        /// Add every non-isomorphic poset up to max-size with every closure
        /// operator generated by a join-specification.
        #[arg(long)]
        exhaustive: bool,
        /// Directory for minimized counterexample files.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Find the smallest posets exhibiting a gap.
    Search {
        /// hm_not_lmd, frame_fail_sigma, split_triple or indeterminate_no_split.
        target: Target,
        #[arg(long, default_value_t = 5)]
        max_size: usize,
        /// Spec radius for frame_fail_sigma.
        #[arg(long, default_value_t = 3)]
        radius: usize,
        /// Report instances of every size up to max-size, not just the
        /// smallest.
        #[arg(long)]
        all_sizes: bool,
    },
}

fn run(cli: Cli) -> CliResult<String> {
    let limit = cli.size_guard;
    match cli.command {
        Command::Analyze {
            poset,
            spec,
            gamma,
            family,
            audit,
            checks,
        } => {
            let p = load_poset(&poset)?;
            let spec = spec.map(|s| load_spec(&s, p.clone())).transpose()?;
            let family = family.map(|f| load_family(&f, p.clone())).transpose()?;
            let opts = AnalyzeOptions {
                gamma: gamma.require_at_least(2)?,
                frame_check: if audit { FrameCheck::Audit } else { FrameCheck::Fast },
                checks,
                limit,
            };
            Ok(to_json(&analyze(p, spec, family, &opts)?))
        }
        Command::Represent { poset, n, out } => {
            let p = load_poset(&poset)?;
            let json = to_json(&represent(p, n, limit)?);
            match out {
                Some(path) => {
                    fs::write(&path, &json)
                        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                    Ok(format!("wrote {}", path.display()))
                }
                None => Ok(json),
            }
        }
        Command::Verify {
            poset,
            representation,
        } => {
            let p = load_poset(&poset)?;
            let rep = load_representation(&representation, &p)?;
            Ok(to_json(&verify(&p, &rep, limit)?))
        }
        Command::Campaign {
            seed,
            min_size,
            max_size,
            samples,
            checks,
            exhaustive,
            dump,
        } => {
            let cfg = CampaignConfig {
                seed,
                min_size,
                max_size,
                samples,
                checks: if checks.is_empty() { Check::ALL.to_vec() } else { checks },
                exhaustive,
                dump,
                limit,
            };
            let report = run_campaign(&cfg)?;
            let json = to_json(&report);
            if report.violation_count > 0 {
                Err(CliError::Violation(json))
            } else {
                Ok(json)
            }
        }
        Command::Search {
            target,
            max_size,
            radius,
            all_sizes,
        } => {
            let target = match target {
                Target::FrameFailSigma { .. } => Target::FrameFailSigma { radius },
                t => t,
            };
            let opts = SearchOptions {
                max_size,
                all_sizes,
                limit,
            };
            Ok(to_json(&search(target, opts)?))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            match &e {
                CliError::Violation(report) => println!("{report}"),
                CliError::Input(msg) => eprintln!("error: {msg}"),
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
