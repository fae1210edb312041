//! Batch runner exposing every verification suite.
//!
//! Subcommands mirror the library modules: `verify banach|amalgam|sop-type`
//! run the normed-space suites, `groups enumerate|britton|amalgamate|chain-check`
//! run the group-theoretic ones. Parameters resolve in three layers: CLI flag,
//! then `--config` file entry, then built-in default. The config file is a
//! flat `key = value` text file; `#` starts a comment.
//!
//! Exit codes: 0 all checks pass, 1 at least one fail record, 2 argument
//! parse error (from clap), 3 configuration or usage error, 4 no fails but
//! at least one inconclusive record.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::amalgam::{
    rho_estimate, verify_convergence_claims, CanonicalPairProvider, SequenceProvider,
    SimpleProvider,
};
use crate::banach::{
    chain_verify, check_eq1_eq2, cycle_search_and_certify, entailment_spotcheck,
    term_shift_identity, type_p_on_chain, CycleParams,
};
use crate::groups::{
    adjacency_type_check, britton_reduce, bs12_chain_check, build_free_amalgam, higman_preset,
    preset, todd_coxeter_with, verify_table, AdjacencyType, EnumerationStatus, GroupWord,
    HNNWord, Strategy,
};
use crate::qlinalg::FSVector;
use crate::report::{emit, sort_reports, CheckReport, ReportFormat, Status};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 3;
pub const EXIT_INCONCLUSIVE: u8 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("suite failed to run: {0}")]
    Suite(String),
}

impl From<crate::banach::BanachError> for CliError {
    fn from(e: crate::banach::BanachError) -> Self {
        CliError::Suite(e.to_string())
    }
}

impl From<crate::amalgam::AmalgamError> for CliError {
    fn from(e: crate::amalgam::AmalgamError) -> Self {
        CliError::Suite(e.to_string())
    }
}

impl From<crate::groups::GroupsError> for CliError {
    fn from(e: crate::groups::GroupsError) -> Self {
        CliError::Suite(e.to_string())
    }
}

/// Flat key=value parameter store merged from the `--config` file. Lookups
/// parse on demand so unknown keys are simply ignored by suites that do
/// not use them.
#[derive(Debug, Clone, Default)]
pub struct SuiteConfig {
    entries: BTreeMap<String, String>,
}

impl SuiteConfig {
    pub fn from_file(path: &PathBuf) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            entries.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(SuiteConfig { entries })
    }

    pub fn string(&self, key: &str) -> Option<String> {
        self.entries.get(key).cloned()
    }

    pub fn u64(&self, key: &str) -> Result<Option<u64>, CliError> {
        self.entries
            .get(key)
            .map(|v| {
                v.parse::<u64>()
                    .map_err(|_| CliError::Config(format!("{key}: expected an integer, got {v:?}")))
            })
            .transpose()
    }

    pub fn usize(&self, key: &str) -> Result<Option<usize>, CliError> {
        Ok(self.u64(key)?.map(|v| v as usize))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    JsonLines,
    SummaryText,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::JsonLines => ReportFormat::JsonLines,
            FormatArg::SummaryText => ReportFormat::SummaryText,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "soplab", version, about = "Exact verification suites for order-property constructions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for randomized suites; mandatory where sampling is involved.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write reports to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json-lines")]
    pub format: FormatArg,
    /// Flat key=value file supplying defaults for any suite parameter.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normed-space verification suites.
    Verify {
        #[command(subcommand)]
        suite: VerifySuite,
    },
    /// Group-theoretic suites.
    Groups {
        #[command(subcommand)]
        task: GroupsTask,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifySuite {
    /// Witness-vector identities, the chain, and the term-shift identity.
    Banach {
        #[arg(long)]
        n: Option<u64>,
        /// Index range for the alpha/beta grid.
        #[arg(long)]
        range: Option<u64>,
        /// Chain length for the increasing-pair checks.
        #[arg(long)]
        chain: Option<u64>,
    },
    /// Convergence, sandwich, and symmetry-surrogate checks.
    Amalgam {
        /// Sequence provider: `canonical` or `simple`.
        #[arg(long)]
        provider: Option<String>,
        #[arg(long)]
        j: Option<u64>,
        /// Also run the interval estimate at stage jMax².
        #[arg(long = "j-max")]
        j_max: Option<u64>,
    },
    /// Cycle infeasibility and entailment spot checks.
    SopType {
        #[arg(long)]
        n: Option<u64>,
        /// Cycle parameter, 2 < m <= n.
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        trials: Option<u64>,
        /// Sample count for the entailment spot check.
        #[arg(long)]
        samples: Option<u64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GroupsTask {
    /// Coset enumeration over a named preset.
    Enumerate {
        #[arg(long)]
        preset: Option<String>,
        #[arg(long = "max-cosets")]
        max_cosets: Option<usize>,
        /// `hlt` or `full-scan`.
        #[arg(long)]
        strategy: Option<String>,
        /// Subgroup generator words (repeatable).
        #[arg(long)]
        subgroup: Vec<String>,
    },
    /// Britton-reduce a word over a, b, c in the dyadic HNN extension.
    Britton {
        #[arg(long)]
        word: Option<String>,
    },
    /// Build the four-cycle amalgam and check it against the preset.
    Amalgamate {
        #[arg(long = "max-cosets")]
        max_cosets: Option<usize>,
    },
    /// Affine-model check of the two-generator chain relation.
    ChainCheck,
}

/// Parses arguments from the process environment and runs the selected
/// suite. Returns the process exit code.
pub fn run() -> u8 {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("soplab: {e}");
            EXIT_USAGE
        }
    }
}

pub fn execute(cli: Cli) -> Result<u8, CliError> {
    let config = match &cli.config {
        Some(path) => SuiteConfig::from_file(path)?,
        None => SuiteConfig::default(),
    };
    let seed = match cli.seed {
        Some(s) => Some(s),
        None => config.u64("seed")?,
    };

    let mut reports = match cli.command {
        Command::Verify { suite } => run_verify(suite, &config, seed)?,
        Command::Groups { task } => run_groups(task, &config)?,
    };
    sort_reports(&mut reports);

    let format: ReportFormat = cli.format.into();
    match cli.out.or_else(|| config.string("out").map(PathBuf::from)) {
        Some(path) => {
            let mut file = fs::File::create(&path)?;
            emit(&reports, format, &mut file)?;
            file.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            emit(&reports, format, &mut lock)?;
        }
    }

    Ok(exit_code(&reports))
}

fn exit_code(reports: &[CheckReport]) -> u8 {
    if reports.iter().any(|r| r.status == Status::Fail) {
        EXIT_FAIL
    } else if reports.iter().any(|r| r.status == Status::Inconclusive) {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_PASS
    }
}

fn run_verify(
    suite: VerifySuite,
    config: &SuiteConfig,
    seed: Option<u64>,
) -> Result<Vec<CheckReport>, CliError> {
    match suite {
        VerifySuite::Banach { n, range, chain } => {
            let n = n.or(config.u64("n")?).unwrap_or(7);
            let range = range.or(config.u64("range")?).unwrap_or(11);
            let chain = chain.or(config.u64("chain")?).unwrap_or(16);
            Ok(vec![
                check_eq1_eq2(n, range)?,
                chain_verify(n, chain)?,
                type_p_on_chain(5, chain)?,
                term_shift_identity(20)?,
            ])
        }
        VerifySuite::Amalgam { provider, j, j_max } => {
            let name = provider
                .or_else(|| config.string("provider"))
                .unwrap_or_else(|| "canonical".to_string());
            let (provider, r_prime, r_dprime): (Box<dyn SequenceProvider>, FSVector, FSVector) =
                match name.as_str() {
                    "canonical" => (
                        Box::new(CanonicalPairProvider),
                        FSVector::e(0),
                        FSVector::e(1),
                    ),
                    "simple" => (Box::new(SimpleProvider), FSVector::e(0), FSVector::e(0)),
                    other => {
                        return Err(CliError::Usage(format!(
                            "unknown provider {other:?} (expected canonical or simple)"
                        )))
                    }
                };
            let j = j.or(config.u64("j")?).unwrap_or(3);
            let mut reports = vec![verify_convergence_claims(
                provider.as_ref(),
                &r_prime,
                &r_dprime,
                j,
            )?];
            if let Some(j_max) = j_max.or(config.u64("jMax")?) {
                let rho = rho_estimate(provider.as_ref(), &r_prime, &r_dprime, j_max)?;
                reports.push(rho.report);
            }
            Ok(reports)
        }
        VerifySuite::SopType {
            n,
            m,
            trials,
            samples,
        } => {
            let seed = seed.ok_or_else(|| {
                CliError::Usage("sop-type is a randomized suite; --seed is required".to_string())
            })?;
            let n = n.or(config.u64("n")?).unwrap_or(5);
            let m = m.or(config.u64("m")?).unwrap_or(3);
            let trials = trials.or(config.u64("trials")?).unwrap_or(1000);
            let samples = samples.or(config.u64("samples")?).unwrap_or(1000);
            Ok(vec![
                cycle_search_and_certify(CycleParams { n, m, trials, seed })?,
                entailment_spotcheck(n, samples, seed)?,
            ])
        }
    }
}

fn run_groups(task: GroupsTask, config: &SuiteConfig) -> Result<Vec<CheckReport>, CliError> {
    match task {
        GroupsTask::Enumerate {
            preset: name,
            max_cosets,
            strategy,
            subgroup,
        } => {
            let name = name
                .or_else(|| config.string("preset"))
                .ok_or_else(|| CliError::Usage("--preset is required".to_string()))?;
            let pres =
                preset(&name).map_err(|e| CliError::Usage(format!("unknown preset: {e}")))?;
            let max_cosets = max_cosets.or(config.usize("maxCosets")?).unwrap_or(1_000_000);
            let strategy = match strategy
                .or_else(|| config.string("strategy"))
                .as_deref()
                .unwrap_or("hlt")
            {
                "hlt" => Strategy::Hlt,
                "full-scan" => Strategy::FullScan,
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown strategy {other:?} (expected hlt or full-scan)"
                    )))
                }
            };
            let subgens = subgroup
                .iter()
                .map(|w| GroupWord::parse(w))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let table = todd_coxeter_with(&pres, &subgens, max_cosets, strategy)?;
            let report = CheckReport::new("groups.enumerate", Status::Pass)
                .with_value("preset", &name)
                .with_value("maxCosets", max_cosets);
            let report = match table.status {
                EnumerationStatus::Closed(n) => {
                    verify_table(&pres, &subgens, &table)?;
                    report
                        .with_value("status", format!("closed({n})"))
                        .with_value("verified", "true")
                }
                EnumerationStatus::Overflow(limit) => CheckReport::new(
                    "groups.enumerate",
                    Status::Inconclusive,
                )
                .with_value("preset", &name)
                .with_value("maxCosets", max_cosets)
                .with_value("status", format!("overflow({limit})")),
            };
            Ok(vec![report])
        }
        GroupsTask::Britton { word } => {
            let text = word
                .or_else(|| config.string("word"))
                .ok_or_else(|| CliError::Usage("--word is required".to_string()))?;
            let parsed = GroupWord::parse(&text).map_err(|e| CliError::Usage(e.to_string()))?;
            let hnn = HNNWord::from_group_word(&parsed)?;
            let reduced = britton_reduce(&hnn)?;
            Ok(vec![CheckReport::new("groups.britton", Status::Pass)
                .with_value("input", &text)
                .with_value("pinches", reduced.pinches)
                .with_value("nontrivial", reduced.is_nontrivial())
                .with_value("stable_letters", reduced.word.tail.len())])
        }
        GroupsTask::Amalgamate { max_cosets } => {
            let max_cosets = max_cosets.or(config.usize("maxCosets")?).unwrap_or(100_000);
            let adj = AdjacencyType::sq_pair();
            let (_amalgam, flattened) = build_free_amalgam(&adj, true)?;
            let expected = higman_preset();
            let flatten = if flattened == expected {
                CheckReport::new("groups.flatten", Status::Pass)
                    .with_value("generators", expected.generators().len())
                    .with_value("relators", expected.relators().len())
            } else {
                CheckReport::fail("groups.flatten", format!("got {flattened}"))
            };
            let pairs = [(0, 1), (1, 2), (2, 3), (3, 0)];
            let adjacency = adjacency_type_check(&expected, &adj, &pairs)?;
            let probe = match todd_coxeter_with(&expected, &[], max_cosets, Strategy::Hlt)?.status {
                EnumerationStatus::Overflow(limit) => {
                    // Expected outcome: the group is infinite, so the probe
                    // records pass-by-expectation rather than a proof.
                    CheckReport::new("groups.higman_probe", Status::Pass)
                        .with_value("status", format!("overflow({limit})"))
                }
                EnumerationStatus::Closed(n) => CheckReport::fail(
                    "groups.higman_probe",
                    format!("enumeration closed with {n} cosets"),
                ),
            };
            Ok(vec![flatten, adjacency, probe])
        }
        GroupsTask::ChainCheck => Ok(vec![bs12_chain_check()]),
    }
}
