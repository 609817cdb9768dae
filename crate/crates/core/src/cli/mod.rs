//! Command-line front end.

mod svg;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use higher_nash::error::{Error, Result};
use higher_nash::eta::{
    check_endpoint_monotonicity, check_staircase_properties, enumerate_omega, j_of_eta, staircase,
    translated_staircase, EtaSequence, StaircaseData, TranslatedStaircase,
};
use higher_nash::etak::{trace_eta_k, twin_eta, verify_all, verify_main, EtaKReport, EtaKTrace};
use higher_nash::identities::{run_sweeps, IdentityCertificate, SweepConfig, DEFAULT_SEED};
use higher_nash::multiindex::{enumerate_lambda, m_of, LambdaSet, LatticePoint, MultiIndex};
use higher_nash::nashfan::{
    family_points, minimal_resolution_fan, newton_fan, ray_present, refines, Fan2D, RayPresence,
};
use higher_nash::oracle::{cross_check, oracle_fan, CrossCheckReport, OracleOptions};

#[derive(Debug, Parser)]
#[command(name = "higher-nash", version, about = "Order-n Nash blowup combinatorics of A_n")]
pub struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Svg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List Lambda_{t,n}.
    Lambda {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        n: u32,
    },
    /// Sequences in Omega and their staircases.
    #[command(subcommand)]
    Eta(EtaCommand),
    /// Build eta_k step by step.
    Etak {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
    },
    /// The fan of the eta family, or of all of S_{A_n} with --exhaustive.
    Fan {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        exhaustive: bool,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Check that every ray (k, 1-k) appears, for all k or one k.
    Verify {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Exhaustive enumeration of S_{A_n} reconciled with the construction.
    Oracle {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Sweep the binomial identities and span lemmas.
    Identities(IdentityArgs),
}

#[derive(Debug, Subcommand)]
pub enum EtaCommand {
    /// All of Omega for n.
    List {
        #[arg(long)]
        n: u32,
    },
    /// T_eta, T'_eta and J_eta for one sequence.
    Build {
        #[arg(long)]
        n: u32,
        /// `z,d0,d1,...,dr` or `z,d1,...,dr`.
        #[arg(long)]
        seq: String,
    },
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Allow enumeration beyond n = 3.
    #[arg(long)]
    pub override_cost: bool,
    /// Directory for cached oracle results.
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
}

impl OracleArgs {
    fn options(&self) -> OracleOptions {
        OracleOptions {
            override_cost: self.override_cost,
            cache_dir: self.cache_dir.clone(),
        }
    }
}

#[derive(Debug, Args)]
pub struct IdentityArgs {
    #[arg(long, default_value_t = 12)]
    pub riordan_max: u64,
    #[arg(long, default_value_t = 10)]
    pub vandermonde_max_value: u64,
    #[arg(long, default_value_t = 5)]
    pub vandermonde_max_len: usize,
    #[arg(long, default_value_t = 5)]
    pub diagonal_max_n: u32,
    #[arg(long, default_value_t = 5)]
    pub vanishing_max_n: u32,
    #[arg(long, default_value_t = 4)]
    pub vanishing_max_a: u64,
    #[arg(long, default_value_t = 4)]
    pub vanishing_max_r: u64,
    #[arg(long, default_value_t = 4)]
    pub translation_max_n: u32,
    #[arg(long, default_value_t = 3)]
    pub translation_samples: u32,
}

/// Whether every check in scope passed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    CheckFailed,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::CheckFailed => 1,
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::CheckFailed
        }
    }
}

pub fn error_code(e: &Error) -> u8 {
    match e {
        Error::CostRefused { .. } => 3,
        Error::InvalidArgument(_) | Error::LengthMismatch { .. } => 2,
        _ => 1,
    }
}

#[derive(Serialize)]
struct LambdaOutput {
    t: u32,
    n: u32,
    size: usize,
    elements: Vec<MultiIndex>,
}

#[derive(Serialize)]
struct EtaListOutput {
    n: u32,
    count: usize,
    sequences: Vec<EtaSequence>,
}

#[derive(Serialize)]
struct EtaBuildOutput {
    n: u32,
    eta: EtaSequence,
    staircase: StaircaseData,
    translated: TranslatedStaircase,
    j_eta: Vec<MultiIndex>,
    m: LatticePoint,
    violations: Vec<String>,
}

#[derive(Serialize)]
struct EtakOutput {
    trace: EtaKTrace,
    twin: Option<EtaSequence>,
}

#[derive(Serialize)]
struct VerifyOutput {
    n: u32,
    passed: bool,
    reports: Vec<EtaKReport>,
    rays: Vec<RayPresence>,
    family_fan: Fan2D,
    refines_minimal_resolution: bool,
}

#[derive(Serialize)]
struct OracleOutput {
    passed: bool,
    #[serde(flatten)]
    report: CrossCheckReport,
}

#[derive(Serialize)]
struct IdentitiesOutput {
    passed: bool,
    #[serde(flatten)]
    certificate: IdentityCertificate,
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn emit_json<T: Serialize>(cli: &Cli, value: &T) -> Result<()> {
    if cli.format == Format::Svg {
        return Err(Error::InvalidArgument(
            "--format svg is only available for `fan`".into(),
        ));
    }
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit(cli, &text)
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(Error::InvalidArgument("--jobs must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    }
    match &cli.command {
        Command::Lambda { t, n } => {
            let LambdaSet { t, n, elements } = enumerate_lambda(*t, *n)?;
            emit_json(
                cli,
                &LambdaOutput {
                    t,
                    n,
                    size: elements.len(),
                    elements,
                },
            )?;
            Ok(Outcome::Pass)
        }
        Command::Eta(EtaCommand::List { n }) => {
            let sequences = enumerate_omega(*n)?;
            emit_json(
                cli,
                &EtaListOutput {
                    n: *n,
                    count: sequences.len(),
                    sequences,
                },
            )?;
            Ok(Outcome::Pass)
        }
        Command::Eta(EtaCommand::Build { n, seq }) => {
            let eta: EtaSequence = seq.parse()?;
            let j = j_of_eta(*n, &eta)?;
            let mut violations = check_staircase_properties(*n, &eta)?;
            violations.extend(check_endpoint_monotonicity(*n, &eta)?);
            let out = EtaBuildOutput {
                n: *n,
                staircase: staircase(*n, &eta)?,
                translated: translated_staircase(*n, &eta)?,
                m: m_of(*n, &j)?,
                j_eta: j,
                eta,
                violations,
            };
            emit_json(cli, &out)?;
            Ok(Outcome::from_bool(out.violations.is_empty()))
        }
        Command::Etak { n, k } => {
            let out = EtakOutput {
                trace: trace_eta_k(*n, *k)?,
                twin: twin_eta(*n, *k)?,
            };
            emit_json(cli, &out)?;
            Ok(Outcome::Pass)
        }
        Command::Fan { n, exhaustive, oracle } => {
            let fan = if *exhaustive {
                oracle_fan(*n, &oracle.options())?
            } else {
                newton_fan(&family_points(*n)?)?
            };
            match cli.format {
                Format::Json => emit_json(cli, &fan)?,
                Format::Svg => emit(cli, &svg::render(&fan))?,
            }
            Ok(Outcome::from_bool(fan.validate().is_empty()))
        }
        Command::Verify { n, k } => {
            let reports = match k {
                Some(k) => vec![verify_main(*n, *k)?],
                None => verify_all(*n)?,
            };
            let cloud = family_points(*n)?;
            let rays = reports
                .iter()
                .map(|r| ray_present(&cloud, r.k))
                .collect::<Result<Vec<_>>>()?;
            let family_fan = newton_fan(&cloud)?;
            let refines_minimal_resolution = refines(&family_fan, &minimal_resolution_fan(*n)?)?;
            let passed = reports.iter().all(EtaKReport::passed)
                && rays.iter().all(|r| r.present)
                && (k.is_some() || refines_minimal_resolution);
            emit_json(
                cli,
                &VerifyOutput {
                    n: *n,
                    passed,
                    reports,
                    rays,
                    family_fan,
                    refines_minimal_resolution,
                },
            )?;
            Ok(Outcome::from_bool(passed))
        }
        Command::Oracle { n, oracle } => {
            let report = cross_check(*n, &oracle.options())?;
            let passed = report.passed();
            emit_json(cli, &OracleOutput { passed, report })?;
            Ok(Outcome::from_bool(passed))
        }
        Command::Identities(a) => {
            let cfg = SweepConfig {
                riordan_max: a.riordan_max,
                vandermonde_max_value: a.vandermonde_max_value,
                vandermonde_max_len: a.vandermonde_max_len,
                diagonal_max_n: a.diagonal_max_n,
                vanishing_max_n: a.vanishing_max_n,
                vanishing_max_a: a.vanishing_max_a,
                vanishing_max_r: a.vanishing_max_r,
                translation_max_n: a.translation_max_n,
                translation_samples: a.translation_samples,
                seed: cli.seed,
            };
            let certificate = run_sweeps(&cfg)?;
            let passed = certificate.passed();
            emit_json(cli, &IdentitiesOutput { passed, certificate })?;
            Ok(Outcome::from_bool(passed))
        }
    }
}
