use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use wentropy_core::channel::{channel_then_check, Projector};
use wentropy_core::entropy::{
    qutrit_mutual_information_closed_form, weighted_entropy, weighted_mutual_information,
};
use wentropy_core::inequality::{
    audit_random_with_tolerance, check_subadditivity, qutrit_condition_gap,
    qutrit_weight_condition, AuditRegime, WeightCondition,
};
use wentropy_core::states::{
    embed_qutrit, BipartiteState, DensityMatrix, QutritDiagonal, WeightMatrix,
};

use crate::error::{CliError, Result};
use crate::format::human;
use crate::matrix_file::read_matrix;
use crate::sweep::{sweep_probabilities, sweep_weights, QutritWeights, Region};

/// Largest tolerated difference between the closed-form and matrix qutrit paths.
pub const CROSS_CHECK_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(
    name = "wentropy",
    version,
    about = "Weighted quantum entropies and weighted subadditivity checks"
)]
pub struct Cli {
    /// Tolerance for inequality verdicts.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,

    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weighted entropy -tr(φ ρ ln ρ) of a state file under a weight file.
    Entropy {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        weight: PathBuf,
    },
    /// Full subadditivity report for a bipartite state, as JSON.
    Check {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        weight_a: PathBuf,
        #[arg(long)]
        weight_b: PathBuf,
        /// Factor dimensions, e.g. 2x2.
        #[arg(long, default_value = "2x2", value_parser = parse_dims)]
        dims: (usize, usize),
    },
    /// Closed-form qutrit mutual information with condition values.
    Qutrit {
        #[arg(value_parser = parse_real, allow_negative_numbers = true)]
        p1: f64,
        #[arg(value_parser = parse_real, allow_negative_numbers = true)]
        p2: f64,
        #[arg(value_parser = parse_real, allow_negative_numbers = true)]
        phi1: f64,
        #[arg(value_parser = parse_real, allow_negative_numbers = true)]
        phi2: f64,
        #[arg(value_parser = parse_real, allow_negative_numbers = true)]
        chi1: f64,
        #[arg(value_parser = parse_real, allow_negative_numbers = true)]
        chi2: f64,
    },
    /// CSV grids of the qutrit mutual information.
    Sweep {
        #[command(subcommand)]
        kind: SweepCommand,
    },
    /// Applies ρ ↦ PρP / tr(PρP) and re-checks subadditivity.
    Channel {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        projector: PathBuf,
        /// Weight on A (identity when omitted).
        #[arg(long)]
        weight_a: Option<PathBuf>,
        /// Weight on B (identity when omitted).
        #[arg(long)]
        weight_b: Option<PathBuf>,
        #[arg(long, default_value = "2x2", value_parser = parse_dims)]
        dims: (usize, usize),
    },
    /// Seeded random audit of weighted subadditivity, as JSON.
    Audit {
        #[arg(long, default_value_t = 1000)]
        n: u64,
        #[arg(long, default_value = "2x2", value_parser = parse_dims)]
        dims: (usize, usize),
        #[arg(long, default_value = "diagonal-condition-satisfying", value_parser = parse_regime)]
        regime: AuditRegime,
    },
}

#[derive(Debug, Subcommand)]
pub enum SweepCommand {
    /// I(p1, p2) at fixed weights.
    Prob {
        #[arg(long, default_value_t = 97)]
        n: usize,
        #[arg(long, default_value = "3/4", value_parser = parse_real)]
        phi1: f64,
        #[arg(long, default_value = "1/4", value_parser = parse_real)]
        phi2: f64,
        #[arg(long, default_value = "1/3", value_parser = parse_real)]
        chi1: f64,
        #[arg(long, default_value = "2/3", value_parser = parse_real)]
        chi2: f64,
    },
    /// I(φ1, χ1) with φ2 = 1 - φ1 and χ2 = 1 - χ1 at fixed probabilities.
    Weight {
        #[arg(long, value_enum)]
        region: RegionArg,
        #[arg(long, default_value = "1/4", value_parser = parse_real)]
        p1: f64,
        #[arg(long, default_value = "1/8", value_parser = parse_real)]
        p2: f64,
        #[arg(long, default_value_t = 97)]
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RegionArg {
    A,
    B,
}

impl From<RegionArg> for Region {
    fn from(r: RegionArg) -> Self {
        match r {
            RegionArg::A => Region::A,
            RegionArg::B => Region::B,
        }
    }
}

/// Accepts decimals and simple fractions such as `3/4`.
pub fn parse_real(s: &str) -> std::result::Result<f64, String> {
    let s = s.trim();
    let value = match s.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num
                .trim()
                .parse()
                .map_err(|_| format!("bad numerator in '{s}'"))?;
            let den: f64 = den
                .trim()
                .parse()
                .map_err(|_| format!("bad denominator in '{s}'"))?;
            num / den
        }
        None => s.parse().map_err(|_| format!("not a number: '{s}'"))?,
    };
    if !value.is_finite() {
        return Err(format!("not a finite number: '{s}'"));
    }
    Ok(value)
}

pub fn parse_dims(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected dims like 2x3, got '{s}'"))?;
    let a = a
        .trim()
        .parse()
        .map_err(|_| format!("bad dimension in '{s}'"))?;
    let b = b
        .trim()
        .parse()
        .map_err(|_| format!("bad dimension in '{s}'"))?;
    Ok((a, b))
}

fn parse_regime(s: &str) -> std::result::Result<AuditRegime, String> {
    s.parse().map_err(|e: wentropy_core::Error| e.to_string())
}

/// Everything the `qutrit` command prints.
#[derive(Debug, Clone, Serialize)]
pub struct QutritReport {
    pub mutual_information: f64,
    pub weight_condition: WeightCondition,
    pub trace_condition_gap: f64,
    pub general_path: f64,
    pub discrepancy: f64,
}

pub fn qutrit_report(
    p1: f64,
    p2: f64,
    phi1: f64,
    phi2: f64,
    chi1: f64,
    chi2: f64,
) -> Result<QutritReport> {
    let closed = qutrit_mutual_information_closed_form(p1, p2, phi1, phi2, chi1, chi2)?;
    let weight_condition = qutrit_weight_condition(phi1, phi2, chi1, chi2);
    let trace_condition_gap = qutrit_condition_gap(p1, p2, phi1, phi2, chi1, chi2)?;
    let q = QutritDiagonal::from_pair(p1, p2)?;
    let general = weighted_mutual_information(
        &WeightMatrix::relaxed_diagonal(&[phi1, phi2])?,
        &WeightMatrix::relaxed_diagonal(&[chi1, chi2])?,
        &embed_qutrit(&q),
    )?;
    Ok(QutritReport {
        mutual_information: closed,
        weight_condition,
        trace_condition_gap,
        general_path: general,
        discrepancy: (closed - general).abs(),
    })
}

/// Text written to the output plus warnings for standard error.
#[derive(Debug, Default)]
pub struct Output {
    pub text: String,
    pub warnings: Vec<String>,
}

impl From<String> for Output {
    fn from(text: String) -> Self {
        Self {
            text,
            warnings: Vec::new(),
        }
    }
}

fn load_state(path: &Path) -> Result<DensityMatrix> {
    Ok(DensityMatrix::new(read_matrix(path)?)?)
}

fn load_weight(path: &Path) -> Result<WeightMatrix> {
    Ok(WeightMatrix::new(read_matrix(path)?)?)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("report serializes");
    s.push('\n');
    s
}

/// Runs a parsed command and returns its output.
pub fn execute(cli: &Cli) -> Result<Output> {
    let tol = cli.tol;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(wentropy_core::Error::InvalidArgument(format!(
            "--tol must be positive, got {tol}"
        ))
        .into());
    }
    match &cli.command {
        Command::Entropy { state, weight } => {
            let rho = load_state(state)?;
            let phi = load_weight(weight)?;
            Ok(format!("{}\n", human(weighted_entropy(&phi, &rho)?)).into())
        }
        Command::Check {
            state,
            weight_a,
            weight_b,
            dims,
        } => {
            let s = BipartiteState::new(load_state(state)?, dims.0, dims.1)?;
            let report =
                check_subadditivity(&load_weight(weight_a)?, &load_weight(weight_b)?, &s, tol)?;
            Ok(to_json(&report).into())
        }
        Command::Qutrit {
            p1,
            p2,
            phi1,
            phi2,
            chi1,
            chi2,
        } => {
            let r = qutrit_report(*p1, *p2, *phi1, *phi2, *chi1, *chi2)?;
            let verdict = if r.weight_condition.holds {
                "holds"
            } else {
                "fails"
            };
            let text = format!(
                "I = {}\nweight_condition = {} ({verdict})\ntrace_condition_gap = {}\ngeneral_path_I = {}\n",
                human(r.mutual_information),
                human(r.weight_condition.value),
                human(r.trace_condition_gap),
                human(r.general_path),
            );
            let mut out = Output::from(text);
            if r.discrepancy > CROSS_CHECK_TOL {
                out.warnings.push(format!(
                    "warning: closed form and matrix path differ by {:e} (> {CROSS_CHECK_TOL:e})",
                    r.discrepancy
                ));
            }
            Ok(out)
        }
        Command::Sweep { kind } => {
            let grid = match *kind {
                SweepCommand::Prob {
                    n,
                    phi1,
                    phi2,
                    chi1,
                    chi2,
                } => sweep_probabilities(
                    n,
                    QutritWeights {
                        phi1,
                        phi2,
                        chi1,
                        chi2,
                    },
                )?,
                SweepCommand::Weight { region, p1, p2, n } => {
                    sweep_weights(region.into(), p1, p2, n)?
                }
            };
            Ok(grid.to_csv().into())
        }
        Command::Channel {
            state,
            projector,
            weight_a,
            weight_b,
            dims,
        } => {
            let s = BipartiteState::new(load_state(state)?, dims.0, dims.1)?;
            let p = Projector::new(read_matrix(projector)?)?;
            let wa = weight_a
                .as_deref()
                .map(load_weight)
                .transpose()?
                .unwrap_or_else(|| WeightMatrix::identity(dims.0));
            let wb = weight_b
                .as_deref()
                .map(load_weight)
                .transpose()?
                .unwrap_or_else(|| WeightMatrix::identity(dims.1));
            let (out, report) = channel_then_check(&p, &wa, &wb, &s, tol)?;
            #[derive(Serialize)]
            struct ChannelOutput<'a> {
                state: &'a DensityMatrix,
                report: wentropy_core::SubadditivityReport,
            }
            Ok(to_json(&ChannelOutput {
                state: &out,
                report,
            })
            .into())
        }
        Command::Audit { n, dims, regime } => {
            let summary = audit_random_with_tolerance(*n, dims.0, dims.1, cli.seed, *regime, tol)?;
            Ok(to_json(&summary).into())
        }
    }
}

fn emit(cli: &Cli, output: &Output) -> Result<()> {
    for w in &output.warnings {
        eprintln!("{w}");
    }
    match &cli.out {
        Some(path) => std::fs::write(path, &output.text).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(output.text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io {
                    path: "<stdout>".into(),
                    message: e.to_string(),
                })
        }
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let first = e
                .to_string()
                .lines()
                .next()
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ")
                .to_string();
            eprintln!("{}", CliError::Parse(first).one_line());
            return 5;
        }
    };
    match execute(&cli).and_then(|out| emit(&cli, &out)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.one_line());
            e.exit_code()
        }
    }
}
