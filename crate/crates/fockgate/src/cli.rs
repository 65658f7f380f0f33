//! Command-line front end: sweeps, operating-point optimization, Monte
//! Carlo, and the verification suites.
//!
//! Conventions shared by every subcommand:
//!
//! * defaults may come from a flat `key = value` configuration file
//!   (`--config`); explicit command-line flags always win;
//! * `--cutoff` overrides the automatically validated Fock cutoff;
//! * `--output` writes atomically (temp file + rename); without it reports
//!   go to stdout;
//! * exit status 0 on success, 1 for invalid input, 2 for I/O failures,
//!   3 when a verification suite fails;
//! * `FOCKGATE_THREADS` caps internal parallelism.
//!
//! CSV output carries 12 significant digits per value; JSON reports embed
//! the parameters and tool version so they re-parse losslessly (bit-stable
//! given identical inputs and seed, except for the timestamp field).

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::analytic::Method;
use crate::error::{Error, Result};
use crate::experiment::{
    monte_carlo, monte_carlo_records, optimize_operating_point, scenario_for_beta_eta, sweep,
    Hypothesis, OptimizedPoint, SweepRow, TrialRecord,
};
use crate::interferometer::InterferometerConfig;
use crate::verify::{run_suite, CheckResult, SUITES};

#[derive(Debug, Parser)]
#[command(
    name = "fockgate",
    version,
    about = "Phase-shift detection error probabilities for non-Gaussian interferometry"
)]
pub struct Cli {
    /// Flat key=value defaults file; explicit flags take precedence.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Error probabilities over a grid of detector-side displacements
    /// (plot-ready; reproduces the error-probability curves).
    Sweep(SweepArgs),
    /// Operating point minimizing the false-negative probability.
    Optimize(OptimizeArgs),
    /// Monte-Carlo counting trials against the analytic rates.
    Montecarlo(MontecarloArgs),
    /// Cross-validation suites (closed forms vs matrix numerics).
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Probe photon number.
    #[arg(long)]
    n: Option<usize>,
    /// Detector quantum efficiency.
    #[arg(long)]
    eta: Option<f64>,
    /// Squeeze factor (anti-squeezer enabled).
    #[arg(long)]
    r: Option<f64>,
    /// Smallest |beta_eta| on the grid.
    #[arg(long)]
    beta_min: Option<f64>,
    /// Largest |beta_eta| on the grid.
    #[arg(long)]
    beta_max: Option<f64>,
    /// Number of grid points.
    #[arg(long)]
    steps: Option<usize>,
    /// Sweep the vacuum-probe reference curve instead of |n>.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    vacuum: Option<bool>,
    /// Fock-cutoff override for truncation experiments.
    #[arg(long)]
    cutoff: Option<usize>,
    /// Output format: csv (default) or json.
    #[arg(long)]
    format: Option<String>,
    /// Output path; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    /// Probe photon number.
    #[arg(long)]
    n: Option<usize>,
    /// Detector quantum efficiency.
    #[arg(long)]
    eta: Option<f64>,
    /// Squeeze factor (anti-squeezer enabled).
    #[arg(long)]
    r: Option<f64>,
    /// Bright-port pump amplitude.
    #[arg(long)]
    alpha: Option<f64>,
    /// Fock-cutoff override for truncation experiments.
    #[arg(long)]
    cutoff: Option<usize>,
    /// Output path; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MontecarloArgs {
    /// Probe photon number.
    #[arg(long)]
    n: Option<usize>,
    /// Detector quantum efficiency.
    #[arg(long)]
    eta: Option<f64>,
    /// Squeeze factor (anti-squeezer enabled).
    #[arg(long)]
    r: Option<f64>,
    /// Detector-side displacement |beta_eta|.
    #[arg(long)]
    beta_eta: Option<f64>,
    /// Number of counting trials per hypothesis.
    #[arg(long)]
    trials: Option<u64>,
    /// Run seed; per-trial seeds derive from it deterministically.
    #[arg(long)]
    seed: Option<u64>,
    /// Fock-cutoff override for truncation experiments.
    #[arg(long)]
    cutoff: Option<usize>,
    /// Optional per-trial CSV dump.
    #[arg(long)]
    trial_csv: Option<PathBuf>,
    /// Output path for the JSON report; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite name or "all".
    #[arg(long)]
    suite: Option<String>,
    /// Fock-cutoff override passed to suites that take one.
    #[arg(long)]
    cutoff: Option<usize>,
    /// Optional JSON report path.
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Validated sweep parameters (also the `parameters` block of reports).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepParams {
    pub n: usize,
    pub eta: f64,
    pub r: f64,
    pub beta_min: f64,
    pub beta_max: f64,
    pub steps: usize,
    pub vacuum: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizeParams {
    pub n: usize,
    pub eta: f64,
    pub r: f64,
    pub alpha: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MontecarloParams {
    pub n: usize,
    pub eta: f64,
    pub r: f64,
    pub beta_eta: f64,
    pub trials: u64,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyParams {
    pub suite: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMeta {
    pub tool: String,
    pub version: String,
    pub timestamp: String,
}

impl ReportMeta {
    fn now() -> Self {
        Self {
            tool: "fockgate".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Micros, true),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub meta: ReportMeta,
    pub parameters: SweepParams,
    pub rows: Vec<SweepRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizeReport {
    pub meta: ReportMeta,
    pub parameters: OptimizeParams,
    pub result: OptimizedPoint,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MontecarloReport {
    pub meta: ReportMeta,
    pub parameters: MontecarloParams,
    pub result: MontecarloOutcome,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MontecarloOutcome {
    pub p_fn_empirical: f64,
    pub p_fp_empirical: f64,
    pub std_err_fn: f64,
    pub std_err_fp: f64,
    pub reference_p_fn: f64,
    pub reference_p_fp: f64,
    pub reference_method: Method,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub meta: ReportMeta,
    pub parameters: VerifyParams,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

/// Entry point used by the binary. Returns the process exit status.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            eprintln!("fockgate: {}", first_line(&e.to_string()));
            return 1;
        }
    };
    if let Err(e) = init_thread_pool() {
        eprintln!("fockgate: {e}");
        return 1;
    }
    match execute(cli) {
        Ok(code) => code,
        Err(Error::Io(e)) => {
            eprintln!("fockgate: i/o error: {e}");
            2
        }
        Err(e) => {
            eprintln!("fockgate: {}", first_line(&e.to_string()));
            1
        }
    }
}

fn first_line(s: &str) -> &str {
    s.lines().next().unwrap_or(s).trim_end()
}

fn init_thread_pool() -> Result<()> {
    if let Ok(raw) = std::env::var("FOCKGATE_THREADS") {
        let threads: usize = raw.parse().map_err(|_| {
            Error::InvalidParameter(format!(
                "FOCKGATE_THREADS must be a positive integer, got '{raw}'"
            ))
        })?;
        if threads == 0 {
            return Err(Error::InvalidParameter(
                "FOCKGATE_THREADS must be a positive integer, got '0'".into(),
            ));
        }
        // a second initialization in the same process is fine to ignore
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<i32> {
    let file_defaults = load_config_file(cli.config.as_deref())?;
    match cli.command {
        Command::Sweep(args) => cmd_sweep(args, &file_defaults),
        Command::Optimize(args) => cmd_optimize(args, &file_defaults),
        Command::Montecarlo(args) => cmd_montecarlo(args, &file_defaults),
        Command::Verify(args) => cmd_verify(args, &file_defaults),
    }
}

// ---------------------------------------------------------------------------
// configuration file

const CONFIG_KEYS: &[&str] = &[
    "n",
    "eta",
    "r",
    "alpha",
    "beta-min",
    "beta-max",
    "beta-eta",
    "steps",
    "trials",
    "seed",
    "vacuum",
    "suite",
    "cutoff",
    "format",
    "output",
    "trial-csv",
];

fn load_config_file(path: Option<&Path>) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    let Some(path) = path else {
        return Ok(map);
    };
    let text = std::fs::read_to_string(path)?;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::InvalidParameter(format!(
                "{}:{}: expected 'key = value', got '{line}'",
                path.display(),
                lineno + 1
            )));
        };
        let key = key.trim().replace('_', "-");
        if !CONFIG_KEYS.contains(&key.as_str()) {
            return Err(Error::InvalidParameter(format!(
                "{}:{}: unknown key '{key}'",
                path.display(),
                lineno + 1
            )));
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

/// Command-line value if present, else the config-file value, else none.
fn setting<T: FromStr>(
    flag: Option<T>,
    defaults: &BTreeMap<String, String>,
    key: &str,
) -> Result<Option<T>> {
    if flag.is_some() {
        return Ok(flag);
    }
    match defaults.get(key) {
        None => Ok(None),
        Some(raw) => raw.parse::<T>().map(Some).map_err(|_| {
            Error::InvalidParameter(format!("config value '{raw}' is invalid for '{key}'"))
        }),
    }
}

fn require_range(name: &str, value: f64, lo: f64, hi: f64) -> Result<f64> {
    if !(value >= lo && value <= hi) {
        return Err(Error::InvalidParameter(format!(
            "{name} must lie in [{lo}, {hi}], got {value}"
        )));
    }
    Ok(value)
}

// ---------------------------------------------------------------------------
// sweep

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::InvalidParameter(format!(
                "format must be 'csv' or 'json', got '{other}'"
            ))),
        }
    }
}

fn cmd_sweep(args: SweepArgs, defaults: &BTreeMap<String, String>) -> Result<i32> {
    let vacuum = setting(args.vacuum, defaults, "vacuum")?.unwrap_or(false);
    let params = SweepParams {
        n: if vacuum {
            0
        } else {
            setting(args.n, defaults, "n")?.unwrap_or(1)
        },
        eta: setting(args.eta, defaults, "eta")?.unwrap_or(1.0),
        r: setting(args.r, defaults, "r")?.unwrap_or(0.0),
        beta_min: setting(args.beta_min, defaults, "beta-min")?.unwrap_or(0.0),
        beta_max: setting(args.beta_max, defaults, "beta-max")?.unwrap_or(3.0),
        steps: setting(args.steps, defaults, "steps")?.unwrap_or(301),
        vacuum,
        cutoff: setting(args.cutoff, defaults, "cutoff")?,
    };
    require_range("eta", params.eta, f64::MIN_POSITIVE, 1.0)?;
    if params.steps == 0 {
        return Err(Error::InvalidParameter("steps must be >= 1".into()));
    }
    if !(params.beta_min >= 0.0 && params.beta_max >= params.beta_min) {
        return Err(Error::InvalidParameter(format!(
            "need 0 <= beta-min <= beta-max, got [{}, {}]",
            params.beta_min, params.beta_max
        )));
    }
    let format = match setting(args.format.map(RawString), defaults, "format")? {
        Some(RawString(s)) => s.parse::<OutputFormat>()?,
        None => OutputFormat::Csv,
    };

    let grid: Vec<f64> = (0..params.steps)
        .map(|i| {
            if params.steps == 1 {
                params.beta_min
            } else {
                params.beta_min
                    + (params.beta_max - params.beta_min) * i as f64 / (params.steps - 1) as f64
            }
        })
        .collect();
    let rows = sweep(&grid, params.n, params.eta, params.r, params.cutoff)?;

    let output = setting(args.output, defaults, "output")?;
    let body = match format {
        OutputFormat::Csv => sweep_csv(&rows),
        OutputFormat::Json => {
            let report = SweepReport {
                meta: ReportMeta::now(),
                parameters: params,
                rows,
            };
            serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
        }
    };
    emit(output.as_deref(), &body)?;
    Ok(0)
}

/// String wrapper so `setting` (which wants `FromStr`) can merge string flags.
struct RawString(String);

impl FromStr for RawString {
    type Err = std::convert::Infallible;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(Self(s.to_string()))
    }
}

fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("beta_eta_abs,p_fn,p_fp,method\n");
    for row in rows {
        out.push_str(&format!(
            "{:.11e},{:.11e},{:.11e},{}\n",
            row.beta_eta_abs, row.p_fn, row.p_fp, row.method
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// optimize

fn cmd_optimize(args: OptimizeArgs, defaults: &BTreeMap<String, String>) -> Result<i32> {
    let params = OptimizeParams {
        n: setting(args.n, defaults, "n")?.unwrap_or(1),
        eta: setting(args.eta, defaults, "eta")?.unwrap_or(1.0),
        r: setting(args.r, defaults, "r")?.unwrap_or(0.0),
        alpha: setting(args.alpha, defaults, "alpha")?.unwrap_or(1e4),
        cutoff: setting(args.cutoff, defaults, "cutoff")?,
    };
    let result =
        optimize_operating_point(params.n, params.eta, params.r, params.alpha, params.cutoff)?;
    let report = OptimizeReport {
        meta: ReportMeta::now(),
        parameters: params,
        result,
    };
    let body = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    emit(setting(args.output, defaults, "output")?.as_deref(), &body)?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// montecarlo

fn cmd_montecarlo(args: MontecarloArgs, defaults: &BTreeMap<String, String>) -> Result<i32> {
    let params = MontecarloParams {
        n: setting(args.n, defaults, "n")?.unwrap_or(1),
        eta: setting(args.eta, defaults, "eta")?.unwrap_or(1.0),
        r: setting(args.r, defaults, "r")?.unwrap_or(0.0),
        beta_eta: setting(args.beta_eta, defaults, "beta-eta")?.unwrap_or(1.0),
        trials: setting(args.trials, defaults, "trials")?.unwrap_or(100_000),
        seed: setting(args.seed, defaults, "seed")?.unwrap_or(42),
        cutoff: setting(args.cutoff, defaults, "cutoff")?,
    };
    if params.trials == 0 {
        return Err(Error::InvalidParameter("trials must be >= 1".into()));
    }
    require_range("eta", params.eta, f64::MIN_POSITIVE, 1.0)?;

    let signal = scenario_for_beta_eta(params.beta_eta, params.n, params.eta, params.r)?;
    let config = match params.cutoff {
        Some(c) => InterferometerConfig::new(signal, c, 0, true)?,
        None => InterferometerConfig::asymptotic(signal, true)?,
    };
    // per-trial records are only materialized when they are being dumped
    let trial_csv = setting(args.trial_csv, defaults, "trial-csv")?;
    let empirical = match &trial_csv {
        Some(path) => {
            let (empirical, records) = monte_carlo_records(&config, params.trials, params.seed)?;
            emit(Some(path), &trials_csv(&records))?;
            empirical
        }
        None => monte_carlo(&config, params.trials, params.seed)?,
    };

    // reference rates along the closed-form route when it exists
    let (reference_p_fn, reference_p_fp, reference_method) = if params.n <= 1 {
        let beta_eta = num_complex::Complex64::new(0.0, params.beta_eta);
        if params.n == 0 {
            (
                crate::analytic::p_fn_vacuum(beta_eta),
                0.0,
                Method::Analytic,
            )
        } else {
            (
                crate::analytic::p_fn_lossy(beta_eta, params.eta),
                crate::analytic::p_fp_lossy(params.eta),
                Method::Analytic,
            )
        }
    } else {
        let numeric = crate::experiment::error_probabilities_numeric(&config)?;
        (
            numeric.p_false_negative,
            numeric.p_false_positive,
            Method::Numeric,
        )
    };

    let result = MontecarloOutcome {
        p_fn_empirical: empirical.p_false_negative,
        p_fp_empirical: empirical.p_false_positive,
        std_err_fn: empirical.std_err_fn.expect("empirical report"),
        std_err_fp: empirical.std_err_fp.expect("empirical report"),
        reference_p_fn,
        reference_p_fp,
        reference_method,
    };
    let report = MontecarloReport {
        meta: ReportMeta::now(),
        parameters: params,
        result,
    };
    let body = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    emit(setting(args.output, defaults, "output")?.as_deref(), &body)?;
    Ok(0)
}

fn trials_csv(records: &[TrialRecord]) -> String {
    let tag = |h: Hypothesis| match h {
        Hypothesis::Signal => "signal",
        Hypothesis::NoSignal => "no_signal",
    };
    let mut out = String::from("trial,true_hypothesis,count,decision,seed\n");
    for (i, t) in records.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            i / 2,
            tag(t.true_hypothesis),
            t.count,
            tag(t.decision),
            t.seed
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// verify

fn cmd_verify(args: VerifyArgs, defaults: &BTreeMap<String, String>) -> Result<i32> {
    let params = VerifyParams {
        suite: setting(args.suite.map(RawString), defaults, "suite")?
            .map(|s| s.0)
            .unwrap_or_else(|| "all".into()),
        cutoff: setting(args.cutoff, defaults, "cutoff")?,
    };
    if params.suite != "all" && !SUITES.contains(&params.suite.as_str()) {
        return Err(Error::InvalidParameter(format!(
            "unknown suite '{}'; expected one of {SUITES:?} or 'all'",
            params.suite
        )));
    }

    let checks = run_suite(&params.suite, params.cutoff)?;
    for check in &checks {
        let status = if check.pass { "PASS" } else { "FAIL" };
        println!(
            "{status} {}: measured {:.3e} (tolerance {:.3e})",
            check.name, check.measured, check.tolerance
        );
    }
    let passed = checks.iter().all(|c| c.pass);
    println!(
        "{}: {}/{} checks passed",
        if passed { "ok" } else { "FAILED" },
        checks.iter().filter(|c| c.pass).count(),
        checks.len()
    );

    if let Some(path) = setting(args.output, defaults, "output")? {
        let report = VerifyReport {
            meta: ReportMeta::now(),
            parameters: params,
            checks,
            passed,
        };
        let body = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
        emit(Some(&path), &body)?;
    }
    Ok(if passed { 0 } else { 3 })
}

// ---------------------------------------------------------------------------
// output

/// Write to stdout, or atomically (temp file + rename) to a path.
fn emit(path: Option<&Path>, body: &str) -> Result<()> {
    match path {
        None => {
            print!("{body}");
            Ok(())
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(p) if !p.as_os_str().is_empty() => p,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(body.as_bytes())?;
            tmp.flush()?;
            tmp.persist(path).map_err(|e| Error::Io(e.error))?;
            Ok(())
        }
    }
}
