//! The detection protocol: count photons at the dark port, declare "no
//! signal" exactly when the count equals the probe photon number.
//!
//! With an ideal detector and `|beta|^2` at a Laguerre root this rule is
//! error-free. The module computes its error probabilities three ways
//! (closed form, truncated-basis numerics, Monte-Carlo sampling), sweeps
//! them over the displacement, and locates operating points.

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{self, laguerre_roots, ErrorReport, Method, SignalParams};
use crate::channels::LossChannel;
use crate::error::{Error, Result};
use crate::fock::{FockVector, LEAKAGE_TOL};
use crate::interferometer::{dark_port_state_asymptotic, InterferometerConfig};

/// Photon-count decision rule: a count different from `n_ref` means the
/// phase shift was there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionRule {
    pub n_ref: usize,
}

/// The two hypotheses of the binary test (also used as the decision values).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    Signal,
    NoSignal,
}

pub fn decide(count: usize, rule: DecisionRule) -> Hypothesis {
    if count == rule.n_ref {
        Hypothesis::NoSignal
    } else {
        Hypothesis::Signal
    }
}

/// One simulated counting trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub true_hypothesis: Hypothesis,
    pub count: usize,
    pub decision: Hypothesis,
    /// Per-trial RNG seed (derived from the run seed and trial index).
    pub seed: u64,
}

/// One point of an error-probability sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub beta_eta_abs: f64,
    pub p_fn: f64,
    pub p_fp: f64,
    pub method: Method,
}

/// Scenario whose detector-side displacement is `|beta_eta|`, routed through
/// squeeze factor `r` and efficiency `eta`: the dark-port displacement is
/// `|beta| = |beta_eta| e^{-r} / sqrt(eta)` (realized as `alpha = 1`,
/// `phi = |beta|`).
pub fn scenario_for_beta_eta(
    beta_eta_abs: f64,
    n: usize,
    eta: f64,
    r: f64,
) -> Result<SignalParams> {
    if !(beta_eta_abs.is_finite() && beta_eta_abs >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "|beta_eta| must be >= 0, got {beta_eta_abs}"
        )));
    }
    if !(eta.is_finite() && eta > 0.0) {
        return Err(Error::InvalidParameter(
            "eta = 0 leaves no signal at the detector".into(),
        ));
    }
    let beta_abs = beta_eta_abs * (-r).exp() / eta.sqrt();
    SignalParams::new(1.0, beta_abs, r, n, eta)
}

fn clamp_probability(p: f64, what: &str) -> Result<f64> {
    if !(-1e-9..=1.0 + 1e-9).contains(&p) {
        return Err(Error::NumericConvergence(format!(
            "{what} = {p} is outside [0, 1] beyond numeric slack"
        )));
    }
    Ok(p.clamp(0.0, 1.0))
}

/// Photon pmfs of the dark-port state at the detector under both
/// hypotheses, with loss applied.
fn detector_pmfs(config: &InterferometerConfig) -> Result<(Vec<f64>, Vec<f64>)> {
    let signal_state = dark_port_state_asymptotic(config)?;
    let mut null_config = config.clone();
    null_config.signal.phi = 0.0;
    let null_state = dark_port_state_asymptotic(&null_config)?;

    let eta = config.signal.eta;
    let pmf_of = |state: &FockVector| -> Result<Vec<f64>> {
        if eta == 1.0 {
            Ok(state.photon_pmf())
        } else {
            let channel = LossChannel::new(eta, config.cutoff_dark)?;
            Ok(channel.apply_to_pure(state)?.photon_pmf())
        }
    };
    Ok((pmf_of(&signal_state)?, pmf_of(&null_state)?))
}

/// Error probabilities of the counting rule computed from the dark-port
/// states (asymptotic route) with the loss channel applied:
/// `P_fn = pmf_signal(n)`, `P_fp = 1 - pmf_no_signal(n)`.
pub fn error_probabilities_numeric(config: &InterferometerConfig) -> Result<ErrorReport> {
    let n = config.signal.n;
    let (pmf_signal, pmf_null) = detector_pmfs(config)?;
    let p_fn = clamp_probability(pmf_signal[n], "numeric P_fn")?;
    let p_fp = clamp_probability(1.0 - pmf_null[n], "numeric P_fp")?;
    ErrorReport::exact(p_fn, p_fp, Method::Numeric)
}

/// Draw a count from a pmf by inverse CDF. Leakage (the weight the pmf is
/// missing) acts as an overflow count at the cutoff, which the rule always
/// reads as "signal"; state preparation keeps it below 1e-10 so it is
/// effectively unreachable.
fn sample_count(pmf: &[f64], u: f64) -> usize {
    let mut acc = 0.0;
    for (count, &p) in pmf.iter().enumerate() {
        acc += p;
        if u < acc {
            return count;
        }
    }
    pmf.len()
}

fn trial_seed(run_seed: u64, index: u64, hypothesis: Hypothesis) -> u64 {
    let tag = match hypothesis {
        Hypothesis::Signal => 0,
        Hypothesis::NoSignal => 1,
    };
    run_seed ^ (2 * index + tag)
}

fn run_trial(pmf: &[f64], rule: DecisionRule, seed: u64, hypothesis: Hypothesis) -> TrialRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    let count = sample_count(pmf, u);
    TrialRecord {
        true_hypothesis: hypothesis,
        count,
        decision: decide(count, rule),
        seed,
    }
}

/// Monte-Carlo estimate of the error probabilities: `trials` counting trials
/// under each hypothesis, sampled from the exact detector pmfs.
///
/// Deterministic for a fixed seed: per-trial seeds derive from the run seed
/// and trial index, so results do not depend on execution order or thread
/// count.
pub fn monte_carlo(config: &InterferometerConfig, trials: u64, seed: u64) -> Result<ErrorReport> {
    let (pmf_signal, pmf_null) = monte_carlo_pmfs(config)?;
    let rule = DecisionRule {
        n_ref: config.signal.n,
    };

    let (misses, alarms) = (0..trials)
        .into_par_iter()
        .map(|i| {
            let miss = run_trial(
                &pmf_signal,
                rule,
                trial_seed(seed, i, Hypothesis::Signal),
                Hypothesis::Signal,
            )
            .decision
                == Hypothesis::NoSignal;
            let alarm = run_trial(
                &pmf_null,
                rule,
                trial_seed(seed, i, Hypothesis::NoSignal),
                Hypothesis::NoSignal,
            )
            .decision
                == Hypothesis::Signal;
            (miss as u64, alarm as u64)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));

    empirical_report(misses, alarms, trials)
}

/// Like [`monte_carlo`] but returning every trial, ordered by trial index
/// with the signal-hypothesis trial first in each pair.
pub fn monte_carlo_records(
    config: &InterferometerConfig,
    trials: u64,
    seed: u64,
) -> Result<(ErrorReport, Vec<TrialRecord>)> {
    let (pmf_signal, pmf_null) = monte_carlo_pmfs(config)?;
    let rule = DecisionRule {
        n_ref: config.signal.n,
    };

    let records: Vec<TrialRecord> = (0..trials)
        .into_par_iter()
        .flat_map_iter(|i| {
            [
                run_trial(
                    &pmf_signal,
                    rule,
                    trial_seed(seed, i, Hypothesis::Signal),
                    Hypothesis::Signal,
                ),
                run_trial(
                    &pmf_null,
                    rule,
                    trial_seed(seed, i, Hypothesis::NoSignal),
                    Hypothesis::NoSignal,
                ),
            ]
        })
        .collect();

    let misses = records
        .iter()
        .filter(|t| t.true_hypothesis == Hypothesis::Signal && t.decision == Hypothesis::NoSignal)
        .count() as u64;
    let alarms = records
        .iter()
        .filter(|t| t.true_hypothesis == Hypothesis::NoSignal && t.decision == Hypothesis::Signal)
        .count() as u64;
    Ok((empirical_report(misses, alarms, trials)?, records))
}

fn monte_carlo_pmfs(config: &InterferometerConfig) -> Result<(Vec<f64>, Vec<f64>)> {
    let (pmf_signal, pmf_null) = detector_pmfs(config)?;
    for pmf in [&pmf_signal, &pmf_null] {
        let leak = 1.0 - pmf.iter().sum::<f64>();
        if leak > LEAKAGE_TOL {
            return Err(Error::CutoffTooSmall(format!(
                "sampling pmf is missing {leak:.3e} of its weight"
            )));
        }
    }
    Ok((pmf_signal, pmf_null))
}

fn empirical_report(misses: u64, alarms: u64, trials: u64) -> Result<ErrorReport> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be >= 1".into()));
    }
    let p_fn = misses as f64 / trials as f64;
    let p_fp = alarms as f64 / trials as f64;
    let std_err = |p: f64| (p * (1.0 - p) / trials as f64).sqrt();
    ErrorReport::empirical(p_fn, p_fp, trials, std_err(p_fn), std_err(p_fp))
}

/// Error probabilities over a grid of detector-side displacements
/// `|beta_eta|`.
///
/// Closed forms cover the vacuum (`n = 0`) and single-photon probes; for
/// `n >= 2` each row runs the numeric pipeline (anti-squeezer on). Rows are
/// independent and computed in parallel, keyed by grid index.
/// `cutoff_override` replaces the automatically validated dark cutoff for
/// truncation experiments.
pub fn sweep(
    beta_eta_grid: &[f64],
    n: usize,
    eta: f64,
    r: f64,
    cutoff_override: Option<usize>,
) -> Result<Vec<SweepRow>> {
    if !(0.0 < eta && eta <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "eta must lie in (0, 1], got {eta}"
        )));
    }
    if beta_eta_grid.iter().any(|b| !(b.is_finite() && *b >= 0.0)) {
        return Err(Error::InvalidParameter("grid values must be >= 0".into()));
    }

    if n <= 1 {
        return beta_eta_grid
            .iter()
            .map(|&b| {
                let beta_eta = Complex64::new(0.0, b);
                let (p_fn, p_fp) = if n == 0 {
                    (analytic::p_fn_vacuum(beta_eta), 0.0)
                } else {
                    (
                        analytic::p_fn_lossy(beta_eta, eta),
                        analytic::p_fp_lossy(eta),
                    )
                };
                Ok(SweepRow {
                    beta_eta_abs: b,
                    p_fn,
                    p_fp,
                    method: Method::Analytic,
                })
            })
            .collect();
    }

    // numeric rows share one cutoff, validated at the widest grid point
    let b_max = beta_eta_grid.iter().cloned().fold(0.0_f64, f64::max);
    let widest = scenario_for_beta_eta(b_max, n, eta, r)?;
    let cutoff = match cutoff_override {
        Some(c) => c,
        None => InterferometerConfig::asymptotic(widest, true)?.cutoff_dark,
    };

    beta_eta_grid
        .par_iter()
        .map(|&b| {
            let signal = scenario_for_beta_eta(b, n, eta, r)?;
            let config = InterferometerConfig::new(signal, cutoff, 0, true)?;
            let report = error_probabilities_numeric(&config)?;
            Ok(SweepRow {
                beta_eta_abs: b,
                p_fn: report.p_false_negative,
                p_fp: report.p_false_positive,
                method: Method::Numeric,
            })
        })
        .collect()
}

/// Operating point of the counting scheme.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizedPoint {
    /// Dark-port displacement modulus `|beta|` before squeeze gain and loss.
    pub beta_abs: f64,
    /// Detector-side displacement modulus `|beta_eta|`.
    pub beta_eta_abs: f64,
    /// Phase-shift magnitude `|phi| = |beta| / alpha`.
    pub phi_abs: f64,
    pub report: ErrorReport,
}

/// Find the displacement minimizing the false-negative probability.
///
/// `n = 1` delegates to the closed form. For `n >= 2` the numeric
/// false-negative probability is minimized around each root of `L_n`
/// (candidate displacements `|beta_eta| = sqrt(root)`) and the best
/// candidate wins, ties going to the smallest displacement.
/// `cutoff_override` replaces the automatically validated dark cutoff.
pub fn optimize_operating_point(
    n: usize,
    eta: f64,
    r: f64,
    alpha: f64,
    cutoff_override: Option<usize>,
) -> Result<OptimizedPoint> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "the vacuum probe has no finite optimal displacement".into(),
        ));
    }
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "eta must lie in (0, 1], got {eta}"
        )));
    }
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha must be > 0, got {alpha}"
        )));
    }

    if n == 1 {
        let opt = analytic::optimal_operating_point(eta, r, alpha)?;
        let beta_abs = opt.beta_eta_abs * (-r).exp() / eta.sqrt();
        let report = ErrorReport::exact(opt.p_fn_min, analytic::p_fp_lossy(eta), Method::Analytic)?;
        return Ok(OptimizedPoint {
            beta_abs,
            beta_eta_abs: opt.beta_eta_abs,
            phi_abs: opt.phi_abs,
            report,
        });
    }

    let roots = laguerre_roots(n, 1e-8)?;
    // one shared cutoff sized for the largest candidate displacement
    let b_reach = roots.last().expect("n >= 1 roots").sqrt() + 0.5;
    let widest = scenario_for_beta_eta(b_reach, n, eta, r)?;
    let cutoff = match cutoff_override {
        Some(c) => c,
        None => InterferometerConfig::asymptotic(widest, true)?.cutoff_dark,
    };

    let p_fn_at = |b: f64| -> Result<f64> {
        let signal = scenario_for_beta_eta(b, n, eta, r)?;
        let config = InterferometerConfig::new(signal, cutoff, 0, true)?;
        Ok(error_probabilities_numeric(&config)?.p_false_negative)
    };

    let mut best: Option<(f64, f64)> = None; // (beta_eta, p_fn)
    for root in &roots {
        let center = root.sqrt();
        let lo = (center - 0.4).max(0.0);
        let hi = center + 0.4;
        let candidate =
            analytic::minimize_scalar(|b| p_fn_at(b).unwrap_or(f64::INFINITY), lo, hi, 1e-2);
        let value = p_fn_at(candidate)?;
        let better = match best {
            None => true,
            // tie toward the smallest displacement
            Some((b_best, v_best)) => {
                value < v_best - 1e-12 || (value <= v_best + 1e-12 && candidate < b_best)
            }
        };
        if better {
            best = Some((candidate, value));
        }
    }
    let (beta_eta_abs, _) = best.expect("at least one Laguerre root");

    let signal = scenario_for_beta_eta(beta_eta_abs, n, eta, r)?;
    let config = InterferometerConfig::new(signal, cutoff, 0, true)?;
    let report = error_probabilities_numeric(&config)?;
    let beta_abs = beta_eta_abs * (-r).exp() / eta.sqrt();
    Ok(OptimizedPoint {
        beta_abs,
        beta_eta_abs,
        phi_abs: beta_abs / alpha,
        report,
    })
}
