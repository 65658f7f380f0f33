//! Cross-route verification suites.
//!
//! Every nontrivial construction in this crate has an independent
//! counterpart, and these suites measure their agreement: eigenvalue roots
//! against bisection, analytic displacement matrices against the matrix
//! exponential, the Kraus channel against its beamsplitter dilation, the
//! closed-form lossy mixture against the dilation, squeeze conjugation
//! against rescaled displacement, and the exact interferometer against the
//! asymptotic model. The `verify` subcommand runs them as a release gate.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analytic::{laguerre, laguerre_roots, p_fn_fock};
use crate::channels::{apply_loss_dilation, lossy_mixture_analytic, LossChannel};
use crate::error::{Error, Result};
use crate::fock::{
    displaced_squeezed_fock, displacement_operator, displacement_operator_expm, recommended_cutoff,
    squeeze_operator, trace_distance, DensityOperator,
};
use crate::interferometer::asymptotic_convergence_check;

/// Outcome of one verification check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckResult {
    fn at_most(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        let pass = measured.is_finite() && measured <= tolerance;
        Self {
            name: name.into(),
            measured,
            tolerance,
            pass,
        }
    }

    /// For fidelity-style checks: `measured` is a deficit from one.
    fn deficit(name: impl Into<String>, fidelity: f64, tolerance: f64) -> Self {
        Self::at_most(name, 1.0 - fidelity, tolerance)
    }
}

pub const SUITES: &[&str] = &[
    "laguerre",
    "displacement",
    "squeeze",
    "kraus",
    "rho-eta",
    "convergence",
];

fn im(b: f64) -> Complex64 {
    Complex64::new(0.0, b)
}

/// Sign-change bisection roots of `L_n`; the deliberately naive oracle for
/// the Jacobi-matrix eigenvalue route.
pub fn bisection_laguerre_roots(n: usize) -> Vec<f64> {
    let upper = (4 * n + 2) as f64;
    let samples = 4000 * n;
    let mut roots = Vec::with_capacity(n);
    let value = |x: f64| laguerre(n, 0, x);
    let mut prev_x = 1e-12;
    let mut prev_f = value(prev_x);
    for i in 1..=samples {
        let x = upper * i as f64 / samples as f64;
        let f = value(x);
        if prev_f == 0.0 {
            roots.push(prev_x);
        } else if prev_f * f < 0.0 {
            let (mut lo, mut hi) = (prev_x, x);
            let f_lo = prev_f;
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if value(mid) * f_lo.signum() > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        prev_x = x;
        prev_f = f;
    }
    roots
}

pub fn suite_laguerre() -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();
    for n in [1, 2, 3, 5, 8] {
        let eigen = laguerre_roots(n, 1e-10)?;
        let oracle = bisection_laguerre_roots(n);
        let dev = if oracle.len() != n {
            f64::INFINITY
        } else {
            eigen
                .iter()
                .zip(oracle.iter())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        };
        checks.push(CheckResult::at_most(
            format!("laguerre-roots-vs-bisection n={n}"),
            dev,
            1e-9,
        ));
    }
    // interlacing of consecutive orders
    let mut worst_violation: f64 = 0.0;
    for n in 1..=9 {
        let inner = laguerre_roots(n, 1e-8)?;
        let outer = laguerre_roots(n + 1, 1e-8)?;
        for i in 0..n {
            worst_violation = worst_violation
                .max(outer[i] - inner[i])
                .max(inner[i] - outer[i + 1]);
        }
    }
    checks.push(CheckResult::at_most(
        "laguerre-roots-interlacing n<=10",
        worst_violation.max(0.0),
        0.0,
    ));
    Ok(checks)
}

pub fn suite_displacement(cutoff_override: Option<usize>) -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();

    // analytic construction vs matrix-exponential oracle on the interior
    for &b in &[0.5, 1.0, 1.5, 3.0] {
        let cutoff =
            cutoff_override.unwrap_or_else(|| (2 * recommended_cutoff(im(b), 0.0, 0)).max(64));
        let analytic = displacement_operator(im(b), cutoff)?;
        let oracle = displacement_operator_expm(im(b), cutoff)?;
        let k = analytic.interior_dim();
        let mut dev: f64 = 0.0;
        for i in 0..k {
            for j in 0..k {
                dev = dev.max((analytic.matrix()[(i, j)] - oracle.matrix()[(i, j)]).norm());
            }
        }
        checks.push(CheckResult::at_most(
            format!("displacement-analytic-vs-expm |beta|={b} cutoff={cutoff} interior={k}"),
            dev,
            1e-8,
        ));
        checks.push(CheckResult::at_most(
            format!("displacement-interior-unitarity |beta|={b}"),
            analytic.max_unitarity_deviation(),
            1e-8,
        ));
    }

    // composition identity D(b1) D(b2) = phase * D(b1 + b2)
    let (b1, b2) = (Complex64::new(0.4, 0.3), Complex64::new(-0.1, 0.6));
    let cutoff = cutoff_override.unwrap_or(64);
    let d1 = displacement_operator(b1, cutoff)?;
    let d2 = displacement_operator(b2, cutoff)?;
    let d12 = displacement_operator(b1 + b2, cutoff)?;
    let phase = Complex64::from_polar(1.0, (b1 * b2.conj()).im);
    let product = d1.matrix() * d2.matrix();
    let k = d12
        .interior_dim()
        .min(d1.interior_dim())
        .min(d2.interior_dim());
    let mut dev: f64 = 0.0;
    for i in 0..k {
        for j in 0..k {
            dev = dev.max((product[(i, j)] - phase * d12.matrix()[(i, j)]).norm());
        }
    }
    checks.push(CheckResult::at_most(
        "displacement-composition-identity",
        dev,
        1e-8,
    ));

    // displaced-Fock pmf against the closed-form overlap, n <= 10,
    // |beta|^2 <= 10
    let mut dev: f64 = 0.0;
    for n in 0..=10 {
        for k in 0..=20 {
            let x = 0.5 * k as f64;
            let b = x.sqrt();
            let cutoff = recommended_cutoff(im(b), 0.0, n) + 16;
            let psi = displaced_squeezed_fock(im(b), 0.0, n, cutoff)?;
            dev = dev.max((psi.photon_pmf()[n] - p_fn_fock(n, im(b))).abs());
        }
    }
    checks.push(CheckResult::at_most(
        "displaced-fock-pmf-vs-analytic n<=10 |beta|^2<=10",
        dev,
        1e-8,
    ));
    Ok(checks)
}

pub fn suite_squeeze(cutoff_override: Option<usize>) -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();
    let cutoff = cutoff_override.unwrap_or(128);

    // inverse pair
    let s = squeeze_operator(0.5, cutoff)?;
    let s_inv = squeeze_operator(-0.5, cutoff)?;
    let product = s_inv.matrix() * s.matrix();
    let guard = cutoff.saturating_sub(8);
    let mut dev: f64 = 0.0;
    for i in 0..guard {
        for j in 0..guard {
            let expected = if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            dev = dev.max((product[(i, j)] - expected).norm());
        }
    }
    checks.push(CheckResult::at_most(
        "squeeze-inverse-pair r=0.5",
        dev,
        1e-8,
    ));

    // conjugation identity at the state level:
    // S(-r) D(beta) S(r) |n> = D(beta e^r) |n> for imaginary beta
    for &r in &[0.25_f64, 0.5, 1.0] {
        for &gain in &[0.5, 1.0, 1.5] {
            let beta = im(gain * (-r).exp());
            let pipeline = {
                let squeezed =
                    squeeze_operator(r, cutoff)?.apply(&crate::fock::fock_state(1, cutoff)?)?;
                let displaced = displacement_operator(beta, cutoff)?.apply(&squeezed)?;
                squeeze_operator(-r, cutoff)?.apply(&displaced)?
            };
            let target = displaced_squeezed_fock(im(gain), 0.0, 1, cutoff)?;
            let fidelity = crate::fock::inner_product(&target, &pipeline)?.norm_sqr();
            checks.push(CheckResult::deficit(
                format!("squeeze-conjugation r={r} |beta e^r|={gain}"),
                fidelity,
                1e-8,
            ));
        }
    }
    Ok(checks)
}

pub fn suite_kraus(cutoff_override: Option<usize>) -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();
    let cutoff = cutoff_override.unwrap_or(28);

    let mut completeness: f64 = 0.0;
    for &eta in &[0.5, 0.9, 0.95, 1.0] {
        completeness = completeness.max(LossChannel::new(eta, cutoff)?.completeness_deviation());
    }
    checks.push(CheckResult::at_most(
        "kraus-completeness",
        completeness,
        1e-10,
    ));

    let mut dev: f64 = 0.0;
    for n in 0..=3 {
        for &b in &[0.5, 1.0, 1.5] {
            for &eta in &[0.5, 0.9, 0.95, 1.0] {
                let psi = displaced_squeezed_fock(im(b), 0.0, n, cutoff)?;
                let rho = DensityOperator::from_pure(&psi);
                let via_kraus = LossChannel::new(eta, cutoff)?.apply(&rho)?;
                let via_dilation = apply_loss_dilation(&rho, eta)?;
                dev = dev.max(trace_distance(&via_kraus, &via_dilation)?);
            }
        }
    }
    checks.push(CheckResult::at_most(
        "kraus-vs-dilation displaced-fock grid",
        dev,
        1e-8,
    ));

    // composition loss(eta1) . loss(eta2) = loss(eta1 eta2)
    let psi = displaced_squeezed_fock(im(1.2), 0.0, 2, cutoff)?;
    let rho = DensityOperator::from_pure(&psi);
    let chained =
        LossChannel::new(0.8, cutoff)?.apply(&LossChannel::new(0.9, cutoff)?.apply(&rho)?)?;
    let direct = LossChannel::new(0.72, cutoff)?.apply(&rho)?;
    checks.push(CheckResult::at_most(
        "loss-composition eta1*eta2",
        trace_distance(&chained, &direct)?,
        1e-8,
    ));
    Ok(checks)
}

pub fn suite_rho_eta(cutoff_override: Option<usize>) -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();
    for &gain in &[0.5, 1.0, 1.5] {
        for &eta in &[0.5, 0.9, 0.95] {
            let cutoff = cutoff_override
                .unwrap_or_else(|| recommended_cutoff(im(gain), 0.0, 1) + 8)
                .min(96);
            let psi = displaced_squeezed_fock(im(gain), 0.0, 1, cutoff)?;
            let lossy = apply_loss_dilation(&DensityOperator::from_pure(&psi), eta)?;
            let mixture = lossy_mixture_analytic(im(gain), 0.0, eta, cutoff)?;
            checks.push(CheckResult::at_most(
                format!("rho-eta-dilation-vs-mixture |beta e^r|={gain} eta={eta}"),
                trace_distance(&lossy, &mixture)?,
                1e-8,
            ));
        }
    }
    Ok(checks)
}

/// Exact-vs-asymptotic fidelity thresholds, frozen from this crate's own
/// oracle run (the limit statement only promises approach to one).
///
/// Measured at `alpha phi = 1`, `n = 1`, `r = 0`: fidelity 0.766635 at
/// `alpha = 2`, 0.938494 at 4, 0.972417 at 6; the deficit scales as
/// `1/alpha^2` (residual bright-port entanglement of order `sin^2 phi`).
pub const CONVERGENCE_ALPHAS: [f64; 3] = [2.0, 4.0, 6.0];
pub const CONVERGENCE_MIN_FIDELITY_AT_4: f64 = 0.938;
pub const CONVERGENCE_MIN_FIDELITY_AT_6: f64 = 0.972;

pub fn suite_convergence() -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();
    let fidelities = asymptotic_convergence_check(&CONVERGENCE_ALPHAS, 1.0, 1, 0.0)?;
    let monotone = fidelities.windows(2).all(|w| w[1] >= w[0]);
    checks.push(CheckResult::at_most(
        format!("convergence-monotone fidelities={fidelities:?}"),
        if monotone { 0.0 } else { 1.0 },
        0.0,
    ));
    checks.push(CheckResult::deficit(
        format!("convergence-at-4 fidelity={:.6}", fidelities[1]),
        fidelities[1],
        1.0 - CONVERGENCE_MIN_FIDELITY_AT_4,
    ));
    checks.push(CheckResult::deficit(
        format!("convergence-final alpha=6 fidelity={:.6}", fidelities[2]),
        fidelities[2],
        1.0 - CONVERGENCE_MIN_FIDELITY_AT_6,
    ));

    // phi = 0 passes through exactly
    let trivial = asymptotic_convergence_check(&[2.0, 4.0], 0.0, 1, 0.0)?;
    let dev = trivial.iter().map(|f| 1.0 - f).fold(0.0, f64::max);
    checks.push(CheckResult::at_most(
        "convergence-zero-phase-identity",
        dev,
        1e-8,
    ));
    Ok(checks)
}

/// Run one suite by name (or `all`).
pub fn run_suite(name: &str, cutoff_override: Option<usize>) -> Result<Vec<CheckResult>> {
    match name {
        "laguerre" => suite_laguerre(),
        "displacement" => suite_displacement(cutoff_override),
        "squeeze" => suite_squeeze(cutoff_override),
        "kraus" => suite_kraus(cutoff_override),
        "rho-eta" => suite_rho_eta(cutoff_override),
        "convergence" => suite_convergence(),
        "all" => {
            let mut checks = Vec::new();
            for suite in SUITES {
                checks.extend(run_suite(suite, cutoff_override)?);
            }
            Ok(checks)
        }
        other => Err(Error::InvalidParameter(format!(
            "unknown suite '{other}'; expected one of {SUITES:?} or 'all'"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass() {
        let checks = run_suite("all", None).unwrap();
        let failed: Vec<_> = checks.iter().filter(|c| !c.pass).collect();
        assert!(failed.is_empty(), "failed checks: {failed:#?}");
        assert!(checks.len() > 20);
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run_suite("nonsense", None).is_err());
    }

    #[test]
    fn bisection_oracle_counts_roots() {
        for n in 1..=8 {
            assert_eq!(bisection_laguerre_roots(n).len(), n, "n = {n}");
        }
    }
}
