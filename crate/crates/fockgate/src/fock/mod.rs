//! Truncated Fock-basis linear algebra: states, ladder/displacement/squeeze
//! operators, tensor products, partial traces, and cutoff management.
//!
//! Truncation discipline: states are never renormalized. Every state carries
//! its `leakage` (the norm or trace deficit caused by the finite basis), and
//! constructors fail loudly when leakage exceeds tolerance. Probabilities
//! read from these states are therefore trustworthy or absent, never
//! silently rescaled.

mod density;
mod linalg;
mod operator;
mod state;

pub use density::{partial_trace_two_mode, trace_distance, DensityOperator};
pub use operator::{
    annihilation_matrix, creation_matrix, displacement_generator, displacement_operator,
    displacement_operator_expm, squeeze_operator, OperatorMatrix,
};
pub use state::{
    coherent_state, fock_state, inner_product, tensor, FockVector, Mode, TwoModeState,
};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Maximum leakage tolerated in prepared states.
pub const LEAKAGE_TOL: f64 = 1e-10;

/// Slack allowed on norms above one (floating-point accumulation only).
pub const NORM_SLACK: f64 = 1e-12;

/// Hard cap on single-mode basis dimension; everything in this crate is a
/// desk-scale dense-matrix problem.
pub const CUTOFF_CAP: usize = 512;

/// Column-norm deficit below which a truncated unitary's column counts as
/// interior (faithful to the infinite-dimensional operator).
pub const INTERIOR_COL_TOL: f64 = 1e-9;

/// Basis dimension recommended for representing `D(beta) S(r) |n>`:
/// `ceil(|beta e^r|^2 + 6 |beta e^r| + n e^{2r} + 10)`.
///
/// This is a starting point, not a guarantee; squeezed states have long
/// number-basis tails (the pair-excitation amplitude decays only like
/// `tanh(r)` per photon), so preparation routines validate the resulting
/// leakage and escalate the cutoff when needed.
pub fn recommended_cutoff(beta: Complex64, r: f64, n: usize) -> usize {
    let b_eff = beta.norm() * r.exp();
    let estimate = b_eff * b_eff + 6.0 * b_eff + n as f64 * (2.0 * r).exp() + 10.0;
    (estimate.ceil() as usize).max(n + 1)
}

/// Build `D(beta) S(r) |n>` at a fixed cutoff. Identity factors are skipped
/// exactly (`D(0)`, `S(0)`).
pub fn displaced_squeezed_fock(
    beta: Complex64,
    r: f64,
    n: usize,
    cutoff: usize,
) -> Result<FockVector> {
    let mut psi = fock_state(n, cutoff)?;
    if r != 0.0 {
        psi = squeeze_operator(r, cutoff)?.apply(&psi)?;
    }
    if beta != Complex64::new(0.0, 0.0) {
        psi = displacement_operator(beta, cutoff)?.apply(&psi)?;
    }
    Ok(psi)
}

/// Build `D(beta) S(r) |n>` with leakage below `tol`, escalating the cutoff
/// by 1.5x from [`recommended_cutoff`] up to [`CUTOFF_CAP`].
pub fn displaced_squeezed_fock_auto(
    beta: Complex64,
    r: f64,
    n: usize,
    tol: f64,
) -> Result<(FockVector, usize)> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tol must be > 0, got {tol}"
        )));
    }
    let mut cutoff = recommended_cutoff(beta, r, n);
    loop {
        if cutoff > CUTOFF_CAP {
            return Err(Error::CutoffTooSmall(format!(
                "state D({beta}) S({r}) |{n}> still leaks above {tol:.1e} at the cutoff cap {CUTOFF_CAP}"
            )));
        }
        let psi = displaced_squeezed_fock(beta, r, n, cutoff)?;
        if psi.leakage() < tol {
            return Ok((psi, cutoff));
        }
        cutoff = (cutoff * 3).div_ceil(2);
    }
}
