//! Pure states in a truncated number basis.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{DensityOperator, LEAKAGE_TOL, NORM_SLACK};

/// Which mode of a two-mode state to keep under a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    A,
    B,
}

/// Pure state of one bosonic mode in the basis `{|0>, ..., |cutoff-1>}`.
///
/// The norm may fall below one when truncation has discarded amplitude; the
/// deficit is recorded as `leakage` and never silently renormalized away.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    cutoff: usize,
    amplitudes: DVector<Complex64>,
    leakage: f64,
}

impl FockVector {
    /// Wrap raw amplitudes, recording the norm deficit as leakage.
    pub fn from_amplitudes(amplitudes: DVector<Complex64>) -> Result<Self> {
        let cutoff = amplitudes.len();
        if cutoff == 0 {
            return Err(Error::DimensionMismatch("state needs cutoff >= 1".into()));
        }
        let norm_sq = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>();
        if norm_sq > 1.0 + NORM_SLACK {
            return Err(Error::InvalidParameter(format!(
                "state norm^2 = {norm_sq} exceeds 1 beyond tolerance"
            )));
        }
        Ok(Self {
            cutoff,
            amplitudes,
            leakage: (1.0 - norm_sq).max(0.0),
        })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, n: usize) -> Complex64 {
        self.amplitudes[n]
    }

    /// Norm deficit `1 - ||psi||^2` attributed to truncation.
    pub fn leakage(&self) -> f64 {
        self.leakage
    }

    pub fn norm_sq(&self) -> f64 {
        1.0 - self.leakage
    }

    /// Photon-number probabilities `|amplitude_n|^2`; they sum to
    /// `1 - leakage`.
    pub fn photon_pmf(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Mean photon number of the (possibly sub-normalized) state.
    pub fn mean_photons(&self) -> f64 {
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(n, a)| n as f64 * a.norm_sqr())
            .sum()
    }

    /// Zero-pad to a larger cutoff (exact) or truncate to a smaller one
    /// (adds leakage).
    pub fn resized(&self, cutoff: usize) -> Result<Self> {
        if cutoff == 0 {
            return Err(Error::DimensionMismatch("state needs cutoff >= 1".into()));
        }
        let mut amplitudes = DVector::zeros(cutoff);
        for n in 0..self.cutoff.min(cutoff) {
            amplitudes[n] = self.amplitudes[n];
        }
        Self::from_amplitudes(amplitudes)
    }
}

/// Number eigenstate `|n>` at the given cutoff.
pub fn fock_state(n: usize, cutoff: usize) -> Result<FockVector> {
    if n >= cutoff {
        return Err(Error::DimensionMismatch(format!(
            "|{n}> does not fit in a basis of dimension {cutoff}"
        )));
    }
    let mut amplitudes = DVector::zeros(cutoff);
    amplitudes[n] = Complex64::new(1.0, 0.0);
    FockVector::from_amplitudes(amplitudes)
}

/// Coherent state `D(alpha)|0>` with amplitudes
/// `alpha^k e^{-|alpha|^2/2} / sqrt(k!)`.
///
/// Fails if the cutoff leaves more than [`LEAKAGE_TOL`] of the Poisson
/// weight outside the basis.
pub fn coherent_state(alpha: Complex64, cutoff: usize) -> Result<FockVector> {
    if cutoff == 0 {
        return Err(Error::DimensionMismatch("state needs cutoff >= 1".into()));
    }
    let mut amplitudes = DVector::zeros(cutoff);
    let mut amp = Complex64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0);
    amplitudes[0] = amp;
    for k in 1..cutoff {
        amp *= alpha / (k as f64).sqrt();
        amplitudes[k] = amp;
    }
    let state = FockVector::from_amplitudes(amplitudes)?;
    if state.leakage() > LEAKAGE_TOL {
        return Err(Error::CutoffTooSmall(format!(
            "coherent state |alpha|^2 = {:.3} at cutoff {cutoff} leaks {:.3e}",
            alpha.norm_sqr(),
            state.leakage()
        )));
    }
    Ok(state)
}

/// Hermitian inner product `<x|y>`.
pub fn inner_product(x: &FockVector, y: &FockVector) -> Result<Complex64> {
    if x.cutoff != y.cutoff {
        return Err(Error::DimensionMismatch(format!(
            "inner product between cutoffs {} and {}",
            x.cutoff, y.cutoff
        )));
    }
    Ok(x.amplitudes.dotc(&y.amplitudes))
}

/// Pure state on a tensor product of two truncated modes; `amplitudes[(a, b)]`
/// is the coefficient of `|a> (x) |b>`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeState {
    cutoff_a: usize,
    cutoff_b: usize,
    amplitudes: DMatrix<Complex64>,
    leakage: f64,
}

impl TwoModeState {
    pub fn from_amplitudes(amplitudes: DMatrix<Complex64>) -> Result<Self> {
        let (cutoff_a, cutoff_b) = amplitudes.shape();
        if cutoff_a == 0 || cutoff_b == 0 {
            return Err(Error::DimensionMismatch(
                "two-mode state needs cutoffs >= 1".into(),
            ));
        }
        let norm_sq = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>();
        if norm_sq > 1.0 + NORM_SLACK {
            return Err(Error::InvalidParameter(format!(
                "two-mode norm^2 = {norm_sq} exceeds 1 beyond tolerance"
            )));
        }
        Ok(Self {
            cutoff_a,
            cutoff_b,
            amplitudes,
            leakage: (1.0 - norm_sq).max(0.0),
        })
    }

    pub fn cutoffs(&self) -> (usize, usize) {
        (self.cutoff_a, self.cutoff_b)
    }

    pub fn amplitudes(&self) -> &DMatrix<Complex64> {
        &self.amplitudes
    }

    pub fn leakage(&self) -> f64 {
        self.leakage
    }

    pub fn norm_sq(&self) -> f64 {
        1.0 - self.leakage
    }

    /// Total mean photon number `<n_a + n_b>`.
    pub fn mean_total_photons(&self) -> f64 {
        let mut total = 0.0;
        for a in 0..self.cutoff_a {
            for b in 0..self.cutoff_b {
                total += (a + b) as f64 * self.amplitudes[(a, b)].norm_sqr();
            }
        }
        total
    }

    /// Embed into a square window large enough to hold every total-photon
    /// sector the state can occupy (`side = cutoff_a + cutoff_b - 1`).
    ///
    /// On such a window every occupied sector is complete, so
    /// number-conserving unitaries act exactly.
    pub fn embed_square(&self) -> Result<Self> {
        let side = self.cutoff_a + self.cutoff_b - 1;
        let mut amplitudes = DMatrix::zeros(side, side);
        for a in 0..self.cutoff_a {
            for b in 0..self.cutoff_b {
                amplitudes[(a, b)] = self.amplitudes[(a, b)];
            }
        }
        Self::from_amplitudes(amplitudes)
    }

    /// Reduced density operator of one mode; the other is traced out.
    pub fn partial_trace(&self, keep: Mode) -> Result<DensityOperator> {
        let (dim, other) = match keep {
            Mode::A => (self.cutoff_a, self.cutoff_b),
            Mode::B => (self.cutoff_b, self.cutoff_a),
        };
        let mut rho = DMatrix::zeros(dim, dim);
        for m in 0..dim {
            for mp in 0..=m {
                let mut sum = Complex64::new(0.0, 0.0);
                for e in 0..other {
                    let (x, y) = match keep {
                        Mode::A => (self.amplitudes[(m, e)], self.amplitudes[(mp, e)]),
                        Mode::B => (self.amplitudes[(e, m)], self.amplitudes[(e, mp)]),
                    };
                    sum += x * y.conj();
                }
                rho[(m, mp)] = sum;
                rho[(mp, m)] = sum.conj();
            }
        }
        DensityOperator::from_matrix(rho)
    }
}

/// Tensor product `|a> (x) |b>`.
pub fn tensor(a: &FockVector, b: &FockVector) -> Result<TwoModeState> {
    let mut amplitudes = DMatrix::zeros(a.cutoff(), b.cutoff());
    for i in 0..a.cutoff() {
        for j in 0..b.cutoff() {
            amplitudes[(i, j)] = a.amplitude(i) * b.amplitude(j);
        }
    }
    TwoModeState::from_amplitudes(amplitudes)
}
