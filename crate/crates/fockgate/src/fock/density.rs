//! Mixed single-mode states and metrics between them.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::linalg::hermitian_eigen;
use crate::fock::state::{FockVector, Mode};
use crate::fock::NORM_SLACK;

/// Elementwise Hermiticity tolerance for density matrices.
const HERMITICITY_TOL: f64 = 1e-10;

/// Mixed state of one truncated mode: Hermitian, positive, trace at most one
/// (the deficit is truncation leakage, tracked explicitly).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    cutoff: usize,
    matrix: DMatrix<Complex64>,
    leakage: f64,
}

impl DensityOperator {
    /// Validate Hermiticity and trace, recording any trace deficit as
    /// leakage. Positivity is not checked here (it costs an
    /// eigendecomposition); use [`DensityOperator::min_eigenvalue`] where the
    /// claim matters.
    pub fn from_matrix(matrix: DMatrix<Complex64>) -> Result<Self> {
        let cutoff = matrix.nrows();
        if cutoff == 0 || !matrix.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "density matrix must be square and non-empty, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        for i in 0..cutoff {
            for j in 0..=i {
                let dev = (matrix[(i, j)] - matrix[(j, i)].conj()).norm();
                if dev > HERMITICITY_TOL {
                    return Err(Error::InvalidParameter(format!(
                        "density matrix not Hermitian at ({i}, {j}): deviation {dev:.3e}"
                    )));
                }
            }
        }
        let trace: f64 = (0..cutoff).map(|i| matrix[(i, i)].re).sum();
        if trace > 1.0 + NORM_SLACK.max(1e-10) {
            return Err(Error::InvalidParameter(format!(
                "density matrix trace {trace} exceeds 1 beyond tolerance"
            )));
        }
        Ok(Self {
            cutoff,
            matrix,
            leakage: (1.0 - trace).max(0.0),
        })
    }

    /// Projector `|psi><psi|` of a pure state.
    pub fn from_pure(psi: &FockVector) -> Self {
        let d = psi.cutoff();
        let mut matrix = DMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                matrix[(i, j)] = psi.amplitude(i) * psi.amplitude(j).conj();
            }
        }
        Self {
            cutoff: d,
            matrix,
            leakage: (1.0 - psi.norm_sq() * psi.norm_sq()).clamp(0.0, 1.0),
        }
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn leakage(&self) -> f64 {
        self.leakage
    }

    pub fn trace(&self) -> f64 {
        (0..self.cutoff).map(|i| self.matrix[(i, i)].re).sum()
    }

    /// Diagonal of the density matrix: photon-count probabilities summing to
    /// `1 - leakage`.
    pub fn photon_pmf(&self) -> Vec<f64> {
        (0..self.cutoff).map(|i| self.matrix[(i, i)].re).collect()
    }

    pub fn mean_photons(&self) -> f64 {
        (0..self.cutoff)
            .map(|i| i as f64 * self.matrix[(i, i)].re)
            .sum()
    }

    /// Overlap `<psi|rho|psi>` (fidelity against a pure reference).
    pub fn fidelity_with_pure(&self, psi: &FockVector) -> Result<f64> {
        if psi.cutoff() != self.cutoff {
            return Err(Error::DimensionMismatch(format!(
                "fidelity between cutoffs {} and {}",
                psi.cutoff(),
                self.cutoff
            )));
        }
        let v = psi.amplitudes();
        let rho_v = &self.matrix * v;
        Ok(v.dotc(&rho_v).re)
    }

    /// Smallest eigenvalue; a valid state has it above `-1e-9`.
    pub fn min_eigenvalue(&self) -> f64 {
        let eigen = hermitian_eigen(&self.matrix);
        eigen.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Spectral decomposition into (weight, pure component) pairs, skipping
    /// eigenvalues below the floor.
    pub fn spectral_components(&self, floor: f64) -> Result<Vec<(f64, FockVector)>> {
        let eigen = hermitian_eigen(&self.matrix);
        let mut parts = Vec::new();
        for (k, &lambda) in eigen.values.iter().enumerate() {
            if lambda < -1e-9 {
                return Err(Error::InvalidParameter(format!(
                    "density matrix has eigenvalue {lambda:.3e} below positivity tolerance"
                )));
            }
            if lambda > floor {
                let column = eigen.vectors.column(k).into_owned();
                parts.push((lambda, FockVector::from_amplitudes(column)?));
            }
        }
        Ok(parts)
    }

    /// Restrict to a smaller cutoff (weight above it becomes leakage) or
    /// zero-pad to a larger one.
    pub fn resized(&self, cutoff: usize) -> Result<Self> {
        if cutoff == 0 {
            return Err(Error::DimensionMismatch("density needs cutoff >= 1".into()));
        }
        let keep = self.cutoff.min(cutoff);
        let mut matrix = DMatrix::zeros(cutoff, cutoff);
        matrix
            .view_mut((0, 0), (keep, keep))
            .copy_from(&self.matrix.view((0, 0), (keep, keep)));
        Self::from_matrix(matrix)
    }
}

/// Trace distance `0.5 * || rho - sigma ||_1` between two states.
pub fn trace_distance(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    if rho.cutoff() != sigma.cutoff() {
        return Err(Error::DimensionMismatch(format!(
            "trace distance between cutoffs {} and {}",
            rho.cutoff(),
            sigma.cutoff()
        )));
    }
    let diff = rho.matrix() - sigma.matrix();
    let eigen = hermitian_eigen(&diff);
    Ok(0.5 * eigen.values.iter().map(|l| l.abs()).sum::<f64>())
}

/// Partial trace of a two-mode density matrix indexed as
/// `(a * cutoff_b + b)`.
pub fn partial_trace_two_mode(
    matrix: &DMatrix<Complex64>,
    cutoff_a: usize,
    cutoff_b: usize,
    keep: Mode,
) -> Result<DensityOperator> {
    if matrix.nrows() != cutoff_a * cutoff_b || !matrix.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "two-mode density of shape {}x{} does not match cutoffs {cutoff_a}x{cutoff_b}",
            matrix.nrows(),
            matrix.ncols()
        )));
    }
    let dim = match keep {
        Mode::A => cutoff_a,
        Mode::B => cutoff_b,
    };
    let other = match keep {
        Mode::A => cutoff_b,
        Mode::B => cutoff_a,
    };
    let idx = |a: usize, b: usize| a * cutoff_b + b;
    let mut rho = DMatrix::zeros(dim, dim);
    for m in 0..dim {
        for mp in 0..dim {
            let mut sum = Complex64::new(0.0, 0.0);
            for e in 0..other {
                let (row, col) = match keep {
                    Mode::A => (idx(m, e), idx(mp, e)),
                    Mode::B => (idx(e, m), idx(e, mp)),
                };
                sum += matrix[(row, col)];
            }
            rho[(m, mp)] = sum;
        }
    }
    DensityOperator::from_matrix(rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::state::{fock_state, tensor};
    use approx::assert_abs_diff_eq;

    #[test]
    fn pure_projector_has_unit_trace() {
        let psi = fock_state(2, 5).unwrap();
        let rho = DensityOperator::from_pure(&psi);
        assert_abs_diff_eq!(rho.trace(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(rho.photon_pmf()[2], 1.0, epsilon = 1e-14);
        assert!(rho.min_eigenvalue() > -1e-12);
    }

    #[test]
    fn from_matrix_rejects_non_hermitian() {
        let mut m = DMatrix::zeros(2, 2);
        m[(0, 0)] = Complex64::new(0.5, 0.0);
        m[(1, 1)] = Complex64::new(0.5, 0.0);
        m[(0, 1)] = Complex64::new(0.3, 0.0);
        m[(1, 0)] = Complex64::new(0.1, 0.0);
        assert!(DensityOperator::from_matrix(m).is_err());
    }

    #[test]
    fn trace_distance_of_orthogonal_pure_states_is_one() {
        let a = DensityOperator::from_pure(&fock_state(0, 3).unwrap());
        let b = DensityOperator::from_pure(&fock_state(1, 3).unwrap());
        assert_abs_diff_eq!(trace_distance(&a, &b).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(trace_distance(&a, &a).unwrap(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn two_mode_partial_trace_matches_pure_version() {
        let a = fock_state(1, 3).unwrap();
        let b = fock_state(0, 2).unwrap();
        let joint = tensor(&a, &b).unwrap();
        let rho_pure = joint.partial_trace(Mode::A).unwrap();

        // same state as an explicit two-mode density matrix
        let d = 3 * 2;
        let mut big = DMatrix::zeros(d, d);
        for ai in 0..3 {
            for bi in 0..2 {
                for aj in 0..3 {
                    for bj in 0..2 {
                        big[(ai * 2 + bi, aj * 2 + bj)] =
                            joint.amplitudes()[(ai, bi)] * joint.amplitudes()[(aj, bj)].conj();
                    }
                }
            }
        }
        let rho_mixed = partial_trace_two_mode(&big, 3, 2, Mode::A).unwrap();
        assert!(trace_distance(&rho_pure, &rho_mixed).unwrap() < 1e-13);
    }

    #[test]
    fn spectral_components_reconstruct() {
        // mixture of |0> and |1>
        let mut m = DMatrix::zeros(3, 3);
        m[(0, 0)] = Complex64::new(0.25, 0.0);
        m[(1, 1)] = Complex64::new(0.75, 0.0);
        let rho = DensityOperator::from_matrix(m).unwrap();
        let parts = rho.spectral_components(1e-12).unwrap();
        assert_eq!(parts.len(), 2);
        let total: f64 = parts.iter().map(|(w, _)| w).sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-12);
    }
}
