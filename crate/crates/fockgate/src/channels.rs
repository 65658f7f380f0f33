//! Detector-inefficiency loss channel and two-mode beamsplitter unitaries.
//!
//! The loss channel exists in two deliberately independent forms: a
//! beamsplitter dilation against an environment vacuum followed by a partial
//! trace (the defining picture) and a Kraus operator sum (the efficient
//! picture). The verification suites demand they agree to 1e-8 in trace
//! distance; experiment pipelines use the Kraus form.
//!
//! Beamsplitters conserve total photon number, so they act block-diagonally
//! on total-photon sectors. All beamsplitter applications here go through
//! exact per-sector rotations (eigendecomposition of the real tridiagonal
//! sector generator), which keeps two-mode work at desk scale without giant
//! dense unitaries.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{
    displaced_squeezed_fock, fock_state, tensor, DensityOperator, FockVector, Mode, TwoModeState,
};

/// Convention for every beamsplitter in this crate, with `cos(theta) =
/// sqrt(transmissivity)`:
///
/// `U^dag a U =  cos(theta) a + sin(theta) b`
/// `U^dag b U = -sin(theta) a + cos(theta) b`
///
/// i.e. `U = exp(theta (a^dag b - a b^dag))`. Mode `a` is the
/// signal/transmitted port. Probabilities are convention-independent; the
/// sign choice (minus on the reflected signal) is fixed so the dilation
/// matches the closed-form lossy mixture without extra phases.
pub fn beamsplitter_angle(transmissivity: f64) -> f64 {
    ((1.0 - transmissivity).sqrt()).atan2(transmissivity.sqrt())
}

/// Rotation of one total-photon sector `{|k, N-k>}` under
/// `exp(theta (a^dag b - a b^dag))`.
///
/// The sector generator `K` is real skew-symmetric tridiagonal with
/// `K[k+1, k] = sqrt((k+1)(N-k))`. Conjugating by `diag(i^k)` turns it into
/// `i T` with `T` real symmetric, so the rotation comes out of one real
/// symmetric eigendecomposition and is unitary to machine precision.
fn sector_rotation(n_total: usize, theta: f64) -> DMatrix<Complex64> {
    let dim = n_total + 1;
    let mut t = DMatrix::<f64>::zeros(dim, dim);
    for k in 0..n_total {
        let w = (((k + 1) * (n_total - k)) as f64).sqrt();
        t[(k + 1, k)] = w;
        t[(k, k + 1)] = w;
    }
    let eigen = nalgebra::SymmetricEigen::new(t);
    let phases: Vec<Complex64> = eigen
        .eigenvalues
        .iter()
        .map(|l| Complex64::from_polar(1.0, theta * l))
        .collect();
    // U = D^{-1} V e^{i theta L} V^T D with D = diag(i^k)
    let i_pow = |k: usize| -> Complex64 {
        match k % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    };
    let mut u = DMatrix::<Complex64>::zeros(dim, dim);
    for row in 0..dim {
        for col in 0..dim {
            let mut sum = Complex64::new(0.0, 0.0);
            for (m, phase) in phases.iter().enumerate() {
                sum += phase * eigen.eigenvectors[(row, m)] * eigen.eigenvectors[(col, m)];
            }
            u[(row, col)] = i_pow(col) * sum * i_pow(row).conj();
        }
    }
    u
}

/// Apply a beamsplitter of the given transmissivity to a two-mode pure
/// state, sector by sector.
///
/// Sectors that fit inside the window rotate exactly; for sectors sticking
/// out of it the out-of-window output is dropped and shows up as leakage.
/// Starting from [`TwoModeState::embed_square`] every occupied sector fits
/// and the application is exact.
pub fn apply_beamsplitter(state: &TwoModeState, transmissivity: f64) -> Result<TwoModeState> {
    if !(0.0..=1.0).contains(&transmissivity) {
        return Err(Error::InvalidParameter(format!(
            "transmissivity must lie in [0, 1], got {transmissivity}"
        )));
    }
    let theta = beamsplitter_angle(transmissivity);
    let (da, db) = state.cutoffs();
    let amps = state.amplitudes();
    let mut out = DMatrix::<Complex64>::zeros(da, db);

    for n_total in 0..=(da - 1 + db - 1) {
        let k_min = n_total.saturating_sub(db - 1);
        let k_max = n_total.min(da - 1);
        if k_min > k_max {
            continue;
        }
        // gather the in-window slice of the sector; skip empty sectors
        let mut sector_in = DVector::<Complex64>::zeros(n_total + 1);
        let mut occupied = false;
        for k in k_min..=k_max {
            let a = amps[(k, n_total - k)];
            if a != Complex64::new(0.0, 0.0) {
                occupied = true;
            }
            sector_in[k] = a;
        }
        if !occupied {
            continue;
        }
        let rotation = sector_rotation(n_total, theta);
        let sector_out = rotation * sector_in;
        for k in k_min..=k_max {
            out[(k, n_total - k)] = sector_out[k];
        }
    }
    TwoModeState::from_amplitudes(out)
}

/// Multiply in phases `exp(i phase_a n_a + i phase_b n_b)`.
pub fn apply_phase(state: &TwoModeState, phase_a: f64, phase_b: f64) -> Result<TwoModeState> {
    let (da, db) = state.cutoffs();
    let mut out = state.amplitudes().clone();
    for a in 0..da {
        for b in 0..db {
            let phase = Complex64::from_polar(1.0, phase_a * a as f64 + phase_b * b as f64);
            out[(a, b)] *= phase;
        }
    }
    TwoModeState::from_amplitudes(out)
}

/// Two-mode operator on the tensor basis indexed as `a * cutoff_b + b`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeOperator {
    cutoff_a: usize,
    cutoff_b: usize,
    matrix: DMatrix<Complex64>,
}

impl TwoModeOperator {
    pub fn cutoffs(&self) -> (usize, usize) {
        (self.cutoff_a, self.cutoff_b)
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// Largest entry of `U^dag U - I` restricted to basis states whose total
    /// photon number keeps the sector fully inside the window (the interior
    /// of a number-conserving truncated unitary).
    pub fn max_unitarity_deviation(&self) -> f64 {
        let interior_total = self.cutoff_a.min(self.cutoff_b) - 1;
        let product = self.matrix.adjoint() * &self.matrix;
        let mut max_dev: f64 = 0.0;
        let idx = |a: usize, b: usize| a * self.cutoff_b + b;
        let mut interior = Vec::new();
        for a in 0..self.cutoff_a {
            for b in 0..self.cutoff_b {
                if a + b <= interior_total {
                    interior.push(idx(a, b));
                }
            }
        }
        for &i in &interior {
            for &j in &interior {
                let expected = if i == j {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                max_dev = max_dev.max((product[(i, j)] - expected).norm());
            }
        }
        max_dev
    }
}

/// Joint-basis cap for materializing dense two-mode unitaries.
pub const TWO_MODE_DENSE_CAP: usize = 4096;

/// Dense two-mode beamsplitter unitary, assembled from the sector rotations.
pub fn beamsplitter_unitary(
    transmissivity: f64,
    cutoff_a: usize,
    cutoff_b: usize,
) -> Result<TwoModeOperator> {
    if !(0.0..=1.0).contains(&transmissivity) {
        return Err(Error::InvalidParameter(format!(
            "transmissivity must lie in [0, 1], got {transmissivity}"
        )));
    }
    if cutoff_a == 0 || cutoff_b == 0 {
        return Err(Error::DimensionMismatch(
            "beamsplitter needs cutoffs >= 1".into(),
        ));
    }
    let joint = cutoff_a * cutoff_b;
    if joint > TWO_MODE_DENSE_CAP {
        return Err(Error::DimensionMismatch(format!(
            "dense two-mode unitary of dimension {joint} exceeds the cap {TWO_MODE_DENSE_CAP}"
        )));
    }
    let theta = beamsplitter_angle(transmissivity);
    let idx = |a: usize, b: usize| a * cutoff_b + b;
    let mut m = DMatrix::<Complex64>::zeros(joint, joint);
    for n_total in 0..=(cutoff_a - 1 + cutoff_b - 1) {
        let k_min = n_total.saturating_sub(cutoff_b - 1);
        let k_max = n_total.min(cutoff_a - 1);
        if k_min > k_max {
            continue;
        }
        let rotation = sector_rotation(n_total, theta);
        for row in k_min..=k_max {
            for col in k_min..=k_max {
                m[(idx(row, n_total - row), idx(col, n_total - col))] = rotation[(row, col)];
            }
        }
    }
    Ok(TwoModeOperator {
        cutoff_a,
        cutoff_b,
        matrix: m,
    })
}

/// Photon-loss channel of quantum efficiency `eta` in Kraus form.
///
/// `A_k` (loss of `k` photons) has elements
/// `<m|A_k|m+k> = sqrt(binom(m+k, k) eta^m (1-eta)^k)`; completeness
/// `sum_k A_k^dag A_k = I` holds exactly on the whole window because the
/// binomial weights sum to one at every photon number.
#[derive(Debug, Clone)]
pub struct LossChannel {
    eta: f64,
    cutoff: usize,
    /// `coefficients[k][m] = <m|A_k|m+k>`, kept as the nonzero diagonals.
    coefficients: Vec<Vec<f64>>,
}

impl LossChannel {
    pub fn new(eta: f64, cutoff: usize) -> Result<Self> {
        if !(0.0..=1.0).contains(&eta) {
            return Err(Error::InvalidParameter(format!(
                "eta must lie in [0, 1], got {eta}"
            )));
        }
        if cutoff == 0 {
            return Err(Error::DimensionMismatch(
                "loss channel needs cutoff >= 1".into(),
            ));
        }
        let mut coefficients = Vec::with_capacity(cutoff);
        for k in 0..cutoff {
            let len = cutoff - k;
            let mut diag = vec![0.0; len];
            // coef(0) = (1-eta)^{k/2}; coef(m) = coef(m-1) sqrt(eta (m+k)/m)
            diag[0] = (1.0 - eta).powi(k as i32).sqrt();
            for m in 1..len {
                diag[m] = diag[m - 1] * (eta * (m + k) as f64 / m as f64).sqrt();
            }
            coefficients.push(diag);
        }
        Ok(Self {
            eta,
            cutoff,
            coefficients,
        })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Kraus operators as dense matrices.
    pub fn kraus_ops(&self) -> Vec<DMatrix<Complex64>> {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(k, diag)| {
                let mut m = DMatrix::zeros(self.cutoff, self.cutoff);
                for (row, &c) in diag.iter().enumerate() {
                    m[(row, row + k)] = Complex64::new(c, 0.0);
                }
                m
            })
            .collect()
    }

    /// Largest entry of `sum_k A_k^dag A_k - I`.
    pub fn completeness_deviation(&self) -> f64 {
        let mut column_sums = vec![0.0_f64; self.cutoff];
        for (k, diag) in self.coefficients.iter().enumerate() {
            for (m, &c) in diag.iter().enumerate() {
                column_sums[m + k] += c * c;
            }
        }
        column_sums
            .iter()
            .map(|s| (s - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// `sum_k A_k rho A_k^dag`, using the shifted-diagonal structure:
    /// `out[m, m'] += c_k[m] c_k[m'] rho[m+k, m'+k]`.
    pub fn apply(&self, rho: &DensityOperator) -> Result<DensityOperator> {
        if rho.cutoff() != self.cutoff {
            return Err(Error::DimensionMismatch(format!(
                "channel cutoff {} vs state cutoff {}",
                self.cutoff,
                rho.cutoff()
            )));
        }
        let mut out = DMatrix::<Complex64>::zeros(self.cutoff, self.cutoff);
        for (k, diag) in self.coefficients.iter().enumerate() {
            let len = diag.len();
            for m in 0..len {
                for mp in 0..len {
                    out[(m, mp)] += diag[m] * diag[mp] * rho.matrix()[(m + k, mp + k)];
                }
            }
        }
        DensityOperator::from_matrix(out)
    }

    /// Loss applied to a pure state, `sum_k (A_k psi)(A_k psi)^dag`.
    pub fn apply_to_pure(&self, psi: &FockVector) -> Result<DensityOperator> {
        if psi.cutoff() != self.cutoff {
            return Err(Error::DimensionMismatch(format!(
                "channel cutoff {} vs state cutoff {}",
                self.cutoff,
                psi.cutoff()
            )));
        }
        let mut out = DMatrix::<Complex64>::zeros(self.cutoff, self.cutoff);
        for (k, diag) in self.coefficients.iter().enumerate() {
            let len = diag.len();
            let branch: Vec<Complex64> = (0..len).map(|m| diag[m] * psi.amplitude(m + k)).collect();
            for m in 0..len {
                for mp in 0..len {
                    out[(m, mp)] += branch[m] * branch[mp].conj();
                }
            }
        }
        DensityOperator::from_matrix(out)
    }
}

/// Loss channel in its defining dilation form: tensor with an environment
/// vacuum (environment cutoff equal to the signal cutoff, since the
/// environment can absorb at most every signal photon), rotate through the
/// beamsplitter of transmissivity `eta`, trace out the environment.
///
/// Mixed inputs are split spectrally and each pure component is pushed
/// through the same beamsplitter sectors the dense unitary is built from.
pub fn apply_loss_dilation(rho: &DensityOperator, eta: f64) -> Result<DensityOperator> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::InvalidParameter(format!(
            "eta must lie in [0, 1], got {eta}"
        )));
    }
    let d = rho.cutoff();
    let env_vacuum = fock_state(0, d)?;
    let mut acc = DMatrix::<Complex64>::zeros(d, d);
    for (weight, psi) in rho.spectral_components(1e-14)? {
        let joint = tensor(&psi, &env_vacuum)?;
        let rotated = apply_beamsplitter(&joint, eta)?;
        let reduced = rotated.partial_trace(Mode::A)?;
        acc += reduced.matrix() * Complex64::new(weight, 0.0);
    }
    DensityOperator::from_matrix(acc)
}

/// Closed-form lossy output for the displaced single-photon probe:
/// `eta |beta_eta, 1><beta_eta, 1| + (1 - eta) |beta_eta, 0><beta_eta, 0|`
/// with `beta_eta = sqrt(eta) beta e^r`. Single-quantum (`n = 1`) case only.
pub fn lossy_mixture_analytic(
    beta: Complex64,
    r: f64,
    eta: f64,
    cutoff: usize,
) -> Result<DensityOperator> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::InvalidParameter(format!(
            "eta must lie in [0, 1], got {eta}"
        )));
    }
    let beta_eta = beta * r.exp() * eta.sqrt();
    let one = displaced_squeezed_fock(beta_eta, 0.0, 1, cutoff)?;
    let vac = displaced_squeezed_fock(beta_eta, 0.0, 0, cutoff)?;
    let m_one = DensityOperator::from_pure(&one);
    let m_vac = DensityOperator::from_pure(&vac);
    let mixture =
        m_one.matrix() * Complex64::new(eta, 0.0) + m_vac.matrix() * Complex64::new(1.0 - eta, 0.0);
    DensityOperator::from_matrix(mixture)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{p_fn_lossy, poisson_count_prob};
    use crate::fock::{coherent_state, trace_distance};
    use approx::assert_abs_diff_eq;

    fn im(b: f64) -> Complex64 {
        Complex64::new(0.0, b)
    }

    #[test]
    fn beamsplitter_identity_at_full_transmissivity() {
        let a = fock_state(2, 6).unwrap();
        let b = fock_state(1, 6).unwrap();
        let joint = tensor(&a, &b).unwrap();
        let out = apply_beamsplitter(&joint, 1.0).unwrap();
        assert_abs_diff_eq!(
            (out.amplitudes() - joint.amplitudes()).norm(),
            0.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn beamsplitter_bernoulli_splitting_of_single_photon() {
        // |1, 0> -> photon kept in the signal mode with probability eta
        for &eta in &[0.3, 0.5, 0.95] {
            let joint = tensor(&fock_state(1, 4).unwrap(), &fock_state(0, 4).unwrap()).unwrap();
            let out = apply_beamsplitter(&joint, eta).unwrap();
            let signal = out.partial_trace(Mode::A).unwrap();
            let pmf = signal.photon_pmf();
            assert_abs_diff_eq!(pmf[1], eta, epsilon = 1e-12);
            assert_abs_diff_eq!(pmf[0], 1.0 - eta, epsilon = 1e-12);
        }
    }

    #[test]
    fn beamsplitter_conserves_photon_number() {
        let a = coherent_state(Complex64::new(1.2, 0.0), 24).unwrap();
        let b = fock_state(2, 8).unwrap();
        let joint = tensor(&a, &b).unwrap().embed_square().unwrap();
        let before = joint.mean_total_photons();
        let out = apply_beamsplitter(&joint, 0.37).unwrap();
        assert_abs_diff_eq!(out.mean_total_photons(), before, epsilon = 1e-10);
        assert_abs_diff_eq!(out.norm_sq(), joint.norm_sq(), epsilon = 1e-12);
    }

    #[test]
    fn dense_unitary_matches_sector_application() {
        let (da, db) = (6, 6);
        let u = beamsplitter_unitary(0.7, da, db).unwrap();
        assert!(u.max_unitarity_deviation() < 1e-12);

        for (na, nb) in [(0, 0), (1, 0), (0, 1), (2, 1), (3, 2)] {
            let joint = tensor(&fock_state(na, da).unwrap(), &fock_state(nb, db).unwrap()).unwrap();
            let through_sectors = apply_beamsplitter(&joint, 0.7).unwrap();
            let col = na * db + nb;
            for a in 0..da {
                for b in 0..db {
                    let dense = u.matrix()[(a * db + b, col)];
                    assert_abs_diff_eq!(
                        (dense - through_sectors.amplitudes()[(a, b)]).norm(),
                        0.0,
                        epsilon = 1e-12
                    );
                }
            }
        }
    }

    #[test]
    fn dense_unitary_respects_cap() {
        assert!(beamsplitter_unitary(0.5, 128, 128).is_err());
    }

    #[test]
    fn kraus_completeness_is_exact() {
        for &eta in &[0.0, 0.25, 0.5, 0.95, 1.0] {
            let channel = LossChannel::new(eta, 48).unwrap();
            assert!(channel.completeness_deviation() < 1e-12, "eta = {eta}");
        }
    }

    #[test]
    fn kraus_identity_and_full_loss() {
        let psi = displaced_squeezed_fock(im(0.8), 0.0, 1, 24).unwrap();
        let rho = DensityOperator::from_pure(&psi);

        let identity = LossChannel::new(1.0, 24).unwrap().apply(&rho).unwrap();
        assert!(trace_distance(&identity, &rho).unwrap() < 1e-14);

        let vacuumized = LossChannel::new(0.0, 24).unwrap().apply(&rho).unwrap();
        let vacuum = DensityOperator::from_pure(&fock_state(0, 24).unwrap());
        assert!(trace_distance(&vacuumized, &vacuum).unwrap() < 1e-10);
    }

    #[test]
    fn kraus_attenuates_coherent_states() {
        let alpha = Complex64::new(0.9, 0.4);
        let eta = 0.85;
        let cutoff = 32;
        let input = DensityOperator::from_pure(&coherent_state(alpha, cutoff).unwrap());
        let output = LossChannel::new(eta, cutoff)
            .unwrap()
            .apply(&input)
            .unwrap();
        let expected = coherent_state(alpha * eta.sqrt(), cutoff).unwrap();
        let fidelity = output.fidelity_with_pure(&expected).unwrap();
        assert!(fidelity >= 1.0 - 1e-8, "fidelity {fidelity}");
    }

    #[test]
    fn kraus_reproduces_lossy_bracket_formula() {
        // <1|rho_eta|1> on a displaced single photon equals the closed form
        let eta = 0.95_f64;
        let cutoff = 32;
        for &b in &[0.5, 1.0, 1.4] {
            // detector-side displacement beta_eta = b requires pre-loss
            // displacement b / sqrt(eta)
            let psi = displaced_squeezed_fock(im(b / eta.sqrt()), 0.0, 1, cutoff).unwrap();
            let rho = LossChannel::new(eta, cutoff)
                .unwrap()
                .apply_to_pure(&psi)
                .unwrap();
            assert_abs_diff_eq!(rho.photon_pmf()[1], p_fn_lossy(im(b), eta), epsilon = 1e-8);
        }
    }

    #[test]
    fn dilation_is_transparent_at_unit_efficiency_and_total_at_zero() {
        let psi = displaced_squeezed_fock(im(1.0), 0.0, 1, 20).unwrap();
        let rho = DensityOperator::from_pure(&psi);

        let transparent = apply_loss_dilation(&rho, 1.0).unwrap();
        assert!(trace_distance(&transparent, &rho).unwrap() < 1e-10);

        let dark = apply_loss_dilation(&rho, 0.0).unwrap();
        let vacuum = DensityOperator::from_pure(&fock_state(0, 20).unwrap());
        assert!(trace_distance(&dark, &vacuum).unwrap() < 1e-10);
    }

    #[test]
    fn dilation_matches_closed_form_mixture() {
        let eta = 0.95_f64;
        let cutoff = 24;
        // beta e^r chosen so the detector-side displacement |beta_eta| =
        // sqrt(eta) |beta e^r| comes out at exactly 1
        let beta_gain = im(1.0 / eta.sqrt());
        let psi = displaced_squeezed_fock(beta_gain, 0.0, 1, cutoff).unwrap();
        let lossy = apply_loss_dilation(&DensityOperator::from_pure(&psi), eta).unwrap();
        let mixture = lossy_mixture_analytic(beta_gain, 0.0, eta, cutoff).unwrap();
        let dist = trace_distance(&lossy, &mixture).unwrap();
        assert!(dist < 1e-8, "trace distance {dist:.3e}");
        assert_abs_diff_eq!(mixture.trace(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            mixture.photon_pmf()[1],
            0.05 * (-1.0_f64).exp(),
            epsilon = 1e-10
        );
    }

    #[test]
    fn kraus_equals_dilation_on_displaced_fock_states() {
        for n in 0..=3 {
            for &b in &[0.5, 1.5] {
                for &eta in &[0.5, 0.9, 1.0] {
                    let cutoff = 28;
                    let psi = displaced_squeezed_fock(im(b), 0.0, n, cutoff).unwrap();
                    let rho = DensityOperator::from_pure(&psi);
                    let via_kraus = LossChannel::new(eta, cutoff).unwrap().apply(&rho).unwrap();
                    let via_dilation = apply_loss_dilation(&rho, eta).unwrap();
                    let dist = trace_distance(&via_kraus, &via_dilation).unwrap();
                    assert!(dist < 1e-8, "n={n} b={b} eta={eta}: {dist:.3e}");
                    assert!(via_kraus.min_eigenvalue() > -1e-9);
                    assert_abs_diff_eq!(via_kraus.trace(), rho.trace(), epsilon = 1e-10);
                }
            }
        }
    }

    #[test]
    fn loss_composes_multiplicatively() {
        let cutoff = 24;
        let psi = displaced_squeezed_fock(im(1.2), 0.0, 2, cutoff).unwrap();
        let rho = DensityOperator::from_pure(&psi);
        let eta1 = 0.9;
        let eta2 = 0.8;
        let chained = LossChannel::new(eta2, cutoff)
            .unwrap()
            .apply(&LossChannel::new(eta1, cutoff).unwrap().apply(&rho).unwrap())
            .unwrap();
        let direct = LossChannel::new(eta1 * eta2, cutoff)
            .unwrap()
            .apply(&rho)
            .unwrap();
        assert!(trace_distance(&chained, &direct).unwrap() < 1e-8);
    }

    #[test]
    fn coherent_pmf_survives_kraus_as_poisson() {
        let alpha = im(1.0);
        let cutoff = 32;
        let rho = LossChannel::new(0.64, cutoff)
            .unwrap()
            .apply_to_pure(&coherent_state(alpha, cutoff).unwrap())
            .unwrap();
        let attenuated = alpha * 0.8;
        for count in 0..8 {
            assert_abs_diff_eq!(
                rho.photon_pmf()[count],
                poisson_count_prob(count, attenuated),
                epsilon = 1e-10
            );
        }
    }
}
