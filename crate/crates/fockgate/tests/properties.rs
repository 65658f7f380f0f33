//! Property tests for the module-level invariants.

use num_complex::Complex64;
use proptest::prelude::*;

use fockgate::analytic::{
    displaced_fock_overlap, laguerre, laguerre_roots, p_fn_fock, p_fn_lossy, p_fn_vacuum,
    p_fp_lossy, poisson_count_prob,
};
use fockgate::channels::LossChannel;
use fockgate::fock::{
    coherent_state, displaced_squeezed_fock, fock_state, inner_product, tensor, DensityOperator,
    Mode,
};

fn im(b: f64) -> Complex64 {
    Complex64::new(0.0, b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// Every formula sees only |beta|: results are invariant under the
    /// displacement phase.
    #[test]
    fn probabilities_depend_only_on_displacement_modulus(
        b in 0.0..2.5_f64,
        theta in 0.0..std::f64::consts::TAU,
        n in 0usize..6,
    ) {
        let rotated = Complex64::from_polar(b, theta);
        prop_assert!((displaced_fock_overlap(n, rotated) - displaced_fock_overlap(n, im(b))).abs() < 1e-12);
        prop_assert!((p_fn_fock(n, rotated) - p_fn_fock(n, im(b))).abs() < 1e-12);
        prop_assert!((p_fn_vacuum(rotated) - p_fn_vacuum(im(b))).abs() < 1e-12);
    }

    /// The false-negative probability is the squared overlap, in [0, 1].
    #[test]
    fn p_fn_is_squared_overlap(b in 0.0..3.0_f64, n in 0usize..8) {
        let overlap = displaced_fock_overlap(n, im(b));
        let p = p_fn_fock(n, im(b));
        prop_assert!((p - overlap * overlap).abs() < 1e-14);
        prop_assert!((0.0..=1.0).contains(&p));
    }

    /// Poisson counts normalize once the tail bound is generous enough.
    #[test]
    fn poisson_counts_normalize(b in 0.0..3.0_f64) {
        let x = b * b;
        let cap = (x + 20.0 * (x + 1.0).sqrt()).ceil() as usize;
        let total: f64 = (0..=cap).map(|c| poisson_count_prob(c, im(b))).sum();
        prop_assert!((1.0 - total).abs() < 1e-12);
    }

    /// Decision-rule complementarity at zero displacement, and the lossless
    /// reduction of the lossy bracket.
    #[test]
    fn lossy_formula_limits(eta in 0.0..=1.0_f64, b in 0.0..3.0_f64) {
        prop_assert!((p_fn_lossy(im(0.0), eta) + p_fp_lossy(eta) - 1.0).abs() < 1e-14);
        prop_assert!((p_fn_lossy(im(b), 1.0) - p_fn_fock(1, im(b))).abs() < 1e-14);
        prop_assert!((0.0..=1.0).contains(&p_fn_lossy(im(b), eta)));
    }

    /// False positives fall strictly as the detector improves.
    #[test]
    fn p_fp_strictly_decreasing_in_eta(eta in 0.0..0.99_f64, step in 0.001..0.2_f64) {
        let better = (eta + step).min(1.0);
        prop_assert!(p_fp_lossy(better) < p_fp_lossy(eta));
    }

    /// Coherent-state photon statistics match the Poisson closed form and
    /// the pmf sums to 1 - leakage.
    #[test]
    fn coherent_pmf_is_poisson(b in 0.0..2.5_f64, theta in 0.0..std::f64::consts::TAU) {
        let alpha = Complex64::from_polar(b, theta);
        let state = coherent_state(alpha, 48).unwrap();
        let pmf = state.photon_pmf();
        for (count, p) in pmf.iter().enumerate().take(10) {
            prop_assert!((p - poisson_count_prob(count, alpha)).abs() < 1e-12);
        }
        let total: f64 = pmf.iter().sum();
        prop_assert!((total - (1.0 - state.leakage())).abs() < 1e-12);
        prop_assert!(pmf.iter().all(|p| *p >= -1e-12));
    }

    /// Kraus loss preserves trace and positivity on displaced Fock probes.
    #[test]
    fn loss_channel_preserves_trace_and_positivity(
        eta in 0.05..=1.0_f64,
        b in 0.0..1.5_f64,
        n in 0usize..4,
    ) {
        let cutoff = 32;
        let psi = displaced_squeezed_fock(im(b), 0.0, n, cutoff).unwrap();
        let rho = LossChannel::new(eta, cutoff).unwrap()
            .apply(&DensityOperator::from_pure(&psi)).unwrap();
        prop_assert!((rho.trace() - (1.0 - psi.leakage())).abs() < 1e-10);
        prop_assert!(rho.min_eigenvalue() >= -1e-9);
    }

    /// Tensor then partial trace recovers each factor of a product state.
    #[test]
    fn partial_trace_of_product_state_factorizes(na in 0usize..5, nb in 0usize..5) {
        let a = fock_state(na, 6).unwrap();
        let b = fock_state(nb, 6).unwrap();
        let joint = tensor(&a, &b).unwrap();
        let rho_a = joint.partial_trace(Mode::A).unwrap();
        let rho_b = joint.partial_trace(Mode::B).unwrap();
        prop_assert!((rho_a.fidelity_with_pure(&a).unwrap() - 1.0).abs() < 1e-12);
        prop_assert!((rho_b.fidelity_with_pure(&b).unwrap() - 1.0).abs() < 1e-12);
    }

    /// Hermitian symmetry of the inner product on random two-level
    /// superpositions.
    #[test]
    fn inner_product_is_hermitian(
        xa in -1.0..1.0_f64, xb in -1.0..1.0_f64,
        ya in -1.0..1.0_f64, yb in -1.0..1.0_f64,
    ) {
        let build = |a: f64, b: f64| {
            let norm = (a * a + b * b).sqrt().max(1e-3);
            let mut amps = nalgebra::DVector::<Complex64>::zeros(4);
            amps[0] = Complex64::new(a / norm, 0.0);
            amps[1] = Complex64::new(0.0, b / norm);
            fockgate::fock::FockVector::from_amplitudes(amps).unwrap()
        };
        let x = build(xa, xb);
        let y = build(ya, yb);
        let xy = inner_product(&x, &y).unwrap();
        let yx = inner_product(&y, &x).unwrap();
        prop_assert!((xy - yx.conj()).norm() < 1e-14);
    }
}

/// Residuals of eigenvalue-computed roots stay at the double-precision
/// floor for moderate orders, and consecutive orders interlace.
#[test]
fn laguerre_root_residuals_and_interlacing() {
    for n in 1..=6 {
        for root in laguerre_roots(n, 1e-12).unwrap() {
            assert!(laguerre(n, 0, root).abs() <= 1e-12);
        }
    }
    for n in 1..=9 {
        let inner = laguerre_roots(n, 1e-8).unwrap();
        let outer = laguerre_roots(n + 1, 1e-8).unwrap();
        for i in 0..n {
            assert!(outer[i] < inner[i] && inner[i] < outer[i + 1]);
        }
    }
}
