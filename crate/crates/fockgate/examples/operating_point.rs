//! Locate the optimal operating point across detector efficiencies and
//! probe photon numbers, and relate the resulting phase shifts to the
//! shot-noise scales.
//!
//! ```text
//! cargo run --example operating_point
//! ```

use fockgate::analytic::sensitivity_bounds;
use fockgate::experiment::optimize_operating_point;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let alpha = 1e4; // pump amplitude; N = alpha^2 photons in the bright port

    println!("single-photon probe, alpha = {alpha:.0e}:");
    println!(
        "{:>6} {:>6} {:>14} {:>14} {:>12} {:>12}",
        "eta", "r", "|beta_eta|", "phi_opt", "P_fn", "P_fp"
    );
    for &eta in &[1.0, 0.99, 0.95, 0.90] {
        for &r in &[0.0, 1.0] {
            let opt = optimize_operating_point(1, eta, r, alpha, None)?;
            println!(
                "{eta:>6.2} {r:>6.2} {:>14.6} {:>14.6e} {:>12.3e} {:>12.3e}",
                opt.beta_eta_abs,
                opt.phi_abs,
                opt.report.p_false_negative,
                opt.report.p_false_positive
            );
        }
    }

    // context: the mean-square-error scales for the same photon budget
    let bounds = sensitivity_bounds(alpha * alpha, 1.0)?;
    println!();
    println!(
        "phase-error scales at N = alpha^2 = {:.0e} photons:",
        alpha * alpha
    );
    println!("  shot-noise limit     {:.3e}", bounds.snl);
    println!("  squeezed (r = 1)     {:.3e}", bounds.squeezed_snl);
    println!("  Heisenberg limit     {:.3e}", bounds.heisenberg);
    println!();
    println!("the optimal phi above sits at the (squeezed) shot-noise scale: the");
    println!("scheme detects a shift of that size, with error probabilities far");
    println!("below the Gaussian baseline.");

    // multi-photon probes: the optimum moves to the smallest Laguerre root
    println!();
    println!("ideal detector, larger probes:");
    println!(
        "{:>4} {:>14} {:>14} {:>12}",
        "n", "|beta|^2", "phi_opt", "P_fn"
    );
    for n in 1..=4 {
        let opt = optimize_operating_point(n, 1.0, 0.0, alpha, None)?;
        println!(
            "{n:>4} {:>14.6} {:>14.6e} {:>12.3e}",
            opt.beta_eta_abs * opt.beta_eta_abs,
            opt.phi_abs,
            opt.report.p_false_negative
        );
    }
    Ok(())
}
