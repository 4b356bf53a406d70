//! Fit the coning angular velocity from one interval of gyro increments and
//! print the coefficient decay plus the fit error against the true rate.
//!
//! Run with: cargo run --release --example fit_angular_velocity

use rodfiter::coning::{omega_true, synthesize_batch, ConingParams, ErrorModel};
use rodfiter::fitting::{fit_angular_velocity, FitConfig, GyroKind};

fn main() {
    let p = ConingParams::paper_defaults();
    let t_n = 0.08; // 8 samples at 100 Hz
    let batch = synthesize_batch(&p, &ErrorModel::default(), 0.0, t_n, 8, GyroKind::Increment);
    let omega = fit_angular_velocity(&batch, FitConfig { degree: 7 }).unwrap();

    println!("Chebyshev coefficients of the fitted angular velocity (rad/s):");
    for (i, c) in omega.coeffs.iter().enumerate() {
        println!("  degree {i}: |c| = {:.3e}", c.norm());
    }

    // evaluate the fit error on a 10x denser grid than the samples
    let mut max_err = 0.0f64;
    println!("\nfit error vs true angular velocity at 1000 Hz:");
    for k in 0..=80 {
        let t = k as f64 * 0.001;
        let tau = 2.0 * t / t_n - 1.0;
        let err = (omega.eval(tau) - omega_true(&p, t)).norm();
        max_err = max_err.max(err);
        if k % 10 == 0 {
            println!("  t = {t:.3} s: |error| = {err:.3e} rad/s");
        }
    }
    println!("\nmax fit error: {max_err:.3e} rad/s (largest near the interval ends)");
}
