//! Sanity check against the closed-form single-axis solution: for a constant
//! rate w about one axis the incremental Rodrigues vector is 2 tan(wt/2) and
//! every algorithm here should reproduce it to machine precision.
//!
//! Run with: cargo run --release --example single_axis_check

use nalgebra::Vector3;
use rodfiter::fitting::{fit_angular_velocity, FitConfig, GyroBatch, GyroKind};
use rodfiter::rodfiter::{reconstruct, IterConfig, IterMode};

fn main() {
    let w = 0.1; // rad/s
    let t_n = 0.08;
    let n = 8;
    let dt = t_n / n as f64;
    let batch = GyroBatch::new(
        GyroKind::Increment,
        vec![Vector3::new(w * dt, 0.0, 0.0); n],
        t_n,
    );
    let omega = fit_angular_velocity(&batch, FitConfig { degree: 7 }).unwrap();
    let cfg = IterConfig { mode: IterMode::Exact, max_iters: 7, stop_tol: None, t_n };
    let result = reconstruct(&omega, &cfg).unwrap();

    println!("  t (s)     reconstructed     2 tan(wt/2)       difference");
    for k in 0..=8 {
        let t = k as f64 * 0.01;
        let tau = 2.0 * t / t_n - 1.0;
        let got = result.final_series.eval(tau).x;
        let expected = 2.0 * (w * t / 2.0).tan();
        println!("  {t:.3}     {got:.12e}   {expected:.12e}   {:+.2e}", got - expected);
    }
}
