//! Sweep the truncation degree n_T and show how the retained coefficients
//! and the error-bound diagnostic respond, including a biased-gyro case.
//!
//! Run with: cargo run --release --example truncation_sweep

use nalgebra::Vector3;
use rodfiter::coning::{synthesize_batch, ConingParams, ErrorModel};
use rodfiter::fitting::{fit_angular_velocity, FitConfig, GyroKind};
use rodfiter::rodfiter::{reconstruct, truncation_bound, IterConfig, IterMode};

fn main() {
    let p = ConingParams::paper_defaults();
    let t_n = 0.08;
    let batch = synthesize_batch(&p, &ErrorModel::default(), 0.0, t_n, 8, GyroKind::Increment);
    let omega = fit_angular_velocity(&batch, FitConfig { degree: 7 }).unwrap();

    println!("truncation sweep, zero gyro bias:");
    println!("  n_T   final degree   |b_(n_T+1)|    bound (approx)");
    for n_t in [6usize, 8, 10, 12] {
        let cfg = IterConfig { mode: IterMode::Truncated(n_t), max_iters: 7, stop_tol: None, t_n };
        let result = reconstruct(&omega, &cfg).unwrap();
        let bound = truncation_bound(&result, &cfg, 0.0);
        println!(
            "  {n_t:3}   {:12}   {:.3e}     {:.3e}",
            result.final_series.degree(),
            result.last_neglected_coeff(),
            bound.approx
        );
    }

    // with a known gyro bias the angular-velocity term dominates the bound,
    // so aggressive truncation costs nothing
    let bias = Vector3::new(1e-6, 0.0, 0.0);
    let biased = synthesize_batch(&p, &ErrorModel { bias }, 0.0, t_n, 8, GyroKind::Increment);
    let omega_b = fit_angular_velocity(&biased, FitConfig { degree: 7 }).unwrap();
    println!("\nwith 1e-6 rad/s bias:");
    println!("  n_T   bound (tight)   of which truncation");
    for n_t in [6usize, 8, 10] {
        let cfg = IterConfig { mode: IterMode::Truncated(n_t), max_iters: 7, stop_tol: None, t_n };
        let result = reconstruct(&omega_b, &cfg).unwrap();
        let bound = truncation_bound(&result, &cfg, bias.norm());
        println!(
            "  {n_t:3}   {:.3e}      {:.3e}",
            bound.tight,
            result.last_neglected_coeff()
        );
    }
}
