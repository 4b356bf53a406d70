//! Reconstruct the incremental Rodrigues vector over one update interval,
//! in exact and truncated mode, and compare both against the analytic
//! coefficient oracle of the coning motion.
//!
//! Run with: cargo run --release --example reconstruct_interval

use rodfiter::coning::{synthesize_batch, true_coeff_oracle, ConingParams, ErrorModel};
use rodfiter::fitting::{fit_angular_velocity, FitConfig, GyroKind};
use rodfiter::rodfiter::{reconstruct, IterConfig, IterMode};

fn main() {
    let p = ConingParams::paper_defaults();
    let t_n = 0.08;
    let batch = synthesize_batch(&p, &ErrorModel::default(), 0.0, t_n, 8, GyroKind::Increment);
    let omega = fit_angular_velocity(&batch, FitConfig { degree: 7 }).unwrap();

    let exact = reconstruct(
        &omega,
        &IterConfig { mode: IterMode::Exact, max_iters: 7, stop_tol: None, t_n },
    )
    .unwrap();
    let truncated = reconstruct(
        &omega,
        &IterConfig { mode: IterMode::Truncated(8), max_iters: 7, stop_tol: None, t_n },
    )
    .unwrap();
    let oracle = true_coeff_oracle(&p, 0.0, t_n, 40, 2048);

    println!("convergence margin t_N sup|w|/2 = {:.4e}", exact.convergence_margin);
    println!("\nper-iteration degrees, exact mode (m_l = (2^l - 1)(n + 1)):");
    for (l, rec) in exact.per_iteration.iter().enumerate() {
        println!(
            "  iter {}: degree {:4}, max coeff delta {:.3e}",
            l + 1,
            rec.degree,
            rec.max_coeff_delta
        );
    }

    println!("\ncoefficient comparison (degree <= 8):");
    println!("  deg   |exact|      |truncated|  |oracle|     trunc-oracle");
    for i in 0..=8 {
        let e = exact.final_series.coeffs[i].norm();
        let t = truncated.final_series.coeffs[i].norm();
        let o = oracle.coeffs[i].norm();
        let d = (truncated.final_series.coeffs[i] - oracle.coeffs[i]).norm();
        println!("  {i:3}   {e:.3e}   {t:.3e}   {o:.3e}   {d:.3e}");
    }
    println!(
        "\nfirst neglected coefficient |b_(n_T+1)| = {:.3e}",
        truncated.last_neglected_coeff()
    );
}
