//! Chain 2 seconds of per-interval reconstructions into an attitude track
//! and compare the truncated RodFIter against the two-sample baseline,
//! both measured against the analytic coning attitude.
//!
//! Run with: cargo run --release --example attitude_over_time

use rodfiter::cli::{run_reconstruct, simulate_increments, RunMode, RunSpec};

fn main() {
    let spec = RunSpec::default(); // 2 s, 100 Hz, N = 8, n = 7, n_T = 8
    let rows = simulate_increments(&spec);

    let truncated = run_reconstruct(&spec, &rows, RunMode::Truncated).unwrap();
    let baseline = run_reconstruct(&spec, &rows, RunMode::Baseline).unwrap();

    println!("attitude error vs analytic truth, sampled every 0.25 s:");
    println!("  t (s)    truncated (rad)   two-sample (rad)");
    for k in 0..=8 {
        let t = k as f64 * 0.25;
        let nearest = |rows: &[rodfiter::cli::ErrorRow]| {
            rows.iter()
                .min_by(|a, b| {
                    (a.t - t).abs().partial_cmp(&(b.t - t).abs()).unwrap()
                })
                .map(|r| r.eps_att)
                .unwrap()
        };
        println!("  {t:5.2}    {:.3e}         {:.3e}", nearest(&truncated.rows), nearest(&baseline.rows));
    }
    println!(
        "\nmax over 2 s: truncated {:.3e} rad, two-sample {:.3e} rad ({}x separation)",
        truncated.max_error,
        baseline.max_error,
        (baseline.max_error / truncated.max_error).round()
    );
}
