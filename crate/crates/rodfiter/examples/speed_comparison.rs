//! Compare the exact, truncated, and two-sample algorithms on the 2-second
//! coning workload: analytic weighted-term counts plus wall-clock timings.
//!
//! Run with: cargo run --release --example speed_comparison

use rodfiter::cli::{bench_table, run_bench, RunSpec};
use rodfiter::rodfiter::{exact_degree, weighted_term_count, IterMode};

fn main() {
    // per-iteration cost is proportional to n * m_l^2; the exact iterate's
    // degree m_l doubles every iteration while the truncated one stays put
    println!("iterate degree and weighted terms, n = 8:");
    println!("  iter   exact degree   exact terms   truncated (n_T = 9) terms");
    for l in 1..=7u32 {
        let m = exact_degree(8, l);
        let exact = 8 * (m as u64).pow(2);
        let trunc = 8 * (m.min(9) as u64).pow(2);
        println!("  {l:4}   {m:12}   {exact:11}   {trunc:10}");
    }
    let total_exact = weighted_term_count(8, IterMode::Exact, 7);
    let total_trunc = weighted_term_count(8, IterMode::Truncated(9), 7);
    println!(
        "\ntotals over 7 iterations: {total_exact} vs {total_trunc} ({}x fewer)",
        total_exact / total_trunc
    );

    println!("\nwall-clock over the 2-s workload (10 runs each):");
    let entries = run_bench(&RunSpec::default(), 10).unwrap();
    print!("{}", bench_table(&entries));
}
