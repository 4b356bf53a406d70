//! Coefficient-space Picard iteration of the incremental Rodrigues vector.
//!
//! One step maps the current Rodrigues-vector series `g` (coefficients b_i)
//! and the fitted angular-velocity series ω (coefficients c_i) to
//!
//! ```text
//! g' = (t_N/2) [ Σ_i c_i G_i
//!              + ¼ Σ_{i,j} (b_i × c_j)(G_{i+j} + G_{|i-j|})
//!              + (1/16) Σ_{i,j,k} b_i (b_j·c_k)
//!                       (G_{i+j+k} + G_{|i+j-k|} + G_{|i-j|+k} + G_{||i-j|-k|}) ]
//! ```
//!
//! where `G_d` is the anchored antiderivative of the degree-`d` basis
//! polynomial, accumulated through a precomputed sparse table. Iterating from
//! g = 0 converges to the true incremental Rodrigues vector whenever
//! `t_N · sup|ω| < 2`; truncating every iterate to degree `n_T` yields the
//! fast variant at an error bounded by the first neglected coefficient.

use nalgebra::Vector3;
use thiserror::Error;

use crate::chebyshev::{BasisIntegralTable, ChebSeries3};

#[derive(Debug, Error)]
pub enum IterError {
    /// `t_N · sup|ω| ≥ 2`; the contraction hypothesis fails.
    #[error("convergence condition violated: t_N * sup|omega| = {product} >= 2")]
    ConvergenceConditionViolated { product: f64 },
    /// A coefficient became NaN or infinite.
    #[error("non-finite coefficient at iteration {iteration}")]
    NonFinite { iteration: usize },
}

/// Exact iteration lets the degree grow as `m_{l+1} = 2 m_l + n + 1`;
/// Truncated caps every iterate at the given degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IterMode {
    Exact,
    Truncated(usize),
}

#[derive(Debug, Clone, Copy)]
pub struct IterConfig {
    pub mode: IterMode,
    pub max_iters: usize,
    /// Early stop when the max coefficient change drops below this; `None`
    /// runs all `max_iters` iterations.
    pub stop_tol: Option<f64>,
    pub t_n: f64,
}

impl IterConfig {
    /// `n_T ≥ n + 1` keeps the first subintegral untruncated and is the
    /// recommended setting; smaller values are allowed for coefficient
    /// sweeps but trade accuracy for speed.
    pub fn validate(&self, _fit_degree: usize) {
        assert!(self.max_iters >= 1);
        assert!(self.t_n > 0.0);
        if let IterMode::Truncated(n_t) = self.mode {
            assert!(n_t >= 1, "truncation degree must be positive");
        }
    }
}

/// Per-iteration diagnostics.
#[derive(Debug, Clone)]
pub struct IterationRecord {
    /// Degree of the iterate after this step (post-truncation).
    pub degree: usize,
    /// |b_{l,n_T+1}|: magnitude of the first neglected coefficient
    /// (0 in exact mode).
    pub neglected_coeff: f64,
    /// Max |Δ coefficient| against the previous iterate.
    pub max_coeff_delta: f64,
}

#[derive(Debug, Clone)]
pub struct ReconstructionResult {
    /// Incremental Rodrigues vector over the mapped interval, zero at τ = -1.
    pub final_series: ChebSeries3,
    pub per_iteration: Vec<IterationRecord>,
    /// Analytic weighted-term count accumulated over the run.
    pub term_count: u64,
    /// `t_N · sup|ω| / 2`; must be < 1 for a converged run.
    pub convergence_margin: f64,
    pub converged: bool,
}

impl ReconstructionResult {
    /// |b_{l+1,n_T+1}| of the last iteration.
    pub fn last_neglected_coeff(&self) -> f64 {
        self.per_iteration.last().map_or(0.0, |r| r.neglected_coeff)
    }
}

/// One Picard step. `truncate_to` caps the output degree and is how the
/// fast variant differs from the exact one; `None` keeps the full degree
/// `2·deg(g) + deg(ω) + 1`.
pub fn picard_step(
    g: &ChebSeries3,
    omega: &ChebSeries3,
    t_n: f64,
    truncate_to: Option<usize>,
    table: &BasisIntegralTable,
) -> (ChebSeries3, f64) {
    let m = g.degree();
    let n = omega.degree();
    let out_degree = 2 * m + n + 1;
    let mut acc = vec![Vector3::<f64>::zeros(); out_degree + 1];

    let mut add = |degree: usize, weight: f64, v: Vector3<f64>| {
        for &(d, c) in &table.entry(degree).terms {
            acc[d] += (weight * c) * v;
        }
    };

    // identity term: Σ c_i G_i
    for (i, c) in omega.coeffs.iter().enumerate() {
        add(i, 1.0, *c);
    }

    // cross term: ¼ Σ (b_i × c_j)(G_{i+j} + G_{|i-j|})
    for (i, b) in g.coeffs.iter().enumerate() {
        for (j, c) in omega.coeffs.iter().enumerate() {
            let v = b.cross(c);
            if v == Vector3::zeros() {
                continue;
            }
            add(i + j, 0.25, v);
            add(i.abs_diff(j), 0.25, v);
        }
    }

    // outer-product term, contracted as b_i (b_j · c_k) and symmetrized over
    // the (i, j) pair:
    // (1/16) Σ b_i (b_j·c_k)(G_{i+j+k} + G_{|i+j-k|} + G_{|i-j|+k} + G_{||i-j|-k|})
    for i in 0..=m {
        let b_i = g.coeffs[i];
        for j in i..=m {
            let b_j = g.coeffs[j];
            let pair_weight = if i == j { 1.0 / 16.0 } else { 2.0 / 16.0 };
            let d = j - i;
            for (k, c) in omega.coeffs.iter().enumerate() {
                // symmetrized vector: b_i (b_j·c) + b_j (b_i·c), halved by
                // the pair weight above
                let v = if i == j {
                    b_i * b_i.dot(c)
                } else {
                    (b_i * b_j.dot(c) + b_j * b_i.dot(c)) * 0.5
                };
                if v == Vector3::zeros() {
                    continue;
                }
                add(i + j + k, pair_weight, v);
                add((i + j).abs_diff(k), pair_weight, v);
                add(d + k, pair_weight, v);
                add(d.abs_diff(k), pair_weight, v);
            }
        }
    }

    let half_t = t_n / 2.0;
    for a in &mut acc {
        *a *= half_t;
    }
    let mut series = ChebSeries3::new(acc);
    let neglected = match truncate_to {
        Some(n_t) if series.degree() > n_t => series.truncate(n_t),
        _ => 0.0,
    };
    (series, neglected)
}

/// Run the full iteration from g = 0.
pub fn reconstruct(omega: &ChebSeries3, cfg: &IterConfig) -> Result<ReconstructionResult, IterError> {
    cfg.validate(omega.degree());
    let n = omega.degree();
    let sup_omega = omega.sup_norm_on_grid(128);
    let product = cfg.t_n * sup_omega;
    if product >= 2.0 {
        return Err(IterError::ConvergenceConditionViolated { product });
    }

    let truncate_to = match cfg.mode {
        IterMode::Exact => None,
        IterMode::Truncated(n_t) => Some(n_t),
    };
    // table depth covers every index the triple sum can request:
    // max G degree is 2·max_degree + n, integration adds one more
    let max_degree = match cfg.mode {
        IterMode::Exact => {
            // m_l = (2^l - 1)(n + 1)
            ((1u64 << cfg.max_iters) - 1) as usize * (n + 1)
        }
        IterMode::Truncated(n_t) => n_t,
    };
    let table = BasisIntegralTable::new(2 * max_degree + n + 2);

    let mut g = ChebSeries3::zeros(0);
    let mut records = Vec::with_capacity(cfg.max_iters);
    let mut term_count = 0u64;
    for l in 0..cfg.max_iters {
        let (next, neglected) = picard_step(&g, omega, cfg.t_n, truncate_to, &table);
        if next.coeffs.iter().any(|c| !c.x.is_finite() || !c.y.is_finite() || !c.z.is_finite()) {
            return Err(IterError::NonFinite { iteration: l + 1 });
        }
        term_count += n as u64 * (next.degree() as u64).pow(2);
        let max_delta = max_coeff_delta(&g, &next);
        records.push(IterationRecord {
            degree: next.degree(),
            neglected_coeff: neglected,
            max_coeff_delta: max_delta,
        });
        g = next;
        if let Some(tol) = cfg.stop_tol {
            if max_delta < tol {
                break;
            }
        }
    }

    Ok(ReconstructionResult {
        final_series: g,
        per_iteration: records,
        term_count,
        convergence_margin: product / 2.0,
        converged: product < 2.0,
    })
}

fn max_coeff_delta(a: &ChebSeries3, b: &ChebSeries3) -> f64 {
    let len = a.coeffs.len().max(b.coeffs.len());
    (0..len)
        .map(|i| {
            let va = a.coeffs.get(i).copied().unwrap_or_else(Vector3::zeros);
            let vb = b.coeffs.get(i).copied().unwrap_or_else(Vector3::zeros);
            (va - vb).norm()
        })
        .fold(0.0, f64::max)
}

/// Upper bound on the Rodrigues-vector error of a converged run:
/// angular-velocity error term plus the last truncation error.
#[derive(Debug, Clone, Copy)]
pub struct TruncationBound {
    /// `t_N·sup|δω| / (1 - t_N·sup|ω|/2) + |b_{l+1,n_T+1}|`
    pub tight: f64,
    /// `t_N·sup|δω| + |b_{l+1,n_T+1}|`
    pub approx: f64,
}

pub fn truncation_bound(
    result: &ReconstructionResult,
    cfg: &IterConfig,
    delta_omega_sup: f64,
) -> TruncationBound {
    let neglected = result.last_neglected_coeff();
    let omega_term = cfg.t_n * delta_omega_sup;
    TruncationBound {
        tight: omega_term / (1.0 - result.convergence_margin) + neglected,
        approx: omega_term + neglected,
    }
}

/// Degree of the exact iterate at iteration `l`: `m_l = (2^l - 1)(n + 1)`.
pub fn exact_degree(fit_degree: usize, iteration: u32) -> usize {
    ((1u64 << iteration) - 1) as usize * (fit_degree + 1)
}

/// Analytic weighted-term count `Σ_l n·m_l²` over `iters` iterations, where
/// `m_l` is the iterate degree (capped at `n_T` in truncated mode).
pub fn weighted_term_count(fit_degree: usize, mode: IterMode, iters: u32) -> u64 {
    let n = fit_degree as u64;
    (1..=iters)
        .map(|l| {
            let m = exact_degree(fit_degree, l) as u64;
            let m = match mode {
                IterMode::Exact => m,
                IterMode::Truncated(n_t) => m.min(n_t as u64),
            };
            n * m * m
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant_omega(w: f64) -> ChebSeries3 {
        ChebSeries3::new(vec![Vector3::new(w, 0.0, 0.0)])
    }

    #[test]
    fn first_step_is_pure_integral() {
        let omega = constant_omega(0.3);
        let table = BasisIntegralTable::new(8);
        let g0 = ChebSeries3::zeros(0);
        let (g1, neglected) = picard_step(&g0, &omega, 0.1, None, &table);
        assert_eq!(neglected, 0.0);
        // (t_N/2)·w·(τ+1): at τ = 1 this is w·t_N
        assert!((g1.eval(1.0) - Vector3::new(0.03, 0.0, 0.0)).norm() < 1e-15);
        assert!(g1.eval(-1.0).norm() < 1e-16);
    }

    #[test]
    fn degree_bookkeeping() {
        let omega = ChebSeries3::zeros(7); // degree 7, all zero is fine here
        let table = BasisIntegralTable::new(200);
        let mut g = ChebSeries3::zeros(0);
        let mut expected = 0usize;
        for l in 1..=3 {
            let (next, _) = picard_step(&g, &omega, 0.08, None, &table);
            expected = 2 * expected + 7 + 1;
            assert_eq!(next.degree(), expected);
            assert_eq!(next.degree(), exact_degree(7, l));
            g = next;
        }
        assert_eq!(exact_degree(7, 3), 56);
        assert_eq!(exact_degree(8, 7), 1143);
    }

    #[test]
    fn single_axis_constant_rate_matches_tangent() {
        // scalar ODE γ' = w (1 + γ²/4)  ⇒  γ(t) = 2 tan(w t / 2)
        let w = 0.1;
        let t_n = 0.08;
        let cfg = IterConfig {
            mode: IterMode::Exact,
            max_iters: 7,
            stop_tol: None,
            t_n,
        };
        let result = reconstruct(&constant_omega(w), &cfg).unwrap();
        let expected = 2.0 * (w * t_n / 2.0).tan();
        let got = result.final_series.eval(1.0);
        assert!((got.x - expected).abs() < 1e-12, "got {} want {expected}", got.x);
        assert!(got.y.abs() < 1e-15 && got.z.abs() < 1e-15);
    }

    #[test]
    fn zero_omega_stays_zero() {
        let cfg = IterConfig {
            mode: IterMode::Exact,
            max_iters: 4,
            stop_tol: None,
            t_n: 0.08,
        };
        let result = reconstruct(&constant_omega(0.0), &cfg).unwrap();
        assert!(result.final_series.max_coeff_norm() == 0.0);
    }

    #[test]
    fn convergence_condition_enforced() {
        let cfg = IterConfig {
            mode: IterMode::Exact,
            max_iters: 3,
            stop_tol: None,
            t_n: 1.0,
        };
        let err = reconstruct(&constant_omega(2.5), &cfg).unwrap_err();
        assert!(matches!(err, IterError::ConvergenceConditionViolated { .. }));
    }

    #[test]
    fn collinear_input_has_no_cross_contribution() {
        // single-axis ω keeps every b_i parallel to x, so the y/z channels
        // must stay identically zero through all iterations
        let cfg = IterConfig {
            mode: IterMode::Exact,
            max_iters: 5,
            stop_tol: None,
            t_n: 0.5,
        };
        let result = reconstruct(&constant_omega(0.8), &cfg).unwrap();
        for c in &result.final_series.coeffs {
            assert_eq!(c.y, 0.0);
            assert_eq!(c.z, 0.0);
        }
    }

    #[test]
    fn truncated_mode_caps_degree() {
        let omega = ChebSeries3::new(vec![
            Vector3::new(0.1, 0.02, -0.03),
            Vector3::new(0.01, -0.02, 0.005),
        ]);
        let cfg = IterConfig {
            mode: IterMode::Truncated(4),
            max_iters: 6,
            stop_tol: None,
            t_n: 0.2,
        };
        let result = reconstruct(&omega, &cfg).unwrap();
        assert!(result.final_series.degree() <= 4);
        for rec in &result.per_iteration {
            assert!(rec.degree <= 4);
        }
    }

    #[test]
    fn term_counts() {
        // n = 8, l = 7: m_7 = 1143, per-iteration count n·m²
        assert_eq!(exact_degree(8, 7), 1143);
        let exact = weighted_term_count(8, IterMode::Exact, 7);
        let truncated = weighted_term_count(8, IterMode::Truncated(9), 7);
        // last exact iteration dominates: 8·1143²
        assert!(exact >= 8 * 1143 * 1143);
        // truncated settles at 8·81 per iteration after the first
        assert_eq!(truncated, 7 * 8 * 81);
        // ratio of final-iteration costs: 1143²/9² = 16129, "over 10^4"
        assert_eq!(1143u64 * 1143 / (9 * 9), 16129);
    }

    #[test]
    fn l1_truncated_with_huge_cap_matches_exact() {
        assert_eq!(
            weighted_term_count(7, IterMode::Exact, 1),
            weighted_term_count(7, IterMode::Truncated(1000), 1)
        );
    }

    #[test]
    fn bound_reduces_to_neglected_term() {
        let cfg = IterConfig {
            mode: IterMode::Exact,
            max_iters: 3,
            stop_tol: None,
            t_n: 0.08,
        };
        let result = reconstruct(&constant_omega(0.1), &cfg).unwrap();
        let bound = truncation_bound(&result, &cfg, 0.0);
        assert_eq!(bound.approx, 0.0);
        assert_eq!(bound.tight, 0.0);
    }

    #[test]
    fn bound_scales_linearly_with_omega_error() {
        let cfg = IterConfig {
            mode: IterMode::Truncated(3),
            max_iters: 4,
            stop_tol: None,
            t_n: 0.08,
        };
        let omega = ChebSeries3::new(vec![
            Vector3::new(0.1, 0.0, 0.0),
            Vector3::new(0.0, 0.05, 0.0),
        ]);
        let result = reconstruct(&omega, &cfg).unwrap();
        let b1 = truncation_bound(&result, &cfg, 1e-6);
        let b2 = truncation_bound(&result, &cfg, 2e-6);
        let first1 = b1.approx - result.last_neglected_coeff();
        let first2 = b2.approx - result.last_neglected_coeff();
        assert!((first2 / first1 - 2.0).abs() < 1e-12);
    }
}
