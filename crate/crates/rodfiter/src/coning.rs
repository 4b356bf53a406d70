//! Analytic coning-motion ground truth and gyro-measurement synthesis.
//!
//! The coning motion has closed forms for the angular velocity, the absolute
//! Rodrigues vector, the attitude quaternion, and the incremental Rodrigues
//! vector, which makes it the standard accuracy benchmark for attitude
//! integration algorithms.

use nalgebra::Vector3;
use thiserror::Error;

use crate::attitude::Quaternion;
use crate::chebyshev::{coeffs_by_cosine_sampling, ChebSeries3};
use crate::fitting::{GyroBatch, GyroKind};

#[derive(Debug, Error)]
pub enum ConingError {
    /// The incremental rotation reached π; the Rodrigues vector is undefined.
    #[error("incremental rotation angle reached pi; Rodrigues vector singular")]
    SingularRodrigues,
}

/// Half-cone angle α and coning frequency Ω; phase origin at t = 0.
#[derive(Debug, Clone, Copy)]
pub struct ConingParams {
    pub alpha: f64,
    pub omega: f64,
}

impl ConingParams {
    pub fn new(alpha: f64, omega: f64) -> Self {
        assert!(alpha > 0.0 && alpha < std::f64::consts::FRAC_PI_2);
        assert!(omega > 0.0);
        Self { alpha, omega }
    }

    /// α = 10°, Ω = 0.74π rad/s.
    pub fn paper_defaults() -> Self {
        Self::new(10f64.to_radians(), 0.74 * std::f64::consts::PI)
    }

    /// |ω(t)| is constant: `2 Ω sin(α/2)`.
    pub fn omega_magnitude(&self) -> f64 {
        2.0 * self.omega * (self.alpha / 2.0).sin()
    }
}

/// Additive gyro error; bias only.
#[derive(Debug, Clone, Copy, Default)]
pub struct ErrorModel {
    pub bias: Vector3<f64>,
}

/// `ω(t) = Ω [-2 sin²(α/2), -sin(α) sin(Ωt), sin(α) cos(Ωt)]`
pub fn omega_true(p: &ConingParams, t: f64) -> Vector3<f64> {
    let half = (p.alpha / 2.0).sin();
    let s = p.alpha.sin();
    let phase = p.omega * t;
    p.omega * Vector3::new(-2.0 * half * half, -s * phase.sin(), s * phase.cos())
}

/// Absolute Rodrigues vector `g(t) = 2 tan(α/2) [0, cos(Ωt), sin(Ωt)]`.
pub fn rodrigues_true(p: &ConingParams, t: f64) -> Vector3<f64> {
    let amp = 2.0 * (p.alpha / 2.0).tan();
    let phase = p.omega * t;
    Vector3::new(0.0, amp * phase.cos(), amp * phase.sin())
}

/// Attitude quaternion of the true motion, `q = (2 + g)/sqrt(4 + |g|²)`.
pub fn quat_true(p: &ConingParams, t: f64) -> Quaternion {
    Quaternion::from_rodrigues(rodrigues_true(p, t))
}

/// Incremental Rodrigues vector over `[t_start, t]`.
///
/// For `t_start = 0` this is the closed form
/// `Δg(t) = 2 tan(α/2)/(1 + cos(Ωt) tan²(α/2)) ·
///          [-sin(Ωt) tan(α/2), cos(Ωt) - 1, sin(Ωt)]`;
/// other start times go through quaternion composition
/// `conj(q(t_start)) ∘ q(t)` converted back to Rodrigues form.
pub fn delta_rodrigues_true(
    p: &ConingParams,
    t: f64,
    t_start: f64,
) -> Result<Vector3<f64>, ConingError> {
    if t_start == 0.0 {
        let tan_half = (p.alpha / 2.0).tan();
        let phase = p.omega * t;
        let denom = 1.0 + phase.cos() * tan_half * tan_half;
        if denom.abs() < 1e-12 {
            return Err(ConingError::SingularRodrigues);
        }
        let scale = 2.0 * tan_half / denom;
        Ok(scale * Vector3::new(-phase.sin() * tan_half, phase.cos() - 1.0, phase.sin()))
    } else {
        let q_rel = quat_true(p, t_start).conjugate().compose(quat_true(p, t));
        if q_rel.w.abs() < 1e-12 {
            return Err(ConingError::SingularRodrigues);
        }
        // canonicalize so the increment is the short rotation
        let q_rel = if q_rel.w < 0.0 {
            Quaternion { w: -q_rel.w, x: -q_rel.x, y: -q_rel.y, z: -q_rel.z }
        } else {
            q_rel
        };
        Ok(q_rel.to_rodrigues())
    }
}

/// Exact angular increment `∫_{t_a}^{t_b} ω dt` from the closed-form
/// antiderivative of the coning angular velocity.
pub fn true_increment(p: &ConingParams, t_a: f64, t_b: f64) -> Vector3<f64> {
    let half = (p.alpha / 2.0).sin();
    let s = p.alpha.sin();
    let (pa, pb) = (p.omega * t_a, p.omega * t_b);
    Vector3::new(
        -2.0 * p.omega * half * half * (t_b - t_a),
        s * (pb.cos() - pa.cos()),
        s * (pb.sin() - pa.sin()),
    )
}

/// Synthesize one update interval of gyro measurements starting at
/// `t_start`: N uniform samples over duration `t_n`, with the bias of `e`
/// added (as rate for Rate kind, integrated over a sample period for
/// Increment kind).
pub fn synthesize_batch(
    p: &ConingParams,
    e: &ErrorModel,
    t_start: f64,
    t_n: f64,
    n: usize,
    kind: GyroKind,
) -> GyroBatch {
    assert!(n >= 1);
    let dt = t_n / n as f64;
    let samples = (1..=n)
        .map(|k| {
            let t_k = t_start + k as f64 * dt;
            match kind {
                GyroKind::Rate => omega_true(p, t_k) + e.bias,
                GyroKind::Increment => true_increment(p, t_k - dt, t_k) + e.bias * dt,
            }
        })
        .collect();
    GyroBatch::new(kind, samples, t_n)
}

/// Chebyshev coefficients of the true incremental Rodrigues vector over the
/// interval `[t_start, t_start + t_n]`, by cosine sampling `Δg` at the
/// mapped time `t = t_start + (t_n/2)(1 + τ)`.
pub fn true_coeff_oracle(
    p: &ConingParams,
    t_start: f64,
    t_n: f64,
    max_degree: usize,
    samples: usize,
) -> ChebSeries3 {
    coeffs_by_cosine_sampling(
        |tau| {
            let t = t_start + (t_n / 2.0) * (1.0 + tau);
            delta_rodrigues_true(p, t, t_start)
                .expect("paper-scale intervals never reach the pi singularity")
        },
        max_degree,
        samples,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attitude::attitude_error;

    fn p() -> ConingParams {
        ConingParams::paper_defaults()
    }

    #[test]
    fn omega_at_origin() {
        let w = omega_true(&p(), 0.0);
        assert!((w.x - (-0.035318610130993)).abs() < 1e-12);
        assert!(w.y.abs() < 1e-15);
        assert!((w.z - 0.403693561058086).abs() < 1e-12);
    }

    #[test]
    fn omega_magnitude_constant() {
        let expected = p().omega_magnitude();
        assert!((expected - 0.405235604878623).abs() < 1e-12);
        for k in 0..200 {
            let t = k as f64 * 0.013;
            assert!((omega_true(&p(), t).norm() - expected).abs() < 1e-13);
        }
    }

    #[test]
    fn rodrigues_at_origin() {
        let g = rodrigues_true(&p(), 0.0);
        assert!((g.y - 2.0 * (5f64.to_radians()).tan()).abs() < 1e-15);
        assert!((g.y - 0.17497732).abs() < 1e-7);
        assert_eq!((g.x, g.z), (0.0, 0.0));
        // rotation angle 2 atan(|g|/2) = alpha
        let angle = 2.0 * (g.norm() / 2.0).atan();
        assert!((angle - 10f64.to_radians()).abs() < 1e-14);
    }

    #[test]
    fn rodrigues_magnitude_constant() {
        let expected = 2.0 * (p().alpha / 2.0).tan();
        for k in 0..500 {
            let t = k as f64 * 0.004;
            assert!((rodrigues_true(&p(), t).norm() - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn rodrigues_satisfies_kinematics() {
        // finite-difference dg/dt vs (I + ½ g× + ¼ g gᵀ) ω
        let h = 1e-6;
        for k in 0..20 {
            let t = 0.05 + k as f64 * 0.1;
            let g = rodrigues_true(&p(), t);
            let gdot_fd = (rodrigues_true(&p(), t + h) - rodrigues_true(&p(), t - h)) / (2.0 * h);
            let w = omega_true(&p(), t);
            let gdot = w + 0.5 * g.cross(&w) + 0.25 * g * g.dot(&w);
            assert!((gdot_fd - gdot).norm() < 2e-6, "t = {t}");
        }
    }

    #[test]
    fn delta_rodrigues_zero_at_start() {
        assert!(delta_rodrigues_true(&p(), 0.0, 0.0).unwrap().norm() < 1e-15);
        assert!(delta_rodrigues_true(&p(), 0.32, 0.32).unwrap().norm() < 1e-13);
    }

    #[test]
    fn delta_rodrigues_matches_quaternion_composition() {
        // closed form at t_start = 0 vs conj(q(0)) ∘ q(t)
        for k in 1..=40 {
            let t = k as f64 * 0.01;
            let dg = delta_rodrigues_true(&p(), t, 0.0).unwrap();
            let q_rel = quat_true(&p(), 0.0).conjugate().compose(quat_true(&p(), t));
            let q_dg = Quaternion::from_rodrigues(dg);
            assert!(attitude_error(q_rel, q_dg) < 1e-13, "t = {t}");
        }
    }

    #[test]
    fn delta_rodrigues_consistency_random_pairs() {
        // composition consistency on a spread of (t_start, t) pairs
        for i in 0..10 {
            for j in 1..=10 {
                let t_start = i as f64 * 0.17;
                let t = t_start + j as f64 * 0.023;
                let dg = delta_rodrigues_true(&p(), t, t_start).unwrap();
                let q_chain = quat_true(&p(), t_start).compose(Quaternion::from_rodrigues(dg));
                assert!(attitude_error(quat_true(&p(), t), q_chain) < 1e-12);
            }
        }
    }

    #[test]
    fn delta_rodrigues_small_time_matches_integral() {
        let t = 1e-4;
        let dg = delta_rodrigues_true(&p(), t, 0.0).unwrap();
        let inc = true_increment(&p(), 0.0, t);
        assert!((dg - inc).norm() / inc.norm() < 1e-6);
    }

    #[test]
    fn increment_closed_form() {
        assert!(true_increment(&p(), 0.3, 0.3).norm() == 0.0);
        // full coning period: transverse components cancel
        let period = 2.0 * std::f64::consts::PI / p().omega;
        let inc = true_increment(&p(), 0.0, period);
        let half = (p().alpha / 2.0).sin();
        assert!((inc.x - (-2.0 * p().omega * half * half * period)).abs() < 1e-14);
        assert!(inc.y.abs() < 1e-14 && inc.z.abs() < 1e-14);
    }

    #[test]
    fn increment_matches_quadrature() {
        // Simpson refinement of ∫ ω over [0.013, 0.047]
        let (a, b) = (0.013, 0.047);
        let n = 4096;
        let h = (b - a) / n as f64;
        let mut sum = omega_true(&p(), a) + omega_true(&p(), b);
        for i in 1..n {
            let w = omega_true(&p(), a + i as f64 * h);
            sum += if i % 2 == 1 { 4.0 * w } else { 2.0 * w };
        }
        let quad = sum * (h / 3.0);
        assert!((true_increment(&p(), a, b) - quad).norm() < 1e-13);
    }

    #[test]
    fn batch_increments_telescope() {
        let batch = synthesize_batch(&p(), &ErrorModel::default(), 0.16, 0.08, 8, GyroKind::Increment);
        let total: Vector3<f64> = batch.samples.iter().sum();
        let whole = true_increment(&p(), 0.16, 0.24);
        assert!((total - whole).norm() < 1e-15);
    }

    #[test]
    fn rate_bias_is_additive() {
        let e = ErrorModel { bias: Vector3::new(1e-6, 0.0, 0.0) };
        let clean = synthesize_batch(&p(), &ErrorModel::default(), 0.0, 0.08, 8, GyroKind::Rate);
        let biased = synthesize_batch(&p(), &e, 0.0, 0.08, 8, GyroKind::Rate);
        for (c, b) in clean.samples.iter().zip(&biased.samples) {
            assert!(((b - c) - Vector3::new(1e-6, 0.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn oracle_self_convergence() {
        let coarse = true_coeff_oracle(&p(), 0.0, 0.08, 40, 512);
        let fine = true_coeff_oracle(&p(), 0.0, 0.08, 40, 4096);
        for i in 0..=40 {
            assert!((coarse.coeffs[i] - fine.coeffs[i]).norm() < 1e-13, "degree {i}");
        }
    }

    #[test]
    fn oracle_tail_hits_machine_floor() {
        let oracle = true_coeff_oracle(&p(), 0.0, 0.08, 40, 2048);
        for i in 32..=40 {
            assert!(oracle.coeffs[i].norm() < 1e-14, "degree {i} above floor");
        }
    }
}
