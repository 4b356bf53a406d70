//! Classical two-sample attitude update, the comparison baseline.
//!
//! Each update consumes two consecutive angular increments and applies the
//! standard coning correction: `φ = Δθ_1 + Δθ_2 + (2/3) Δθ_1 × Δθ_2`, then
//! advances the attitude by the exact exponential map of φ.

use nalgebra::Vector3;

use crate::attitude::Quaternion;

/// Exact exponential map `(cos(|φ|/2), sin(|φ|/2)·φ/|φ|)`.
pub fn quat_from_rotation_vector(phi: Vector3<f64>) -> Quaternion {
    Quaternion::from_rotation_vector(phi)
}

#[derive(Debug, Clone, Copy)]
pub struct TwoSampleState {
    pub attitude: Quaternion,
    /// Duration of one update (two sample periods).
    pub update_duration: f64,
}

impl TwoSampleState {
    pub fn new(attitude: Quaternion, update_duration: f64) -> Self {
        Self { attitude, update_duration }
    }
}

/// Advance the attitude by one two-sample update.
pub fn two_sample_update(
    state: &TwoSampleState,
    dtheta_1: Vector3<f64>,
    dtheta_2: Vector3<f64>,
) -> TwoSampleState {
    let phi = dtheta_1 + dtheta_2 + (2.0 / 3.0) * dtheta_1.cross(&dtheta_2);
    TwoSampleState {
        attitude: state.attitude.compose(quat_from_rotation_vector(phi)),
        update_duration: state.update_duration,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attitude::attitude_error;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn rotation_vector_zero_is_identity() {
        assert_eq!(quat_from_rotation_vector(Vector3::zeros()), Quaternion::IDENTITY);
    }

    #[test]
    fn rotation_vector_quarter_turn() {
        let q = quat_from_rotation_vector(Vector3::new(FRAC_PI_2, 0.0, 0.0));
        assert!((q.w - (FRAC_PI_2 / 2.0).cos()).abs() < 1e-15);
        assert!((q.x - (FRAC_PI_2 / 2.0).sin()).abs() < 1e-15);
    }

    #[test]
    fn rotation_vector_matches_rodrigues_parameterization() {
        for phi in [
            Vector3::new(0.3, -0.1, 0.2),
            Vector3::new(1e-9, 0.0, 0.0),
            Vector3::new(0.0, 0.7, -0.4),
        ] {
            let q1 = quat_from_rotation_vector(phi);
            let angle = phi.norm();
            let q2 = if angle > 0.0 {
                Quaternion::from_rodrigues(phi * (2.0 * (angle / 2.0).tan() / angle))
            } else {
                Quaternion::IDENTITY
            };
            assert!(attitude_error(q1, q2) < 1e-13);
        }
    }

    #[test]
    fn equal_increments_rotate_without_correction() {
        let state = TwoSampleState::new(Quaternion::IDENTITY, 0.02);
        let half = Vector3::new(0.15, 0.0, 0.0);
        let next = two_sample_update(&state, half, half);
        let expected = quat_from_rotation_vector(Vector3::new(0.3, 0.0, 0.0));
        assert!(attitude_error(expected, next.attitude) < 1e-14);
    }

    #[test]
    fn zero_increments_leave_state_unchanged() {
        let q = quat_from_rotation_vector(Vector3::new(0.2, 0.1, -0.3));
        let state = TwoSampleState::new(q, 0.02);
        let next = two_sample_update(&state, Vector3::zeros(), Vector3::zeros());
        assert!(attitude_error(q, next.attitude) < 1e-15);
    }

    #[test]
    fn coning_correction_is_nonzero_for_coning_increments() {
        use crate::coning::{true_increment, ConingParams};
        let p = ConingParams::paper_defaults();
        let d1 = true_increment(&p, 0.0, 0.01);
        let d2 = true_increment(&p, 0.01, 0.02);
        assert!(d1.cross(&d2).norm() > 1e-8);
    }
}
