//! Quaternion attitude: conversion from Rodrigues vectors, composition of
//! per-interval increments, and the attitude error metric.
//!
//! Hamilton convention, scalar-first, body-frame (right) increment
//! composition: `q_global = q_prev ∘ q_inc`.

use nalgebra::Vector3;

use crate::chebyshev::ChebSeries3;

/// Unit quaternion, scalar-first. Renormalized after every product so the
/// unit-norm invariant holds to machine precision throughout a long chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const IDENTITY: Self = Self { w: 1.0, x: 0.0, y: 0.0, z: 0.0 };

    pub fn new_normalized(w: f64, x: f64, y: f64, z: f64) -> Self {
        let norm = (w * w + x * x + y * y + z * z).sqrt();
        Self { w: w / norm, x: x / norm, y: y / norm, z: z / norm }
    }

    /// `q = (2, g) / sqrt(4 + |g|²)`: the unit quaternion of the rotation
    /// with Rodrigues vector `g = 2 tan(θ/2)·axis`.
    pub fn from_rodrigues(g: Vector3<f64>) -> Self {
        let scale = (4.0 + g.norm_squared()).sqrt();
        Self { w: 2.0 / scale, x: g.x / scale, y: g.y / scale, z: g.z / scale }
    }

    /// Exponential map `(cos(|φ|/2), sin(|φ|/2)·φ/|φ|)`; small rotations go
    /// through the series `sin(x)/x ≈ 1 - x²/6` to avoid the 0/0.
    pub fn from_rotation_vector(phi: Vector3<f64>) -> Self {
        let angle = phi.norm();
        let half = angle / 2.0;
        let k = if angle < 1e-8 { 0.5 * (1.0 - half * half / 6.0) } else { half.sin() / angle };
        Self::new_normalized(half.cos(), k * phi.x, k * phi.y, k * phi.z)
    }

    /// Recover `g = 2·vec(q)/scalar(q)`; inverse of `from_rodrigues` away
    /// from the π-rotation singularity.
    pub fn to_rodrigues(self) -> Vector3<f64> {
        Vector3::new(self.x, self.y, self.z) * (2.0 / self.w)
    }

    pub fn conjugate(self) -> Self {
        Self { w: self.w, x: -self.x, y: -self.y, z: -self.z }
    }

    pub fn vector_part(self) -> Vector3<f64> {
        Vector3::new(self.x, self.y, self.z)
    }

    /// Hamilton product `self ∘ rhs`, renormalized.
    pub fn compose(self, rhs: Self) -> Self {
        let (a, b) = (self, rhs);
        Self::new_normalized(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )
    }

    pub fn norm(self) -> f64 {
        (self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

/// `ε_att = 2 |[q*_true ∘ q_est]_{2:4}|`, with both arguments canonicalized
/// to nonnegative scalar part first so antipodal quaternions compare equal.
pub fn attitude_error(q_true: Quaternion, q_est: Quaternion) -> f64 {
    let canon = |q: Quaternion| if q.w < 0.0 { Quaternion { w: -q.w, x: -q.x, y: -q.y, z: -q.z } } else { q };
    let delta = canon(q_true).conjugate().compose(canon(q_est));
    let delta = canon(delta);
    2.0 * delta.vector_part().norm()
}

/// A time-stamped quaternion trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrackSource {
    Reconstructed,
    Truth,
    Baseline,
}

#[derive(Debug, Clone)]
pub struct AttitudeTrack {
    pub timestamps: Vec<f64>,
    pub quaternions: Vec<Quaternion>,
    pub source: TrackSource,
}

impl AttitudeTrack {
    pub fn len(&self) -> usize {
        self.timestamps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.timestamps.is_empty()
    }
}

/// Chain per-interval incremental Rodrigues-vector series into a global
/// attitude track. Interval `m` covers `[m·t_n, (m+1)·t_n]`; within it
/// `q(t) = q_start ∘ q(ĝ(τ))` and the interval-end quaternion seeds the
/// next interval. Emits `samples_per_interval` points per interval
/// (interval end included, start excluded except for the very first point).
pub fn chain_intervals(
    per_interval: &[ChebSeries3],
    t_n: f64,
    q_0: Quaternion,
    samples_per_interval: usize,
) -> AttitudeTrack {
    assert!(samples_per_interval >= 1);
    let mut timestamps = Vec::with_capacity(per_interval.len() * samples_per_interval + 1);
    let mut quaternions = Vec::with_capacity(timestamps.capacity());
    timestamps.push(0.0);
    quaternions.push(q_0);
    let mut q_start = q_0;
    for (m, series) in per_interval.iter().enumerate() {
        let t_start = m as f64 * t_n;
        for j in 1..=samples_per_interval {
            let frac = j as f64 / samples_per_interval as f64;
            let tau = 2.0 * frac - 1.0;
            let q = q_start.compose(Quaternion::from_rodrigues(series.eval(tau)));
            timestamps.push(t_start + frac * t_n);
            quaternions.push(q);
        }
        q_start = *quaternions.last().unwrap();
    }
    AttitudeTrack { timestamps, quaternions, source: TrackSource::Reconstructed }
}
