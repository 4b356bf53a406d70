//! Fit the angular velocity over one update interval as a Chebyshev series
//! from discrete gyroscope samples, in rate form or angular-increment form.

use nalgebra::{DMatrix, Vector3};
use thiserror::Error;

use crate::chebyshev::{eval_basis, integrate_basis_segment, ChebSeries3};

#[derive(Debug, Error)]
pub enum FitError {
    /// The fit matrix is rank-deficient (e.g. duplicate sample instants).
    #[error("fit system is singular or rank-deficient")]
    SingularSystem,
}

/// Whether the batch carries angular-rate samples (rad/s) or integrated
/// angular increments (rad).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GyroKind {
    Rate,
    Increment,
}

/// N time-stamped gyro samples covering one update interval of duration
/// `t_n` seconds. Sample instants are uniform, `t_k = k·t_n/N` for
/// `k = 1..N`; increment k spans `[t_{k-1}, t_k]`.
#[derive(Debug, Clone)]
pub struct GyroBatch {
    pub kind: GyroKind,
    pub samples: Vec<Vector3<f64>>,
    pub t_n: f64,
}

impl GyroBatch {
    pub fn new(kind: GyroKind, samples: Vec<Vector3<f64>>, t_n: f64) -> Self {
        assert!(!samples.is_empty(), "batch needs at least one sample");
        assert!(t_n > 0.0, "interval duration must be positive");
        Self { kind, samples, t_n }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Mapped sample instants τ_k = 2 t_k / t_N - 1 for k = 1..N.
    pub fn mapped_instants(&self) -> Vec<f64> {
        let n = self.samples.len();
        (1..=n).map(|k| 2.0 * k as f64 / n as f64 - 1.0).collect()
    }
}

/// Fit degree; must not exceed N - 1.
#[derive(Debug, Clone, Copy)]
pub struct FitConfig {
    pub degree: usize,
}

/// Rate matrix `A_ω[k][i] = F_i(τ_k)`, N×(n+1).
pub fn build_rate_matrix(taus: &[f64], degree: usize) -> DMatrix<f64> {
    DMatrix::from_fn(taus.len(), degree + 1, |k, i| eval_basis(i, taus[k]))
}

/// Increment matrix `A_θ[k][i] = G_{i,[τ_{k-1},τ_k]}`, N×(n+1). `taus` is the
/// full grid τ_0 = -1 < τ_1 < … < τ_N = 1 (N+1 entries).
pub fn build_increment_matrix(taus: &[f64], degree: usize) -> DMatrix<f64> {
    DMatrix::from_fn(taus.len() - 1, degree + 1, |k, i| {
        integrate_basis_segment(i, taus[k], taus[k + 1])
    })
}

/// Cached solver for a fixed (N, n) grid. The matrix depends only on the
/// mapped instants, so one fitter serves every update interval of a run.
#[derive(Debug, Clone)]
pub struct AngularVelocityFitter {
    n_samples: usize,
    degree: usize,
    rate_matrix: DMatrix<f64>,
    increment_matrix: DMatrix<f64>,
}

impl AngularVelocityFitter {
    pub fn new(n_samples: usize, cfg: FitConfig) -> Self {
        assert!(cfg.degree < n_samples, "fit degree must be at most N - 1");
        let instants: Vec<f64> =
            (1..=n_samples).map(|k| 2.0 * k as f64 / n_samples as f64 - 1.0).collect();
        let mut grid = vec![-1.0];
        grid.extend_from_slice(&instants);
        Self {
            n_samples,
            degree: cfg.degree,
            rate_matrix: build_rate_matrix(&instants, cfg.degree),
            increment_matrix: build_increment_matrix(&grid, cfg.degree),
        }
    }

    /// Solve for the coefficients c_0..c_n of the fitted angular velocity.
    /// Increment batches scale the right-hand side by 2/t_N. Square systems
    /// (n = N-1) go through LU with partial pivoting, overdetermined ones
    /// through QR least squares.
    pub fn fit(&self, batch: &GyroBatch) -> Result<ChebSeries3, FitError> {
        assert_eq!(batch.len(), self.n_samples, "batch size mismatch");
        let n = self.n_samples;
        let scale = match batch.kind {
            GyroKind::Rate => 1.0,
            GyroKind::Increment => 2.0 / batch.t_n,
        };
        let rhs = DMatrix::from_fn(n, 3, |k, c| scale * batch.samples[k][c]);
        let matrix = match batch.kind {
            GyroKind::Rate => &self.rate_matrix,
            GyroKind::Increment => &self.increment_matrix,
        };
        let solution = if self.degree + 1 == n {
            matrix
                .clone()
                .lu()
                .solve(&rhs)
                .ok_or(FitError::SingularSystem)?
        } else {
            let qr = matrix.clone().qr();
            let r = qr.r();
            if r.diagonal().iter().any(|d| d.abs() < 1e-12) {
                return Err(FitError::SingularSystem);
            }
            let qtb = qr.q().transpose() * rhs;
            r.solve_upper_triangular(&qtb).ok_or(FitError::SingularSystem)?
        };
        let coeffs = (0..=self.degree)
            .map(|i| Vector3::new(solution[(i, 0)], solution[(i, 1)], solution[(i, 2)]))
            .collect();
        Ok(ChebSeries3::new(coeffs))
    }
}

/// One-shot fit without reusing the cached matrices.
pub fn fit_angular_velocity(batch: &GyroBatch, cfg: FitConfig) -> Result<ChebSeries3, FitError> {
    AngularVelocityFitter::new(batch.len(), cfg).fit(batch)
}
