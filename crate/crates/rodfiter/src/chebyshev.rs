//! Chebyshev polynomials of the first kind: evaluation, basis products,
//! analytic integration of the basis, and coefficient extraction by cosine
//! sampling. Everything here lives on the mapped interval `τ ∈ [-1, 1]`.

use nalgebra::Vector3;

/// Evaluate the degree-`i` Chebyshev polynomial of the first kind at `tau`
/// by the three-term recurrence `F_{i+1} = 2τ F_i - F_{i-1}`.
pub fn eval_basis(i: usize, tau: f64) -> f64 {
    debug_assert!((-1.0..=1.0).contains(&tau), "tau outside [-1, 1]: {tau}");
    match i {
        0 => 1.0,
        1 => tau,
        _ => {
            let mut prev = 1.0;
            let mut cur = tau;
            for _ in 1..i {
                let next = 2.0 * tau * cur - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// Product identity `F_j · F_k = ½ (F_{j+k} + F_{|j-k|})`.
///
/// Returns the two resulting degrees; each carries weight 1/2.
pub fn basis_product(j: usize, k: usize) -> (usize, usize) {
    (j + k, j.abs_diff(k))
}

/// A 3-vector-valued Chebyshev series over `τ ∈ [-1, 1]`.
///
/// `coeffs[i]` is the coefficient of the degree-`i` basis polynomial; the
/// list is dense, so a series of degree `m` has exactly `m + 1` entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebSeries3 {
    pub coeffs: Vec<Vector3<f64>>,
}

impl ChebSeries3 {
    pub fn new(coeffs: Vec<Vector3<f64>>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least one coefficient");
        Self { coeffs }
    }

    /// The zero series of the given degree.
    pub fn zeros(degree: usize) -> Self {
        Self { coeffs: vec![Vector3::zeros(); degree + 1] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Evaluate at `tau` by the backward Clenshaw recurrence.
    pub fn eval(&self, tau: f64) -> Vector3<f64> {
        debug_assert!((-1.0..=1.0).contains(&tau), "tau outside [-1, 1]: {tau}");
        let n = self.coeffs.len();
        if n == 1 {
            return self.coeffs[0];
        }
        let two_tau = 2.0 * tau;
        let mut b1 = Vector3::zeros();
        let mut b2 = Vector3::zeros();
        for k in (1..n).rev() {
            let b = two_tau * b1 - b2 + self.coeffs[k];
            b2 = b1;
            b1 = b;
        }
        self.coeffs[0] + tau * b1 - b2
    }

    /// Truncate to the given degree, returning the magnitude of the first
    /// neglected coefficient (0 when nothing is dropped). The recorded
    /// magnitude feeds the truncation-error diagnostic.
    pub fn truncate(&mut self, degree: usize) -> f64 {
        let neglected = if self.degree() > degree {
            self.coeffs[degree + 1].norm()
        } else {
            0.0
        };
        self.coeffs.truncate(degree + 1);
        neglected
    }

    /// Largest |coefficient| over all degrees.
    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// sup |series(τ)| estimated on a uniform grid of `points` samples.
    pub fn sup_norm_on_grid(&self, points: usize) -> f64 {
        (0..points)
            .map(|k| -1.0 + 2.0 * k as f64 / (points - 1) as f64)
            .map(|tau| self.eval(tau).norm())
            .fold(0.0, f64::max)
    }
}

/// Sparse coefficient form of `G_{i,[-1,τ]} = ∫_{-1}^{τ} F_i`, a Chebyshev
/// series of degree `i + 1` with at most three nonzero entries.
#[derive(Debug, Clone)]
pub struct SparseIntegral {
    /// (degree, coefficient) pairs.
    pub terms: Vec<(usize, f64)>,
}

impl SparseIntegral {
    pub fn degree(&self) -> usize {
        self.terms.iter().map(|&(d, _)| d).max().unwrap_or(0)
    }

    /// Evaluate at a single point.
    pub fn eval(&self, tau: f64) -> f64 {
        self.terms.iter().map(|&(d, c)| c * eval_basis(d, tau)).sum()
    }
}

/// Antiderivative of the degree-`i` basis polynomial, anchored so that the
/// result vanishes at τ = -1:
///
/// * `i = 0`: `F_1 + F_0`
/// * `i = 1`: `¼ F_2 - ¼ F_0`
/// * `i ≥ 2`: `F_{i+1}/(2(i+1)) - F_{i-1}/(2(i-1)) - (-1)^i/(i²-1) · F_0`
pub fn integrate_basis(i: usize) -> SparseIntegral {
    match i {
        0 => SparseIntegral { terms: vec![(0, 1.0), (1, 1.0)] },
        1 => SparseIntegral { terms: vec![(0, -0.25), (2, 0.25)] },
        _ => {
            let i_f = i as f64;
            let sign = if i.is_multiple_of(2) { 1.0 } else { -1.0 };
            SparseIntegral {
                terms: vec![
                    (0, -sign / (i_f * i_f - 1.0)),
                    (i - 1, -1.0 / (2.0 * (i_f - 1.0))),
                    (i + 1, 1.0 / (2.0 * (i_f + 1.0))),
                ],
            }
        }
    }
}

/// `G_{i,[τ_a,τ_b]} = ∫_{τ_a}^{τ_b} F_i`, by differencing the anchored
/// antiderivative at the two endpoints.
pub fn integrate_basis_segment(i: usize, tau_a: f64, tau_b: f64) -> f64 {
    debug_assert!(-1.0 <= tau_a && tau_a <= tau_b && tau_b <= 1.0);
    let g = integrate_basis(i);
    g.eval(tau_b) - g.eval(tau_a)
}

/// Precomputed `integrate_basis` entries for every degree up to `max_degree`.
///
/// The iteration core looks these up for every term of its double and triple
/// sums; they are pure functions of degree, so one table serves a whole
/// reconstruction (and may be shared across threads).
#[derive(Debug, Clone)]
pub struct BasisIntegralTable {
    entries: Vec<SparseIntegral>,
}

impl BasisIntegralTable {
    pub fn new(max_degree: usize) -> Self {
        Self { entries: (0..=max_degree).map(integrate_basis).collect() }
    }

    pub fn max_degree(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entry(&self, i: usize) -> &SparseIntegral {
        &self.entries[i]
    }
}

/// Chebyshev coefficients of `f` up to degree `max_degree` by discrete cosine
/// sampling with `samples` points:
///
/// `β_j ≈ (2 - δ_{0j})/P · Σ_k cos(jπ(k+½)/P) · f(cos(π(k+½)/P))`
pub fn coeffs_by_cosine_sampling<F>(f: F, max_degree: usize, samples: usize) -> ChebSeries3
where
    F: Fn(f64) -> Vector3<f64>,
{
    assert!(samples > max_degree, "need at least max_degree + 1 samples");
    let p = samples as f64;
    let values: Vec<(f64, Vector3<f64>)> = (0..samples)
        .map(|k| {
            let angle = std::f64::consts::PI * (k as f64 + 0.5) / p;
            (angle, f(angle.cos()))
        })
        .collect();
    let coeffs = (0..=max_degree)
        .map(|j| {
            let scale = if j == 0 { 1.0 / p } else { 2.0 / p };
            let sum: Vector3<f64> = values
                .iter()
                .map(|&(angle, v)| (j as f64 * angle).cos() * v)
                .sum();
            scale * sum
        })
        .collect();
    ChebSeries3::new(coeffs)
}
