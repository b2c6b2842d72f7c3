//! SO(3) through the constrained pair (α, β), α² + |β|² = 1.
//!
//! The orthogonal matrix of a rotor is
//!
//! ```text
//! u_ij = (1 − 2β²) δ_ij + 2 β_i β_j + 2 α ε_ijk β_k
//! ```
//!
//! with row `i` the coordinate index and column `j` the frame index. The map
//! is two-to-one: `(α, β)` and `(−α, −β)` give the same matrix. The sign of α
//! is always carried explicitly and never recomputed from β.

use crate::error::{Error, Result};
use crate::linalg::{delta, eps, Mat3, Vec3};
use crate::scalar::Scalar;

/// Slack allowed on |β|² ≤ 1 when building a rotor from β alone.
pub const UNIT_BALL_SLACK: f64 = 1e-12;

/// Branch of α = ±√(1 − β²).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaSign {
    Positive,
    Negative,
}

impl AlphaSign {
    fn apply<T: Scalar>(self, magnitude: T) -> T {
        match self {
            AlphaSign::Positive => magnitude,
            AlphaSign::Negative => -magnitude,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotor<T> {
    pub alpha: T,
    pub beta: Vec3<T>,
}

impl<T: Scalar> Rotor<T> {
    pub fn identity() -> Self {
        Rotor {
            alpha: T::one(),
            beta: Vec3::zeros(),
        }
    }

    /// Builds a rotor from β with α = sign·√(max(0, 1 − |β|²)).
    pub fn from_beta(beta: Vec3<T>, sign: AlphaSign) -> Result<Self> {
        let b2 = beta.norm_sq();
        if !(b2 <= T::one() + T::lit(UNIT_BALL_SLACK)) {
            return Err(Error::Domain(format!(
                "beta outside unit ball: |beta|^2 = {b2}"
            )));
        }
        let alpha = sign.apply((T::one() - b2).max(T::zero()).sqrt());
        Ok(Rotor { alpha, beta })
    }

    /// Projects an arbitrary nonzero 4-vector onto the unit sphere.
    pub fn normalized(alpha: T, beta: Vec3<T>) -> Result<Self> {
        let n = (alpha * alpha + beta.norm_sq()).sqrt();
        if !(n > T::zero()) || !n.is_finite() {
            return Err(Error::Domain("cannot normalize a zero rotor".into()));
        }
        Ok(Rotor {
            alpha: alpha / n,
            beta: beta.scale(T::one() / n),
        })
    }

    /// |α² + β² − 1|
    pub fn constraint_defect(&self) -> T {
        (self.alpha * self.alpha + self.beta.norm_sq() - T::one()).abs()
    }

    pub fn negated(&self) -> Self {
        Rotor {
            alpha: -self.alpha,
            beta: -self.beta,
        }
    }

    /// The rotor of u(self) · u(other), i.e. the Hamilton product other ⊗ self.
    pub fn compose(&self, other: &Self) -> Self {
        let (alpha, beta) = compose_raw(self.alpha, &self.beta, other.alpha, &other.beta);
        Rotor { alpha, beta }
    }

    /// Four-vector dot product, used to keep the double-cover sign continuous.
    pub fn dot(&self, other: &Self) -> T {
        self.alpha * other.alpha + self.beta.dot(&other.beta)
    }

    /// The orthogonal matrix u^i_γ.
    pub fn to_matrix(&self) -> Mat3<T> {
        let b = &self.beta;
        let two = T::two();
        let diag = T::one() - two * b.norm_sq();
        Mat3::from_fn(|i, j| {
            let mut v = diag * delta(i, j) + two * b[i] * b[j];
            for k in 0..3 {
                v = v + two * self.alpha * b[k] * eps(i, j, k);
            }
            v
        })
    }

    /// The inverse matrix u^γ_i (row γ, column i); the α term flips sign.
    pub fn to_matrix_inv(&self) -> Mat3<T> {
        let b = &self.beta;
        let two = T::two();
        let diag = T::one() - two * b.norm_sq();
        Mat3::from_fn(|j, i| {
            let mut v = diag * delta(i, j) + two * b[j] * b[i];
            for k in 0..3 {
                v = v - two * self.alpha * b[k] * eps(j, i, k);
            }
            v
        })
    }

    /// Derivative of [`to_matrix`](Self::to_matrix) along a direction in which
    /// α and β change by `d_alpha`, `d_beta`.
    pub fn matrix_derivative(&self, d_alpha: T, d_beta: &Vec3<T>) -> Mat3<T> {
        let b = &self.beta;
        let two = T::two();
        let d_diag = -two * two * b.dot(d_beta);
        Mat3::from_fn(|i, j| {
            let mut v = d_diag * delta(i, j) + two * (d_beta[i] * b[j] + b[i] * d_beta[j]);
            for k in 0..3 {
                v = v + two * eps::<T>(i, j, k) * (d_alpha * b[k] + self.alpha * d_beta[k]);
            }
            v
        })
    }

    /// Recovers a rotor from a rotation matrix. Among the two preimages the
    /// one with the larger 4-vector dot product with `reference` is returned;
    /// without a reference α ≥ 0 is preferred.
    pub fn from_matrix(m: &Mat3<T>, reference: Option<&Rotor<T>>) -> Result<Self> {
        let quarter = T::lit(0.25);
        let tr = m.trace();
        // squared components from the diagonal
        let a2 = (T::one() + tr) * quarter;
        let b2 = (T::lit(3.0) - tr) * quarter;
        let bi2: [T; 3] = std::array::from_fn(|i| (m[(i, i)] - T::one() + T::two() * b2) * T::half());
        let ax = m.axial(); // = 2 α β
        let (alpha, beta) = {
            let (mut best, mut best_val) = (3usize, a2);
            for (i, v) in bi2.iter().enumerate() {
                if *v > best_val {
                    best = i;
                    best_val = *v;
                }
            }
            if best == 3 {
                let alpha = a2.max(T::zero()).sqrt();
                let beta = ax.scale(T::one() / (T::two() * alpha));
                (alpha, beta)
            } else {
                let bi = best_val.max(T::zero()).sqrt();
                let four_bi = T::lit(4.0) * bi;
                let alpha = ax[best] / (T::two() * bi);
                let beta = Vec3::from_fn(|j| {
                    if j == best {
                        bi
                    } else {
                        (m[(best, j)] + m[(j, best)]) / four_bi
                    }
                });
                (alpha, beta)
            }
        };
        let mut r = Rotor::normalized(alpha, beta)?;
        match reference {
            Some(prev) if r.dot(prev) < T::zero() => r = r.negated(),
            None if r.alpha < T::zero() => r = r.negated(),
            _ => {}
        }
        Ok(r)
    }
}

/// Bilinear form behind [`Rotor::compose`], valid for unnormalized
/// four-vectors (and hence for their derivatives).
pub fn compose_raw<T: Scalar>(a0: T, a: &Vec3<T>, b0: T, b: &Vec3<T>) -> (T, Vec3<T>) {
    (a0 * b0 - a.dot(b), b.scale(a0) + a.scale(b0) + b.cross(a))
}

/// Ordinary matrix product.
pub fn matrix_product<T: Scalar>(a: &Mat3<T>, b: &Mat3<T>) -> Mat3<T> {
    *a * *b
}

/// ‖m mᵀ − I‖_max ≤ tol and det m > 0.
pub fn is_special_orthogonal<T: Scalar>(m: &Mat3<T>, tol: T) -> bool {
    let defect = (*m * m.transpose() - Mat3::identity()).max_abs();
    defect <= tol && m.det() > T::zero()
}
