//! Rotor fields and their pointwise derivative data.
//!
//! Derivatives are indexed by a spacetime slot `μ ∈ {0, 1, 2, 3}` where
//! 0–2 are the Cartesian coordinates and [`TIME`] is the time slot.

use crate::linalg::{Mat3, Vec3};
use crate::scalar::Scalar;
use crate::so3::{compose_raw, Rotor};

/// Index of the time derivative in the 4-slot derivative arrays.
pub const TIME: usize = 3;

/// Value, first and second derivatives of a rotor field at one spacetime
/// point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotorJet<T> {
    pub rotor: Rotor<T>,
    /// ∂_μ α
    pub d_alpha: [T; 4],
    /// `d_beta[μ][l]` = ∂_μ β_l
    pub d_beta: [Vec3<T>; 4],
    /// ∂_μ ∂_ν α
    pub dd_alpha: [[T; 4]; 4],
    /// `dd_beta[μ][ν][l]` = ∂_μ ∂_ν β_l
    pub dd_beta: [[Vec3<T>; 4]; 4],
}

impl<T: Scalar> RotorJet<T> {
    /// Jet of a field that is constant in space and time.
    pub fn constant(rotor: Rotor<T>) -> Self {
        RotorJet {
            rotor,
            d_alpha: [T::zero(); 4],
            d_beta: [Vec3::zeros(); 4],
            dd_alpha: [[T::zero(); 4]; 4],
            dd_beta: [[Vec3::zeros(); 4]; 4],
        }
    }

    /// Completes a β-jet with α = ±√(1 − β²) and its derivatives, which
    /// follow from differentiating α² + β² = 1 twice. Requires α ≠ 0.
    pub fn from_beta_jet(
        beta: Vec3<T>,
        d_beta: [Vec3<T>; 4],
        dd_beta: [[Vec3<T>; 4]; 4],
        negative_alpha: bool,
    ) -> Self {
        let mag = (T::one() - beta.norm_sq()).max(T::zero()).sqrt();
        let alpha = if negative_alpha { -mag } else { mag };
        let d_alpha: [T; 4] = std::array::from_fn(|m| -beta.dot(&d_beta[m]) / alpha);
        let dd_alpha = std::array::from_fn(|m| {
            std::array::from_fn(|n| {
                -(d_beta[m].dot(&d_beta[n]) + beta.dot(&dd_beta[m][n]) + d_alpha[m] * d_alpha[n])
                    / alpha
            })
        });
        RotorJet {
            rotor: Rotor { alpha, beta },
            d_alpha,
            d_beta,
            dd_alpha,
            dd_beta,
        }
    }

    /// Spatial gradient of β as a matrix: row l, column k holds ∂_k β_l.
    pub fn grad_beta(&self) -> Mat3<T> {
        Mat3::from_fn(|l, k| self.d_beta[k][l])
    }

    /// Worst violation of α ∂_μα + β·∂_μβ = 0 over the four slots.
    pub fn constraint_defect(&self) -> T {
        (0..4).fold(T::zero(), |acc, m| {
            let v = self.rotor.alpha * self.d_alpha[m] + self.rotor.beta.dot(&self.d_beta[m]);
            acc.max(v.abs())
        })
    }

    /// Jet of the pointwise composition u(self) · u(other), by the product
    /// rule on the bilinear [`compose_raw`].
    pub fn compose(&self, other: &Self) -> Self {
        let (a, b) = (self, other);
        let mul = |a0: T, av: &Vec3<T>, b0: T, bv: &Vec3<T>| compose_raw(a0, av, b0, bv);
        let add = |p: (T, Vec3<T>), q: (T, Vec3<T>)| (p.0 + q.0, p.1 + q.1);
        let d: [(T, Vec3<T>); 4] = std::array::from_fn(|m| {
            add(
                mul(a.d_alpha[m], &a.d_beta[m], b.rotor.alpha, &b.rotor.beta),
                mul(a.rotor.alpha, &a.rotor.beta, b.d_alpha[m], &b.d_beta[m]),
            )
        });
        let dd: [[(T, Vec3<T>); 4]; 4] = std::array::from_fn(|m| {
            std::array::from_fn(|n| {
                let p = add(
                    mul(a.dd_alpha[m][n], &a.dd_beta[m][n], b.rotor.alpha, &b.rotor.beta),
                    mul(a.rotor.alpha, &a.rotor.beta, b.dd_alpha[m][n], &b.dd_beta[m][n]),
                );
                let q = add(
                    mul(a.d_alpha[m], &a.d_beta[m], b.d_alpha[n], &b.d_beta[n]),
                    mul(a.d_alpha[n], &a.d_beta[n], b.d_alpha[m], &b.d_beta[m]),
                );
                add(p, q)
            })
        });
        RotorJet {
            rotor: a.rotor.compose(&b.rotor),
            d_alpha: d.map(|x| x.0),
            d_beta: d.map(|x| x.1),
            dd_alpha: dd.map(|r| r.map(|x| x.0)),
            dd_beta: dd.map(|r| r.map(|x| x.1)),
        }
    }

    pub fn matrix_jet(&self) -> MatrixJet<T> {
        MatrixJet {
            u: self.rotor.to_matrix(),
            du: std::array::from_fn(|m| {
                self.rotor.matrix_derivative(self.d_alpha[m], &self.d_beta[m])
            }),
        }
    }
}

/// An orthogonal matrix field value together with its first derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatrixJet<T> {
    pub u: Mat3<T>,
    /// `du[μ]` = ∂_μ u
    pub du: [Mat3<T>; 4],
}

impl<T: Scalar> MatrixJet<T> {
    pub fn constant(u: Mat3<T>) -> Self {
        MatrixJet {
            u,
            du: [Mat3::zeros(); 4],
        }
    }

    /// Product rule for the matrix product `self · other`.
    pub fn product(&self, other: &Self) -> Self {
        MatrixJet {
            u: self.u * other.u,
            du: std::array::from_fn(|m| self.du[m] * other.u + self.u * other.du[m]),
        }
    }

    /// Left multiplication by a constant matrix.
    pub fn left_multiplied(&self, l: &Mat3<T>) -> Self {
        MatrixJet {
            u: *l * self.u,
            du: std::array::from_fn(|m| *l * self.du[m]),
        }
    }
}

/// A rotor-valued field with analytic first and second derivatives.
pub trait RotorField<T: Scalar>: Sync {
    fn jet(&self, x: &Vec3<T>, t: T) -> RotorJet<T>;

    fn rotor(&self, x: &Vec3<T>, t: T) -> Rotor<T> {
        self.jet(x, t).rotor
    }
}

/// An SO(3)-valued field known through its matrix and first derivatives.
/// Every [`RotorField`] is one.
pub trait MatrixField<T: Scalar>: Sync {
    fn matrix_jet(&self, x: &Vec3<T>, t: T) -> MatrixJet<T>;
}

impl<T: Scalar, F: RotorField<T>> MatrixField<T> for F {
    fn matrix_jet(&self, x: &Vec3<T>, t: T) -> MatrixJet<T> {
        self.jet(x, t).matrix_jet()
    }
}

impl<T: Scalar, F: RotorField<T> + ?Sized> RotorField<T> for &F {
    fn jet(&self, x: &Vec3<T>, t: T) -> RotorJet<T> {
        (**self).jet(x, t)
    }
}

impl<T: Scalar> RotorField<T> for Box<dyn RotorField<T> + '_> {
    fn jet(&self, x: &Vec3<T>, t: T) -> RotorJet<T> {
        (**self).jet(x, t)
    }
}

/// The same rotor everywhere.
#[derive(Debug, Clone, Copy)]
pub struct ConstantField<T>(pub Rotor<T>);

impl<T: Scalar> RotorField<T> for ConstantField<T> {
    fn jet(&self, _x: &Vec3<T>, _t: T) -> RotorJet<T> {
        RotorJet::constant(self.0)
    }
}

/// A field translated so that its origin sits at `center`.
#[derive(Debug, Clone)]
pub struct Translated<F, T> {
    pub inner: F,
    pub center: Vec3<T>,
}

impl<T: Scalar, F: RotorField<T>> RotorField<T> for Translated<F, T> {
    fn jet(&self, x: &Vec3<T>, t: T) -> RotorJet<T> {
        self.inner.jet(&(*x - self.center), t)
    }
}
