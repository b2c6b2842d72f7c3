//! Fixed-size 3-vectors and 3×3 matrices.
//!
//! Matrices are row-major: `m[(i, j)]` is row `i`, column `j`. For the
//! orthogonal matrix of a rotor the row is the coordinate index and the
//! column the anholonomic (frame) index.

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use crate::scalar::Scalar;

/// Levi-Civita symbol with ε_{012} = +1.
#[inline]
pub fn levi_civita(i: usize, j: usize, k: usize) -> i32 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

/// ε_{ijk} as a scalar.
#[inline]
pub fn eps<T: Scalar>(i: usize, j: usize, k: usize) -> T {
    match levi_civita(i, j, k) {
        1 => T::one(),
        -1 => -T::one(),
        _ => T::zero(),
    }
}

#[inline]
pub(crate) fn delta<T: Scalar>(i: usize, j: usize) -> T {
    if i == j {
        T::one()
    } else {
        T::zero()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec3<T>(pub [T; 3]);

impl<T: Scalar> Vec3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Vec3([x, y, z])
    }

    pub fn zeros() -> Self {
        Vec3([T::zero(); 3])
    }

    pub fn from_fn(f: impl FnMut(usize) -> T) -> Self {
        Vec3(std::array::from_fn(f))
    }

    pub fn unit(axis: usize) -> Self {
        Self::from_fn(|i| delta(i, axis))
    }

    pub fn dot(&self, other: &Self) -> T {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    pub fn cross(&self, other: &Self) -> Self {
        let [a0, a1, a2] = self.0;
        let [b0, b1, b2] = other.0;
        Vec3([a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0])
    }

    pub fn norm_sq(&self) -> T {
        self.dot(self)
    }

    pub fn norm(&self) -> T {
        self.norm_sq().sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.0.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    pub fn scale(&self, s: T) -> Self {
        Self::from_fn(|i| self.0[i] * s)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }
}

impl<T: Scalar> Index<usize> for Vec3<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T: Scalar> IndexMut<usize> for Vec3<T> {
    fn index_mut(&mut self, i: usize) -> &mut T {
        &mut self.0[i]
    }
}

impl<T: Scalar> Add for Vec3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::from_fn(|i| self.0[i] + o.0[i])
    }
}

impl<T: Scalar> Sub for Vec3<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::from_fn(|i| self.0[i] - o.0[i])
    }
}

impl<T: Scalar> Neg for Vec3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_fn(|i| -self.0[i])
    }
}

impl<T: Scalar> AddAssign for Vec3<T> {
    fn add_assign(&mut self, o: Self) {
        for i in 0..3 {
            self.0[i] = self.0[i] + o.0[i];
        }
    }
}

impl<T: Scalar> Mul<T> for Vec3<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        self.scale(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3<T>(pub [[T; 3]; 3]);

impl<T: Scalar> Mat3<T> {
    pub fn zeros() -> Self {
        Mat3([[T::zero(); 3]; 3])
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| delta(i, j))
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> T) -> Self {
        Mat3(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    pub fn from_diagonal(d: [T; 3]) -> Self {
        Self::from_fn(|i, j| if i == j { d[i] } else { T::zero() })
    }

    /// Row-major construction from nine entries.
    pub fn from_row_slice(v: &[T; 9]) -> Self {
        Self::from_fn(|i, j| v[3 * i + j])
    }

    pub fn to_row_array(&self) -> [T; 9] {
        std::array::from_fn(|n| self.0[n / 3][n % 3])
    }

    /// Cross-product matrix: `hat(v) * x == v × x`.
    pub fn hat(v: &Vec3<T>) -> Self {
        let [x, y, z] = v.0;
        let o = T::zero();
        Mat3([[o, -z, y], [z, o, -x], [-y, x, o]])
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i])
    }

    pub fn trace(&self) -> T {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn det(&self) -> T {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn column(&self, j: usize) -> Vec3<T> {
        Vec3::from_fn(|i| self.0[i][j])
    }

    pub fn row(&self, i: usize) -> Vec3<T> {
        Vec3(self.0[i])
    }

    pub fn mul_vec(&self, v: &Vec3<T>) -> Vec3<T> {
        Vec3::from_fn(|i| self.row(i).dot(v))
    }

    /// `vᵀ M`, i.e. contraction over the row index.
    pub fn left_mul_vec(&self, v: &Vec3<T>) -> Vec3<T> {
        Vec3::from_fn(|j| self.column(j).dot(v))
    }

    pub fn scale(&self, s: T) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }

    /// Frobenius inner product Σ a_ij b_ij.
    pub fn frobenius_dot(&self, other: &Self) -> T {
        let mut acc = T::zero();
        for i in 0..3 {
            for j in 0..3 {
                acc = acc + self.0[i][j] * other.0[i][j];
            }
        }
        acc
    }

    pub fn frobenius_norm_sq(&self) -> T {
        self.frobenius_dot(self)
    }

    pub fn max_abs(&self) -> T {
        self.0
            .iter()
            .flatten()
            .fold(T::zero(), |m, v| m.max(v.abs()))
    }

    pub fn symmetric_part(&self) -> Self {
        Self::from_fn(|i, j| (self.0[i][j] + self.0[j][i]) * T::half())
    }

    pub fn skew_part(&self) -> Self {
        Self::from_fn(|i, j| (self.0[i][j] - self.0[j][i]) * T::half())
    }

    /// Axial vector a_l = ½ ε_{lij} m_ij of the skew part.
    pub fn axial(&self) -> Vec3<T> {
        let m = &self.0;
        Vec3::new(
            (m[1][2] - m[2][1]) * T::half(),
            (m[2][0] - m[0][2]) * T::half(),
            (m[0][1] - m[1][0]) * T::half(),
        )
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|v| v.is_finite())
    }
}

impl<T: Scalar> Index<(usize, usize)> for Mat3<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.0[i][j]
    }
}

impl<T: Scalar> IndexMut<(usize, usize)> for Mat3<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.0[i][j]
    }
}

impl<T: Scalar> Add for Mat3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] + o.0[i][j])
    }
}

impl<T: Scalar> Sub for Mat3<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] - o.0[i][j])
    }
}

impl<T: Scalar> Neg for Mat3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_fn(|i, j| -self.0[i][j])
    }
}

impl<T: Scalar> AddAssign for Mat3<T> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<T: Scalar> SubAssign for Mat3<T> {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl<T: Scalar> Mul for Mat3<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::from_fn(|i, j| {
            self.0[i][0] * o.0[0][j] + self.0[i][1] * o.0[1][j] + self.0[i][2] * o.0[2][j]
        })
    }
}

impl<T: Scalar> Mul<T> for Mat3<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        self.scale(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levi_civita_signs() {
        assert_eq!(levi_civita(0, 1, 2), 1);
        assert_eq!(levi_civita(1, 0, 2), -1);
        assert_eq!(levi_civita(0, 0, 2), 0);
        let mut total = 0;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    total += levi_civita(i, j, k) * levi_civita(i, j, k);
                }
            }
        }
        assert_eq!(total, 6);
    }

    #[test]
    fn hat_matches_cross_product() {
        let a = Vec3::new(1.0, -2.0, 0.5);
        let b = Vec3::new(0.3, 4.0, -1.0);
        let lhs = Mat3::hat(&a).mul_vec(&b);
        let rhs = a.cross(&b);
        assert!((lhs - rhs).max_abs() < 1e-15);
    }

    #[test]
    fn det_of_triangular() {
        let m = Mat3([[2.0f64, 1.0, 5.0], [0.0, 3.0, -1.0], [0.0, 0.0, 0.5]]);
        assert!((m.det() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn axial_of_hat_is_negated_vector() {
        // hat(v)_ij = -ε_ijk v_k, so ½ ε_lij hat(v)_ij = -v_l
        let v = Vec3::new(0.7, -0.1, 2.0);
        assert!((Mat3::hat(&v).axial() + v).max_abs() < 1e-15);
    }
}
