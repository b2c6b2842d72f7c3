//! Natural cubic spline on strictly increasing knots.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct CubicSpline<T> {
    x: Vec<T>,
    y: Vec<T>,
    /// second derivatives at the knots
    m: Vec<T>,
}

impl<T: Scalar> CubicSpline<T> {
    pub fn natural(x: &[T], y: &[T]) -> Result<Self> {
        let n = x.len();
        if n < 2 || y.len() != n {
            return Err(Error::Domain(format!(
                "spline needs at least two knots and matching lengths, got {} and {}",
                n,
                y.len()
            )));
        }
        if x.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Domain("spline knots must be strictly increasing".into()));
        }
        let mut m = vec![T::zero(); n];
        if n > 2 {
            // Thomas algorithm for the interior second derivatives
            let k = n - 2;
            let mut diag = vec![T::zero(); k];
            let mut rhs = vec![T::zero(); k];
            let mut upper = vec![T::zero(); k];
            for i in 0..k {
                let h0 = x[i + 1] - x[i];
                let h1 = x[i + 2] - x[i + 1];
                diag[i] = T::two() * (h0 + h1);
                upper[i] = h1;
                rhs[i] = T::lit(6.0) * ((y[i + 2] - y[i + 1]) / h1 - (y[i + 1] - y[i]) / h0);
            }
            for i in 1..k {
                let lower = x[i + 1] - x[i];
                let f = lower / diag[i - 1];
                diag[i] = diag[i] - f * upper[i - 1];
                rhs[i] = rhs[i] - f * rhs[i - 1];
            }
            m[k] = rhs[k - 1] / diag[k - 1];
            for i in (0..k - 1).rev() {
                m[i + 1] = (rhs[i] - upper[i] * m[i + 2]) / diag[i];
            }
        }
        Ok(CubicSpline {
            x: x.to_vec(),
            y: y.to_vec(),
            m,
        })
    }

    pub fn domain(&self) -> (T, T) {
        (self.x[0], self.x[self.x.len() - 1])
    }

    /// Value, first and second derivative. Outside the knot range the end
    /// value is held constant with zero derivatives.
    pub fn eval(&self, t: T) -> (T, T, T) {
        let n = self.x.len();
        if t < self.x[0] {
            return (self.y[0], T::zero(), T::zero());
        }
        if t > self.x[n - 1] {
            return (self.y[n - 1], T::zero(), T::zero());
        }
        let i = match self.x.binary_search_by(|v| v.partial_cmp(&t).unwrap()) {
            Ok(i) => i.min(n - 2),
            Err(i) => i - 1,
        };
        let h = self.x[i + 1] - self.x[i];
        let a = (self.x[i + 1] - t) / h;
        let b = (t - self.x[i]) / h;
        let (m0, m1) = (self.m[i], self.m[i + 1]);
        let six = T::lit(6.0);
        let v = a * self.y[i] + b * self.y[i + 1] + ((a * a * a - a) * m0 + (b * b * b - b) * m1) * h * h / six;
        let d = (self.y[i + 1] - self.y[i]) / h - (T::lit(3.0) * a * a - T::one()) * h * m0 / six
            + (T::lit(3.0) * b * b - T::one()) * h * m1 / six;
        let dd = a * m0 + b * m1;
        (v, d, dd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolates_knots_and_is_natural() {
        let x: Vec<f64> = (0..8).map(|i| (i as f64).powf(1.3)).collect();
        let y: Vec<f64> = x.iter().map(|v| v.sin()).collect();
        let s = CubicSpline::natural(&x, &y).unwrap();
        for (xi, yi) in x.iter().zip(&y) {
            assert!((s.eval(*xi).0 - yi).abs() < 1e-14);
        }
        assert!(s.eval(x[0] + 1e-12).2.abs() < 1e-9);
    }

    #[test]
    fn converges_at_fourth_order_in_the_interior() {
        let err = |n: usize| {
            let x: Vec<f64> = (0..=n).map(|i| 4.0 * i as f64 / n as f64).collect();
            let y: Vec<f64> = x.iter().map(|v| v.sin()).collect();
            let s = CubicSpline::natural(&x, &y).unwrap();
            (0..200)
                .map(|k| 1.0 + 2.0 * k as f64 / 200.0)
                .map(|t| (s.eval(t).0 - t.sin()).abs())
                .fold(0.0, f64::max)
        };
        assert!(err(40) / err(80) > 12.0);
    }

    #[test]
    fn linear_data_is_reproduced_exactly() {
        let s = CubicSpline::<f64>::natural(&[0.0, 1.0, 3.0], &[1.0, 3.0, 7.0]).unwrap();
        let (v, d, dd) = s.eval(2.0);
        assert!((v - 5.0).abs() < 1e-14 && (d - 2.0).abs() < 1e-14 && dd.abs() < 1e-14);
        // the end knots belong to the domain
        assert!((s.eval(0.0).1 - 2.0).abs() < 1e-14 && (s.eval(3.0).1 - 2.0).abs() < 1e-14);
        assert_eq!(s.eval(3.5), (7.0, 0.0, 0.0));
    }

    #[test]
    fn rejects_bad_knots() {
        assert!(CubicSpline::natural(&[0.0, 0.0], &[1.0, 2.0]).is_err());
        assert!(CubicSpline::natural(&[0.0], &[1.0]).is_err());
    }
}
