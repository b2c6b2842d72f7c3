//! Static radial equation λ1 (r² w')' + U(w) = 0 with w(0) = 0.
//!
//! Integrated as the first-order system y1 = w, y2 = r² w' with an embedded
//! Dormand–Prince 5(4) pair, stepping exactly onto a uniform output grid.
//! The start at r0 uses the leading series w = a r^s, where s is the positive
//! root of λ1 s(s+1) = −U'(0) = −2(2λ2 − 3λ1).

use crate::error::{Error, Result};
use crate::kinematics::Moduli;
use crate::scalar::Scalar;

use super::profile::RadialProfile;

/// |w| above this counts as blow-up.
pub const DIVERGENCE_LIMIT: f64 = 10.0;

/// U(w) = sin 2w [(λ2 − λ1) + (λ2 − 2λ1) cos 2w].
pub fn potential_u<T: Scalar>(w: T, m: &Moduli<T>) -> T {
    let (s, c) = (T::two() * w).sin_cos();
    s * ((m.lambda2 - m.lambda1) + (m.lambda2 - T::two() * m.lambda1) * c)
}

/// U'(w).
pub fn potential_u_prime<T: Scalar>(w: T, m: &Moduli<T>) -> T {
    let (s, c) = (T::two() * w).sin_cos();
    let a = m.lambda2 - m.lambda1;
    let b = m.lambda2 - T::two() * m.lambda1;
    T::two() * (a * c + b * (c * c - s * s))
}

/// Φ(w) = 2 ∫₀^w U = (λ2 − λ1)(1 − cos 2w) + (λ2 − 2λ1) sin²(2w) / 2.
pub fn potential_phi<T: Scalar>(w: T, m: &Moduli<T>) -> T {
    let (s, c) = (T::two() * w).sin_cos();
    (m.lambda2 - m.lambda1) * (T::one() - c) + (m.lambda2 - T::two() * m.lambda1) * s * s * T::half()
}

/// Positive root of the indicial equation, if it exists.
pub fn indicial_exponent<T: Scalar>(m: &Moduli<T>) -> Option<T> {
    let q = potential_u_prime(T::zero(), m) / m.lambda1;
    let disc = T::one() - T::lit(4.0) * q;
    if disc < T::zero() {
        return None;
    }
    let s = (disc.sqrt() - T::one()) * T::half();
    (s > T::zero()).then_some(s)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaticParams<T> {
    pub slope0: T,
    pub r_max: T,
    pub tol: T,
    /// output spacing (adjusted down so that r_max is a node)
    pub dr: T,
    /// start radius of the series
    pub r0: T,
}

impl<T: Scalar> StaticParams<T> {
    pub fn new(slope0: T, r_max: T, tol: T) -> Self {
        StaticParams {
            slope0,
            r_max,
            tol,
            dr: T::lit(0.01),
            r0: T::lit(1e-6),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StaticSolution<T> {
    pub profile: RadialProfile<T>,
    /// exponent of the series start
    pub series_exponent: T,
    /// false when the indicial equation has no positive root and the start
    /// fell back to w = slope0·r
    pub regular_series: bool,
    pub steps_accepted: usize,
    pub steps_rejected: usize,
}

impl<T: Scalar> StaticSolution<T> {
    /// w at the outermost node.
    pub fn asymptotic_value(&self) -> T {
        self.profile.w_end()
    }
}

pub fn solve_static<T: Scalar>(m: &Moduli<T>, slope0: T, r_max: T, tol: T) -> Result<StaticSolution<T>> {
    solve_static_with(m, &StaticParams::new(slope0, r_max, tol))
}

pub fn solve_static_with<T: Scalar>(m: &Moduli<T>, p: &StaticParams<T>) -> Result<StaticSolution<T>> {
    m.require_positive_lambda1()?;
    if !p.slope0.is_finite() {
        return Err(Error::Config("slope0 must be finite".into()));
    }
    if !(p.r_max > T::zero() && p.tol > T::zero() && p.dr > T::zero() && p.r0 > T::zero()) {
        return Err(Error::Config("r_max, tol, dr and r0 must be positive".into()));
    }
    let n = (p.r_max / p.dr).ceil().to_usize().unwrap_or(0).max(1);
    let dr = p.r_max / T::from_usize_lossy(n);
    if p.r0 >= dr {
        return Err(Error::Config(format!("series start r0 = {} must be below the output spacing {}", p.r0, dr)));
    }
    let (s, regular) = match indicial_exponent(m) {
        Some(s) => (s, true),
        None => (T::one(), false),
    };
    let a = p.slope0;
    let w_origin_slope = if s == T::one() {
        a
    } else if s > T::one() {
        T::zero()
    } else {
        T::infinity() * a.signum()
    };

    let mut r = Vec::with_capacity(n + 1);
    let mut w = Vec::with_capacity(n + 1);
    let mut w_r = Vec::with_capacity(n + 1);
    r.push(T::zero());
    w.push(T::zero());
    w_r.push(if a == T::zero() { T::zero() } else { w_origin_slope });

    let mut y = [a * p.r0.powf(s), a * s * p.r0.powf(s + T::one())];
    if !(y[0].abs() <= T::lit(DIVERGENCE_LIMIT)) {
        return Err(Error::Divergence {
            radius: p.r0.to_f64().unwrap_or(f64::NAN),
            limit: DIVERGENCE_LIMIT,
        });
    }
    let mut x = p.r0;
    let mut integ = Dopri::new(m, p.tol);
    let mut h = (dr * T::lit(0.1)).min(dr - p.r0);
    for j in 1..=n {
        let target = dr * T::from_usize_lossy(j);
        integ.advance(&mut x, &mut y, target, &mut h)?;
        r.push(target);
        w.push(y[0]);
        w_r.push(y[1] / (target * target));
    }
    let mut profile = RadialProfile::new(r, w, *m, a, p.tol)?;
    profile.w_r = Some(w_r);
    Ok(StaticSolution {
        profile,
        series_exponent: s,
        regular_series: regular,
        steps_accepted: integ.accepted,
        steps_rejected: integ.rejected,
    })
}

struct Dopri<'a, T> {
    m: &'a Moduli<T>,
    tol: T,
    accepted: usize,
    rejected: usize,
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

impl<'a, T: Scalar> Dopri<'a, T> {
    fn new(m: &'a Moduli<T>, tol: T) -> Self {
        Dopri {
            m,
            tol,
            accepted: 0,
            rejected: 0,
        }
    }

    fn rhs(&self, x: T, y: &[T; 2]) -> [T; 2] {
        [y[1] / (x * x), -potential_u(y[0], self.m) / self.m.lambda1]
    }

    /// Integrates from `x` to exactly `target`; `h` carries the step-size
    /// guess between calls. The local error is controlled per unit length:
    /// |err| ≤ tol · h · (1 + |y|).
    fn advance(&mut self, x: &mut T, y: &mut [T; 2], target: T, h: &mut T) -> Result<()> {
        let limit = T::lit(DIVERGENCE_LIMIT);
        let h_min = (target.abs() + T::one()) * T::epsilon() * T::lit(64.0);
        while *x < target {
            let last = *x + *h >= target;
            let step = if last { target - *x } else { *h };
            let mut k = [[T::zero(); 2]; 7];
            for stage in 0..7 {
                let mut ys = *y;
                for (prev, kp) in k.iter().enumerate().take(stage) {
                    let a = T::lit(A[stage][prev]);
                    ys[0] = ys[0] + step * a * kp[0];
                    ys[1] = ys[1] + step * a * kp[1];
                }
                k[stage] = self.rhs(*x + step * T::lit(C[stage]), &ys);
            }
            let mut y5 = *y;
            let mut err = T::zero();
            for i in 0..2 {
                let mut d5 = T::zero();
                let mut d4 = T::zero();
                for (stage, ks) in k.iter().enumerate() {
                    d5 = d5 + T::lit(B5[stage]) * ks[i];
                    d4 = d4 + T::lit(B4[stage]) * ks[i];
                }
                y5[i] = y[i] + step * d5;
                let scale = self.tol * step * (T::one() + y[i].abs().max(y5[i].abs()));
                err = err.max((step * (d5 - d4)).abs() / scale);
            }
            if !err.is_finite() && !(y5[0].is_finite() && y5[1].is_finite()) {
                return Err(Error::Divergence {
                    radius: x.to_f64().unwrap_or(f64::NAN),
                    limit: DIVERGENCE_LIMIT,
                });
            }
            if err <= T::one() {
                *x = if last { target } else { *x + step };
                *y = y5;
                self.accepted += 1;
                if y[0].abs() > limit {
                    return Err(Error::Divergence {
                        radius: x.to_f64().unwrap_or(f64::NAN),
                        limit: DIVERGENCE_LIMIT,
                    });
                }
                // error per unit length scales as h⁴
                let grow = if err == T::zero() {
                    T::lit(5.0)
                } else {
                    (T::lit(0.9) * err.powf(T::lit(-0.25))).min(T::lit(5.0))
                };
                if !last {
                    *h = step * grow;
                } else {
                    *h = (*h).max(step * grow.min(T::one()));
                }
            } else {
                self.rejected += 1;
                let shrink = (T::lit(0.9) * err.powf(T::lit(-0.25))).max(T::lit(0.1));
                *h = step * shrink;
                if *h < h_min {
                    return Err(Error::Divergence {
                        radius: x.to_f64().unwrap_or(f64::NAN),
                        limit: DIVERGENCE_LIMIT,
                    });
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn lambdas(l1: f64, l2: f64) -> Moduli<f64> {
        Moduli::from_couplings(l1, l2).unwrap()
    }

    #[test]
    fn special_cases_of_u() {
        for i in 0..1000 {
            let w = -4.0 + 8.0 * i as f64 / 999.0;
            assert_eq!(potential_u(0.0, &lambdas(1.3, 0.2)), 0.0);
            assert!((potential_u(w, &lambdas(1.0, 2.0)) - (2.0 * w).sin()).abs() <= 1e-12);
            assert!((potential_u(w, &lambdas(1.0, 1.0)) + 0.5 * (4.0 * w).sin()).abs() <= 1e-12);
        }
    }

    #[test]
    fn derivative_and_primitive_of_u() {
        let m = lambdas(1.1, 1.7);
        let h = 1e-6;
        for w in [-1.0, 0.0, 0.3, 2.0] {
            let du = (potential_u(w + h, &m) - potential_u(w - h, &m)) / (2.0 * h);
            assert!((du - potential_u_prime(w, &m)).abs() < 1e-8);
            let dphi = (potential_phi(w + h, &m) - potential_phi(w - h, &m)) / (2.0 * h);
            assert!((dphi - 2.0 * potential_u(w, &m)).abs() < 1e-8);
        }
        assert_eq!(potential_phi(0.0, &m), 0.0);
    }

    #[test]
    fn indicial_exponent_cases() {
        assert!((indicial_exponent(&lambdas(1.0, 1.0)).unwrap() - 1.0).abs() < 1e-15);
        assert!(indicial_exponent(&lambdas(1.0, 2.0)).is_none());
        let m = lambdas(1.0, 1.25);
        let s = indicial_exponent(&m).unwrap();
        assert!((m.lambda1 * s * (s + 1.0) + potential_u_prime(0.0, &m)).abs() < 1e-14);
    }

    #[test]
    fn zero_slope_stays_at_zero() {
        let sol = solve_static(&lambdas(1.0, 1.0), 0.0, 5.0, 1e-10).unwrap();
        assert!(sol.profile.w.iter().all(|&w| w == 0.0));
    }

    #[test]
    fn soliton_overshoots_then_settles_towards_quarter_pi() {
        let sol = solve_static(&lambdas(1.0, 1.0), 1.0, 50.0, 1e-10).unwrap();
        let p = &sol.profile;
        let at = |r: f64| p.w[(r / 0.01).round() as usize];
        // oracle values from an independent high-accuracy integration
        assert!((at(1.0) - 0.7002).abs() < 1e-3);
        assert!((at(2.0) - 0.8776).abs() < 1e-3);
        let peak = p.w.iter().cloned().fold(f64::MIN, f64::max);
        assert!((peak - 0.9131).abs() < 1e-3);
        // decaying oscillation about π/4
        let dev = |a: f64, b: f64| {
            p.r.iter()
                .zip(&p.w)
                .filter(|(r, _)| **r >= a && **r <= b)
                .map(|(_, w)| (w - FRAC_PI_4).abs())
                .fold(0.0, f64::max)
        };
        assert!(dev(3.0, 10.0) > 2.0 * dev(30.0, 50.0));
        // already swung back below π/4
        assert!(p.w_end() < FRAC_PI_4);
        assert!(sol.regular_series);
    }

    fn sixth_order_derivative(y: &[f64], dr: f64, i: usize) -> f64 {
        let c = [-1.0 / 60.0, 3.0 / 20.0, -3.0 / 4.0, 0.0, 3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0];
        (0..7).map(|k| c[k] * y[i + k - 3]).sum::<f64>() / dr
    }

    #[test]
    fn profile_satisfies_the_ode() {
        for (m, tol) in [(lambdas(1.0, 2.0), 1e-9), (lambdas(1.0, 1.0), 1e-9), (lambdas(1.0, 1.25), 1e-9)] {
            let sol = solve_static(&m, 1.0, 10.0, tol).unwrap();
            let p = &sol.profile;
            let wr = p.w_r.as_ref().unwrap();
            let y2: Vec<f64> = p.r.iter().zip(wr).map(|(r, d)| r * r * d).collect();
            let dr = p.r[1];
            // r^s with s < 1 is not smooth at the origin, so stay clear of it
            for i in 100..p.len() - 3 {
                let res = m.lambda1 * sixth_order_derivative(&y2, dr, i) + potential_u(p.w[i], &m);
                assert!(res.abs() <= 10.0 * tol, "r = {} residual {res:e}", p.r[i]);
            }
        }
    }

    #[test]
    fn irregular_start_is_flagged() {
        let sol = solve_static(&lambdas(1.0, 2.0), 1.0, 5.0, 1e-9).unwrap();
        assert!(!sol.regular_series);
        assert_eq!(sol.series_exponent, 1.0);
    }

    #[test]
    fn blow_up_is_reported() {
        // scale invariance leaves only the start itself able to exceed the limit
        let err = solve_static(&lambdas(1.0, 1.0), 2e7, 5.0, 1e-8).unwrap_err();
        assert!(matches!(err, Error::Divergence { .. }), "{err}");
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(solve_static(&lambdas(0.0, 1.0), 1.0, 5.0, 1e-9).is_err());
        assert!(solve_static(&lambdas(1.0, 1.0), 1.0, -5.0, 1e-9).is_err());
        assert!(solve_static(&lambdas(1.0, 1.0), f64::NAN, 5.0, 1e-9).is_err());
    }
}
