//! Autonomous form of the static equation.
//!
//! With w = ½ arctan(sinh f) and β = log r (valid while |w| < π/4) the
//! static equation becomes
//!
//! ```text
//! f_ββ + f_β (1 − tanh f · f_β) − 2 sinh f − 4 tanh f + 2ρ (sinh f + tanh f) = 0,   ρ = λ2/λ1.
//! ```
//!
//! Its equilibria are f = 0 and cosh f = (2 − ρ)/(ρ − 1), real for
//! 1 < ρ < 3/2, where sinh f = ±√(3 − 2ρ)/(ρ − 1).

use num_complex::Complex;

use crate::error::Result;
use crate::kinematics::Moduli;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Equilibrium<T> {
    pub f_star: T,
    pub w_star: T,
    /// central-difference Jacobian of (f, f_β)' at the equilibrium
    pub jacobian: [[T; 2]; 2],
    pub eigenvalues: [Complex<T>; 2],
}

pub fn autonomous_residual<T: Scalar>(f: T, f_b: T, f_bb: T, m: &Moduli<T>) -> T {
    f_bb + f_b * (T::one() - f.tanh() * f_b) + forcing(f, m)
}

fn forcing<T: Scalar>(f: T, m: &Moduli<T>) -> T {
    let (sh, th) = (f.sinh(), f.tanh());
    let two = T::two();
    -two * sh - T::lit(4.0) * th + two * m.ratio() * (sh + th)
}

/// Vector field of the first-order system (f, g = f_β).
fn flow<T: Scalar>(f: T, g: T, m: &Moduli<T>) -> [T; 2] {
    [g, -g * (T::one() - f.tanh() * g) - forcing(f, m)]
}

fn numerical_jacobian<T: Scalar>(f: T, g: T, m: &Moduli<T>) -> [[T; 2]; 2] {
    let h = T::lit(1e-6);
    let inv = T::half() / h;
    let df = {
        let (p, q) = (flow(f + h, g, m), flow(f - h, g, m));
        [(p[0] - q[0]) * inv, (p[1] - q[1]) * inv]
    };
    let dg = {
        let (p, q) = (flow(f, g + h, m), flow(f, g - h, m));
        [(p[0] - q[0]) * inv, (p[1] - q[1]) * inv]
    };
    [[df[0], dg[0]], [df[1], dg[1]]]
}

fn eigenvalues_2x2<T: Scalar>(j: &[[T; 2]; 2]) -> [Complex<T>; 2] {
    let tr = j[0][0] + j[1][1];
    let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    let disc = tr * tr * T::lit(0.25) - det;
    let half = tr * T::half();
    if disc >= T::zero() {
        let s = disc.sqrt();
        [Complex::new(half - s, T::zero()), Complex::new(half + s, T::zero())]
    } else {
        let s = (-disc).sqrt();
        [Complex::new(half, -s), Complex::new(half, s)]
    }
}

fn equilibrium_at<T: Scalar>(f: T, m: &Moduli<T>) -> Equilibrium<T> {
    let jacobian = numerical_jacobian(f, T::zero(), m);
    Equilibrium {
        f_star: f,
        w_star: T::half() * f.sinh().atan(),
        jacobian,
        eigenvalues: eigenvalues_2x2(&jacobian),
    }
}

/// f = 0 first, then the ± pair when it exists and is distinct from 0.
pub fn equilibria<T: Scalar>(m: &Moduli<T>) -> Result<Vec<Equilibrium<T>>> {
    m.require_positive_lambda1()?;
    let mut out = vec![equilibrium_at(T::zero(), m)];
    let rho = m.ratio();
    if rho != T::one() {
        let cosh = (T::two() - rho) / (rho - T::one());
        if cosh > T::one() {
            let f = cosh.acosh();
            out.push(equilibrium_at(-f, m));
            out.push(equilibrium_at(f, m));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lambdas(l1: f64, l2: f64) -> Moduli<f64> {
        Moduli::from_couplings(l1, l2).unwrap()
    }

    #[test]
    fn origin_is_always_an_equilibrium() {
        for (a, b) in [(1.0, 1.0), (1.0, 1.25), (2.0, 0.5), (1.0, 3.0)] {
            let eq = equilibria(&lambdas(a, b)).unwrap();
            assert_eq!(eq[0].f_star, 0.0);
            assert_eq!(autonomous_residual(0.0, 0.0, 0.0, &lambdas(a, b)), 0.0);
        }
        assert_eq!(equilibria(&lambdas(1.0, 1.0)).unwrap().len(), 1);
        assert_eq!(equilibria(&lambdas(1.0, 1.5)).unwrap().len(), 1);
        assert_eq!(equilibria(&lambdas(1.0, 0.5)).unwrap().len(), 1);
    }

    #[test]
    fn nontrivial_pair() {
        let m = lambdas(1.0, 1.25);
        let eq = equilibria(&m).unwrap();
        assert_eq!(eq.len(), 3);
        for e in &eq[1..] {
            assert!((e.f_star.sinh().abs() - 2.0 * 2f64.sqrt()).abs() < 1e-12);
            assert!(autonomous_residual(e.f_star, 0.0, 0.0, &m).abs() < 1e-10);
            assert!(e.w_star.abs() < std::f64::consts::FRAC_PI_4);
        }
        assert!(eq[1].f_star < 0.0 && eq[2].f_star > 0.0);
    }

    #[test]
    fn eigenvalues_solve_the_characteristic_polynomial() {
        let m = lambdas(1.0, 1.25);
        for e in equilibria(&m).unwrap() {
            let j = e.jacobian;
            for mu in e.eigenvalues {
                let p = mu * mu - mu * (j[0][0] + j[1][1]) + (j[0][0] * j[1][1] - j[0][1] * j[1][0]);
                assert!(p.norm() < 1e-10);
            }
        }
    }

    #[test]
    fn static_profiles_solve_the_autonomous_equation() {
        use crate::radial::static_solver::{potential_u, solve_static};
        for m in [lambdas(1.0, 1.25), lambdas(2.0, 1.0), lambdas(1.0, 0.8)] {
            let sol = solve_static(&m, 0.3, 8.0, 1e-10).unwrap();
            let p = &sol.profile;
            let wr = p.w_r.as_ref().unwrap();
            let mut checked = 0;
            for i in (5..p.len()).step_by(7) {
                let (r, w, w_r) = (p.r[i], p.w[i], wr[i]);
                if w.abs() > 0.7 {
                    continue;
                }
                // w_rr from λ1 (r² w_r)_r + U(w) = 0
                let w_rr = (-potential_u(w, &m) / m.lambda1 - 2.0 * r * w_r) / (r * r);
                let g = (2.0 * w).tan();
                let g_r = 2.0 * (1.0 + g * g) * w_r;
                let g_rr = 2.0 * (1.0 + g * g) * w_rr + 4.0 * g * g_r * w_r;
                let q = (1.0 + g * g).sqrt();
                let (f, f_r) = (g.asinh(), g_r / q);
                let f_rr = g_rr / q - g * g_r * g_r / (q * q * q);
                let res = autonomous_residual(f, r * f_r, r * f_r + r * r * f_rr, &m);
                assert!(res.abs() < 1e-9 * (1.0 + f.abs()), "r = {r} residual {res:e}");
                checked += 1;
            }
            assert!(checked > 20, "only {checked} points below π/4");
        }
    }
}
