//! The hedgehog ansatz β = x̂ cos w(t, r), α = sin w(t, r).

use crate::error::{Error, Result};
use crate::field::{RotorField, RotorJet, TIME};
use crate::linalg::{delta, Vec3};
use crate::scalar::Scalar;
use crate::so3::Rotor;

use super::profile::RadialProfile;
use super::spline::CubicSpline;

/// w and its derivatives at one (t, r).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RadialJet<T> {
    pub w: T,
    pub w_r: T,
    pub w_rr: T,
    pub w_t: T,
    pub w_tt: T,
    pub w_rt: T,
}

pub trait RadialFunction<T: Scalar>: Sync {
    fn radial_jet(&self, r: T, t: T) -> RadialJet<T>;
}

impl<T: Scalar, F: Fn(T, T) -> RadialJet<T> + Sync> RadialFunction<T> for F {
    fn radial_jet(&self, r: T, t: T) -> RadialJet<T> {
        self(r, t)
    }
}

#[derive(Debug, Clone)]
pub struct Hedgehog<W> {
    pub profile: W,
}

impl<T: Scalar, W: RadialFunction<T>> RotorField<T> for Hedgehog<W> {
    fn jet(&self, x: &Vec3<T>, t: T) -> RotorJet<T> {
        let r = x.norm();
        let rj = self.profile.radial_jet(r, t);
        let (s, c) = rj.w.sin_cos();
        if r == T::zero() {
            // direction undefined; pick the 1-axis
            return RotorJet::constant(Rotor {
                alpha: s,
                beta: Vec3::new(c, T::zero(), T::zero()),
            });
        }
        let n = x.scale(T::one() / r);
        // ∂_μ n_i (zero for μ = t) and ∂_μ ∂_ν n_i
        let dn = |mu: usize, i: usize| -> T {
            if mu == TIME {
                T::zero()
            } else {
                (delta::<T>(i, mu) - n[i] * n[mu]) / r
            }
        };
        let ddn = |mu: usize, nu: usize, i: usize| -> T {
            if mu == TIME || nu == TIME {
                T::zero()
            } else {
                -(dn(nu, i) * n[mu] + n[i] * dn(nu, mu)) / r - (delta::<T>(i, mu) - n[i] * n[mu]) * n[nu] / (r * r)
            }
        };
        // spacetime derivatives of w
        let dw = |mu: usize| -> T {
            if mu == TIME {
                rj.w_t
            } else {
                rj.w_r * n[mu]
            }
        };
        let ddw = |mu: usize, nu: usize| -> T {
            match (mu == TIME, nu == TIME) {
                (true, true) => rj.w_tt,
                (true, false) => rj.w_rt * n[nu],
                (false, true) => rj.w_rt * n[mu],
                (false, false) => rj.w_rr * n[mu] * n[nu] + rj.w_r * (delta::<T>(mu, nu) - n[mu] * n[nu]) / r,
            }
        };
        let d_alpha = std::array::from_fn(|mu| c * dw(mu));
        let d_beta = std::array::from_fn(|mu| Vec3::from_fn(|i| dn(mu, i) * c - n[i] * s * dw(mu)));
        let dd_alpha = std::array::from_fn(|mu| std::array::from_fn(|nu| -s * dw(mu) * dw(nu) + c * ddw(mu, nu)));
        let dd_beta = std::array::from_fn(|mu| {
            std::array::from_fn(|nu| {
                Vec3::from_fn(|i| {
                    ddn(mu, nu, i) * c
                        - (dn(mu, i) * dw(nu) + dn(nu, i) * dw(mu)) * s
                        - n[i] * (c * dw(mu) * dw(nu) + s * ddw(mu, nu))
                })
            })
        });
        RotorJet {
            rotor: Rotor {
                alpha: s,
                beta: n.scale(c),
            },
            d_alpha,
            d_beta,
            dd_alpha,
            dd_beta,
        }
    }
}

/// Cubic-spline interpolant of a sampled profile, with ∂_t w from `w_t` when
/// present. The second time derivative is not represented and reads as zero.
#[derive(Debug, Clone)]
pub struct ProfileInterpolant<T> {
    w: CubicSpline<T>,
    w_t: Option<CubicSpline<T>>,
}

impl<T: Scalar> ProfileInterpolant<T> {
    pub fn new(profile: &RadialProfile<T>) -> Result<Self> {
        Ok(ProfileInterpolant {
            w: profile.spline()?,
            w_t: profile.velocity_spline()?,
        })
    }
}

impl<T: Scalar> RadialFunction<T> for ProfileInterpolant<T> {
    fn radial_jet(&self, r: T, _t: T) -> RadialJet<T> {
        let (w, w_r, w_rr) = self.w.eval(r);
        let (w_t, w_rt) = match &self.w_t {
            Some(s) => {
                let (v, d, _) = s.eval(r);
                (v, d)
            }
            None => (T::zero(), T::zero()),
        };
        RadialJet {
            w,
            w_r,
            w_rr,
            w_t,
            w_tt: T::zero(),
            w_rt,
        }
    }
}

/// Max |w(0)| accepted by [`lift_hedgehog`].
pub const REGULARITY_TOLERANCE: f64 = 1e-8;

/// Hedgehog field of a sampled profile. The profile must start from w(0) = 0.
pub fn lift_hedgehog<T: Scalar>(profile: &RadialProfile<T>) -> Result<Hedgehog<ProfileInterpolant<T>>> {
    let w0 = profile.w_at_origin();
    if !(w0.abs() <= T::lit(REGULARITY_TOLERANCE)) {
        return Err(Error::Regularity {
            w0: w0.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(Hedgehog {
        profile: ProfileInterpolant::new(profile)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::{nye_analytic, nye_velocity, Moduli};
    use crate::linalg::{eps, Mat3};
    use crate::radial::static_solver::solve_static;

    /// a closed-form profile with every derivative nonzero
    fn analytic(r: f64, t: f64) -> RadialJet<f64> {
        let (a, b) = (0.7, 0.3);
        let w = (a * r).sin() * (1.0 + b * t);
        RadialJet {
            w,
            w_r: a * (a * r).cos() * (1.0 + b * t),
            w_rr: -a * a * (a * r).sin() * (1.0 + b * t),
            w_t: b * (a * r).sin(),
            w_tt: 0.0,
            w_rt: a * b * (a * r).cos(),
        }
    }

    /// Nye tensor of the hedgehog in closed form.
    fn nye_oracle(x: &Vec3<f64>, w: f64, wp: f64) -> Mat3<f64> {
        let r = x.norm();
        let (s, c) = w.sin_cos();
        Mat3::from_fn(|l, k| {
            let e: f64 = (0..3).map(|i| eps::<f64>(l, i, k) * x[i]).sum();
            let d = if l == k { 1.0 } else { 0.0 };
            2.0 * (e / (r * r) * c * c + x[l] * x[k] / (r * r) * wp - s * c * (d / r - x[l] * x[k] / (r * r * r)))
        })
    }

    #[test]
    fn jet_matches_finite_differences() {
        let f = Hedgehog { profile: analytic };
        let x = Vec3::new(0.8, -0.5, 1.1);
        let t = 0.3;
        let jet = f.jet(&x, t);
        let h = 1e-5;
        for m in 0..4 {
            let shift = |d: f64| {
                let (mut y, mut tt) = (x, t);
                if m == TIME {
                    tt += d
                } else {
                    y[m] += d
                }
                f.jet(&y, tt)
            };
            let (p, q) = (shift(h), shift(-h));
            assert!(((p.rotor.alpha - q.rotor.alpha) / (2.0 * h) - jet.d_alpha[m]).abs() < 1e-8);
            assert!(((p.rotor.beta - q.rotor.beta).scale(0.5 / h) - jet.d_beta[m]).max_abs() < 1e-8);
            for n in 0..4 {
                assert!(((p.d_alpha[n] - q.d_alpha[n]) / (2.0 * h) - jet.dd_alpha[m][n]).abs() < 1e-7);
                assert!(((p.d_beta[n] - q.d_beta[n]).scale(0.5 / h) - jet.dd_beta[m][n]).max_abs() < 1e-7);
            }
        }
        assert!(jet.constraint_defect() < 1e-14);
    }

    #[test]
    fn nye_tensor_matches_closed_form() {
        let f = Hedgehog { profile: analytic };
        for p in [[2.0, 0.0, 0.0], [0.3, -1.2, 0.7]] {
            let x = Vec3(p);
            let rj = analytic(x.norm(), 0.0);
            let a = nye_analytic(&f, &x, 0.0);
            assert!((a - nye_oracle(&x, rj.w, rj.w_r)).max_abs() < 1e-13);
            // trace 2w' − 4 sin w cos w / r
            let tr = 2.0 * rj.w_r - 4.0 * rj.w.sin() * rj.w.cos() / x.norm();
            assert!((a.trace() - tr).abs() < 1e-13);
            // A_lt = 2 x_l ẇ / r
            let v = nye_velocity(&f, &x, 0.0);
            assert!((v - x.scale(2.0 * rj.w_t / x.norm())).max_abs() < 1e-13);
        }
    }

    #[test]
    fn zero_profile_gives_pure_defect() {
        let f = Hedgehog {
            profile: |_r: f64, _t: f64| RadialJet::default(),
        };
        let x = Vec3::new(0.4, 1.0, -0.3);
        let r = f.rotor(&x, 0.0);
        assert_eq!(r.alpha, 0.0);
        assert!((r.beta - x.scale(1.0 / x.norm())).max_abs() < 1e-15);
        let expect = Mat3::from_fn(|l, k| 2.0 * (0..3).map(|i| eps::<f64>(l, i, k) * x[i]).sum::<f64>() / x.norm_sq());
        assert!((nye_analytic(&f, &x, 0.0) - expect).max_abs() < 1e-14);
    }

    #[test]
    fn lifted_soliton_matches_closed_form() {
        let m = Moduli::from_couplings(1.0, 1.0).unwrap();
        let sol = solve_static(&m, 1.0, 10.0, 1e-10).unwrap();
        let f = lift_hedgehog(&sol.profile).unwrap();
        let x = Vec3::new(2.0, 0.0, 0.0);
        let i = 200;
        let (w, wp) = (sol.profile.w[i], sol.profile.w_r.as_ref().unwrap()[i]);
        assert!((nye_analytic(&f, &x, 0.0) - nye_oracle(&x, w, wp)).max_abs() < 1e-6);
    }

    #[test]
    fn irregular_profile_is_rejected() {
        let m = Moduli::from_couplings(1.0, 1.0).unwrap();
        let p = RadialProfile::new(vec![0.0, 1.0], vec![0.5, 0.6], m, 0.0, 1e-9).unwrap();
        assert!(matches!(lift_hedgehog(&p), Err(Error::Regularity { .. })));
    }
}
