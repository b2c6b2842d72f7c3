//! Winding charge of a rotor field in the connection gauge.
//!
//! With Λ = u the charge density reduces to det(A)/(16π²), A the Nye tensor,
//! so that a field winding once around SO(3) carries 𝒬 = 1. For the hedgehog
//! β = x̂ cos w, α = sin w this integrates to (1/π)[w + ½ sin 2w] between the
//! radial end points.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{MatrixField, MatrixJet, RotorField, RotorJet};
use crate::grid::RotorGrid;
use crate::kinematics::nye_from_matrix_jet;
use crate::linalg::Vec3;
use crate::radial::RadialProfile;
use crate::scalar::Scalar;
use crate::so3::Rotor;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargeReport<T> {
    pub charge: T,
    pub ball_radius: T,
    pub grid_spacing: T,
    /// |𝒬(h) − 𝒬(2h)|
    pub estimated_error: T,
}

pub fn charge_density<T: Scalar, F: MatrixField<T> + ?Sized>(field: &F, x: &Vec3<T>) -> T {
    density_of_jet(&field.matrix_jet(x, T::zero()))
}

fn density_of_jet<T: Scalar>(mj: &MatrixJet<T>) -> T {
    nye_from_matrix_jet(mj).det() / (T::lit(16.0) * T::PI() * T::PI())
}

/// Midpoint rule over the cells of the lattice (i + ½)h whose centres lie in
/// the ball. Slab sums are reduced in a fixed order, so the result does not
/// depend on the thread count.
fn ball_quadrature<T: Scalar, F: MatrixField<T> + ?Sized>(field: &F, radius: T, h: T) -> Result<T> {
    let n = (radius / h).ceil().to_i64().unwrap_or(0);
    let centre = |i: i64| (T::from_i64(i).unwrap_or_else(T::zero) + T::half()) * h;
    let r2 = radius * radius;
    let slabs: Vec<Result<T>> = (-n..n)
        .into_par_iter()
        .map(|i| {
            let x = centre(i);
            let mut acc = T::zero();
            for j in -n..n {
                let y = centre(j);
                if x * x + y * y > r2 {
                    continue;
                }
                for k in -n..n {
                    let p = Vec3::new(x, y, centre(k));
                    if p.norm_sq() > r2 {
                        continue;
                    }
                    let d = charge_density(field, &p);
                    if !d.is_finite() {
                        return Err(Error::NonFinite {
                            point: p.0.map(|v| v.to_f64().unwrap_or(f64::NAN)),
                        });
                    }
                    acc = acc + d;
                }
            }
            Ok(acc)
        })
        .collect();
    let mut total = T::zero();
    for s in slabs {
        total = total + s?;
    }
    Ok(total * h * h * h)
}

fn check_ball<T: Scalar>(radius: T, h: T) -> Result<()> {
    if !(radius > T::zero() && radius.is_finite()) {
        return Err(Error::Config(format!("ball radius must be positive, got {radius}")));
    }
    if !(h > T::zero() && h <= radius) {
        return Err(Error::Config(format!("grid spacing must lie in (0, radius], got {h}")));
    }
    Ok(())
}

/// Charge inside the ball |x| ≤ radius, with the spacings h and 2h compared
/// for the error estimate.
pub fn total_charge<T: Scalar, F: MatrixField<T> + ?Sized>(field: &F, radius: T, h: T) -> Result<ChargeReport<T>> {
    check_ball(radius, h)?;
    let fine = ball_quadrature(field, radius, h)?;
    let coarse = ball_quadrature(field, radius, T::two() * h)?;
    Ok(ChargeReport {
        charge: fine,
        ball_radius: radius,
        grid_spacing: h,
        estimated_error: (fine - coarse).abs(),
    })
}

/// Charge of the hedgehog lift of `profile` inside the ball, from the radial
/// density (2/π) w' cos² w by composite Simpson on n and n/2 intervals.
pub fn radial_charge<T: Scalar>(profile: &RadialProfile<T>, radius: T, h: T) -> Result<ChargeReport<T>> {
    check_ball(radius, h)?;
    if radius > profile.r_max() {
        return Err(Error::Config(format!(
            "ball radius {radius} exceeds the profile range {}",
            profile.r_max()
        )));
    }
    let spline = profile.spline()?;
    let r0 = profile.r[0];
    let density = |r: T| {
        let (w, wr, _) = spline.eval(r);
        let c = w.cos();
        T::two() * wr * c * c / T::PI()
    };
    let simpson = |intervals: usize| -> T {
        let step = (radius - r0) / T::from_usize_lossy(intervals);
        let mut s = density(r0) + density(radius);
        for i in 1..intervals {
            let wgt = if i % 2 == 1 { T::lit(4.0) } else { T::two() };
            s = s + wgt * density(r0 + step * T::from_usize_lossy(i));
        }
        s * step / T::lit(3.0)
    };
    let half = ((radius - r0) / (T::two() * h)).ceil().to_usize().unwrap_or(1).max(1);
    let intervals = 2 * half;
    let fine = simpson(intervals);
    let coarse = if half.is_multiple_of(2) { simpson(half) } else { simpson(half + 1) };
    if !fine.is_finite() {
        return Err(Error::NonFinite {
            point: [radius.to_f64().unwrap_or(f64::NAN), 0.0, 0.0],
        });
    }
    Ok(ChargeReport {
        charge: fine,
        ball_radius: radius,
        grid_spacing: (radius - r0) / T::from_usize_lossy(intervals),
        estimated_error: (fine - coarse).abs(),
    })
}

/// Pointwise ordered product u = u_1 · u_2 ⋯ u_N, composed at the rotor
/// level so the double-cover sign stays continuous wherever the factors' do.
pub struct ProductField<'a, T> {
    pub factors: Vec<Box<dyn RotorField<T> + 'a>>,
}

impl<'a, T: Scalar> ProductField<'a, T> {
    pub fn new(factors: Vec<Box<dyn RotorField<T> + 'a>>) -> Self {
        ProductField { factors }
    }
}

impl<T: Scalar> RotorField<T> for ProductField<'_, T> {
    fn jet(&self, x: &Vec3<T>, t: T) -> RotorJet<T> {
        self.factors
            .iter()
            .map(|f| f.jet(x, t))
            .reduce(|acc, j| acc.compose(&j))
            .unwrap_or_else(|| RotorJet::constant(Rotor::identity()))
    }
}

/// Samples a matrix field on a grid and recovers rotors, choosing each sign
/// to maximise the 4-vector dot product with the previously stored neighbour
/// (−x, else −y, else −z).
pub fn sample_matrix_field<T: Scalar, F: MatrixField<T> + ?Sized>(
    field: &F,
    dims: [usize; 3],
    h: T,
    origin: Vec3<T>,
) -> Result<RotorGrid<T>> {
    let len = dims.iter().product();
    let mut values: Vec<Rotor<T>> = Vec::with_capacity(len);
    let lin = |i: usize, j: usize, k: usize| i + dims[0] * (j + dims[1] * k);
    for k in 0..dims[2] {
        for j in 0..dims[1] {
            for i in 0..dims[0] {
                let p = Vec3::from_fn(|a| origin[a] + h * T::from_usize_lossy([i, j, k][a]));
                let u = field.matrix_jet(&p, T::zero()).u;
                let reference = if i > 0 {
                    Some(values[lin(i - 1, j, k)])
                } else if j > 0 {
                    Some(values[lin(i, j - 1, k)])
                } else if k > 0 {
                    Some(values[lin(i, j, k - 1)])
                } else {
                    None
                };
                values.push(Rotor::from_matrix(&u, reference.as_ref())?);
            }
        }
    }
    RotorGrid::new(dims, h, origin, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ConstantField, Translated};
    use crate::linalg::Mat3;
    use crate::radial::{Hedgehog, RadialJet};
    use crate::so3::AlphaSign;
    use std::f64::consts::{FRAC_PI_2, PI};

    /// w = −π/2 + π(1 − e^{−r²}): regular at the origin, identity at infinity
    fn compact(r: f64, _t: f64) -> RadialJet<f64> {
        let e = (-r * r).exp();
        RadialJet {
            w: FRAC_PI_2 - PI * e,
            w_r: 2.0 * PI * r * e,
            w_rr: 2.0 * PI * e * (1.0 - 2.0 * r * r),
            ..RadialJet::default()
        }
    }

    fn compact_hedgehog() -> Hedgehog<fn(f64, f64) -> RadialJet<f64>> {
        Hedgehog {
            profile: compact as fn(f64, f64) -> RadialJet<f64>,
        }
    }

    struct LeftRotated<F> {
        inner: F,
        l: Mat3<f64>,
    }

    impl<F: MatrixField<f64>> MatrixField<f64> for LeftRotated<F> {
        fn matrix_jet(&self, x: &Vec3<f64>, t: f64) -> MatrixJet<f64> {
            self.inner.matrix_jet(x, t).left_multiplied(&self.l)
        }
    }

    #[test]
    fn identity_field_has_no_charge() {
        let f = ConstantField(Rotor::<f64>::identity());
        assert_eq!(charge_density(&f, &Vec3::new(0.3, 0.1, -2.0)), 0.0);
        let rep = total_charge(&f, 3.0, 0.5).unwrap();
        assert_eq!(rep.charge, 0.0);
        assert_eq!(rep.estimated_error, 0.0);
    }

    #[test]
    fn hedgehog_density_matches_radial_form() {
        // r² det A = 8 w' cos² w
        let f = compact_hedgehog();
        for p in [[0.7, 0.0, 0.0], [0.2, -0.5, 0.9], [1.3, 0.4, -0.2]] {
            let x = Vec3(p);
            let r = x.norm();
            let rj = compact(r, 0.0);
            let expect = 8.0 * rj.w_r * rj.w.cos().powi(2) / (r * r) / (16.0 * PI * PI);
            assert!((charge_density(&f, &x) - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn hedgehog_density_is_spherically_symmetric() {
        let f = compact_hedgehog();
        let r = 0.8;
        let vals: Vec<f64> = (0..20)
            .map(|i| {
                let th = 0.3 + 0.13 * i as f64;
                let ph = 0.7 * i as f64;
                charge_density(&f, &Vec3::new(r * th.sin() * ph.cos(), r * th.sin() * ph.sin(), r * th.cos()))
            })
            .collect();
        let spread = vals.iter().cloned().fold(f64::MIN, f64::max) - vals.iter().cloned().fold(f64::MAX, f64::min);
        assert!(spread <= 1e-10);
    }

    #[test]
    fn compact_hedgehog_has_unit_charge() {
        let rep = total_charge(&compact_hedgehog(), 4.0, 0.1).unwrap();
        assert!((rep.charge - 1.0).abs() < 0.02, "{rep:?}");
        assert!((rep.charge - rep.charge.round()).abs() <= 3.0 * rep.estimated_error.max(1e-3));
        // the antihedgehog w → −w flips the sign
        let anti = Hedgehog {
            profile: |r: f64, t: f64| {
                let j = compact(r, t);
                RadialJet {
                    w: -j.w,
                    w_r: -j.w_r,
                    w_rr: -j.w_rr,
                    ..j
                }
            },
        };
        assert!((total_charge(&anti, 4.0, 0.1).unwrap().charge + 1.0).abs() < 0.02);
    }

    #[test]
    fn charge_is_invariant_under_rigid_rotation() {
        let l = Rotor::from_beta(Vec3::new(0.3, -0.5, 0.2), AlphaSign::Positive).unwrap().to_matrix();
        let a = total_charge(&compact_hedgehog(), 4.0, 0.1).unwrap();
        let b = total_charge(&LeftRotated { inner: compact_hedgehog(), l }, 4.0, 0.1).unwrap();
        assert!((a.charge - b.charge).abs() < 1e-3);
    }

    #[test]
    fn product_of_separated_hedgehogs_adds_charges() {
        let f = ProductField::new(vec![
            Box::new(Translated {
                inner: compact_hedgehog(),
                center: Vec3::new(-3.0, 0.0, 0.0),
            }),
            Box::new(Translated {
                inner: compact_hedgehog(),
                center: Vec3::new(3.0, 0.0, 0.0),
            }),
        ]);
        let rep = total_charge(&f, 7.0, 0.125).unwrap();
        assert!((rep.charge - 2.0).abs() < 0.1, "{rep:?}");
    }

    #[test]
    fn trivial_products() {
        let h = compact_hedgehog();
        let x = Vec3::new(0.4, -0.2, 0.9);
        let single = ProductField::new(vec![Box::new(compact_hedgehog())]);
        let padded = ProductField::new(vec![
            Box::new(compact_hedgehog()),
            Box::new(ConstantField(Rotor::<f64>::identity())),
        ]);
        let want = h.matrix_jet(&x, 0.0);
        for f in [&single, &padded] {
            let got = f.matrix_jet(&x, 0.0);
            assert!((got.u - want.u).max_abs() < 1e-15);
            for m in 0..4 {
                assert!((got.du[m] - want.du[m]).max_abs() < 1e-15);
            }
        }
    }

    #[test]
    fn product_jet_follows_the_product_rule() {
        let f = ProductField::new(vec![
            Box::new(Translated {
                inner: compact_hedgehog(),
                center: Vec3::new(0.3, 0.0, -0.2),
            }),
            Box::new(crate::fields::BumpField::random(4, 3, 2.0)),
        ]);
        let x = Vec3::new(0.5, -0.4, 0.35);
        let jet = f.jet(&x, 0.0);
        let mj = f.factors[0].matrix_jet(&x, 0.0).product(&f.factors[1].matrix_jet(&x, 0.0));
        assert!((jet.matrix_jet().u - mj.u).max_abs() < 1e-13);
        let h = 1e-5;
        for m in 0..3 {
            assert!((jet.matrix_jet().du[m] - mj.du[m]).max_abs() < 1e-12);
            let mut p = x;
            p[m] += h;
            let mut q = x;
            q[m] -= h;
            let (a, b) = (f.jet(&p, 0.0), f.jet(&q, 0.0));
            for n in 0..3 {
                assert!(((a.d_alpha[n] - b.d_alpha[n]) / (2.0 * h) - jet.dd_alpha[m][n]).abs() < 1e-7);
                assert!(((a.d_beta[n] - b.d_beta[n]).scale(0.5 / h) - jet.dd_beta[m][n]).max_abs() < 1e-7);
            }
        }
        assert!(jet.constraint_defect() < 1e-13);
    }

    #[test]
    fn sampled_rotors_are_sign_continuous() {
        let f = ProductField::new(vec![Box::new(compact_hedgehog()), Box::new(compact_hedgehog())]);
        let g = sample_matrix_field(&f, [9, 9, 9], 0.25, Vec3::new(-1.0, -1.0, -1.0)).unwrap();
        for k in 0..9 {
            for j in 0..9 {
                for i in 0..9 {
                    let here = *g.get([i, j, k]);
                    let u = f.matrix_jet(&g.position([i, j, k]), 0.0).u;
                    assert!((here.to_matrix() - u).max_abs() < 1e-12);
                    if i > 0 {
                        assert!(here.dot(g.get([i - 1, j, k])) > 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn radial_quadrature_matches_closed_form_and_3d() {
        let r: Vec<f64> = (0..=400).map(|i| i as f64 * 0.01).collect();
        let w: Vec<f64> = r.iter().map(|x| compact(*x, 0.0).w).collect();
        let m = crate::kinematics::Moduli::from_couplings(1.0, 1.0).unwrap();
        let p = RadialProfile::new(r, w, m, 0.0, 1e-9).unwrap();
        let big = |w: f64| (w + 0.5 * (2.0 * w).sin()) / PI;
        for radius in [1.0, 2.5, 4.0] {
            let rep = radial_charge(&p, radius, 0.01).unwrap();
            let exact = big(compact(radius, 0.0).w) - big(compact(0.0, 0.0).w);
            assert!((rep.charge - exact).abs() < 1e-4, "R = {radius}: {rep:?}");
        }
        let f = compact_hedgehog();
        let full = total_charge(&f, 2.5, 0.05).unwrap().charge;
        assert!((radial_charge(&p, 2.5, 0.01).unwrap().charge - full).abs() < 1e-3);
    }

    #[test]
    fn bad_ball_is_rejected() {
        let f = ConstantField(Rotor::<f64>::identity());
        assert!(matches!(total_charge(&f, -1.0, 0.1), Err(Error::Config(_))));
        assert!(matches!(total_charge(&f, 1.0, 0.0), Err(Error::Config(_))));
    }

    #[test]
    fn nonfinite_density_is_reported() {
        let nan = Hedgehog {
            profile: |_r: f64, _t: f64| RadialJet {
                w: f64::NAN,
                ..RadialJet::default()
            },
        };
        assert!(matches!(total_charge(&nan, 1.0, 0.5), Err(Error::NonFinite { .. })));
    }
}
