//! Closed-form rotor fields used as test inputs and by the CLI.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{RotorField, RotorJet, TIME};
use crate::linalg::{delta, Vec3};
use crate::scalar::Scalar;

/// One compactly supported bump β = a (1 − |x − c|²/R²)^6 inside the ball.
#[derive(Debug, Clone, Copy)]
pub struct Bump<T> {
    pub center: Vec3<T>,
    pub radius: T,
    pub amplitude: Vec3<T>,
}

/// Sum of bumps; α = +√(1 − β²). Smooth (C⁵) with compact support.
#[derive(Debug, Clone)]
pub struct BumpField<T> {
    pub bumps: Vec<Bump<T>>,
}

impl<T: Scalar> BumpField<T> {
    /// Random bumps supported inside the cube |x_i| ≤ `extent`: centres in
    /// |c_i| ≤ extent/4, support radius in [extent/2, 3 extent/4], so every
    /// bump covers the origin. Amplitudes are scaled so that Σ|a| ≤ 0.9 and
    /// α stays away from zero.
    pub fn random(seed: u64, count: usize, extent: T) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ext = extent.to_f64().unwrap_or(1.0);
        let mut bumps: Vec<Bump<T>> = (0..count)
            .map(|_| {
                let radius = rng.gen_range(ext / 2.0..0.75 * ext);
                Bump {
                    center: Vec3::from_fn(|_| T::lit(rng.gen_range(-ext / 4.0..ext / 4.0))),
                    radius: T::lit(radius),
                    amplitude: Vec3::from_fn(|_| T::lit(rng.gen_range(-1.0..1.0))),
                }
            })
            .collect();
        let total: T = bumps.iter().map(|b| b.amplitude.norm()).sum();
        if total > T::zero() {
            let s = T::lit(0.9) / total;
            for b in &mut bumps {
                b.amplitude = b.amplitude.scale(s);
            }
        }
        BumpField { bumps }
    }
}

impl<T: Scalar> RotorField<T> for BumpField<T> {
    fn jet(&self, x: &Vec3<T>, _t: T) -> RotorJet<T> {
        let mut beta = Vec3::zeros();
        let mut d_beta = [Vec3::zeros(); 4];
        let mut dd_beta = [[Vec3::zeros(); 4]; 4];
        let two = T::two();
        for b in &self.bumps {
            let d = *x - b.center;
            let r2 = b.radius * b.radius;
            let q = d.norm_sq() / r2;
            if q >= T::one() {
                continue;
            }
            let s = T::one() - q;
            let s4 = s * s * s * s;
            let psi = s4 * s * s;
            let dpsi = -T::lit(6.0) * s4 * s;
            let ddpsi = T::lit(30.0) * s4;
            beta += b.amplitude.scale(psi);
            for k in 0..3 {
                let gk = dpsi * two * d[k] / r2;
                d_beta[k] += b.amplitude.scale(gk);
                for m in 0..3 {
                    let hmk = ddpsi * T::lit(4.0) * d[m] * d[k] / (r2 * r2)
                        + dpsi * two * delta::<T>(m, k) / r2;
                    dd_beta[m][k] += b.amplitude.scale(hmk);
                }
            }
        }
        RotorJet::from_beta_jet(beta, d_beta, dd_beta, false)
    }
}

/// β = ε e cos(k·x − ωt + φ) with α = +√(1 − β²).
#[derive(Debug, Clone, Copy)]
pub struct PlaneWave<T> {
    pub amplitude: T,
    pub polarization: Vec3<T>,
    pub wave_vector: Vec3<T>,
    pub omega: T,
    pub phase: T,
}

impl<T: Scalar> RotorField<T> for PlaneWave<T> {
    fn jet(&self, x: &Vec3<T>, t: T) -> RotorJet<T> {
        let theta = self.wave_vector.dot(x) - self.omega * t + self.phase;
        let grad: [T; 4] = [
            self.wave_vector[0],
            self.wave_vector[1],
            self.wave_vector[2],
            -self.omega,
        ];
        let (s, c) = theta.sin_cos();
        let e = self.polarization.scale(self.amplitude);
        let beta = e.scale(c);
        let d_beta = std::array::from_fn(|m| e.scale(-s * grad[m]));
        let dd_beta =
            std::array::from_fn(|m| std::array::from_fn(|n| e.scale(-c * grad[m] * grad[n])));
        debug_assert_eq!(TIME, 3);
        RotorJet::from_beta_jet(beta, d_beta, dd_beta, false)
    }
}
