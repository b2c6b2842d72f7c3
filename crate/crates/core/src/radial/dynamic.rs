//! Time-dependent radial equation ẅ = λ1 Δw + U(w)/r².
//!
//! Semi-discretisation on the uniform nodes r_i = i Δr of the initial
//! profile, with w_0 = 0 and w_N clamped to its initial value:
//!
//! ```text
//! ẅ_i = λ1 [r²_{i+½}(w_{i+1} − w_i) − r²_{i−½}(w_i − w_{i−1})] / (r_i² Δr²) + U(w_i)/r_i²
//! ```
//!
//! This is the Euler–Lagrange system of the discrete Lagrangian
//! Σ r_i² Δr ẇ_i² − λ1 Σ r²_{i+½} (Δw)²/Δr + Σ Δr Φ(w_i), Φ' = 2U, so the
//! energy in [`discrete_energy`] is conserved up to the O(Δt²) oscillation of
//! the velocity Verlet integrator.

use crate::error::{Error, Result};
use crate::kinematics::Moduli;
use crate::scalar::Scalar;

use super::profile::RadialProfile;
use super::static_solver::{potential_phi, potential_u};

/// Max |w(0)| accepted as regular.
pub const ORIGIN_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    pub times: Vec<T>,
    /// snapshots with `w_t` filled in
    pub frames: Vec<RadialProfile<T>>,
    /// discrete energy at each snapshot
    pub energies: Vec<T>,
    pub steps: usize,
}

impl<T: Scalar> Trajectory<T> {
    /// max over snapshots of max_i |w_i(t) − w_i(0)|
    pub fn max_drift(&self) -> T {
        let w0 = &self.frames[0].w;
        self.frames
            .iter()
            .flat_map(|f| f.w.iter().zip(w0).map(|(a, b)| (*a - *b).abs()))
            .fold(T::zero(), T::max)
    }

    /// max over snapshots of |E(t) − E(0)| / |E(0)|
    pub fn relative_energy_drift(&self) -> T {
        let e0 = self.energies[0];
        let scale = if e0 == T::zero() { T::one() } else { e0.abs() };
        self.energies
            .iter()
            .map(|e| (*e - e0).abs() / scale)
            .fold(T::zero(), T::max)
    }
}

/// Conserved energy of the semi-discrete system.
pub fn discrete_energy<T: Scalar>(w: &[T], v: &[T], dr: T, m: &Moduli<T>) -> T {
    let n = w.len() - 1;
    let mut kin = T::zero();
    let mut pot = T::zero();
    for i in 1..n {
        let r = dr * T::from_usize_lossy(i);
        kin = kin + r * r * dr * v[i] * v[i];
        pot = pot - dr * potential_phi(w[i], m);
    }
    let mut grad = T::zero();
    for i in 0..n {
        let rh = dr * (T::from_usize_lossy(i) + T::half());
        let d = w[i + 1] - w[i];
        grad = grad + rh * rh * d * d / dr;
    }
    kin + m.lambda1 * grad + pot
}

fn acceleration<T: Scalar>(w: &[T], acc: &mut [T], dr: T, m: &Moduli<T>) {
    let n = w.len() - 1;
    let inv = T::one() / (dr * dr);
    for i in 1..n {
        let fi = T::from_usize_lossy(i);
        let (rp, rm) = (fi + T::half(), fi - T::half());
        let lap = (rp * rp * (w[i + 1] - w[i]) - rm * rm * (w[i] - w[i - 1])) / (fi * fi);
        let r = dr * fi;
        acc[i] = m.lambda1 * lap * inv + potential_u(w[i], m) / (r * r);
    }
    acc[0] = T::zero();
    acc[n] = T::zero();
}

/// Evolves `initial` (velocity from `w_t`, zero if absent) to `t_end` with
/// step `dt`, keeping `snapshots + 1` evenly spaced frames including t = 0.
pub fn evolve_dynamic<T: Scalar>(initial: &RadialProfile<T>, dt: T, t_end: T, snapshots: usize) -> Result<Trajectory<T>> {
    let m = initial.moduli;
    m.require_positive_lambda1()?;
    let dr = initial
        .uniform_spacing()
        .ok_or_else(|| Error::Config("dynamic evolution needs a uniform radial grid".into()))?;
    if initial.r[0] != T::zero() {
        return Err(Error::Config("dynamic evolution needs the grid to start at r = 0".into()));
    }
    let w0 = initial.w[0];
    if w0.abs() > T::lit(ORIGIN_TOLERANCE) {
        return Err(Error::Regularity {
            w0: w0.to_f64().unwrap_or(f64::NAN),
        });
    }
    if !(dt > T::zero() && t_end >= T::zero()) {
        return Err(Error::Config("dt must be positive and t_end non-negative".into()));
    }
    let cfl = dr / m.lambda1.sqrt();
    if dt > cfl {
        return Err(Error::Config(format!("dt = {dt} violates the CFL bound dr/sqrt(lambda1) = {cfl}")));
    }
    let snapshots = snapshots.max(1);
    let steps = (t_end / dt).round().to_usize().unwrap_or(0);
    let dt = if steps == 0 { dt } else { t_end / T::from_usize_lossy(steps) };

    let mut w = initial.w.clone();
    w[0] = T::zero();
    let n = w.len() - 1;
    let mut v = initial.w_t.clone().unwrap_or_else(|| vec![T::zero(); n + 1]);
    v[0] = T::zero();
    v[n] = T::zero();
    let mut acc = vec![T::zero(); n + 1];
    acceleration(&w, &mut acc, dr, &m);

    let frame = |w: &[T], v: &[T]| -> Result<RadialProfile<T>> {
        RadialProfile::new(initial.r.clone(), w.to_vec(), m, initial.slope0, initial.tol)?.with_velocity(v.to_vec())
    };
    let mut traj = Trajectory {
        times: vec![T::zero()],
        frames: vec![frame(&w, &v)?],
        energies: vec![discrete_energy(&w, &v, dr, &m)],
        steps,
    };
    let half = T::half() * dt;
    let mut next_snap = 1;
    for step in 1..=steps {
        for i in 1..n {
            v[i] = v[i] + half * acc[i];
            w[i] = w[i] + dt * v[i];
        }
        acceleration(&w, &mut acc, dr, &m);
        for i in 1..n {
            v[i] = v[i] + half * acc[i];
        }
        let t = dt * T::from_usize_lossy(step);
        if w.iter().chain(&v).any(|x| !x.is_finite()) {
            return Err(Error::Instability {
                time: t.to_f64().unwrap_or(f64::NAN),
            });
        }
        while next_snap <= snapshots && step * snapshots >= next_snap * steps {
            traj.times.push(t);
            traj.frames.push(frame(&w, &v)?);
            traj.energies.push(discrete_energy(&w, &v, dr, &m));
            next_snap += 1;
        }
    }
    Ok(traj)
}
