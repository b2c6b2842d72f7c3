//! Acceptance criteria as executable checks. Each check returns an
//! [`Outcome`] carrying the measured numbers, so a failing criterion reports
//! how far off it is.

use std::f64::consts::{FRAC_PI_4, PI};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use micropolar::equations::{h_tensors, max_residual_eqs2_grid, residual_eqs2};
use micropolar::fields::{BumpField, PlaneWave};
use micropolar::kinematics::{check_identity_tt, kinetic_density, nye_analytic, nye_fd, potential_density};
use micropolar::radial::{equilibria, evolve_dynamic, lift_hedgehog, potential_u, solve_static, RadialProfile};
use micropolar::topology::{radial_charge, total_charge, ProductField};
use micropolar::{ConstantField, Mat3, Moduli, Rotor, RotorGrid, Translated, Vec3};

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    fn new(id: u8, name: &'static str, passed: bool, detail: String) -> Self {
        Outcome { id, name, passed, detail }
    }

    fn error(id: u8, name: &'static str, err: impl std::fmt::Display) -> Self {
        Outcome::new(id, name, false, format!("error: {err}"))
    }

    pub fn line(&self) -> String {
        format!(
            "{} {:>2} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail
        )
    }
}

fn lambdas(l1: f64, l2: f64) -> Moduli<f64> {
    Moduli::from_couplings(l1, l2).expect("valid couplings")
}

fn fig1_profile(r_max: f64) -> micropolar::Result<RadialProfile<f64>> {
    Ok(solve_static(&lambdas(1.0, 1.0), 1.0, r_max, 1e-10)?.profile)
}

pub fn soliton_reproduction() -> Outcome {
    const NAME: &str = "soliton reproduction";
    let start = Instant::now();
    let sol = match solve_static(&lambdas(1.0, 1.0), 1.0, 50.0, 1e-9) {
        Ok(s) => s,
        Err(e) => return Outcome::error(1, NAME, e),
    };
    let elapsed = start.elapsed().as_secs_f64();
    let w = &sol.profile.w;
    let monotone = w.windows(2).all(|p| p[1] >= p[0]);
    let end_dev = (sol.profile.w_end() - FRAC_PI_4).abs();
    let peak = w.iter().cloned().fold(f64::MIN, f64::max);
    let passed = monotone && end_dev <= 0.02 && peak <= FRAC_PI_4 + 0.01 && elapsed <= 1.0;
    Outcome::new(
        1,
        NAME,
        passed,
        format!("monotone={monotone} |w(50)-pi/4|={end_dev:.4} peak={peak:.4} (limit {:.4}) time={elapsed:.3}s", FRAC_PI_4 + 0.01),
    )
}

pub fn special_case_reductions() -> Outcome {
    let (a, b) = (lambdas(1.0, 2.0), lambdas(1.0, 1.0));
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut e1, mut e2) = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let w: f64 = rng.gen_range(-PI..PI);
        e1 = e1.max((potential_u(w, &a) - (2.0 * w).sin()).abs());
        e2 = e2.max((potential_u(w, &b) + 0.5 * (4.0 * w).sin()).abs());
    }
    Outcome::new(
        2,
        "special-case reductions",
        e1 <= 1e-12 && e2 <= 1e-12,
        format!("max|U-sin2w|={e1:.2e} max|U+sin4w/2|={e2:.2e}"),
    )
}

pub fn radial_to_3d_consistency() -> Outcome {
    const NAME: &str = "radial-to-3D consistency";
    let start = Instant::now();
    let run = || -> micropolar::Result<(f64, f64)> {
        let field = lift_hedgehog(&fig1_profile(10.0)?)?;
        let m = lambdas(1.0, 1.0);
        let annulus = |x: &Vec3<f64>| (1.0..=5.0).contains(&x.norm());
        let residual = |h: f64| -> micropolar::Result<f64> {
            let n = (2.0 * 5.4 / h).round() as usize + 1;
            let grid = RotorGrid::sample_centered(&field, n, h, 0.0)?;
            max_residual_eqs2_grid(&grid, &m, annulus)
        };
        Ok((residual(0.2)?, residual(0.1)?))
    };
    match run() {
        Ok((coarse, fine)) => {
            let elapsed = start.elapsed().as_secs_f64();
            let ratio = coarse / fine;
            Outcome::new(
                3,
                NAME,
                ratio >= 3.0 && elapsed <= 30.0,
                format!("max residual h=0.2: {coarse:.3e}, h=0.1: {fine:.3e}, ratio={ratio:.2} time={elapsed:.1}s"),
            )
        }
        Err(e) => Outcome::error(3, NAME, e),
    }
}

pub fn identity_tt() -> Outcome {
    const NAME: &str = "torsion-square identity";
    let f = BumpField::<f64>::random(21, 3, 1.5);
    let run = || -> micropolar::Result<(f64, f64)> {
        Ok((
            check_identity_tt(&RotorGrid::sample_centered(&f, 31, 0.1, 0.0)?)?,
            check_identity_tt(&RotorGrid::sample_centered(&f, 61, 0.05, 0.0)?)?,
        ))
    };
    match run() {
        Ok((r1, r2)) => Outcome::new(
            4,
            NAME,
            r1 / r2 >= 3.0,
            format!("max residual h=0.1: {r1:.3e}, h=0.05: {r2:.3e}, ratio={:.2}", r1 / r2),
        ),
        Err(e) => Outcome::error(4, NAME, e),
    }
}

pub fn topological_charge() -> Outcome {
    const NAME: &str = "topological charge";
    let run = || -> micropolar::Result<(f64, f64, f64, f64)> {
        let identity = total_charge(&ConstantField(Rotor::<f64>::identity()), 5.0, 0.25)?.charge;
        let profile = fig1_profile(60.0)?;
        let soliton = radial_charge(&profile, 40.0, 0.01)?.charge;
        let pair = ProductField::new(vec![
            Box::new(Translated {
                inner: lift_hedgehog(&profile)?,
                center: Vec3::new(-8.0, 0.0, 0.0),
            }),
            Box::new(Translated {
                inner: lift_hedgehog(&profile)?,
                center: Vec3::new(8.0, 0.0, 0.0),
            }),
        ]);
        // point defects at the centres make the midpoint rule first order
        let rep = total_charge(&pair, 16.0, 0.2)?;
        let coarse = total_charge(&pair, 16.0, 0.4)?.charge;
        Ok((identity, soliton, rep.charge, 2.0 * rep.charge - coarse))
    };
    match run() {
        Ok((q0, q1, q2_raw, q2)) => Outcome::new(
            5,
            NAME,
            q0.abs() <= 1e-6 && (q1 - 1.0).abs() <= 0.05 && (q2 - 2.0).abs() <= 0.1,
            format!("identity={q0:.1e} soliton(R=40)={q1:.4} pair(R=16)={q2:.4} (h=0.2 raw {q2_raw:.4})"),
        ),
        Err(e) => Outcome::error(5, NAME, e),
    }
}

/// Positive root of the autonomous forcing by bisection.
fn forcing_root(rho: f64) -> f64 {
    let g = |f: f64| -2.0 * f.sinh() - 4.0 * f.tanh() + 2.0 * rho * (f.sinh() + f.tanh());
    let (mut lo, mut hi) = (1e-3, 10.0);
    assert!(g(lo) * g(hi) < 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(lo) * g(mid) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn equilibria_check() -> Outcome {
    const NAME: &str = "equilibria";
    let m = lambdas(1.0, 1.25);
    let eq = match equilibria(&m) {
        Ok(e) => e,
        Err(e) => return Outcome::error(6, NAME, e),
    };
    let oracle = forcing_root(1.25).sinh();
    let mut sinh_err = f64::INFINITY;
    if eq.len() == 3 {
        sinh_err = (eq[1].f_star.sinh() + oracle).abs().max((eq[2].f_star.sinh() - oracle).abs());
    }
    let origin_everywhere = [(1.0, 1.0), (1.0, 1.25), (2.0, 0.5), (1.0, 3.0), (0.7, 0.9)]
        .iter()
        .all(|&(a, b)| equilibria(&lambdas(a, b)).map(|e| e[0].f_star == 0.0).unwrap_or(false));
    // μ² + μ − k = 0, k = (2 − 2ρ) cosh f + (4 − 2ρ) sech² f
    let rho = 1.25;
    let mut eig_err = 0.0f64;
    for e in &eq {
        let f = e.f_star;
        let k = (2.0 - 2.0 * rho) * f.cosh() + (4.0 - 2.0 * rho) / f.cosh().powi(2);
        let disc = 1.0 + 4.0 * k;
        let expect = if disc >= 0.0 {
            [(-1.0 - disc.sqrt()) / 2.0, 0.0, (-1.0 + disc.sqrt()) / 2.0, 0.0]
        } else {
            [-0.5, -(-disc).sqrt() / 2.0, -0.5, (-disc).sqrt() / 2.0]
        };
        let got = [e.eigenvalues[0].re, e.eigenvalues[0].im, e.eigenvalues[1].re, e.eigenvalues[1].im];
        for (g, x) in got.iter().zip(expect) {
            eig_err = eig_err.max((g - x).abs());
        }
    }
    let eigs: Vec<String> = eq
        .iter()
        .map(|e| format!("f={:+.6}: {:.4}{:+.4}i, {:.4}{:+.4}i", e.f_star, e.eigenvalues[0].re, e.eigenvalues[0].im, e.eigenvalues[1].re, e.eigenvalues[1].im))
        .collect();
    Outcome::new(
        6,
        NAME,
        sinh_err <= 1e-8 && origin_everywhere && eig_err <= 1e-6,
        format!(
            "count={} |sinh f*-oracle|={sinh_err:.1e} f=0 always={origin_everywhere} eigen err={eig_err:.1e} [{}]",
            eq.len(),
            eigs.join("; ")
        ),
    )
}

/// ω² at which the nonlinear residual of a small plane wave, projected on its
/// polarization, vanishes (secant in ω²).
fn measured_omega_sq(m: &Moduli<f64>, k: Vec3<f64>, e: Vec3<f64>) -> f64 {
    let x = Vec3::new(0.2, -0.1, 0.05);
    let res = |w2: f64| {
        let wave = PlaneWave {
            amplitude: 1e-5,
            polarization: e,
            wave_vector: k,
            omega: w2.max(0.0).sqrt(),
            phase: 0.3,
        };
        residual_eqs2(&wave, &x, 0.0, m).dot(&e)
    };
    let (mut a, mut b) = (0.1 * k.norm_sq(), 2.0 * k.norm_sq());
    let (mut fa, mut fb) = (res(a), res(b));
    for _ in 0..50 {
        if fb == fa {
            break;
        }
        let c = b - fb * (b - a) / (fb - fa);
        a = b;
        fa = fb;
        b = c;
        fb = res(b);
        if (b - a).abs() <= 1e-14 * b.abs() {
            break;
        }
    }
    b
}

pub fn linearized_dispersion() -> Outcome {
    // 4β̇² − 4λ1 (div β)² − 2λ2 |curl β|² gives 8β̈ = 8λ1 ∇ div β − 4λ2 curl curl β:
    // ω² = λ1 k² along k, ω² = λ2 k²/2 across it
    let m = lambdas(1.3, 0.7);
    let k: Vec3<f64> = Vec3::new(0.9, -0.4, 0.5);
    let long = k.scale(1.0 / k.norm());
    let trans = {
        let t = Vec3::new(0.0, 0.5, 0.4);
        t.scale(1.0 / t.norm())
    };
    debug_assert!(long.dot(&trans).abs() < 1e-14);
    let c2_long = measured_omega_sq(&m, k, long) / k.norm_sq();
    let c2_trans = measured_omega_sq(&m, k, trans) / k.norm_sq();
    let (t_long, t_trans) = (m.lambda1, m.lambda2 / 2.0);
    let (e_long, e_trans) = ((c2_long / t_long - 1.0).abs(), (c2_trans / t_trans - 1.0).abs());
    Outcome::new(
        7,
        "linearized dispersion",
        e_long <= 0.01 && e_trans <= 0.01,
        format!("longitudinal c2={c2_long:.6} (target {t_long}), transverse c2={c2_trans:.6} (target {t_trans})"),
    )
}

pub fn dynamic_stability() -> Outcome {
    const NAME: &str = "dynamic stability";
    let run = || -> micropolar::Result<(f64, f64)> {
        let profile = fig1_profile(30.0)?;
        let tr = evolve_dynamic(&profile, 0.0025, 10.0, 20)?;
        Ok((tr.max_drift(), tr.relative_energy_drift()))
    };
    match run() {
        Ok((drift, energy)) => Outcome::new(
            8,
            NAME,
            drift <= 1e-3 && energy <= 1e-4,
            format!("sup drift={drift:.2e} energy drift={energy:.2e} (t=10, dr=0.01, dt=0.0025)"),
        ),
        Err(e) => Outcome::error(8, NAME, e),
    }
}

pub fn gradient_check() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let m = lambdas(1.7, 0.6);
    let d = 1e-6;
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let a = Mat3::from_fn(|_, _| rng.gen_range(-2.0..2.0));
        let at = Vec3::from_fn(|_| rng.gen_range(-2.0..2.0));
        let (h_t, h_s) = h_tensors(&a, &at, &m);
        for i in 0..3 {
            let (mut p, mut q) = (at, at);
            p[i] += d;
            q[i] -= d;
            let fd = (kinetic_density(&p) - kinetic_density(&q)) / (2.0 * d);
            worst = worst.max((fd - h_t[i]).abs());
            for k in 0..3 {
                let (mut p, mut q) = (a, a);
                p[(i, k)] += d;
                q[(i, k)] -= d;
                let fd = (potential_density(&p, &m) - potential_density(&q, &m)) / (2.0 * d);
                worst = worst.max((fd - h_s[(i, k)]).abs());
            }
        }
    }
    Outcome::new(9, "gradient check", worst <= 1e-6, format!("max |H - FD gradient|={worst:.2e} over 100 inputs"))
}

pub fn kinematics_oracle() -> Outcome {
    const NAME: &str = "kinematics oracle";
    let f = BumpField::<f64>::random(10, 3, 1.5);
    let err = |n: usize, h: f64| -> micropolar::Result<f64> {
        let g = RotorGrid::sample_centered(&f, n, h, 0.0)?;
        let mut worst = 0.0f64;
        for lin in g.interior_indices(1) {
            let idx = g.multi_index(lin);
            let diff = nye_fd(&g, idx)? - nye_analytic(&f, &g.position(idx), 0.0);
            worst = worst.max(diff.max_abs());
        }
        Ok(worst)
    };
    match err(31, 0.1).and_then(|a| Ok((a, err(61, 0.05)?))) {
        Ok((e1, e2)) => Outcome::new(
            10,
            NAME,
            e1 / e2 >= 3.5,
            format!("max |nye_fd - nye_analytic| h=0.1: {e1:.3e}, h=0.05: {e2:.3e}, ratio={:.2}", e1 / e2),
        ),
        Err(e) => Outcome::error(10, NAME, e),
    }
}

/// All criteria in order.
pub fn run_all() -> Vec<Outcome> {
    vec![
        soliton_reproduction(),
        special_case_reductions(),
        radial_to_3d_consistency(),
        identity_tt(),
        topological_charge(),
        equilibria_check(),
        linearized_dispersion(),
        dynamic_stability(),
        gradient_check(),
        kinematics_oracle(),
    ]
}
