use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use micropolar::equations::max_residual_eqs2_grid;
use micropolar::fields::BumpField;
use micropolar::kinematics::{check_identity_tt, decompose, nye_fd, potential_density, quadratic_invariants, torsion_from_nye};
use micropolar::radial::{equilibria, evolve_dynamic, lift_hedgehog, solve_static_with, RadialProfile, StaticParams};
use micropolar::topology::radial_charge;
use micropolar::{total_charge, ConstantField, Mat3, ProductField, Rotor, RotorField, RotorGrid, Translated, Vec3};
use serde_json::{json, Value};

use crate::args::*;
use crate::config::{Settings, MODULI_KEYS, SHOOTING_KEYS};
use crate::error::CliError;
use crate::output::{print_json, with_sink, SCHEMA_VERSION};

type Res = Result<(), CliError>;

fn settings(common: &Common, groups: &[&[&str]]) -> Result<Settings, CliError> {
    let mut known = vec!["output"];
    for g in groups {
        known.extend_from_slice(g);
    }
    Settings::load(common.config.as_deref(), &known)
}

fn read_profile(path: &Path) -> Result<RadialProfile<f64>, CliError> {
    let f = File::open(path).map_err(|e| CliError::file(path, e))?;
    Ok(RadialProfile::read_csv(BufReader::new(f))?)
}

fn read_grid(path: &Path) -> Result<RotorGrid<f64>, CliError> {
    let f = File::open(path).map_err(|e| CliError::file(path, e))?;
    Ok(RotorGrid::read_csv(BufReader::new(f))?)
}

fn rows(m: &Mat3<f64>) -> Value {
    json!(m.0)
}

fn shooting(s: &Settings, a: &ShootingArgs) -> Result<StaticParams<f64>, CliError> {
    let mut p = StaticParams::new(
        s.get("slope0", a.slope0, 1.0)?,
        s.positive("rmax", a.rmax, 50.0)?,
        s.positive("tol", a.tol, 1e-9)?,
    );
    p.dr = s.positive("dr", a.dr, p.dr)?;
    Ok(p)
}

pub fn run(cmd: Command) -> Res {
    match cmd {
        Command::Static(a) => static_cmd(a),
        Command::Evolve(a) => evolve(a),
        Command::Charge(a) => charge(a),
        Command::Residual(a) => residual(a),
        Command::Decompose(a) => decompose_cmd(a),
        Command::Equilibria(a) => equilibria_cmd(a),
        Command::IdentityCheck(a) => identity_check(a),
    }
}

fn static_cmd(a: StaticArgs) -> Res {
    let s = settings(&a.common, &[&MODULI_KEYS, &SHOOTING_KEYS])?;
    let m = s.require_moduli(&a.moduli)?;
    let p = shooting(&s, &a.shooting)?;
    let sol = solve_static_with(&m, &p)?;
    let out = s.path("output", a.common.output.as_ref());
    with_sink(out.as_deref(), |w| sol.profile.write_csv(w))?;
    if let Some(path) = out {
        print_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "static",
            "output": path,
            "lambda1": m.lambda1,
            "lambda2": m.lambda2,
            "points": sol.profile.len(),
            "r_max": sol.profile.r_max(),
            "w_end": sol.asymptotic_value(),
            "series_exponent": sol.series_exponent,
            "regular_series": sol.regular_series,
            "steps_accepted": sol.steps_accepted,
            "steps_rejected": sol.steps_rejected,
        }))?;
    }
    Ok(())
}

fn evolve(a: EvolveArgs) -> Res {
    let s = settings(&a.common, &[&MODULI_KEYS, &SHOOTING_KEYS, &["from-profile", "dt", "t-end", "snapshots"]])?;
    let initial = match s.path("from-profile", a.from_profile.as_ref()) {
        Some(path) => {
            if s.moduli(&a.moduli)?.is_some() {
                return Err(CliError::usage("a profile carries its own moduli; drop the moduli flags"));
            }
            read_profile(&path)?
        }
        None => {
            let m = s.require_moduli(&a.moduli)?;
            solve_static_with(&m, &shooting(&s, &a.shooting)?)?.profile
        }
    };
    let dr = initial
        .uniform_spacing()
        .ok_or_else(|| CliError::usage("evolution needs a profile on a uniform radial grid"))?;
    let dt = s.positive("dt", a.dt, 0.25 * dr)?;
    let t_end = s.positive("t-end", a.t_end, 10.0)?;
    let snapshots = s.get("snapshots", a.snapshots, 10)?.max(1);
    let traj = evolve_dynamic(&initial, dt, t_end, snapshots)?;
    let last = traj.frames.last().expect("a trajectory keeps the initial frame");
    let out = s.path("output", a.common.output.as_ref());
    with_sink(out.as_deref(), |w| last.write_csv(w))?;
    if let Some(path) = out {
        print_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "evolve",
            "output": path,
            "dt": dt,
            "t_end": t_end,
            "steps": traj.steps,
            "times": traj.times,
            "energies": traj.energies,
            "max_drift": traj.max_drift(),
            "relative_energy_drift": traj.relative_energy_drift(),
        }))?;
    }
    Ok(())
}

fn charge(a: ChargeArgs) -> Res {
    let s = settings(
        &a.common,
        &[&["from-profile", "field", "radius", "h", "method", "copies", "separation", "seed"]],
    )?;
    let profile_path = s.path("from-profile", a.from_profile.as_ref());
    let test_field = s.choice("field", a.field)?;
    let copies = s.get("copies", a.copies, 1)?;
    if copies == 0 {
        return Err(CliError::usage("copies must be at least 1"));
    }
    let separation = s.get("separation", a.separation, 16.0)?;
    let seed = s.get("seed", a.seed, 0)?;
    let profile = match (&profile_path, test_field) {
        (Some(_), Some(_)) => return Err(CliError::usage("give either --from-profile or --field, not both")),
        (None, None) => return Err(CliError::usage("give --from-profile or --field")),
        (Some(p), None) => Some(read_profile(p)?),
        (None, Some(_)) => None,
    };
    let default_method = if profile.is_some() && copies == 1 {
        ChargeMethod::Radial
    } else {
        ChargeMethod::Grid
    };
    let method = s.choice("method", a.method)?.unwrap_or(default_method);
    let report = match method {
        ChargeMethod::Radial => {
            let Some(p) = profile.as_ref().filter(|_| copies == 1) else {
                return Err(CliError::usage("the radial method needs a single profile"));
            };
            let radius = s.positive("radius", a.radius, 40.0)?;
            radial_charge(p, radius, s.positive("h", a.h, 0.01)?)?
        }
        ChargeMethod::Grid => {
            let radius = s.positive("radius", a.radius, 16.0)?;
            let h = s.positive("h", a.h, 0.2)?;
            let mut factors: Vec<Box<dyn RotorField<f64>>> = Vec::with_capacity(copies);
            for i in 0..copies {
                let x = (i as f64 - (copies - 1) as f64 / 2.0) * separation;
                let center = Vec3::new(x, 0.0, 0.0);
                let inner: Box<dyn RotorField<f64>> = match (&profile, test_field) {
                    (Some(p), _) => Box::new(lift_hedgehog(p)?),
                    (None, Some(TestField::Bump)) => Box::new(BumpField::random(seed, 3, 1.5)),
                    (None, _) => Box::new(ConstantField(Rotor::identity())),
                };
                factors.push(Box::new(Translated { inner, center }));
            }
            total_charge(&ProductField::new(factors), radius, h)?
        }
    };
    print_json(&json!({
        "schema_version": SCHEMA_VERSION,
        "charge": report.charge,
        "ball_radius": report.ball_radius,
        "grid_spacing": report.grid_spacing,
        "estimated_error": report.estimated_error,
    }))
}

fn residual(a: ResidualArgs) -> Res {
    let s = settings(
        &a.common,
        &[&MODULI_KEYS, &["from-grid", "from-profile", "n", "h", "shell-min", "shell-max", "save-grid"]],
    )?;
    let moduli = s.moduli(&a.moduli)?;
    let (grid, m) = match (s.path("from-grid", a.from_grid.as_ref()), s.path("from-profile", a.from_profile.as_ref())) {
        (Some(_), Some(_)) => return Err(CliError::usage("give either --from-grid or --from-profile, not both")),
        (None, None) => return Err(CliError::usage("give --from-grid or --from-profile")),
        (Some(g), None) => {
            let m = moduli.ok_or_else(|| CliError::usage("grid input needs moduli"))?;
            (read_grid(&g)?, m)
        }
        (None, Some(p)) => {
            if moduli.is_some() {
                return Err(CliError::usage("a profile carries its own moduli; drop the moduli flags"));
            }
            let profile = read_profile(&p)?;
            let n = s.get("n", a.n, 55)?;
            let h = s.positive("h", a.h, 0.2)?;
            let grid = RotorGrid::sample_centered(&lift_hedgehog(&profile)?, n, h, 0.0)?;
            (grid, profile.moduli)
        }
    };
    if let Some(path) = s.path("save-grid", a.save_grid.as_ref()) {
        with_sink(Some(&path), |w| grid.write_csv(w))?;
    }
    let shell_min = s.get("shell-min", a.shell_min, 0.0)?;
    let shell_max = s.opt("shell-max", a.shell_max)?;
    let select = |x: &Vec3<f64>| {
        let r = x.norm();
        r >= shell_min && shell_max.is_none_or(|m| r <= m)
    };
    let max_residual = max_residual_eqs2_grid(&grid, &m, select)?;
    let cells = grid
        .interior_indices(2)
        .into_iter()
        .filter(|&lin| select(&grid.position(grid.multi_index(lin))))
        .count();
    print_json(&json!({
        "schema_version": SCHEMA_VERSION,
        "command": "residual",
        "max_residual": max_residual,
        "cells": cells,
        "dims": grid.dims(),
        "spacing": grid.spacing(),
        "shell_min": shell_min,
        "shell_max": shell_max,
        "lambda1": m.lambda1,
        "lambda2": m.lambda2,
    }))
}

fn parse_list<T: std::str::FromStr>(text: &str, len: usize, what: &str) -> Result<Vec<T>, CliError> {
    let items: Result<Vec<T>, _> = text.split(',').map(|t| t.trim().parse()).collect();
    match items {
        Ok(v) if v.len() == len => Ok(v),
        _ => Err(CliError::usage(format!("{what} needs {len} comma-separated numbers, got {text:?}"))),
    }
}

fn decompose_cmd(a: DecomposeArgs) -> Res {
    let s = settings(&a.common, &[&MODULI_KEYS, &["matrix", "from-grid", "index"]])?;
    let nye = match (s.string("matrix", a.matrix.as_ref()), s.path("from-grid", a.from_grid.as_ref())) {
        (Some(_), Some(_)) => return Err(CliError::usage("give either --matrix or --from-grid, not both")),
        (None, None) => return Err(CliError::usage("give --matrix or --from-grid with --index")),
        (Some(text), None) => {
            let v: Vec<f64> = parse_list(&text, 9, "--matrix")?;
            Mat3::from_row_slice(&std::array::from_fn(|i| v[i]))
        }
        (None, Some(path)) => {
            let index = s
                .string("index", a.index.as_ref())
                .ok_or_else(|| CliError::usage("--from-grid needs --index i,j,k"))?;
            let v: Vec<usize> = parse_list(&index, 3, "--index")?;
            nye_fd(&read_grid(&path)?, [v[0], v[1], v[2]])?
        }
    };
    if !nye.is_finite() {
        return Err(CliError::usage("matrix entries must be finite"));
    }
    let parts = decompose(&nye);
    let torsion = torsion_from_nye(&nye);
    let sq = quadratic_invariants(&torsion);
    let mut v = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "decompose",
        "nye": rows(&nye),
        "trace": parts.trace_part,
        "trace_part": rows(&parts.trace_matrix()),
        "antisymmetric_part": rows(&parts.antisym_part),
        "symmetric_traceless_part": rows(&parts.sym_traceless_part),
        "torsion": rows(&torsion),
        "invariants": {
            "tensor_sq": sq.tensor_sq,
            "trace_sq": sq.trace_sq,
            "axial_sq": sq.axial_sq,
        },
    });
    if let Some(m) = s.moduli(&a.moduli)? {
        v["potential_density"] = json!(potential_density(&nye, &m));
    }
    print_json(&v)
}

fn equilibria_cmd(a: EquilibriaArgs) -> Res {
    let s = settings(&a.common, &[&MODULI_KEYS])?;
    let m = s.require_moduli(&a.moduli)?;
    let list: Vec<Value> = equilibria(&m)?
        .iter()
        .map(|e| {
            json!({
                "f_star": e.f_star,
                "sinh_f_star": e.f_star.sinh(),
                "w_star": e.w_star,
                "jacobian": e.jacobian,
                "eigenvalues": e.eigenvalues.iter().map(|z| json!({ "re": z.re, "im": z.im })).collect::<Vec<_>>(),
            })
        })
        .collect();
    print_json(&json!({
        "schema_version": SCHEMA_VERSION,
        "command": "equilibria",
        "lambda1": m.lambda1,
        "lambda2": m.lambda2,
        "rho": m.ratio(),
        "equilibria": list,
    }))
}

fn identity_check(a: IdentityArgs) -> Res {
    let s = settings(&a.common, &[&["seed", "bumps", "extent", "n", "h"]])?;
    let seed = s.get("seed", a.seed, 0)?;
    let bumps = s.get("bumps", a.bumps, 3)?;
    let extent = s.positive("extent", a.extent, 1.5)?;
    let n = s.get("n", a.n, 31)?;
    let h = s.positive("h", a.h, 0.1)?;
    let field = BumpField::<f64>::random(seed, bumps, extent);
    let coarse = check_identity_tt(&RotorGrid::sample_centered(&field, n, h, 0.0)?)?;
    let fine = check_identity_tt(&RotorGrid::sample_centered(&field, 2 * n - 1, h / 2.0, 0.0)?)?;
    print_json(&json!({
        "schema_version": SCHEMA_VERSION,
        "command": "identity-check",
        "seed": seed,
        "bumps": bumps,
        "residual_coarse": coarse,
        "residual_fine": fine,
        "ratio": coarse / fine,
        "spacing_coarse": h,
        "spacing_fine": h / 2.0,
    }))
}
