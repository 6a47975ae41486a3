//! The subcommands. Each returns a JSON report and whether its checks passed.

use std::path::Path as FsPath;

use borel_core::borel_plane::{
    picard_solve_path, taylor_extract, volterra_apply, GridSpec, Path, PicardOptions, Ray, RayGridFunction,
    VolterraOperator,
};
use borel_core::laplace::{laplace_extending, laplace_with, LaplaceRequest, Tilt, MAX_LENGTH};
use borel_core::numerics::{cis, unwrap_angle};
use borel_core::ode::{characteristic_roots, datum_near, poincare_solution, CharacteristicDatum, Level1Operator};
use borel_core::oracles;
use borel_core::poly::Poly;
use borel_core::resurgence::fit::asymptotic_fit;
use borel_core::resurgence::verdict::{coeff_residual, degenerate_cubic_closed_form, Check, Status};
use borel_core::resurgence::{stokes_constant, DEFAULT_EPS};
use borel_core::series::borel_transform;
use borel_core::thimble::{
    steepest_descent_series, thimble_integral_direct, thimble_projection, trace_thimble, ThimbleSpec,
};
use borel_core::verify::{self, Criterion, CRITERIA};
use borel_core::{Complex64, Exec};
use serde_json::{json, Value};

use crate::args::show_complex;
use crate::fail::{CliError, ErrorKind};
use crate::spec::{Kind, SpecFile, SCHEMA};

pub struct Outcome {
    pub report: Value,
    pub passed: bool,
}

fn status_of(checks: &[Check]) -> (bool, &'static str) {
    if checks.iter().all(|c| c.status == Status::Pass) {
        (true, "pass")
    } else if checks.iter().any(|c| c.status == Status::Fail) {
        (false, "fail")
    } else {
        (false, "inconclusive")
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::new(ErrorKind::Usage, msg)
}

fn io(path: &FsPath, e: impl std::fmt::Display) -> CliError {
    CliError::new(ErrorKind::Io, format!("{}: {e}", path.display()))
}

const VALUE_TOL: f64 = 1e-6;
const COEFF_TOL: f64 = 1e-4;
const UNIVERSAL_TOL: f64 = 1e-8;
const DISPERSION_TOL: f64 = 1e-5;
const FIT_SAMPLES: usize = 16;

/// Large-`|z|` samples `(20/ρ)·8^{k/15}`, `ρ` the distance from `α` to the
/// nearest other rate, so the fit window tracks the Gevrey growth.
fn fit_points(theta: f64, alpha: Complex64, roots: &[CharacteristicDatum]) -> Vec<Complex64> {
    let rho = roots.iter().map(|d| (d.alpha - alpha).norm()).filter(|r| *r > 0.0).fold(2.0, f64::min);
    let r0 = 20.0 / rho;
    (0..FIT_SAMPLES).map(|k| cis(-theta) * (r0 * 8f64.powf(k as f64 / (FIT_SAMPLES - 1) as f64))).collect()
}

/// Outward direction from `α`, nudged off any direction that meets another root.
fn default_theta(d: &CharacteristicDatum) -> f64 {
    let mut theta = if d.alpha.norm() > 0.0 { d.alpha.arg() } else { 0.0 };
    while d.is_forbidden(theta, 0.05) {
        theta += 0.3;
    }
    theta
}

pub struct OdeArgs<'a> {
    pub spec: &'a FsPath,
    pub root: Complex64,
    pub order: usize,
    pub z: Option<Vec<Complex64>>,
    pub theta: Option<f64>,
    pub mu: Option<f64>,
    pub omega: Option<f64>,
    pub csv: Option<&'a FsPath>,
}

fn ode_spec(path: &FsPath) -> Result<SpecFile, CliError> {
    let spec = SpecFile::load(path)?;
    if spec.kind != Kind::Ode {
        return Err(CliError::new(ErrorKind::Schema, "this command needs kind = \"ode\""));
    }
    Ok(spec)
}

fn pick_root(op: &Level1Operator, root: Complex64) -> Result<CharacteristicDatum, CliError> {
    let d = datum_near(op, root)?;
    if (d.alpha - root).norm() > 1e-6 * (1.0 + root.norm()) {
        let all: Vec<String> = op.alphas().into_iter().map(show_complex).collect();
        return Err(usage(format!("{} is not a characteristic rate; rates are {}", show_complex(root), all.join(", "))));
    }
    Ok(d)
}

/// `(ζ⁴-ω²)^{-1/2}` along `path` as `t^{-1/2} h`.
fn cantilever_universal(v: &VolterraOperator, omega: f64, theta: f64, len: f64) -> borel_core::Result<RayGridFunction> {
    let alpha = v.base;
    let g0 = 4.0 * alpha.powi(3);
    let path: Path = Ray::new(alpha, theta, len)?.into();
    RayGridFunction::from_fn(path, -0.5, v.singularities(), &GridSpec::default(), |_, z| {
        let g = (z.powi(4) - omega * omega) / (z - alpha);
        cis(-0.5 * theta) / (g0.sqrt() * (g / g0).sqrt())
    })
}

fn write_csv(path: &FsPath, psi: &RayGridFunction) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path).map_err(|e| io(path, e))?;
    w.write_record(["t", "zeta_re", "zeta_im", "psi_re", "psi_im"]).map_err(|e| io(path, e))?;
    for t in psi.node_params().into_iter().filter(|t| *t > 0.0) {
        let (z, p) = (psi.path.point(t), psi.eval(t));
        w.write_record([t, z.re, z.im, p.re, p.im].map(|x| x.to_string())).map_err(|e| io(path, e))?;
    }
    w.flush().map_err(|e| io(path, e))
}

pub fn ode(a: OdeArgs, exec: Exec) -> Result<Outcome, CliError> {
    let spec = ode_spec(a.spec)?;
    let ops = spec.operator()?;
    let op = ops.build(a.mu, a.omega)?;
    let roots = characteristic_roots(&op)?;
    let datum = pick_root(&op, a.root)?;
    let tau = datum.tau_real()?;
    let alpha = datum.alpha;
    let theta = a.theta.or(spec.theta).unwrap_or_else(|| default_theta(&datum)) + 0.0;
    let zs = a.z.or_else(|| spec.z_points()).unwrap_or_else(|| [4.0, 8.0, 16.0].map(|r| cis(-theta) * r).to_vec());
    if a.order < 1 {
        return Err(usage("--order must be at least 1"));
    }
    let poincare = poincare_solution(&op, &datum, a.order, Complex64::new(1.0, 0.0))?;
    let value_tol = spec.tolerances.and_then(|t| t.value).unwrap_or(VALUE_TOL);
    let coeff_tol = spec.tolerances.and_then(|t| t.coeff).unwrap_or(COEFF_TOL);

    let v = VolterraOperator::new(op.clone(), alpha)?;
    let fz = fit_points(theta, alpha, &roots);
    let all: Vec<Complex64> = zs.iter().chain(&fz).copied().collect();
    let mut report = None;
    let (vals, psi) = laplace_extending(
        |len| {
            let r = picard_solve_path(&v, Ray::new(alpha, theta, len)?.into(), &PicardOptions::default())?;
            let psi = r.psi.clone();
            report = Some(r);
            Ok(psi)
        },
        8.0,
        &all,
        Tilt::Attached,
        1e-12,
        exec,
    )?;
    let picard = report.expect("at least one solve");
    let m = a.order.min(3);
    let pairs: Vec<(Complex64, Complex64)> = vals[zs.len()..].iter().map(|l| (l.z, l.value)).collect();
    let fit = asymptotic_fit(&pairs, alpha, tau, m)?;
    let taylor = taylor_extract(&psi, a.order.min(4))?;
    let borel = borel_transform(&poincare)?;

    let mut checks = vec![
        Check::new("fit_vs_poincare", coeff_residual(&fit.coeffs, &poincare.coeffs()[..=m], &fit.spread, coeff_tol), coeff_tol),
        Check::new("taylor_vs_borel", coeff_residual(taylor.coeffs(), borel.series.coeffs(), &[], coeff_tol), coeff_tol),
    ];
    let mut universal = None;
    if let (crate::spec::Family::Cantilever, Some(omega)) = (ops.family, ops.omega(a.omega)) {
        let u = cantilever_universal(&v, omega, theta, 3.0)?;
        let sup = volterra_apply(&v, &u)?.sup_psi_on(0.05, 3.0);
        universal = Some(sup);
        checks.push(Check::new("universal_solution_residual", sup, UNIVERSAL_TOL));
    }
    checks.push(Check::new("picard_residual", picard.residual, value_tol));
    if let Some(path) = a.csv {
        write_csv(path, &psi)?;
    }
    let (passed, status) = status_of(&checks);
    let roots_json: Vec<Value> = roots.iter().map(|d| json!({ "alpha": d.alpha, "tau": d.tau })).collect();
    Ok(Outcome {
        passed,
        report: json!({
            "schema": SCHEMA,
            "command": "ode",
            "operator": { "p": op.p, "q": op.q, "r": op.r },
            "roots": roots_json,
            "alpha": alpha,
            "tau": tau,
            "theta": theta,
            "poincare": poincare.coeffs(),
            "picard": { "iterations": picard.iterations, "residual": picard.residual, "length": psi.length() },
            "borel_taylor": taylor.coeffs(),
            "borel_of_poincare": borel.series.coeffs(),
            "laplace": &vals[..zs.len()],
            "fit": fit,
            "universal_residual": universal,
            "checks": checks,
            "status": status,
        }),
    })
}

pub struct ThimbleArgs<'a> {
    pub spec: Option<&'a FsPath>,
    pub f: Option<String>,
    pub nu: Option<String>,
    pub a: Option<Complex64>,
    pub theta: Option<f64>,
    pub z: Option<Vec<Complex64>>,
    pub polylines: Option<&'a FsPath>,
}

pub fn thimble(a: ThimbleArgs, exec: Exec) -> Result<Outcome, CliError> {
    let file = match a.spec {
        Some(p) => {
            let s = SpecFile::load(p)?;
            if s.kind != Kind::Thimble {
                return Err(CliError::new(ErrorKind::Schema, "this command needs kind = \"thimble\""));
            }
            Some(s)
        }
        None => None,
    };
    let section = file.as_ref().and_then(|s| s.thimble.clone());
    let f_src = a.f.or(section.as_ref().map(|s| s.f.clone())).ok_or_else(|| usage("give --f or --spec"))?;
    let nu_src = a.nu.or(section.as_ref().and_then(|s| s.nu.clone())).unwrap_or_else(|| "1".into());
    let crit = a.a.or(section.as_ref().map(|s| s.a.value())).ok_or_else(|| usage("give --a or --spec"))?;
    let theta = a.theta.or(file.as_ref().and_then(|s| s.theta)).unwrap_or(0.0);
    let zs = a
        .z
        .or_else(|| file.as_ref().and_then(|s| s.z_points()))
        .unwrap_or_else(|| [2.0, 4.0, 8.0].map(|r| cis(-theta) * r).to_vec());
    let value_tol = file.as_ref().and_then(|s| s.tolerances).and_then(|t| t.value).unwrap_or(VALUE_TOL);

    let (f, nu) = (Poly::parse(&f_src)?, Poly::parse(&nu_src)?);
    let spec = ThimbleSpec::new(f.clone(), nu.clone(), crit, theta)?;
    let decay = zs.iter().map(|z| (z * cis(theta)).re).fold(f64::INFINITY, f64::min);
    if !(decay > 0.0) {
        return Err(usage("every z must satisfy Re(z e^(i theta)) > 0"));
    }
    let traced = trace_thimble(&spec, (36.0 / decay).min(MAX_LENGTH), 1e-10)?;
    let direct: Vec<Complex64> = exec
        .map(&zs, |z| thimble_integral_direct(&spec, &traced, *z).map(|v| v.value))
        .into_iter()
        .collect::<borel_core::Result<_>>()?;
    let iota = thimble_projection(&spec, &traced)?;
    let projected = laplace_with(&LaplaceRequest::new(iota, zs.clone(), Tilt::Attached), exec)?;
    let agree = projected.iter().zip(&direct).map(|(p, d)| (p.value - d).norm() / d.norm()).fold(0.0, f64::max);
    let mut checks = vec![Check::new("projection_vs_direct", agree, value_tol)];

    let mut closed = None;
    let mut descent = None;
    if traced.order == 3 {
        // u³ + q after translation, with ν = 1
        let f3 = f.derivative().derivative().derivative().eval(crit) / 6.0;
        let unit_nu = nu.degree() == 0 && (nu.eval(Complex64::new(0.0, 0.0)) - 1.0).norm() == 0.0;
        if (f3 - 1.0).norm() == 0.0 && unit_nu {
            let c: Vec<Complex64> = zs.iter().map(|z| degenerate_cubic_closed_form(traced.alpha, theta, *z)).collect();
            let err = direct.iter().zip(&c).map(|(d, e)| (d - e).norm() / e.norm()).fold(0.0, f64::max);
            checks.push(Check::new("closed_form", err, value_tol));
            closed = Some(c);
        }
    } else {
        descent = Some(steepest_descent_series(&spec, 4)?.coeffs().to_vec());
    }
    if let Some(path) = a.polylines {
        let js = json!({ "schema": SCHEMA, "polylines": traced.polylines() });
        let text = serde_json::to_string_pretty(&js).expect("serializable");
        std::fs::write(path, text + "\n").map_err(|e| io(path, e))?;
    }
    let rows: Vec<Value> = zs
        .iter()
        .enumerate()
        .map(|(k, z)| {
            json!({
                "z": z,
                "direct": direct[k],
                "projected": projected[k].value,
                "closed_form": closed.as_ref().map(|c| c[k]),
            })
        })
        .collect();
    let (passed, status) = status_of(&checks);
    Ok(Outcome {
        passed,
        report: json!({
            "schema": SCHEMA,
            "command": "thimble",
            "f": f_src,
            "nu": nu_src,
            "a": crit,
            "theta": theta,
            "critical_value": traced.alpha,
            "order": traced.order,
            "route": if traced.order == 3 { "degenerate" } else { "morse" },
            "values": rows,
            "descent_coeffs": descent,
            "checks": checks,
            "status": status,
        }),
    })
}

pub struct StokesArgs<'a> {
    pub spec: &'a FsPath,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub theta: Option<f64>,
    pub mu: Option<f64>,
    pub eps: Option<f64>,
}

/// Directions closer than this to `arg(β-α)` are snapped onto it.
const SNAP: f64 = 1e-3;

pub fn stokes(a: StokesArgs, exec: Exec) -> Result<Outcome, CliError> {
    let spec = ode_spec(a.spec)?;
    let op = spec.operator()?.build(a.mu, None)?;
    let gap = a.beta - a.alpha;
    if gap.norm() == 0.0 {
        return Err(usage("--alpha and --beta coincide"));
    }
    let theta = match a.theta.or(spec.theta) {
        Some(t) if (unwrap_angle(gap.arg(), t) - t).abs() < SNAP => unwrap_angle(gap.arg(), t),
        Some(t) => t,
        None => gap.arg(),
    };
    let eps = a.eps.unwrap_or(DEFAULT_EPS);
    let m = stokes_constant(&op, a.alpha, a.beta, theta, eps, exec)?;
    let checks = vec![Check::new("dispersion", m.dispersion, DISPERSION_TOL)];
    let (passed, status) = status_of(&checks);
    Ok(Outcome {
        passed,
        report: json!({
            "schema": SCHEMA,
            "command": "stokes",
            "operator": { "p": op.p, "q": op.q, "r": op.r },
            "measurement": m,
            "checks": checks,
            "status": status,
        }),
    })
}

pub struct VerifyArgs {
    pub only: Vec<String>,
    pub tol_scale: f64,
    pub json: bool,
}

pub fn verify(a: VerifyArgs, exec: Exec) -> Result<Outcome, CliError> {
    if !(a.tol_scale > 0.0 && a.tol_scale.is_finite()) {
        return Err(usage("--tol-scale must be positive"));
    }
    let which: Vec<Criterion> = if a.only.is_empty() {
        CRITERIA.to_vec()
    } else {
        a.only
            .iter()
            .map(|k| verify::find(k).ok_or_else(|| usage(format!("no criterion {k:?}"))))
            .collect::<Result<_, _>>()?
    };
    let mut rows = Vec::new();
    if !a.json {
        crate::emit(&format!("{:<12} {:>2} {:<12} {:<44} worst check  (runtime / budget)", "status", "#", "key", "criterion"));
    }
    for c in which {
        let row = verify::run(c, a.tol_scale, exec);
        if !a.json {
            crate::emit(&row.summary());
        }
        rows.push(row);
    }
    let passed = rows.iter().all(|r| r.passed());
    let seconds: Vec<f64> = rows.iter().map(|r| r.seconds).collect();
    let stable: Vec<Value> = rows
        .iter()
        .map(|r| json!({ "id": r.id, "key": r.key, "title": r.title, "checks": r.checks, "status": r.label(), "note": r.note.as_deref().filter(|n| !n.starts_with("over")) }))
        .collect();
    Ok(Outcome {
        passed,
        report: json!({
            "schema": SCHEMA,
            "command": "verify",
            "tol_scale": a.tol_scale,
            "rows": stable,
            "passed": passed,
            // wall-clock data lives here so the rest compares byte for byte
            "sidecar": { "seconds": seconds },
        }),
    })
}

pub enum OracleCall {
    BesselK { mu: f64, z: Complex64 },
    Hyp2f1 { a: f64, b: f64, c: f64, x: Complex64 },
    Airy { y: f64 },
}

pub fn oracle(call: OracleCall) -> Result<Outcome, CliError> {
    let (name, args, r) = match call {
        OracleCall::BesselK { mu, z } => ("bessel-k", json!({ "mu": mu, "z": z }), oracles::bessel_k(mu, z)?),
        OracleCall::Hyp2f1 { a, b, c, x } => {
            ("2f1", json!({ "a": a, "b": b, "c": c, "x": x }), oracles::hyp2f1(a, b, c, x)?)
        }
        OracleCall::Airy { y } => ("airy", json!({ "y": y }), oracles::airy_ai(y)?),
    };
    Ok(Outcome { passed: true, report: json!({ "schema": SCHEMA, "command": "oracle", "oracle": name, "args": args, "result": r }) })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    #[test]
    fn default_direction_is_outward() {
        let op = Level1Operator::bessel(1.0 / 3.0);
        let d = datum_near(&op, Complex64::new(-1.0, 0.0)).unwrap();
        assert!((default_theta(&d).abs() - PI).abs() < 1e-12);
    }
}
