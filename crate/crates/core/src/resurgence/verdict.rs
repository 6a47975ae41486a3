//! End-to-end Borel-regularity checks: fit the direct object at large `|z|`,
//! Borel transform the fitted series, compare with the Borel-plane solution,
//! and Laplace transform back.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::fit::{asymptotic_fit, AsymptoticFit, MAX_VARIATION};
use crate::borel_plane::{picard_solve, taylor_extract, Ray, RayGridFunction, VolterraOperator};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::laplace::{laplace_extending, laplace_with, LaplaceRequest, LaplaceValue, Tilt};
use crate::numerics::cis;
use crate::numerics::gamma::gamma;
use crate::ode::{datum_near, Level1Operator};
use crate::oracles::bessel_k;
use crate::poly::Poly;
use crate::series::{borel_transform, zpow_neg, TransMonomial};
use crate::thimble::{steepest_descent_series, thimble_integral_direct, thimble_projection, trace_thimble, ThimbleSpec};

/// Large-`|z|` samples for the fit: `10·8^{k/15}`, `k = 0..16`, along the ray.
const FIT_SAMPLES: usize = 16;
const FIT_START: f64 = 10.0;
/// Coefficients whose term at `|z| = FIT_START` is below this fraction of the
/// leading term are compared in absolute terms.
const ZERO_TERM: f64 = 1e-8;
/// Multiples of the fit spread a coefficient difference may reach.
const FIT_SIGMAS: f64 = 3.0;
/// Trace thimbles far enough that the tail is below `e^{-36}`.
const DECAY: f64 = 36.0;
/// A residual above this multiple of its threshold fails outright.
pub const FAIL_FACTOR: f64 = 100.0;

/// Independent values of the frequency-domain solution of an ODE.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "oracle", rename_all = "snake_case")]
pub enum Reference {
    /// `K_μ(z)`.
    BesselK { mu: f64 },
}

#[derive(Debug, Clone)]
pub enum Problem {
    /// The solution of `op` with rate `alpha`, summed along `theta`.
    Ode { op: Level1Operator, alpha: Complex64, theta: f64, reference: Reference },
    Thimble(ThimbleSpec),
    /// `∫ e^{-z(u³+q)} du` through the degenerate point, paired with the
    /// first-order ODE `[∂ + 1/(3z) + q] Φ = 0`.
    DegenerateCubic { q: Complex64, theta: f64 },
}

impl Problem {
    pub fn id(&self) -> String {
        match self {
            Problem::Ode { alpha, theta, reference: Reference::BesselK { mu }, .. } => {
                format!("ode:bessel(mu={mu}):alpha={alpha}:theta={theta}")
            }
            Problem::Thimble(s) => format!("thimble:f={:?}:a={}:theta={}", s.f.coeffs, s.crit_point, s.angle),
            Problem::DegenerateCubic { q, theta } => format!("degenerate-cubic:q={q}:theta={theta}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerdictTolerances {
    /// Relative agreement of series coefficients.
    pub coeff: f64,
    /// Relative agreement of frequency-domain values.
    pub value: f64,
    /// Highest coefficient order compared.
    pub order: usize,
}

impl Default for VerdictTolerances {
    fn default() -> Self {
        VerdictTolerances { coeff: 1e-4, value: 1e-6, order: 3 }
    }
}

impl VerdictTolerances {
    pub fn scaled(&self, factor: f64) -> Self {
        VerdictTolerances { coeff: self.coeff * factor, value: self.value * factor, order: self.order }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Marginal,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
    pub status: Status,
}

impl Check {
    pub fn new(name: &str, residual: f64, threshold: f64) -> Self {
        let status = if residual <= threshold {
            Status::Pass
        } else if residual <= FAIL_FACTOR * threshold {
            Status::Marginal
        } else {
            Status::Fail
        };
        Check { name: name.into(), residual, threshold, status }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Regular,
    Inconclusive,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceValue {
    pub z: Complex64,
    pub value: Complex64,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BorelSummationReport {
    pub problem: String,
    /// Fitted large-`z` coefficients, normalized to the Borel-plane solution.
    pub formal_coeffs: Vec<Complex64>,
    /// Borel transform of the fitted series, in powers of `ζ_α`.
    pub borel_of_fit: Vec<Complex64>,
    /// Taylor coefficients of the Borel-plane solution at `α`.
    pub borel_coeffs: Vec<Complex64>,
    pub laplace_values: Vec<LaplaceValue>,
    pub references: Vec<ReferenceValue>,
    pub fit: Option<AsymptoticFit>,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
    /// The first check that failed, or the error that stopped the pipeline.
    pub failure: Option<String>,
}

impl BorelSummationReport {
    fn empty(problem: String) -> Self {
        BorelSummationReport {
            problem,
            formal_coeffs: vec![],
            borel_of_fit: vec![],
            borel_coeffs: vec![],
            laplace_values: vec![],
            references: vec![],
            fit: None,
            checks: vec![],
            verdict: Verdict::Failed,
            failure: None,
        }
    }

    fn conclude(mut self) -> Self {
        if self.failure.is_some() {
            self.verdict = Verdict::Failed;
            return self;
        }
        if let Some(c) = self.checks.iter().find(|c| c.status == Status::Fail) {
            self.failure = Some(format!("{}: residual {:e} > {} x {:e}", c.name, c.residual, FAIL_FACTOR, c.threshold));
            self.verdict = Verdict::Failed;
        } else if self.checks.iter().any(|c| c.status == Status::Marginal) {
            self.verdict = Verdict::Inconclusive;
        } else {
            self.verdict = Verdict::Regular;
        }
        self
    }

    pub fn max_residual(&self, name: &str) -> Option<f64> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.residual)
    }
}

fn fit_points(theta: f64) -> Vec<Complex64> {
    (0..FIT_SAMPLES).map(|k| cis(-theta) * (FIT_START * 8f64.powf(k as f64 / (FIT_SAMPLES - 1) as f64))).collect()
}

/// Largest `|a_k - b_k|` relative to `|b_k|`, floored at
/// `ZERO_TERM |b_0| FIT_START^k` so vanishing coefficients are not divided
/// by their own rounding, and at `FIT_SIGMAS · unc_k / tol` where `unc_k` is
/// the fit's own spread on one side: a difference the fit cannot
/// resolve passes, whatever the tolerance.
pub fn coeff_residual(a: &[Complex64], b: &[Complex64], unc: &[f64], tol: f64) -> f64 {
    a.iter()
        .zip(b)
        .enumerate()
        .map(|(k, (x, y))| {
            let floor = (ZERO_TERM * b[0].norm() * FIT_START.powi(k as i32))
                .max(FIT_SIGMAS * unc.get(k).copied().unwrap_or(0.0) / tol);
            (x - y).norm() / y.norm().max(floor)
        })
        .fold(0.0, f64::max)
}

/// Spread of the fitted coefficients divided by `scale`, carried through the
/// Borel transform `c_k ↦ c_k/Γ(τ+k)`.
fn borel_spread(fit: &AsymptoticFit, tau: f64, scale: f64) -> Vec<f64> {
    fit.spread
        .iter()
        .enumerate()
        .map(|(k, s)| s / scale / gamma(tau + k as f64).map_or(f64::NAN, f64::abs))
        .collect()
}

fn value_residual(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm() / y.norm()).fold(0.0, f64::max)
}

fn borel_coefficients(alpha: Complex64, tau: f64, coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let b = borel_transform(&TransMonomial::new(alpha, tau, coeffs.to_vec())?)?;
    Ok(b.series.coeffs().to_vec())
}

fn fit_checks(fit: &AsymptoticFit) -> Check {
    Check::new("fit_stability", fit.variation.iter().fold(0.0, |m, v| m.max(*v)), MAX_VARIATION)
}

/// Run the pipeline for `problem` and grade every comparison.
pub fn regularity_verdict(
    problem: &Problem,
    z_samples: &[Complex64],
    tol: &VerdictTolerances,
    exec: Exec,
) -> BorelSummationReport {
    let mut report = BorelSummationReport::empty(problem.id());
    let run = match problem {
        Problem::Ode { op, alpha, theta, reference } => ode_pipeline(&mut report, op, *alpha, *theta, *reference, z_samples, tol, exec),
        Problem::Thimble(spec) => thimble_pipeline(&mut report, spec, z_samples, tol, exec),
        Problem::DegenerateCubic { q, theta } => degenerate_pipeline(&mut report, *q, *theta, z_samples, tol, exec),
    };
    if let Err(e) = run {
        report.failure = Some(format!("{}: {e}", e.code()));
    }
    report.conclude()
}

/// Picard solution along `theta` and its Laplace transform at `zs`.
fn picard_route(
    v: &VolterraOperator,
    theta: f64,
    zs: &[Complex64],
    exec: Exec,
) -> Result<(Vec<LaplaceValue>, RayGridFunction)> {
    let base = v.base;
    laplace_extending(|len| picard_solve(v, Ray::new(base, theta, len)?, 200, 1e-14), 8.0, zs, Tilt::Attached, 1e-13, exec)
}

#[allow(clippy::too_many_arguments)]
fn ode_pipeline(
    report: &mut BorelSummationReport,
    op: &Level1Operator,
    alpha: Complex64,
    theta: f64,
    reference: Reference,
    zs: &[Complex64],
    tol: &VerdictTolerances,
    exec: Exec,
) -> Result<()> {
    let Reference::BesselK { mu } = reference;
    let oracle = |z: &Complex64| bessel_k(mu, *z).map(|r| r.value);
    let tau = datum_near(op, alpha)?.tau_real()?;
    let fz = fit_points(theta);
    let direct_fit: Vec<Complex64> = exec.map(&fz, oracle).into_iter().collect::<Result<_>>()?;
    let pairs: Vec<(Complex64, Complex64)> = fz.iter().copied().zip(direct_fit).collect();
    let fit = asymptotic_fit(&pairs, alpha, tau, tol.order)?;
    report.checks.push(fit_checks(&fit));
    let scale = fit.coeffs[0];
    report.formal_coeffs = fit.coeffs.iter().map(|c| c / scale).collect();
    report.borel_of_fit = borel_coefficients(alpha, tau, &report.formal_coeffs)?;
    let unc = borel_spread(&fit, tau, scale.norm());
    report.fit = Some(fit);

    let v = VolterraOperator::new(op.clone(), alpha)?;
    let (vals, psi) = picard_route(&v, theta, zs, exec)?;
    report.borel_coeffs = taylor_extract(&psi, tol.order)?.coeffs().to_vec();
    let r = coeff_residual(&report.borel_coeffs, &report.borel_of_fit, &unc, tol.coeff);
    report.checks.push(Check::new("borel_coefficients", r, tol.coeff));

    let direct: Vec<Complex64> = exec.map(zs, oracle).into_iter().collect::<Result<_>>()?;
    report.references =
        zs.iter().zip(&direct).map(|(z, v)| ReferenceValue { z: *z, value: *v, provenance: format!("bessel_k({mu})") }).collect();
    let summed: Vec<Complex64> = vals.iter().map(|l| l.value * scale).collect();
    report.laplace_values = vals;
    report.checks.push(Check::new("frequency_values", value_residual(&summed, &direct), tol.value));
    Ok(())
}

fn trace_length(theta: f64, zs: &[Complex64]) -> Result<f64> {
    let c = zs.iter().map(|z| (z * cis(theta)).re).fold(f64::INFINITY, f64::min);
    if !(c > 0.0) {
        return Err(Error::InvalidInput("every z must satisfy Re(z e^(i theta)) > 0".into()));
    }
    Ok(DECAY / c)
}

fn thimble_pipeline(
    report: &mut BorelSummationReport,
    spec: &ThimbleSpec,
    zs: &[Complex64],
    tol: &VerdictTolerances,
    exec: Exec,
) -> Result<()> {
    let fz = fit_points(spec.angle);
    let all: Vec<Complex64> = fz.iter().chain(zs).copied().collect();
    let traced = trace_thimble(spec, trace_length(spec.angle, &all)?, 1e-10)?;
    let alpha = traced.alpha;
    let direct_all: Vec<Complex64> = exec
        .map(&all, |z| thimble_integral_direct(spec, &traced, *z).map(|v| v.value))
        .into_iter()
        .collect::<Result<_>>()?;
    let pairs: Vec<(Complex64, Complex64)> = fz.iter().copied().zip(direct_all.iter().copied()).collect();
    let fit = asymptotic_fit(&pairs, alpha, 0.5, tol.order)?;
    report.checks.push(fit_checks(&fit));
    report.formal_coeffs = fit.coeffs.clone();
    report.borel_of_fit = borel_coefficients(alpha, 0.5, &fit.coeffs)?;
    let spread = fit.spread.clone();
    let unc = borel_spread(&fit, 0.5, 1.0);
    report.fit = Some(fit);

    let descent = steepest_descent_series(spec, tol.order)?;
    let r = coeff_residual(&report.formal_coeffs, descent.coeffs(), &spread, tol.coeff);
    report.checks.push(Check::new("descent_vs_fit", r, tol.coeff));

    let iota = thimble_projection(spec, &traced)?;
    report.borel_coeffs = taylor_extract(&iota, tol.order)?.coeffs().to_vec();
    let r = coeff_residual(&report.borel_coeffs, &report.borel_of_fit, &unc, tol.coeff);
    report.checks.push(Check::new("borel_coefficients", r, tol.coeff));
    let descent_borel = borel_coefficients(alpha, 0.5, descent.coeffs())?;
    let r = coeff_residual(&report.borel_coeffs, &descent_borel, &[], tol.coeff);
    report.checks.push(Check::new("descent_vs_projection", r, tol.coeff));

    let direct = &direct_all[fz.len()..];
    report.references =
        zs.iter().zip(direct).map(|(z, v)| ReferenceValue { z: *z, value: *v, provenance: "thimble_integral_direct".into() }).collect();
    let vals = laplace_with(&LaplaceRequest::new(iota, zs.to_vec(), Tilt::Attached), exec)?;
    let summed: Vec<Complex64> = vals.iter().map(|l| l.value).collect();
    report.laplace_values = vals;
    report.checks.push(Check::new("frequency_values", value_residual(&summed, direct), tol.value));
    Ok(())
}

/// `e^{-qz} e^{-iπ/6} Γ(1/3) z^{-1/3}/√3` with `z^{-1/3}` continued along `θ`.
pub fn degenerate_cubic_closed_form(q: Complex64, theta: f64, z: Complex64) -> Complex64 {
    let g = gamma(1.0 / 3.0).unwrap_or(f64::NAN);
    (-q * z).exp() * cis(-std::f64::consts::PI / 6.0) * zpow_neg(z, 1.0 / 3.0, theta) * (g / 3f64.sqrt())
}

fn degenerate_pipeline(
    report: &mut BorelSummationReport,
    q: Complex64,
    theta: f64,
    zs: &[Complex64],
    tol: &VerdictTolerances,
    exec: Exec,
) -> Result<()> {
    let tau = 1.0 / 3.0;
    let spec = ThimbleSpec::new(
        Poly::new(vec![q, Complex64::default(), Complex64::default(), Complex64::new(1.0, 0.0)]),
        Poly::from_real(&[1.0]),
        Complex64::default(),
        theta,
    )?;
    let fz = fit_points(theta);
    let all: Vec<Complex64> = fz.iter().chain(zs).copied().collect();
    let traced = trace_thimble(&spec, trace_length(theta, &all)?, 1e-10)?;
    let direct_all: Vec<Complex64> = exec
        .map(&all, |z| thimble_integral_direct(&spec, &traced, *z).map(|v| v.value))
        .into_iter()
        .collect::<Result<_>>()?;
    let pairs: Vec<(Complex64, Complex64)> = fz.iter().copied().zip(direct_all.iter().copied()).collect();
    let fit = asymptotic_fit(&pairs, q, tau, tol.order)?;
    report.checks.push(fit_checks(&fit));
    let scale = fit.coeffs[0];
    report.formal_coeffs = fit.coeffs.iter().map(|c| c / scale).collect();
    report.borel_of_fit = borel_coefficients(q, tau, &report.formal_coeffs)?;
    let unc = borel_spread(&fit, tau, scale.norm());
    report.fit = Some(fit);

    // [∂ + 1/(3z) + q]: P(x) = x + q, Q = 1/3
    let op = Level1Operator::new(vec![q, Complex64::new(1.0, 0.0)], vec![Complex64::new(tau, 0.0)], vec![])?;
    let v = VolterraOperator::new(op, q)?;
    let (vals, psi) = picard_route(&v, theta, zs, exec)?;
    report.borel_coeffs = taylor_extract(&psi, tol.order)?.coeffs().to_vec();
    let r = coeff_residual(&report.borel_coeffs, &report.borel_of_fit, &unc, tol.coeff);
    report.checks.push(Check::new("borel_coefficients", r, tol.coeff));

    let direct = &direct_all[fz.len()..];
    let closed: Vec<Complex64> = zs.iter().map(|z| degenerate_cubic_closed_form(q, theta, *z)).collect();
    report.checks.push(Check::new("closed_form", value_residual(direct, &closed), tol.value));
    report.references = zs
        .iter()
        .zip(&closed)
        .map(|(z, v)| ReferenceValue { z: *z, value: *v, provenance: "closed form e^{-qz} e^{-i pi/6} Gamma(1/3) z^{-1/3}/sqrt(3)".into() })
        .collect();
    let summed: Vec<Complex64> = vals.iter().map(|l| l.value * scale).collect();
    report.laplace_values = vals;
    report.checks.push(Check::new("frequency_values", value_residual(&summed, direct), tol.value));
    Ok(())
}
