//! Fixed-point solution of `𝒫̂_α ψ = 0` normalized by `ψ ~ ζ_α^{τ-1}/Γ(τ)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::{GridSpec, RayGridFunction};
use super::ops::{integrate, integrate_n};
use super::path::{Path, Ray};
use super::volterra::{volterra_apply, VolterraOperator};
use crate::error::{Error, Result};
use crate::numerics::gamma::gamma;
use crate::poly::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PicardOptions {
    pub max_iter: usize,
    /// Stop when the sup-change of `h` drops below `tol·(1 + ‖h‖)`.
    pub tol: f64,
    pub grid: GridSpec,
}

impl Default for PicardOptions {
    fn default() -> Self {
        PicardOptions { max_iter: 200, tol: 1e-14, grid: GridSpec::default() }
    }
}

#[derive(Debug, Clone)]
pub struct PicardReport {
    pub psi: RayGridFunction,
    pub iterations: usize,
    pub last_change: f64,
    /// Sup over nodes of `|𝒫̂_α ψ|`.
    pub residual: f64,
}

/// Solve on a ray from `V.base`.
pub fn picard_solve(v: &VolterraOperator, ray: Ray, max_iter: usize, tol: f64) -> Result<RayGridFunction> {
    let opts = PicardOptions { max_iter, tol, ..PicardOptions::default() };
    picard_solve_path(v, ray.into(), &opts).map(|r| r.psi)
}

/// The prototype `f_0 = C (ζ_α/t)^σ … / p̃(s) · exp(-∫ N(s)/(s² p̃(s)) ds)` with
/// `σ = τ-1`, `s = ζ-α`, `N(s) = q(α+s) s + τ p(α+s)` and
/// `C = p'(α)/Γ(τ)`, so that `f_0 ~ s^σ/Γ(τ)` at the base.
fn prototype(v: &VolterraOperator, path: Path, tau: f64, spec: &GridSpec) -> Result<RayGridFunction> {
    let alpha = v.base;
    let sigma = tau - 1.0;
    let tc = Complex64::new(tau, 0.0);
    let s_poly = Poly::new(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);
    let n = v.q().taylor_shift(alpha).mul(&s_poly).add(&v.p().taylor_shift(alpha).scale(tc));
    // the two lowest coefficients vanish by the choice of α and τ
    let n_over_s2 = n.shift_down(2);
    let pt = v.p_tilde().clone();
    let integrand = RayGridFunction::from_fn(path.clone(), 0.0, v.singularities(), spec, |t, _| {
        let s = path.offset(t);
        n_over_s2.eval(s) / pt.eval(s)
    })?;
    let expo = integrate(&integrand);
    let ts = expo.node_params();
    let args = path.continuous_args(&ts);
    let c = pt.eval(Complex64::new(0.0, 0.0)) / gamma(tau).ok_or(Error::GammaPole { term: 0, exponent: tau })?;
    let mut k = 0;
    let mut f0 = expo.map(sigma, |t, _, h| {
        let s = path.offset(t);
        let ratio = Complex64::from_polar((s.norm() / t).powf(sigma), sigma * args[k]);
        k += 1;
        c * ratio * (-(h * t)).exp() / pt.eval(s)
    });
    f0.avoid = v.singularities().to_vec();
    Ok(f0)
}

/// Solve on an arbitrary polyline from `V.base`.
pub fn picard_solve_path(v: &VolterraOperator, path: Path, opts: &PicardOptions) -> Result<PicardReport> {
    let tau = crate::ode::CharacteristicDatum { alpha: v.base, tau: v.tau(), forbidden_directions: vec![] }.tau_real()?;
    if (path.base - v.base).norm() > 1e-12 * (1.0 + v.base.norm()) {
        return Err(Error::InvalidInput("path must start at the operator's base".into()));
    }
    if tau - 1.0 <= -1.0 {
        return Err(Error::ParameterUnsupported(format!("tau = {tau} gives a non-integrable endpoint")));
    }
    let f0 = prototype(v, path, tau, &opts.grid)?;
    let sigma = f0.exponent;

    // 𝒱_0 g = -(1/p) ∂^{-1}(q g),  𝒱_★ g = -(1/p) Σ_j R_j ∂^{-2-j} g
    let v0 = |g: &RayGridFunction| -> Result<RayGridFunction> {
        let qg = g.map(sigma, |_, z, h| h * v.q().eval(z));
        Ok(v.divide_by_p(&integrate(&qg)).scale(Complex64::new(-1.0, 0.0)))
    };
    let has_r = v.op.r.iter().any(|r| r.norm() > 0.0);
    let vstar = |g: &RayGridFunction| -> Result<RayGridFunction> {
        let mut acc = g.map(sigma + 1.0, |_, _, _| Complex64::new(0.0, 0.0));
        for (j, rj) in v.op.r.iter().enumerate() {
            if rj.norm() > 0.0 {
                acc = acc.add(&integrate_n(g, 2 + j).lower_exponent(sigma + 1.0)?.scale(*rj))?;
            }
        }
        Ok(v.divide_by_p(&acc).scale(Complex64::new(-1.0, 0.0)))
    };

    let mut fstar = f0.zeros_like();
    let mut iterations = 0;
    let mut last_change = 0.0;
    if has_r {
        let mut converged = false;
        while iterations < opts.max_iter {
            iterations += 1;
            let next = v0(&fstar)?.add(&vstar(&f0.add(&fstar)?)?)?;
            last_change = next.sub(&fstar)?.sup_h();
            fstar = next;
            let norm = f0.add(&fstar)?.sup_h();
            if !last_change.is_finite() {
                break;
            }
            if last_change <= opts.tol * (1.0 + norm) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NoConvergence { iterations, last_change });
        }
    } else {
        iterations = 1;
    }
    let psi = f0.add(&fstar)?;
    let res = volterra_apply(v, &psi)?;
    let residual = res.sup_psi_on(0.0, res.length());
    Ok(PicardReport { psi, iterations, last_change, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::cis;
    use crate::ode::Level1Operator;

    #[test]
    fn first_order_prototype_is_exact() {
        // P = x - 1, Q = 0.7: α = -1, τ = 0.7, ψ = ζ_α^{-0.3}/Γ(0.7)
        let op = Level1Operator::from_real(&[-1.0, 1.0], &[0.7], &[]).unwrap();
        let v = VolterraOperator::new(op, Complex64::new(-1.0, 0.0)).unwrap();
        let theta = 2.0;
        let rep = picard_solve_path(&v, Ray::new(v.base, theta, 3.0).unwrap().into(), &PicardOptions::default())
            .unwrap();
        assert_eq!(rep.iterations, 1);
        for t in [0.01f64, 1.0, 2.9] {
            let e = cis(-0.3 * theta) * t.powf(-0.3) / gamma(0.7).unwrap();
            assert!((rep.psi.eval(t) - e).norm() < 1e-13 * e.norm());
        }
        assert!(rep.residual < 1e-13);
    }
}
