//! Stokes constants from the jump of a Borel-plane solution across the cut
//! through another characteristic rate.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::borel_plane::{picard_solve_path, Path, PicardOptions, Ray, VolterraOperator};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::numerics::{cis, unwrap_angle};

/// Default half-opening of the lateral paths around the cut.
pub const DEFAULT_EPS: f64 = 0.15;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StokesMeasurement {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub theta_cut: f64,
    pub eps: f64,
    /// Mean of `(ψ_α(p_ccw) - ψ_α(p_cw))/ψ_β(p)`, where `p_ccw` is reached
    /// from the counterclockwise side `θ_cut + ε` and each solution is
    /// normalized by `ζ^σ/Γ(τ)` on its own ray.
    pub raw: Complex64,
    /// `raw` with each solution rephased to the principal branch of
    /// `((ζ-γ) e^{-iθ_γ})^σ`, `θ_γ` pointing from `γ` toward the other rate,
    /// and values on that branch's cut taken from `Im ζ < 0`.
    pub normalized: Complex64,
    /// Largest deviation of a single point from the mean, relative to `|raw|`
    /// (absolute when `raw` vanishes).
    pub dispersion: f64,
    pub points: Vec<Complex64>,
    pub samples: Vec<Complex64>,
}

/// Measure the Stokes constant of `ψ_α` across the cut `θ_cut` through `β`.
///
/// `ψ_α(p_±)` is continued along the polyline `α → α + (|β-α| + d) e^{i(θ_cut ± ε)} → p`
/// for points `p = β + d e^{iθ_cut}` with `d ∈ {0.3, 0.5, …, 1.1}·min(1, |β-α|/2)`;
/// `ψ_β` is solved on its own ray.
pub fn stokes_constant(
    op: &crate::ode::Level1Operator,
    alpha: Complex64,
    beta: Complex64,
    theta_cut: f64,
    eps: f64,
    exec: Exec,
) -> Result<StokesMeasurement> {
    let va = VolterraOperator::new(op.clone(), alpha)?;
    let vb = VolterraOperator::new(op.clone(), beta)?;
    let gap = beta - alpha;
    let dir = unwrap_angle(gap.arg(), theta_cut);
    if (dir - theta_cut).abs() > 1e-8 || gap.norm() == 0.0 {
        return Err(Error::RayMisconfigured(format!("{beta} is not on the ray from {alpha} at angle {theta_cut}")));
    }
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::RayMisconfigured(format!("lateral offset {eps} outside (0, 0.5)")));
    }
    let tau_a = va.tau().re;
    let tau_b = vb.tau().re;
    let unit = gap.norm().min(2.0) / 2.0;
    let dists: Vec<f64> = [0.3, 0.5, 0.7, 0.9, 1.1].iter().map(|f| f * unit).collect();
    let opts = PicardOptions::default();
    let far = *dists.last().expect("five points");

    // one solve of ψ_β reaches every point
    let ray_b = Ray::new(beta, theta_cut, far)?;
    let psi_b = picard_solve_path(&vb, ray_b.into(), &opts)?.psi;

    let lateral = |d: f64, side: f64| -> Result<Complex64> {
        let corner = alpha + cis(theta_cut + side * eps) * (gap.norm() + d);
        let p = beta + cis(theta_cut) * d;
        let path = Path::polyline(alpha, &[corner, p])?.with_first_angle_near(theta_cut);
        let len = path.length();
        Ok(picard_solve_path(&va, path, &opts)?.psi.eval(len))
    };
    let rows: Vec<Result<(Complex64, Complex64)>> = exec.map(&dists, |&d| {
        let cw = lateral(d, -1.0)?;
        let ccw = lateral(d, 1.0)?;
        Ok((beta + cis(theta_cut) * d, (ccw - cw) / psi_b.eval(d)))
    });
    let mut points = Vec::new();
    let mut samples = Vec::new();
    for r in rows {
        let (p, s) = r?;
        points.push(p);
        samples.push(s);
    }
    let raw = samples.iter().sum::<Complex64>() / samples.len() as f64;
    let spread = samples.iter().fold(0.0_f64, |m, s| m.max((s - raw).norm()));
    let dispersion = if raw.norm() > 1e-8 { spread / raw.norm() } else { spread };
    // at p the principal argument of (p-β)e^{-iθ_β} is ±π, the sign set by
    // which side Im ζ < 0 lies on
    let side = if theta_cut.cos() >= 0.0 { PI } else { -PI };
    let (sa, sb) = (tau_a - 1.0, tau_b - 1.0);
    let normalized = raw * cis(-sa * theta_cut) / cis(sb * (side - theta_cut));
    Ok(StokesMeasurement { alpha, beta, theta_cut, eps, raw, normalized, dispersion, points, samples })
}
