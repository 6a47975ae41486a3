//! Numerical Laplace transform `∫ e^{-zζ} ψ(ζ) dζ` along the path of a
//! [`RayGridFunction`], with tail control and lateral pairs.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::borel_plane::{picard_solve_path, PicardOptions, Ray, RayGridFunction, VolterraOperator};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::numerics::cis;
use crate::numerics::quad::{gauss_jacobi, gauss_legendre};

/// Whether the base point's exponential `e^{-αz}` is included.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tilt {
    /// `L_{ζ,α}ψ = ∫ e^{-zζ} ψ dζ`.
    #[default]
    Attached,
    /// `L_{ζ_α,0}ψ = ∫ e^{-z(ζ-α)} ψ dζ`.
    Detached,
}

#[derive(Debug, Clone)]
pub struct LaplaceRequest {
    pub psi: RayGridFunction,
    pub z_points: Vec<Complex64>,
    pub tilt: Tilt,
    /// Absolute tolerance on the detached value, for quadrature and tail alike.
    pub tol: f64,
}

impl LaplaceRequest {
    pub fn new(psi: RayGridFunction, z_points: Vec<Complex64>, tilt: Tilt) -> Self {
        LaplaceRequest { psi, z_points, tilt, tol: DEFAULT_TOL }
    }
}

pub const DEFAULT_TOL: f64 = 1e-10;
const MIN_NODES: usize = 16;
const MAX_NODES: usize = 128;
/// Longest path the extension policy will ask for.
pub const MAX_LENGTH: f64 = 80.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaplaceValue {
    pub z: Complex64,
    pub value: Complex64,
    /// Quadrature estimate plus tail bound plus rounding, scaled like `value`.
    pub err_est: f64,
    /// Tail bound alone, on the detached value.
    pub tail: f64,
}

/// Laplace transform at every requested `z`.
pub fn laplace(req: &LaplaceRequest) -> Result<Vec<LaplaceValue>> {
    laplace_with(req, Exec::default())
}

pub fn laplace_with(req: &LaplaceRequest, exec: Exec) -> Result<Vec<LaplaceValue>> {
    let psi = &req.psi;
    let last = psi.path.legs.last().expect("path has a leg").angle;
    for z in &req.z_points {
        if !((z * cis(last)).re > 0.0) {
            return Err(Error::InvalidInput(format!("Re(z e^(i theta)) <= 0 at z = {z}, theta = {last}")));
        }
    }
    exec.map(&req.z_points, |&z| one(psi, z, req.tilt, req.tol)).into_iter().collect()
}

fn one(psi: &RayGridFunction, z: Complex64, tilt: Tilt, tol: f64) -> Result<LaplaceValue> {
    let sigma = psi.exponent;
    let total = psi.length();
    let path = &psi.path;
    let mut value = Complex64::new(0.0, 0.0);
    let mut quad_err = 0.0;
    let mut magnitude = 0.0;
    for p in &psi.panels {
        let dir = path.tangent(0.5 * (p.t0 + p.t1));
        let kernel = |t: f64| (-z * path.offset(t)).exp() * dir * p.eval(t);
        let rule = |n: usize| -> Complex64 {
            if p.t0 == 0.0 {
                gauss_jacobi(n, 0.0, sigma).apply(0.0, p.t1, kernel) * (0.5 * p.t1).powf(sigma + 1.0)
            } else {
                gauss_legendre(n).apply(p.t0, p.t1, |t| kernel(t) * t.powf(sigma)) * (0.5 * (p.t1 - p.t0))
            }
        };
        let share = tol * (p.t1 - p.t0) / total;
        let mut n = MIN_NODES;
        let mut coarse = rule(n);
        let (fine, diff) = loop {
            let fine = rule(2 * n);
            let diff = (fine - coarse).norm();
            n *= 2;
            if diff <= share || 2 * n > MAX_NODES {
                break (fine, diff);
            }
            coarse = fine;
        };
        value += fine;
        quad_err += diff;
        magnitude += fine.norm();
    }
    let tail = tail_bound(psi, z);
    if tail > tol {
        return Err(Error::TailDominates { tail, tol, length: total });
    }
    let mut err_est = quad_err + tail + 1e-15 * magnitude;
    if tilt == Tilt::Attached {
        let f = (-z * psi.base()).exp();
        value *= f;
        err_est *= f.norm();
    }
    Ok(LaplaceValue { z, value, err_est, tail })
}

/// `‖h‖_last T^σ |e^{-z(ζ(T)-α)}| / (c - Λ - max(σ,0)/T)` with
/// `c = Re(z e^{iθ_last})` and `Λ ≥ 0` the fitted growth rate of `h`: the
/// integral beyond `T` when `|h|` keeps growing no faster than `e^{Λt}`.
fn tail_bound(psi: &RayGridFunction, z: Complex64) -> f64 {
    let last = psi.panels.last().expect("grid has a panel");
    let h_last = crate::numerics::sup_norm(&last.values);
    if h_last == 0.0 {
        return 0.0;
    }
    let big_t = psi.length();
    let c = (z * cis(psi.path.legs.last().expect("path has a leg").angle)).re;
    let lambda = psi.growth_rate().unwrap_or(0.0).max(0.0);
    let rate = c - lambda - sigma_excess(psi.exponent, big_t);
    if rate <= 0.0 {
        return f64::INFINITY;
    }
    h_last * big_t.powf(psi.exponent) * (-z * psi.path.offset(big_t)).exp().norm() / rate
}

/// `(T+s)^σ ≤ T^σ e^{σs/T}` for `σ > 0`.
fn sigma_excess(sigma: f64, big_t: f64) -> f64 {
    sigma.max(0.0) / big_t
}

/// Laplace transform of `solve(T)`, doubling the path length `T` from
/// `length` until every tail bound is below `tol` or `T` would pass
/// [`MAX_LENGTH`]. Returns the values and the grid function finally used.
pub fn laplace_extending<F>(
    mut solve: F,
    length: f64,
    z_points: &[Complex64],
    tilt: Tilt,
    tol: f64,
    exec: Exec,
) -> Result<(Vec<LaplaceValue>, RayGridFunction)>
where
    F: FnMut(f64) -> Result<RayGridFunction>,
{
    let mut len = length.min(MAX_LENGTH);
    loop {
        let psi = solve(len)?;
        let req = LaplaceRequest { psi, z_points: z_points.to_vec(), tilt, tol };
        match laplace_with(&req, exec) {
            Err(Error::TailDominates { .. }) if len < MAX_LENGTH => len = (2.0 * len).min(MAX_LENGTH),
            Err(e) => return Err(e),
            Ok(v) => return Ok((v, req.psi)),
        }
    }
}

/// Shortest ray length with `min_z Re(z e^{iθ}) T ≥ 30`.
pub fn decay_length(z_points: &[Complex64], theta: f64) -> f64 {
    let c = z_points.iter().map(|z| (z * cis(theta)).re).fold(f64::INFINITY, f64::min);
    if c > 0.0 {
        (30.0 / c).clamp(1.0, MAX_LENGTH)
    } else {
        MAX_LENGTH
    }
}

/// Laplace transforms of the Picard solutions on the rays `θ+ε` and `θ-ε`
/// from `V.base`, in that order.
pub fn lateral_pair(
    v: &VolterraOperator,
    theta: f64,
    eps: f64,
    z_points: &[Complex64],
    tol: f64,
    exec: Exec,
) -> Result<(Vec<LaplaceValue>, Vec<LaplaceValue>)> {
    let side = |angle: f64| -> Result<Vec<LaplaceValue>> {
        let start = decay_length(z_points, angle);
        let solve = |len: f64| {
            let ray = Ray::new(v.base, angle, len)?;
            picard_solve_path(v, ray.into(), &PicardOptions::default()).map(|r| r.psi)
        };
        laplace_extending(solve, start, z_points, Tilt::Attached, tol, Exec::Sequential).map(|r| r.0)
    };
    let (plus, minus) = exec.join(|| side(theta + eps), || side(theta - eps));
    Ok((plus?, minus?))
}
