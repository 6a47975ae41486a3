//! Translation and scaling-rotation identities of thimble integrals.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{thimble_integral_direct, trace_thimble, ThimbleSpec};
use crate::error::{Error, Result};
use crate::numerics::cis;
use crate::poly::Poly;

/// Trace far enough that `e^{-Re(z e^{iθ}) T}` is below `e^{-36}`.
const DECAY: f64 = 36.0;

/// Transformations applied to a spec: an additive constant `c` in the phase,
/// a factor `r` on the phase, the pullback by `u ↦ u/s` and the translation
/// `u ↦ u + b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymmetryParams {
    pub c: Complex64,
    pub r: Complex64,
    pub s: Complex64,
    pub b: Complex64,
}

/// Relative deviation from each identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymmetryDeviations {
    /// `I_{f+c}(z)` against `e^{-cz} I_f(z)`.
    pub constant: f64,
    /// `I_{rf}(z)` against `I_f(rz)`, the latter along `θ - arg r`.
    pub scaling: f64,
    /// Pullback by `u ↦ u/s` against `±s I_f(z)`, with the sign read off the
    /// principal branches of the two seeds.
    pub pullback: f64,
    /// Translation by `b` against `I_f(z)`.
    pub translation: f64,
}

impl SymmetryDeviations {
    pub fn max(&self) -> f64 {
        self.constant.max(self.scaling).max(self.pullback).max(self.translation)
    }
}

fn direct(spec: &ThimbleSpec, z: Complex64) -> Result<Complex64> {
    let c = (z * cis(spec.angle)).re;
    if !(c > 0.0) {
        return Err(Error::InvalidInput(format!("Re(z e^(i theta)) <= 0 at z = {z}")));
    }
    let traced = trace_thimble(spec, DECAY / c, 1e-10)?;
    Ok(thimble_integral_direct(spec, &traced, z)?.value)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn seed_direction(f: &Poly, a: Complex64, theta: f64) -> Complex64 {
    let f2 = f.derivative().derivative().eval(a);
    super::principal(cis(theta) * 2.0 / f2).sqrt()
}

pub fn symmetry_deviations(spec: &ThimbleSpec, z: Complex64, p: &SymmetryParams) -> Result<SymmetryDeviations> {
    let base = direct(spec, z)?;
    let with = |f: Poly, nu: Poly, a: Complex64, angle: f64| ThimbleSpec { f, nu, crit_point: a, angle, orientation: spec.orientation };

    let mut shifted = spec.f.clone();
    shifted.coeffs[0] += p.c;
    let constant = rel(direct(&with(shifted, spec.nu.clone(), spec.crit_point, spec.angle), z)?, base * (-p.c * z).exp());

    let scaled = with(spec.f.scale(p.r), spec.nu.clone(), spec.crit_point, spec.angle);
    let rotated = with(spec.f.clone(), spec.nu.clone(), spec.crit_point, spec.angle - p.r.arg());
    let scaling = rel(direct(&scaled, z)?, direct(&rotated, z * p.r)?);

    let inv = 1.0 / p.s;
    let pulled = with(spec.f.dilate(inv), spec.nu.dilate(inv), spec.crit_point * p.s, spec.angle);
    let d = seed_direction(&spec.f, spec.crit_point, spec.angle);
    let d_pulled = seed_direction(&pulled.f, pulled.crit_point, spec.angle);
    let sign = if (d_pulled / (d * p.s)).re > 0.0 { 1.0 } else { -1.0 };
    let pullback = rel(direct(&pulled, z)?, base * p.s * sign);

    let moved = with(spec.f.taylor_shift(p.b), spec.nu.taylor_shift(p.b), spec.crit_point - p.b, spec.angle);
    let translation = rel(direct(&moved, z)?, base);

    Ok(SymmetryDeviations { constant, scaling, pullback, translation })
}
