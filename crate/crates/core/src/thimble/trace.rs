//! Lifting the ray `f(a) + t e^{iθ}` through `f`.
//!
//! Both halves are traced in the offset `w = u - a` against the local phase
//! `F(w) = f(a+w) - f(a)` and in the variable `s = t^{1/k}`, where `k` is the
//! order of the critical point (2 for Morse points, 3 for a degenerate cubic).
//! In `s` the lift `w(s)` is analytic at the critical point, so the trace has
//! no singular start. Each Runge–Kutta step is projected back onto the fiber
//! `F(w) = s^k e^{iθ}` by Newton's method.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{principal, ThimbleSpec, DEGENERACY_TOL};
use crate::borel_plane::{breakpoints, GridSpec, Path, Ray};
use crate::error::{Error, Result};
use crate::numerics::cheb::{basis, PANEL_NODES};
use crate::numerics::cis;
use crate::poly::Poly;

/// Largest step in `s`.
const MAX_STEP: f64 = 0.05;
const SEED_S: f64 = 1e-3;
const NEWTON_TOL: f64 = 1e-12;
const NEWTON_MAX: usize = 12;

/// Which half of the thimble: `Plus` leaves the critical point toward the
/// future, `Minus` arrives from the past.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Branch {
    Plus,
    Minus,
}

/// Path lifting for one spec and direction.
#[derive(Debug, Clone)]
pub(crate) struct Lift {
    pub(crate) phase: Poly,
    pub(crate) dphase: Poly,
    pub(crate) order: usize,
    pub(crate) theta: f64,
    /// Leading direction of each branch: `w ≈ d s`.
    pub(crate) plus: Complex64,
    pub(crate) minus: Complex64,
    /// Other critical points as offsets from `a`.
    pub(crate) others: Vec<Complex64>,
}

impl Lift {
    pub(crate) fn new(spec: &ThimbleSpec) -> Result<Self> {
        spec.validate()?;
        let phase = spec.local_phase();
        let dphase = phase.derivative();
        let coeff = |k: usize| phase.coeffs.get(k).copied().unwrap_or_default();
        let scale = spec.f.scale_norm();
        let rot = cis(spec.angle);
        let f2 = coeff(2) * 2.0;
        let (order, plus, minus) = if f2.norm() >= DEGENERACY_TOL * scale {
            let d = principal(rot * 2.0 / f2).sqrt();
            (2, d, -d)
        } else if coeff(3).norm() >= DEGENERACY_TOL * scale {
            if spec.f.degree() != 3 {
                return Err(Error::ParameterUnsupported(
                    "degenerate critical points are only traced for cubic phases".into(),
                ));
            }
            let d = principal(rot / coeff(3)).powf(1.0 / 3.0);
            (3, d, d * cis(2.0 * std::f64::consts::PI / 3.0))
        } else {
            return Err(Error::SeedFailure(f2.norm()));
        };
        let others = dphase
            .roots()
            .into_iter()
            .filter(|r| r.norm() > 1e-6 * (1.0 + spec.crit_point.norm()))
            .collect();
        Ok(Lift { phase, dphase, order, theta: spec.angle, plus, minus, others })
    }

    fn target(&self, s: f64) -> Complex64 {
        cis(self.theta) * s.powi(self.order as i32)
    }

    /// `dw/ds` on the fiber.
    pub(crate) fn velocity(&self, s: f64, w: Complex64) -> Complex64 {
        let k = self.order as f64;
        cis(self.theta) * (k * s.powi(self.order as i32 - 1)) / self.dphase.eval(w)
    }

    fn newton(&self, s: f64, mut w: Complex64) -> Complex64 {
        let target = self.target(s);
        for _ in 0..NEWTON_MAX {
            let r = self.phase.eval(w) - target;
            let step = r / self.dphase.eval(w);
            w -= step;
            if step.norm() <= NEWTON_TOL * 1e-3 * (w.norm() + 1e-300) {
                break;
            }
        }
        w
    }

    fn distance_to_others(&self, w: Complex64) -> f64 {
        self.others.iter().fold(f64::INFINITY, |m, c| m.min((w - c).norm()))
    }

    /// `w` on one branch at the increasing parameters `targets` (in `s`).
    pub(crate) fn lift(&self, branch: Branch, targets: &[f64]) -> Result<Vec<Complex64>> {
        let d = match branch {
            Branch::Plus => self.plus,
            Branch::Minus => self.minus,
        };
        let mut out = Vec::with_capacity(targets.len());
        let mut s = SEED_S.min(targets.first().copied().unwrap_or(SEED_S));
        let mut w = self.newton(s, d * s);
        for &goal in targets {
            if goal <= s {
                out.push(if goal == s { w } else { self.newton(goal, d * goal) });
                continue;
            }
            while s < goal {
                let dist = self.distance_to_others(w);
                if dist < 1e-8 * (1.0 + w.norm()) {
                    return Err(Error::BranchCollision { point: format!("{}", w), distance: dist });
                }
                let speed = self.velocity(s, w).norm().max(1e-300);
                let h = (goal - s).min(MAX_STEP * (1.0 + s)).min(0.2 * dist / speed);
                if h < 1e-12 * (1.0 + s) {
                    return Err(Error::BranchCollision { point: format!("{}", w), distance: dist });
                }
                let k1 = self.velocity(s, w);
                let k2 = self.velocity(s + 0.5 * h, w + k1 * (0.5 * h));
                let k3 = self.velocity(s + 0.5 * h, w + k2 * (0.5 * h));
                let k4 = self.velocity(s + h, w + k3 * h);
                let next = if goal - s <= h { goal } else { s + h };
                w = self.newton(next, w + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0));
                s = next;
            }
            out.push(w);
        }
        Ok(out)
    }

    /// `|F(w) - s^k e^{iθ}|` relative to `1 + t`.
    pub(crate) fn residual(&self, s: f64, w: Complex64) -> f64 {
        let t = self.target(s);
        (self.phase.eval(w) - t).norm() / (1.0 + t.norm())
    }
}

/// Both halves of a thimble sampled on the Chebyshev nodes of a ray grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TracedThimble {
    pub spec: ThimbleSpec,
    /// The critical value `f(a)`.
    pub alpha: Complex64,
    /// 2 for a Morse point, 3 for a degenerate cubic point.
    pub order: usize,
    pub t_max: f64,
    /// Panel breakpoints in `t`, shared with the projection's ray grid.
    pub breaks: Vec<f64>,
    /// All nodes in `t`, panel by panel.
    pub ts: Vec<f64>,
    /// `u_+(t) - a` and `u_-(t) - a` at the nodes.
    pub w_plus: Vec<Complex64>,
    pub w_minus: Vec<Complex64>,
    /// Other critical values, avoided by the grid.
    pub avoid: Vec<Complex64>,
    pub max_residual: f64,
}

/// One half of a thimble in plotting form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polyline {
    pub t: Vec<f64>,
    pub u_re: Vec<f64>,
    pub u_im: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThimblePolylines {
    pub branch_minus: Polyline,
    pub branch_plus: Polyline,
}

impl TracedThimble {
    pub fn branch_plus(&self) -> Vec<Complex64> {
        self.w_plus.iter().map(|w| self.spec.crit_point + w).collect()
    }

    pub fn branch_minus(&self) -> Vec<Complex64> {
        self.w_minus.iter().map(|w| self.spec.crit_point + w).collect()
    }

    pub fn ray(&self) -> Ray {
        Ray { base: self.alpha, angle: self.spec.angle, length: self.t_max }
    }

    pub fn polylines(&self) -> ThimblePolylines {
        let line = |u: Vec<Complex64>| {
            let mut t = vec![0.0];
            t.extend(&self.ts);
            let mut pts = vec![self.spec.crit_point];
            pts.extend(u);
            Polyline { t, u_re: pts.iter().map(|p| p.re).collect(), u_im: pts.iter().map(|p| p.im).collect() }
        };
        ThimblePolylines { branch_minus: line(self.branch_minus()), branch_plus: line(self.branch_plus()) }
    }
}

/// Other critical values of `f`, to keep off the ray.
pub(crate) fn other_values(spec: &ThimbleSpec, lift: &Lift) -> Vec<Complex64> {
    let alpha = spec.critical_value();
    let mut vals: Vec<Complex64> = Vec::new();
    for w in &lift.others {
        let v = alpha + lift.phase.eval(*w);
        if (v - alpha).norm() > 1e-9 * (1.0 + alpha.norm()) && !vals.iter().any(|x| (x - v).norm() < 1e-12) {
            vals.push(v);
        }
    }
    vals
}

/// Trace both halves of the thimble over `t ∈ [0, t_max]`.
pub fn trace_thimble(spec: &ThimbleSpec, t_max: f64, trace_tol: f64) -> Result<TracedThimble> {
    if !(t_max > 0.0 && t_max.is_finite() && trace_tol > 0.0) {
        return Err(Error::InvalidInput(format!("t_max {t_max}, trace_tol {trace_tol}")));
    }
    let lift = Lift::new(spec)?;
    let alpha = spec.critical_value();
    let avoid = other_values(spec, &lift);
    let ray = Ray::new(alpha, spec.angle, t_max)?;
    let breaks = breakpoints(&Path::from(ray), &avoid, &GridSpec::default())?;
    let b = basis(PANEL_NODES);
    let ts: Vec<f64> = breaks
        .windows(2)
        .flat_map(|w| b.nodes.iter().map(move |x| 0.5 * (w[0] + w[1]) + 0.5 * (w[1] - w[0]) * x))
        .collect();
    let k = lift.order as f64;
    let ss: Vec<f64> = ts.iter().map(|t| t.powf(1.0 / k)).collect();
    let w_plus = lift.lift(Branch::Plus, &ss)?;
    let w_minus = lift.lift(Branch::Minus, &ss)?;
    let max_residual = ss
        .iter()
        .zip(w_plus.iter().zip(&w_minus))
        .map(|(s, (p, m))| lift.residual(*s, *p).max(lift.residual(*s, *m)))
        .fold(0.0, f64::max);
    if max_residual > trace_tol {
        return Err(Error::NoConvergence { iterations: NEWTON_MAX, last_change: max_residual });
    }
    Ok(TracedThimble { spec: spec.clone(), alpha, order: lift.order, t_max, breaks, ts, w_plus, w_minus, avoid, max_residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn gaussian_branches_are_the_real_axis() {
        let spec = ThimbleSpec::new(Poly::parse("u^2/2").unwrap(), Poly::from_real(&[1.0]), c(0.0), 0.0).unwrap();
        let tr = trace_thimble(&spec, 10.0, 1e-10).unwrap();
        for (t, (p, m)) in tr.ts.iter().zip(tr.w_plus.iter().zip(&tr.w_minus)) {
            let e = (2.0 * t).sqrt();
            assert!((p - c(e)).norm() < 1e-12 * (1.0 + e) && (m + c(e)).norm() < 1e-12 * (1.0 + e));
        }
        assert_eq!(tr.order, 2);
    }

    #[test]
    fn cubic_residual_and_separation() {
        let spec = ThimbleSpec::new(Poly::parse("4u^3-3u").unwrap(), Poly::from_real(&[1.0]), c(0.5), std::f64::consts::PI / 8.0)
            .unwrap();
        let tr = trace_thimble(&spec, 12.0, 1e-10).unwrap();
        assert!(tr.max_residual < 1e-12);
        assert!(tr.w_plus.iter().zip(&tr.w_minus).all(|(p, m)| (p - m).norm() > 1e-3));
        assert_eq!(tr.polylines().branch_plus.t.len(), tr.ts.len() + 1);
    }

    #[test]
    fn quartic_point_cannot_be_seeded() {
        let spec = ThimbleSpec::new(Poly::parse("u^4").unwrap(), Poly::from_real(&[1.0]), c(0.0), 0.0).unwrap();
        assert!(matches!(trace_thimble(&spec, 5.0, 1e-10), Err(Error::SeedFailure(_))));
    }

    #[test]
    fn ray_through_another_critical_value_is_rejected() {
        let spec = ThimbleSpec::new(Poly::parse("4u^3-3u").unwrap(), Poly::from_real(&[1.0]), c(0.5), 0.0).unwrap();
        assert!(trace_thimble(&spec, 5.0, 1e-10).is_err());
    }
}
