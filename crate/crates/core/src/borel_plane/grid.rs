//! Panelled samples of `ψ(ζ(t)) = t^σ h(t)` along a path.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::path::{Leg, Path};
use crate::error::{Error, Result};
use crate::numerics::cheb::{basis, PANEL_NODES};
use crate::numerics::lsq;

/// Panel sizing: each panel is at most `kappa` times its distance to the
/// nearest avoided point, at most `max_panel` long, and the first panel is at
/// most `first_panel` long. Later panels grow geometrically from the base by
/// at most `grading` times their start, which keeps the explicit `t^σ`
/// resolved wherever it is integrated against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub kappa: f64,
    pub max_panel: f64,
    pub first_panel: f64,
    pub grading: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { kappa: 0.4, max_panel: 1.0, first_panel: 0.25, grading: 0.5 }
    }
}

const MAX_PANELS: usize = 20_000;

/// Breakpoints `0 = b_0 < b_1 < … = length` for `path`, refined toward the
/// points in `avoid` and broken at every corner.
pub fn breakpoints(path: &Path, avoid: &[Complex64], spec: &GridSpec) -> Result<Vec<f64>> {
    let total = path.length();
    for &s in avoid {
        let d = path.distance(s);
        if d <= 1e-9 * (1.0 + s.norm()) {
            return Err(Error::RayHitsRoot { point: format!("{s}"), distance: d });
        }
    }
    let mut corners = path.corners();
    corners.push(total);
    let mut bps = vec![0.0];
    let mut a = 0.0;
    let mut ci = 0;
    while a < total {
        while corners[ci] <= a + 1e-12 * (1.0 + total) {
            ci += 1;
        }
        let stop = corners[ci];
        let mut len = spec.max_panel.min(stop - a);
        if a == 0.0 {
            len = len.min(spec.first_panel);
        } else {
            len = len.min(spec.grading * a);
        }
        let dist = |len: f64| avoid.iter().fold(f64::INFINITY, |m, &s| m.min(path.distance_on(a, a + len, s)));
        let d = dist(len);
        if len > spec.kappa * d {
            len = spec.kappa * d;
        }
        // fold a short remainder into this panel when it stays admissible
        let rest = stop - (a + len);
        if rest > 0.0 && rest < 0.25 * len {
            let merged = stop - a;
            if merged <= spec.kappa * dist(merged) && merged <= 1.25 * spec.max_panel {
                len = merged;
            }
        }
        a = if stop - (a + len) <= 1e-12 * (1.0 + total) { stop } else { a + len };
        bps.push(a);
        if bps.len() > MAX_PANELS {
            return Err(Error::RayMisconfigured(format!("more than {MAX_PANELS} panels needed")));
        }
    }
    Ok(bps)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Panel {
    pub t0: f64,
    pub t1: f64,
    /// `h` at the Chebyshev nodes of `[t0, t1]`, ascending in `t`.
    pub values: Vec<Complex64>,
}

impl Panel {
    pub fn nodes(&self) -> Vec<f64> {
        let b = basis(self.values.len());
        b.nodes.iter().map(|x| self.param(*x)).collect()
    }

    fn param(&self, x: f64) -> f64 {
        0.5 * (self.t0 + self.t1) + 0.5 * (self.t1 - self.t0) * x
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        let x = (2.0 * t - self.t0 - self.t1) / (self.t1 - self.t0);
        basis(self.values.len()).interp(&self.values, x.clamp(-1.0, 1.0))
    }
}

/// `ψ(ζ(t)) = t^σ h(t)` with `h` sampled panel by panel. The points in
/// `avoid` are the singularities the grid was refined against.
#[derive(Debug, Clone, PartialEq)]
pub struct RayGridFunction {
    pub path: Path,
    pub exponent: f64,
    pub panels: Vec<Panel>,
    pub avoid: Vec<Complex64>,
}

impl RayGridFunction {
    /// Sample `h(t, ζ)` on a fresh grid.
    pub fn from_fn<F>(path: Path, exponent: f64, avoid: &[Complex64], spec: &GridSpec, h: F) -> Result<Self>
    where
        F: Fn(f64, Complex64) -> Complex64,
    {
        if !(exponent > -1.0) {
            return Err(Error::InvalidInput(format!("exponent {exponent} must exceed -1")));
        }
        let bps = breakpoints(&path, avoid, spec)?;
        let b = basis(PANEL_NODES);
        let panels = bps
            .windows(2)
            .map(|w| {
                let mut p = Panel { t0: w[0], t1: w[1], values: Vec::new() };
                p.values = b
                    .nodes
                    .iter()
                    .map(|&x| {
                        let t = p.param(x);
                        h(t, path.point(t))
                    })
                    .collect();
                p
            })
            .collect();
        Ok(RayGridFunction { path, exponent, panels, avoid: avoid.to_vec() })
    }

    /// Same grid, new exponent, `h` produced from `(t, ζ, h_old)`.
    pub fn map<F>(&self, exponent: f64, mut f: F) -> Self
    where
        F: FnMut(f64, Complex64, Complex64) -> Complex64,
    {
        let panels = self
            .panels
            .iter()
            .map(|p| {
                let values = p
                    .nodes()
                    .into_iter()
                    .zip(&p.values)
                    .map(|(t, &h)| f(t, self.path.point(t), h))
                    .collect();
                Panel { t0: p.t0, t1: p.t1, values }
            })
            .collect();
        RayGridFunction { path: self.path.clone(), exponent, panels, avoid: self.avoid.clone() }
    }

    pub fn zeros_like(&self) -> Self {
        self.map(self.exponent, |_, _, _| Complex64::new(0.0, 0.0))
    }

    pub fn base(&self) -> Complex64 {
        self.path.base
    }

    pub fn angle(&self) -> f64 {
        self.path.first_angle()
    }

    pub fn length(&self) -> f64 {
        self.path.length()
    }

    /// All node parameters in increasing order.
    pub fn node_params(&self) -> Vec<f64> {
        self.panels.iter().flat_map(|p| p.nodes()).collect()
    }

    /// All `h` samples in node order.
    pub fn h_values(&self) -> Vec<Complex64> {
        self.panels.iter().flat_map(|p| p.values.iter().copied()).collect()
    }

    fn panel_at(&self, t: f64) -> &Panel {
        let k = self.panels.partition_point(|p| p.t1 < t);
        &self.panels[k.min(self.panels.len() - 1)]
    }

    /// Smooth factor `h(t)`.
    pub fn eval_h(&self, t: f64) -> Complex64 {
        self.panel_at(t).eval(t)
    }

    /// `ψ(ζ(t)) = t^σ h(t)`.
    pub fn eval(&self, t: f64) -> Complex64 {
        self.eval_h(t) * t.powf(self.exponent)
    }

    pub fn same_layout(&self, other: &Self) -> bool {
        self.path == other.path
            && self.panels.len() == other.panels.len()
            && self.panels.iter().zip(&other.panels).all(|(a, b)| a.t0 == b.t0 && a.t1 == b.t1)
    }

    fn zip_with<F>(&self, other: &Self, f: F) -> Result<Self>
    where
        F: Fn(Complex64, Complex64) -> Complex64,
    {
        if !self.same_layout(other) || self.exponent != other.exponent {
            return Err(Error::InvalidInput("grid functions live on different grids".into()));
        }
        let mut out = self.clone();
        for (p, q) in out.panels.iter_mut().zip(&other.panels) {
            for (v, w) in p.values.iter_mut().zip(&q.values) {
                *v = f(*v, *w);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.map(self.exponent, |_, _, h| h * s)
    }

    /// Rewrite with a smaller exponent, multiplying `h` by `t^{σ_old-σ_new}`.
    pub fn lower_exponent(&self, exponent: f64) -> Result<Self> {
        let d = self.exponent - exponent;
        if d < 0.0 || !(exponent > -1.0) {
            return Err(Error::InvalidInput(format!("cannot move exponent {} to {exponent}", self.exponent)));
        }
        Ok(self.map(exponent, |t, _, h| h * t.powf(d)))
    }

    /// Largest `|h|` at the nodes.
    pub fn sup_h(&self) -> f64 {
        crate::numerics::sup_norm(&self.h_values())
    }

    /// Largest `|ψ|` at nodes with `t ∈ [lo, hi]`.
    pub fn sup_psi_on(&self, lo: f64, hi: f64) -> f64 {
        self.node_params()
            .into_iter()
            .zip(self.h_values())
            .filter(|(t, _)| *t >= lo && *t <= hi)
            .fold(0.0_f64, |m, (t, h)| m.max(h.norm() * t.powf(self.exponent)))
    }

    /// Least-squares slope `Λ` of `log|h|` against `t` over the last quarter
    /// of the path; `None` when `h` vanishes there.
    pub fn growth_rate(&self) -> Option<f64> {
        let total = self.length();
        let (ts, ys): (Vec<f64>, Vec<f64>) = self
            .node_params()
            .into_iter()
            .zip(self.h_values())
            .filter(|(t, h)| *t >= 0.75 * total && h.norm() > 0.0)
            .map(|(t, h)| (t, h.norm().ln()))
            .unzip();
        if ts.len() < 2 {
            return None;
        }
        let rows: Vec<Vec<f64>> = ts.iter().map(|&t| vec![1.0, t]).collect();
        lsq::solve_real(&rows, &ys).map(|c| c[1])
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    base: Complex64,
    angle: f64,
    exponent: f64,
    panels: Vec<Panel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    legs: Option<Vec<Leg>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    avoid: Vec<Complex64>,
}

impl Serialize for RayGridFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire {
            base: self.path.base,
            angle: self.angle(),
            exponent: self.exponent,
            panels: self.panels.clone(),
            legs: (self.path.legs.len() > 1).then(|| self.path.legs.clone()),
            avoid: self.avoid.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RayGridFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = Wire::deserialize(d)?;
        let (Some(first), Some(last)) = (w.panels.first(), w.panels.last()) else {
            return Err(D::Error::custom("grid function without panels"));
        };
        if first.t0 != 0.0 || w.panels.windows(2).any(|p| p[0].t1 != p[1].t0) {
            return Err(D::Error::custom("panels must tile [0, length]"));
        }
        let legs = w.legs.unwrap_or_else(|| vec![Leg { angle: w.angle, length: last.t1 }]);
        Ok(RayGridFunction { path: Path { base: w.base, legs }, exponent: w.exponent, panels: w.panels, avoid: w.avoid })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::borel_plane::Ray;

    fn ray(theta: f64, len: f64) -> Path {
        Ray::new(Complex64::new(1.0, 0.0), theta, len).unwrap().into()
    }

    #[test]
    fn panels_refine_toward_avoided_points() {
        let avoid = [Complex64::new(-1.0, 0.0)];
        let bps = breakpoints(&ray(3.0, 1.95), &avoid, &GridSpec::default()).unwrap();
        let widths: Vec<f64> = bps.windows(2).map(|w| w[1] - w[0]).collect();
        assert!(widths.last().unwrap() < &0.1);
        assert!((bps.last().unwrap() - 1.95).abs() < 1e-15);
        assert!(matches!(
            breakpoints(&ray(std::f64::consts::PI, 3.0), &avoid, &GridSpec::default()),
            Err(Error::RayHitsRoot { .. })
        ));
    }

    #[test]
    fn interpolation_between_nodes() {
        let h = |t: f64| Complex64::new((2.0 * t).exp(), t.sin());
        let f = RayGridFunction::from_fn(ray(0.3, 5.0), -0.5, &[], &GridSpec::default(), |t, _| h(t)).unwrap();
        for &t in &[0.01f64, 0.7, 2.222, 4.99] {
            let e = h(t) * t.powf(-0.5);
            assert!((f.eval(t) - e).norm() < 1e-13 * e.norm());
        }
        let lam = f.growth_rate().unwrap();
        assert!((lam - 2.0).abs() < 1e-3);
    }

    #[test]
    fn json_round_trip() {
        let f = RayGridFunction::from_fn(ray(0.0, 1.0), 0.25, &[], &GridSpec::default(), |t, _| Complex64::new(t, 1.0))
            .unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert!(s.contains("\"exponent\":0.25"));
        let g: RayGridFunction = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
    }
}
