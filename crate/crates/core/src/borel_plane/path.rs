//! Rays and polylines in the Borel plane, parameterized by arc length.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{cis, unwrap_angle};

/// `ζ(t) = base + t e^{iθ}`, `t ∈ [0, length]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ray {
    pub base: Complex64,
    pub angle: f64,
    pub length: f64,
}

impl Ray {
    pub fn new(base: Complex64, angle: f64, length: f64) -> Result<Self> {
        if !(length > 0.0 && length.is_finite() && angle.is_finite()) {
            return Err(Error::RayMisconfigured(format!("angle {angle}, length {length}")));
        }
        Ok(Ray { base, angle, length })
    }

    pub fn point(&self, t: f64) -> Complex64 {
        self.base + cis(self.angle) * t
    }
}

/// One straight piece of a [`Path`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Leg {
    pub angle: f64,
    pub length: f64,
}

/// Arc-length parameterized polyline starting at `base`.
///
/// A single-leg path is a [`Ray`]. Corners are where Chebyshev panels break.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Path {
    pub base: Complex64,
    pub legs: Vec<Leg>,
}

impl From<Ray> for Path {
    fn from(r: Ray) -> Self {
        Path { base: r.base, legs: vec![Leg { angle: r.angle, length: r.length }] }
    }
}

impl Path {
    /// Polyline through `base, points[0], points[1], …`. Leg angles are
    /// unwrapped so that consecutive legs differ by less than `π`.
    pub fn polyline(base: Complex64, points: &[Complex64]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::RayMisconfigured("polyline needs at least one vertex".into()));
        }
        let mut legs = Vec::with_capacity(points.len());
        let mut prev = base;
        let mut last_angle: Option<f64> = None;
        for &p in points {
            let d = p - prev;
            let length = d.norm();
            if !(length > 0.0 && length.is_finite()) {
                return Err(Error::RayMisconfigured(format!("degenerate leg ending at {p}")));
            }
            let mut angle = d.arg();
            if let Some(a) = last_angle {
                angle = unwrap_angle(angle, a);
            }
            last_angle = Some(angle);
            legs.push(Leg { angle, length });
            prev = p;
        }
        Ok(Path { base, legs })
    }

    /// The same polyline with every leg angle shifted by a multiple of `2π`
    /// so the first lies within `π` of `reference`.
    pub fn with_first_angle_near(mut self, reference: f64) -> Self {
        let shift = unwrap_angle(self.legs[0].angle, reference) - self.legs[0].angle;
        for l in &mut self.legs {
            l.angle += shift;
        }
        self
    }

    pub fn length(&self) -> f64 {
        self.legs.iter().map(|l| l.length).sum()
    }

    /// The single leg as a ray, if the path is straight.
    pub fn as_ray(&self) -> Option<Ray> {
        match self.legs.as_slice() {
            [l] => Some(Ray { base: self.base, angle: l.angle, length: l.length }),
            _ => None,
        }
    }

    pub fn first_angle(&self) -> f64 {
        self.legs[0].angle
    }

    /// Arc-length positions of the interior corners.
    pub fn corners(&self) -> Vec<f64> {
        let mut acc = 0.0;
        let mut out = Vec::new();
        for l in &self.legs[..self.legs.len() - 1] {
            acc += l.length;
            out.push(acc);
        }
        out
    }

    /// Index of the leg containing `t`, its start point and start parameter.
    fn locate(&self, t: f64) -> (usize, Complex64, f64) {
        let mut start = self.base;
        if self.legs.len() == 1 {
            return (0, start, 0.0);
        }
        let mut t0 = 0.0;
        for (k, l) in self.legs.iter().enumerate() {
            if t <= t0 + l.length || k + 1 == self.legs.len() {
                return (k, start, t0);
            }
            start += cis(l.angle) * l.length;
            t0 += l.length;
        }
        unreachable!()
    }

    pub fn point(&self, t: f64) -> Complex64 {
        self.base + self.offset(t)
    }

    /// `ζ(t) - base`, computed without cancellation for small `t`.
    pub fn offset(&self, t: f64) -> Complex64 {
        let (k, start, t0) = self.locate(t);
        (start - self.base) + cis(self.legs[k].angle) * (t - t0)
    }

    /// Unit tangent `ζ'(t)`.
    pub fn tangent(&self, t: f64) -> Complex64 {
        cis(self.legs[self.locate(t).0].angle)
    }

    pub fn end(&self) -> Complex64 {
        self.point(self.length())
    }

    /// Distance from the sub-path `t ∈ [a, b]` to `p`.
    pub fn distance_on(&self, a: f64, b: f64, p: Complex64) -> f64 {
        let mut best = f64::INFINITY;
        let mut start = self.base;
        let mut t0 = 0.0;
        for l in &self.legs {
            let lo = a.max(t0);
            let hi = b.min(t0 + l.length);
            if lo <= hi {
                let dir = cis(l.angle);
                let s = ((p - start) * dir.conj()).re.clamp(lo - t0, hi - t0);
                best = best.min((start + dir * s - p).norm());
            }
            start += cis(l.angle) * l.length;
            t0 += l.length;
        }
        best
    }

    /// Distance from the whole path to `p`.
    pub fn distance(&self, p: Complex64) -> f64 {
        self.distance_on(0.0, self.length(), p)
    }

    /// Continuous argument of `ζ(t) - base` at increasing parameters `ts`,
    /// starting from the first leg's angle.
    pub fn continuous_args(&self, ts: &[f64]) -> Vec<f64> {
        let mut prev = self.first_angle();
        ts.iter()
            .map(|&t| {
                let a = unwrap_angle(self.offset(t).arg(), prev);
                prev = a;
                a
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polyline_points_and_corners() {
        let p = Path::polyline(Complex64::new(0.0, 0.0), &[Complex64::new(1.0, 0.0), Complex64::new(1.0, 2.0)])
            .unwrap();
        assert_eq!(p.corners(), vec![1.0]);
        assert!((p.length() - 3.0).abs() < 1e-15);
        assert!((p.point(2.0) - Complex64::new(1.0, 1.0)).norm() < 1e-15);
        assert!((p.tangent(0.5) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((p.distance(Complex64::new(2.0, 1.0)) - 1.0).abs() < 1e-15);
        assert!(p.as_ray().is_none());
    }

    #[test]
    fn continuous_argument_crosses_the_cut() {
        let base = Complex64::new(0.0, 0.0);
        let p = Path::polyline(base, &[Complex64::new(-1.0, 0.1), Complex64::new(-1.0, -1.0)]).unwrap();
        let ts: Vec<f64> = (1..20).map(|k| k as f64 * p.length() / 20.0).collect();
        let args = p.continuous_args(&ts);
        assert!(args.last().unwrap() > &std::f64::consts::PI);
    }
}
