//! One-dimensional thimble integrals `∫ e^{-zf} g(u) du` for polynomial `f`:
//! critical data, thimble tracing, the direct integral, the projection to
//! the Borel plane and the steepest-descent series.

pub mod descent;
pub mod integral;
pub mod series;
pub mod symmetry;
pub mod trace;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;

pub use descent::steepest_descent_series;
pub use symmetry::{symmetry_deviations, SymmetryDeviations, SymmetryParams};
pub use integral::{thimble_integral_direct, thimble_projection, ThimbleValue};
pub use trace::{trace_thimble, TracedThimble};

/// `|f''(a)|` below this multiple of the largest coefficient of `f` counts as zero.
pub const DEGENERACY_TOL: f64 = 1e-8;

/// `∫_{C_a^θ} e^{-zf} g(u) du` over the thimble through `a` in direction `θ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThimbleSpec {
    pub f: Poly,
    /// `g` in the 1-form `g(u) du`.
    pub nu: Poly,
    pub crit_point: Complex64,
    pub angle: f64,
    /// `+1` runs the thimble from the `minus` branch to the `plus` branch.
    pub orientation: i8,
}

impl ThimbleSpec {
    pub fn new(f: Poly, nu: Poly, crit_point: Complex64, angle: f64) -> Result<Self> {
        let spec = ThimbleSpec { f, nu, crit_point, angle, orientation: 1 };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.f.degree() < 2 {
            return Err(Error::InvalidInput("f must have degree at least 2".into()));
        }
        if self.orientation != 1 && self.orientation != -1 {
            return Err(Error::InvalidInput(format!("orientation {} is not ±1", self.orientation)));
        }
        if !self.angle.is_finite() {
            return Err(Error::InvalidInput("angle must be finite".into()));
        }
        let df = self.f.derivative().eval(self.crit_point);
        if df.norm() > 1e-9 * self.f.scale_norm() * (1.0 + self.crit_point.norm()).powi(self.f.degree() as i32) {
            return Err(Error::InvalidInput(format!("f'({}) = {df} is not zero", self.crit_point)));
        }
        Ok(())
    }

    pub fn critical_value(&self) -> Complex64 {
        self.f.eval(self.crit_point)
    }

    pub(crate) fn sign(&self) -> f64 {
        f64::from(self.orientation)
    }

    /// `f(a + w) - f(a)`, whose constant and linear coefficients vanish.
    pub(crate) fn local_phase(&self) -> Poly {
        let mut p = self.f.taylor_shift(self.crit_point);
        p.coeffs[0] = Complex64::new(0.0, 0.0);
        if p.coeffs.len() > 1 {
            p.coeffs[1] = Complex64::new(0.0, 0.0);
        }
        p
    }
}

/// `x` with a negative zero imaginary part made positive, so principal
/// roots of negative reals land on the upper side of the cut.
pub(crate) fn principal(x: Complex64) -> Complex64 {
    Complex64::new(x.re, x.im + 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub point: Complex64,
    pub value: Complex64,
    /// `f''` at the point.
    pub f2: Complex64,
    pub degenerate: bool,
}

/// Every root of `f'` with its critical value and `f''`. Numerically split
/// copies of a multiple root are merged.
pub fn critical_data(f: &Poly) -> Result<Vec<CriticalPoint>> {
    if f.degree() < 2 {
        return Err(Error::InvalidInput("f must have degree at least 2".into()));
    }
    let df = f.derivative();
    let d2 = df.derivative();
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for r in df.roots() {
        match clusters.iter_mut().find(|(c, n)| (*c / *n as f64 - r).norm() < 1e-6 * (1.0 + r.norm())) {
            Some((c, n)) => {
                *c += r;
                *n += 1;
            }
            None => clusters.push((r, 1)),
        }
    }
    let scale = f.scale_norm();
    Ok(clusters
        .into_iter()
        .map(|(c, n)| {
            let point = c / n as f64;
            let f2 = d2.eval(point);
            CriticalPoint { point, value: f.eval(point), f2, degenerate: n > 1 || f2.norm() < DEGENERACY_TOL * scale }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn chebyshev_cubic() {
        let mut cps = critical_data(&Poly::parse("4u^3-3u").unwrap()).unwrap();
        cps.sort_by(|a, b| a.point.re.total_cmp(&b.point.re));
        assert_eq!(cps.len(), 2);
        assert!((cps[0].point - c(-0.5)).norm() < 1e-14 && (cps[0].value - c(1.0)).norm() < 1e-14);
        assert!((cps[1].point - c(0.5)).norm() < 1e-14 && (cps[1].value - c(-1.0)).norm() < 1e-14);
        assert!(!cps[0].degenerate);
    }

    #[test]
    fn degenerate_and_gaussian() {
        let cps = critical_data(&Poly::parse("u^3").unwrap()).unwrap();
        assert_eq!(cps.len(), 1);
        assert!(cps[0].degenerate && cps[0].point.norm() < 1e-12);
        let cps = critical_data(&Poly::parse("u^2/2").unwrap()).unwrap();
        assert_eq!(cps.len(), 1);
        assert_eq!(cps[0].f2, c(1.0));
        assert!(critical_data(&Poly::parse("3u+1").unwrap()).is_err());
    }

    #[test]
    fn spec_rejects_non_critical_points() {
        let f = Poly::parse("4u^3-3u").unwrap();
        assert!(ThimbleSpec::new(f.clone(), Poly::from_real(&[1.0]), c(0.3), 0.0).is_err());
        assert!(ThimbleSpec::new(f, Poly::from_real(&[1.0]), c(0.5), 0.0).is_ok());
    }
}
