//! Steepest-descent coefficients from the Morse chart `½τ² = f - f(a)`.

use num_complex::Complex64;

use super::series::{compose, derivative, mul, revert, sqrt1p};
use super::{principal, ThimbleSpec, DEGENERACY_TOL};
use crate::error::{Error, Result};
use crate::numerics::cis;
use crate::series::TransMonomial;

pub const MAX_ORDER: usize = 8;

/// `e^{-zf(a)} z^{-1/2} √(2π) Σ_{n≤N} (2n-1)!! b_{2n} z^{-n}` where
/// `g(u) du = Σ b_m τ^m dτ` in the chart that sends the `plus` half of the
/// thimble to `τ ∈ e^{iθ/2} ℝ_+`.
pub fn steepest_descent_series(spec: &ThimbleSpec, n: usize) -> Result<TransMonomial> {
    if n > MAX_ORDER {
        return Err(Error::InvalidInput(format!("order {n} exceeds {MAX_ORDER}")));
    }
    spec.validate()?;
    let phase = spec.local_phase();
    let f2 = phase.coeffs.get(2).copied().unwrap_or_default() * 2.0;
    if f2.norm() < DEGENERACY_TOL * spec.f.scale_norm() {
        return Err(Error::DegenerateChart(f2.norm()));
    }
    let len = 2 * n + 2;
    // τ(w) = w/d₁ · √(1 + E(w)) with F(w) = (f''/2) w² (1 + E(w))
    let d = principal(cis(spec.angle) * 2.0 / f2).sqrt();
    let d1 = d * cis(-spec.angle / 2.0) / 2f64.sqrt();
    let f2h = f2 * 0.5;
    let e: Vec<Complex64> = (0..len).map(|j| if j == 0 { Complex64::default() } else { phase.coeffs.get(j + 2).copied().unwrap_or_default() / f2h }).collect();
    let root = sqrt1p(&e, len);
    let mut tau = vec![Complex64::default()];
    tau.extend(root.iter().take(len - 1).map(|r| r / d1));
    let w = revert(&tau, len);
    let g = spec.nu.taylor_shift(spec.crit_point);
    let b = mul(&compose(&g.coeffs, &w, len), &derivative(&w), len);
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut dfact = 1.0;
    for j in 0..=n {
        if j > 0 {
            dfact *= (2 * j - 1) as f64;
        }
        coeffs.push(b[2 * j] * ((2.0 * std::f64::consts::PI).sqrt() * dfact * spec.sign()));
    }
    TransMonomial::new(spec.critical_value(), 0.5, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn gaussian_series_is_one_term() {
        let spec = ThimbleSpec::new(Poly::parse("u^2/2").unwrap(), Poly::from_real(&[1.0]), c(0.0), 0.4).unwrap();
        let s = steepest_descent_series(&spec, 4).unwrap();
        assert!((s.coeffs()[0] - c((2.0 * std::f64::consts::PI).sqrt())).norm() < 1e-14);
        assert!(s.coeffs()[1..].iter().all(|x| x.norm() < 1e-14));
    }

    #[test]
    fn chebyshev_cubic_ratio() {
        let spec = ThimbleSpec::new(Poly::parse("4u^3-3u").unwrap(), Poly::from_real(&[1.0]), c(0.5), 0.3).unwrap();
        let s = steepest_descent_series(&spec, 3).unwrap();
        let r = s.coeffs()[1] / s.coeffs()[0];
        assert!((r - c(5.0 / 72.0)).norm() < 1e-14, "{r}");
        let r2 = s.coeffs()[2] / s.coeffs()[0];
        assert!((r2 - c(385.0 / 10368.0)).norm() < 1e-13, "{r2}");
    }

    #[test]
    fn degenerate_and_too_deep() {
        let spec = ThimbleSpec::new(Poly::parse("u^3").unwrap(), Poly::from_real(&[1.0]), c(0.0), 0.0).unwrap();
        assert!(matches!(steepest_descent_series(&spec, 2), Err(Error::DegenerateChart(_))));
        let spec = ThimbleSpec::new(Poly::parse("u^2").unwrap(), Poly::from_real(&[1.0]), c(0.0), 0.0).unwrap();
        assert!(steepest_descent_series(&spec, 9).is_err());
    }
}
