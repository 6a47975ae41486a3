//! Large-`z` coefficients of `e^{-αz} z^{-τ} Σ c_k z^{-k}` from samples along a ray.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::lsq;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticFit {
    /// `c_0 … c_M`.
    pub coeffs: Vec<Complex64>,
    /// Per order: spread of `c_k` over the fits that drop the zero, one and
    /// two smallest-`|z|` samples, relative to `|c_k|`, or to `1e-8 |c_0| |z_min|^k`
    /// if that is larger (a term below `1e-8 c_0` at the smallest sample).
    pub variation: Vec<f64>,
    /// Per order: the same spread in absolute terms.
    pub spread: Vec<f64>,
    /// Number of inverse powers in the least-squares model.
    pub terms: usize,
}

/// Largest relative variation tolerated before a fit is called unstable.
pub const MAX_VARIATION: f64 = 0.1;
/// Terms `c_k z^{-k}` below this fraction of `|c_0|` at the smallest sample
/// count as zero when their variation is measured.
const ZERO_COEFF: f64 = 1e-8;

/// Strip `e^{-αz} z^{-τ}` (principal power) from `Φ(z)` and fit
/// `Σ_{k<K} c_k z^{-k}` by least squares, returning `c_0 … c_M`.
///
/// `K = min(n - 3, M + 8)` for `n` samples: the extra terms absorb the
/// divergent tail so the requested orders are not biased by it.
pub fn asymptotic_fit(values: &[(Complex64, Complex64)], alpha: Complex64, tau: f64, m: usize) -> Result<AsymptoticFit> {
    let n = values.len();
    if n < 2 * m + 4 {
        return Err(Error::InvalidInput(format!("{n} samples cannot fit order {m}; need {}", 2 * m + 4)));
    }
    let mut pts: Vec<(Complex64, Complex64)> = values.to_vec();
    pts.sort_by(|a, b| a.0.norm().total_cmp(&b.0.norm()));
    let spread = pts[n - 1].0.norm() / pts[0].0.norm();
    if !(spread >= 4.0) {
        return Err(Error::InvalidInput(format!("|z| spread {spread:.2} is below 4")));
    }
    let dir = pts[n - 1].0.arg();
    if pts.iter().any(|(z, _)| (z.arg() - dir).abs() > 1e-9) {
        return Err(Error::InvalidInput("samples must lie on one ray".into()));
    }
    let terms = (n - 3).min(m + 8);
    let stripped: Vec<(Complex64, Complex64)> =
        pts.iter().map(|&(z, v)| (z, v * (alpha * z).exp() * z.powf(tau))).collect();
    let fit = |skip: usize| -> Result<Vec<Complex64>> {
        let part = &stripped[skip..];
        let rows: Vec<Vec<Complex64>> =
            part.iter().map(|(z, _)| (0..terms).map(|k| z.powi(-(k as i32))).collect()).collect();
        let y: Vec<Complex64> = part.iter().map(|p| p.1).collect();
        lsq::solve(&rows, &y).ok_or_else(|| Error::InvalidInput("least-squares fit failed".into()))
    };
    let fits = [fit(0)?, fit(1)?, fit(2)?];
    let coeffs: Vec<Complex64> = fits[0][..=m].to_vec();
    let scale = coeffs[0].norm();
    let zmin = pts[0].0.norm();
    let spread: Vec<f64> = (0..=m)
        .map(|k| {
            let lo = fits.iter().map(|f| f[k]).collect::<Vec<_>>();
            lo.iter().flat_map(|a| lo.iter().map(move |b| (a - b).norm())).fold(0.0, f64::max)
        })
        .collect();
    let variation: Vec<f64> = (0..=m)
        .map(|k| spread[k] / coeffs[k].norm().max(ZERO_COEFF * scale * zmin.powi(k as i32)))
        .collect();
    if let Some((order, &v)) = variation.iter().enumerate().find(|(_, v)| **v > MAX_VARIATION) {
        return Err(Error::UnstableFit { order, variation: v });
    }
    Ok(AsymptoticFit { coeffs, variation, spread, terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn finite_series_is_recovered() {
        let zs: Vec<Complex64> = (0..15).map(|k| c(10.0 + 5.0 * k as f64)).collect();
        let vals: Vec<(Complex64, Complex64)> =
            zs.iter().map(|&z| (z, (-z).exp() * z.powf(-0.5) * (1.0 + 3.0 / z))).collect();
        let f = asymptotic_fit(&vals, c(1.0), 0.5, 1).unwrap();
        assert!((f.coeffs[0] - c(1.0)).norm() < 1e-6);
        assert!((f.coeffs[1] - c(3.0)).norm() < 1e-6);
    }

    #[test]
    fn preconditions() {
        let vals: Vec<(Complex64, Complex64)> = (0..5).map(|k| (c(10.0 + k as f64), c(1.0))).collect();
        assert!(asymptotic_fit(&vals, c(0.0), 0.0, 1).is_err());
        let vals: Vec<(Complex64, Complex64)> = (0..12).map(|k| (c(10.0 + k as f64), c(1.0))).collect();
        assert!(asymptotic_fit(&vals, c(0.0), 0.0, 1).is_err());
    }

    #[test]
    fn noise_is_flagged() {
        // alternating noise at 1e-2 cannot support order 4
        let vals: Vec<(Complex64, Complex64)> = (0..14)
            .map(|k| {
                let z = c(10.0 * 1.2f64.powi(k));
                (z, c(1.0 + 1e-2 * if k % 2 == 0 { 1.0 } else { -1.0 }))
            })
            .collect();
        assert!(matches!(asymptotic_fit(&vals, c(0.0), 0.0, 4), Err(Error::UnstableFit { .. })));
    }
}
