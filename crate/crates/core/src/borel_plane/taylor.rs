//! Shifted Taylor coefficients of a grid function at its base.

use num_complex::Complex64;

use super::grid::RayGridFunction;
use crate::error::{Error, Result};
use crate::numerics::cheb::{basis, taylor_at_left};
use crate::numerics::cis;
use crate::series::{ShiftedSeries, Variable};

const FIT_NODES: usize = 32;
const MAX_AMPLIFICATION: f64 = 1e6;

/// `ψ = Σ_k c_k ζ_α^{k+σ}` through order `m ≤ 12`.
///
/// `h` is resampled on `[0, L]` with `L` a quarter of the distance to the
/// nearest avoided point (capped by the first leg and by 1). Its Chebyshev
/// series is cut where the coefficients reach the rounding plateau, then
/// re-expanded in powers of `t` at the left end. Rounding in the samples is
/// amplified by roughly `n^{2k}` at order `k`, which puts the floor for the
/// order-4 coefficient near `1e-6` relative.
pub fn taylor_extract(psi: &RayGridFunction, m: usize) -> Result<ShiftedSeries> {
    if m > 12 {
        return Err(Error::InvalidInput(format!("order {m} exceeds 12")));
    }
    let base = psi.base();
    let dist = psi.avoid.iter().fold(f64::INFINITY, |d, s| d.min((s - base).norm()));
    let len = psi.path.legs[0].length.min(0.25 * dist).min(1.0);
    let b = basis(FIT_NODES);
    let vals: Vec<Complex64> = b.nodes.iter().map(|x| psi.eval_h(0.5 * len * (x + 1.0))).collect();
    let mut c = b.coeffs(&vals);
    c.truncate(plateau(&c));
    let (a, amp) = taylor_at_left(&c, m);
    if amp > MAX_AMPLIFICATION {
        return Err(Error::IllConditioned { amplification: amp });
    }
    let theta = psi.angle();
    let sigma = psi.exponent;
    let coeffs = a
        .iter()
        .enumerate()
        .map(|(k, ak)| ak * (2.0 / len).powi(k as i32) * cis(-(k as f64 + sigma) * theta))
        .collect();
    ShiftedSeries::new(sigma, Variable::Position, coeffs)
}

/// Number of Chebyshev coefficients above the rounding plateau: the first
/// index from which three consecutive coefficients sit below three times the
/// median magnitude of the upper half.
fn plateau(c: &[Complex64]) -> usize {
    let n = c.len();
    let top = c.iter().fold(0.0_f64, |a, x| a.max(x.norm()));
    let mut upper: Vec<f64> = c[n / 2..].iter().map(|x| x.norm()).collect();
    upper.sort_by(|a, b| a.total_cmp(b));
    let level = (3.0 * upper[upper.len() / 2]).max(1e-16 * top);
    (0..n).find(|&j| c[j..(j + 3).min(n)].iter().all(|x| x.norm() < level)).unwrap_or(n).max(1)
}
