//! Independent special-function references: `K_μ`, `₂F₁` and `Ai`.
//!
//! Nothing here calls the Borel-plane or thimble code, so agreement between
//! the two sides is a genuine check.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::cis;
use crate::numerics::gamma::gamma;
use crate::numerics::quad::{gauss_jacobi, gauss_legendre};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Series,
    Integral,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub value: Complex64,
    pub method: Method,
    pub est_error: f64,
}

/// `K_μ(z) = ∫_0^∞ e^{-z cosh t} cosh(μt) dt` by the trapezoidal rule.
///
/// The integrand is even and decays double-exponentially, so the plain
/// trapezoidal rule on `[0, T]` is already spectrally accurate; the error
/// estimate is the difference between 200 and 100 subintervals.
pub fn bessel_k(mu: f64, z: Complex64) -> Result<OracleResult> {
    if !(z.re > 0.0) || !mu.is_finite() {
        return Err(Error::DomainError(format!("K_{mu}({z}) needs Re z > 0")));
    }
    // e^{-Re z (cosh T - 1)} cosh(μT) below e^{-40}
    let mut t_max = (1.0 + 40.0 / z.re).acosh();
    while z.re * (t_max.cosh() - 1.0) - mu.abs() * t_max < 40.0 {
        t_max *= 1.1;
    }
    let trap = |n: usize| -> Complex64 {
        let h = t_max / n as f64;
        let f = |t: f64| (-(z * (t.cosh() - 1.0))).exp() * (mu * t).cosh();
        let mut s = f(0.0) * 0.5;
        for k in 1..=n {
            s += f(k as f64 * h);
        }
        s * h * (-z).exp()
    };
    let fine = trap(200);
    let coarse = trap(100);
    Ok(OracleResult {
        value: fine,
        method: Method::Integral,
        est_error: (fine - coarse).norm() + 1e-15 * fine.norm(),
    })
}

fn hyp_series(a: f64, b: f64, c: f64, x: Complex64, max_terms: usize) -> Option<(Complex64, f64)> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut biggest = 1.0_f64;
    for k in 0..max_terms {
        let kf = k as f64;
        let r = (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0));
        term *= x * r;
        sum += term;
        biggest = biggest.max(term.norm());
        if term.norm() == 0.0 {
            return Some((sum, 0.0));
        }
        // once the ratio settles below 1 the tail is geometric
        let ratio = (x * r).norm();
        if ratio < 1.0 && kf > (a.abs() + b.abs() + c.abs()) {
            let tail = term.norm() * ratio / (1.0 - ratio);
            if tail < 1e-17 * sum.norm() {
                let rounding = (k as f64).sqrt() * 2.2e-16 * biggest;
                return Some((sum, tail + rounding));
            }
        }
    }
    None
}

fn hyp_euler(a: f64, b: f64, c: f64, x: Complex64) -> Option<(Complex64, f64)> {
    // symmetric in a, b: pick the order with c > b > 0
    let (a, b) = if c > b && b > 0.0 {
        (a, b)
    } else if c > a && a > 0.0 {
        (b, a)
    } else {
        return None;
    };
    let pref = gamma(c)? / (gamma(b)? * gamma(c - b)?);
    let run = |n: usize| -> Complex64 {
        // ∫_0^1 t^{b-1}(1-t)^{c-b-1} g(t) dt with t = (1+u)/2
        let rule = gauss_jacobi(n, c - b - 1.0, b - 1.0);
        let g = |t: f64| (Complex64::new(1.0, 0.0) - x * t).powf(-a);
        rule.apply(0.0, 1.0, g) * 2f64.powf(1.0 - c)
    };
    let fine = run(192) * pref;
    let coarse = run(96) * pref;
    Some((fine, (fine - coarse).norm() + 1e-15 * fine.norm()))
}

/// Gauss hypergeometric `₂F₁(a, b; c; x)` for `x` off `[1, ∞)`.
///
/// Inside `|x| ≤ 0.8` the series is summed directly; where the Pfaff image
/// `x/(x-1)` is that small the series runs on it instead; otherwise Euler's
/// integral is used when `c > b > 0` (or `c > a > 0`).
pub fn hyp2f1(a: f64, b: f64, c: f64, x: Complex64) -> Result<OracleResult> {
    if c <= 0.0 && c.fract() == 0.0 {
        return Err(Error::ParameterUnsupported(format!("c = {c} is a nonpositive integer")));
    }
    if x.im == 0.0 && x.re >= 1.0 {
        return Err(Error::DomainError(format!("x = {x} lies on the branch cut [1, ∞)")));
    }
    let one = Complex64::new(1.0, 0.0);
    let w = x / (x - one);
    let pfaff = |(v, e): (Complex64, f64)| {
        let f = (one - x).powf(-a);
        (v * f, e * f.norm())
    };
    let found = if x.norm() <= 0.8 {
        hyp_series(a, b, c, x, 5000).map(|r| (r, Method::Series))
    } else if w.norm() <= 0.8 {
        hyp_series(a, c - b, c, w, 5000).map(|r| (pfaff(r), Method::Series))
    } else if let Some(r) = hyp_euler(a, b, c, x) {
        Some((r, Method::Integral))
    } else if x.norm() < 1.0 {
        hyp_series(a, b, c, x, 200_000).map(|r| (r, Method::Series))
    } else if w.norm() < 1.0 {
        hyp_series(a, c - b, c, w, 200_000).map(|r| (pfaff(r), Method::Series))
    } else {
        None
    };
    match found {
        Some(((value, est_error), method)) => Ok(OracleResult { value, method, est_error }),
        None => Err(Error::ParameterUnsupported(format!("no convergent route for 2F1({a},{b};{c};{x})"))),
    }
}

/// `Ai(y) = (1/2πi) ∫ exp(t³/3 - y t) dt` along the rays leaving the saddle
/// `√y` at `±60°`. By conjugate symmetry
/// `Ai(y) = e^{-2y^{3/2}/3}/π · Im[e^{iπ/3} ∫_0^∞ e^{g(s)} ds]`
/// with `g(s) = √y s² e^{2iπ/3} - s³/3`.
pub fn airy_ai(y: f64) -> Result<OracleResult> {
    if !(0.5..=10.0).contains(&y) {
        return Err(Error::DomainError(format!("Ai({y}) outside [0.5, 10]")));
    }
    let t0 = y.sqrt();
    let rot = cis(2.0 * std::f64::consts::PI / 3.0);
    let g = |s: f64| (rot * (t0 * s * s) - s * s * s / 3.0).exp();
    // Re g ≤ -t0 s²/2 - s³/3; stop where it is below -45
    let mut s_max = 1.0;
    while 0.5 * t0 * s_max * s_max + s_max.powi(3) / 3.0 < 45.0 {
        s_max += 0.25;
    }
    let panels = 24;
    let run = |n: usize| -> Complex64 {
        let rule = gauss_legendre(n);
        let w = s_max / panels as f64;
        (0..panels)
            .map(|k| {
                let lo = k as f64 * w;
                rule.apply(lo, lo + w, g) * (0.5 * w)
            })
            .sum()
    };
    let scale = (-2.0 / 3.0 * y.powf(1.5)).exp() / std::f64::consts::PI;
    let fine = (cis(std::f64::consts::FRAC_PI_3) * run(32)).im * scale;
    let coarse = (cis(std::f64::consts::FRAC_PI_3) * run(16)).im * scale;
    Ok(OracleResult {
        value: Complex64::new(fine, 0.0),
        method: Method::Integral,
        est_error: (fine - coarse).abs() + 1e-16 * fine.abs(),
    })
}
