//! Shared numerical kernels: Gamma function, Gauss rules, Chebyshev panels,
//! small dense least squares.

pub mod cheb;
pub mod gamma;
pub mod lsq;
pub mod quad;

use num_complex::Complex64;

pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// `e^{i x}`.
#[inline]
pub fn cis(x: f64) -> Complex64 {
    Complex64::new(x.cos(), x.sin())
}

/// Largest modulus in a slice (0 for an empty slice).
pub fn sup_norm(v: &[Complex64]) -> f64 {
    v.iter().fold(0.0_f64, |m, z| m.max(z.norm()))
}

/// Unwrap `arg` to the representative closest to `reference`.
#[inline]
pub fn unwrap_angle(arg: f64, reference: f64) -> f64 {
    let two_pi = std::f64::consts::TAU;
    arg + two_pi * ((reference - arg) / two_pi).round()
}
