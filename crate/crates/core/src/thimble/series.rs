//! Truncated power series in one variable, for the Morse chart.

use num_complex::Complex64;

pub(crate) type Series = Vec<Complex64>;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

pub(crate) fn mul(a: &[Complex64], b: &[Complex64], n: usize) -> Series {
    let mut out = vec![zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `√(1 + e)` for a series `e` without constant term.
pub(crate) fn sqrt1p(e: &[Complex64], n: usize) -> Series {
    // r² = 1 + e with r_0 = 1: r_k = (e_k - Σ_{0<j<k} r_j r_{k-j}) / 2
    let mut r = vec![zero(); n];
    r[0] = Complex64::new(1.0, 0.0);
    for k in 1..n {
        let ek = e.get(k).copied().unwrap_or_else(zero);
        let s: Complex64 = (1..k).map(|j| r[j] * r[k - j]).sum();
        r[k] = (ek - s) * 0.5;
    }
    r
}

/// `a(b(x))` for `b` without constant term.
pub(crate) fn compose(a: &[Complex64], b: &[Complex64], n: usize) -> Series {
    let mut out = vec![zero(); n];
    for c in a.iter().rev() {
        out = mul(&out, b, n);
        out[0] += c;
    }
    out
}

/// Compositional inverse of `φ` with `φ_0 = 0`, `φ_1 ≠ 0`.
pub(crate) fn revert(phi: &[Complex64], n: usize) -> Series {
    let p1 = phi[1];
    let mut w = vec![zero(); n];
    if n > 1 {
        w[1] = 1.0 / p1;
    }
    // w = (x - Σ_{j≥2} φ_j w^j)/φ_1, one more correct order per sweep
    let mut high = phi.to_vec();
    high.resize(n, zero());
    high[1] = zero();
    for _ in 0..n {
        let h = compose(&high, &w, n);
        let mut next: Series = h.iter().map(|x| -x / p1).collect();
        next[1] += 1.0 / p1;
        w = next;
    }
    w
}

pub(crate) fn derivative(a: &[Complex64]) -> Series {
    a.iter().enumerate().skip(1).map(|(k, x)| x * k as f64).collect()
}
