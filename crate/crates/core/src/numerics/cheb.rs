//! Chebyshev (first kind) panel machinery: nodes, barycentric interpolation,
//! coefficient transforms and cumulative integration matrices.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, LazyLock, Mutex};

use num_complex::Complex64;

/// Default number of nodes per panel.
pub const PANEL_NODES: usize = 16;

#[derive(Debug)]
pub struct ChebBasis {
    pub n: usize,
    /// Ascending nodes in (-1, 1).
    pub nodes: Vec<f64>,
    bary: Vec<f64>,
    /// `cumint[i][j] = ∫_{-1}^{x_i} ℓ_j(x) dx`.
    pub cumint: Vec<Vec<f64>>,
    /// `full[j] = ∫_{-1}^{1} ℓ_j(x) dx` (Fejér weights).
    pub full: Vec<f64>,
}

static CACHE: LazyLock<Mutex<HashMap<usize, Arc<ChebBasis>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

pub fn basis(n: usize) -> Arc<ChebBasis> {
    if let Some(b) = CACHE.lock().unwrap().get(&n) {
        return b.clone();
    }
    let b = Arc::new(ChebBasis::new(n));
    CACHE.lock().unwrap().insert(n, b.clone());
    b
}

fn angle(n: usize, j: usize) -> f64 {
    // node j (ascending) is cos(angle)
    PI * ((n - 1 - j) as f64 + 0.5) / n as f64
}

/// `T_k(x)` for all `k < m`.
fn cheb_t(m: usize, x: f64) -> Vec<f64> {
    let mut t = vec![0.0; m.max(2)];
    t[0] = 1.0;
    t[1] = x;
    for k in 2..m {
        t[k] = 2.0 * x * t[k - 1] - t[k - 2];
    }
    t.truncate(m);
    t
}

impl ChebBasis {
    fn new(n: usize) -> Self {
        assert!(n >= 2);
        let nodes: Vec<f64> = (0..n).map(|j| angle(n, j).cos()).collect();
        let bary: Vec<f64> = (0..n)
            .map(|j| {
                let th = angle(n, j);
                let sign = if (n - 1 - j).is_multiple_of(2) { 1.0 } else { -1.0 };
                sign * th.sin()
            })
            .collect();

        // Coefficient matrix: c_k = Σ_j C[k][j] f_j.
        let coef = |k: usize, j: usize| -> f64 {
            let s = 2.0 / n as f64 * (k as f64 * angle(n, j)).cos();
            if k == 0 {
                0.5 * s
            } else {
                s
            }
        };
        // Antiderivative of T_k from -1, evaluated at x.
        let anti = |k: usize, x: f64| -> f64 {
            let t = cheb_t(k + 2, x);
            let at = |m: usize, x: f64, t: &[f64]| -> f64 {
                match m {
                    0 => x,
                    1 => 0.5 * x * x,
                    _ => 0.5 * (t[m + 1] / (m as f64 + 1.0) - t[m - 1] / (m as f64 - 1.0)),
                }
            };
            let tm = cheb_t(k + 2, -1.0);
            at(k, x, &t) - at(k, -1.0, &tm)
        };
        let mut cumint = vec![vec![0.0; n]; n];
        let mut full = vec![0.0; n];
        for j in 0..n {
            for k in 0..n {
                let c = coef(k, j);
                for i in 0..n {
                    cumint[i][j] += c * anti(k, nodes[i]);
                }
                full[j] += c * anti(k, 1.0);
            }
        }
        ChebBasis { n, nodes, bary, cumint, full }
    }

    /// Barycentric interpolation at `x ∈ [-1, 1]`.
    pub fn interp(&self, values: &[Complex64], x: f64) -> Complex64 {
        let mut num = Complex64::new(0.0, 0.0);
        let mut den = 0.0;
        for ((xj, bj), vj) in self.nodes.iter().zip(&self.bary).zip(&values[..self.n]) {
            let d = x - xj;
            if d == 0.0 {
                return *vj;
            }
            let w = bj / d;
            num += vj * w;
            den += w;
        }
        num / den
    }

    /// Row of interpolation weights at `x` (so that `interp = Σ row_j f_j`).
    pub fn interp_row(&self, x: f64) -> Vec<f64> {
        let mut row = vec![0.0; self.n];
        let mut den = 0.0;
        for j in 0..self.n {
            let d = x - self.nodes[j];
            if d == 0.0 {
                row.iter_mut().for_each(|r| *r = 0.0);
                row[j] = 1.0;
                return row;
            }
            row[j] = self.bary[j] / d;
            den += row[j];
        }
        row.iter_mut().for_each(|r| *r /= den);
        row
    }

    /// Chebyshev coefficients of the interpolant.
    pub fn coeffs(&self, values: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        (0..n)
            .map(|k| {
                let mut s = Complex64::new(0.0, 0.0);
                for (j, v) in values.iter().enumerate() {
                    s += v * (k as f64 * angle(n, j)).cos();
                }
                let f = 2.0 / n as f64;
                if k == 0 {
                    s * (0.5 * f)
                } else {
                    s * f
                }
            })
            .collect()
    }
}

/// Taylor coefficients at `x = -1` of `Σ c_k T_k(x)`, i.e. `a_m` with
/// `Σ c_k T_k(-1 + y) = Σ a_m y^m`. Also returns the amplification
/// `max_m Σ_k |∂ a_m/∂ c_k|` over the requested orders.
pub fn taylor_at_left(c: &[Complex64], orders: usize) -> (Vec<Complex64>, f64) {
    let n = c.len();
    // Monomial coefficients of T_k(-1 + y) via T_{k+1} = 2x T_k - T_{k-1}
    // with x = -1 + y.
    let mut polys: Vec<Vec<f64>> = Vec::with_capacity(n);
    polys.push(vec![1.0]);
    if n > 1 {
        polys.push(vec![-1.0, 1.0]);
    }
    for k in 2..n {
        let prev = &polys[k - 1];
        let prev2 = &polys[k - 2];
        let mut p = vec![0.0; k + 1];
        for (m, &v) in prev.iter().enumerate() {
            p[m] += -2.0 * v;
            p[m + 1] += 2.0 * v;
        }
        for (m, &v) in prev2.iter().enumerate() {
            p[m] -= v;
        }
        polys.push(p);
    }
    let mut a = vec![Complex64::new(0.0, 0.0); orders + 1];
    let mut amp = 0.0_f64;
    for (m, am) in a.iter_mut().enumerate() {
        let mut row = 0.0;
        for k in 0..n {
            if let Some(&v) = polys[k].get(m) {
                *am += c[k] * v;
                row += v.abs();
            }
        }
        amp = amp.max(row);
    }
    (a, amp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn interpolation_reproduces_polynomials() {
        let b = basis(PANEL_NODES);
        let f = |x: f64| 3.0 * x.powi(15) - x.powi(7) + 0.5;
        let vals: Vec<Complex64> = b.nodes.iter().map(|&x| c(f(x))).collect();
        for &x in &[-1.0, -0.37, 0.0, 0.9, 1.0] {
            assert!((b.interp(&vals, x).re - f(x)).abs() < 1e-13);
        }
    }

    #[test]
    fn cumulative_integration_is_spectral() {
        let b = basis(PANEL_NODES);
        let vals: Vec<Complex64> = b.nodes.iter().map(|&x| c(x.exp())).collect();
        for i in 0..b.n {
            let got: f64 = (0..b.n).map(|j| b.cumint[i][j] * vals[j].re).sum();
            let exact = b.nodes[i].exp() - (-1.0f64).exp();
            assert!((got - exact).abs() < 1e-14);
        }
        let tot: f64 = (0..b.n).map(|j| b.full[j] * vals[j].re).sum();
        assert!((tot - (1f64.exp() - (-1f64).exp())).abs() < 1e-14);
    }

    #[test]
    fn taylor_conversion_at_left_end() {
        let b = basis(12);
        // f(x) = (x+1)^3 - 2(x+1) + 5  -> a = [5, -2, 0, 1]
        let vals: Vec<Complex64> = b
            .nodes
            .iter()
            .map(|&x| c((x + 1.0).powi(3) - 2.0 * (x + 1.0) + 5.0))
            .collect();
        let (a, amp) = taylor_at_left(&b.coeffs(&vals), 5);
        let expect = [5.0, -2.0, 0.0, 1.0, 0.0, 0.0];
        for (m, e) in expect.iter().enumerate() {
            assert!((a[m].re - e).abs() < 1e-8, "order {m}: {}", a[m]);
        }
        assert!(amp > 1.0);
    }
}
