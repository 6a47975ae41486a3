//! Gauss–Jacobi and Gauss–Legendre rules on [-1, 1].
//!
//! Nodes come from the Golub–Welsch eigenproblem and are then polished by
//! Newton's method on the three-term recurrence; weights use the closed form
//! in terms of `P_n'` so they keep full relative accuracy. Rules are cached.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use nalgebra::{DMatrix, SymmetricEigen};

use super::gamma::ln_gamma;

/// Nodes and weights for `∫_{-1}^{1} (1-x)^a (1+x)^b f(x) dx`.
#[derive(Debug, Clone)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    /// Integrate `f` against the rule's weight mapped to `[lo, hi]`. The
    /// weight is not rescaled: the caller accounts for the Jacobian of the
    /// singular factors.
    pub fn apply<T, F>(&self, lo: f64, hi: f64, mut f: F) -> T
    where
        T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T> + Default,
        F: FnMut(f64) -> T,
    {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let mut acc = T::default();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + f(mid + half * x) * *w;
        }
        acc
    }
}

type Key = (usize, u64, u64);

static CACHE: LazyLock<Mutex<HashMap<Key, Arc<Rule>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// Gauss–Legendre rule with `n` nodes.
pub fn gauss_legendre(n: usize) -> Arc<Rule> {
    gauss_jacobi(n, 0.0, 0.0)
}

/// Gauss–Jacobi rule with `n` nodes for the weight `(1-x)^a (1+x)^b`.
///
/// Panics if `a` or `b` is not above -1 or `n == 0`.
pub fn gauss_jacobi(n: usize, a: f64, b: f64) -> Arc<Rule> {
    assert!(n > 0 && a > -1.0 && b > -1.0, "invalid Gauss-Jacobi parameters");
    let key = (n, a.to_bits(), b.to_bits());
    if let Some(r) = CACHE.lock().unwrap().get(&key) {
        return r.clone();
    }
    let rule = Arc::new(build(n, a, b));
    CACHE.lock().unwrap().insert(key, rule.clone());
    rule
}

/// `(P_n(x), P_{n-1}(x))` for the Jacobi family.
fn jacobi_pair(n: usize, a: f64, b: f64, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    if n == 0 {
        return (p0, 0.0);
    }
    let mut p1 = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
    for k in 2..=n {
        let k = k as f64;
        let s = 2.0 * k + a + b;
        let c1 = 2.0 * k * (k + a + b) * (s - 2.0);
        let c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
        let c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
        let p2 = (c2 * p1 - c3 * p0) / c1;
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

fn jacobi_derivative(n: usize, a: f64, b: f64, x: f64, pn: f64, pm: f64) -> f64 {
    let nf = n as f64;
    let s = 2.0 * nf + a + b;
    (nf * ((a - b) - s * x) * pn + 2.0 * (nf + a) * (nf + b) * pm) / (s * (1.0 - x * x))
}

fn build(n: usize, a: f64, b: f64) -> Rule {
    // Jacobi matrix of the monic recurrence.
    let mut m = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        let s = 2.0 * kf + a + b;
        m[(k, k)] = if k == 0 {
            (b - a) / (a + b + 2.0)
        } else {
            (b * b - a * a) / (s * (s + 2.0))
        };
        if k >= 1 {
            let num = 4.0 * kf * (kf + a) * (kf + b) * (kf + a + b);
            let den_tail = s - 1.0;
            let off = if den_tail.abs() < 1e-14 {
                // k = 1 with a + b = -1: (k+a+b)/(2k+a+b-1) -> 1
                (4.0 * kf * (kf + a) * (kf + b) / (s * s * (s + 1.0))).sqrt()
            } else {
                (num / (s * s * (s + 1.0) * den_tail)).sqrt()
            };
            m[(k, k - 1)] = off;
            m[(k - 1, k)] = off;
        }
    }
    let mut nodes: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    nodes.sort_by(|x, y| x.partial_cmp(y).unwrap());

    // Weights are ∝ 1/((1-x²) P_n'²); the constant is fixed by the zeroth
    // moment, which only needs Gamma at small arguments.
    let mu0 = ((a + b + 1.0) * std::f64::consts::LN_2 + ln_gamma(a + 1.0) + ln_gamma(b + 1.0)
        - ln_gamma(a + b + 2.0))
        .exp();
    let mut weights = Vec::with_capacity(n);
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (pn, pm) = jacobi_pair(n, a, b, *x);
            let dp = jacobi_derivative(n, a, b, *x, pn, pm);
            let step = pn / dp;
            *x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let (pn, pm) = jacobi_pair(n, a, b, *x);
        let dp = jacobi_derivative(n, a, b, *x, pn, pm);
        weights.push(1.0 / ((1.0 - *x * *x) * dp * dp));
    }
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w *= mu0 / total);
    Rule { nodes, weights }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::gamma::gamma;

    #[test]
    fn legendre_integrates_polynomials_exactly() {
        for n in [1, 2, 5, 16, 33] {
            let r = gauss_legendre(n);
            let deg = 2 * n - 1;
            let got: f64 = r.apply(-1.0, 1.0, |x: f64| x.powi(deg as i32 - 1) + 1.0);
            let exact = if (deg - 1) % 2 == 0 { 2.0 / deg as f64 } else { 0.0 } + 2.0;
            assert!((got - exact).abs() < 1e-13, "n={n}: {got} vs {exact}");
        }
    }

    #[test]
    fn large_legendre_rule_on_smooth_integrand() {
        for n in [64, 128] {
            let got: f64 = gauss_legendre(n).apply(-1.0, 1.0, |x: f64| (3.0 * x).cos());
            assert!((got - 2.0 * 3f64.sin() / 3.0).abs() < 1e-14);
        }
    }

    #[test]
    fn jacobi_moments_match_beta_function() {
        // ∫ (1-x)^a (1+x)^b x^k dx checked via the Beta function for k = 0 and
        // via the shifted moment ∫(1+x)^{b+1}(1-x)^a for k = 1.
        for &(a, b) in &[(-0.5, 0.3), (0.0, -0.5), (-2.0 / 3.0, -5.0 / 6.0), (1.5, -0.9), (-0.3, 0.7)] {
            for n in [1, 3, 7, 16, 64, 128] {
                let r = gauss_jacobi(n, a, b);
                let beta = |p: f64, q: f64| gamma(p).unwrap() * gamma(q).unwrap() / gamma(p + q).unwrap();
                let m0 = 2f64.powf(a + b + 1.0) * beta(a + 1.0, b + 1.0);
                let got0: f64 = r.weights.iter().sum();
                assert!(((got0 - m0) / m0).abs() < 1e-13, "a={a} b={b} n={n}");
                if n >= 2 {
                    let m1 = 2f64.powf(a + b + 2.0) * beta(a + 1.0, b + 2.0);
                    let got1: f64 = r.apply(-1.0, 1.0, |x: f64| 1.0 + x);
                    let tol = if n >= 64 { 2e-12 } else { 1e-13 };
                    assert!(((got1 - m1) / m1).abs() < tol, "a={a} b={b} n={n} err={}", (got1 - m1) / m1);
                }
            }
        }
    }

    #[test]
    fn odd_rules_are_not_forced_symmetric() {
        let r = gauss_jacobi(5, -0.5, 0.5);
        // third-kind Chebyshev zeros cos((2k-1)π/11); none sits at 0
        assert!(r.nodes.iter().all(|x| x.abs() > 1e-3));
        for (k, x) in r.nodes.iter().rev().enumerate() {
            let expect = ((2.0 * k as f64 + 1.0) * std::f64::consts::PI / 11.0).cos();
            assert!((x - expect).abs() < 1e-14);
        }
    }
}
