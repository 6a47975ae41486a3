//! Dense univariate polynomials with complex coefficients.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `Σ c_k x^k`, coefficients in ascending order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Poly {
    pub coeffs: Vec<Complex64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        Poly { coeffs }
    }

    pub fn from_real(c: &[f64]) -> Self {
        Poly::new(c.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == Complex64::new(0.0, 0.0))
    }

    pub fn leading(&self) -> Complex64 {
        *self.coeffs.last().unwrap()
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::new(vec![]);
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * k as f64)
                .collect(),
        )
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 0 { *c } else { -c })
                .collect(),
        )
    }

    /// Coefficients of `p(a + s)` in powers of `s`.
    pub fn taylor_shift(&self, a: Complex64) -> Poly {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let next = c[j + 1];
                c[j] += a * next;
            }
        }
        Poly::new(c)
    }

    /// `p(s x)`.
    pub fn dilate(&self, s: Complex64) -> Poly {
        let mut pw = Complex64::new(1.0, 0.0);
        Poly::new(
            self.coeffs
                .iter()
                .map(|c| {
                    let v = c * pw;
                    pw *= s;
                    v
                })
                .collect(),
        )
    }

    pub fn scale(&self, s: Complex64) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = Complex64::new(0.0, 0.0);
        Poly::new(
            (0..n)
                .map(|k| *self.coeffs.get(k).unwrap_or(&z) + *other.coeffs.get(k).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut c = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }

    /// Divide by `x^k` assuming the low coefficients vanish (they are dropped).
    pub fn shift_down(&self, k: usize) -> Poly {
        Poly::new(self.coeffs.iter().skip(k).copied().collect())
    }

    /// Largest coefficient modulus.
    pub fn scale_norm(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.norm()))
    }

    /// All roots: companion-matrix eigenvalues followed by two Newton steps.
    pub fn roots(&self) -> Vec<Complex64> {
        let d = self.degree();
        if d == 0 {
            return vec![];
        }
        let lead = self.leading();
        if d == 1 {
            return vec![-self.coeffs[0] / lead];
        }
        let mut m = DMatrix::<Complex64>::zeros(d, d);
        for i in 1..d {
            m[(i, i - 1)] = Complex64::new(1.0, 0.0);
        }
        for i in 0..d {
            m[(i, d - 1)] = -self.coeffs[i] / lead;
        }
        let eig: Vec<Complex64> = match m.clone().schur().eigenvalues() {
            Some(v) => v.iter().copied().collect(),
            None => aberth(self),
        };
        let dp = self.derivative();
        eig.into_iter()
            .map(|mut r| {
                for _ in 0..2 {
                    let d = dp.eval(r);
                    if d.norm() > 1e-300 {
                        let step = self.eval(r) / d;
                        if step.is_finite() {
                            r -= step;
                        }
                    }
                }
                r
            })
            .collect()
    }

    /// Parse a small expression grammar: sums of monomials in a single
    /// variable with rational coefficients, e.g. `4u^3-3u`, `u^2/2`,
    /// `3/2*x^2 + x - 1/3`.
    pub fn parse(src: &str) -> Result<Poly> {
        parse::parse(src)
    }
}

/// Aberth–Ehrlich iteration, used only if the Schur form does not split.
fn aberth(p: &Poly) -> Vec<Complex64> {
    let d = p.degree();
    let dp = p.derivative();
    let r0 = (p.coeffs[0] / p.leading()).norm().powf(1.0 / d as f64).max(0.5);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(r0, 0.4 + std::f64::consts::TAU * k as f64 / d as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0_f64;
        for i in 0..d {
            let ratio = p.eval(z[i]) / dp.eval(z[i]);
            let s: Complex64 = (0..d).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm());
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

mod parse {
    use super::*;

    struct Lexer<'a> {
        s: &'a [u8],
        pos: usize,
        var: Option<u8>,
    }

    fn bad(msg: impl Into<String>) -> Error {
        Error::InvalidInput(format!("polynomial: {}", msg.into()))
    }

    impl<'a> Lexer<'a> {
        fn skip_ws(&mut self) {
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
        }
        fn peek(&mut self) -> Option<u8> {
            self.skip_ws();
            self.s.get(self.pos).copied()
        }
        fn number(&mut self) -> Result<f64> {
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.s.len() && (self.s[self.pos].is_ascii_digit() || self.s[self.pos] == b'.') {
                self.pos += 1;
            }
            std::str::from_utf8(&self.s[start..self.pos])
                .unwrap()
                .parse::<f64>()
                .map_err(|_| bad(format!("expected a number at byte {start}")))
        }
        fn integer(&mut self) -> Result<usize> {
            let x = self.number()?;
            if x.fract() != 0.0 || x > 64.0 {
                return Err(bad("exponent must be a small nonnegative integer"));
            }
            Ok(x as usize)
        }
    }

    pub(super) fn parse(src: &str) -> Result<Poly> {
        let mut lx = Lexer { s: src.as_bytes(), pos: 0, var: None };
        let mut coeffs: Vec<f64> = Vec::new();
        let mut first = true;
        loop {
            let mut sign = 1.0;
            match lx.peek() {
                None if first => return Err(bad("empty expression")),
                None => break,
                Some(b'+') => lx.pos += 1,
                Some(b'-') => {
                    sign = -1.0;
                    lx.pos += 1
                }
                Some(_) if first => {}
                Some(c) => return Err(bad(format!("unexpected '{}'", c as char))),
            }
            first = false;
            let mut coef = 1.0;
            let mut has_coef = false;
            if matches!(lx.peek(), Some(c) if c.is_ascii_digit() || c == b'.') {
                coef = lx.number()?;
                has_coef = true;
                if lx.peek() == Some(b'/') {
                    lx.pos += 1;
                    coef /= lx.number()?;
                }
                if lx.peek() == Some(b'*') {
                    lx.pos += 1;
                }
            }
            let mut power = 0;
            if let Some(c) = lx.peek() {
                if c.is_ascii_alphabetic() {
                    match lx.var {
                        None => lx.var = Some(c),
                        Some(v) if v != c => return Err(bad("more than one variable")),
                        _ => {}
                    }
                    lx.pos += 1;
                    power = 1;
                    if lx.peek() == Some(b'^') {
                        lx.pos += 1;
                        power = lx.integer()?;
                    }
                    if lx.peek() == Some(b'/') {
                        lx.pos += 1;
                        coef /= lx.number()?;
                    }
                } else if !has_coef {
                    return Err(bad(format!("unexpected '{}'", c as char)));
                }
            } else if !has_coef {
                return Err(bad("dangling sign"));
            }
            if !coef.is_finite() {
                return Err(bad("division by zero"));
            }
            if coeffs.len() <= power {
                coeffs.resize(power + 1, 0.0);
            }
            coeffs[power] += sign * coef;
        }
        Ok(Poly::from_real(&coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn parses_examples() {
        assert_eq!(Poly::parse("4u^3-3u").unwrap(), Poly::from_real(&[0.0, -3.0, 0.0, 4.0]));
        assert_eq!(Poly::parse("u^2/2").unwrap(), Poly::from_real(&[0.0, 0.0, 0.5]));
        assert_eq!(Poly::parse("u^3").unwrap(), Poly::from_real(&[0.0, 0.0, 0.0, 1.0]));
        assert_eq!(
            Poly::parse(" 3/2*x^2 + x - 1/4 ").unwrap(),
            Poly::from_real(&[-0.25, 1.0, 1.5])
        );
        assert_eq!(Poly::parse("-u + 2").unwrap(), Poly::from_real(&[2.0, -1.0]));
        assert!(Poly::parse("u^2 + v").is_err());
        assert!(Poly::parse("").is_err());
        assert!(Poly::parse("u^").is_err());
        assert!(Poly::parse("u/0").is_err());
        assert!(Poly::parse("2 3").is_err());
    }

    #[test]
    fn roots_of_quartic() {
        // x^4 - 1
        let p = Poly::from_real(&[-1.0, 0.0, 0.0, 0.0, 1.0]);
        let mut r = p.roots();
        r.sort_by(|a, b| a.arg().partial_cmp(&b.arg()).unwrap());
        let expect = [c(-1.0), Complex64::new(0.0, -1.0), c(1.0), Complex64::new(0.0, 1.0)];
        let mut e = expect.to_vec();
        e.sort_by(|a, b| a.arg().partial_cmp(&b.arg()).unwrap());
        for (a, b) in r.iter().zip(&e) {
            assert!((a - b).norm() < 1e-14, "{a} vs {b}");
        }
    }

    #[test]
    fn shift_and_reflect() {
        let p = Poly::from_real(&[1.0, 2.0, 3.0]);
        let q = p.taylor_shift(c(2.0));
        for x in [-1.0, 0.3, 2.5] {
            assert!((q.eval(c(x)) - p.eval(c(x + 2.0))).norm() < 1e-12);
            assert!((p.reflect().eval(c(x)) - p.eval(c(-x))).norm() < 1e-12);
        }
        assert_eq!(p.derivative(), Poly::from_real(&[2.0, 6.0]));
    }

    #[test]
    fn aberth_fallback_agrees() {
        let p = Poly::from_real(&[6.0, -5.0, 1.0]);
        let mut r: Vec<f64> = aberth(&p).iter().map(|z| z.re).collect();
        r.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((r[0] - 2.0).abs() < 1e-12 && (r[1] - 3.0).abs() < 1e-12);
    }
}
