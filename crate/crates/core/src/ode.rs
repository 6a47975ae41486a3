//! Level-1 operators `𝒫 = P(∂) + Q(∂)/z + R(1/z)/z²`, their characteristic
//! data, and Poincaré formal solutions.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::series::{Scalar, TransMonomial};

/// `P(∂) + Q(∂)/z + R(1/z)/z²` with `R(x) = Σ R_j x^j` truncated.
#[derive(Debug, Clone, PartialEq)]
pub struct Level1Operator<C = Complex64> {
    /// Ascending coefficients of the monic `P`.
    pub p: Vec<C>,
    /// Ascending coefficients of `Q`, degree below `deg P`.
    pub q: Vec<C>,
    /// `R_0, R_1, …`.
    pub r: Vec<C>,
}

fn eval<C: Scalar>(coeffs: &[C], x: &C) -> C {
    coeffs.iter().rev().fold(C::zero(), |acc, c| acc * x.clone() + c.clone())
}

fn derivative<C: Scalar>(coeffs: &[C]) -> Vec<C> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.clone() * C::from_int(k as i64))
        .collect()
}

impl<C: Scalar> Level1Operator<C> {
    pub fn new(p: Vec<C>, q: Vec<C>, r: Vec<C>) -> Result<Self> {
        if p.len() < 2 {
            return Err(Error::InvalidInput("P must have degree at least 1".into()));
        }
        if *p.last().unwrap() != C::one() {
            return Err(Error::InvalidInput("P must be monic".into()));
        }
        let mut q = q;
        while q.len() > 1 && q.last() == Some(&C::zero()) {
            q.pop();
        }
        if q.len() >= p.len() {
            return Err(Error::InvalidInput("deg Q must be below deg P".into()));
        }
        Ok(Level1Operator { p, q, r })
    }

    pub fn degree(&self) -> usize {
        self.p.len() - 1
    }

    /// Residual coefficients `e_0, …, e_{len-1}` of `𝒫` applied term by term to
    /// `e^{-αz} z^{-τ} Σ c_k z^{-k}`, in the basis `e^{-αz} z^{-τ-k}`.
    pub fn apply_formal(&self, alpha: &C, tau: &C, c: &[C], len: usize) -> Vec<C> {
        let pad = |v: &[C]| {
            let mut w: Vec<C> = v.iter().take(len).cloned().collect();
            w.resize(len, C::zero());
            w
        };
        let c = pad(c);
        // ∂ acting on e^{-αz} z^{-τ-k}: -α b_k - (τ+k) b_{k+1}
        let d = |v: &[C]| -> Vec<C> {
            (0..len)
                .map(|k| {
                    let mut x = -(alpha.clone() * v[k].clone());
                    if k >= 1 {
                        x = x - (tau.clone() + C::from_int(k as i64 - 1)) * v[k - 1].clone();
                    }
                    x
                })
                .collect()
        };
        let horner = |coeffs: &[C]| -> Vec<C> {
            let mut acc = vec![C::zero(); len];
            for a in coeffs.iter().rev() {
                acc = d(&acc);
                for k in 0..len {
                    acc[k] = acc[k].clone() + a.clone() * c[k].clone();
                }
            }
            acc
        };
        let mut e = horner(&self.p);
        let qd = horner(&self.q);
        for k in 1..len {
            e[k] = e[k].clone() + qd[k - 1].clone();
        }
        for (j, rj) in self.r.iter().enumerate() {
            let s = j + 2;
            for k in s..len {
                e[k] = e[k].clone() + rj.clone() * c[k - s].clone();
            }
        }
        e
    }

    /// Poincaré coefficients `c_0 = c0, c_1, …, c_n` by forward substitution
    /// in the lower-triangular system `e_{k+1} = 0`.
    pub fn poincare_coeffs(&self, alpha: &C, tau: &C, n: usize, c0: C) -> Result<Vec<C>> {
        if c0 == C::zero() {
            return Err(Error::InvalidInput("c0 must be nonzero".into()));
        }
        let minus_alpha = -alpha.clone();
        let dp = eval(&derivative(&self.p), &minus_alpha);
        let q_at = eval(&self.q, &minus_alpha);
        let mut c = vec![c0];
        for k in 1..=n {
            let diag = q_at.clone() - (tau.clone() + C::from_int(k as i64)) * dp.clone();
            if diag == C::zero() || diag.modulus() < 1e-300 {
                return Err(Error::Resonance { order: k });
            }
            c.push(C::zero());
            let e = self.apply_formal(alpha, tau, &c, k + 2);
            c[k] = -(e[k + 1].clone() / diag);
        }
        Ok(c)
    }

    /// `τ = Q(-α)/P'(-α)` in the operator's scalar type.
    pub fn tau_at(&self, alpha: &C) -> Result<C> {
        let m = -alpha.clone();
        let dp = eval(&derivative(&self.p), &m);
        if dp == C::zero() {
            return Err(Error::NonSimpleRoots { separation: 0.0 });
        }
        Ok(eval(&self.q, &m) / dp)
    }

    pub fn is_root(&self, alpha: &C) -> bool {
        eval(&self.p, &(-alpha.clone())) == C::zero()
    }
}

impl Level1Operator<Complex64> {
    pub fn from_real(p: &[f64], q: &[f64], r: &[f64]) -> Result<Self> {
        let c = |v: &[f64]| v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Level1Operator::new(c(p), c(q), c(r))
    }

    /// Modified Bessel form `∂² - 1 + ∂/z - μ²/z²`.
    pub fn bessel(mu: f64) -> Self {
        Level1Operator::from_real(&[-1.0, 0.0, 1.0], &[0.0, 1.0], &[-mu * mu]).unwrap()
    }

    /// Triangular cantilever `∂⁴ - ω² + 2∂³/z`.
    pub fn cantilever(omega: f64) -> Self {
        Level1Operator::from_real(&[-omega * omega, 0.0, 0.0, 0.0, 1.0], &[0.0, 0.0, 0.0, 2.0], &[]).unwrap()
    }

    pub fn p_poly(&self) -> Poly {
        Poly::new(self.p.clone())
    }

    pub fn q_poly(&self) -> Poly {
        Poly::new(self.q.clone())
    }

    /// `p(ζ) = P(-ζ)`.
    pub fn p_hat(&self) -> Poly {
        self.p_poly().reflect()
    }

    /// `q(ζ) = Q(-ζ)`.
    pub fn q_hat(&self) -> Poly {
        self.q_poly().reflect()
    }

    /// Roots of `P(-ζ)`, i.e. all characteristic rates `α`.
    pub fn alphas(&self) -> Vec<Complex64> {
        self.p_poly().roots().into_iter().map(|x| -x).collect()
    }

    /// Apply `𝒫` to the truncated trans-monomial; returns `e_0 .. e_{N+1}`.
    pub fn formal_residual(&self, t: &TransMonomial) -> Vec<Complex64> {
        let tau = Complex64::new(t.tau, 0.0);
        self.apply_formal(&t.alpha, &tau, t.coeffs(), t.coeffs().len() + 1)
    }
}

impl Level1Operator<BigRational> {
    /// Exact Bessel operator with `μ = m/n`.
    pub fn bessel_exact(m: i64, n: i64) -> Self {
        let qr = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
        Level1Operator::new(
            vec![qr(-1, 1), qr(0, 1), qr(1, 1)],
            vec![qr(0, 1), qr(1, 1)],
            vec![-(qr(m, n) * qr(m, n))],
        )
        .unwrap()
    }
}

/// A characteristic rate with its shift and forbidden ray directions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacteristicDatum {
    pub alpha: Complex64,
    /// `Q(-α)/P'(-α)`; real for every operator in the examples.
    pub tau: Complex64,
    /// Directions `θ ∈ (-π, π]` in which the ray from `α` meets another root.
    pub forbidden_directions: Vec<f64>,
}

impl CharacteristicDatum {
    /// Real `τ`, or `ComplexTau` when the imaginary part is not negligible.
    pub fn tau_real(&self) -> Result<f64> {
        if self.tau.im.abs() > 1e-10 * (1.0 + self.tau.re.abs()) {
            return Err(Error::ComplexTau { re: self.tau.re, im: self.tau.im });
        }
        Ok(self.tau.re)
    }

    /// Whether the ray at angle `theta` passes within `tol` radians of a
    /// forbidden direction.
    pub fn is_forbidden(&self, theta: f64, tol: f64) -> bool {
        self.forbidden_directions.iter().any(|&f| {
            let d = crate::numerics::unwrap_angle(theta, f) - f;
            d.abs() < tol
        })
    }
}

/// All characteristic data of `op`, ordered by `(Re α, Im α)` descending.
pub fn characteristic_roots(op: &Level1Operator) -> Result<Vec<CharacteristicDatum>> {
    let mut alphas = op.alphas();
    alphas.sort_by(|a, b| b.re.partial_cmp(&a.re).unwrap().then(b.im.partial_cmp(&a.im).unwrap()));
    let scale = alphas.iter().fold(1.0_f64, |m, a| m.max(a.norm()));
    let mut min_sep = f64::INFINITY;
    for i in 0..alphas.len() {
        for j in 0..i {
            min_sep = min_sep.min((alphas[i] - alphas[j]).norm());
        }
    }
    let q = op.q_poly();
    let dp = op.p_poly().derivative();
    // a double root shows up either as a tiny separation or, after the
    // eigenvalue split of size √ε, as a nearly vanishing P'(-α)
    let dp_min = alphas.iter().fold(f64::INFINITY, |m, a| m.min(dp.eval(-a).norm()));
    if min_sep <= 1e-8 * scale || dp_min <= 1e-6 * op.p_poly().scale_norm() {
        return Err(Error::NonSimpleRoots { separation: min_sep });
    }
    let q_scale = q.scale_norm().max(1.0);
    alphas
        .iter()
        .map(|&alpha| {
            let qa = q.eval(-alpha);
            if qa.norm() <= 1e-10 * q_scale {
                return Err(Error::DegenerateQ { root: format!("{}", -alpha) });
            }
            let forbidden = alphas
                .iter()
                .filter(|&&b| b != alpha)
                .map(|&b| (b - alpha).arg())
                .collect();
            Ok(CharacteristicDatum { alpha, tau: qa / dp.eval(-alpha), forbidden_directions: forbidden })
        })
        .collect()
}

/// The datum whose `α` is closest to `alpha`.
pub fn datum_near(op: &Level1Operator, alpha: Complex64) -> Result<CharacteristicDatum> {
    characteristic_roots(op)?
        .into_iter()
        .min_by(|a, b| (a.alpha - alpha).norm().partial_cmp(&(b.alpha - alpha).norm()).unwrap())
        .ok_or_else(|| Error::InvalidInput("operator has no roots".into()))
}

/// `e^{-αz} z^{-τ} (c0 + c_1 z^{-1} + … + c_N z^{-N})` solving `𝒫` formally.
pub fn poincare_solution(
    op: &Level1Operator,
    datum: &CharacteristicDatum,
    n: usize,
    c0: Complex64,
) -> Result<TransMonomial> {
    if n < 1 {
        return Err(Error::InvalidInput("order N must be at least 1".into()));
    }
    let tau = datum.tau_real()?;
    let mut trunc = op.clone();
    trunc.r.truncate(n);
    let c = trunc.poincare_coeffs(&datum.alpha, &datum.tau, n, c0)?;
    TransMonomial::new(datum.alpha, tau, c)
}

/// Exact Poincaré coefficients for a rational operator and rational root.
/// Returns `(τ, [c_0, …, c_N])`.
pub fn poincare_exact(
    op: &Level1Operator<BigRational>,
    alpha: &BigRational,
    n: usize,
    c0: BigRational,
) -> Result<(BigRational, Vec<BigRational>)> {
    if !op.is_root(alpha) {
        return Err(Error::InvalidInput("alpha is not a root of P(-ζ)".into()));
    }
    let tau = op.tau_at(alpha)?;
    let c = op.poincare_coeffs(alpha, &tau, n, c0)?;
    Ok((tau, c))
}
