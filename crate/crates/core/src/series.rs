//! Fractionally shifted power series, trans-monomials, formal Borel and
//! Laplace transforms, and the Cauchy and convolution products.
//!
//! Coefficients are generic over [`Scalar`]: `Complex64` for numerics and
//! `BigRational` for exact checks. Exact mode needs integer shifts wherever a
//! Gamma value appears.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::cis;
use crate::numerics::gamma::gamma;

/// Coefficient field for series and recurrences.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_int(n: i64) -> Self;
    /// Exact conversion where possible (dyadic rationals in exact mode).
    fn from_f64(x: f64) -> Option<Self>;
    fn from_c64(z: Complex64) -> Option<Self>;
    /// `Γ(x)`; `None` at poles, or when the value is not representable.
    fn gamma_of(x: f64) -> Option<Self>;
    fn to_c64(&self) -> Complex64;
    fn modulus(&self) -> f64 {
        self.to_c64().norm()
    }
    /// True when `Γ` at non-integer points is available.
    const INEXACT: bool;
}

impl Scalar for Complex64 {
    fn from_int(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn from_f64(x: f64) -> Option<Self> {
        Some(Complex64::new(x, 0.0))
    }
    fn from_c64(z: Complex64) -> Option<Self> {
        Some(z)
    }
    fn gamma_of(x: f64) -> Option<Self> {
        gamma(x).map(|g| Complex64::new(g, 0.0))
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    const INEXACT: bool = true;
}

impl Scalar for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x)
    }
    fn from_c64(z: Complex64) -> Option<Self> {
        if z.im == 0.0 {
            BigRational::from_float(z.re)
        } else {
            None
        }
    }
    fn gamma_of(x: f64) -> Option<Self> {
        if x < 1.0 || x.fract() != 0.0 || x > 1000.0 {
            return None;
        }
        let mut f = BigInt::one();
        for k in 2..(x as i64) {
            f *= BigInt::from(k);
        }
        Some(BigRational::from_integer(f))
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    const INEXACT: bool = false;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variable {
    /// Borel plane, powers `ζ^{σ+k}`.
    Position,
    /// Original plane, powers `z^{-σ-k}`.
    Frequency,
}

/// `ζ^σ Σ c_k ζ^k` (position) or `z^{-σ} Σ c_k z^{-k}` (frequency),
/// truncated after `c_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftedSeries<C = Complex64> {
    pub shift: f64,
    pub variable: Variable,
    coeffs: Vec<C>,
}

impl<C: Scalar> ShiftedSeries<C> {
    pub fn new(shift: f64, variable: Variable, coeffs: Vec<C>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("a series needs at least one coefficient".into()));
        }
        if variable == Variable::Position && shift <= -1.0 {
            return Err(Error::InvalidInput(format!(
                "position series shift must exceed -1, got {shift}"
            )));
        }
        if !shift.is_finite() {
            return Err(Error::InvalidInput("non-finite shift".into()));
        }
        Ok(ShiftedSeries { shift, variable, coeffs })
    }

    /// Series with no known terms; only used inside [`DeltaPlusSeries`].
    fn empty(shift: f64, variable: Variable) -> Self {
        ShiftedSeries { shift, variable, coeffs: Vec::new() }
    }

    pub fn frequency(coeffs: Vec<C>) -> Self {
        ShiftedSeries::new(0.0, Variable::Frequency, coeffs).expect("nonempty frequency series")
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// `N`, the index of the last retained coefficient; `-1` when empty.
    pub fn order(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest exponent whose coefficient is known (`shift + N`).
    fn known_up_to(&self) -> f64 {
        self.shift + self.order() as f64
    }

    pub fn scale(&self, s: &C) -> Self {
        ShiftedSeries {
            shift: self.shift,
            variable: self.variable,
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    /// Multiply a position series by `(-ζ)`.
    pub fn mul_neg_zeta(&self) -> Self {
        assert_eq!(self.variable, Variable::Position);
        ShiftedSeries {
            shift: self.shift + 1.0,
            variable: Variable::Position,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn to_complex(&self) -> ShiftedSeries<Complex64> {
        ShiftedSeries {
            shift: self.shift,
            variable: self.variable,
            coeffs: self.coeffs.iter().map(|c| c.to_c64()).collect(),
        }
    }
}

impl ShiftedSeries<Complex64> {
    /// Evaluate a position series at `ζ = t e^{iθ}` with `ζ^σ = t^σ e^{iσθ}`.
    pub fn eval_position(&self, t: f64, theta: f64) -> Complex64 {
        let zeta = Complex64::from_polar(t, theta);
        let poly = self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |a, c| a * zeta + c);
        poly * t.powf(self.shift) * cis(self.shift * theta)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    shift: f64,
    variable: Variable,
    coeffs: Vec<[f64; 2]>,
}

impl Serialize for ShiftedSeries<Complex64> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesRepr {
            shift: self.shift,
            variable: self.variable,
            coeffs: self.coeffs.iter().map(|c| [c.re, c.im]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ShiftedSeries<Complex64> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = SeriesRepr::deserialize(d)?;
        ShiftedSeries::new(
            r.shift,
            r.variable,
            r.coeffs.iter().map(|c| Complex64::new(c[0], c[1])).collect(),
        )
        .map_err(serde::de::Error::custom)
    }
}

/// `e^{-αz} z^{-τ} Σ c_k z^{-k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransMonomial<C = Complex64> {
    pub alpha: Complex64,
    pub tau: f64,
    /// Frequency series with shift 0.
    pub series: ShiftedSeries<C>,
}

impl<C: Scalar> TransMonomial<C> {
    pub fn new(alpha: Complex64, tau: f64, coeffs: Vec<C>) -> Result<Self> {
        Ok(TransMonomial { alpha, tau, series: ShiftedSeries::new(0.0, Variable::Frequency, coeffs)? })
    }

    pub fn coeffs(&self) -> &[C] {
        self.series.coeffs()
    }

    pub fn order(&self) -> usize {
        self.series.coeffs.len() - 1
    }

    /// Product of trans-monomials: rates and shifts add, series multiply.
    pub fn mul(&self, other: &Self) -> Self {
        let s = cauchy_product(&self.series, &other.series).expect("frequency series");
        TransMonomial { alpha: self.alpha + other.alpha, tau: self.tau + other.tau, series: s }
    }

    /// Term-wise `∂_z`.
    pub fn derivative(&self) -> Self {
        let c = self.coeffs();
        let n = c.len();
        let tau = C::from_f64(self.tau).expect("representable tau");
        if self.alpha == Complex64::new(0.0, 0.0) {
            let out = (0..n)
                .map(|k| -(tau.clone() + C::from_int(k as i64)) * c[k].clone())
                .collect();
            return TransMonomial::new(self.alpha, self.tau + 1.0, out).unwrap();
        }
        let alpha_c = C::from_c64(self.alpha).expect("alpha not representable in this scalar");
        let out = (0..n)
            .map(|k| {
                let mut v = -(alpha_c.clone() * c[k].clone());
                if k >= 1 {
                    v = v - (tau.clone() + C::from_int(k as i64 - 1)) * c[k - 1].clone();
                }
                v
            })
            .collect();
        TransMonomial::new(self.alpha, self.tau, out).unwrap()
    }
}

impl TransMonomial<Complex64> {
    /// Evaluate the truncated series at `z`, with `z^{-ρ} := e^{iρθ}(z e^{iθ})^{-ρ}`
    /// (principal power) for the Laplace direction `θ`.
    pub fn eval(&self, z: Complex64, theta: f64) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for (k, c) in self.coeffs().iter().enumerate() {
            s += c * zpow_neg(z, self.tau + k as f64, theta);
        }
        (-self.alpha * z).exp() * s
    }
}

/// `z^{-ρ} := e^{iρθ} (z e^{iθ})^{-ρ}` with the principal power.
pub fn zpow_neg(z: Complex64, rho: f64, theta: f64) -> Complex64 {
    cis(rho * theta) * (z * cis(theta)).powf(-rho)
}

/// `d δ + ζ^σ Σ a_k ζ^k` in the convolution algebra; `delta_coeff = None`
/// means no δ term is present at all.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaPlusSeries<C = Complex64> {
    pub delta_coeff: Option<C>,
    /// Position series; may be empty when only the δ term is known.
    pub series: ShiftedSeries<C>,
}

impl<C: Scalar> DeltaPlusSeries<C> {
    pub fn from_series(series: ShiftedSeries<C>) -> Self {
        DeltaPlusSeries { delta_coeff: None, series }
    }

    pub fn delta(d: C, series: ShiftedSeries<C>) -> Self {
        DeltaPlusSeries { delta_coeff: Some(d), series }
    }
}

fn gamma_or_err<C: Scalar>(x: f64, term: usize) -> Result<C> {
    if x <= 0.0 && x.fract() == 0.0 {
        return Err(Error::GammaPole { term, exponent: x });
    }
    C::gamma_of(x).ok_or(if C::INEXACT {
        Error::GammaPole { term, exponent: x }
    } else {
        Error::InexactShift(x)
    })
}

/// Formal Borel transform: `e^{-αz} z^{-τ-k} ↦ ζ_α^{τ+k-1}/Γ(τ+k)`, with the
/// constant term mapped to δ.
pub fn borel_transform<C: Scalar>(t: &TransMonomial<C>) -> Result<DeltaPlusSeries<C>> {
    let c = t.coeffs();
    let mut delta = None;
    let mut start = 0;
    // a constant term occurs when τ + k = 0 for some k
    let k0 = -t.tau;
    if k0 >= 0.0 && k0.fract() == 0.0 && (k0 as usize) < c.len() {
        let k0 = k0 as usize;
        for (k, ck) in c.iter().enumerate().take(k0) {
            if *ck != C::zero() {
                return Err(Error::GammaPole { term: k, exponent: t.tau + k as f64 });
            }
        }
        delta = Some(c[k0].clone());
        start = k0 + 1;
    } else if k0 >= 0.0 && k0.fract() == 0.0 {
        // every retained term has a nonpositive integer exponent
        for (k, ck) in c.iter().enumerate() {
            if *ck != C::zero() {
                return Err(Error::GammaPole { term: k, exponent: t.tau + k as f64 });
            }
        }
    }
    let shift = t.tau + start as f64 - 1.0;
    let mut out = Vec::with_capacity(c.len() - start);
    for (k, ck) in c.iter().enumerate().skip(start) {
        let x = t.tau + k as f64;
        if x <= 0.0 && x.fract() == 0.0 {
            return Err(Error::GammaPole { term: k, exponent: x });
        }
        let g = gamma_or_err::<C>(x, k)?;
        out.push(ck.clone() / g);
    }
    if shift <= -1.0 && !out.is_empty() {
        // τ + start ≤ 0 with a non-integer τ: the position series would not be integrable
        return Err(Error::GammaPole { term: start, exponent: shift + 1.0 });
    }
    let series = if out.is_empty() {
        ShiftedSeries::empty(shift.max(0.0), Variable::Position)
    } else {
        ShiftedSeries { shift, variable: Variable::Position, coeffs: out }
    };
    Ok(DeltaPlusSeries { delta_coeff: delta, series })
}

/// Formal Laplace transform based at `base`: `ζ_α^{σ+k} ↦ Γ(σ+k+1) e^{-αz} z^{-σ-k-1}`.
pub fn formal_laplace<C: Scalar>(s: &ShiftedSeries<C>, base: Complex64) -> Result<TransMonomial<C>> {
    if s.variable != Variable::Position {
        return Err(Error::InvalidInput("formal_laplace expects a position series".into()));
    }
    if s.shift <= -1.0 {
        return Err(Error::InvalidInput(format!("shift {} must exceed -1", s.shift)));
    }
    let mut out = Vec::with_capacity(s.coeffs.len());
    for (k, c) in s.coeffs.iter().enumerate() {
        out.push(c.clone() * gamma_or_err::<C>(s.shift + k as f64 + 1.0, k)?);
    }
    TransMonomial::new(base, s.shift + 1.0, out)
}

/// Formal Laplace transform of `d δ + series`; δ maps to the constant 1, which
/// requires `series.shift + 1` to be a positive integer.
pub fn formal_laplace_delta<C: Scalar>(s: &DeltaPlusSeries<C>, base: Complex64) -> Result<TransMonomial<C>> {
    let Some(d) = &s.delta_coeff else {
        return formal_laplace(&s.series, base);
    };
    let lead = s.series.shift + 1.0;
    if lead < 1.0 || lead.fract() != 0.0 {
        return Err(Error::IncompatibleShifts(0.0, lead));
    }
    let gap = lead as usize;
    let mut out = vec![C::zero(); gap + s.series.coeffs.len()];
    out[0] = d.clone();
    for (k, c) in s.series.coeffs.iter().enumerate() {
        out[gap + k] = c.clone() * gamma_or_err::<C>(lead + k as f64, k)?;
    }
    if s.series.is_empty() {
        out.truncate(1);
    }
    TransMonomial::new(base, 0.0, out)
}

/// Cauchy product; shifts add and the order is `min(N_a, N_b)`.
pub fn cauchy_product<C: Scalar>(a: &ShiftedSeries<C>, b: &ShiftedSeries<C>) -> Result<ShiftedSeries<C>> {
    if a.variable != b.variable {
        return Err(Error::InvalidInput("cauchy_product needs matching variable tags".into()));
    }
    let n = a.coeffs.len().min(b.coeffs.len());
    let coeffs = (0..n)
        .map(|k| {
            (0..=k).fold(C::zero(), |acc, j| acc + a.coeffs[j].clone() * b.coeffs[k - j].clone())
        })
        .collect();
    Ok(ShiftedSeries { shift: a.shift + b.shift, variable: a.variable, coeffs })
}

struct Piece<C> {
    shift: f64,
    coeffs: Vec<C>,
    known_up_to: f64,
}

/// Convolution product on `ℂδ ⊕ ζ^σ ℂ[[ζ]]`: bilinear extension of
/// `ζ^a/Γ(a+1) ∗ ζ^b/Γ(b+1) = ζ^{a+b+1}/Γ(a+b+2)` with δ as the unit.
/// Both operands must live in the same translated coordinate.
pub fn convolution_product<C: Scalar>(
    a: &DeltaPlusSeries<C>,
    b: &DeltaPlusSeries<C>,
) -> Result<DeltaPlusSeries<C>> {
    let (sa, sb) = (&a.series, &b.series);
    let mut pieces: Vec<Piece<C>> = Vec::new();
    if let Some(d) = &a.delta_coeff {
        pieces.push(Piece { shift: sb.shift, coeffs: sb.scale(d).coeffs, known_up_to: sb.known_up_to() });
    }
    if let Some(d) = &b.delta_coeff {
        pieces.push(Piece { shift: sa.shift, coeffs: sa.scale(d).coeffs, known_up_to: sa.known_up_to() });
    }
    // series ∗ series
    let shift = sa.shift + sb.shift + 1.0;
    let n = sa.coeffs.len().min(sb.coeffs.len());
    let mut conv = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = C::zero();
        for j in 0..=k {
            let (x, y) = (sa.shift + j as f64, sb.shift + (k - j) as f64);
            let w = gamma_or_err::<C>(x + 1.0, j)? * gamma_or_err::<C>(y + 1.0, k - j)?
                / gamma_or_err::<C>(x + y + 2.0, k)?;
            acc = acc + sa.coeffs[j].clone() * sb.coeffs[k - j].clone() * w;
        }
        conv.push(acc);
    }
    pieces.push(Piece { shift, coeffs: conv, known_up_to: shift + n as f64 - 1.0 });

    let delta = match (&a.delta_coeff, &b.delta_coeff) {
        (Some(x), Some(y)) => Some(x.clone() * y.clone()),
        _ => None,
    };
    let base = pieces.iter().map(|p| p.shift).fold(f64::INFINITY, f64::min);
    let limit = pieces.iter().map(|p| p.known_up_to).fold(f64::INFINITY, f64::min);
    for p in &pieces {
        let off = p.shift - base;
        if (off - off.round()).abs() > 1e-12 {
            return Err(Error::IncompatibleShifts(base, p.shift));
        }
    }
    let len = ((limit - base + 1e-9).floor() + 1.0).max(0.0) as usize;
    let mut coeffs = vec![C::zero(); len];
    for p in pieces {
        let off = (p.shift - base).round() as usize;
        for (k, c) in p.coeffs.into_iter().enumerate() {
            if off + k < len {
                coeffs[off + k] = coeffs[off + k].clone() + c;
            }
        }
    }
    Ok(DeltaPlusSeries {
        delta_coeff: delta,
        series: ShiftedSeries { shift: base, variable: Variable::Position, coeffs },
    })
}

/// Estimate the Borel-plane radius of convergence from the growth of
/// `|c_n / n!|` over the top half of the available orders.
///
/// Fits `ln|c_n/n!| ≈ a - n ln R + b ln n`; returns infinity when the
/// coefficients decay faster than any geometric rate.
pub fn gevrey_radius_estimate(s: &ShiftedSeries<Complex64>) -> Result<f64> {
    let n = s.coeffs.len() - 1;
    if n < 4 {
        return Err(Error::InvalidInput("gevrey_radius_estimate needs N >= 4".into()));
    }
    let lo = n / 2;
    let mut pts = Vec::new();
    for k in lo.max(1)..=n {
        let c = s.coeffs[k].norm();
        if c > 0.0 {
            let l = c.ln() - crate::numerics::gamma::ln_gamma(k as f64 + 1.0);
            if l.is_finite() && l > -700.0 {
                pts.push((k as f64, l));
            }
        }
    }
    if pts.len() < 3 {
        return Ok(f64::INFINITY);
    }
    // super-factorial decay: the root test sequence keeps growing like n
    let r = |p: &(f64, f64)| (-p.1 / p.0).exp();
    let (first, last) = (r(&pts[0]), r(pts.last().unwrap()));
    if last > 1.5 * first && last > 1.0 {
        return Ok(f64::INFINITY);
    }
    let rows: Vec<Vec<f64>> = pts.iter().map(|&(k, _)| vec![1.0, k, k.ln()]).collect();
    let y: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let x = crate::numerics::lsq::solve_real(&rows, &y)
        .ok_or_else(|| Error::InvalidInput("degenerate fit".into()))?;
    Ok((-x[1]).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }
    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn borel_of_inverse_z_is_one() {
        let t = TransMonomial::new(c(0.0), 1.0, vec![q(1, 1)]).unwrap();
        let b = borel_transform(&t).unwrap();
        assert_eq!(b.delta_coeff, None);
        assert_eq!(b.series.shift, 0.0);
        assert_eq!(b.series.coeffs(), &[q(1, 1)]);
        assert_eq!(formal_laplace(&b.series, c(0.0)).unwrap(), t);
    }

    #[test]
    fn borel_of_fractional_power() {
        let t = TransMonomial::new(c(0.0), 1.5, vec![c(1.0)]).unwrap();
        let b = borel_transform(&t).unwrap();
        assert_eq!(b.series.shift, 0.5);
        assert_relative_eq!(b.series.coeffs()[0].re, 1.0 / gamma(1.5).unwrap(), max_relative = 1e-15);
    }

    #[test]
    fn borel_of_bessel_leading_terms() {
        let t = TransMonomial::new(c(1.0), 0.5, vec![c(1.0), c(-5.0 / 72.0)]).unwrap();
        let b = borel_transform(&t).unwrap();
        assert_eq!(b.series.shift, -0.5);
        let g = b.series.coeffs();
        assert_relative_eq!(g[0].re, 1.0 / gamma(0.5).unwrap(), max_relative = 1e-15);
        assert_relative_eq!(g[1].re, -5.0 / 72.0 / gamma(1.5).unwrap(), max_relative = 1e-15);
    }

    #[test]
    fn constant_goes_to_delta_and_back() {
        let t = TransMonomial::new(c(0.0), 0.0, vec![q(3, 1), q(1, 2), q(-2, 3)]).unwrap();
        let b = borel_transform(&t).unwrap();
        assert_eq!(b.delta_coeff, Some(q(3, 1)));
        assert_eq!(b.series.coeffs(), &[q(1, 2), q(-2, 3)]);
        assert_eq!(formal_laplace_delta(&b, c(0.0)).unwrap(), t);
    }

    #[test]
    fn gamma_pole_is_named() {
        let t = TransMonomial::new(c(0.0), -2.0, vec![c(1.0), c(0.0), c(1.0)]).unwrap();
        assert_eq!(borel_transform(&t).unwrap_err(), Error::GammaPole { term: 0, exponent: -2.0 });
    }

    #[test]
    fn cauchy_examples() {
        let a = ShiftedSeries::frequency(vec![q(1, 1), q(1, 1)]);
        let b = ShiftedSeries::frequency(vec![q(1, 1), q(-1, 1)]);
        let p = cauchy_product(&a, &b).unwrap();
        assert_eq!(p.coeffs(), &[q(1, 1), q(0, 1)]);
        let h = ShiftedSeries::new(0.5, Variable::Frequency, vec![c(1.0)]).unwrap();
        assert_eq!(cauchy_product(&h, &h).unwrap().shift, 1.0);
    }

    #[test]
    fn convolution_examples() {
        let pos = |shift: f64, v: Vec<BigRational>| DeltaPlusSeries::from_series(ShiftedSeries::new(shift, Variable::Position, v).unwrap());
        // ζ ∗ ζ²/2 = ζ⁴/24
        let r = convolution_product(&pos(1.0, vec![q(1, 1)]), &pos(2.0, vec![q(1, 2)])).unwrap();
        assert_eq!(r.series.shift, 4.0);
        assert_eq!(r.series.coeffs(), &[q(1, 24)]);
        // 1 ∗ 1 = ζ
        let r = convolution_product(&pos(0.0, vec![q(1, 1)]), &pos(0.0, vec![q(1, 1)])).unwrap();
        assert_eq!((r.series.shift, r.series.coeffs()), (1.0, &[q(1, 1)][..]));
        // δ ∗ s = s
        let s = pos(0.0, vec![q(2, 1), q(5, 7)]);
        let unit = DeltaPlusSeries::delta(q(1, 1), ShiftedSeries::new(0.0, Variable::Position, vec![q(0, 1); 5]).unwrap());
        let r = convolution_product(&unit, &s).unwrap();
        assert_eq!(r.series.coeffs(), s.series.coeffs());
        assert_eq!(r.delta_coeff, None);
    }

    #[test]
    fn radius_examples() {
        let fact: Vec<Complex64> = (0..=30).map(|n| c(gamma(n as f64 + 1.0).unwrap())).collect();
        let r = gevrey_radius_estimate(&ShiftedSeries::frequency(fact)).unwrap();
        assert_relative_eq!(r, 1.0, max_relative = 1e-10);
        let ones = ShiftedSeries::frequency(vec![c(1.0); 31]);
        assert!(gevrey_radius_estimate(&ones).unwrap().is_infinite());
        assert!(gevrey_radius_estimate(&ShiftedSeries::frequency(vec![c(1.0); 3])).is_err());
    }

    #[test]
    fn json_shape() {
        let s = ShiftedSeries::new(0.5, Variable::Position, vec![Complex64::new(1.0, -2.0)]).unwrap();
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v, serde_json::json!({"shift": 0.5, "variable": "position", "coeffs": [[1.0, -2.0]]}));
        let back: ShiftedSeries = serde_json::from_value(v).unwrap();
        assert_eq!(back, s);
    }
}
