//! The thimble integral by direct quadrature, and its projection `ι_a` to the
//! Borel plane.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::trace::{Branch, Lift, TracedThimble};
use super::ThimbleSpec;
use crate::borel_plane::{Panel, Path, RayGridFunction};
use crate::error::{Error, Result};
use crate::laplace::DEFAULT_TOL;
use crate::numerics::cis;
use crate::numerics::cheb::PANEL_NODES;
use crate::numerics::quad::gauss_legendre;

/// Panel width in `s = t^{1/k}` for the direct quadrature.
const S_PANEL: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThimbleValue {
    pub z: Complex64,
    pub value: Complex64,
    pub err_est: f64,
    /// Bound on the part of the thimble beyond the traced length.
    pub tail: f64,
}

fn check_traced(spec: &ThimbleSpec, traced: &TracedThimble) -> Result<()> {
    if &traced.spec != spec {
        return Err(Error::InvalidInput("traced thimble belongs to a different spec".into()));
    }
    Ok(())
}

/// `g(a+w)/F'(w)` at the last node of each branch, `plus - minus`.
fn endpoint_jump(spec: &ThimbleSpec, lift: &Lift, traced: &TracedThimble) -> Complex64 {
    let a = spec.crit_point;
    let term = |w: Complex64| spec.nu.eval(a + w) / lift.dphase.eval(w);
    term(*traced.w_plus.last().unwrap()) - term(*traced.w_minus.last().unwrap())
}

/// `∫_C e^{-zf} g(u) du` over the traced thimble.
///
/// Each half is integrated in `s = t^{1/k}`, where the integrand
/// `e^{-z(α + s^k e^{iθ})} g(u) u'(s)` is smooth, by composite Gauss–Legendre
/// with 32 nodes per panel; the 16-node result gives the error estimate.
pub fn thimble_integral_direct(spec: &ThimbleSpec, traced: &TracedThimble, z: Complex64) -> Result<ThimbleValue> {
    check_traced(spec, traced)?;
    let c = (z * cis(spec.angle)).re;
    if !(c > 0.0) {
        return Err(Error::InvalidInput(format!("Re(z e^(i theta)) <= 0 at z = {z}")));
    }
    let lift = Lift::new(spec)?;
    let k = traced.order as f64;
    let s_max = traced.t_max.powf(1.0 / k);
    let panels = (s_max / S_PANEL).ceil().max(1.0) as usize;
    let width = s_max / panels as f64;
    let rot = cis(spec.angle);
    let a = spec.crit_point;

    let run = |n: usize| -> Result<Complex64> {
        let rule = gauss_legendre(n);
        let ss: Vec<f64> = (0..panels)
            .flat_map(|p| {
                let lo = p as f64 * width;
                rule.nodes.iter().map(move |x| lo + 0.5 * width * (1.0 + x))
            })
            .collect();
        let mut total = Complex64::new(0.0, 0.0);
        for (branch, sign) in [(Branch::Plus, 1.0), (Branch::Minus, -1.0)] {
            let ws = lift.lift(branch, &ss)?;
            for (i, (s, w)) in ss.iter().zip(&ws).enumerate() {
                let weight = rule.weights[i % n] * 0.5 * width;
                let e = (-z * rot * s.powf(k)).exp();
                total += e * spec.nu.eval(a + w) * lift.velocity(*s, *w) * (sign * weight);
            }
        }
        Ok(total)
    };
    let fine = run(32)?;
    let coarse = run(16)?;
    let scale = (-z * traced.alpha).exp();
    let tail = (-c * traced.t_max).exp() * endpoint_jump(spec, &lift, traced).norm() / c;
    if tail > DEFAULT_TOL {
        return Err(Error::TailDominates { tail, tol: DEFAULT_TOL, length: traced.t_max });
    }
    let value = fine * spec.sign();
    let err = (fine - coarse).norm() + tail + 1e-15 * fine.norm();
    Ok(ThimbleValue { z, value: value * scale, err_est: err * scale.norm(), tail: tail * scale.norm() })
}

/// `ι_a(ζ(t)) = g/f'(u_+(t)) - g/f'(u_-(t))` on the ray from `f(a)`, with
/// the factor `t^{1/k - 1}` held explicitly.
pub fn thimble_projection(spec: &ThimbleSpec, traced: &TracedThimble) -> Result<RayGridFunction> {
    check_traced(spec, traced)?;
    let lift = Lift::new(spec)?;
    let k = traced.order as f64;
    let exponent = 1.0 / k - 1.0;
    let a = spec.crit_point;
    let term = |w: Complex64| spec.nu.eval(a + w) / lift.dphase.eval(w);
    let h: Vec<Complex64> = traced
        .ts
        .iter()
        .zip(traced.w_plus.iter().zip(&traced.w_minus))
        .map(|(t, (p, m))| (term(*p) - term(*m)) * (t.powf(-exponent) * spec.sign()))
        .collect();
    let panels = traced
        .breaks
        .windows(2)
        .zip(h.chunks(PANEL_NODES))
        .map(|(b, v)| Panel { t0: b[0], t1: b[1], values: v.to_vec() })
        .collect();
    Ok(RayGridFunction { path: Path::from(traced.ray()), exponent, panels, avoid: traced.avoid.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::thimble::trace_thimble;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn gaussian_integral_and_projection() {
        let theta = 0.3;
        let spec = ThimbleSpec::new(Poly::parse("u^2/2").unwrap(), Poly::from_real(&[1.0]), c(0.0), theta).unwrap();
        let tr = trace_thimble(&spec, 12.0, 1e-10).unwrap();
        let v = thimble_integral_direct(&spec, &tr, c(4.0)).unwrap();
        let e = (std::f64::consts::PI / 2.0).sqrt();
        assert!((v.value - c(e)).norm() < 1e-12, "{}", v.value);
        let iota = thimble_projection(&spec, &tr).unwrap();
        let expect = cis(-theta / 2.0) * 2f64.sqrt();
        for t in [0.01, 1.0, 7.0] {
            assert!((iota.eval_h(t) - expect).norm() < 1e-12);
        }
    }

    #[test]
    fn wrong_half_plane_and_short_trace() {
        let spec = ThimbleSpec::new(Poly::parse("u^2/2").unwrap(), Poly::from_real(&[1.0]), c(0.0), 0.0).unwrap();
        let tr = trace_thimble(&spec, 2.0, 1e-10).unwrap();
        assert!(thimble_integral_direct(&spec, &tr, c(-1.0)).is_err());
        assert!(matches!(thimble_integral_direct(&spec, &tr, c(1.0)), Err(Error::TailDominates { .. })));
    }
}
