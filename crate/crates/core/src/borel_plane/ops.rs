//! Integral operators on grid functions: `∂^{-1}` along any path and the
//! Riemann–Liouville integral `∂^{-ν}` along rays.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use num_complex::Complex64;

use super::grid::{Panel, RayGridFunction};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::numerics::cheb::basis;
use crate::numerics::gamma::gamma;
use crate::numerics::quad::{gauss_jacobi, gauss_legendre};
use crate::numerics::cis;

/// Rows `m[i][j]` and end row `e[j]` such that, on a first panel `[0, L]`
/// with Chebyshev samples `h_j`,
/// `∫_0^{t_i} (t_i-s)^{ν-1} s^σ h(s) ds = t_i^{σ+ν} Σ_j m[i][j] h_j`
/// and the same with `t_i → L` gives `e`. Scale-free, so cached per `(σ, ν)`.
struct FirstPanel {
    m: Vec<Vec<f64>>,
    e: Vec<f64>,
}

type Key = (usize, u64, u64);

static FIRST: LazyLock<Mutex<HashMap<Key, Arc<FirstPanel>>>> = LazyLock::new(|| Mutex::new(HashMap::new()));

fn first_panel(n: usize, sigma: f64, nu: f64) -> Arc<FirstPanel> {
    let key = (n, sigma.to_bits(), nu.to_bits());
    if let Some(fp) = FIRST.lock().unwrap().get(&key) {
        return fp.clone();
    }
    let b = basis(n);
    let rule = gauss_jacobi(n + 8, nu - 1.0, sigma);
    // ∫_0^1 (1-u)^{ν-1} u^σ g(u) du = 2^{-ν-σ} Σ w_k g((x_k+1)/2)
    let scale = 2f64.powf(-nu - sigma);
    let row = |r: f64| -> Vec<f64> {
        let mut acc = vec![0.0; n];
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            let u = 0.5 * (x + 1.0);
            for (a, l) in acc.iter_mut().zip(b.interp_row(2.0 * r * u - 1.0)) {
                *a += scale * w * l;
            }
        }
        acc
    };
    let m = b.nodes.iter().map(|&x| row(0.5 * (x + 1.0))).collect();
    let fp = Arc::new(FirstPanel { m, e: row(1.0) });
    FIRST.lock().unwrap().insert(key, fp.clone());
    fp
}

fn dot(row: &[f64], v: &[Complex64]) -> Complex64 {
    row.iter().zip(v).map(|(r, x)| x * *r).sum()
}

/// `∂^{-1}_{ζ,α}`: the antiderivative along the path vanishing at the base,
/// with exponent `σ + 1`.
pub fn integrate(f: &RayGridFunction) -> RayGridFunction {
    let sigma = f.exponent;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut panels = Vec::with_capacity(f.panels.len());
    for p in &f.panels {
        let n = p.values.len();
        let b = basis(n);
        let ts = p.nodes();
        let dir = f.path.tangent(0.5 * (p.t0 + p.t1));
        let values: Vec<Complex64> = if p.t0 == 0.0 {
            let fp = first_panel(n, sigma, 1.0);
            let vals = fp.m.iter().map(|row| dir * dot(row, &p.values)).collect();
            acc = dir * p.t1.powf(sigma + 1.0) * dot(&fp.e, &p.values);
            vals
        } else {
            let g: Vec<Complex64> = ts.iter().zip(&p.values).map(|(t, h)| h * dir * t.powf(sigma)).collect();
            let half = 0.5 * (p.t1 - p.t0);
            let vals = ts
                .iter()
                .enumerate()
                .map(|(i, t)| (acc + dot(&b.cumint[i], &g) * half) / t.powf(sigma + 1.0))
                .collect();
            acc += dot(&b.full, &g) * half;
            vals
        };
        panels.push(Panel { t0: p.t0, t1: p.t1, values });
    }
    RayGridFunction { path: f.path.clone(), exponent: sigma + 1.0, panels, avoid: f.avoid.clone() }
}

/// `∂^{-k}` by repeated integration.
pub fn integrate_n(f: &RayGridFunction, k: usize) -> RayGridFunction {
    let mut g = f.clone();
    for _ in 0..k {
        g = integrate(&g);
    }
    g
}

const QN: usize = 24;

/// `∫_lo^hi (t-s)^{ν-1} s^σ h(s) ds` for `hi < t`, with `h` from panel `p`.
/// Subdivides geometrically toward `hi` so every piece is at least its own
/// length away from `t`; a piece touching `s = 0` takes the `s^σ` weight.
fn history(p: &Panel, lo: f64, hi: f64, t: f64, sigma: f64, nu: f64) -> Complex64 {
    let gl = gauss_legendre(QN);
    let kernel = |s: f64| (t - s).powf(nu - 1.0);
    let piece = |a: f64, b: f64| -> Complex64 {
        if a == 0.0 {
            let gj = gauss_jacobi(QN, 0.0, sigma);
            let half = 0.5 * b;
            gj.apply(0.0, b, |s| p.eval(s) * kernel(s)) * half.powf(sigma + 1.0)
        } else {
            gl.apply(a, b, |s| p.eval(s) * (kernel(s) * s.powf(sigma))) * (0.5 * (b - a))
        }
    };
    let mut total = Complex64::new(0.0, 0.0);
    let mut right = hi;
    let mut floor = lo;
    if lo == 0.0 {
        // keep the endpoint factor s^σ away from the graded pieces
        let mid = 0.5 * hi;
        if t - hi < hi {
            total += piece(0.0, mid);
            floor = mid;
        } else {
            return piece(0.0, hi);
        }
    }
    while right > floor {
        let gap = t - right;
        let left = (right - gap).max(floor);
        total += piece(left, right);
        right = left;
    }
    total
}

/// Own-panel part `∫_a^t (t-s)^{ν-1} s^σ h(s) ds` for `a > 0`.
fn own(p: &Panel, t: f64, sigma: f64, nu: f64) -> Complex64 {
    let gj = gauss_jacobi(QN, nu - 1.0, 0.0);
    let half = 0.5 * (t - p.t0);
    gj.apply(p.t0, t, |s| p.eval(s) * s.powf(sigma)) * half.powf(nu)
}

/// Riemann–Liouville integral `∂^{-ν}_{ζ,α} f` along a ray, with exponent
/// `σ + ν`. Integer `ν` uses repeated integration and works on polylines.
pub fn fractional_integral(f: &RayGridFunction, nu: f64) -> Result<RayGridFunction> {
    fractional_integral_with(f, nu, Exec::default())
}

pub fn fractional_integral_with(f: &RayGridFunction, nu: f64, exec: Exec) -> Result<RayGridFunction> {
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(Error::InvalidInput(format!("order {nu} must be positive")));
    }
    if !(f.exponent > -1.0) {
        return Err(Error::InvalidInput(format!("exponent {} must exceed -1", f.exponent)));
    }
    let k = nu.round();
    if (nu - k).abs() < 1e-14 {
        return Ok(integrate_n(f, k as usize));
    }
    if f.path.as_ray().is_none() {
        return Err(Error::RayMisconfigured("fractional order needs a straight ray".into()));
    }
    let sigma = f.exponent;
    let phase = cis(f.angle() * nu) / gamma(nu).expect("positive order");
    let panels: Vec<Panel> = exec.map(&(0..f.panels.len()).collect::<Vec<_>>(), |&pi| {
        let p = &f.panels[pi];
        let ts = p.nodes();
        let values = if p.t0 == 0.0 {
            let fp = first_panel(p.values.len(), sigma, nu);
            fp.m.iter().map(|row| phase * dot(row, &p.values)).collect()
        } else {
            ts.iter()
                .map(|&t| {
                    let mut j = own(p, t, sigma, nu);
                    for q in &f.panels[..pi] {
                        j += history(q, q.t0, q.t1, t, sigma, nu);
                    }
                    phase * j / t.powf(sigma + nu)
                })
                .collect()
        };
        Panel { t0: p.t0, t1: p.t1, values }
    });
    Ok(RayGridFunction { path: f.path.clone(), exponent: sigma + nu, panels, avoid: f.avoid.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::borel_plane::{GridSpec, Ray};
    use crate::numerics::gamma::gamma;

    fn grid(sigma: f64, theta: f64, len: f64, h: impl Fn(f64) -> Complex64) -> RayGridFunction {
        let ray = Ray::new(Complex64::new(0.5, -0.2), theta, len).unwrap();
        RayGridFunction::from_fn(ray.into(), sigma, &[], &GridSpec::default(), |t, _| h(t)).unwrap()
    }

    #[test]
    fn half_power_integrates_to_beta_closed_form() {
        let theta = 0.7;
        // ψ = ζ_α^{-1/2}/Γ(1/2): h = e^{-iθ/2}/Γ(1/2)
        let f = grid(-0.5, theta, 3.0, |_| cis(-0.5 * theta) / gamma(0.5).unwrap());
        let g = fractional_integral(&f, 1.0).unwrap();
        assert_eq!(g.exponent, 0.5);
        for t in [0.01f64, 0.5, 2.9] {
            let expect = cis(0.5 * theta) * t.powf(0.5) / gamma(1.5).unwrap();
            assert!((g.eval(t) - expect).norm() < 1e-13, "{t}: {} vs {expect}", g.eval(t));
        }
    }

    #[test]
    fn fractional_power_rule() {
        // ∂^{-ν} ζ^σ = Γ(σ+1)/Γ(σ+ν+1) ζ^{σ+ν}
        let (sigma, nu, theta) = (-0.3, 0.6, -1.1);
        let f = grid(sigma, theta, 4.0, |_| cis(sigma * theta));
        let g = fractional_integral(&f, nu).unwrap();
        let c = gamma(sigma + 1.0).unwrap() / gamma(sigma + nu + 1.0).unwrap();
        for t in [0.003f64, 0.2, 1.7, 3.99] {
            let expect = cis((sigma + nu) * theta) * t.powf(sigma + nu) * c;
            assert!((g.eval(t) - expect).norm() < 1e-12 * expect.norm(), "{t}: {} vs {expect}", g.eval(t));
        }
    }

    #[test]
    fn integration_along_a_polyline() {
        use crate::borel_plane::Path;
        let base = Complex64::new(0.0, 0.0);
        let path = Path::polyline(base, &[Complex64::new(1.0, 1.0), Complex64::new(-1.0, 2.0)]).unwrap();
        // f = cos ζ, σ = 0 -> ∫ = sin ζ
        let f = RayGridFunction::from_fn(path.clone(), 0.0, &[], &GridSpec::default(), |_, z| z.cos()).unwrap();
        let g = integrate(&f);
        for t in [0.1, 1.0, 2.5, path.length() - 1e-3] {
            assert!((g.eval(t) - path.point(t).sin()).norm() < 1e-13, "{t}");
        }
        assert!(fractional_integral(&f, 0.5).is_err());
    }
}
