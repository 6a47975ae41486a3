//! The position-side operator `𝒫̂_α = P(-ζ) + ∂^{-1}∘Q(-ζ) + ∂^{-2}∘R(∂^{-1})`.

use num_complex::Complex64;

use super::grid::RayGridFunction;
use super::ops::{integrate, integrate_n};
use crate::error::{Error, Result};
use crate::ode::{datum_near, Level1Operator};
use crate::poly::Poly;

/// `𝒫̂_α` for a level-1 operator and one of its characteristic rates.
#[derive(Debug, Clone)]
pub struct VolterraOperator {
    pub op: Level1Operator,
    pub base: Complex64,
    tau: Complex64,
    /// `p(ζ) = P(-ζ)` and `q(ζ) = Q(-ζ)`.
    p: Poly,
    q: Poly,
    /// `p(α+s)/s`.
    p_tilde: Poly,
    others: Vec<Complex64>,
}

impl VolterraOperator {
    /// `alpha` must be a root of `P(-ζ)` up to `1e-8` relative.
    pub fn new(op: Level1Operator, alpha: Complex64) -> Result<Self> {
        let datum = datum_near(&op, alpha)?;
        if (datum.alpha - alpha).norm() > 1e-8 * (1.0 + alpha.norm()) {
            return Err(Error::InvalidInput(format!("{alpha} is not a characteristic rate")));
        }
        let p = op.p_hat();
        let q = op.q_hat();
        let others = op.alphas().into_iter().filter(|a| (a - datum.alpha).norm() > 1e-8 * (1.0 + alpha.norm())).collect();
        let mut shifted = p.taylor_shift(alpha);
        shifted.coeffs[0] = Complex64::new(0.0, 0.0);
        let p_tilde = shifted.shift_down(1);
        let tau = op.q_poly().eval(-alpha) / op.p_poly().derivative().eval(-alpha);
        Ok(VolterraOperator { op, base: alpha, tau, p, q, p_tilde, others })
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    /// The other characteristic rates, where solutions are singular.
    pub fn singularities(&self) -> &[Complex64] {
        &self.others
    }

    pub fn p(&self) -> &Poly {
        &self.p
    }

    pub fn q(&self) -> &Poly {
        &self.q
    }

    pub fn p_tilde(&self) -> &Poly {
        &self.p_tilde
    }

    /// Reject grid functions whose nodes sit on another rate.
    pub(crate) fn check_grid(&self, psi: &RayGridFunction) -> Result<()> {
        if (psi.base() - self.base).norm() > 1e-12 * (1.0 + self.base.norm()) {
            return Err(Error::InvalidInput(format!("grid based at {} but operator at {}", psi.base(), self.base)));
        }
        for &b in &self.others {
            let d = psi.node_params().iter().fold(f64::INFINITY, |m, &t| m.min((psi.path.point(t) - b).norm()));
            if d <= 1e-9 * (1.0 + b.norm()) {
                return Err(Error::RayHitsRoot { point: format!("{b}"), distance: d });
            }
        }
        Ok(())
    }

    /// Multiply a grid function of exponent `σ+1` by `1/p(ζ)`, landing at `σ`.
    pub(crate) fn divide_by_p(&self, g: &RayGridFunction) -> RayGridFunction {
        g.map(g.exponent - 1.0, |t, _, h| {
            let s = g.path.offset(t);
            h * t / (s * self.p_tilde.eval(s))
        })
    }
}

/// `P(-ζ)ψ + ∂^{-1}[Q(-ζ)ψ] + Σ_j R_j ∂^{-2-j}ψ`, returned with exponent `σ+1`.
pub fn volterra_apply(v: &VolterraOperator, psi: &RayGridFunction) -> Result<RayGridFunction> {
    v.check_grid(psi)?;
    let sigma = psi.exponent;
    let mut out = psi.map(sigma + 1.0, |t, _, h| {
        let s = psi.path.offset(t);
        h * v.p_tilde.eval(s) * (s / t)
    });
    out = out.add(&integrate(&psi.map(sigma, |_, z, h| h * v.q.eval(z))))?;
    for (j, rj) in v.op.r.iter().enumerate() {
        if *rj == Complex64::new(0.0, 0.0) {
            continue;
        }
        let term = integrate_n(psi, 2 + j).lower_exponent(sigma + 1.0)?.scale(*rj);
        out = out.add(&term)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::borel_plane::{GridSpec, Ray};

    #[test]
    fn zero_maps_to_zero() {
        let v = VolterraOperator::new(Level1Operator::bessel(1.0 / 3.0), Complex64::new(1.0, 0.0)).unwrap();
        let ray = Ray::new(v.base, 0.0, 2.0).unwrap();
        let z = RayGridFunction::from_fn(ray.into(), -0.5, v.singularities(), &GridSpec::default(), |_, _| {
            Complex64::new(0.0, 0.0)
        })
        .unwrap();
        assert_eq!(volterra_apply(&v, &z).unwrap().sup_h(), 0.0);
    }

    #[test]
    fn rejects_non_roots_and_rays_through_roots() {
        assert!(VolterraOperator::new(Level1Operator::bessel(0.25), Complex64::new(0.5, 0.0)).is_err());
        let v = VolterraOperator::new(Level1Operator::bessel(0.25), Complex64::new(1.0, 0.0)).unwrap();
        assert!(matches!(
            RayGridFunction::from_fn(
                Ray::new(v.base, std::f64::consts::PI, 3.0).unwrap().into(),
                -0.5,
                v.singularities(),
                &GridSpec::default(),
                |_, _| Complex64::new(1.0, 0.0)
            ),
            Err(Error::RayHitsRoot { .. })
        ));
    }
}
