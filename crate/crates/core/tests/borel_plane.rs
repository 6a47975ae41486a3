use std::f64::consts::PI;

use borel_core::borel_plane::{
    fractional_integral, picard_solve, picard_solve_path, taylor_extract, volterra_apply, GridSpec, PicardOptions,
    Ray, RayGridFunction, VolterraOperator,
};
use borel_core::numerics::cis;
use borel_core::numerics::gamma::gamma;
use borel_core::ode::{datum_near, poincare_solution, Level1Operator};
use borel_core::oracles::hyp2f1;
use borel_core::series::borel_transform;
use borel_core::Complex64;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn bessel13(alpha: f64) -> VolterraOperator {
    VolterraOperator::new(Level1Operator::bessel(1.0 / 3.0), c(alpha)).unwrap()
}

/// `(1/Γ(1/2)) ζ_α^{-1/2} ₂F₁(1/6, 5/6; 1/2; -α ζ_α/2)` on the ray at angle `θ`.
fn closed_form(alpha: f64, theta: f64, t: f64) -> Complex64 {
    let zeta = cis(theta) * t;
    let f = hyp2f1(1.0 / 6.0, 5.0 / 6.0, 0.5, -zeta * alpha / 2.0).unwrap().value;
    cis(-0.5 * theta) * t.powf(-0.5) * f / PI.sqrt()
}

#[test]
fn bessel_third_picard_matches_hypergeometric_closed_form() {
    let v = bessel13(1.0);
    let psi = picard_solve(&v, Ray::new(c(1.0), 0.0, 5.0).unwrap(), 200, 1e-14).unwrap();
    assert!((psi.exponent + 0.5).abs() < 1e-15);
    for k in 1..=50 {
        let t = 0.1 * k as f64;
        let e = closed_form(1.0, 0.0, t);
        let err = (psi.eval(t) - e).norm() / e.norm();
        assert!(err < 1e-8, "t = {t}: relative error {err:e}");
    }
}

#[test]
fn bessel_third_picard_on_the_leftward_ray() {
    let v = bessel13(-1.0);
    let psi = picard_solve(&v, Ray::new(c(-1.0), PI, 4.0).unwrap(), 200, 1e-14).unwrap();
    for t in [0.05, 0.5, 1.3, 2.0, 3.7] {
        let e = closed_form(-1.0, PI, t);
        let err = (psi.eval(t) - e).norm() / e.norm();
        assert!(err < 1e-8, "t = {t}: relative error {err:e}");
    }
}

#[test]
fn picard_on_a_tilted_ray_and_residual() {
    let v = bessel13(1.0);
    let theta = 2.2;
    let rep = picard_solve_path(&v, Ray::new(c(1.0), theta, 3.0).unwrap().into(), &PicardOptions::default()).unwrap();
    assert!(rep.residual < 1e-12, "residual {:e}", rep.residual);
    for t in [0.1, 1.0, 2.5] {
        let e = closed_form(1.0, theta, t);
        assert!((rep.psi.eval(t) - e).norm() < 1e-8 * e.norm());
    }
}

#[test]
fn closed_form_is_annihilated_by_the_volterra_operator() {
    let v = bessel13(1.0);
    let ray = Ray::new(c(1.0), 0.0, 3.0).unwrap();
    let psi = RayGridFunction::from_fn(ray.into(), -0.5, v.singularities(), &GridSpec::default(), |t, _| {
        closed_form(1.0, 0.0, t) * t.sqrt()
    })
    .unwrap();
    let res = volterra_apply(&v, &psi).unwrap();
    assert!(res.sup_psi_on(0.0, 3.0) < 1e-8, "{:e}", res.sup_psi_on(0.0, 3.0));
}

#[test]
fn cantilever_universal_solution_at_every_root() {
    let op = Level1Operator::cantilever(1.0);
    for alpha in op.alphas() {
        let v = VolterraOperator::new(op.clone(), alpha).unwrap();
        // pick a direction away from the other roots
        let theta = (alpha.arg() + 0.3).rem_euclid(2.0 * PI);
        let ray = Ray::new(alpha, theta, 3.0).unwrap();
        let path: borel_core::borel_plane::Path = ray.into();
        // (ζ⁴-1)^{-1/2} = t^{-1/2} h, with the root of g = (ζ⁴-1)/(ζ-α)
        // continued from g(α) = 4α³
        let g0 = 4.0 * alpha.powi(3);
        let psi = RayGridFunction::from_fn(path, -0.5, v.singularities(), &GridSpec::default(), |_, z| {
            let g = (z.powi(4) - 1.0) / (z - alpha);
            cis(-0.5 * theta) / (g0.sqrt() * (g / g0).sqrt())
        })
        .unwrap();
        let res = volterra_apply(&v, &psi).unwrap();
        let sup = res.sup_psi_on(0.05, 3.0);
        assert!(sup < 1e-8, "alpha = {alpha}: {sup:e}");
    }
}

#[test]
fn taylor_coefficients_match_borel_of_poincare() {
    let op = Level1Operator::bessel(1.0 / 3.0);
    let v = bessel13(1.0);
    let psi = picard_solve(&v, Ray::new(c(1.0), 0.0, 2.0).unwrap(), 200, 1e-14).unwrap();
    let taylor = taylor_extract(&psi, 4).unwrap();
    let datum = datum_near(&op, c(1.0)).unwrap();
    let formal = poincare_solution(&op, &datum, 6, c(1.0)).unwrap();
    let borel = borel_transform(&formal).unwrap();
    assert!((taylor.coeffs()[0] - c(1.0 / gamma(0.5).unwrap())).norm() < 1e-8);
    for k in 0..=4 {
        let (a, b) = (taylor.coeffs()[k], borel.series.coeffs()[k]);
        assert!((a - b).norm() < 1e-6 * b.norm(), "order {k}: {a} vs {b}");
    }
}

#[test]
fn fractional_semigroup_on_polynomials() {
    let ray = Ray::new(c(0.3), 0.9, 2.5).unwrap();
    let coeffs = [c(1.0), Complex64::new(-0.5, 0.2), c(0.25), Complex64::new(0.0, 0.1)];
    let f = RayGridFunction::from_fn(ray.into(), 0.0, &[], &GridSpec::default(), |_, z| {
        let s = z - c(0.3);
        coeffs.iter().rev().fold(c(0.0), |acc, a| acc * s + a)
    })
    .unwrap();
    let half = fractional_integral(&fractional_integral(&f, 0.5).unwrap(), 0.5).unwrap();
    let one = fractional_integral(&f, 1.0).unwrap();
    for t in [0.01, 0.4, 1.1, 2.49] {
        let s = cis(0.9) * t;
        let exact: Complex64 = coeffs.iter().enumerate().map(|(k, a)| a * s.powi(k as i32 + 1) / (k as f64 + 1.0)).sum();
        assert!((one.eval(t) - exact).norm() < 1e-12);
        assert!((half.eval(t) - exact).norm() < 1e-10, "t = {t}: {:e}", (half.eval(t) - exact).norm());
    }
}

proptest::proptest! {
    #![proptest_config(proptest::prelude::ProptestConfig::with_cases(20))]
    #[test]
    fn fractional_integrals_compose(
        br in -1.0f64..1.0, bi in -1.0f64..1.0, theta in -PI..PI, len in 1.0f64..3.0,
        c0 in -1.0f64..1.0, c1 in -1.0f64..1.0, c2 in -1.0f64..1.0,
        a in 0.2f64..1.3, b in 0.2f64..1.3,
    ) {
        let base = Complex64::new(br, bi);
        let ray = Ray::new(base, theta, len).unwrap();
        let f = RayGridFunction::from_fn(ray.into(), 0.0, &[], &GridSpec::default(), |_, z| {
            let s = z - base;
            c(c0) + s * (c(c1) + s * c(c2))
        })
        .unwrap();
        let two = fractional_integral(&fractional_integral(&f, a).unwrap(), b).unwrap();
        let one = fractional_integral(&f, a + b).unwrap();
        for k in 1..=8 {
            let t = len * k as f64 / 8.0;
            proptest::prop_assert!((two.eval(t) - one.eval(t)).norm() < 1e-10);
        }
    }
}
