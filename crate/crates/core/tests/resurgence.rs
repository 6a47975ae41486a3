use std::f64::consts::PI;

use borel_core::borel_plane::*;
use borel_core::laplace::*;
use borel_core::ode::Level1Operator;
use borel_core::oracles::bessel_k;
use borel_core::resurgence::*;
use borel_core::{Complex64, Error, Exec};

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn samples() -> Vec<Complex64> {
    (0..16).map(|k| c(10.0 * 8f64.powf(k as f64 / 15.0))).collect()
}

#[test]
fn fit_of_the_bessel_oracle() {
    let vals: Vec<(Complex64, Complex64)> =
        samples().into_iter().map(|z| (z, bessel_k(1.0 / 3.0, z).unwrap().value)).collect();
    let f = asymptotic_fit(&vals, c(1.0), 0.5, 3).unwrap();
    let c0 = (PI / 2.0).sqrt();
    // (1/6)_k (5/6)_k / k! / (-2)^k
    let expect = [1.0, -5.0 / 72.0, 385.0 / 10368.0, -85085.0 / 2239488.0];
    for (k, e) in expect.iter().enumerate() {
        let got = f.coeffs[k] / c0;
        assert!((got - c(*e)).norm() < 1e-4 * e.abs(), "order {k}: {got} vs {e}");
    }
}

#[test]
fn fit_of_the_picard_borel_sum() {
    let v = VolterraOperator::new(Level1Operator::bessel(1.0 / 3.0), c(1.0)).unwrap();
    let zs = samples();
    let solve = |len: f64| picard_solve(&v, Ray::new(c(1.0), 0.0, len).unwrap(), 200, 1e-14);
    let (vals, _) = laplace_extending(solve, 4.0, &zs, Tilt::Attached, 1e-13, Exec::Parallel).unwrap();
    let pairs: Vec<(Complex64, Complex64)> = vals.iter().map(|v| (v.z, v.value)).collect();
    let f = asymptotic_fit(&pairs, c(1.0), 0.5, 3).unwrap();
    let ratio = f.coeffs[1] / f.coeffs[0];
    assert!((ratio - c(-5.0 / 72.0)).norm() < 1e-4, "{ratio}");
    assert!((f.coeffs[0] - c(1.0)).norm() < 1e-6, "{}", f.coeffs[0]);
}

fn measure(mu: f64, alpha: f64, theta: f64, eps: f64) -> StokesMeasurement {
    let op = Level1Operator::bessel(mu);
    stokes_constant(&op, c(alpha), c(-alpha), theta, eps, Exec::Parallel).unwrap()
}

#[test]
fn stokes_constants_of_airy_lucas() {
    for mu in [1.0 / 3.0, 0.25, 0.4] {
        let expect = 2.0 * (mu * PI).cos();
        let s = measure(mu, 1.0, PI, DEFAULT_EPS);
        assert!((s.normalized - c(expect)).norm() < 1e-4 * expect, "mu = {mu}: {}", s.normalized);
        assert!(s.dispersion < 1e-5);
        let t = measure(mu, -1.0, 0.0, DEFAULT_EPS);
        assert!((t.normalized + s.normalized).norm() < 1e-4 * expect, "antisymmetry at mu = {mu}");
    }
    let s = measure(0.5, 1.0, PI, DEFAULT_EPS);
    assert!(s.normalized.norm() < 1e-5);
}

#[test]
fn stokes_constant_is_independent_of_eps() {
    let a = measure(1.0 / 3.0, 1.0, PI, DEFAULT_EPS);
    let b = measure(1.0 / 3.0, 1.0, PI, DEFAULT_EPS / 2.0);
    let tol = 3.0 * (a.dispersion + b.dispersion).max(1e-12);
    assert!((a.normalized - b.normalized).norm() < tol * a.normalized.norm());
}

#[test]
fn stokes_needs_beta_on_the_cut() {
    let op = Level1Operator::bessel(1.0 / 3.0);
    let e = stokes_constant(&op, c(1.0), c(-1.0), PI / 2.0, DEFAULT_EPS, Exec::Sequential).unwrap_err();
    assert!(matches!(e, Error::RayMisconfigured(_)));
}

fn rank(v: Verdict) -> u8 {
    match v {
        Verdict::Regular => 0,
        Verdict::Inconclusive => 1,
        Verdict::Failed => 2,
    }
}

fn bessel_problem(mu_ref: f64) -> Problem {
    Problem::Ode { op: Level1Operator::bessel(1.0 / 3.0), alpha: c(1.0), theta: 0.0, reference: Reference::BesselK { mu: mu_ref } }
}

#[test]
fn bessel_third_is_borel_regular() {
    let zs = [4.0, 8.0, 16.0].map(c);
    let r = regularity_verdict(&bessel_problem(1.0 / 3.0), &zs, &VerdictTolerances::default(), Exec::Parallel);
    assert_eq!(r.verdict, Verdict::Regular, "{:#?}", r.checks);
    assert!(r.max_residual("frequency_values").unwrap() < 1e-6);
    assert!((r.formal_coeffs[1] - c(-5.0 / 72.0)).norm() < 1e-4);
}

#[test]
fn wrong_oracle_fails() {
    let zs = [4.0, 8.0, 16.0].map(c);
    let r = regularity_verdict(&bessel_problem(0.25), &zs, &VerdictTolerances::default(), Exec::Parallel);
    assert_eq!(r.verdict, Verdict::Failed);
    assert!(r.failure.is_some());
}

#[test]
fn cubic_thimble_is_borel_regular() {
    let spec = borel_core::thimble::ThimbleSpec::new(
        borel_core::poly::Poly::parse("3u-4u^3").unwrap(),
        borel_core::poly::Poly::from_real(&[1.0]),
        c(0.5),
        0.0,
    )
    .unwrap();
    let zs = [3.0, 5.0, 8.0].map(c);
    let r = regularity_verdict(&Problem::Thimble(spec), &zs, &VerdictTolerances::default(), Exec::Parallel);
    assert_eq!(r.verdict, Verdict::Regular, "{:#?} {:?}", r.checks, r.failure);
}

#[test]
fn degenerate_cubic_is_borel_regular() {
    let zs = [2.0, 4.0, 8.0].map(c);
    for q in [c(0.0), Complex64::new(0.5, -0.2)] {
        let p = Problem::DegenerateCubic { q, theta: 0.0 };
        let r = regularity_verdict(&p, &zs, &VerdictTolerances::default(), Exec::Parallel);
        assert_eq!(r.verdict, Verdict::Regular, "{:#?} {:?}", r.checks, r.failure);
        assert!(r.max_residual("closed_form").unwrap() < 1e-10);
    }
}

#[test]
fn tightening_tolerances_never_improves_the_verdict() {
    let zs = [4.0, 8.0].map(c);
    let mut last = 0;
    for f in [1.0, 1e-2, 1e-4, 1e-6, 1e-8] {
        let tol = VerdictTolerances::default().scaled(f);
        let r = regularity_verdict(&bessel_problem(1.0 / 3.0), &zs, &tol, Exec::Parallel);
        assert!(rank(r.verdict) >= last, "factor {f}: {:?}", r.verdict);
        last = rank(r.verdict);
    }
    assert!(last > 0);
}
