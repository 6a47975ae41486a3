use std::f64::consts::PI;

use borel_core::borel_plane::*;
use borel_core::laplace::*;
use borel_core::ode::Level1Operator;
use borel_core::oracles::bessel_k;
use borel_core::{Complex64, Exec};

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn bessel(mu: f64, alpha: f64) -> VolterraOperator {
    VolterraOperator::new(Level1Operator::bessel(mu), c(alpha)).unwrap()
}

fn picard(v: &VolterraOperator, theta: f64, len: f64) -> RayGridFunction {
    picard_solve(v, Ray::new(v.base, theta, len).unwrap(), 200, 1e-14).unwrap()
}

#[test]
fn k0_from_the_square_root_integrand() {
    // (ζ²-1)^{-1/2} = t^{-1/2} (t+2)^{-1/2} on the ray from 1
    let ray = Ray::new(c(1.0), 0.0, 40.0).unwrap();
    let psi =
        RayGridFunction::from_fn(ray.into(), -0.5, &[c(-1.0)], &GridSpec::default(), |t, _| c(1.0 / (t + 2.0).sqrt()))
            .unwrap();
    let zs = vec![c(1.0), c(3.0)];
    let vals = laplace(&LaplaceRequest::new(psi, zs.clone(), Tilt::Attached)).unwrap();
    for (v, z) in vals.iter().zip(&zs) {
        let k = bessel_k(0.0, *z).unwrap().value;
        assert!((v.value - k).norm() < 1e-8 * k.norm(), "{z}: {} vs {k}", v.value);
    }
}

#[test]
fn picard_borel_sum_is_proportional_to_k_third() {
    let v = bessel(1.0 / 3.0, 1.0);
    let zs = [4.0, 8.0, 16.0, 32.0].map(c);
    let (vals, _) = laplace_extending(|len| Ok(picard(&v, 0.0, len)), 8.0, &zs, Tilt::Attached, 1e-12, Exec::Parallel)
        .unwrap();
    let k: Vec<Complex64> = zs.iter().map(|z| bessel_k(1.0 / 3.0, *z).unwrap().value).collect();
    let scale = vals[1].value / k[1];
    for (val, kz) in vals.iter().zip(&k) {
        let rel = (val.value - scale * kz).norm() / (scale * kz).norm();
        assert!(rel < 1e-7, "z = {}: {rel:e}", val.z);
    }
    // ψ ~ ζ_1^{-1/2}/Γ(1/2) gives L ψ ~ e^{-z} z^{-1/2}, and K ~ √(π/2) e^{-z} z^{-1/2}
    assert!((scale - c((2.0 / PI).sqrt())).norm() < 1e-7, "{scale}");
}

#[test]
fn fractional_integral_intertwines_with_powers_of_z() {
    let v = bessel(1.0 / 3.0, 1.0);
    let psi = picard(&v, 0.3, 30.0);
    let zs = vec![Complex64::new(3.0, 1.0), c(6.0)];
    let base = laplace(&LaplaceRequest::new(psi.clone(), zs.clone(), Tilt::Attached)).unwrap();
    for nu in [0.5, 1.0, 2.0] {
        let g = fractional_integral(&psi, nu).unwrap();
        let vals = laplace(&LaplaceRequest::new(g, zs.clone(), Tilt::Attached)).unwrap();
        for (a, b) in vals.iter().zip(&base) {
            let expect = b.value * (-nu * a.z.ln()).exp();
            let bound = a.err_est + b.err_est * expect.norm() / b.value.norm() + 1e-11;
            assert!((a.value - expect).norm() < bound, "nu = {nu}: {} vs {expect}", a.value);
        }
    }
}

#[test]
fn lateral_pair_jump_is_the_stokes_multiple() {
    let v1 = bessel(1.0 / 3.0, 1.0);
    let vm = bessel(1.0 / 3.0, -1.0);
    let zs = [c(-3.0), Complex64::new(-4.0, 0.5)];
    let (plus, minus) = lateral_pair(&v1, PI, 0.15, &zs, 1e-12, Exec::Parallel).unwrap();
    let (other, _) =
        laplace_extending(|len| Ok(picard(&vm, PI, len)), 10.0, &zs, Tilt::Attached, 1e-12, Exec::Sequential)
            .unwrap();
    // with every solution normalized by ζ^{-1/2}/Γ(1/2) on its own ray the
    // jump is i·2cos(π/3), the same number the position-domain jump gives
    for ((p, m), o) in plus.iter().zip(&minus).zip(&other) {
        let s = (p.value - m.value) / o.value;
        assert!((s - Complex64::new(0.0, 1.0)).norm() < 1e-6, "{}: {s}", p.z);
    }
    // no singularity crossed around θ = π/2
    let (plus, minus) = lateral_pair(&v1, PI / 2.0, 0.15, &[Complex64::new(1.0, -3.0)], 1e-12, Exec::Parallel).unwrap();
    assert!((plus[0].value - minus[0].value).norm() < plus[0].err_est + minus[0].err_est + 1e-11);
}
