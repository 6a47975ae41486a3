use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn specs(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs").join(name)
}

/// Exit code and parsed stdout.
fn borel(args: &[&str]) -> (i32, Value) {
    let (code, out) = borel_raw(args);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}")))
}

fn borel_raw(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_borel")).args(args).output().expect("binary runs");
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).unwrap())
}

fn complex(v: &Value) -> (f64, f64) {
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

fn check(report: &Value, name: &str) -> f64 {
    let c = report["checks"].as_array().unwrap().iter().find(|c| c["name"] == name);
    c.unwrap_or_else(|| panic!("no check {name}"))["residual"].as_f64().unwrap()
}

#[test]
fn ode_bessel_third_reproduces_poincare_coefficients() {
    let spec = specs("bessel13.toml");
    let (code, r) = borel(&["ode", "--spec", spec.to_str().unwrap(), "--root", "1", "--order", "6"]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["schema"], 1);
    let (c1, _) = complex(&r["poincare"][1]);
    assert!((c1 + 5.0 / 72.0).abs() < 1e-15);
    let (f1, _) = complex(&r["fit"]["coeffs"][1]);
    assert!((f1 + 5.0 / 72.0).abs() < 1e-8, "{f1}");
    assert!(check(&r, "taylor_vs_borel") < 1e-4);
}

#[test]
fn ode_cantilever_reports_universal_solution() {
    let spec = specs("cantilever.toml");
    let (code, r) = borel(&["ode", "--spec", spec.to_str().unwrap(), "--root", "i"]);
    assert_eq!(code, 0, "{r}");
    assert!(r["universal_residual"].as_f64().unwrap() < 1e-8);
}

#[test]
fn ode_rejects_a_non_root() {
    let spec = specs("bessel13.toml");
    let (code, r) = borel(&["ode", "--spec", spec.to_str().unwrap(), "--root", "2"]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["code"], "usage");
}

#[test]
fn malformed_spec_exits_with_schema_error() {
    let dir = std::env::temp_dir().join(format!("borel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.toml");
    std::fs::write(&bad, "schema = 1\nkind = \"ode\"\ncolour = 2\n").unwrap();
    let (code, r) = borel(&["ode", "--spec", bad.to_str().unwrap(), "--root", "1"]);
    assert_eq!(code, 2);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["error"]["code"], "schema");
    let wrong_version = dir.join("v2.json");
    std::fs::write(&wrong_version, r#"{"schema": 2, "kind": "ode", "operator": {"family": "bessel", "mu": 0.5}}"#)
        .unwrap();
    let (code, r) = borel(&["ode", "--spec", wrong_version.to_str().unwrap(), "--root", "1"]);
    assert_eq!((code, r["error"]["code"].as_str()), (2, Some("schema")));
}

#[test]
fn gaussian_thimble_is_root_two_pi_over_z() {
    let spec = specs("gaussian.toml");
    let (code, r) = borel(&["thimble", "--spec", spec.to_str().unwrap()]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["route"], "morse");
    for row in r["values"].as_array().unwrap() {
        let (z, _) = complex(&row["z"]);
        let (v, vi) = complex(&row["direct"]);
        let want = (2.0 * std::f64::consts::PI / z).sqrt();
        assert!((v - want).abs() < 1e-12 * want && vi.abs() < 1e-12, "{z}: {v}");
    }
    // at z = 4 the value is sqrt(pi/2)
    let (v4, _) = complex(&r["values"][2]["direct"]);
    assert!((v4 - (std::f64::consts::PI / 2.0).sqrt()).abs() < 1e-12);
}

#[test]
fn pure_cubic_takes_the_degenerate_route() {
    let (code, r) = borel(&["thimble", "--f", "u^3", "--a", "0"]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["route"], "degenerate");
    assert_eq!(r["order"], 3);
    assert!(check(&r, "closed_form") < 1e-7);
    assert!(check(&r, "projection_vs_direct") < 1e-6);
}

#[test]
fn stokes_constants_of_bessel_family() {
    let spec = specs("bessel13.toml");
    for (mn, want) in [("1/3", 1.0), ("1/4", 2f64.sqrt()), ("1/2", 0.0)] {
        let (code, r) = borel(&[
            "stokes", "--spec", spec.to_str().unwrap(), "--alpha", "1", "--beta", "-1", "--theta", "3.14159", "--mn", mn,
        ]);
        assert_eq!(code, 0, "{r}");
        let (s, si) = complex(&r["measurement"]["normalized"]);
        assert!((s - want).abs() < 1e-4 && si.abs() < 1e-4, "{mn}: {s}");
    }
}

#[test]
fn verify_subset_passes() {
    let (code, r) = borel(&["verify", "--only", "poincare,5,k0", "--json"]);
    assert_eq!(code, 0, "{r}");
    let keys: Vec<&str> = r["rows"].as_array().unwrap().iter().map(|x| x["key"].as_str().unwrap()).collect();
    assert_eq!(keys, ["poincare", "degenerate", "k0"]);
}

#[test]
fn verify_with_tightened_tolerances_fails() {
    let (code, r) = borel(&["verify", "--only", "triple", "--tol-scale", "0.01", "--json"]);
    assert_eq!(code, 1);
    assert_eq!(r["passed"], false);
    assert_ne!(r["rows"][0]["status"], "PASS");
}

#[test]
fn verify_rejects_unknown_criterion() {
    let (code, r) = borel(&["verify", "--only", "nope"]);
    assert_eq!((code, r["error"]["code"].as_str()), (2, Some("usage")));
}

#[test]
fn oracle_bessel_k_half_is_elementary() {
    let (code, r) = borel(&["oracle", "bessel-k", "--mu", "0.5", "--z", "2"]);
    assert_eq!(code, 0);
    let (v, _) = complex(&r["result"]["value"]);
    let want = (std::f64::consts::PI / 4.0).sqrt() * (-2f64).exp();
    assert!((v - want).abs() < 1e-13 * want, "{v}");
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let spec = specs("bessel13.toml");
    let args = ["ode", "--spec", spec.to_str().unwrap(), "--root", "-1"];
    let (_, a) = borel_raw(&[&["--threads", "1"], &args[..]].concat());
    let (_, b) = borel_raw(&[&["--threads", "3"], &args[..]].concat());
    let (_, c) = borel_raw(&args);
    assert_eq!(a, b);
    assert_eq!(b, c);
    let (_, v1) = borel_raw(&["verify", "--only", "stokes,triple", "--json"]);
    let (_, v2) = borel_raw(&["--threads", "1", "verify", "--only", "stokes,triple", "--json"]);
    let strip = |s: &str| {
        let mut v: Value = serde_json::from_str(s).unwrap();
        v.as_object_mut().unwrap().remove("sidecar");
        v
    };
    assert_eq!(strip(&v1), strip(&v2));
}
