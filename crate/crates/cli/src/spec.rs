//! Problem spec files (TOML or JSON), validated before dispatch.

use std::path::Path;

use borel_core::ode::Level1Operator;
use borel_core::Complex64;
use serde::Deserialize;

use crate::fail::{CliError, ErrorKind};

pub const SCHEMA: u32 = 1;

/// A real number or an `[re, im]` pair.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Real(f64),
    Complex([f64; 2]),
}

impl Num {
    pub fn value(self) -> Complex64 {
        match self {
            Num::Real(x) => Complex64::new(x, 0.0),
            Num::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Ode,
    Thimble,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `∂² - 1 + ∂/z - μ²/z²`.
    Bessel,
    /// `∂⁴ - ω² + 2∂³/z`.
    Cantilever,
    /// Coefficients of `P`, `Q`, `R` given explicitly.
    Custom,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorSpec {
    pub family: Family,
    pub mu: Option<f64>,
    /// `μ` as a ratio `"m/n"`.
    pub mn: Option<String>,
    pub omega: Option<f64>,
    pub p: Option<Vec<Num>>,
    pub q: Option<Vec<Num>>,
    pub r: Option<Vec<Num>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThimbleSection {
    pub f: String,
    pub nu: Option<String>,
    pub a: Num,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Relative agreement of frequency-domain values.
    pub value: Option<f64>,
    /// Relative agreement of series coefficients.
    pub coeff: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub schema: u32,
    pub kind: Kind,
    pub operator: Option<OperatorSpec>,
    pub thimble: Option<ThimbleSection>,
    /// Ray direction; defaults depend on the command.
    pub theta: Option<f64>,
    /// Frequency samples.
    pub z: Option<Vec<Num>>,
    pub tolerances: Option<Tolerances>,
}

fn schema_err(msg: impl Into<String>) -> CliError {
    CliError::new(ErrorKind::Schema, msg)
}

impl SpecFile {
    pub fn load(path: &Path) -> Result<SpecFile, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::new(ErrorKind::Io, format!("{}: {e}", path.display())))?;
        let spec: SpecFile = match path.extension().and_then(|e| e.to_str()) {
            Some("json") => serde_json::from_str(&text).map_err(|e| schema_err(e.to_string()))?,
            Some("toml") => toml::from_str(&text).map_err(|e| schema_err(e.to_string()))?,
            _ => return Err(schema_err(format!("{}: expected a .toml or .json file", path.display()))),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.schema != SCHEMA {
            return Err(schema_err(format!("schema {} is not supported (expected {SCHEMA})", self.schema)));
        }
        match self.kind {
            Kind::Ode if self.operator.is_none() => Err(schema_err("kind = \"ode\" needs an [operator] table")),
            Kind::Thimble if self.thimble.is_none() => Err(schema_err("kind = \"thimble\" needs a [thimble] table")),
            _ => Ok(()),
        }
    }

    pub fn operator(&self) -> Result<&OperatorSpec, CliError> {
        self.operator.as_ref().ok_or_else(|| schema_err("spec has no [operator] table"))
    }

    pub fn z_points(&self) -> Option<Vec<Complex64>> {
        self.z.as_ref().map(|v| v.iter().map(|n| n.value()).collect())
    }
}

/// `"m/n"` or a decimal.
pub fn parse_ratio(s: &str) -> Result<f64, CliError> {
    let bad = || CliError::new(ErrorKind::Parse, format!("expected m/n or a number, got {s:?}"));
    match s.split_once('/') {
        Some((m, n)) => {
            let m: f64 = m.trim().parse().map_err(|_| bad())?;
            let n: f64 = n.trim().parse().map_err(|_| bad())?;
            if n == 0.0 {
                return Err(bad());
            }
            Ok(m / n)
        }
        None => s.trim().parse().map_err(|_| bad()),
    }
}

impl OperatorSpec {
    /// The operator, with `mu` or `omega` overridden where given.
    pub fn build(&self, mu: Option<f64>, omega: Option<f64>) -> Result<Level1Operator, CliError> {
        match self.family {
            Family::Bessel => {
                let from_file = match (&self.mn, self.mu) {
                    (Some(s), _) => Some(parse_ratio(s)?),
                    (None, m) => m,
                };
                let mu = mu.or(from_file).ok_or_else(|| schema_err("bessel operator needs mu or mn"))?;
                Ok(Level1Operator::bessel(mu))
            }
            Family::Cantilever => {
                let omega = omega.or(self.omega).ok_or_else(|| schema_err("cantilever operator needs omega"))?;
                if omega == 0.0 {
                    return Err(schema_err("omega must be nonzero"));
                }
                Ok(Level1Operator::cantilever(omega))
            }
            Family::Custom => {
                let take = |v: &Option<Vec<Num>>| -> Vec<Complex64> {
                    v.as_ref().map(|v| v.iter().map(|n| n.value()).collect()).unwrap_or_default()
                };
                if self.p.is_none() || self.q.is_none() {
                    return Err(schema_err("custom operator needs p and q"));
                }
                Ok(Level1Operator::new(take(&self.p), take(&self.q), take(&self.r))?)
            }
        }
    }

    pub fn omega(&self, over: Option<f64>) -> Option<f64> {
        over.or(self.omega)
    }
}
