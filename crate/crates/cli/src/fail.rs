//! CLI errors, their machine-readable codes and exit statuses.

use borel_core::Error;
use serde_json::json;

/// Exit status when every check passed.
pub const EXIT_OK: i32 = 0;
/// A check ran but did not pass.
pub const EXIT_CHECK: i32 = 1;
/// Malformed input: spec file, flags, expressions, domains.
pub const EXIT_INPUT: i32 = 2;
/// The numerics did not converge or could not be trusted.
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug)]
pub enum ErrorKind {
    Schema,
    Io,
    Parse,
    Usage,
    Engine(Error),
}

#[derive(Debug)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn new(kind: ErrorKind, message: impl Into<String>) -> Self {
        CliError { kind, message: message.into() }
    }

    pub fn code(&self) -> &'static str {
        match &self.kind {
            ErrorKind::Schema => "schema",
            ErrorKind::Io => "io",
            ErrorKind::Parse => "parse",
            ErrorKind::Usage => "usage",
            ErrorKind::Engine(e) => e.code(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match &self.kind {
            ErrorKind::Engine(
                Error::NoConvergence { .. }
                | Error::IllConditioned { .. }
                | Error::TailDominates { .. }
                | Error::BranchCollision { .. }
                | Error::SeedFailure(_)
                | Error::DegenerateChart(_)
                | Error::UnstableFit { .. },
            ) => EXIT_NUMERIC,
            _ => EXIT_INPUT,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({ "schema": crate::spec::SCHEMA, "error": { "code": self.code(), "message": self.message } })
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        CliError { kind: ErrorKind::Engine(e), message }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numerical_and_input_failures_exit_differently() {
        let n = CliError::from(Error::NoConvergence { iterations: 3, last_change: 1.0 });
        assert_eq!((n.code(), n.exit_code()), ("no_convergence", EXIT_NUMERIC));
        let i = CliError::from(Error::InvalidInput("x".into()));
        assert_eq!((i.code(), i.exit_code()), ("invalid_input", EXIT_INPUT));
        assert_eq!(CliError::new(ErrorKind::Schema, "bad").to_json()["error"]["code"], "schema");
    }
}
