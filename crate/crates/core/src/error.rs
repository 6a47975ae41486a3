use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the engine can report. [`Error::code`] gives a stable
/// machine-readable tag for each variant.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("Gamma pole at term {term}: exponent {exponent} is a nonpositive integer")]
    GammaPole { term: usize, exponent: f64 },
    #[error("exact arithmetic needs an integer shift, got {0}")]
    InexactShift(f64),
    #[error("shifts {0} and {1} do not differ by an integer")]
    IncompatibleShifts(f64, f64),
    #[error("roots of P are not simple (separation {separation:e})")]
    NonSimpleRoots { separation: f64 },
    #[error("Q vanishes at the root -alpha = {root}")]
    DegenerateQ { root: String },
    #[error("resonance: diagonal entry of the recurrence vanishes at order {order}")]
    Resonance { order: usize },
    #[error("complex tau = {re} + {im}i is not supported on a real-exponent grid")]
    ComplexTau { re: f64, im: f64 },
    #[error("path passes within {distance:e} of the singular point {point}")]
    RayHitsRoot { point: String, distance: f64 },
    #[error("no convergence after {iterations} iterations (last change {last_change:e})")]
    NoConvergence { iterations: usize, last_change: f64 },
    #[error("ill-conditioned Taylor extraction (amplification {amplification:e})")]
    IllConditioned { amplification: f64 },
    #[error("tail estimate {tail:e} exceeds tolerance {tol:e} at length {length}")]
    TailDominates { tail: f64, tol: f64, length: f64 },
    #[error("thimble trace came within {distance:e} of critical point {point}")]
    BranchCollision { point: String, distance: f64 },
    #[error("cannot seed thimble: |f''(a)| = {0:e} is below the degeneracy tolerance")]
    SeedFailure(f64),
    #[error("Morse chart is degenerate: |f''(a)| = {0:e}")]
    DegenerateChart(f64),
    #[error("unstable asymptotic fit at order {order}: variation {variation:e}")]
    UnstableFit { order: usize, variation: f64 },
    #[error("ray misconfigured: {0}")]
    RayMisconfigured(String),
    #[error("argument outside the oracle domain: {0}")]
    DomainError(String),
    #[error("parameters not supported: {0}")]
    ParameterUnsupported(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid_input",
            Error::GammaPole { .. } => "gamma_pole",
            Error::InexactShift(_) => "inexact_shift",
            Error::IncompatibleShifts(..) => "incompatible_shifts",
            Error::NonSimpleRoots { .. } => "non_simple_roots",
            Error::DegenerateQ { .. } => "degenerate_q",
            Error::Resonance { .. } => "resonance",
            Error::ComplexTau { .. } => "complex_tau",
            Error::RayHitsRoot { .. } => "ray_hits_root",
            Error::NoConvergence { .. } => "no_convergence",
            Error::IllConditioned { .. } => "ill_conditioned",
            Error::TailDominates { .. } => "tail_dominates",
            Error::BranchCollision { .. } => "branch_collision",
            Error::SeedFailure(_) => "seed_failure",
            Error::DegenerateChart(_) => "degenerate_chart",
            Error::UnstableFit { .. } => "unstable_fit",
            Error::RayMisconfigured(_) => "ray_misconfigured",
            Error::DomainError(_) => "domain_error",
            Error::ParameterUnsupported(_) => "parameter_unsupported",
        }
    }
}
