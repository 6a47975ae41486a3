//! Stokes constants, large-`z` fits and Borel-regularity verdicts.

pub mod fit;
pub mod stokes;
pub mod verdict;

pub use fit::{asymptotic_fit, AsymptoticFit};
pub use stokes::{stokes_constant, StokesMeasurement, DEFAULT_EPS};
pub use verdict::{regularity_verdict, BorelSummationReport, Problem, Reference, Verdict, VerdictTolerances};
