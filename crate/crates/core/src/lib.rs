//! Numerical Borel summation for level-1 linear ODEs and one-dimensional
//! Lefschetz-thimble integrals.
//!
//! The frequency side (formal trans-monomials, Poincaré recurrences) lives in
//! [`series`] and [`ode`]; the position side (ray grid functions, Volterra
//! operators, Picard iteration) in [`borel_plane`]; the two are joined by
//! [`laplace`]. [`thimble`] covers thimble integrals and their projection to
//! the Borel plane, [`resurgence`] measures Stokes constants and issues
//! regularity verdicts, and [`oracles`] holds independent special-function
//! references used only for checking.

// `!(x > y)` guards also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod borel_plane;
pub mod error;
pub mod exec;
pub mod laplace;
pub mod numerics;
pub mod ode;
pub mod oracles;
pub mod poly;
pub mod resurgence;
pub mod series;
pub mod thimble;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Exec;
pub use num_complex::Complex64;
