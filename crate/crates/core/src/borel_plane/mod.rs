//! Position side: grid functions on rays and polylines from a characteristic
//! rate, fractional integrals, the Volterra operator and its Picard solver.

mod grid;
mod ops;
mod path;
mod picard;
mod taylor;
mod volterra;

pub use grid::{breakpoints, GridSpec, Panel, RayGridFunction};
pub use ops::{fractional_integral, fractional_integral_with, integrate, integrate_n};
pub use path::{Leg, Path, Ray};
pub use picard::{picard_solve, picard_solve_path, PicardOptions, PicardReport};
pub use taylor::taylor_extract;
pub use volterra::{volterra_apply, VolterraOperator};
