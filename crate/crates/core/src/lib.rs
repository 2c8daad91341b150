//! Exact arithmetic for polynomial Pell equations x^2 - g(u) y^2 = c and
//! the affine surfaces they cut out.
//!
//! The crate decides solvability by Abel's continued-fraction method over Q
//! and over odd prime fields, constructs the full solution group from the
//! fundamental solution, enumerates affine lines and Chebyshev sections on
//! Pell surfaces, and computes the ramification and discriminant invariants
//! attached to polynomial self-maps of the affine line.

pub mod contfrac;
pub mod error;
pub mod field;
pub mod laurent;
pub mod parse;
pub mod pell;
pub mod poly;
pub mod ramify;
pub mod surfaces;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec};
pub use pell::{
    pth_power_descent, simple_roots_certificate, PellProblem, PellSolution, SolvabilityVerdict,
};
pub use poly::{multiplicity_profile, MultiplicityProfile, Poly};
