//! Exact symbolic verification of Poisson conformal (bi)algebras and their
//! finite-dimensional companions.

#[macro_use]
mod macros;

pub mod bridges;
pub mod conformal;
pub mod deform;
pub mod exactpoly;
pub mod examples;
pub mod findim;
pub mod par;
pub mod report;
pub mod tensor;
pub mod ybe;

pub use exactpoly::{Poly, Rational, Var};
pub use report::CheckReport;
