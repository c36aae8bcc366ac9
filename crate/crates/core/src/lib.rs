//! Numerical identification, classification and rendering of direct and
//! logarithmic tracts of entire functions.

pub mod be;
pub mod critpoints;
pub mod expr;
pub mod field;
pub mod logcomplex;
pub mod parse;
pub mod poisson;
pub mod render;
pub mod report;
mod series;
pub mod tracts;

pub use expr::{EvalError, Expr};
pub use logcomplex::LogComplex;
pub use parse::{parse, ParseError};
