//! Exact polynomial arithmetic: sparse multivariate polynomials over the
//! integers and truncated power series with polynomial coefficients.

mod parse;
mod poly;
mod series;
mod var;

pub use poly::MultiPoly;
pub use series::PowerSeries;
pub use var::{Monomial, Var};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("constant term is not a unit of the integers")]
    NonInvertibleConstantTerm,
    #[error("coefficient z^{index} requested from a series truncated at z^{order}")]
    IndexBeyondTruncation { index: usize, order: usize },
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid indeterminate name {0:?}")]
    InvalidName(String),
}

/// Parses a polynomial, panicking on malformed input. Meant for literals in code and tests.
pub fn poly(text: &str) -> MultiPoly {
    text.parse().unwrap_or_else(|e| panic!("bad polynomial literal {text:?}: {e}"))
}
