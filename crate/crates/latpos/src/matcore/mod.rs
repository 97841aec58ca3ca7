//! Polynomial matrices, exact determinants and minors, total-positivity checks,
//! and the structured matrices attached to a weight scheme.

mod matrix;
mod structured;
mod tp;

pub use matrix::{bareiss_det, MinorSpec, PolyMatrix};
pub use structured::{
    bidiagonal, build_a_matrix, build_delta, build_l_matrix, build_p_matrix, build_p_rect, build_p_tilde, elementary,
    factor_product, toeplitz, tridiag_factor_params, tridiag_recipe, verify_connection, verify_decomposition,
    verify_w_factorization, TridiagFactors,
};
pub use tp::{combinations, is_tp_order, TpReport, TpWitness, NUMERIC_LIMIT, SYMBOLIC_LIMIT};

use thiserror::Error;

use crate::pathmodel::PathError;
use crate::polyalg::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatError {
    #[error("cannot multiply {left:?} by {right:?}")]
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("{0}x{1} matrix is not square")]
    NotSquare(usize, usize),
    #[error("{rows}x{cols} matrix exceeds the limit of {limit}")]
    SizeGuard { rows: usize, cols: usize, limit: usize },
    #[error("bad minor: {0}")]
    BadMinor(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
