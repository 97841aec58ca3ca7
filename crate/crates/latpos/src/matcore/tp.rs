use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::{bareiss_det, MatError, MinorSpec, PolyMatrix};
use crate::polyalg::{Monomial, MultiPoly};

/// Largest dimension accepted for matrices with indeterminates.
pub const SYMBOLIC_LIMIT: usize = 12;
/// Largest dimension accepted for integer matrices.
pub const NUMERIC_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TpWitness {
    pub spec: MinorSpec,
    pub minor: MultiPoly,
    /// A negative term of the minor, as `(monomial, coefficient)` text.
    pub term: (String, String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TpReport {
    pub order: usize,
    pub passed: bool,
    pub witness: Option<TpWitness>,
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let mut i = k;
        while i > 0 && c[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        c[i - 1] += 1;
        for j in i..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

fn guard(m: &PolyMatrix, numeric: bool) -> Result<(), MatError> {
    let limit = if numeric { NUMERIC_LIMIT } else { SYMBOLIC_LIMIT };
    if m.rows() > limit || m.cols() > limit {
        return Err(MatError::SizeGuard { rows: m.rows(), cols: m.cols(), limit });
    }
    Ok(())
}

fn witness(spec: MinorSpec, minor: MultiPoly) -> TpWitness {
    let (mono, c): (Monomial, BigInt) = minor.negative_term().expect("failing minor has a negative term");
    TpWitness { spec, minor, term: (mono.to_string(), c.to_string()) }
}

/// Checks that every minor of order at most `r` has non-negative coefficients.
///
/// Minors are visited by order, then row set, then column set, each in
/// lexicographic order; the first failure in that order is the witness.
pub fn is_tp_order(m: &PolyMatrix, r: usize) -> Result<TpReport, MatError> {
    let ints = m.to_integers();
    guard(m, ints.is_some())?;
    let top = r.min(m.rows()).min(m.cols());
    for s in 1..=top {
        let row_sets = combinations(m.rows(), s);
        let col_sets = combinations(m.cols(), s);
        let failure = row_sets.par_iter().find_map_first(|rows| {
            for cols in &col_sets {
                let minor = match &ints {
                    Some(a) => {
                        let sub: Vec<Vec<BigInt>> =
                            rows.iter().map(|&i| cols.iter().map(|&j| a[i][j].clone()).collect()).collect();
                        MultiPoly::constant(bareiss_det(sub))
                    }
                    None => m.submatrix(rows, cols).det().expect("square submatrix"),
                };
                if !minor.is_coeff_nonnegative() {
                    return Some(witness(MinorSpec::new(rows.clone(), cols.clone()), minor));
                }
            }
            None
        });
        if let Some(w) = failure {
            return Ok(TpReport { order: r, passed: false, witness: Some(w) });
        }
    }
    Ok(TpReport { order: r, passed: true, witness: None })
}
