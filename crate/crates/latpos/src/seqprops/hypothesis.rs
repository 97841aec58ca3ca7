use num_traits::Signed;
use serde::Serialize;

use super::{
    extract, is_polya_frequency_finite, is_r_log_concave, is_r_log_concave_prefix, pf_via_real_roots, PolySequence,
    Selection, SeqError,
};
use crate::matcore::{is_tp_order, TpReport};
use crate::pathmodel::build_matrix_rec1;
use crate::polyalg::PowerSeries;
use crate::riordan::ConstantScheme;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeqCheck {
    pub origin: String,
    pub pf: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub log_concavity_depth: Option<usize>,
}

impl SeqCheck {
    fn passed(&self, r: usize) -> bool {
        self.pf && self.log_concavity_depth.is_none_or(|d| d >= r)
    }
}

/// What follows from `sum a_i z^i` having only real non-positive zeros,
/// checked at a fixed window, minor order and log-concavity depth.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub matrix: TpReport,
    pub columns: Vec<SeqCheck>,
    pub rows: Vec<SeqCheck>,
    pub diagonals: Vec<SeqCheck>,
    pub passed: bool,
}

/// `(sum a_i z^i)^k`: column `k`'s generating function is this times
/// `z^(t k) / (1 - gamma z)^(k+1)`.
pub fn column_numerator(cs: &ConstantScheme, k: usize) -> PolySequence {
    let order = cs.ell * k;
    let base = PowerSeries::from_coeffs(cs.a.clone(), order);
    PolySequence::new(base.pow(k as u32).coeffs().to_vec(), format!("numerator of column {k}"))
}

/// Checks, for a constant scheme whose `sum a_i z^i` has only real
/// non-positive zeros and with `gamma >= 0`: total positivity of the leading
/// `window x window` block; Pólya frequency and `r`-fold log-concavity of
/// every column and, when `t >= 1`, every row; Pólya frequency of the
/// diagonals `(M_{n+delta i, k+sigma i})_i` with `max(k, delta) < sigma <= 4`
/// and `k <= n <= k + 1`.
pub fn check_real_rooted_band(
    cs: &ConstantScheme,
    window: usize,
    order: usize,
    r: usize,
) -> Result<HypothesisReport, SeqError> {
    let coeffs = PolySequence::new(cs.a.clone(), "slanted weights");
    let numeric = coeffs.is_numeric() && cs.gamma.is_constant();
    if !numeric {
        return Err(SeqError::HypothesisNotMet("weights must be integers".into()));
    }
    if !pf_via_real_roots(&coeffs)? {
        return Err(SeqError::HypothesisNotMet("sum a_i z^i has a zero that is not real and non-positive".into()));
    }
    if cs.gamma.as_constant().is_some_and(|g| g.is_negative()) {
        return Err(SeqError::HypothesisNotMet("gamma is negative".into()));
    }
    let t = cs.t;
    let span = window + r;
    let rows = (t * window + span).max(window + 2 + 3 * window);
    let cols = (3 + 4 * window).max(rows);
    let tri = build_matrix_rec1(&cs.to_scheme(), rows, cols)?;
    let matrix = is_tp_order(&tri.entries.leading(window, window), order)?;

    let check = |s: PolySequence, lc: Option<bool>| -> Result<SeqCheck, SeqError> {
        let pf = is_polya_frequency_finite(&s, window, order)?.passed;
        let depth = match lc {
            None => None,
            Some(true) => Some(is_r_log_concave(&s, r)?.depth),
            Some(false) => Some(is_r_log_concave_prefix(&s, r)?.depth),
        };
        Ok(SeqCheck { origin: s.origin, pf, log_concavity_depth: depth })
    };

    let mut columns = Vec::new();
    for k in 0..window {
        columns.push(check(extract(&tri, Selection::Column { k }, span)?, Some(false))?);
    }
    let mut rows_out = Vec::new();
    let mut diagonals = Vec::new();
    if t >= 1 {
        for n in 0..window {
            rows_out.push(check(extract(&tri, Selection::Row { n }, n / t + 1)?, Some(true))?);
        }
        for sigma in 1..=4 {
            for delta in 1..sigma {
                for k in 0..sigma {
                    for n in k..=k + 1 {
                        let d = Selection::Diagonal { n, k, delta, sigma };
                        diagonals.push(check(extract(&tri, d, window)?, None)?);
                    }
                }
            }
        }
    }
    let passed = matrix.passed && columns.iter().chain(&rows_out).chain(&diagonals).all(|c| c.passed(r));
    Ok(HypothesisReport { matrix, columns, rows: rows_out, diagonals, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{poly, MultiPoly};

    fn cs(t: usize, a: &[i64], g: i64) -> ConstantScheme {
        ConstantScheme::new(t, a.iter().map(|&c| MultiPoly::constant(c)).collect(), MultiPoly::constant(g)).unwrap()
    }

    #[test]
    fn delannoy_triangle_satisfies_all() {
        let rep = check_real_rooted_band(&cs(1, &[1, 1], 1), 5, 3, 3).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert_eq!(rep.columns.len(), 5);
        assert_eq!(rep.rows.len(), 5);
        assert!(!rep.diagonals.is_empty());
    }

    #[test]
    fn delannoy_like_satisfies_all() {
        assert!(check_real_rooted_band(&cs(1, &[1, 3], 2), 5, 3, 3).unwrap().passed);
    }

    #[test]
    fn complex_zeros_rejected() {
        assert!(matches!(check_real_rooted_band(&cs(1, &[1, 0, 1], 1), 5, 3, 3), Err(SeqError::HypothesisNotMet(_))));
        let sym = ConstantScheme::new(1, vec![poly("x")], poly("1")).unwrap();
        assert!(matches!(check_real_rooted_band(&sym, 4, 2, 2), Err(SeqError::HypothesisNotMet(_))));
    }

    #[test]
    fn square_array_has_no_row_claims() {
        let rep = check_real_rooted_band(&cs(0, &[1, 1], 1), 5, 3, 3).unwrap();
        assert!(rep.passed);
        assert!(rep.rows.is_empty() && rep.diagonals.is_empty());
    }

    #[test]
    fn numerators() {
        let n = column_numerator(&cs(1, &[1, 2], 1), 2);
        assert_eq!(n.terms, vec![poly("1"), poly("4"), poly("4")]);
    }
}
