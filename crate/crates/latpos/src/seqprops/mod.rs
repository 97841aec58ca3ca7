//! Sequences cut out of path matrices, and the Pólya frequency and
//! log-concavity checks run on them.

mod hypothesis;
mod logconcave;
mod sturm;

pub use hypothesis::{check_real_rooted_band, column_numerator, HypothesisReport, SeqCheck};
pub use logconcave::{is_r_log_concave, is_r_log_concave_prefix, l_operator, LogConcavity};
pub use sturm::pf_via_real_roots;

use serde::Serialize;
use thiserror::Error;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::matcore::{bareiss_det, is_tp_order, toeplitz, MatError, TpReport};
use crate::pathmodel::{Orientation, PathError, TriangleTruncation};
use crate::polyalg::MultiPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("{0} lies outside the truncation")]
    OutOfWindow(String),
    #[error("log-concavity needs integer terms, found {0}")]
    SymbolicTermsUnsupported(String),
    #[error("bad sequence: {0}")]
    BadSequence(String),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Path(#[from] PathError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolySequence {
    pub terms: Vec<MultiPoly>,
    pub origin: String,
}

impl PolySequence {
    pub fn new(terms: Vec<MultiPoly>, origin: impl Into<String>) -> PolySequence {
        PolySequence { terms, origin: origin.into() }
    }

    pub fn from_ints(terms: &[i64]) -> PolySequence {
        PolySequence::new(terms.iter().map(|&c| MultiPoly::constant(c)).collect(), "literal")
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_numeric(&self) -> bool {
        self.terms.iter().all(MultiPoly::is_constant)
    }

    pub(crate) fn integers(&self) -> Result<Vec<num_bigint::BigInt>, SeqError> {
        self.terms
            .iter()
            .map(|p| p.as_constant().ok_or_else(|| SeqError::SymbolicTermsUnsupported(p.to_string())))
            .collect()
    }
}

/// Which line of a truncation to read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Selection {
    Row {
        n: usize,
    },
    /// Starts at the first row where the column can be nonzero.
    Column {
        k: usize,
    },
    /// `(M_{n + delta i, k + sigma i})_i`.
    Diagonal {
        n: usize,
        k: usize,
        delta: usize,
        sigma: usize,
    },
}

impl Selection {
    fn describe(&self) -> String {
        match self {
            Selection::Row { n } => format!("row {n}"),
            Selection::Column { k } => format!("column {k}"),
            Selection::Diagonal { n, k, delta, sigma } => format!("diagonal ({n},{k},{delta},{sigma})"),
        }
    }

    /// `0 <= k <= n`, `delta > 0` and `max(k, delta) < sigma`: the diagonals
    /// for which total positivity is expected.
    pub fn is_admissible_diagonal(&self) -> bool {
        match *self {
            Selection::Diagonal { n, k, delta, sigma } => k <= n && delta > 0 && k.max(delta) < sigma,
            _ => false,
        }
    }
}

/// Reads `count` terms of a row, column or diagonal.
///
/// In orientation `M` a column `k` starts at row `t k`; in orientation `T`
/// a row `n` starts at column `t n`.
pub fn extract(tri: &TriangleTruncation, what: Selection, count: usize) -> Result<PolySequence, SeqError> {
    let t = tri.t;
    let cells: Vec<(usize, usize)> = match (what, tri.orientation) {
        (Selection::Row { n }, Orientation::M) => (0..count).map(|j| (n, j)).collect(),
        (Selection::Row { n }, Orientation::T) => (0..count).map(|j| (n, t * n + j)).collect(),
        (Selection::Column { k }, Orientation::M) => (0..count).map(|i| (t * k + i, k)).collect(),
        (Selection::Column { k }, Orientation::T) => (0..count).map(|i| (i, k)).collect(),
        (Selection::Diagonal { n, k, delta, sigma }, _) => (0..count).map(|i| (n + delta * i, k + sigma * i)).collect(),
    };
    let terms = cells
        .iter()
        .map(|&(i, j)| {
            tri.get(i, j)
                .cloned()
                .ok_or_else(|| SeqError::OutOfWindow(format!("entry ({i},{j}) of {}", what.describe())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PolySequence::new(terms, what.describe()))
}

/// Runs the total-positivity check of the given order on the leading
/// `window x window` block of the sequence's Toeplitz matrix. Terms with
/// indeterminates are judged coefficientwise.
pub fn is_polya_frequency_finite(s: &PolySequence, window: usize, order: usize) -> Result<TpReport, SeqError> {
    Ok(is_tp_order(&toeplitz(&s.terms, window), order)?)
}

/// A negative minor `det(a_{shift+i-j})_{0<=i,j<order}` of the infinite
/// Toeplitz matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BandWitness {
    pub order: usize,
    pub shift: i64,
    pub minor: BigInt,
}

/// Searches the band minors `det(a_{shift+i-j})_{0<=i,j<k}`, `k <= max_order`,
/// of an integer sequence for a negative one.
///
/// Sequences close to having only real zeros can hide their first negative
/// minor at high order. Band minors are cheap there, where checking every
/// minor is not.
pub fn toeplitz_band_witness(s: &PolySequence, max_order: usize) -> Result<Option<BandWitness>, SeqError> {
    let a = s.integers()?;
    let len = a.len() as i64;
    let zero = BigInt::zero();
    let at = |i: i64| if (0..len).contains(&i) { a[i as usize].clone() } else { zero.clone() };
    for k in 1..=max_order {
        let ki = k as i64;
        let found = (1 - ki..=len + ki - 2).collect::<Vec<_>>().into_par_iter().find_map_first(|shift| {
            let m: Vec<Vec<BigInt>> = (0..ki).map(|i| (0..ki).map(|j| at(shift + i - j)).collect()).collect();
            let minor = bareiss_det(m);
            minor.is_negative().then_some(BandWitness { order: k, shift, minor })
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Highest band-minor order searched for finite integer sequences.
pub const BAND_ORDER: usize = 16;

/// Machine-readable summary of one sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceReport {
    pub sequence: Vec<String>,
    pub origin: String,
    pub pf: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<crate::matcore::TpWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub band_witness: Option<BandWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub real_roots: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub log_concavity_depth: Option<usize>,
}

/// Toeplitz check, plus the band-minor search, root count and log-concavity
/// depth for integer sequences. `finite` says whether the terms are the whole
/// sequence rather than a prefix of a longer one.
pub fn sequence_report(
    s: &PolySequence,
    window: usize,
    order: usize,
    r: usize,
    finite: bool,
) -> Result<SequenceReport, SeqError> {
    let tp = is_polya_frequency_finite(s, window, order)?;
    let numeric = s.is_numeric();
    let nonzero = s.terms.iter().any(|p| !p.is_zero());
    let (band_witness, real_roots) = if numeric && finite && nonzero {
        (toeplitz_band_witness(s, BAND_ORDER)?, Some(pf_via_real_roots(s)?))
    } else {
        (None, None)
    };
    let log_concavity_depth = if numeric {
        let lc = if finite { is_r_log_concave(s, r)? } else { is_r_log_concave_prefix(s, r)? };
        Some(lc.depth)
    } else {
        None
    };
    Ok(SequenceReport {
        sequence: s.terms.iter().map(|p| p.to_string()).collect(),
        origin: s.origin.clone(),
        pf: tp.passed && band_witness.is_none(),
        witness: tp.witness,
        band_witness,
        real_roots,
        log_concavity_depth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathmodel::{build_matrix_rec1, WeightRule, WeightScheme};
    use crate::polyalg::poly;

    fn scheme(t: usize, a: &[&str], b: &str) -> WeightScheme {
        WeightScheme::new(t, a.iter().map(|s| WeightRule::constant(poly(s))).collect(), WeightRule::constant(poly(b)))
            .unwrap()
    }

    fn ints(s: &PolySequence) -> Vec<i64> {
        s.terms.iter().map(|p| p.to_string().parse().unwrap()).collect()
    }

    #[test]
    fn extraction() {
        let pascal = build_matrix_rec1(&scheme(1, &["1"], "1"), 8, 8).unwrap();
        assert_eq!(ints(&extract(&pascal, Selection::Row { n: 3 }, 4).unwrap()), [1, 3, 3, 1]);
        let d = Selection::Diagonal { n: 1, k: 0, delta: 1, sigma: 2 };
        assert_eq!(ints(&extract(&pascal, d, 3).unwrap()), [1, 1, 0]);
        assert!(d.is_admissible_diagonal());
        let delannoy = build_matrix_rec1(&scheme(1, &["1", "1"], "1"), 8, 8).unwrap();
        assert_eq!(ints(&extract(&delannoy, Selection::Column { k: 1 }, 4).unwrap()), [1, 3, 5, 7]);
        assert!(matches!(extract(&pascal, Selection::Row { n: 9 }, 2), Err(SeqError::OutOfWindow(_))));
    }

    #[test]
    fn transposed_rows_skip_forced_zeros() {
        let s = scheme(1, &["1"], "1");
        let tri = crate::pathmodel::build_oriented(&s, Orientation::T, 6, 6).unwrap();
        assert_eq!(ints(&extract(&tri, Selection::Row { n: 2 }, 3).unwrap()), [1, 3, 6]);
        assert_eq!(ints(&extract(&tri, Selection::Column { k: 4 }, 5).unwrap()), [1, 4, 6, 4, 1]);
    }

    #[test]
    fn toeplitz_checks() {
        assert!(is_polya_frequency_finite(&PolySequence::from_ints(&[1, 2, 1]), 4, 3).unwrap().passed);
        let r = is_polya_frequency_finite(&PolySequence::from_ints(&[1, 0, 1]), 3, 2).unwrap();
        assert!(!r.passed);
        assert_eq!(r.witness.unwrap().minor, poly("-1"));
        let r = is_polya_frequency_finite(&PolySequence::from_ints(&[1, 1, 1]), 4, 3).unwrap();
        assert!(!r.passed);
        let w = r.witness.unwrap();
        assert_eq!(w.spec.order(), 3);
        assert_eq!(w.minor, poly("-1"));
    }

    #[test]
    fn symbolic_toeplitz() {
        let s = PolySequence::new(vec![poly("1"), poly("x + y"), poly("x*y")], "literal");
        assert!(is_polya_frequency_finite(&s, 5, 3).unwrap().passed);
        let rep = sequence_report(&s, 5, 3, 2, true).unwrap();
        assert_eq!(rep.log_concavity_depth, None);
        assert_eq!(rep.real_roots, None);
    }

    #[test]
    fn band_minors_reach_past_the_window() {
        // (1 + z)(2 + 3z + 2z^2): the first negative band minor has order 7
        let s = PolySequence::from_ints(&[2, 5, 5, 2]);
        assert!(is_polya_frequency_finite(&s, 8, 6).unwrap().passed);
        let w = toeplitz_band_witness(&s, BAND_ORDER).unwrap().unwrap();
        assert_eq!((w.order, w.shift), (7, 1));
        assert!(w.minor < BigInt::zero());
        assert_eq!(toeplitz_band_witness(&PolySequence::from_ints(&[1, 3, 3, 1]), BAND_ORDER).unwrap(), None);
        let rep = sequence_report(&s, 8, 6, 1, true).unwrap();
        assert!(!rep.pf);
        assert_eq!(rep.real_roots, Some(false));
    }

    #[test]
    fn report_json() {
        let s = PolySequence::from_ints(&[1, 3, 3, 1]);
        let rep = sequence_report(&s, 5, 4, 3, true).unwrap();
        let j = serde_json::to_value(&rep).unwrap();
        assert_eq!(j["pf"], true);
        assert_eq!(j["log_concavity_depth"], 3);
        assert_eq!(j["sequence"][1], "3");
        assert!(j.get("witness").is_none());
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]
        #[test]
        fn toeplitz_and_roots_agree(v in prop::collection::vec(0i64..6, 1..=6)) {
            prop_assume!(v.iter().any(|&c| c != 0));
            let s = PolySequence::from_ints(&v);
            let window = is_polya_frequency_finite(&s, v.len() + 4, 6).unwrap().passed;
            let band = toeplitz_band_witness(&s, BAND_ORDER).unwrap();
            let rr = pf_via_real_roots(&s).unwrap();
            // a real-rooted sequence passes at every budget
            prop_assert!(!rr || (window && band.is_none()), "{:?}", v);
            prop_assert_eq!(window && band.is_none(), rr, "{:?}", v);
            if rr {
                prop_assert!(is_r_log_concave(&s, 1).unwrap().holds_to(1));
            }
        }
    }
}
