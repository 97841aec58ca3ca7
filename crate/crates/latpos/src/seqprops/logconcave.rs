use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{PolySequence, SeqError};
use crate::polyalg::MultiPoly;

/// `b_0 = a_0^2`, `b_{k+1} = a_{k+1}^2 - a_k a_{k+2}`, terms past the end read as zero.
pub fn l_operator(s: &PolySequence) -> PolySequence {
    let a = &s.terms;
    let zero = MultiPoly::zero();
    let at = |i: usize| a.get(i).unwrap_or(&zero);
    let terms =
        (0..a.len()).map(|k| if k == 0 { at(0) * at(0) } else { at(k) * at(k) - at(k - 1) * at(k + 1) }).collect();
    PolySequence::new(terms, format!("L({})", s.origin))
}

fn l_ints(a: &[BigInt]) -> Vec<BigInt> {
    let zero = BigInt::zero();
    let at = |i: usize| a.get(i).unwrap_or(&zero);
    (0..a.len()).map(|k| if k == 0 { at(0) * at(0) } else { at(k) * at(k) - at(k - 1) * at(k + 1) }).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LogConcavity {
    /// Number of leading iterates found nonnegative, at most the budget.
    pub depth: usize,
    /// First iterate with a negative term.
    pub failed_at: Option<usize>,
}

impl LogConcavity {
    pub fn holds_to(&self, r: usize) -> bool {
        self.depth >= r
    }
}

fn iterate(mut a: Vec<BigInt>, r: usize, exact: impl Fn(usize, usize) -> usize) -> LogConcavity {
    let len = a.len();
    for j in 1..=r {
        a = l_ints(&a);
        if a[..exact(len, j)].iter().any(|x| x.is_negative()) {
            return LogConcavity { depth: j - 1, failed_at: Some(j) };
        }
    }
    LogConcavity { depth: r, failed_at: None }
}

/// Applies the L-operator up to `r` times to a finite sequence and reports how
/// many iterates stay nonnegative.
pub fn is_r_log_concave(s: &PolySequence, r: usize) -> Result<LogConcavity, SeqError> {
    Ok(iterate(s.integers()?, r, |len, _| len))
}

/// As [`is_r_log_concave`] for the known prefix of a longer sequence: the
/// `j`-th iterate is only trusted below index `len - j`.
pub fn is_r_log_concave_prefix(s: &PolySequence, r: usize) -> Result<LogConcavity, SeqError> {
    Ok(iterate(s.integers()?, r, |len, j| len.saturating_sub(j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::poly;

    fn seq(v: &[i64]) -> PolySequence {
        PolySequence::from_ints(v)
    }

    #[test]
    fn operator_values() {
        assert_eq!(l_operator(&seq(&[1, 3, 3, 1])).terms, seq(&[1, 6, 6, 1]).terms);
        assert_eq!(l_operator(&seq(&[1])).terms, seq(&[1]).terms);
        assert_eq!(l_operator(&seq(&[0, 0, 0])).terms, seq(&[0, 0, 0]).terms);
        let s = PolySequence::new(vec![poly("x"), poly("y")], "literal");
        assert_eq!(l_operator(&s).terms, vec![poly("x^2"), poly("y^2")]);
    }

    #[test]
    fn depths() {
        assert!(is_r_log_concave(&seq(&[1, 3, 3, 1]), 3).unwrap().holds_to(3));
        let r = is_r_log_concave(&seq(&[1, 1, 2]), 1).unwrap();
        assert_eq!(r, LogConcavity { depth: 0, failed_at: Some(1) });
        assert!(is_r_log_concave(&seq(&[7]), 10).unwrap().holds_to(10));
        // 1, 2, 3: log-concave once, not twice
        let r = is_r_log_concave(&seq(&[1, 2, 3]), 3).unwrap();
        assert_eq!(r, LogConcavity { depth: 1, failed_at: Some(2) });
        let r = is_r_log_concave(&seq(&[1, 4, 6, 4, 1]), 5).unwrap();
        assert!(r.holds_to(5));
    }

    #[test]
    fn symbolic_rejected() {
        let s = PolySequence::new(vec![poly("x")], "literal");
        assert!(matches!(is_r_log_concave(&s, 1), Err(SeqError::SymbolicTermsUnsupported(_))));
    }

    #[test]
    fn prefixes_ignore_the_unknown_tail() {
        // 1, 2, 3, ... is infinitely log-concave; the cut-off sequence is not
        let naturals = seq(&[1, 2, 3, 4, 5]);
        assert_eq!(is_r_log_concave(&naturals, 5).unwrap().failed_at, Some(2));
        assert!(is_r_log_concave_prefix(&naturals, 5).unwrap().holds_to(5));
    }
}
