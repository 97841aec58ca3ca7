use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{PolySequence, SeqError};

/// Dense polynomial, lowest degree first, no trailing zeros.
type RPoly = Vec<BigRational>;

fn trim(mut p: RPoly) -> RPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn derivative(p: &RPoly) -> RPoly {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(BigInt::from(i))).collect())
}

/// Remainder and quotient of `a / b`, `b` nonzero.
fn div_rem(a: &RPoly, b: &RPoly) -> (RPoly, RPoly) {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut q = vec![BigRational::zero(); a.len().saturating_sub(db).max(1)];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let c = r.last().unwrap() / &lead;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &c * bc;
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

/// Scaled by a positive constant so the leading coefficient is `+1` or `-1`.
fn normalize(p: RPoly) -> RPoly {
    match p.last() {
        None => p,
        Some(l) => {
            let s = l.abs();
            p.into_iter().map(|c| c / &s).collect()
        }
    }
}

fn gcd(a: &RPoly, b: &RPoly) -> RPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let (_, r) = div_rem(&a, &b);
        a = b;
        b = normalize(r);
    }
    normalize(a)
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

fn sign(c: &BigRational) -> i8 {
    if c.is_positive() {
        1
    } else if c.is_negative() {
        -1
    } else {
        0
    }
}

/// Number of distinct real roots of squarefree `p` in `(-inf, 0)`, `p(0) != 0`.
fn negative_roots(p: &RPoly) -> usize {
    let mut chain = vec![p.clone(), derivative(p)];
    while chain.last().is_some_and(|q| !q.is_empty()) {
        let n = chain.len();
        let (_, r) = div_rem(&chain[n - 2], &chain[n - 1]);
        chain.push(normalize(r).into_iter().map(|c| -c).collect());
    }
    chain.pop();
    let at_neg_inf = chain.iter().map(|q| {
        let s = sign(q.last().unwrap());
        if (q.len() - 1) % 2 == 1 {
            -s
        } else {
            s
        }
    });
    let at_zero = chain.iter().map(|q| sign(&q[0]));
    sign_changes(at_neg_inf) - sign_changes(at_zero)
}

/// Whether `sum s_k z^k` has positive leading coefficient and only real,
/// non-positive zeros, decided by Sturm sequences over the rationals.
pub fn pf_via_real_roots(s: &PolySequence) -> Result<bool, SeqError> {
    let p: RPoly = trim(s.integers()?.into_iter().map(BigRational::from_integer).collect());
    if p.is_empty() {
        return Err(SeqError::BadSequence("the zero sequence has no roots to count".into()));
    }
    if !p.last().unwrap().is_positive() {
        return Ok(false);
    }
    // zeros at the origin are non-positive; divide them out
    let first = p.iter().position(|c| !c.is_zero()).unwrap();
    let p: RPoly = p[first..].to_vec();
    if p.len() == 1 {
        return Ok(true);
    }
    let (squarefree, _) = div_rem(&p, &gcd(&p, &derivative(&p)));
    let squarefree = normalize(squarefree);
    let degree = squarefree.len() - 1;
    Ok(negative_roots(&squarefree) == degree)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pf(v: &[i64]) -> bool {
        pf_via_real_roots(&PolySequence::from_ints(v)).unwrap()
    }

    #[test]
    fn small_cases() {
        assert!(pf(&[1, 2, 1]));
        assert!(!pf(&[1, 1, 1]));
        assert!(pf(&[0, 1]));
        assert!(pf(&[3]));
        assert!(!pf(&[-1, -2, -1]));
        assert!(!pf(&[1, 0, 1]));
        assert!(pf(&[0, 0, 2, 3, 1, 0]));
        // (1+z)^3 (2+z)
        assert!(pf(&[2, 7, 9, 5, 1]));
        // (1+z)(1-z) has a positive root
        assert!(!pf(&[1, 0, -1]));
        // (z+1)^2 (z^2+1)
        assert!(!pf(&[1, 2, 2, 2, 1]));
        assert!(pf_via_real_roots(&PolySequence::from_ints(&[0, 0])).is_err());
    }

    #[test]
    fn repeated_roots() {
        // (1+z)^4 (3+z)^2
        assert!(pf(&[9, 42, 79, 76, 39, 10, 1]));
    }
}
