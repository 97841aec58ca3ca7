use serde::{Deserialize, Serialize};

use super::{PathError, WeightRule};
use crate::polyalg::{MultiPoly, Var};

/// Step set and weights of a lattice-path model.
///
/// Steps are `(0,1)` and `(1, t+i)` for `0 <= i <= ell`. A vertical step
/// ending at height `n` weighs `b_n`; a step `(1, t+i)` ending at height `n`
/// weighs `a_n^(i)`, which is `a[i]` evaluated at `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightScheme {
    pub t: usize,
    pub ell: usize,
    pub a: Vec<WeightRule>,
    pub b: WeightRule,
}

/// Weights evaluated once for heights `0..=max_n`.
#[derive(Clone, Debug)]
pub struct WeightTable {
    pub t: usize,
    pub ell: usize,
    /// `a[n][i]` is `a_n^(i)`.
    pub a: Vec<Vec<MultiPoly>>,
    pub b: Vec<MultiPoly>,
}

impl WeightTable {
    pub fn max_n(&self) -> usize {
        self.b.len() - 1
    }

    /// `a_n^(i)`, zero for a negative height.
    pub fn a(&self, n: i64, i: usize) -> &MultiPoly {
        static ZERO: once_cell::sync::Lazy<MultiPoly> = once_cell::sync::Lazy::new(MultiPoly::zero);
        if n < 0 {
            return &ZERO;
        }
        &self.a[n as usize][i]
    }

    pub fn b(&self, n: i64) -> &MultiPoly {
        static ZERO: once_cell::sync::Lazy<MultiPoly> = once_cell::sync::Lazy::new(MultiPoly::zero);
        if n < 0 {
            return &ZERO;
        }
        &self.b[n as usize]
    }
}

impl WeightScheme {
    pub fn new(t: usize, a: Vec<WeightRule>, b: WeightRule) -> Result<WeightScheme, PathError> {
        if a.is_empty() {
            return Err(PathError::BadRule("at least one slanted step is required".into()));
        }
        Ok(WeightScheme { t, ell: a.len() - 1, a, b })
    }

    pub fn check_shape(&self) -> Result<(), PathError> {
        if self.a.len() != self.ell + 1 {
            return Err(PathError::BadRule(format!(
                "ell = {} needs {} slanted-step rules, found {}",
                self.ell,
                self.ell + 1,
                self.a.len()
            )));
        }
        Ok(())
    }

    pub fn a(&self, n: usize, i: usize) -> Result<MultiPoly, PathError> {
        self.a[i].eval(n as i64)
    }

    pub fn b(&self, n: usize) -> Result<MultiPoly, PathError> {
        self.b.eval(n as i64)
    }

    /// Evaluates every weight with height at most `max_n`.
    ///
    /// Weights that no path can use (`a_n^(i)` with `n < t + i`, and `b_0`) are
    /// still evaluated when the rule allows it, since the auxiliary matrices
    /// read some of them; a rule that fails there yields zero instead.
    pub fn tabulate(&self, max_n: usize) -> Result<WeightTable, PathError> {
        self.check_shape()?;
        let mut a = Vec::with_capacity(max_n + 1);
        for n in 0..=max_n {
            let mut row = Vec::with_capacity(self.ell + 1);
            for i in 0..=self.ell {
                let w = if n >= self.t + i { self.a(n, i)? } else { self.a(n, i).unwrap_or_default() };
                row.push(w);
            }
            a.push(row);
        }
        let mut b = Vec::with_capacity(max_n + 1);
        b.push(self.b(0).unwrap_or_default());
        for n in 1..=max_n {
            b.push(self.b(n)?);
        }
        Ok(WeightTable { t: self.t, ell: self.ell, a, b })
    }

    /// Checks that every weight a path up to height `max_n` can use has
    /// non-negative coefficients.
    pub fn check_nonnegative(&self, max_n: usize) -> Result<(), PathError> {
        let table = self.tabulate(max_n)?;
        for n in 0..=max_n {
            for i in 0..=self.ell {
                if n >= self.t + i {
                    witness(&table.a[n][i], format!("a^({i})"), n)?;
                }
            }
            if n >= 1 {
                witness(&table.b[n], "b".into(), n)?;
            }
        }
        Ok(())
    }

    /// True when every rule is index independent.
    pub fn constant_weights(&self) -> Option<(Vec<MultiPoly>, MultiPoly)> {
        let a = self.a.iter().map(WeightRule::as_constant).collect::<Option<Vec<_>>>()?;
        Some((a, self.b.as_constant()?))
    }

    pub fn substitute(&self, values: &[(Var, MultiPoly)]) -> WeightScheme {
        WeightScheme {
            t: self.t,
            ell: self.ell,
            a: self.a.iter().map(|r| r.substitute(values)).collect(),
            b: self.b.substitute(values),
        }
    }
}

fn witness(p: &MultiPoly, weight: String, index: usize) -> Result<(), PathError> {
    match p.negative_term() {
        None => Ok(()),
        Some((m, c)) => Err(PathError::NegativeWeight { weight, index, term: format!("{c}*{m}") }),
    }
}
