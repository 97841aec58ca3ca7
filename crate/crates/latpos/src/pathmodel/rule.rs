use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::PathError;
use crate::polyalg::{MultiPoly, Var};

/// Indeterminate that `PolyInN` rules use for the height index.
pub const INDEX_VAR: &str = "n";

/// A weight sequence `w_0, w_1, ...` given by a finite table or a closed form.
///
/// Negative indices evaluate to zero, matching the convention that the
/// path matrix vanishes outside the first quadrant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightRule {
    /// The same polynomial at every index.
    Constant {
        value: MultiPoly,
    },
    /// A polynomial in the reserved indeterminate `n`, evaluated at the index.
    PolyInN {
        expr: MultiPoly,
    },
    /// A fresh indeterminate per index: `x0, x1, ...` for prefix `x`.
    Indexed {
        prefix: String,
    },
    /// `entries[i]` is the weight at index `offset + i`; other indices use `default`.
    Table {
        entries: Vec<MultiPoly>,
        #[serde(default)]
        offset: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        default: Option<Box<WeightRule>>,
    },
    /// `w(n) = rule(n + by)`.
    Shift {
        rule: Box<WeightRule>,
        by: i64,
    },
    Sum {
        terms: Vec<WeightRule>,
    },
    Product {
        factors: Vec<WeightRule>,
    },
}

impl WeightRule {
    pub fn constant(value: impl Into<MultiPoly>) -> WeightRule {
        WeightRule::Constant { value: value.into() }
    }

    pub fn zero() -> WeightRule {
        WeightRule::constant(MultiPoly::zero())
    }

    pub fn poly_in_n(expr: MultiPoly) -> WeightRule {
        WeightRule::PolyInN { expr }
    }

    pub fn indexed(prefix: &str) -> WeightRule {
        WeightRule::Indexed { prefix: prefix.to_string() }
    }

    /// Table starting at index `offset`, falling back to `default` elsewhere.
    pub fn table(entries: Vec<MultiPoly>, offset: usize, default: Option<WeightRule>) -> WeightRule {
        WeightRule::Table { entries, offset, default: default.map(Box::new) }
    }

    pub fn shift(self, by: i64) -> WeightRule {
        WeightRule::Shift { rule: Box::new(self), by }
    }

    pub fn sum(terms: Vec<WeightRule>) -> WeightRule {
        WeightRule::Sum { terms }
    }

    pub fn product(factors: Vec<WeightRule>) -> WeightRule {
        WeightRule::Product { factors }
    }

    pub fn eval(&self, n: i64) -> Result<MultiPoly, PathError> {
        if n < 0 {
            return Ok(MultiPoly::zero());
        }
        match self {
            WeightRule::Constant { value } => Ok(value.clone()),
            WeightRule::PolyInN { expr } => {
                let v = Var::new(INDEX_VAR).expect("reserved name is valid");
                Ok(expr.substitute(v, &MultiPoly::constant(n)))
            }
            WeightRule::Indexed { prefix } => {
                let v = Var::new(&format!("{prefix}{n}"))
                    .map_err(|_| PathError::BadRule(format!("bad indexed prefix {prefix:?}")))?;
                Ok(MultiPoly::var(v))
            }
            WeightRule::Table { entries, offset, default } => {
                let idx = n as usize;
                if idx >= *offset && idx - offset < entries.len() {
                    return Ok(entries[idx - offset].clone());
                }
                match default {
                    Some(d) => d.eval(n),
                    None => Err(PathError::MissingWeight { index: idx }),
                }
            }
            WeightRule::Shift { rule, by } => rule.eval(n + by),
            WeightRule::Sum { terms } => {
                let mut acc = MultiPoly::zero();
                for t in terms {
                    acc += t.eval(n)?;
                }
                Ok(acc)
            }
            WeightRule::Product { factors } => {
                let mut acc = MultiPoly::one();
                for f in factors {
                    let v = f.eval(n)?;
                    if v.is_zero() {
                        return Ok(MultiPoly::zero());
                    }
                    acc = &acc * &v;
                }
                Ok(acc)
            }
        }
    }

    /// True when the rule gives the same value at every non-negative index.
    pub fn as_constant(&self) -> Option<MultiPoly> {
        match self {
            WeightRule::Constant { value } => Some(value.clone()),
            WeightRule::PolyInN { expr } => {
                let v = Var::new(INDEX_VAR).ok()?;
                (expr.degree_in(v).is_zero()).then(|| expr.clone())
            }
            WeightRule::Shift { rule, by } if *by >= 0 => rule.as_constant(),
            WeightRule::Sum { terms } => {
                let mut acc = MultiPoly::zero();
                for t in terms {
                    acc += t.as_constant()?;
                }
                Some(acc)
            }
            WeightRule::Product { factors } => {
                let mut acc = MultiPoly::one();
                for f in factors {
                    acc = &acc * &f.as_constant()?;
                }
                Some(acc)
            }
            _ => None,
        }
    }

    /// Replaces indeterminates inside the rule's polynomials.
    pub fn substitute(&self, values: &[(Var, MultiPoly)]) -> WeightRule {
        let sub = |p: &MultiPoly| p.substitute_all(values);
        match self {
            WeightRule::Constant { value } => WeightRule::Constant { value: sub(value) },
            WeightRule::PolyInN { expr } => WeightRule::PolyInN { expr: sub(expr) },
            WeightRule::Indexed { .. } => self.clone(),
            WeightRule::Table { entries, offset, default } => WeightRule::Table {
                entries: entries.iter().map(sub).collect(),
                offset: *offset,
                default: default.as_ref().map(|d| Box::new(d.substitute(values))),
            },
            WeightRule::Shift { rule, by } => WeightRule::Shift { rule: Box::new(rule.substitute(values)), by: *by },
            WeightRule::Sum { terms } => {
                WeightRule::Sum { terms: terms.iter().map(|t| t.substitute(values)).collect() }
            }
            WeightRule::Product { factors } => {
                WeightRule::Product { factors: factors.iter().map(|t| t.substitute(values)).collect() }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::poly;

    #[test]
    fn closed_forms() {
        let r = WeightRule::poly_in_n(poly("n^2 - n"));
        assert_eq!(r.eval(3).unwrap(), MultiPoly::constant(6));
        assert_eq!(r.eval(-1).unwrap(), MultiPoly::zero());
        assert_eq!(WeightRule::indexed("x").eval(4).unwrap(), poly("x4"));
    }

    #[test]
    fn table_with_default() {
        let r = WeightRule::table(vec![poly("1")], 1, Some(WeightRule::constant(poly("e"))));
        assert_eq!(r.eval(1).unwrap(), poly("1"));
        assert_eq!(r.eval(2).unwrap(), poly("e"));
        assert_eq!(r.eval(0).unwrap(), poly("e"));
        let bare = WeightRule::table(vec![poly("1")], 0, None);
        assert!(matches!(bare.eval(3), Err(PathError::MissingWeight { index: 3 })));
    }

    #[test]
    fn combinators() {
        let r = WeightRule::sum(vec![
            WeightRule::product(vec![WeightRule::indexed("a"), WeightRule::indexed("b")]),
            WeightRule::indexed("c").shift(-1),
        ]);
        assert_eq!(r.eval(2).unwrap(), poly("a2*b2 + c1"));
        assert_eq!(r.eval(0).unwrap(), poly("a0*b0"));
    }

    #[test]
    fn json_shape() {
        let r = WeightRule::table(vec![poly("1")], 1, Some(WeightRule::constant(poly("e"))));
        let j = serde_json::to_string(&r).unwrap();
        assert_eq!(j, r#"{"kind":"table","entries":["1"],"offset":1,"default":{"kind":"constant","value":"e"}}"#);
        let back: WeightRule = serde_json::from_str(&j).unwrap();
        assert_eq!(back, r);
    }
}
