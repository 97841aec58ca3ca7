//! Riordan arrays and the closed forms available when every weight is
//! independent of the height.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pathmodel::{WeightRule, WeightScheme};
use crate::polyalg::{Monomial, MultiPoly, PolyError, PowerSeries, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RiordanError {
    #[error("coefficient z^{index} requested from a series truncated at z^{order}")]
    IndexBeyondTruncation { index: usize, order: usize },
    #[error("the scheme has no factor form")]
    MissingFactorForm,
    #[error("bad constant scheme: {0}")]
    BadScheme(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RiordanKind {
    /// `g_0 f_1 != 0` and `f_0 = 0`: lower triangular.
    Proper,
    /// `g_0 f_0 != 0`: every entry may be nonzero.
    Improper,
    /// Anything else, e.g. `f` starting at `z^2`.
    Neither,
}

/// `R(g, f)`: column `k` has generating function `g f^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiordanSpec {
    pub g: PowerSeries,
    pub f: PowerSeries,
    pub kind: RiordanKind,
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    g: Vec<MultiPoly>,
    f: Vec<MultiPoly>,
    #[serde(rename = "N")]
    n: usize,
    kind: RiordanKind,
}

impl RiordanSpec {
    /// Both series are cut to the shorter truncation.
    pub fn new(g: PowerSeries, f: PowerSeries) -> RiordanSpec {
        let order = g.order().min(f.order());
        let (g, f) = (g.truncate(order), f.truncate(order));
        let kind = classify(&g, &f);
        RiordanSpec { g, f, kind }
    }

    pub fn order(&self) -> usize {
        self.g.order()
    }

    /// Column `k` as a series, `g f^k`.
    pub fn column(&self, k: usize) -> PowerSeries {
        self.g.mul(&self.f.pow(k as u32))
    }

    /// Entries `(n, k)` for `n < rows`, `k < cols`.
    pub fn matrix(&self, rows: usize, cols: usize) -> Result<crate::matcore::PolyMatrix, RiordanError> {
        if rows > self.order() + 1 {
            return Err(RiordanError::IndexBeyondTruncation { index: rows - 1, order: self.order() });
        }
        let mut out = crate::matcore::PolyMatrix::zeros(rows, cols);
        let mut col = self.g.clone();
        for k in 0..cols {
            for n in 0..rows {
                out.set(n, k, col.coeffs()[n].clone());
            }
            col = col.mul(&self.f);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SpecJson {
            g: self.g.coeffs().to_vec(),
            f: self.f.coeffs().to_vec(),
            n: self.order(),
            kind: self.kind,
        })
        .expect("series serialize")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<RiordanSpec, RiordanError> {
        let s: SpecJson = serde_json::from_value(v.clone()).map_err(|e| RiordanError::BadScheme(e.to_string()))?;
        Ok(RiordanSpec::new(PowerSeries::from_coeffs(s.g, s.n), PowerSeries::from_coeffs(s.f, s.n)))
    }
}

fn classify(g: &PowerSeries, f: &PowerSeries) -> RiordanKind {
    let g0 = &g.coeffs()[0];
    let f0 = &f.coeffs()[0];
    let f1 = f.coeffs().get(1).cloned().unwrap_or_else(MultiPoly::zero);
    if g0.is_zero() {
        RiordanKind::Neither
    } else if !f0.is_zero() {
        RiordanKind::Improper
    } else if !f1.is_zero() {
        RiordanKind::Proper
    } else {
        RiordanKind::Neither
    }
}

/// `[z^n] g f^k`.
pub fn riordan_entry(spec: &RiordanSpec, n: usize, k: usize) -> Result<MultiPoly, RiordanError> {
    if n > spec.order() {
        return Err(RiordanError::IndexBeyondTruncation { index: n, order: spec.order() });
    }
    Ok(spec.column(k).coeffs()[n].clone())
}

/// A weight scheme whose weights do not depend on the height, with
/// `b_n = gamma` and optionally `sum a_i z^i = prod (alpha_j z + beta_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantScheme {
    pub t: usize,
    pub ell: usize,
    pub a: Vec<MultiPoly>,
    pub gamma: MultiPoly,
    pub factors: Option<(Vec<MultiPoly>, Vec<MultiPoly>)>,
}

impl ConstantScheme {
    pub fn new(t: usize, a: Vec<MultiPoly>, gamma: MultiPoly) -> Result<ConstantScheme, RiordanError> {
        if a.is_empty() {
            return Err(RiordanError::BadScheme("at least one slanted step is required".into()));
        }
        Ok(ConstantScheme { t, ell: a.len() - 1, a, gamma, factors: None })
    }

    /// Scheme with `a` the coefficients of `prod (alpha_j z + beta_j)`.
    pub fn from_factors(
        t: usize,
        alphas: Vec<MultiPoly>,
        betas: Vec<MultiPoly>,
        gamma: MultiPoly,
    ) -> Result<ConstantScheme, RiordanError> {
        if alphas.len() != betas.len() {
            return Err(RiordanError::BadScheme("need equally many alphas and betas".into()));
        }
        let a = crate::matcore::factor_product(&alphas, &betas);
        let mut cs = ConstantScheme::new(t, a, gamma)?;
        cs.factors = Some((alphas, betas));
        Ok(cs)
    }

    /// Attaches a factor form, checking that it expands to `a`.
    pub fn with_factors(
        mut self,
        alphas: Vec<MultiPoly>,
        betas: Vec<MultiPoly>,
    ) -> Result<ConstantScheme, RiordanError> {
        if alphas.len() != betas.len() || alphas.len() != self.ell {
            return Err(RiordanError::BadScheme(format!("need {} alphas and betas", self.ell)));
        }
        if crate::matcore::factor_product(&alphas, &betas) != self.a {
            return Err(RiordanError::BadScheme("factors do not multiply out to a".into()));
        }
        self.factors = Some((alphas, betas));
        Ok(self)
    }

    /// The constant scheme behind `scheme`, if its weights ignore the height.
    pub fn from_scheme(scheme: &WeightScheme) -> Option<ConstantScheme> {
        let (a, gamma) = scheme.constant_weights()?;
        ConstantScheme::new(scheme.t, a, gamma).ok()
    }

    pub fn to_scheme(&self) -> WeightScheme {
        WeightScheme {
            t: self.t,
            ell: self.ell,
            a: self.a.iter().cloned().map(WeightRule::constant).collect(),
            b: WeightRule::constant(self.gamma.clone()),
        }
    }

    /// `sum_i a_i z^(t+i)`.
    fn slant_series(&self, order: usize) -> PowerSeries {
        let mut c = vec![MultiPoly::zero(); self.t];
        c.extend(self.a.iter().cloned());
        PowerSeries::from_coeffs(c, order)
    }

    fn variables(&self) -> Vec<Var> {
        let mut v: Vec<Var> = self.a.iter().chain([&self.gamma]).flat_map(|p| p.variables()).collect();
        v.sort();
        v.dedup();
        v
    }
}

/// `R(1/(1 - gamma z), sum a_i z^(t+i) / (1 - gamma z))` truncated at `z^order`.
pub fn riordan_from_scheme(cs: &ConstantScheme, order: usize) -> RiordanSpec {
    let g = PowerSeries::geometric(&cs.gamma, order);
    let f = cs.slant_series(order).mul(&g);
    RiordanSpec::new(g, f)
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut r = BigInt::one();
    for j in 0..k {
        r = r * (n - j) / (j + 1);
    }
    r
}

/// Closed-form entry: the sum over `i + c_1 + ... + c_ell = n - t k` of
/// `C(k+i, i) gamma^i prod_j C(k, c_j) alpha_j^c_j beta_j^(k - c_j)`.
pub fn explicit_entry(cs: &ConstantScheme, n: usize, k: usize) -> Result<MultiPoly, RiordanError> {
    let (alphas, betas) = cs.factors.as_ref().ok_or(RiordanError::MissingFactorForm)?;
    let Some(rest) = n.checked_sub(cs.t * k) else {
        return Ok(MultiPoly::zero());
    };
    fn go(
        j: usize,
        left: usize,
        k: usize,
        acc: MultiPoly,
        alphas: &[MultiPoly],
        betas: &[MultiPoly],
        gamma: &MultiPoly,
        out: &mut MultiPoly,
    ) {
        if j == alphas.len() {
            let i = left;
            *out += &(acc * gamma.pow(i as u32)).scale(&binomial(k + i, i));
            return;
        }
        for c in 0..=k.min(left) {
            let term = alphas[j].pow(c as u32) * betas[j].pow((k - c) as u32);
            let term = term.scale(&binomial(k, c));
            go(j + 1, left - c, k, &acc * &term, alphas, betas, gamma, out);
        }
    }
    let mut out = MultiPoly::zero();
    go(0, rest, k, MultiPoly::one(), alphas, betas, &cs.gamma, &mut out);
    Ok(out)
}

/// `h_k = (sum a_i z^(t+i))^k / (1 - gamma z)^(k+1)`, truncated at `z^order`.
pub fn column_gf(cs: &ConstantScheme, k: usize, order: usize) -> PowerSeries {
    let g = PowerSeries::geometric(&cs.gamma, order);
    cs.slant_series(order).pow(k as u32).mul(&g.pow(k as u32 + 1))
}

/// `sum_k h_k`, the row-sum series, truncated at `z^order`. Needs `t >= 1`
/// so that only finitely many columns reach each row.
pub fn row_sum_series(cs: &ConstantScheme, order: usize) -> Result<PowerSeries, RiordanError> {
    if cs.t == 0 {
        return Err(RiordanError::BadScheme("row sums diverge when t = 0".into()));
    }
    let mut acc = PowerSeries::zero(order);
    for k in 0..=order / cs.t {
        acc = acc.add(&column_gf(cs, k, order));
    }
    Ok(acc)
}

/// Coefficient of `v^e` in `p`, as a polynomial in the other indeterminates.
fn coefficient_in(p: &MultiPoly, v: Var, e: u32) -> MultiPoly {
    p.terms()
        .filter_map(|(m, c)| {
            let (d, rest) = m.split(v);
            (d == e).then(|| MultiPoly::term(c.clone(), rest))
        })
        .sum()
}

fn fresh_var(taken: &[Var]) -> Var {
    (0..)
        .map(|i| if i == 0 { "q".to_string() } else { format!("q{i}") })
        .map(|s| Var::new(&s).expect("valid name"))
        .find(|v| !taken.contains(v))
        .expect("some name is free")
}

fn drop_high_q(s: &PowerSeries, q: Var, k_max: usize) -> PowerSeries {
    s.map_coeffs(|c| {
        c.terms()
            .filter(|(m, _)| m.exponent(q) as usize <= k_max)
            .map(|(m, c)| MultiPoly::term(c.clone(), m.clone()))
            .sum()
    })
}

/// Expands `1 / (1 - gamma z - q sum a_i z^(t+i))` in `z` and `q` and checks
/// that the coefficient of `z^n q^k` is the path-matrix entry `(n, k)` for all
/// `n <= n_max`, `k <= k_max`.
///
/// The expansion is the geometric series in `y = gamma z + q sum a_i z^(t+i)`;
/// every factor of `y` raises the degree in `z` or in `q`, so `n_max + k_max`
/// powers are enough even when `t = 0`.
pub fn bivariate_gf_check(cs: &ConstantScheme, n_max: usize, k_max: usize) -> Result<bool, RiordanError> {
    let q = fresh_var(&cs.variables());
    let qp = MultiPoly::term(BigInt::one(), Monomial::var(q));
    let y = PowerSeries::monomial(cs.gamma.clone(), 1, n_max).add(&cs.slant_series(n_max).scale(&qp));
    let mut series = PowerSeries::one(n_max);
    let mut power = PowerSeries::one(n_max);
    for _ in 0..n_max + k_max {
        power = drop_high_q(&power.mul(&y), q, k_max);
        series = series.add(&power);
    }
    let m = crate::pathmodel::build_matrix_rec1(&cs.to_scheme(), n_max, k_max)
        .map_err(|e| RiordanError::BadScheme(e.to_string()))?
        .entries;
    for n in 0..=n_max {
        let c = &series.coeffs()[n];
        for k in 0..=k_max {
            if &coefficient_in(c, q, k as u32) != m.get(n, k) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathmodel::build_matrix_rec1;
    use crate::polyalg::poly;
    use proptest::prelude::*;

    fn p(s: &str) -> MultiPoly {
        poly(s)
    }

    fn pascal_spec(order: usize) -> RiordanSpec {
        let g = PowerSeries::geometric(&p("1"), order);
        RiordanSpec::new(g.clone(), PowerSeries::monomial(p("1"), 1, order).mul(&g))
    }

    #[test]
    fn pascal_entry() {
        let s = pascal_spec(8);
        assert_eq!(s.kind, RiordanKind::Proper);
        assert_eq!(riordan_entry(&s, 4, 2).unwrap(), p("6"));
        assert_eq!(riordan_entry(&s, 0, 0).unwrap(), p("1"));
        assert_eq!(riordan_entry(&s, 9, 0).unwrap_err(), RiordanError::IndexBeyondTruncation { index: 9, order: 8 });
    }

    #[test]
    fn delannoy_triangle_entry() {
        let n = 6;
        let g = PowerSeries::geometric(&p("1"), n);
        let f = PowerSeries::from_coeffs(vec![p("0"), p("1"), p("1")], n).mul(&g);
        assert_eq!(riordan_entry(&RiordanSpec::new(g, f), 4, 2).unwrap(), p("13"));
    }

    #[test]
    fn specs_from_schemes() {
        let dw = ConstantScheme::new(1, vec![p("a"), p("c")], p("b")).unwrap();
        let s = riordan_from_scheme(&dw, 4);
        assert_eq!(s.g.coeffs(), &[p("1"), p("b"), p("b^2"), p("b^3"), p("b^4")]);
        assert_eq!(s.f.coeffs()[..3], [p("0"), p("a"), p("c + a*b")]);
        assert_eq!(s.kind, RiordanKind::Proper);

        let square = ConstantScheme::new(0, vec![p("1")], p("1")).unwrap();
        let s = riordan_from_scheme(&square, 3);
        assert_eq!(s.kind, RiordanKind::Improper);
        assert_eq!(s.f, PowerSeries::geometric(&p("1"), 3));

        let like = ConstantScheme::new(1, vec![p("1"), p("h")], p("e")).unwrap();
        let s = riordan_from_scheme(&like, 3);
        assert_eq!(s.f.coeffs(), &[p("0"), p("1"), p("h + e"), p("e*h + e^2")]);

        let sparse = ConstantScheme::new(2, vec![p("1")], p("1")).unwrap();
        assert_eq!(riordan_from_scheme(&sparse, 3).kind, RiordanKind::Neither);
    }

    #[test]
    fn explicit_sum_by_hand() {
        let cs = ConstantScheme::from_factors(1, vec![p("1")], vec![p("1")], p("1")).unwrap();
        assert_eq!(explicit_entry(&cs, 4, 2).unwrap(), p("13"));
        assert_eq!(explicit_entry(&cs, 1, 2).unwrap(), p("0"));
        let bare = ConstantScheme::new(1, vec![p("1")], p("1")).unwrap();
        assert_eq!(explicit_entry(&bare, 1, 1).unwrap_err(), RiordanError::MissingFactorForm);
    }

    #[test]
    fn factor_form_must_expand() {
        let cs = ConstantScheme::new(1, vec![p("2"), p("3"), p("1")], p("1")).unwrap();
        assert!(cs.clone().with_factors(vec![p("1"), p("1")], vec![p("1"), p("2")]).is_ok());
        assert!(cs.with_factors(vec![p("1"), p("1")], vec![p("1"), p("3")]).is_err());
    }

    #[test]
    fn generalized_delannoy_closed_form() {
        // sum_d C(n-d, k) C(k, d) a^(k-d) b^(n-k-d) c^d in triangle coordinates
        let cs = ConstantScheme::from_factors(1, vec![p("c")], vec![p("a")], p("b")).unwrap();
        for n in 0..=8usize {
            for k in 0..=n {
                let mut want = MultiPoly::zero();
                for d in 0..=k.min(n - k) {
                    let term = p("a").pow((k - d) as u32) * p("b").pow((n - k - d) as u32) * p("c").pow(d as u32);
                    want += &term.scale(&(binomial(n - d, k) * binomial(k, d)));
                }
                assert_eq!(explicit_entry(&cs, n, k).unwrap(), want, "({n},{k})");
            }
        }
    }

    #[test]
    fn column_series() {
        let cs = ConstantScheme::new(1, vec![p("1")], p("g")).unwrap();
        assert_eq!(column_gf(&cs, 0, 4), PowerSeries::geometric(&p("g"), 4));
        let pascal = ConstantScheme::new(1, vec![p("1")], p("1")).unwrap();
        assert_eq!(column_gf(&pascal, 2, 6).coeffs()[4], p("6"));
    }

    #[test]
    fn row_sums_of_generalized_delannoy() {
        let cs = ConstantScheme::new(1, vec![p("a"), p("c")], p("b")).unwrap();
        let phi = PowerSeries::from_coeffs(vec![p("1"), p("-a - b"), p("-c")], 8).invert().unwrap();
        assert_eq!(row_sum_series(&cs, 8).unwrap(), phi);
    }

    #[test]
    fn bivariate_expansions() {
        let pascal = ConstantScheme::new(1, vec![p("1")], p("1")).unwrap();
        assert!(bivariate_gf_check(&pascal, 6, 6).unwrap());
        let delannoy = ConstantScheme::new(1, vec![p("1"), p("1")], p("1")).unwrap();
        assert!(bivariate_gf_check(&delannoy, 8, 4).unwrap());
        let shift = ConstantScheme::new(1, vec![p("x")], p("0")).unwrap();
        assert!(bivariate_gf_check(&shift, 5, 5).unwrap());
        let m = build_matrix_rec1(&shift.to_scheme(), 4, 4).unwrap().entries;
        assert_eq!(m.get(3, 3), &p("x^3"));
        assert!(m.get(3, 2).is_zero());
        // the indeterminate q is already used by the scheme
        let clash = ConstantScheme::new(0, vec![p("q"), p("1")], p("2")).unwrap();
        assert!(bivariate_gf_check(&clash, 5, 4).unwrap());
    }

    #[test]
    fn wrong_matrix_is_caught() {
        // a series with the constant term altered no longer matches
        let cs = ConstantScheme::new(1, vec![p("1")], p("1")).unwrap();
        let q = fresh_var(&[]);
        let c = MultiPoly::term(BigInt::from(3), Monomial::var(q).mul(&Monomial::var(q)));
        assert_eq!(coefficient_in(&c, q, 2), p("3"));
        assert!(coefficient_in(&c, q, 1).is_zero());
        assert!(bivariate_gf_check(&cs, 4, 4).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let s = pascal_spec(5);
        let j = s.to_json();
        assert_eq!(j["N"], 5);
        assert_eq!(j["kind"], "proper");
        assert_eq!(RiordanSpec::from_json(&j).unwrap(), s);
    }

    #[test]
    fn proper_arrays_are_lower_triangular() {
        let cs = ConstantScheme::new(1, vec![p("2"), p("1")], p("3")).unwrap();
        let m = riordan_from_scheme(&cs, 7).matrix(8, 8).unwrap();
        for n in 0..8 {
            for k in n + 1..8 {
                assert!(m.get(n, k).is_zero());
            }
        }
        let sq = ConstantScheme::new(0, vec![p("1"), p("1")], p("1")).unwrap();
        let m = riordan_from_scheme(&sq, 7).matrix(8, 8).unwrap();
        assert!((0..8).all(|n| (0..8).all(|k| !m.get(n, k).is_zero())));
    }

    fn arb_constant() -> impl Strategy<Value = ConstantScheme> {
        (0usize..=2, prop::collection::vec((0i64..4, 0i64..4), 0..=3), 0i64..4).prop_map(|(t, f, g)| {
            let alphas: Vec<MultiPoly> = f.iter().map(|x| MultiPoly::constant(x.0)).collect();
            let betas: Vec<MultiPoly> = f.iter().map(|x| MultiPoly::constant(x.1 + 1)).collect();
            ConstantScheme::from_factors(t, alphas, betas, MultiPoly::constant(g)).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn three_routes_agree(cs in arb_constant()) {
            let n = 10;
            let m = build_matrix_rec1(&cs.to_scheme(), n, n).unwrap().entries;
            let r = riordan_from_scheme(&cs, n).matrix(n + 1, n + 1).unwrap();
            prop_assert_eq!(&r, &m);
            for i in 0..=n {
                for k in 0..=n {
                    prop_assert_eq!(&explicit_entry(&cs, i, k).unwrap(), m.get(i, k));
                }
            }
            prop_assert!(bivariate_gf_check(&cs, 8, 5).unwrap());
        }
    }
}
