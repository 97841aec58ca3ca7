//! Named weight schemes for the classical triangles: Pascal, Delannoy,
//! Stirling and their relatives.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::pathmodel::{Orientation, WeightRule, WeightScheme, INDEX_VAR};
use crate::polyalg::{MultiPoly, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("no catalog entry named {0:?}")]
    UnknownName(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    /// Value used when the parameter is not given.
    pub default: &'static str,
    /// Integer value used by the test battery.
    pub numeric: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub orientation: Orientation,
    pub params: Vec<ParamSpec>,
    pub description: &'static str,
}

const fn p(name: &'static str, default: &'static str, numeric: &'static str) -> ParamSpec {
    ParamSpec { name, default, numeric }
}

/// Every entry, in listing order.
pub fn entries() -> Vec<CatalogEntry> {
    use Orientation::{M, T};
    let e = |name, orientation, params, description| CatalogEntry { name, orientation, params, description };
    vec![
        e("pascal_triangle", M, vec![], "binomial coefficients C(n,k)"),
        e("pascal_square", M, vec![], "binomial coefficients C(n+k,k) in a square array"),
        e("delannoy_square", M, vec![], "Delannoy numbers D(n,k), steps E, N and NE"),
        e("delannoy_triangle", M, vec![], "Delannoy numbers in triangle form, d(n,k) = D(n-k,k)"),
        e(
            "brenti",
            M,
            vec![p("t", "1", "1"), p("x", "@x", "n + 1"), p("y", "@y", "2"), p("z", "@z", "n")],
            "recursive matrix A(n,k) = z_n A(n-t,k-1) + y_n A(n-1-t,k-1) + x_n A(n-1,k)",
        ),
        e(
            "delannoy_like",
            M,
            vec![p("e", "e", "2"), p("h", "h", "3")],
            "d(n,k) = d(n-1,k-1) + h d(n-2,k-1) + e d(n-1,k)",
        ),
        e(
            "generalized_delannoy",
            M,
            vec![p("a", "a", "1"), p("b", "b", "2"), p("c", "c", "3")],
            "weighted Delannoy paths with steps (1,0), (0,1), (1,1) of weights a, b, c",
        ),
        e("stirling1", M, vec![], "unsigned Stirling numbers of the first kind c(n,k)"),
        e("legendre_stirling1", M, vec![], "Legendre-Stirling numbers of the first kind"),
        e("jacobi_stirling1", M, vec![p("z", "z", "1")], "Jacobi-Stirling numbers of the first kind Jc(n,k)(z)"),
        e("stirling2", T, vec![], "Stirling numbers of the second kind S(n,k)"),
        e(
            "gen_jacobi_stirling2",
            T,
            vec![
                p("a1", "1", "1"),
                p("a2", "z", "1"),
                p("a3", "0", "0"),
                p("b1", "0", "0"),
                p("b2", "0", "0"),
                p("b3", "1", "1"),
            ],
            "J(n,k) = (b1 k^2 + b2 k + b3) J(n-1,k-1) + (a1 k^2 + a2 k + a3) J(n-1,k)",
        ),
    ]
}

pub fn entry(name: &str) -> Result<CatalogEntry, CatalogError> {
    entries().into_iter().find(|e| e.name == name).ok_or_else(|| CatalogError::UnknownName(name.to_string()))
}

/// The battery's integer parameter values for `name`.
pub fn numeric_params(name: &str) -> Result<BTreeMap<String, String>, CatalogError> {
    Ok(entry(name)?.params.iter().map(|p| (p.name.to_string(), p.numeric.to_string())).collect())
}

fn index_var() -> Var {
    Var::new(INDEX_VAR).expect("reserved name is valid")
}

/// `@x` is the sequence `x0, x1, ...`; anything else is a polynomial, read as
/// a function of the index when it mentions `n`.
fn parse_rule(name: &str, text: &str) -> Result<WeightRule, CatalogError> {
    if let Some(prefix) = text.trim().strip_prefix('@') {
        Var::new(&format!("{prefix}0"))
            .map_err(|_| CatalogError::BadParameters(format!("{name}: bad prefix {prefix:?}")))?;
        return Ok(WeightRule::indexed(prefix));
    }
    let poly = parse_poly(name, text)?;
    if poly.degree_in(index_var()) > 0 {
        Ok(WeightRule::poly_in_n(poly))
    } else {
        Ok(WeightRule::constant(poly))
    }
}

fn parse_poly(name: &str, text: &str) -> Result<MultiPoly, CatalogError> {
    text.parse().map_err(|e| CatalogError::BadParameters(format!("{name} = {text:?}: {e}")))
}

/// A parameter that must not depend on the index.
fn parse_const(name: &str, text: &str) -> Result<MultiPoly, CatalogError> {
    let poly = parse_poly(name, text)?;
    if poly.degree_in(index_var()) > 0 {
        return Err(CatalogError::BadParameters(format!("{name} may not mention {INDEX_VAR}")));
    }
    Ok(poly)
}

fn n_poly(text: &str) -> MultiPoly {
    text.parse().expect("literal polynomial")
}

/// Builds the named scheme; parameters not given take their defaults.
pub fn catalog_scheme(
    name: &str,
    params: &BTreeMap<String, String>,
) -> Result<(WeightScheme, Orientation), CatalogError> {
    let entry = entry(name)?;
    for key in params.keys() {
        if !entry.params.iter().any(|p| p.name == key) {
            return Err(CatalogError::BadParameters(format!("{name} has no parameter {key:?}")));
        }
    }
    let get = |key: &str| -> &str {
        params
            .get(key)
            .map(String::as_str)
            .unwrap_or_else(|| entry.params.iter().find(|p| p.name == key).expect("declared parameter").default)
    };
    let c = |v: i64| WeightRule::constant(MultiPoly::constant(v));
    let scheme = |t: usize, a: Vec<WeightRule>, b: WeightRule| WeightScheme::new(t, a, b).expect("nonempty a");
    let s = match name {
        "pascal_triangle" => scheme(1, vec![c(1)], c(1)),
        "pascal_square" => scheme(0, vec![c(1)], c(1)),
        "delannoy_square" => scheme(0, vec![c(1), c(1)], c(1)),
        "delannoy_triangle" => scheme(1, vec![c(1), c(1)], c(1)),
        "brenti" => {
            let t: usize = get("t")
                .trim()
                .parse()
                .map_err(|_| CatalogError::BadParameters(format!("t = {:?} is not a count", get("t"))))?;
            let z = parse_rule("z", get("z"))?;
            let y = parse_rule("y", get("y"))?;
            let x = parse_rule("x", get("x"))?;
            scheme(t, vec![z, y], x)
        }
        "delannoy_like" => {
            let e = parse_const("e", get("e"))?;
            let h = parse_const("h", get("h"))?;
            let b = WeightRule::table(vec![MultiPoly::one()], 1, Some(WeightRule::constant(e)));
            scheme(1, vec![c(1), WeightRule::constant(h)], b)
        }
        "generalized_delannoy" => {
            let a = parse_const("a", get("a"))?;
            let b = parse_const("b", get("b"))?;
            let cc = parse_const("c", get("c"))?;
            scheme(1, vec![WeightRule::constant(a), WeightRule::constant(cc)], WeightRule::constant(b))
        }
        "stirling1" => scheme(1, vec![c(1), c(0)], WeightRule::poly_in_n(n_poly("n - 1"))),
        "legendre_stirling1" => scheme(1, vec![c(1), c(0)], WeightRule::poly_in_n(n_poly("n^2 - n"))),
        "jacobi_stirling1" => {
            let z = parse_const("z", get("z"))?;
            let nm1 = n_poly("n - 1");
            scheme(1, vec![c(1), c(0)], WeightRule::poly_in_n(&nm1 * &(&nm1 + &z)))
        }
        "stirling2" => scheme(0, vec![WeightRule::poly_in_n(n_poly("n")), c(1)], c(0)),
        "gen_jacobi_stirling2" => {
            let quad = |k1: &str, k2: &str, k3: &str| -> Result<WeightRule, CatalogError> {
                let (p1, p2, p3) = (parse_const(k1, get(k1))?, parse_const(k2, get(k2))?, parse_const(k3, get(k3))?);
                let n = MultiPoly::var(index_var());
                Ok(WeightRule::poly_in_n(&(&p1 * &n.pow(2)) + &(&(&p2 * &n) + &p3)))
            };
            scheme(0, vec![quad("a1", "a2", "a3")?, quad("b1", "b2", "b3")?], c(0))
        }
        _ => unreachable!("every entry is handled"),
    };
    Ok((s, entry.orientation))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathmodel::{build_oriented, matrix_entry_oracle};
    use crate::polyalg::poly;

    fn none() -> BTreeMap<String, String> {
        BTreeMap::new()
    }

    fn with(kv: &[(&str, &str)]) -> BTreeMap<String, String> {
        kv.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
    }

    fn table(name: &str, params: &BTreeMap<String, String>, size: usize) -> Vec<Vec<MultiPoly>> {
        let (s, o) = catalog_scheme(name, params).unwrap();
        let tri = build_oriented(&s, o, size + 1, size + 1).unwrap();
        (0..=size).map(|n| tri.entries.row(n).to_vec()).collect()
    }

    /// Fills `rows x cols` from a recurrence that sees earlier entries and
    /// reads zero outside the quadrant.
    fn literal(size: usize, f: impl Fn(&dyn Fn(i64, i64) -> MultiPoly, i64, i64) -> MultiPoly) -> Vec<Vec<MultiPoly>> {
        let mut m: Vec<Vec<MultiPoly>> = vec![vec![MultiPoly::zero(); size + 1]; size + 1];
        for n in 0..=size {
            for k in 0..=size {
                let v = {
                    let get = |i: i64, j: i64| -> MultiPoly {
                        if i < 0 || j < 0 {
                            MultiPoly::zero()
                        } else {
                            m[i as usize][j as usize].clone()
                        }
                    };
                    f(&get, n as i64, k as i64)
                };
                m[n][k] = v;
            }
        }
        m
    }

    fn k(v: i64) -> MultiPoly {
        MultiPoly::constant(v)
    }

    #[test]
    fn pascal_triangle_recurrence() {
        let want = literal(9, |m, n, k| match (n, k) {
            (0, 0) => self::k(1),
            _ => m(n - 1, k - 1) + m(n - 1, k),
        });
        assert_eq!(table("pascal_triangle", &none(), 9), want);
    }

    #[test]
    fn pascal_square_recurrence() {
        let want = literal(8, |m, n, k| match (n, k) {
            (0, _) | (_, 0) => self::k(1),
            _ => m(n, k - 1) + m(n - 1, k),
        });
        assert_eq!(table("pascal_square", &none(), 8), want);
    }

    #[test]
    fn delannoy_recurrences() {
        let sq = literal(8, |m, n, k| match (n, k) {
            (0, _) | (_, 0) => self::k(1),
            _ => m(n, k - 1) + m(n - 1, k - 1) + m(n - 1, k),
        });
        let got = table("delannoy_square", &none(), 8);
        assert_eq!(got, sq);
        assert_eq!(got[2][2], k(13));
        assert_eq!(got[3][3], k(63));
        let tri = literal(9, |m, n, k| match (n, k) {
            (0, 0) => self::k(1),
            _ => m(n - 2, k - 1) + m(n - 1, k - 1) + m(n - 1, k),
        });
        let got = table("delannoy_triangle", &none(), 9);
        assert_eq!(got, tri);
        assert_eq!(got[4][2], k(13));
    }

    #[test]
    fn brenti_recurrence() {
        for t in 0..=2i64 {
            let params = with(&[("t", &t.to_string())]);
            let v = |s: &str, i: i64| poly(&format!("{s}{i}"));
            let want = literal(5, |m, n, k| {
                if n < t {
                    // heights below t are reached by vertical steps only
                    return if k == 0 { (1..=n).map(|i| v("x", i)).product() } else { MultiPoly::zero() };
                }
                if t == 0 && n == 0 {
                    return v("z", 0).pow(k as u32);
                }
                v("z", n) * m(n - t, k - 1) + v("y", n) * m(n - 1 - t, k - 1) + v("x", n) * m(n - 1, k)
            });
            assert_eq!(table("brenti", &params, 5), want, "t={t}");
        }
        let got = table("brenti", &with(&[("t", "0")]), 2);
        assert_eq!(got[1][1], poly("z1*x1 + y1 + x1*z0"));
    }

    #[test]
    fn delannoy_like_recurrence() {
        let want = literal(8, |m, n, k| match (n, k) {
            (0, 0) | (1, 0) => self::k(1),
            _ => m(n - 1, k - 1) + poly("h") * m(n - 2, k - 1) + poly("e") * m(n - 1, k),
        });
        assert_eq!(table("delannoy_like", &none(), 8), want);
        let id = |a: &str, b: &str| table("delannoy_like", &with(&[("e", a), ("h", b)]), 8);
        assert_eq!(id("1", "0"), table("pascal_triangle", &none(), 8));
        assert_eq!(id("1", "1"), table("delannoy_triangle", &none(), 8));
    }

    #[test]
    fn generalized_delannoy_recurrence() {
        let want = literal(8, |m, n, k| match (n, k) {
            (0, 0) => self::k(1),
            _ => poly("a") * m(n - 1, k - 1) + poly("c") * m(n - 2, k - 1) + poly("b") * m(n - 1, k),
        });
        assert_eq!(table("generalized_delannoy", &none(), 8), want);
    }

    #[test]
    fn stirling_first_kind_family() {
        let c = literal(8, |m, n, k| match (n, k) {
            (0, 0) => self::k(1),
            _ => m(n - 1, k - 1) + self::k(n - 1) * m(n - 1, k),
        });
        let got = table("stirling1", &none(), 8);
        assert_eq!(got, c);
        assert_eq!(got[4][2], k(11));

        let ps = literal(7, |m, n, k| match (n, k) {
            (0, 0) => self::k(1),
            _ => m(n - 1, k - 1) + self::k(n * (n - 1)) * m(n - 1, k),
        });
        let got = table("legendre_stirling1", &none(), 7);
        assert_eq!(got, ps);
        assert_eq!(got[3][..4], [k(0), k(12), k(8), k(1)]);

        let jc = literal(6, |m, n, k| match (n, k) {
            (0, 0) => self::k(1),
            _ => m(n - 1, k - 1) + self::k(n - 1) * (self::k(n - 1) + poly("z")) * m(n - 1, k),
        });
        let got = table("jacobi_stirling1", &none(), 6);
        assert_eq!(got, jc);
        assert_eq!(got[3][2], poly("5 + 3*z"));
    }

    #[test]
    fn stirling_second_kind_family() {
        let s = literal(8, |m, n, k| match (n, k) {
            (0, 0) => self::k(1),
            _ => m(n - 1, k - 1) + self::k(k) * m(n - 1, k),
        });
        let got = table("stirling2", &none(), 8);
        assert_eq!(got, s);
        assert_eq!(got[4][2], k(7));

        let js = literal(6, |m, n, k| match (n, k) {
            (0, 0) => self::k(1),
            _ => m(n - 1, k - 1) + self::k(k) * (self::k(k) + poly("z")) * m(n - 1, k),
        });
        assert_eq!(table("gen_jacobi_stirling2", &none(), 6), js);

        let params = with(&[("a1", "2"), ("a2", "1"), ("a3", "3"), ("b1", "1"), ("b2", "0"), ("b3", "2")]);
        let gen = literal(6, |m, n, k| match (n, k) {
            (0, 0) => self::k(1),
            _ => self::k(k * k + 2) * m(n - 1, k - 1) + self::k(2 * k * k + k + 3) * m(n - 1, k),
        });
        assert_eq!(table("gen_jacobi_stirling2", &params, 6), gen);
    }

    #[test]
    fn jacobi_stirling_orthogonality() {
        for z in 0..=2 {
            let zs = z.to_string();
            let js = table("gen_jacobi_stirling2", &with(&[("a2", &zs)]), 5);
            let jc = table("jacobi_stirling1", &with(&[("z", &zs)]), 5);
            for i in 0..=5 {
                for j in 0..=5 {
                    let mut acc = MultiPoly::zero();
                    for kk in 0..=5usize {
                        let term = &js[i][kk] * &jc[kk][j];
                        if (kk + j) % 2 == 0 {
                            acc += term;
                        } else {
                            acc -= &term;
                        }
                    }
                    assert_eq!(acc, k((i == j) as i64), "z={z} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn stirling1_by_counting_permutations() {
        // permutations of [4] with 2 cycles
        fn cycles(p: &[usize]) -> usize {
            let mut seen = vec![false; p.len()];
            let mut c = 0;
            for s in 0..p.len() {
                if !seen[s] {
                    c += 1;
                    let mut i = s;
                    while !seen[i] {
                        seen[i] = true;
                        i = p[i];
                    }
                }
            }
            c
        }
        let mut count = 0;
        let mut p = [0, 1, 2, 3];
        fn heap(k: usize, p: &mut [usize; 4], f: &mut dyn FnMut(&[usize])) {
            if k == 1 {
                f(p);
                return;
            }
            for i in 0..k {
                heap(k - 1, p, f);
                let j = if k % 2 == 0 { i } else { 0 };
                p.swap(j, k - 1);
            }
        }
        heap(4, &mut p, &mut |q| {
            if cycles(q) == 2 {
                count += 1;
            }
        });
        assert_eq!(count, 11);
        let (s, _) = catalog_scheme("stirling1", &none()).unwrap();
        assert_eq!(matrix_entry_oracle(&s, 4, 2).unwrap(), k(11));
    }

    #[test]
    fn errors_and_listing() {
        assert_eq!(catalog_scheme("nope", &none()).unwrap_err(), CatalogError::UnknownName("nope".into()));
        assert!(matches!(catalog_scheme("pascal_triangle", &with(&[("q", "1")])), Err(CatalogError::BadParameters(_))));
        assert!(matches!(catalog_scheme("delannoy_like", &with(&[("e", "n")])), Err(CatalogError::BadParameters(_))));
        assert!(matches!(catalog_scheme("brenti", &with(&[("t", "-1")])), Err(CatalogError::BadParameters(_))));
        assert_eq!(entries().len(), 12);
        for e in entries() {
            let (s, _) = catalog_scheme(e.name, &numeric_params(e.name).unwrap()).unwrap();
            s.check_shape().unwrap();
            s.check_nonnegative(12).unwrap();
            let t = s.tabulate(12).unwrap();
            assert!(t.b.iter().chain(t.a.iter().flatten()).all(MultiPoly::is_constant), "{}", e.name);
        }
    }
}
