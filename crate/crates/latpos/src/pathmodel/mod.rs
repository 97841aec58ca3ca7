//! Weighted lattice paths with steps `(0,1)` and `(1, t+i)`, and the matrix of
//! their weight sums built three independent ways.

mod paths;
mod recur;
mod rule;
mod scheme;

pub use paths::{
    enumerate_paths, matrix_entry_oracle, matrix_entry_oracle_capped, LatticePath, Step, WeightedPath, DEFAULT_PATH_CAP,
};
pub use recur::{
    build_matrix_rec1, build_matrix_rec2, build_oriented, build_transpose_rec, Orientation, TriangleTruncation,
};
pub use rule::{WeightRule, INDEX_VAR};
pub use scheme::{WeightScheme, WeightTable};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("more than {cap} paths")]
    CapExceeded { cap: u64 },
    #[error("no weight given for index {index}")]
    MissingWeight { index: usize },
    #[error("weight {weight} at index {index} has negative term {term}")]
    NegativeWeight { weight: String, index: usize, term: String },
    #[error("bad weight rule: {0}")]
    BadRule(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{poly, MultiPoly};
    use proptest::prelude::*;

    fn constant_scheme(t: usize, a: &[&str], b: &str) -> WeightScheme {
        WeightScheme::new(t, a.iter().map(|s| WeightRule::constant(poly(s))).collect(), WeightRule::constant(poly(b)))
            .unwrap()
    }

    #[test]
    fn two_paths_to_the_diagonal_point() {
        let s = constant_scheme(0, &["1"], "1");
        let paths = enumerate_paths(&s, 1, 1, DEFAULT_PATH_CAP).unwrap();
        assert_eq!(paths.len(), 2);
        assert_eq!(paths[0].path.steps, vec![Step::Up, Step::Slant(0)]);
        assert_eq!(paths[1].path.points(0), vec![(0, 0), (1, 0), (1, 1)]);
        assert_eq!(matrix_entry_oracle(&s, 1, 1).unwrap(), MultiPoly::constant(2));
    }

    #[test]
    fn symbolic_entry_by_hand() {
        // paths to (1,1): up then across, across then up, one diagonal step
        let s =
            WeightScheme::new(0, vec![WeightRule::indexed("z"), WeightRule::indexed("y")], WeightRule::indexed("x"))
                .unwrap();
        let expect = poly("z1*x1 + y1 + x1*z0");
        assert_eq!(matrix_entry_oracle(&s, 1, 1).unwrap(), expect);
        assert_eq!(build_matrix_rec1(&s, 1, 1).unwrap().get(1, 1).unwrap(), &expect);
        assert_eq!(build_matrix_rec2(&s, 1, 1).unwrap().get(1, 1).unwrap(), &expect);
    }

    #[test]
    fn cap_is_enforced() {
        let s = constant_scheme(0, &["1", "1"], "1");
        // central Delannoy number D(5,5) = 1683
        assert_eq!(matrix_entry_oracle_capped(&s, 5, 5, 1000), Err(PathError::CapExceeded { cap: 1000 }));
        assert_eq!(matrix_entry_oracle(&s, 5, 5).unwrap(), MultiPoly::constant(1683));
    }

    #[test]
    fn pascal_triangle_rows() {
        let s = constant_scheme(1, &["1"], "1");
        let m = build_matrix_rec1(&s, 6, 6).unwrap();
        // M_{n,k} = C(n,k)
        assert_eq!(m.get(6, 2).unwrap(), &MultiPoly::constant(15));
        assert_eq!(m.get(6, 3).unwrap(), &MultiPoly::constant(20));
        assert_eq!(m.get(2, 3).unwrap(), &MultiPoly::zero());
    }

    #[test]
    fn negative_weight_is_reported() {
        let s =
            WeightScheme::new(1, vec![WeightRule::constant(poly("1"))], WeightRule::poly_in_n(poly("n - 2"))).unwrap();
        let err = s.check_nonnegative(4).unwrap_err();
        assert_eq!(err, PathError::NegativeWeight { weight: "b".into(), index: 1, term: "-1*1".into() });
    }

    #[test]
    fn transpose_is_mirror_image() {
        let s =
            WeightScheme::new(1, vec![WeightRule::indexed("p"), WeightRule::indexed("q")], WeightRule::indexed("r"))
                .unwrap();
        let m = build_matrix_rec1(&s, 6, 5).unwrap();
        let t = build_transpose_rec(&s, 5, 6).unwrap();
        assert_eq!(t.entries, m.entries.transpose());
        assert_eq!(t.orientation, Orientation::T);
    }

    fn arb_rule() -> impl Strategy<Value = WeightRule> {
        prop_oneof![
            (0i64..4).prop_map(|c| WeightRule::constant(MultiPoly::constant(c))),
            (0i64..3, 0i64..3).prop_map(|(c, d)| WeightRule::poly_in_n(
                &MultiPoly::constant(c) + &(&MultiPoly::constant(d) * &poly("n"))
            )),
            (0usize..3).prop_map(|i| WeightRule::indexed(["u", "v", "w"][i])),
            (1i64..3).prop_map(|c| WeightRule::sum(vec![
                WeightRule::constant(poly("s")),
                WeightRule::constant(MultiPoly::constant(c))
            ])),
        ]
    }

    fn arb_scheme() -> impl Strategy<Value = WeightScheme> {
        (0usize..3, prop::collection::vec(arb_rule(), 1..4), arb_rule())
            .prop_map(|(t, a, b)| WeightScheme::new(t, a, b).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn recurrences_agree_with_path_sums(s in arb_scheme()) {
            let (nmax, kmax) = (5, 4);
            let r1 = build_matrix_rec1(&s, nmax, kmax).unwrap();
            let r2 = build_matrix_rec2(&s, nmax, kmax).unwrap();
            prop_assert_eq!(&r1.entries, &r2.entries);
            for n in 0..=nmax {
                for k in 0..=kmax {
                    prop_assert_eq!(r1.get(n, k).unwrap(), &matrix_entry_oracle(&s, n, k).unwrap());
                }
            }
        }

        #[test]
        fn entries_below_t_times_k_vanish(s in arb_scheme()) {
            let m = build_matrix_rec1(&s, 6, 4).unwrap();
            for n in 0..=6usize {
                for k in 0..=4usize {
                    if n < s.t * k {
                        prop_assert!(m.get(n, k).unwrap().is_zero());
                    }
                }
            }
        }
    }
}
