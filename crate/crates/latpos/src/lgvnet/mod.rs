//! Planar networks whose walk matrices are path matrices, production
//! matrices and Toeplitz windows, plus brute-force enumeration of
//! vertex-disjoint path systems to check minors against.

mod build;
mod disjoint;
mod network;

pub use build::{
    build_gamma, build_gamma_circ, build_gamma_diamond, build_gamma_star, build_gamma_star_bare, q_label, r_label,
    DiagonalWindow, NetworkParams, StageKind,
};
pub use disjoint::{enumerate_disjoint_systems, lgv_verify, DisjointSystems, PermutationClass, DEFAULT_SYSTEM_CAP};
pub use network::{GridPoint, NetArc, NetworkBuilder, PlanarNetwork};

use thiserror::Error;

use crate::matcore::MatError;
use crate::pathmodel::PathError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LgvError {
    #[error("two arcs from {tail:?} to {head:?}")]
    DuplicateArc { tail: GridPoint, head: GridPoint },
    #[error("the network has a directed cycle")]
    CycleDetected,
    #[error("no vertex named {0}")]
    UnknownVertex(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("more than {cap} path systems")]
    CapExceeded { cap: u64 },
    #[error("network json: {0}")]
    Json(String),
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Path(#[from] PathError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{build_p_tilde, MinorSpec, PolyMatrix};
    use crate::pathmodel::{build_matrix_rec1, WeightRule};
    use crate::polyalg::poly;
    use std::collections::BTreeMap;

    fn pt(c: i64, r: i64) -> GridPoint {
        GridPoint(c, r)
    }

    fn diamond_graph() -> PlanarNetwork {
        // two sources, two sinks, crossing forced through the middle vertex
        let mut b = NetworkBuilder::new();
        b.arc(pt(0, 0), pt(1, 0), poly("x")).unwrap();
        b.arc(pt(0, 1), pt(1, 0), poly("y")).unwrap();
        b.arc(pt(1, 0), pt(2, 0), poly("1")).unwrap();
        b.arc(pt(1, 0), pt(2, 1), poly("z")).unwrap();
        b.arc(pt(0, 1), pt(2, 1), poly("w")).unwrap();
        for (name, p) in [("s0", pt(0, 0)), ("s1", pt(0, 1)), ("t0", pt(2, 0)), ("t1", pt(2, 1))] {
            b.label(name.into(), p);
        }
        b.build(vec!["s0".into(), "s1".into()], vec!["t0".into(), "t1".into()]).unwrap()
    }

    #[test]
    fn walk_matrix_by_hand() {
        let net = diamond_graph();
        let w = net.walk_matrix();
        assert_eq!(w.get(0, 0), &poly("x"));
        assert_eq!(w.get(0, 1), &poly("x*z"));
        assert_eq!(w.get(1, 0), &poly("y"));
        assert_eq!(w.get(1, 1), &poly("y*z + w"));
        assert!(net.arcs_increase_column());
    }

    #[test]
    fn lindstrom_on_small_graph() {
        let net = diamond_graph();
        let spec = MinorSpec::new(vec![0, 1], vec![0, 1]);
        let sys = enumerate_disjoint_systems(&net, &[0, 1], &[0, 1], DEFAULT_SYSTEM_CAP).unwrap();
        // only s0->t0 with s1->t1 via w is disjoint
        assert_eq!(sys.signed_sum, poly("x*w"));
        assert_eq!(sys.non_identity_systems(), 0);
        assert!(lgv_verify(&net, &spec).unwrap());
    }

    #[test]
    fn crossing_systems_carry_sign() {
        // sources above and below swapped relative to sinks: one crossing system
        let mut b = NetworkBuilder::new();
        b.arc(pt(0, 0), pt(1, 1), poly("p")).unwrap();
        b.arc(pt(0, 1), pt(1, 0), poly("q")).unwrap();
        for (name, p) in [("s0", pt(0, 0)), ("s1", pt(0, 1)), ("t0", pt(1, 0)), ("t1", pt(1, 1))] {
            b.label(name.into(), p);
        }
        let net = b.build(vec!["s0".into(), "s1".into()], vec!["t0".into(), "t1".into()]).unwrap();
        let sys = enumerate_disjoint_systems(&net, &[0, 1], &[0, 1], DEFAULT_SYSTEM_CAP).unwrap();
        assert_eq!(sys.signed_sum, poly("-p*q"));
        assert_eq!(sys.non_identity_systems(), 1);
        assert!(lgv_verify(&net, &MinorSpec::new(vec![0, 1], vec![0, 1])).unwrap());
    }

    #[test]
    fn construction_errors() {
        let mut b = NetworkBuilder::new();
        b.arc(pt(0, 0), pt(1, 0), poly("1")).unwrap();
        assert!(matches!(b.arc(pt(0, 0), pt(1, 0), poly("2")), Err(LgvError::DuplicateArc { .. })));
        let arcs = vec![
            NetArc { tail: pt(0, 0), head: pt(1, 0), weight: poly("1") },
            NetArc { tail: pt(1, 0), head: pt(0, 0), weight: poly("1") },
        ];
        assert_eq!(
            PlanarNetwork::new(vec![], arcs, BTreeMap::new(), vec![], vec![]).unwrap_err(),
            LgvError::CycleDetected
        );
        let b = NetworkBuilder::new();
        assert!(matches!(b.build(vec!["nope".into()], vec![]), Err(LgvError::UnknownVertex(_))));
    }

    #[test]
    fn cap_on_systems() {
        let net = diamond_graph();
        assert_eq!(enumerate_disjoint_systems(&net, &[1], &[1], 1).unwrap_err(), LgvError::CapExceeded { cap: 1 });
    }

    fn tri_params(t: usize) -> NetworkParams {
        NetworkParams::tridiag(
            t,
            WeightRule::indexed("b"),
            crate::matcore::TridiagFactors {
                alpha: WeightRule::indexed("al"),
                beta: WeightRule::indexed("be"),
                lambda: WeightRule::indexed("la"),
                mu: WeightRule::indexed("mu"),
            },
        )
    }

    #[test]
    fn single_stage_walks_match_production_matrix() {
        for t in 1..=2 {
            let p = tri_params(t);
            for n in 1..=4 {
                let net = build_gamma(n, &p).unwrap();
                let expect = build_p_tilde(&p.scheme(), n + 1, n + 1).unwrap();
                assert_eq!(net.walk_matrix(), expect, "t={t} n={n}");
            }
        }
    }

    #[test]
    fn glued_stages_give_path_matrix() {
        let p = tri_params(1);
        let net = build_gamma_star(3, &p).unwrap();
        let m = build_matrix_rec1(&p.scheme(), 3, 3).unwrap().entries;
        assert_eq!(net.walk_matrix(), m);
        assert!(net.arcs_increase_column());
    }

    #[test]
    fn zero_stage_network_is_a_point() {
        let p = NetworkParams::general(1, WeightRule::constant(poly("g")), vec![poly("a")], vec![poly("c")]);
        let net = build_gamma_diamond(0, 0, &p).unwrap();
        assert_eq!(net.walk_matrix(), PolyMatrix::identity(1));
        assert!(build_gamma(0, &p).is_err());
    }

    #[test]
    fn networks_need_positive_t() {
        let p = NetworkParams::general(0, WeightRule::constant(poly("1")), vec![poly("1")], vec![poly("1")]);
        assert!(matches!(build_gamma_star(2, &p), Err(LgvError::BadParameters(_))));
    }

    #[test]
    fn json_round_trip() {
        let p = tri_params(1);
        let net = build_gamma(2, &p).unwrap();
        let j = net.to_json();
        let back = PlanarNetwork::from_json(&j).unwrap();
        assert_eq!(back.walk_matrix(), net.walk_matrix());
        assert_eq!(back.arcs(), net.arcs());
        assert_eq!(j["sources"][0], "Q_2^(2)");
    }

    #[test]
    fn chain_contraction_keeps_walks() {
        let p = NetworkParams::general(1, WeightRule::constant(poly("g")), vec![poly("a")], vec![poly("c")]);
        let net = build_gamma_star(3, &p).unwrap();
        let small = net.contract_unit_chains(&Default::default()).unwrap();
        assert!(small.vertices().len() < net.vertices().len());
        assert_eq!(small.walk_matrix(), net.walk_matrix());
    }
}
