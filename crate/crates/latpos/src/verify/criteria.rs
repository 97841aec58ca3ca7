use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use super::{random_sequences, BatteryScheme, CriterionResult, Tally};
use crate::catalog::catalog_scheme;
use crate::lgvnet::{
    build_gamma, build_gamma_circ, build_gamma_diamond, build_gamma_star, build_gamma_star_bare,
    enumerate_disjoint_systems, r_label, DiagonalWindow, GridPoint, NetworkParams, PlanarNetwork,
};
use crate::matcore::{
    build_a_matrix, build_p_tilde, combinations, is_tp_order, toeplitz, verify_connection, verify_decomposition,
    verify_w_factorization, MinorSpec, PolyMatrix, TridiagFactors,
};
use crate::pathmodel::{
    build_matrix_rec1, build_matrix_rec2, build_oriented, matrix_entry_oracle, Orientation, WeightRule, WeightScheme,
};
use crate::polyalg::{poly, MultiPoly, PowerSeries};
use crate::riordan::{bivariate_gf_check, explicit_entry, riordan_from_scheme, row_sum_series, ConstantScheme};
use crate::seqprops::{
    column_numerator, extract, is_polya_frequency_finite, is_r_log_concave, is_r_log_concave_prefix, pf_via_real_roots,
    toeplitz_band_witness, LogConcavity, PolySequence, Selection, SeqError, BAND_ORDER,
};

fn params(kv: &[(&str, &str)]) -> BTreeMap<String, String> {
    kv.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

fn m_entries(s: &WeightScheme, n_max: usize, k_max: usize) -> Result<PolyMatrix, String> {
    build_matrix_rec1(s, n_max, k_max).map(|t| t.entries).map_err(|e| e.to_string())
}

/// Both recurrences and path enumeration agree on every entry with `n + k <= 12`.
pub fn oracle_equivalence(battery: &[BatteryScheme]) -> CriterionResult {
    const SUM: usize = 12;
    let mut tally = Tally::default();
    for b in battery {
        let (r1, r2) = match (build_matrix_rec1(&b.scheme, SUM, SUM), build_matrix_rec2(&b.scheme, SUM, SUM)) {
            (Ok(x), Ok(y)) => (x.entries, y.entries),
            (Err(e), _) | (_, Err(e)) => {
                tally.fail(format!("{}: {e}", b.name));
                continue;
            }
        };
        let cells: Vec<(usize, usize)> = (0..=SUM).flat_map(|n| (0..=SUM - n).map(move |k| (n, k))).collect();
        let oracle: Vec<_> = cells.par_iter().map(|&(n, k)| matrix_entry_oracle(&b.scheme, n, k)).collect();
        for (&(n, k), o) in cells.iter().zip(oracle) {
            tally.check(r1.get(n, k) == r2.get(n, k), || format!("{}: recurrences differ at ({n},{k})", b.name));
            match o {
                Ok(v) => tally.check(&v == r1.get(n, k), || format!("{}: enumeration differs at ({n},{k})", b.name)),
                Err(e) => tally.fail(format!("{}: enumeration at ({n},{k}): {e}", b.name)),
            }
        }
    }
    tally.finish(1, "oracle equivalence")
}

/// Known values of the classical triangles, by recurrence and by enumeration.
pub fn fixed_values() -> CriterionResult {
    let mut tally = Tally::default();
    let cases: Vec<(&str, BTreeMap<String, String>, usize, usize, MultiPoly)> = vec![
        ("delannoy_square", params(&[]), 2, 2, poly("13")),
        ("delannoy_square", params(&[]), 3, 3, poly("63")),
        ("delannoy_triangle", params(&[]), 4, 2, poly("13")),
        ("stirling1", params(&[]), 4, 2, poly("11")),
        ("stirling2", params(&[]), 4, 2, poly("7")),
        ("legendre_stirling1", params(&[]), 3, 1, poly("12")),
        ("legendre_stirling1", params(&[]), 3, 2, poly("8")),
        ("legendre_stirling1", params(&[]), 3, 3, poly("1")),
        ("jacobi_stirling1", params(&[]), 3, 2, poly("5 + 3*z")),
        ("brenti", params(&[("t", "0")]), 1, 1, poly("z1*x1 + y1 + x1*z0")),
    ];
    for (name, p, n, k, want) in cases {
        let (s, o) = catalog_scheme(name, &p).expect("catalog entry");
        let rec = build_oriented(&s, o, n + 1, k + 1).map(|t| t.entries.get(n, k).clone());
        tally.result(rec.map(|v| v == want), || format!("{name} ({n},{k}) by recurrence"));
        let (i, j) = match o {
            Orientation::M => (n, k),
            Orientation::T => (k, n),
        };
        let enumerated = matrix_entry_oracle(&s, i, j);
        tally.result(enumerated.map(|v| v == want), || format!("{name} ({n},{k}) by enumeration"));
    }
    tally.finish(2, "fixed values")
}

/// Production-matrix connection and decomposition on every battery scheme,
/// and the bidiagonal factorisation of the slanted band.
pub fn structural_identities(battery: &[BatteryScheme]) -> CriterionResult {
    let mut tally = Tally::default();
    for b in battery {
        let size = if b.symbolic { 6 } else { 10 };
        tally.result(verify_connection(&b.scheme, size), || format!("{}: connection at size {size}", b.name));
        tally.result(verify_decomposition(&b.scheme, size - 1, size), || {
            format!("{}: decomposition at size {size}", b.name)
        });
    }
    for ell in 1..=3 {
        let al: Vec<MultiPoly> = (1..=ell).map(|j| MultiPoly::named(&format!("alpha{j}"))).collect();
        let be: Vec<MultiPoly> = (1..=ell).map(|j| MultiPoly::named(&format!("beta{j}"))).collect();
        tally.result(verify_w_factorization(&al, &be, 6), || format!("bidiagonal factorisation, ell = {ell}"));
    }
    tally.finish(3, "structural identities")
}

fn tridiag(t: usize, symbolic: bool, constant: bool) -> NetworkParams {
    let rule = |prefix: &str, closed: &str| {
        if symbolic {
            WeightRule::indexed(prefix)
        } else if constant {
            WeightRule::constant(poly(closed))
        } else {
            WeightRule::poly_in_n(poly(closed))
        }
    };
    NetworkParams::tridiag(
        t,
        rule("b", "n + 1"),
        TridiagFactors {
            alpha: rule("alpha", "n + 2"),
            beta: rule("beta", "2"),
            lambda: rule("lambda", "n + 1"),
            mu: rule("mu", "3"),
        },
    )
}

fn general(t: usize, ell: usize, symbolic: bool) -> NetworkParams {
    let (alphas, betas, b) = if symbolic {
        (
            (1..=ell).map(|j| MultiPoly::named(&format!("a{j}"))).collect(),
            (1..=ell).map(|j| MultiPoly::named(&format!("c{j}"))).collect(),
            MultiPoly::named("g"),
        )
    } else {
        (
            (1..=ell).map(|j| MultiPoly::constant(j as i64)).collect(),
            (1..=ell).map(|j| MultiPoly::constant(j as i64 + 1)).collect(),
            MultiPoly::constant(2),
        )
    };
    NetworkParams::general(t, WeightRule::constant(b), alphas, betas)
}

fn shifted(m: &PolyMatrix, n: i64, k: i64) -> MultiPoly {
    if n < 0 || k < 0 {
        MultiPoly::zero()
    } else {
        m.get(n as usize, k as usize).clone()
    }
}

/// Every minor of order at most `order` equals the signed count of disjoint
/// systems, and no system joins sources to sinks out of order.
fn lgv_minors(net: &PlanarNetwork, order: usize, label: &str, tally: &mut Tally) {
    let w = net.walk_matrix();
    let specs: Vec<MinorSpec> = (1..=order.min(w.rows()).min(w.cols()))
        .flat_map(|s| {
            let cs = combinations(w.cols(), s);
            combinations(w.rows(), s)
                .into_iter()
                .flat_map(move |r| cs.clone().into_iter().map(move |c| MinorSpec::new(r.clone(), c)))
        })
        .collect();
    let results: Vec<_> = specs
        .par_iter()
        .map(|spec| {
            let minor = w.minor(spec).expect("valid minor");
            enumerate_disjoint_systems(net, &spec.rows, &spec.cols, crate::lgvnet::DEFAULT_SYSTEM_CAP)
                .map(|sys| sys.signed_sum == minor && sys.non_identity_systems() == 0)
        })
        .collect();
    for (spec, r) in specs.iter().zip(results) {
        tally.result(r, || format!("{label}: minor rows {:?} cols {:?}", spec.rows, spec.cols));
    }
}

/// Checks a network's walk matrix against `want`, then, when `minors` is set,
/// expands its small minors into disjoint path systems.
fn network<E: std::fmt::Display>(
    built: Result<PlanarNetwork, E>,
    want: &PolyMatrix,
    minors: bool,
    label: &str,
    tally: &mut Tally,
) {
    match built {
        Ok(net) => {
            tally.check(&net.walk_matrix() == want, || format!("{label}: walk matrix"));
            if minors {
                lgv_minors(&net, 3, label, tally);
            }
        }
        Err(e) => tally.fail(format!("{label}: {e}")),
    }
}

/// Walk matrices of the one-stage, glued, Toeplitz-window and diagonal
/// networks, corner-to-corner walk weights, and the disjoint-path expansion
/// of small minors on every network built.
pub fn lgv_suite() -> CriterionResult {
    // path systems grow fast; minors are expanded on the smaller networks only
    const GLUED_MINORS: usize = 6;
    const WINDOW_MINORS: usize = 8;
    let mut tally = Tally::default();
    for t in 1..=2 {
        let families: Vec<(String, NetworkParams, NetworkParams)> = vec![
            (format!("tridiagonal t={t}"), tridiag(t, true, false), tridiag(t, false, false)),
            (format!("general ell=1 t={t}"), general(t, 1, true), general(t, 1, false)),
            (format!("general ell=2 t={t}"), general(t, 2, true), general(t, 2, false)),
            (format!("general ell=3 t={t}"), general(t, 3, true), general(t, 3, false)),
        ];
        for (label, sym, num) in &families {
            let m = m_entries(&sym.scheme(), 6, 6).expect("recurrence");
            for n in 1..=6 {
                let p = build_p_tilde(&sym.scheme(), n + 1, n + 1).expect("production matrix");
                network(build_gamma(n, sym), &p, true, &format!("{label}: one stage n={n}"), &mut tally);
                let glued = m.leading(n + 1, n + 1);
                network(
                    build_gamma_star(n, sym),
                    &glued,
                    n <= GLUED_MINORS,
                    &format!("{label}: glued n={n}"),
                    &mut tally,
                );
            }
            let mn = m_entries(&num.scheme(), 10, 10).expect("recurrence");
            for n in 0..=6 {
                for k in 0..=4 {
                    let row: Vec<MultiPoly> = (0..=k).map(|j| mn.get(n, j).clone()).collect();
                    let what = format!("{label}: row window n={n} k={k}");
                    let minors = n + k <= WINDOW_MINORS;
                    network(build_gamma_diamond(n, k, num), &toeplitz(&row, k + 1), minors, &what, &mut tally);
                }
            }
        }
        // diagonal windows and corner weights need the same weights at every stage
        let invariant: Vec<(String, NetworkParams)> = vec![
            (format!("constant tridiagonal t={t}"), tridiag(t, false, true)),
            (format!("general ell=1 t={t}"), general(t, 1, true)),
            (format!("general ell=2 t={t}"), general(t, 2, false)),
            (format!("general ell=3 t={t}"), general(t, 3, false)),
        ];
        for (label, p) in &invariant {
            let m = m_entries(&p.scheme(), 24, 24).expect("recurrence");
            for n in 0..=3 {
                for k in 0..=n {
                    for sigma in (k + 1).max(2)..=4 {
                        for delta in 1..sigma {
                            for mm in 0..=2 {
                                let w = DiagonalWindow { n, k, delta, sigma, m: mm };
                                let want = PolyMatrix::from_fn(mm + 1, mm + 1, |i, j| {
                                    let d = i as i64 - j as i64;
                                    shifted(&m, n as i64 + d * delta as i64, k as i64 + d * sigma as i64)
                                });
                                let what = format!("{label}: diagonal window {w:?}");
                                network(build_gamma_circ(&w, p), &want, true, &what, &mut tally);
                            }
                        }
                    }
                }
            }
            corner_weights(p, &m, label, &mut tally);
        }
    }
    tally.finish(4, "planar networks")
}

/// Walk weight from `R_a^(d)` to `R_b^(c)` is `M_{b+d-a-c, d-c}` and equals
/// the weight from `R_a^(b+d-c)` to `R_b^(b)`, before and after contracting
/// unit chains.
fn corner_weights(p: &NetworkParams, m: &PolyMatrix, label: &str, tally: &mut Tally) {
    let big = 6;
    let net = match build_gamma_star_bare(big, p) {
        Ok(n) => n,
        Err(e) => return tally.fail(format!("{label}: glued network: {e}")),
    };
    let keep: BTreeSet<GridPoint> = net.labels().values().copied().collect();
    let small = match net.contract_unit_chains(&keep) {
        Ok(n) => n,
        Err(e) => return tally.fail(format!("{label}: contraction: {e}")),
    };
    let pt = |a: usize, d: usize| net.point(&r_label(a, d)).expect("labelled corner");
    for d in 0..=big {
        for c in 0..=d {
            for a in 0..=d {
                for b in 0..=c {
                    let w = net.path_weight(pt(a, d), pt(b, c)).expect("vertices exist");
                    let want = shifted(m, (b + d) as i64 - (a + c) as i64, (d - c) as i64);
                    tally.check(w == want, || format!("{label}: weight R_{a}^({d}) to R_{b}^({c})"));
                    let contracted = small.path_weight(pt(a, d), pt(b, c)).expect("vertices kept");
                    tally.check(contracted == w, || format!("{label}: contracted R_{a}^({d}) to R_{b}^({c})"));
                    if a <= b + d - c {
                        let moved = net.path_weight(pt(a, b + d - c), pt(b, b)).expect("vertices exist");
                        tally.check(moved == w, || format!("{label}: shifted R_{a}^({d}) to R_{b}^({c})"));
                    }
                }
            }
        }
    }
}

fn tp(m: &PolyMatrix, order: usize, what: impl Fn() -> String, tally: &mut Tally) {
    match is_tp_order(m, order) {
        Ok(r) => tally.check(r.passed, || {
            let w = r.witness.as_ref().expect("failed report has a witness");
            format!("{}: minor {:?} {:?} = {}", what(), w.spec.rows, w.spec.cols, w.minor)
        }),
        Err(e) => tally.fail(format!("{}: {e}", what())),
    }
}

/// Negative control: the check must fail and name a negative minor.
fn must_fail(m: &PolyMatrix, order: usize, what: &str, tally: &mut Tally) {
    match is_tp_order(m, order) {
        Ok(r) => tally.check(!r.passed && r.witness.as_ref().is_some_and(|w| !w.minor.is_coeff_nonnegative()), || {
            format!("negative control {what} was not caught")
        }),
        Err(e) => tally.fail(format!("negative control {what}: {e}")),
    }
}

/// Total positivity of truncations, of row, column and diagonal Toeplitz
/// windows, and three negative controls.
pub fn tp_suite(battery: &[BatteryScheme]) -> CriterionResult {
    const ORDER: usize = 4;
    const WINDOW: usize = 6;
    let mut tally = Tally::default();
    for b in battery {
        let size = if b.symbolic { 6 } else { 8 };
        let t = b.scheme.t;
        let columns = b.scheme.b.as_constant().is_some();
        let diagonals = t >= 1 && b.constant().is_some();
        let mut deep = size.max(WINDOW);
        if columns {
            deep = deep.max(t * (size - 1) + WINDOW);
        }
        if diagonals {
            deep = deep.max(4 * WINDOW);
        }
        let tri = match build_matrix_rec1(&b.scheme, deep, deep) {
            Ok(t) => t,
            Err(e) => {
                tally.fail(format!("{}: {e}", b.name));
                continue;
            }
        };
        tp(&tri.entries.leading(size, size), ORDER, || format!("{}: {size}x{size} truncation", b.name), &mut tally);
        if t >= 1 {
            for n in 0..size {
                let row = extract(&tri, Selection::Row { n }, WINDOW).expect("inside truncation");
                tp(&toeplitz(&row.terms, WINDOW), ORDER, || format!("{}: row {n}", b.name), &mut tally);
            }
        }
        if columns {
            for k in 0..size {
                let col = extract(&tri, Selection::Column { k }, WINDOW).expect("inside truncation");
                tp(&toeplitz(&col.terms, WINDOW), ORDER, || format!("{}: column {k}", b.name), &mut tally);
            }
        }
        if diagonals {
            for sigma in 2..=4 {
                for delta in 1..sigma {
                    for k in 0..sigma {
                        for n in k..=k + 1 {
                            let d = Selection::Diagonal { n, k, delta, sigma };
                            let s = extract(&tri, d, WINDOW).expect("inside truncation");
                            tp(&toeplitz(&s.terms, WINDOW), ORDER, || format!("{}: {}", b.name, s.origin), &mut tally);
                        }
                    }
                }
            }
        }
    }
    let gap = WeightScheme::new(
        1,
        vec![poly("1"), poly("0"), poly("1")].into_iter().map(WeightRule::constant).collect(),
        WeightRule::constant(poly("1")),
    )
    .expect("nonempty");
    match build_a_matrix(&gap, 6) {
        Ok(a) => must_fail(&a, ORDER, "band with empty middle", &mut tally),
        Err(e) => tally.fail(format!("negative control band: {e}")),
    }
    must_fail(&toeplitz(&[poly("1"), poly("0"), poly("1")], 3), 2, "(1,0,1)", &mut tally);
    must_fail(&toeplitz(&[poly("1"), poly("1"), poly("1")], 4), 3, "(1,1,1)", &mut tally);
    tally.finish(5, "total positivity")
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    (0..k).fold(BigInt::one(), |acc, j| acc * (n - j) / (j + 1))
}

/// Riordan-array entries, the explicit sum and the recurrence agree; the
/// bivariate expansion matches; the weighted Delannoy closed form and its
/// row-sum series hold.
pub fn riordan_agreement(battery: &[BatteryScheme]) -> CriterionResult {
    const N: usize = 12;
    let mut tally = Tally::default();
    for b in battery {
        let Some(cs) = b.constant() else { continue };
        let m = match m_entries(&cs.to_scheme(), N, N) {
            Ok(m) => m,
            Err(e) => {
                tally.fail(format!("{}: {e}", b.name));
                continue;
            }
        };
        match riordan_from_scheme(&cs, N).matrix(N + 1, N + 1) {
            Ok(r) => {
                for n in 0..=N {
                    for k in 0..=N {
                        tally.check(r.get(n, k) == m.get(n, k), || format!("{}: Riordan entry ({n},{k})", b.name));
                    }
                }
            }
            Err(e) => tally.fail(format!("{}: {e}", b.name)),
        }
        if cs.factors.is_some() {
            for n in 0..=N {
                for k in 0..=N {
                    let e = explicit_entry(&cs, n, k).map(|v| &v == m.get(n, k));
                    tally.result(e, || format!("{}: explicit sum ({n},{k})", b.name));
                }
            }
        } else {
            tally.fail(format!("{}: no factor form for the explicit sum", b.name));
        }
        tally.result(bivariate_gf_check(&cs, 10, 6), || format!("{}: bivariate expansion", b.name));
    }

    let (s, _) = catalog_scheme("generalized_delannoy", &params(&[])).expect("catalog entry");
    let cs = ConstantScheme::new(1, vec![poly("a"), poly("c")], poly("b"))
        .and_then(|c| c.with_factors(vec![poly("c")], vec![poly("a")]))
        .expect("valid factors");
    let m = m_entries(&s, 10, 10).expect("recurrence");
    for total in 0..=10usize {
        for k in 0..=total {
            let n = total - k;
            let want: MultiPoly = (0..=k.min(n))
                .map(|d| {
                    let mono = poly("a").pow((k - d) as u32) * poly("b").pow((n - d) as u32) * poly("c").pow(d as u32);
                    mono.scale(&(binomial(n + k - d, k) * binomial(k, d)))
                })
                .sum();
            tally.check(m.get(n + k, k) == &want, || format!("weighted Delannoy closed form ({n},{k})"));
            let e = explicit_entry(&cs, n + k, k).map(|v| v == want);
            tally.result(e, || format!("weighted Delannoy explicit sum ({n},{k})"));
        }
    }
    let phi = PowerSeries::from_coeffs(vec![poly("1"), poly("-a - b"), poly("-c")], 10).invert();
    let rows = row_sum_series(&cs, 10);
    match (phi, rows) {
        (Ok(phi), Ok(rows)) => {
            tally.check(phi == rows, || "weighted Delannoy row sums".into());
            for n in 0..=10 {
                let direct: MultiPoly = (0..=n).map(|k| m.get(n, k).clone()).sum();
                tally.check(&direct == &phi.coeffs()[n], || format!("weighted Delannoy row {n} sum"));
            }
        }
        (Err(e), _) => tally.fail(format!("row-sum series: {e}")),
        (_, Err(e)) => tally.fail(format!("row-sum series: {e}")),
    }
    tally.finish(6, "closed forms")
}

fn sequence_agreement(s: &PolySequence, window: usize, order: usize, label: &str, tally: &mut Tally) -> Option<bool> {
    let tp = match is_polya_frequency_finite(s, window, order)
        .and_then(|r| Ok(r.passed && toeplitz_band_witness(s, BAND_ORDER)?.is_none()))
    {
        Ok(tp) => tp,
        Err(e) => {
            tally.fail(format!("{label}: {e}"));
            return None;
        }
    };
    match pf_via_real_roots(s) {
        Ok(rr) => tally.check(tp == rr, || format!("{label}: Toeplitz says {tp}, root count says {rr}")),
        Err(e) => tally.fail(format!("{label}: {e}")),
    }
    Some(tp)
}

fn log_concave(r: Result<LogConcavity, SeqError>, depth: usize, label: &str, tally: &mut Tally) {
    match r {
        Ok(lc) => tally.check(lc.holds_to(depth), || {
            format!("{label}: only {}-log-concave, iterate {} has a negative term", lc.depth, lc.depth + 1)
        }),
        Err(e) => tally.fail(format!("{label}: {e}")),
    }
}

/// The Toeplitz and root-count routes to the Pólya frequency property agree,
/// Pólya frequency sequences are 5-fold log-concave, and the two kinds of
/// Jacobi-Stirling numbers are inverse up to sign.
pub fn sequence_properties(battery: &[BatteryScheme], seed: u64) -> CriterionResult {
    const DEPTH: usize = 5;
    let mut tally = Tally::default();
    for v in random_sequences(seed, 50) {
        let s = PolySequence::from_ints(&v);
        let label = format!("sequence {v:?}");
        if let Some(true) = sequence_agreement(&s, v.len() + 4, 6, &label, &mut tally) {
            log_concave(is_r_log_concave(&s, DEPTH), DEPTH, &label, &mut tally);
        }
    }
    for b in battery.iter().filter(|b| !b.symbolic) {
        let tri = match build_matrix_rec1(&b.scheme, 16, 16) {
            Ok(t) => t,
            Err(e) => {
                tally.fail(format!("{}: {e}", b.name));
                continue;
            }
        };
        let t = b.scheme.t;
        if t >= 1 {
            for n in 1..=8 {
                let row = extract(&tri, Selection::Row { n }, n / t + 1).expect("inside truncation");
                let label = format!("{}: row {n}", b.name);
                if let Some(true) = sequence_agreement(&row, (row.len() + 2).min(10), 4, &label, &mut tally) {
                    log_concave(is_r_log_concave(&row, DEPTH), DEPTH, &label, &mut tally);
                }
            }
        }
        if let Some(cs) = b.constant() {
            let gamma_ok = cs.gamma.as_constant().is_some_and(|g| g >= BigInt::from(0));
            for k in 0..=4 {
                let label = format!("{}: column {k}", b.name);
                let col = extract(&tri, Selection::Column { k }, 8 + DEPTH).expect("inside truncation");
                let tp = match is_polya_frequency_finite(&col, 8, 4) {
                    Ok(r) => r.passed,
                    Err(e) => {
                        tally.fail(format!("{label}: {e}"));
                        continue;
                    }
                };
                let num = column_numerator(&cs, k);
                match pf_via_real_roots(&num) {
                    Ok(rr) => tally.check(tp == (rr && gamma_ok), || {
                        format!("{label}: Toeplitz says {tp}, numerator root count says {rr}")
                    }),
                    Err(e) => tally.fail(format!("{label}: {e}")),
                }
                if tp {
                    log_concave(is_r_log_concave_prefix(&col, DEPTH), DEPTH, &label, &mut tally);
                }
            }
        }
    }
    for z in 0..=2 {
        let zs = z.to_string();
        let js = catalog_scheme("gen_jacobi_stirling2", &params(&[("a2", &zs)]))
            .ok()
            .and_then(|(s, o)| build_oriented(&s, o, 6, 6).ok());
        let jc = catalog_scheme("jacobi_stirling1", &params(&[("z", &zs)]))
            .ok()
            .and_then(|(s, o)| build_oriented(&s, o, 6, 6).ok());
        let (Some(js), Some(jc)) = (js, jc) else {
            tally.fail(format!("Jacobi-Stirling tables at z = {z}"));
            continue;
        };
        for i in 0..=5 {
            for j in 0..=5 {
                let mut acc = MultiPoly::zero();
                for k in 0..=5 {
                    let term = js.entries.get(i, k) * jc.entries.get(k, j);
                    if (k + j) % 2 == 0 {
                        acc += term;
                    } else {
                        acc -= &term;
                    }
                }
                let want = MultiPoly::constant((i == j) as i64);
                tally.check(acc == want, || format!("Jacobi-Stirling inverse at z = {z}, ({i},{j})"));
            }
        }
    }
    tally.finish(7, "sequence properties")
}
