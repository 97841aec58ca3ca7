use std::collections::BTreeMap;

use clap::ValueEnum;
use latpos::catalog::{catalog_scheme, entries, CatalogError};
use latpos::lgvnet::{
    build_gamma, build_gamma_circ, build_gamma_diamond, build_gamma_star, enumerate_disjoint_systems, DiagonalWindow,
    LgvError, NetworkParams, PlanarNetwork, DEFAULT_SYSTEM_CAP,
};
use latpos::matcore::{
    build_p_tilde, combinations, is_tp_order, toeplitz, tridiag_recipe, MatError, MinorSpec, PolyMatrix, TridiagFactors,
};
use latpos::pathmodel::{build_oriented, Orientation, PathError, TriangleTruncation, WeightRule, WeightScheme};
use latpos::polyalg::MultiPoly;
use latpos::riordan::{
    bivariate_gf_check, explicit_entry, riordan_entry, riordan_from_scheme, ConstantScheme, RiordanError,
};
use latpos::seqprops::{check_real_rooted_band, extract, sequence_report, Selection, SeqError};
use latpos::verify::run_all;
use serde::Serialize;
use serde_json::{json, Value};

use crate::{
    Command, FactorArgs, Failure, Format, LineArgs, NetArgs, NetworkKind, OrientationArg, Outcome, SchemeArgs,
};

impl From<PathError> for Failure {
    fn from(e: PathError) -> Failure {
        match e {
            PathError::CapExceeded { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<MatError> for Failure {
    fn from(e: MatError) -> Failure {
        match e {
            MatError::SizeGuard { .. } => Failure::Cap(e.to_string()),
            MatError::Path(p) => p.into(),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<LgvError> for Failure {
    fn from(e: LgvError) -> Failure {
        match e {
            LgvError::CapExceeded { .. } => Failure::Cap(e.to_string()),
            LgvError::Mat(m) => m.into(),
            LgvError::Path(p) => p.into(),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<SeqError> for Failure {
    fn from(e: SeqError) -> Failure {
        match e {
            SeqError::Mat(m) => m.into(),
            SeqError::Path(p) => p.into(),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<RiordanError> for Failure {
    fn from(e: RiordanError) -> Failure {
        Failure::Usage(e.to_string())
    }
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Failure {
        Failure::Usage(e.to_string())
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure::Usage(message.into())
}

fn pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialise");
    s.push('\n');
    s
}

fn report(v: Value, passed: bool) -> Outcome {
    Outcome { text: pretty(&v), passed }
}

pub fn run(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Gen { scheme, rows, cols, format } => gen(&scheme, rows, cols, format),
        Command::Tp { scheme, rows, cols, order } => tp(&scheme, rows, cols, order),
        Command::Toeplitz { scheme, line, window, order } => toeplitz_cmd(&scheme, &line, window, order),
        Command::Lgv { scheme, net, order, emit_network } => lgv(&scheme, &net, order, emit_network),
        Command::Riordan { scheme, factors, order } => riordan(&scheme, &factors, order),
        Command::Seq { scheme, line, len, finite, pf, logconcave, window, order, hypothesis } => {
            let opts = SeqOpts { len, finite, pf, logconcave, window, order };
            if hypothesis {
                seq_hypothesis(&scheme, &opts)
            } else {
                seq(&scheme, &line, &opts)
            }
        }
        Command::Catalog => Ok(Outcome { text: pretty(&entries()), passed: true }),
        Command::VerifyAll { seed } => {
            let r = run_all(seed);
            Ok(Outcome { text: pretty(&r), passed: r.passed })
        }
    }
}

fn load_scheme(args: &SchemeArgs) -> Result<(WeightScheme, Orientation), Failure> {
    match (&args.catalog, &args.scheme) {
        (Some(name), None) => {
            let mut params = BTreeMap::new();
            for kv in &args.params {
                let (k, v) = kv.split_once('=').ok_or_else(|| usage(format!("parameter {kv:?} is not name=value")))?;
                params.insert(k.trim().to_string(), v.trim().to_string());
            }
            let (scheme, orientation) = catalog_scheme(name, &params)?;
            match args.orientation {
                Some(o) => Ok((scheme, orientation_of(o))),
                None => Ok((scheme, orientation)),
            }
        }
        (None, Some(src)) => {
            if !args.params.is_empty() {
                return Err(usage("--param applies to --catalog only"));
            }
            let text = if src.trim_start().starts_with('{') {
                src.clone()
            } else {
                std::fs::read_to_string(src).map_err(|e| usage(format!("cannot read {src}: {e}")))?
            };
            let scheme: WeightScheme = serde_json::from_str(&text).map_err(|e| usage(format!("scheme json: {e}")))?;
            scheme.check_shape()?;
            Ok((scheme, args.orientation.map(orientation_of).unwrap_or(Orientation::M)))
        }
        _ => Err(usage("give exactly one of --catalog and --scheme")),
    }
}

fn orientation_of(o: OrientationArg) -> Orientation {
    match o {
        OrientationArg::M => Orientation::M,
        OrientationArg::T => Orientation::T,
    }
}

fn gen(args: &SchemeArgs, rows: usize, cols: usize, format: Format) -> Result<Outcome, Failure> {
    let (scheme, orientation) = load_scheme(args)?;
    let tri = build_oriented(&scheme, orientation, rows, cols)?;
    let text = match format {
        Format::Csv => tri.entries.to_csv(),
        Format::Json => pretty(&json!({
            "orientation": orientation,
            "rows": rows,
            "cols": cols,
            "entries": tri.entries.to_strings(),
        })),
    };
    Ok(Outcome { text, passed: true })
}

fn tp(args: &SchemeArgs, rows: usize, cols: usize, order: usize) -> Result<Outcome, Failure> {
    let (scheme, orientation) = load_scheme(args)?;
    let tri = build_oriented(&scheme, orientation, rows, cols)?;
    let r = is_tp_order(&tri.entries, order)?;
    Ok(report(
        json!({ "rows": rows, "cols": cols, "order": r.order, "passed": r.passed, "witness": r.witness }),
        r.passed,
    ))
}

fn selection(line: &LineArgs) -> Result<Selection, Failure> {
    match (line.row, line.column, &line.diagonal) {
        (Some(n), None, None) => Ok(Selection::Row { n }),
        (None, Some(k), None) => Ok(Selection::Column { k }),
        (None, None, Some(d)) => {
            let parts: Vec<usize> = d
                .split(',')
                .map(|p| p.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| usage(format!("diagonal {d:?} is not four counts")))?;
            match parts[..] {
                [n, k, delta, sigma] if delta > 0 => Ok(Selection::Diagonal { n, k, delta, sigma }),
                _ => Err(usage(format!("diagonal {d:?} needs n,k,delta,sigma with delta > 0"))),
            }
        }
        _ => Err(usage("give one of --row, --column, --diagonal")),
    }
}

/// A truncation large enough to read `count` terms of `what`.
fn truncation_for(
    scheme: &WeightScheme,
    orientation: Orientation,
    what: Selection,
    count: usize,
) -> Result<TriangleTruncation, Failure> {
    let t = scheme.t;
    let c = count.max(1);
    let (rows, cols) = match (what, orientation) {
        (Selection::Row { n }, Orientation::M) => (n + 1, c),
        (Selection::Row { n }, Orientation::T) => (n + 1, t * n + c),
        (Selection::Column { k }, Orientation::M) => (t * k + c, k + 1),
        (Selection::Column { k }, Orientation::T) => (c, k + 1),
        (Selection::Diagonal { n, k, delta, sigma }, _) => (n + delta * (c - 1) + 1, k + sigma * (c - 1) + 1),
    };
    Ok(build_oriented(scheme, orientation, rows, cols)?)
}

fn toeplitz_cmd(args: &SchemeArgs, line: &LineArgs, window: usize, order: usize) -> Result<Outcome, Failure> {
    let (scheme, orientation) = load_scheme(args)?;
    let what = selection(line)?;
    let tri = truncation_for(&scheme, orientation, what, window)?;
    let s = extract(&tri, what, window)?;
    let r = is_tp_order(&toeplitz(&s.terms, window), order)?;
    let terms: Vec<String> = s.terms.iter().map(|p| p.to_string()).collect();
    Ok(report(
        json!({
            "sequence": terms,
            "origin": s.origin,
            "window": window,
            "order": r.order,
            "passed": r.passed,
            "witness": r.witness,
        }),
        r.passed,
    ))
}

struct SeqOpts {
    len: Option<usize>,
    finite: bool,
    pf: bool,
    logconcave: Option<usize>,
    window: Option<usize>,
    order: usize,
}

const DEFAULT_DEPTH: usize = 5;
const DEFAULT_PREFIX: usize = 12;

/// Number of terms of a line that can be nonzero, when that is bounded by the step set.
fn finite_length(t: usize, orientation: Orientation, what: Selection) -> Option<usize> {
    match (what, orientation) {
        (Selection::Row { n }, Orientation::M) if t >= 1 => Some(n / t + 1),
        (Selection::Column { k }, Orientation::T) if t >= 1 => Some(k / t + 1),
        _ => None,
    }
}

fn seq(args: &SchemeArgs, line: &LineArgs, o: &SeqOpts) -> Result<Outcome, Failure> {
    let (scheme, orientation) = load_scheme(args)?;
    let what = selection(line)?;
    let natural = finite_length(scheme.t, orientation, what);
    let len = o.len.or(natural).unwrap_or(DEFAULT_PREFIX);
    let finite = o.finite || (natural.is_some() && o.len.is_none_or(|l| l >= len));
    let tri = truncation_for(&scheme, orientation, what, len)?;
    let s = extract(&tri, what, len)?;
    // a prefix says nothing about terms past its end
    let window = o.window.unwrap_or(if finite { len + 4 } else { len });
    let r = o.logconcave.unwrap_or(DEFAULT_DEPTH);
    let rep = sequence_report(&s, window, o.order, r, finite)?;
    let mut passed = true;
    if o.pf {
        passed &= rep.pf;
    }
    if let Some(want) = o.logconcave {
        passed &= rep.log_concavity_depth.is_some_and(|d| d >= want);
    }
    let mut v = serde_json::to_value(&rep).expect("report serialises");
    v["finite"] = json!(finite);
    v["window"] = json!(window);
    v["order"] = json!(o.order);
    Ok(report(v, passed))
}

fn seq_hypothesis(args: &SchemeArgs, o: &SeqOpts) -> Result<Outcome, Failure> {
    let (scheme, _) = load_scheme(args)?;
    let cs = ConstantScheme::from_scheme(&scheme).ok_or_else(|| usage("the check needs index-free weights"))?;
    let window = o.window.unwrap_or(6);
    let r = check_real_rooted_band(&cs, window, o.order, o.logconcave.unwrap_or(DEFAULT_DEPTH))?;
    Ok(Outcome { text: pretty(&r), passed: r.passed })
}

fn parse_list(text: &str) -> Result<Vec<MultiPoly>, Failure> {
    text.split(',').map(|p| p.trim().parse::<MultiPoly>().map_err(|e| usage(format!("{p:?}: {e}")))).collect()
}

fn factors(f: &FactorArgs) -> Result<Option<(Vec<MultiPoly>, Vec<MultiPoly>)>, Failure> {
    match (&f.alphas, &f.betas) {
        (Some(a), Some(b)) => {
            let (a, b) = (parse_list(a)?, parse_list(b)?);
            if a.len() != b.len() {
                return Err(usage("--alphas and --betas differ in length"));
            }
            Ok(Some((a, b)))
        }
        _ => Ok(None),
    }
}

fn constant_scheme(scheme: &WeightScheme, f: &FactorArgs) -> Result<ConstantScheme, Failure> {
    let cs = ConstantScheme::from_scheme(scheme).ok_or_else(|| usage("the Riordan form needs index-free weights"))?;
    match factors(f)? {
        Some((a, b)) => Ok(cs.with_factors(a, b)?),
        None if cs.ell == 1 => {
            let (a1, a0) = (cs.a[1].clone(), cs.a[0].clone());
            Ok(cs.with_factors(vec![a1], vec![a0])?)
        }
        None => Ok(cs),
    }
}

fn riordan(args: &SchemeArgs, f: &FactorArgs, order: usize) -> Result<Outcome, Failure> {
    let (scheme, _) = load_scheme(args)?;
    let cs = constant_scheme(&scheme, f)?;
    let spec = riordan_from_scheme(&cs, order);
    let m = build_oriented(&cs.to_scheme(), Orientation::M, order + 1, order + 1)?.entries;
    let mut mismatches = Vec::new();
    let mut explicit_checked = false;
    for n in 0..=order {
        for k in 0..=order {
            if &riordan_entry(&spec, n, k)? != m.get(n, k) {
                mismatches.push(json!({ "route": "riordan", "n": n, "k": k }));
            }
            if cs.factors.is_some() {
                explicit_checked = true;
                if &explicit_entry(&cs, n, k)? != m.get(n, k) {
                    mismatches.push(json!({ "route": "explicit", "n": n, "k": k }));
                }
            }
        }
    }
    let bivariate = bivariate_gf_check(&cs, order, order.min(6))?;
    let passed = mismatches.is_empty() && bivariate;
    Ok(report(
        json!({
            "riordan": spec.to_json(),
            "n_max": order,
            "explicit_checked": explicit_checked,
            "entries_agree": mismatches.is_empty(),
            "mismatches": mismatches,
            "bivariate": bivariate,
            "passed": passed,
        }),
        passed,
    ))
}

/// Network weights realising `scheme`, from the given factors, the given
/// recipe, or the trivial factorisation of a two-term band.
fn network_params(scheme: &WeightScheme, net: &NetArgs) -> Result<NetworkParams, Failure> {
    if let Some((alphas, betas)) = factors(&net.factors)? {
        return Ok(NetworkParams::general(scheme.t, scheme.b.clone(), alphas, betas));
    }
    match (scheme.ell, net.recipe) {
        (0 | 1, None) => Ok(NetworkParams::tridiag(
            scheme.t,
            scheme.b.clone(),
            TridiagFactors {
                alpha: WeightRule::constant(MultiPoly::one()),
                beta: WeightRule::zero(),
                lambda: scheme.a[0].clone(),
                mu: scheme.a.get(1).cloned().unwrap_or_else(WeightRule::zero),
            },
        )),
        (2, Some(v)) => {
            Ok(NetworkParams::tridiag(scheme.t, scheme.b.clone(), tridiag_recipe(v, &scheme.a[0], &scheme.a[2])?))
        }
        (2, None) => Err(usage("width-three bands need --recipe or --alphas/--betas")),
        _ => Err(usage("give the band's linear factors with --alphas/--betas")),
    }
}

fn shifted(m: &PolyMatrix, n: i64, k: i64) -> MultiPoly {
    if n < 0 || k < 0 {
        MultiPoly::zero()
    } else {
        m.get(n as usize, k as usize).clone()
    }
}

/// The network and the matrix its walks should give, both from `scheme`.
fn network_and_target(
    scheme: &WeightScheme,
    p: &NetworkParams,
    net: &NetArgs,
) -> Result<(PlanarNetwork, PolyMatrix), Failure> {
    let m = |rows: usize, cols: usize| -> Result<PolyMatrix, Failure> {
        Ok(build_oriented(scheme, Orientation::M, rows, cols)?.entries)
    };
    Ok(match net.network {
        NetworkKind::Gamma => (build_gamma(net.n, p)?, build_p_tilde(scheme, net.n + 1, net.n + 1)?),
        NetworkKind::GammaStar => (build_gamma_star(net.n, p)?, m(net.n + 1, net.n + 1)?),
        NetworkKind::Diamond => {
            let row = m(net.n + 1, net.k + 1)?;
            (build_gamma_diamond(net.n, net.k, p)?, toeplitz(row.row(net.n), net.k + 1))
        }
        NetworkKind::Circ => {
            let w = DiagonalWindow { n: net.n, k: net.k, delta: net.delta, sigma: net.sigma, m: net.m };
            let built = build_gamma_circ(&w, p)?;
            let full = m(net.n + net.delta * net.m + 1, net.k + net.sigma * net.m + 1)?;
            let target = PolyMatrix::from_fn(net.m + 1, net.m + 1, |i, j| {
                let d = i as i64 - j as i64;
                shifted(&full, net.n as i64 + d * net.delta as i64, net.k as i64 + d * net.sigma as i64)
            });
            (built, target)
        }
    })
}

fn lgv(args: &SchemeArgs, net: &NetArgs, order: usize, emit: bool) -> Result<Outcome, Failure> {
    let (scheme, _) = load_scheme(args)?;
    let params = network_params(&scheme, net)?;
    let (network, target) = network_and_target(&scheme, &params, net)?;
    let walks = network.walk_matrix();
    let matches = walks == target;
    let mut checked = 0u64;
    let mut witness = Value::Null;
    'outer: for s in 1..=order.min(walks.rows()).min(walks.cols()) {
        for rows in combinations(walks.rows(), s) {
            for cols in combinations(walks.cols(), s) {
                let spec = MinorSpec::new(rows.clone(), cols);
                let minor = walks.minor(&spec)?;
                let sys = enumerate_disjoint_systems(&network, &spec.rows, &spec.cols, DEFAULT_SYSTEM_CAP)?;
                checked += 1;
                if sys.signed_sum != minor || sys.non_identity_systems() > 0 {
                    witness = json!({
                        "rows": spec.rows,
                        "cols": spec.cols,
                        "minor": minor.to_string(),
                        "signed_sum": sys.signed_sum.to_string(),
                        "non_identity_systems": sys.non_identity_systems(),
                    });
                    break 'outer;
                }
            }
        }
    }
    let passed = matches && witness.is_null();
    let mut v = json!({
        "network": net.network.to_possible_value().expect("listed kind").get_name(),
        "vertices": network.vertices().len(),
        "arcs": network.arcs().len(),
        "walk_matrix_matches": matches,
        "minors_checked": checked,
        "passed": passed,
    });
    if !matches {
        v["walk_matrix"] = json!(walks.to_strings());
        v["expected"] = json!(target.to_strings());
    }
    if !witness.is_null() {
        v["witness"] = witness;
    }
    if emit {
        v["graph"] = network.to_json();
    }
    Ok(report(v, passed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_lengths() {
        assert_eq!(finite_length(1, Orientation::M, Selection::Row { n: 5 }), Some(6));
        assert_eq!(finite_length(2, Orientation::M, Selection::Row { n: 5 }), Some(3));
        assert_eq!(finite_length(0, Orientation::M, Selection::Row { n: 5 }), None);
        assert_eq!(finite_length(1, Orientation::T, Selection::Column { k: 3 }), Some(4));
        assert_eq!(finite_length(1, Orientation::M, Selection::Column { k: 3 }), None);
    }

    #[test]
    fn diagonal_flag() {
        let line = LineArgs { diagonal: Some("1, 0, 1, 2".into()), ..Default::default() };
        assert_eq!(selection(&line).unwrap(), Selection::Diagonal { n: 1, k: 0, delta: 1, sigma: 2 });
        let bad = LineArgs { diagonal: Some("1,0,0,2".into()), ..Default::default() };
        assert!(matches!(selection(&bad), Err(Failure::Usage(_))));
        assert!(matches!(selection(&LineArgs::default()), Err(Failure::Usage(_))));
    }

    #[test]
    fn truncations_cover_the_line() {
        let (s, o) = catalog_scheme("delannoy_triangle", &BTreeMap::new()).unwrap();
        for what in [
            Selection::Row { n: 4 },
            Selection::Column { k: 3 },
            Selection::Diagonal { n: 2, k: 1, delta: 1, sigma: 3 },
        ] {
            let tri = truncation_for(&s, o, what, 7).unwrap();
            assert_eq!(extract(&tri, what, 7).unwrap().len(), 7);
        }
    }

    #[test]
    fn error_classes() {
        assert!(matches!(Failure::from(LgvError::CapExceeded { cap: 1 }), Failure::Cap(_)));
        let guard = MatError::SizeGuard { rows: 20, cols: 20, limit: 16 };
        assert!(matches!(Failure::from(SeqError::Mat(guard)), Failure::Cap(_)));
        assert!(matches!(Failure::from(PathError::BadRule("x".into())), Failure::Usage(_)));
    }

    #[test]
    fn inline_scheme() {
        let args = SchemeArgs {
            scheme: Some(
                r#"{"t":1,"ell":0,"a":[{"kind":"constant","value":"1"}],"b":{"kind":"constant","value":"1"}}"#.into(),
            ),
            ..Default::default()
        };
        let (s, o) = load_scheme(&args).unwrap();
        assert_eq!((s.t, s.ell, o), (1, 0, Orientation::M));
        let bad = SchemeArgs {
            scheme: Some(r#"{"t":1,"ell":2,"a":[],"b":{"kind":"constant","value":"1"}}"#.into()),
            ..Default::default()
        };
        assert!(matches!(load_scheme(&bad), Err(Failure::Usage(_))));
        assert!(matches!(load_scheme(&SchemeArgs::default()), Err(Failure::Usage(_))));
    }

    #[test]
    fn trivial_network_factors() {
        let (s, _) = catalog_scheme("stirling1", &BTreeMap::new()).unwrap();
        let net = NetArgs {
            network: NetworkKind::GammaStar,
            n: 4,
            k: 0,
            delta: 1,
            sigma: 2,
            m: 0,
            recipe: None,
            factors: FactorArgs::default(),
        };
        let p = network_params(&s, &net).unwrap();
        let (network, target) = network_and_target(&s, &p, &net).unwrap();
        assert_eq!(network.walk_matrix(), target);
    }
}
