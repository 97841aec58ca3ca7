use std::process::{Command, Output};

use serde_json::Value;

fn latpos(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latpos")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn gen_csv_delannoy() {
    let out = latpos(&["gen", "--catalog", "delannoy_triangle", "--rows", "6", "--cols", "6", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r.len() == 6));
    assert_eq!(rows[4][2], "13");
}

#[test]
fn gen_json_symbolic() {
    let out = latpos(&["gen", "--catalog", "generalized_delannoy", "--rows", "3", "--cols", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["entries"][2][1], "c + 2*a*b");
    assert_eq!(v["orientation"], "m");
}

#[test]
fn transposed_catalog_entry() {
    let out = latpos(&["gen", "--catalog", "stirling2", "--rows", "5", "--cols", "5", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().nth(4).unwrap(), "0,1,7,6,1");
}

#[test]
fn tp_pascal_passes() {
    let out = latpos(&["tp", "--catalog", "pascal_triangle", "--rows", "8", "--cols", "8", "--order", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["passed"], true);
}

#[test]
fn tp_failure_carries_witness() {
    let scheme = r#"{"t":1,"ell":2,"a":[{"kind":"constant","value":"1"},{"kind":"constant","value":"0"},{"kind":"constant","value":"1"}],"b":{"kind":"constant","value":"0"}}"#;
    let out = latpos(&["tp", "--scheme", scheme, "--rows", "6", "--cols", "6", "--order", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["passed"], false);
    assert!(v["witness"]["minor"].as_str().unwrap().starts_with('-'));
}

#[test]
fn seq_stirling_row() {
    let out = latpos(&["seq", "--catalog", "stirling1", "--row", "5", "--pf", "--logconcave", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["pf"], true);
    assert!(v["log_concavity_depth"].as_u64().unwrap() >= 3);
    assert_eq!(v["sequence"][1], "24");
}

#[test]
fn seq_requirements_set_exit_code() {
    // column 2 of the Delannoy triangle is Pólya frequency but only 3-log-concave
    let out = latpos(&["seq", "--catalog", "delannoy_triangle", "--column", "2", "--pf", "--logconcave", "5"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["pf"], true);
    assert_eq!(v["log_concavity_depth"], 3);
    assert_eq!(v["finite"], false);
}

#[test]
fn toeplitz_diagonal() {
    let out = latpos(&["toeplitz", "--catalog", "delannoy_triangle", "--diagonal", "2,1,1,2", "--window", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["sequence"][0], "3");
    assert_eq!(v["passed"], true);
}

#[test]
fn lgv_networks() {
    for net in ["gamma", "gamma-star", "diamond", "circ"] {
        let out = latpos(&["lgv", "--catalog", "delannoy_triangle", "--network", net, "--n", "3", "--k", "1"]);
        assert_eq!(out.status.code(), Some(0), "{net}: {}", String::from_utf8_lossy(&out.stdout));
        let v = json_of(&out);
        assert_eq!(v["walk_matrix_matches"], true);
        assert_eq!(v["network"], net);
    }
    let out = latpos(&[
        "lgv",
        "--catalog",
        "generalized_delannoy",
        "--param",
        "a=1",
        "--param",
        "b=2",
        "--param",
        "c=6",
        "--network",
        "gamma-star",
        "--n",
        "3",
        "--alphas",
        "2",
        "--betas",
        "3",
    ]);
    // a + c z = 1 + 6 z is not 3 + 2 z
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["walk_matrix_matches"], false);
}

#[test]
fn riordan_report() {
    let out = latpos(&["riordan", "--catalog", "delannoy_square", "--order", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["riordan"]["kind"], "improper");
    assert_eq!(v["explicit_checked"], true);
    let out = latpos(&["riordan", "--catalog", "stirling1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn catalog_lists_every_entry() {
    let out = latpos(&["catalog"]);
    let v = json_of(&out);
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    assert_eq!(names.len(), 12);
    assert!(names.contains(&"gen_jacobi_stirling2"));
}

#[test]
fn errors_are_json() {
    for (args, code) in [
        (vec!["gen", "--catalog", "nonesuch"], 2),
        (vec!["gen"], 2),
        (vec!["gen", "--catalog", "brenti", "--param", "w=1"], 2),
        (vec!["seq", "--catalog", "pascal_triangle"], 2),
        (vec!["nonesuch"], 2),
        (vec!["tp", "--catalog", "pascal_triangle", "--rows", "17", "--cols", "17"], 3),
    ] {
        let out = latpos(&args);
        assert_eq!(out.status.code(), Some(code), "{args:?}");
        let v = json_of(&out);
        assert_eq!(v["code"], code);
        assert!(v["message"].as_str().is_some_and(|m| !m.is_empty()));
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let args = ["tp", "--catalog", "delannoy_square", "--rows", "7", "--cols", "7", "--order", "3"];
    let one = Command::new(env!("CARGO_BIN_EXE_latpos")).args(args).env("LATPOS_THREADS", "1").output().unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_latpos")).args(args).env("LATPOS_THREADS", "4").output().unwrap();
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(one.status.code(), Some(0));
}
