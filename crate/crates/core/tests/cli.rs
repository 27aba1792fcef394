use std::path::{Path, PathBuf};

use spslab::cli::run;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn spslab(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("spslab").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn value<'a>(report: &'a str, key: &str) -> &'a str {
    let prefix = format!("{key}: ");
    report
        .lines()
        .find_map(|l| l.strip_prefix(prefix.as_str()))
        .unwrap_or_else(|| panic!("no `{key}` in\n{report}"))
}

#[test]
fn check_exit_codes() {
    let (code, out, _) = spslab(&["check", &fixture("discrete2.toml")]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "status"), "pass");

    let (code, out, _) = spslab(&["check", &fixture("missing-sigma.toml")]);
    assert_eq!(code, 2);
    assert_eq!(value(&out, "axiom-1"), "fail");

    let (code, _, err) = spslab(&["check", &fixture("truncated.toml")]);
    assert_eq!(code, 1);
    assert!(err.contains("line") && err.contains("column"), "{err}");

    let (code, _, _) = spslab(&["check", "/nonexistent/file.toml"]);
    assert_eq!(code, 1);
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(spslab(&["frobnicate"]).0, 1);
    assert_eq!(spslab(&["analyze"]).0, 1);
    let (code, out, _) = spslab(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("model"));
}

#[test]
fn analyze_mo2() {
    let (code, out, _) = spslab(&[
        "analyze",
        &fixture("mo2.toml"),
        "--classical",
        "--topological",
        "--thm3",
    ]);
    assert_eq!(code, 0, "{out}");
    let trivial = "{} {x1,x1*,x2,x2*}";
    assert_eq!(value(&out, "classical"), trivial);
    assert_eq!(value(&out, "topological"), trivial);
    assert_eq!(value(&out, "central"), trivial);
    for section in ["[classical]", "[topological]", "[thm3]"] {
        assert!(out.lines().any(|l| l == section));
    }
}

#[test]
fn analyze_fano_has_no_ortho() {
    let (code, out, _) = spslab(&["analyze", &fixture("fano.toml"), "--ortho-search"]);
    assert_eq!(code, 0);
    assert!(out.contains("no orthocomplementation exists"));

    // --classical needs an ortho; the search finds none
    let (code, _, err) = spslab(&["analyze", &fixture("fano.toml"), "--ortho-search", "--classical"]);
    assert_eq!(code, 2);
    assert!(err.contains("no orthocomplementation exists"));
}

#[test]
fn analyze_sierpinski() {
    let (code, out, _) = spslab(&["analyze", &fixture("sierpinski.toml"), "--topological"]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "topological"), "{} {q} {p,q}");
    assert_eq!(value(&out, "t-classical"), "yes");
}

#[test]
fn analyze_topology_reports_equivalence() {
    let (code, out, _) = spslab(&["analyze", &fixture("partition-topology.toml")]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "equivalence-holds"), "yes");
    assert_eq!(value(&out, "clopen-coincide"), "yes");
    let (code, out, _) = spslab(&["analyze", &fixture("sierpinski-topology.toml")]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "ortho-exists"), "no");
    assert_eq!(value(&out, "boolean"), "no");
}

#[test]
fn decompose_writes_summands() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (code, out, _) = spslab(&["decompose", &fixture("direct-sum.toml"), "--out-dir", d]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(value(&out, "summands"), "2");
    let written: Vec<PathBuf> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    assert_eq!(written.len(), 2);
    for path in &written {
        let (code, out, _) = spslab(&["check", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{out}");
    }

    let (code, out, _) = spslab(&["decompose", &fixture("mo2.toml"), "--out-dir", d]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "summands"), "1");

    let (code, _, err) = spslab(&["decompose", &fixture("no-ortho.toml"), "--out-dir", d]);
    assert_eq!(code, 2);
    assert!(err.contains("orthocomplementation"));
}

#[test]
fn decompose_defaults_to_input_directory() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("pair.toml");
    std::fs::copy(fixture("direct-sum.toml"), &input).unwrap();
    let (code, _, _) = spslab(&["decompose", input.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(dir.path().join("pair.summand-0.toml").exists());
    assert!(dir.path().join("pair.summand-1.toml").exists());
}

#[test]
fn model_build_round_trips_through_check() {
    let (code, out, _) = spslab(&["model", "build", "--preset", "icosahedron", "--epsilon", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("# properties: 14"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ico.toml");
    std::fs::write(&path, &out).unwrap();
    let (code, report, _) = spslab(&["check", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{report}");
    assert_eq!(value(&report, "properties"), "14");

    let out_path = dir.path().join("ico0.toml");
    let (code, _, _) = spslab(&[
        "model",
        "build",
        "--config",
        &fixture("icosahedron.toml"),
        "--output",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let (code, report, _) = spslab(&["check", out_path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(value(&report, "properties"), "106");
}

#[test]
fn model_counterexample() {
    let (code, out, _) = spslab(&["model", "counterexample", "--preset", "icosahedron"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(value(&out, "join-size"), "12");
    assert_eq!(value(&out, "union-size"), "7");
    assert!(value(&out, "a_u").starts_with('{'));
    assert_eq!(value(&out, "b_u").matches(',').count(), 0);
    assert_eq!(value(&out, "a_u-operationally-classical"), "yes");
}

#[test]
fn model_simulate_matches_binomial_oracle() {
    let args = [
        "model",
        "simulate",
        "--theta",
        "60",
        "--epsilon",
        "1",
        "--d",
        "0",
        "--n",
        "100000",
        "--seed",
        "7",
    ];
    let (code, out, _) = spslab(&args);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "seed"), "7");
    let row = out.lines().last().unwrap();
    let cols: Vec<&str> = row.split(',').collect();
    let ups: f64 = cols[4].parse().unwrap();
    let freq = ups / 100_000.0;
    assert!((freq - 0.75).abs() <= 4.0 * (0.75f64 * 0.25 / 1e5).sqrt(), "{freq}");
    assert_eq!(cols[5], "0.75");
    // identical inputs and seed give byte-identical reports
    assert_eq!(spslab(&args).1, out);
}

#[test]
fn model_sweep_endpoints() {
    let (code, out, _) = spslab(&["model", "sweep", "--preset", "icosahedron", "--d-steps", "20"]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "endpoint-defect-decreases"), "yes");
    let rows: Vec<&str> = out
        .lines()
        .filter(|l| l.starts_with(|c: char| c.is_ascii_digit()))
        .collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.last().unwrap().ends_with(",0,yes"));
}

#[test]
fn size_cap_override() {
    // run the real binary so the variable does not leak into parallel tests
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_spslab"))
        .args(["analyze", &fixture("fano.toml"), "--ortho-search"])
        .env("SPSLAB_SIZE_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn reports_carry_input_digest() {
    let (_, out, _) = spslab(&["check", &fixture("mo2.toml")]);
    let bytes = std::fs::read(fixture("mo2.toml")).unwrap();
    assert_eq!(value(&out, "input-sha256"), spslab::report::digest(&bytes));
}
