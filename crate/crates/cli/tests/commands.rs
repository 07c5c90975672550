use std::process::Command;

use lenstau_cli::{run, run_sweep, CSV_HEADER};
use lenstau::ShiftForm;

fn lenstau(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_lenstau")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn inproc(args: &[&str]) -> lenstau_cli::Outcome {
    run(std::iter::once("lenstau").chain(args.iter().copied()))
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["dinv", "4", "1"], 0),
        (&["dinv", "1", "0"], 0),
        (&["dinv", "4", "2"], 2),
        (&["dinv", "0", "1"], 2),
        (&["dinv", "4"], 2),
        (&["dinv", "4", "1", "--json", "--csv"], 2),
        (&["knot", "4", "1", "2"], 0),
        (&["knot", "4", "1", "4"], 2),
        (&["knot", "4", "1", "-1"], 2),
        (&["knot", "5", "1", "1", "--corollary"], 0),
        (&["table1"], 0),
        (&["table1", "--break-conjugation"], 1),
        (&["verify", "--pmax", "1"], 0),
        (&["verify", "--pmax", "0"], 2),
        (&["verify"], 2),
        (&["contact", "4"], 0),
        (&["contact", "1"], 2),
        (&["contact", "4", "--k", "9"], 2),
        (&["bound", "4", "1", "2", "--xi", "2", "--tb", "-3/2", "--rot", "-1/2"], 0),
        (&["bound", "4", "1", "2", "--xi", "2", "--tb", "-1/2", "--rot", "-1/2"], 1),
        (&["bound", "4", "1", "2", "--xi", "5", "--tb", "-3/2", "--rot", "-1/2"], 2),
        (&["bound", "4", "1", "2", "--label", "7", "--tb", "-3/2", "--rot", "-1/2"], 2),
        (&["bound", "4", "1", "2", "--xi", "2", "--tb", "x", "--rot", "0"], 2),
        (&["bound", "4", "1", "2", "--xi", "2", "--tb", "-1/3", "--rot", "0"], 2),
        (&["bound", "5", "2", "1", "--xi", "1", "--tb", "-1", "--rot", "0"], 2),
        (&["bound", "4", "1", "2", "--tb", "-1", "--rot", "0"], 2),
        (&["nonsense"], 2),
        (&["--help"], 0),
    ];
    for (args, code) in cases {
        assert_eq!(inproc(args).code, *code, "{args:?}");
    }
    for (args, code) in &cases[..4] {
        assert_eq!(lenstau(args).0, *code, "{args:?}");
    }
}

#[test]
fn invalid_input_goes_to_stderr() {
    let (code, out, err) = lenstau(&["dinv", "4", "2"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("gcd"));
}

#[test]
fn dinv_outputs() {
    let json = inproc(&["dinv", "4", "1", "--json"]).stdout;
    assert_eq!(json.trim(), r#"{"p":4,"q":1,"d":["3/4","0/1","-1/4","0/1"]}"#);
    let pretty = inproc(&["dinv", "4", "1"]).stdout;
    for v in ["3/4", "-1/4", "≈ 0.7500"] {
        assert!(pretty.contains(v));
    }
    let csv = inproc(&["dinv", "1", "0", "--csv"]).stdout;
    assert_eq!(csv, format!("{CSV_HEADER}\n1,0,,0,,,0/1,,\n"));
}

#[test]
fn knot_outputs() {
    let json = inproc(&["knot", "4", "1", "2", "--json"]).stdout;
    assert_eq!(
        json.trim(),
        r#"{"p":4,"q":1,"k":2,"order":2,"A":["0/1","1/2","0/1","-1/2"],"tau":["1/2","0/1","-1/2","0/1"],"a_max":"1/2","chi_F":"0/1"}"#
    );
    let json = inproc(&["knot", "7", "1", "0", "--json"]).stdout;
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(v["A"].as_array().unwrap().iter().all(|a| a == "0/1"));

    let csv = inproc(&["knot", "5", "1", "1", "--csv"]).stdout;
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], CSV_HEADER);
    assert_eq!(lines.len(), 6);
    assert!(lines[1..].iter().all(|l| l.ends_with(",true") && l.split(',').count() == 9));
    let mut a: Vec<String> = lines[1..].iter().map(|l| l.split(',').nth(4).unwrap().to_string()).collect();
    a.sort();
    assert_eq!(a, ["-1/5", "-2/5", "0/1", "1/5", "2/5"]);

    let cor = inproc(&["knot", "5", "1", "1", "--csv", "--corollary"]).stdout;
    assert!(cor.lines().skip(1).any(|l| l.ends_with(",false")));
    let pretty = inproc(&["knot", "5", "1", "1", "--corollary"]).stdout;
    assert!(pretty.contains("multiset identity 2 tau = d - d(J(s+PD[K])): holds"));
    assert!(pretty.contains("label by label: FAILS"));
}

#[test]
fn machine_output_has_no_floats() {
    for args in [
        &["dinv", "7", "3", "--json"][..],
        &["knot", "7", "3", "2", "--json"],
        &["knot", "7", "3", "2", "--csv"],
        &["contact", "5", "--json"],
        &["bound", "5", "1", "2", "--label", "1", "--tb", "-3", "--rot", "0", "--json"],
    ] {
        let out = inproc(args).stdout;
        assert!(!out.contains('.') && !out.contains('≈'), "{args:?}: {out}");
    }
}

#[test]
fn table1_is_byte_identical_across_runs() {
    let a = lenstau(&["table1"]);
    let b = lenstau(&["table1"]);
    assert_eq!(a, b);
    assert!(a.1.contains("all values match"));
    assert!(a.1.contains("agrees for this order-two class"));
    let broken = inproc(&["table1", "--break-conjugation"]).stdout;
    assert!(broken.contains("MISMATCH"));
}

#[test]
fn contact_outputs() {
    let pretty = inproc(&["contact", "4"]).stdout;
    assert!(pretty.contains("tau {-1/2}"));
    let seven = inproc(&["contact", "7", "--json"]).stdout;
    let v: serde_json::Value = serde_json::from_str(&seven).unwrap();
    assert_eq!(v["structures"].as_array().unwrap().len(), 6);
    let pretty = inproc(&["contact", "7"]).stdout;
    assert!(pretty.contains("(ambiguous)"));
}

#[test]
fn bound_outputs() {
    let out = inproc(&["bound", "4", "1", "2", "--xi", "2", "--tb", "-3/2", "--rot", "-1/2", "--json"]);
    assert!(out.stdout.starts_with(
        r#"{"lhs":"-2/1","tau_bound":"-2/1","be_bound":"0/1","satisfied_tau":true,"satisfied_be":true"#
    ));
    let pretty = inproc(&["bound", "4", "1", "2", "--xi", "2", "--tb", "-3/2", "--rot", "-1/2"]).stdout;
    assert!(pretty.contains("consistent"));
    assert!(!pretty.contains("VIOLATED"));
    let over = inproc(&["bound", "4", "1", "2", "--xi", "2", "--tb", "-1/2", "--rot", "-1/2"]);
    assert!(over.stdout.contains("VIOLATED"));
    let amb = inproc(&["bound", "7", "1", "3", "--xi", "1", "--tb", "-6", "--rot", "0"]);
    assert!(amb.stderr.contains("ambiguous"));
}

#[test]
fn verify_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = inproc(&["verify", "--pmax", "8", "--jobs", "2", "--report", path.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("wall time"));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(!text.contains("wall"));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["failed"], 0);
    let bad = inproc(&["verify", "--pmax", "3", "--report", "/nonexistent/dir/r.json"]);
    assert_eq!(bad.code, 2);
}

#[test]
fn sweep_counts_and_order() {
    let s = run_sweep(12, 3, ShiftForm::Proposition).unwrap();
    let expected: u64 = lenstau::LensSpace::enumerate(12).iter().map(|l| l.p()).sum();
    assert_eq!(s.triples as u64, expected);
    assert_eq!(s.verdicts.len(), s.triples);
    let keys: Vec<_> = s.verdicts.iter().map(|v| (v.p, v.q, v.k)).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(s.failed, 0);
    assert_eq!(s.per_label_mismatches, 0);
    assert_eq!(s, run_sweep(12, 1, ShiftForm::Proposition).unwrap());

    let c = run_sweep(12, 2, ShiftForm::Corollary).unwrap();
    assert_eq!(c.failed, 0);
    assert!(c.per_label_mismatches > 0);
}
