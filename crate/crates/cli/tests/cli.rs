use std::process::Command;

use mdseries_cli::report::{poly_of, Report};
use mdseries_core::{parse_poly, Poly};

fn mdseries(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mdseries"))
        .args(args)
        .output()
        .expect("run mdseries");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> Report {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (_, out, err) = mdseries(&full);
    Report::from_json(&out).unwrap_or_else(|e| panic!("{e}: {out}{err}"))
}

#[test]
fn exit_codes() {
    assert_eq!(mdseries(&["verify", "master", "--order", "4"]).0, 0);
    assert_eq!(
        mdseries(&["verify", "part3", "--order", "5", "--perturb", "4:1"]).0,
        1
    );
    assert_eq!(mdseries(&["coeffs", "first", "--order", "1"]).0, 2);
    assert_eq!(
        mdseries(&["eval", "lambda", "--d", "3", "--p", "1/10"]).0,
        2
    );
    assert_eq!(
        mdseries(&["verify", "triangularity", "--perturb", "2:1"]).0,
        2
    );
    assert_eq!(mdseries(&["nonsense"]).0, 2);
}

#[test]
fn json_reports_round_trip() {
    for args in [
        &["coeffs", "second", "--order", "5"][..],
        &["verify", "catalan", "--order", "5", "--perturb", "3:1"][..],
        &["verify", "master", "--order", "3"][..],
    ] {
        let report = json(args);
        assert_eq!(report.schema, "mdseries-report/1");
        let emitted = report.to_json();
        let parsed = Report::from_json(&emitted).unwrap();
        assert_eq!(parsed, report);
        assert_eq!(parsed.to_json(), emitted);
    }
}

#[test]
fn refutations_carry_the_full_residual() {
    let report = json(&["verify", "master", "--order", "4", "--perturb", "3:2"]);
    assert_eq!(report.status.as_deref(), Some("refuted"));
    let w = report.witness.unwrap();
    assert_eq!(w.k, 3);
    let from_terms = poly_of(&w.residual_terms).unwrap();
    assert!(!from_terms.is_empty());
    assert_eq!(
        parse_poly::<mdseries_core::Rational>(&w.residual).unwrap(),
        from_terms
    );
}

#[test]
fn text_and_json_tables_agree() {
    let report = json(&["transform", "jbar-from-b", "--order", "5"]);
    let (code, text, _) = mdseries(&["transform", "jbar-from-b", "--order", "5"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), report.tables.len());
    for (line, entry) in lines.iter().zip(&report.tables) {
        let (name, expr) = line.split_once(" = ").unwrap();
        assert_eq!(name, entry.name);
        let from_text: Poly = parse_poly(expr).unwrap();
        assert_eq!(from_text, poly_of(&entry.terms).unwrap());
    }
}

#[test]
fn latex_tables_use_the_factored_layout() {
    let (code, out, _) = mdseries(&["coeffs", "second", "--order", "3", "--format", "latex"]);
    assert_eq!(code, 0);
    assert!(
        out.contains("a'_{2} = \\frac{1}{4}\\frac{1}{d^{2}}\\left(b_{2} + 2d^{2}\\right)"),
        "{out}"
    );
}

#[test]
fn numeric_b_file_and_fixed_dimension() {
    let dir = std::env::temp_dir().join(format!("mdseries-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("b.txt");
    // the Catalan values at d = 2: b_2 = -8, b_3 = 160/3
    std::fs::write(&path, "1 2\n2 -8\n3 160/3\n").unwrap();
    let p = path.to_string_lossy().into_owned();
    let report = json(&[
        "transform",
        "jbar-from-b",
        "--order",
        "3",
        "--d",
        "2",
        "--b-file",
        &p,
    ]);
    assert!(
        report.tables.iter().all(|e| e.terms.is_empty()),
        "{report:?}"
    );
    let (code, out, _) = mdseries(&[
        "eval",
        "lambda",
        "--d",
        "2",
        "--p",
        "1/4",
        "--order",
        "3",
        "--b-file",
        &p,
        "--precision",
        "20",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("q2First: 0.00000000000000000000"), "{out}");
    std::fs::remove_dir_all(&dir).unwrap();
}
