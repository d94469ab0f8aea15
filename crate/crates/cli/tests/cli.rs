use std::process::{Command, Output};

use qbn_core::classify::classify;
use qbn_core::cyclo::residue_search;
use qbn_core::enumerate::table;
use qbn_core::report::{self, TableKind};
use qbn_core::spec::parse_spec;

fn qbn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbn"))
        .args(args)
        .env_remove("QBN_THREADS")
        .output()
        .expect("qbn runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn classify_exit_codes() {
    let out = qbn(&["classify", "B2(24;4,6,3)", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(
        stdout(&out),
        "{\"class\":\"B2\",\"m\":24,\"a\":4,\"b\":6,\"c\":3,\"is_nut\":false,\"reason\":\"violated-(iii)\",\"witness_f\":12}\n"
    );

    let out = qbn(&["classify", "B2(4;1,1,1)", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\"is_nut\":true"));

    let out = qbn(&["classify", "B2(0;1,1,1)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());

    assert_eq!(qbn(&["classify", "B5(4;1,1,1)"]).status.code(), Some(2));
}

#[test]
fn classify_output_is_the_library_rendering() {
    for text in ["B2(24;4,6,3)", "B3(10;1,3)", "B1(6;2,2)"] {
        let v = classify(&parse_spec(text).unwrap());
        assert_eq!(stdout(&qbn(&["classify", text])), report::verdict_text(&v));
        assert_eq!(
            stdout(&qbn(&["classify", text, "--format", "json"])),
            report::verdict_json(&v)
        );
    }
}

#[test]
fn enumerate_rows() {
    let out = qbn(&[
        "enumerate",
        "--max-order",
        "8",
        "--format",
        "csv",
        "--table",
        "aggregate",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().any(|l| l == "8,3,2,1,1,1"));

    let out = qbn(&["enumerate", "--max-order", "12", "--format", "csv"]);
    assert!(stdout(&out).lines().any(|l| l == "12,B2,8,7,3,2,2"));
    assert_eq!(stdout(&out), report::table_csv(&table(12).unwrap(), TableKind::Both));

    assert_eq!(qbn(&["enumerate", "--max-order", "6"]).status.code(), Some(2));
    assert_eq!(qbn(&["enumerate", "--max-order", "52"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = ["enumerate", "--max-order", "20", "--format", "json"];
    let single = qbn(&[&["--threads", "1"][..], &args].concat());
    let many = qbn(&[&["--threads", "4"][..], &args].concat());
    let default = qbn(&args);
    assert_eq!(single.status.code(), Some(0));
    assert_eq!(single.stdout, many.stdout);
    assert_eq!(single.stdout, default.stdout);

    let env = Command::new(env!("CARGO_BIN_EXE_qbn"))
        .args(args)
        .env("QBN_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(single.stdout, env.stdout);
}

#[test]
fn crosscheck_is_clean() {
    let out = qbn(&["crosscheck", "--max-order", "20"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("disagreements: 0"));

    let out = qbn(&["crosscheck", "--max-order", "8", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let total: usize = stdout(&out)
        .lines()
        .filter_map(|l| l.trim().strip_prefix("\"specs\": "))
        .map(|v| v.trim_end_matches(',').parse::<usize>().unwrap())
        .sum();
    assert!(total >= 4, "{total} specs");
}

#[test]
fn residue_search_sizes() {
    let out = qbn(&["residue-search", "12"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 1 + 8);
    assert_eq!(stdout(&out), report::residues_csv(&residue_search(12).unwrap()));

    assert_eq!(stdout(&qbn(&["residue-search", "30"])).lines().count(), 1 + 48);
    assert_eq!(qbn(&["residue-search", "11"]).status.code(), Some(2));

    let raw = stdout(&qbn(&["residue-search", "12", "--raw"]));
    assert!(raw.starts_with("f,a,b,c\n"));
    assert!(raw.lines().skip(1).all(|l| l.starts_with("12,")));
}

#[test]
fn oracle_prints_the_kernel() {
    let out = qbn(&["oracle", "B2(6;1,2,3)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "B2(6;1,2,3)\nkernel dimension: 1\nnut: true\n[1, 1, 1, 1, 1, 1, -1, -1, -1, -1, -1, -1]\n"
    );
}

#[test]
fn poly_prints_divisibility() {
    let out = qbn(&["poly", "phi", "12"]);
    assert_eq!(stdout(&out), "Phi = x^4 - x^2 + 1\n");

    let out = qbn(&["poly", "p", "4", "6", "3", "--f", "12", "--f", "24"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("Phi_12 divides P: true\nPhi_24 divides P: false\n"));

    assert_eq!(qbn(&["poly", "r", "1"]).status.code(), Some(2));
    assert_eq!(qbn(&["poly", "b3", "5", "2"]).status.code(), Some(2));
    assert_eq!(qbn(&["poly", "q", "-1", "2"]).status.code(), Some(2));
}
