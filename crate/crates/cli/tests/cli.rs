use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use maxlot::search::WitnessRecord;
use maxlot::Rational;
use maxlot_cli::ReportRecord;
use tempfile::TempDir;

const P_CYC: &str = "alternatives: a,b,c\n1: a > b > c\n1: b > c > a\n1: c > a > b\n";
const P_CW: &str = "alternatives: a,b,c\n2: a > b > c\n1: b > a > c\n";
const P_EFF4: &str = "alternatives: a,b,c,d\n1: a > b > c > d\n1: b > c > a > d\n1: c > a > b > d\n";

fn maxlot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxlot")).args(args).output().expect("binary runs")
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn solve_examples() {
    let dir = TempDir::new().unwrap();
    let cyc = file(&dir, "cyc.txt", P_CYC);
    let out = maxlot(&["solve", p(&cyc), "--mechanism", "ml"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("a: 1/3, b: 1/3, c: 1/3 (unique)"), "{}", stdout(&out));

    let cw = file(&dir, "cw.txt", P_CW);
    let out = maxlot(&["solve", p(&cw), "--mechanism", "cu"]);
    assert!(stdout(&out).starts_with("a: 1 (Condorcet winner: a)"), "{}", stdout(&out));

    let eff = file(&dir, "eff.txt", P_EFF4);
    let out = maxlot(&["solve", p(&eff), "--mechanism", "ml"]);
    assert!(stdout(&out).starts_with("a: 1/3, b: 1/3, c: 1/3, d: 0"), "{}", stdout(&out));
}

#[test]
fn machine_records_round_trip() {
    let dir = TempDir::new().unwrap();
    let eff = file(&dir, "eff.txt", P_EFF4);
    let out = maxlot(&[
        "check",
        p(&eff),
        "--mechanism",
        "cu",
        "--property",
        "ex-post-efficiency",
        "--format",
        "machine",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    let record: ReportRecord = serde_json::from_str(&text).unwrap();
    let payload = serde_json::to_string(&record.witness).unwrap();
    assert!(!payload.contains('.'), "numbers must be exact: {payload}");
    assert_eq!(record.outcome, "witness-found");
    let witness = record.witness.clone().expect("witness serialized");
    match &witness {
        WitnessRecord::Efficiency {
            dominated,
            dominator,
            probability,
            ..
        } => {
            assert_eq!((dominated.as_str(), dominator.as_str(), probability.as_str()), ("d", "c", "1/4"));
        }
        other => panic!("unexpected witness {other:?}"),
    }
    assert!(witness.verify::<Rational>().unwrap());
    assert_eq!(record.to_json(), text);
}

#[test]
fn check_exit_codes() {
    let dir = TempDir::new().unwrap();
    let cw = file(&dir, "cw.txt", P_CW);
    let out = maxlot(&["check", p(&cw), "--mechanism", "ml", "--property", "condorcet"]);
    assert_eq!(out.status.code(), Some(0));

    let single = file(&dir, "one.txt", "alternatives: a,b,c\n1: b > a > c\n");
    let out = maxlot(&["check", p(&single), "--mechanism", "rd", "--property", "participation"]);
    assert_eq!(out.status.code(), Some(0));

    let out = maxlot(&["check", p(&cw), "--mechanism", "borda", "--property", "condorcet"]);
    assert_eq!(out.status.code(), Some(3));
    let out = maxlot(&["check", p(&cw), "--mechanism", "ml", "--property", "monotonicity"]);
    assert_eq!(out.status.code(), Some(3));

    let cardinal = file(&dir, "m.txt", "alternatives: a,b\nmatrix 1:\n0 1/2\n-1/2 0\n");
    let out = maxlot(&["check", p(&cardinal), "--mechanism", "ml", "--property", "ordinal-participation"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = file(&dir, "bad.txt", "alternatives: a,b\nmatrix 1:\n0 1\n1 0\n");
    let out = maxlot(&["solve", p(&bad), "--mechanism", "ml"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));

    let garbled = file(&dir, "garbled.txt", "alternatives: a,b\none: a > b\n");
    assert_eq!(maxlot(&["solve", p(&garbled), "--mechanism", "ml"]).status.code(), Some(2));
    let unknown = file(&dir, "unknown.txt", "alternatives: a,b\n1: a > z\n");
    assert_eq!(maxlot(&["solve", p(&unknown), "--mechanism", "ml"]).status.code(), Some(2));
    let missing = dir.path().join("missing.txt");
    assert_eq!(maxlot(&["solve", p(&missing), "--mechanism", "ml"]).status.code(), Some(2));
    assert_eq!(maxlot(&["audit", "thm1", "--alts", "9"]).status.code(), Some(2));
}

#[test]
fn audits() {
    let out = maxlot(&["audit", "lemma1", "--alts", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("pass-exhaustive") && text.contains("729"), "{text}");

    let out = maxlot(&["audit", "thm1", "--alts", "3", "--voters", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("pass-exhaustive"));

    assert_eq!(maxlot(&["audit", "thm9"]).status.code(), Some(3));
}

#[test]
fn reports_are_byte_stable() {
    let dir = TempDir::new().unwrap();
    let first = dir.path().join("first.json");
    let second = dir.path().join("second.json");
    let args = |out: &Path, sequential: bool| {
        let mut v: Vec<String> = [
            "audit",
            "moulin-contrast",
            "--alts",
            "4",
            "--voters",
            "6",
            "--budget",
            "3000",
            "--seed",
            "7",
            "--out",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        v.push(p(out).to_string());
        if sequential {
            v.push("--sequential".into());
        }
        v
    };
    let run = |a: Vec<String>| {
        let refs: Vec<&str> = a.iter().map(String::as_str).collect();
        maxlot(&refs)
    };
    let a = run(args(&first, false));
    let b = run(args(&second, true));
    assert_eq!(a.status.code(), b.status.code());
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(std::fs::read(&first).unwrap(), std::fs::read(&second).unwrap());
    let record: ReportRecord = serde_json::from_slice(&std::fs::read(&first).unwrap()).unwrap();
    assert_eq!(record.campaign.as_deref(), Some("moulin-contrast"));
    assert_eq!(record.seed, Some(7));
}
