use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const TREFOIL: &str = "X(1,5,2,4;3),X(5,3,6,2;3),X(3,1,4,6;3)\n";
const FIG8: &str = "X(1,6,2,7;1),X(5,2,6,3;1),X(3,1,4,8;3),X(7,5,8,4;3)\n";
const KINK: &str = "X(1,1,2,2;3)\n";

fn knotqp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotqp")).args(args).output().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn classify_flags() {
    let dir = TempDir::new().unwrap();
    let t = json_of(&knotqp(&["--json", "classify", s(&write(&dir, "t.pd", TREFOIL))]));
    assert_eq!((t["s"].as_u64(), t["w"].as_i64(), t["d"].as_i64()), (Some(2), Some(3), Some(1)));
    assert_eq!(t["positive"], true);
    assert_eq!(t["dhl"], true);
    assert_eq!(t["special"], true);

    let k = json_of(&knotqp(&["--json", "classify", s(&write(&dir, "k.pd", KINK))]));
    assert_eq!(k["reduced"], false);
    assert_eq!(k["dhl"], false);

    let f = json_of(&knotqp(&["--json", "classify", s(&write(&dir, "f.pd", FIG8))]));
    assert_eq!((f["d_plus"].as_u64(), f["d_minus"].as_u64()), (Some(1), Some(1)));
    assert_eq!(f["special"], false);
    assert_eq!(f["tree_independent"], true);
}

#[test]
fn certify_verdicts_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    let (t, f, k) = (write(&dir, "t.pd", TREFOIL), write(&dir, "f.pd", FIG8), write(&dir, "k.pd", KINK));
    assert_eq!(json_of(&knotqp(&["certify", s(&t)]))["outcome"], "StronglyQuasipositive");
    assert_eq!(json_of(&knotqp(&["certify", s(&f)]))["outcome"], "NotQuasipositive");
    let v = json_of(&knotqp(&["certify", s(&k)]));
    assert_eq!(v["outcome"], "Inconclusive");
    assert_eq!(v["certificate"]["failed_hypothesis"], "NotDHL");

    let parity = knotqp(&["certify", s(&f), "--b", "2", "--wbeta", "0"]);
    assert_eq!(parity.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&parity.stderr).contains("parity"));
    assert_eq!(knotqp(&["certify", s(&f), "--b", "2"]).status.code(), Some(1));

    let g = json_of(&knotqp(&["certify", s(&t), "--b", "2", "--wbeta", "3"]));
    assert_eq!(g["outcome"], "StronglyQuasipositive");
}

#[test]
fn bad_input_exits_one() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "bad.pd", "X(1,2,3)\n");
    for cmd in ["classify", "certify", "invariants", "braid"] {
        let out = knotqp(&[cmd, s(&p)]);
        assert_eq!(out.status.code(), Some(1), "{cmd}");
        assert!(out.stdout.is_empty());
    }
    assert_eq!(knotqp(&["invariants", s(&dir.path().join("missing"))]).status.code(), Some(1));
}

#[test]
fn invariants_and_braid() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "t.pd", TREFOIL);
    let inv = json_of(&knotqp(&["--json", "invariants", s(&t)]));
    assert_eq!(inv["sigma"], -2);
    assert_eq!(inv["nullity"], 0);
    let b = json_of(&knotqp(&["--json", "braid", s(&write(&dir, "f.pd", FIG8))]));
    assert_eq!((b["strands"].as_u64(), b["exponent_sum"].as_i64()), (Some(3), Some(0)));

    // a braid word fed back in gives the same invariants
    let word = knotqp(&["braid", s(&t)]);
    assert!(word.status.success());
    let w = write(&dir, "t.braid", &String::from_utf8(word.stdout).unwrap());
    assert_eq!(json_of(&knotqp(&["--json", "invariants", s(&w)]))["sigma"], -2);
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.pd", FIG8);
    for args in [
        vec!["--json", "classify", s(&f)],
        vec!["certify", s(&f)],
        vec!["--seed", "7", "gen", "qp", "--strands", "5"],
        vec!["--json", "braid", s(&f)],
    ] {
        assert_eq!(knotqp(&args).stdout, knotqp(&args).stdout, "{args:?}");
    }
}

#[test]
fn scan_with_empty_table_and_report_file() {
    let dir = TempDir::new().unwrap();
    let table = write(&dir, "empty.csv", "name,pd,braid_index,braid_word,signature\n");
    let empty = json_of(&knotqp(&["--json", "scan", s(&table)]));
    assert_eq!(empty["summary"]["total"], 0);
    assert_eq!(empty["records"].as_array().map(Vec::len), Some(0));

    let report = dir.path().join("report.json");
    let out = knotqp(&["scan", s(&table), "--two-bridge", "5", "-o", s(&report)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["summary"]["violations"], 0);
    assert_eq!(r["summary"]["holds"], 0);
    assert!(r["summary"]["skipped"].as_u64().unwrap() > 0);

    let bundled = json_of(&knotqp(&["--json", "scan", "--two-bridge", "6"]));
    assert_eq!(bundled["summary"]["violations"], 0);
    assert!(bundled["summary"]["holds"].as_u64().unwrap() > 0);

    let bad = write(&dir, "bad.csv", "name,pd\n3_1,X(1,5,2,4;3)\n");
    assert_eq!(knotqp(&["scan", s(&bad)]).status.code(), Some(1));
}

#[test]
fn gen_two_bridge_round_trips() {
    let out = knotqp(&["gen", "two-bridge", "2,2"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), FIG8);
    let j = json_of(&knotqp(&["--json", "gen", "two-bridge", "3"]));
    assert_eq!(j["crossings"].as_array().map(Vec::len), Some(3));
    assert_eq!(knotqp(&["gen", "two-bridge", "0"]).status.code(), Some(1));
}
