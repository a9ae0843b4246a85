use std::process::{Command, Output};

use serde_json::Value;
use telescopic::construct::enumerate;
use telescopic::num::nat;
use telescopic::{Sequence, ZDecomposition};

fn telescope(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_telescope"))
        .args(args)
        .output()
        .expect("run telescope")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = telescope(&all);
    serde_json::from_str(&stdout(&o)).expect("valid json")
}

#[test]
fn minimize_prints_result_and_two_step_trace() {
    let o = telescope(&["minimize", "660,550,352,902,50,201"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "660,50,352,201");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("step 1: case 2 (n=2, m=5)"));
    assert!(lines[2].starts_with("step 2: case 1 (n=4)"));
}

#[test]
fn analyze_reports_witness_and_minimality() {
    let o = telescope(&["analyze", "3,4,5"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("telescopic: false (witness j=3)"));
    assert!(out.contains("minimal: true"));

    let v = json(&["analyze", "3,4,5"]);
    assert_eq!(v["result"]["telescopic"], false);
    assert_eq!(v["result"]["witness"], 3);
    assert_eq!(v["result"]["minimal"], true);
    assert_eq!(v["result"]["semigroup"]["apery"]["source"], "oracle");
}

#[test]
fn construct_takes_z_from_index_two() {
    let o = telescope(&["construct", "--d", "4", "--c", "3,2,5,3", "--z", "4,4,4,4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("360,120,60,12,4"));

    let o = telescope(&["construct", "--d", "1", "--c", "2,3,4,5", "--z", "3,5,11,22", "--require-minimal"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "120,180,100,55,22\nminimal: true\n");

    let o = telescope(&["construct", "--d", "4", "--c", "3,2,5,3", "--z", "4,4,4,4", "--require-minimal"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("PreconditionViolated"));

    // Including z_1 is a length error.
    let o = telescope(&["construct", "--d", "4", "--c", "3,2,5,3", "--z", "4,8,20,28,44"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("SizeMismatch"));

    // These data fail the membership condition at index 4.
    let o = telescope(&["construct", "--d", "4", "--c", "3,2,5,3", "--z", "8,20,28,44"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("MembershipConditionFailed"));
}

#[test]
fn family_variants() {
    assert_eq!(stdout(&telescope(&["family", "--geometric", "2,3,3"])), "4,6,9\n");
    assert_eq!(stdout(&telescope(&["family", "--supersymmetric", "2,3,5"])), "15,10,6\n");
    assert_eq!(stdout(&telescope(&["family", "--compound", "2,5;3,3"])), "10,15,9\n");
    let o = telescope(&["family", "--geometric", "2,4,3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("InvalidFamilyParameters"));
    let o = telescope(&["family"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn transform_single_steps() {
    let g = "660,550,352,50,201";
    assert_eq!(stdout(&telescope(&["transform", g, "--rho", "2"])), "110,352,50,201\n");
    assert_eq!(
        stdout(&telescope(&["transform", g, "--tau", "251,3"])),
        "1980,1650,1056,150,603,251\n"
    );
    assert_eq!(stdout(&telescope(&["transform", "660,550,352,902,50,201", "--pi", "4"])), "660,550,352,50,201\n");
    let o = telescope(&["transform", g, "--rho", "9"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("IndexOutOfRange"));
    let o = telescope(&["transform", g, "--tau", "7,2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("NotAMember"));
}

#[test]
fn morph_program_file_round_trip() {
    let o = telescope(&["morph", "4,6,9", "30,18,20,33"]);
    assert!(o.status.success());
    let program = stdout(&o);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("phi.json");
    std::fs::write(&path, &program).unwrap();
    let o = telescope(&["transform", "4,6,9", "--program", path.to_str().unwrap()]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("30,18,20,33"));
    assert_eq!(out.lines().count(), 6);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"[{"op":"rho","n":7}]"#).unwrap();
    let o = telescope(&["transform", "4,6,9", "--program", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("IndexOutOfRange"));

    std::fs::write(&bad, "not json").unwrap();
    let o = telescope(&["transform", "4,6,9", "--program", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("Parse"));
}

#[test]
fn morph_errors() {
    let o = telescope(&["morph", "4,6,9", "4,6"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("GcdMismatch"));
    let v = json(&["morph", "3,4,5", "4,6,9"]);
    assert_eq!(v["error"]["name"], "NotTelescopic");
}

#[test]
fn enumerate_lists_in_order() {
    let o = telescope(&["enumerate", "--d", "1", "--c", "2", "--z-bound", "5", "--minimal-only"]);
    assert_eq!(stdout(&o), "2,3\n2,5\n");
    let o = telescope(&["enumerate", "--d", "1", "--c", "1", "--z-bound", "5", "--minimal-only"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "");
    let v = json(&["enumerate", "--d", "1", "--c", "2,3", "--z-bound", "4", "--limit", "2"]);
    assert_eq!(v["result"]["count"], 2);
    assert_eq!(v["result"]["sequences"][0], serde_json::json!(["6", "3", "1"]));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["analyze"][..],
        &["analyze", "1,x"],
        &["bogus"],
        &["construct", "--d", "1", "--c", "2"],
        &["transform", "4,6"],
        &["transform", "4,6", "--rho", "2", "--pi", "1"],
    ] {
        let o = telescope(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!stderr(&o).is_empty());
    }
    let o = telescope(&["construct", "--d", "1", "--c", "2"]);
    assert!(stderr(&o).contains("--z"));
}

#[test]
fn domain_errors_exit_one() {
    let o = telescope(&["minimize", "3,4,5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error: NotTelescopic"));
    let o = telescope(&["analyze", "0,5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("HeadZero"));
    let o = telescope(&["verify", "4,6"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("NonUnitGcd"));
}

#[test]
fn golden_json() {
    for (args, file) in [
        (&["analyze", "4,6,5"][..], "analyze_4_6_5.json"),
        (&["minimize", "660,550,352,902,50,201"], "minimize_example.json"),
        (&["morph", "4,6,9", "30,18,20,33"], "morph_example.json"),
    ] {
        let mut all = vec!["--json"];
        all.extend_from_slice(args);
        let got = stdout(&telescope(&all));
        let path = format!("{}/tests/golden/{file}", env!("CARGO_MANIFEST_DIR"));
        let want = std::fs::read_to_string(path).unwrap();
        assert_eq!(got, want, "{file}");
    }
}

#[test]
fn analyze_json_reparses_into_library_types() {
    for g in enumerate(&nat(1), &[nat(2), nat(3), nat(2)], &nat(9), false).take(12) {
        let text = g.to_string();
        let v = json(&["analyze", &text]);
        let r = &v["result"];
        let back: Sequence = serde_json::from_value(r["sequence"].clone()).unwrap();
        assert_eq!(back, g);
        let z: ZDecomposition = serde_json::from_value(r["z_decomposition"].clone()).unwrap();
        assert_eq!(z.reconstruct(), g);
        let _: Sequence = serde_json::from_value(r["minimal_generators"].clone()).unwrap();
        assert_eq!(r["telescopic"], true);
        let apery = r["semigroup"]["apery"]["values"].as_array().unwrap();
        assert_eq!(apery.len().to_string(), g.head().to_string());
    }
}

#[test]
fn json_output_is_deterministic() {
    for args in [
        &["--json", "analyze", "660,550,352,50,201"][..],
        &["--json", "enumerate", "--d", "1", "--c", "2,3,2", "--z-bound", "12"],
        &["--json", "verify", "30,18,20,33", "--poly", "0,0,0,1"],
    ] {
        let a = telescope(args);
        let b = telescope(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn apery_cap_marks_truncation() {
    let v = json(&["analyze", "660,550,352,50,201", "--apery-cap", "5"]);
    let a = &v["result"]["semigroup"]["apery"];
    assert_eq!(a["truncated"], true);
    assert_eq!(a["total"], 660);
    assert_eq!(a["values"].as_array().unwrap().len(), 5);
    assert_eq!(v["diagnostics"].as_array().unwrap().len(), 1);
    let o = telescope(&["analyze", "660,550,352,50,201", "--apery-cap", "5"]);
    assert!(stdout(&o).contains("(660 total, truncated)"));
}

#[test]
fn verify_passes_on_small_corpus() {
    let mut corpus: Vec<Sequence> = Vec::new();
    for c in [&[2u64, 3][..], &[3, 2, 2], &[5], &[2, 2, 2, 2]] {
        let c: Vec<_> = c.iter().map(|&x| nat(x)).collect();
        corpus.extend(enumerate(&nat(1), &c, &nat(11), false).step_by(3).take(6));
    }
    assert!(corpus.len() >= 15);
    for g in corpus {
        let text = g.to_string();
        let o = telescope(&["verify", &text, "--poly", "1,-2,0,1"]);
        assert!(o.status.success(), "{text}: {}", stdout(&o));
        assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
    }
}
