use std::process::Command;

use serde_json::Value;

use charclose_cli::{run, Format, Mode, ProblemSpec};

fn spec(mode: Mode, p: u32, ideal: &[&str], element: Option<&str>) -> ProblemSpec {
    ProblemSpec {
        mode: Some(mode),
        p: Some(p),
        ideal: ideal.iter().map(|s| s.to_string()).collect(),
        element: element.map(String::from),
        format: Format::Json,
        ..ProblemSpec::default()
    }
}

fn json_of(spec: &ProblemSpec) -> (i32, Value) {
    let out = run(spec);
    (out.code, serde_json::from_str(&out.stdout).unwrap())
}

fn charclose(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_charclose"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn frobenius_member_golden() {
    let (code, doc) = json_of(&spec(Mode::FrobeniusMember, 2, &["x", "y"], Some("z^2")));
    assert_eq!(code, 0);
    assert_eq!(doc["schema"], "charclose/1");
    let report = &doc["report"]["closure"];
    assert_eq!(report["verdict"], true);
    assert_eq!(report["exponent"], 1);
    assert_eq!(report["q"], 2);
    assert_eq!(report["generators"], 2);
    assert_eq!(report["bound"]["rule"], "frobenius-test-exponent");
}

#[test]
fn hasse_of_ordinary_fermat() {
    let (code, doc) = json_of(&spec(Mode::Hasse, 7, &[], None));
    assert_eq!(code, 0);
    assert_eq!(doc["report"]["hasse"], 6);
    assert_eq!(doc["report"]["supersingular"], false);
}

#[test]
fn singular_curve_exits_one() {
    let (code, doc) = json_of(&spec(Mode::Validate, 3, &[], None));
    assert_eq!(code, 1);
    assert_eq!(doc["error"]["kind"], "not-elliptic");
}

#[test]
fn non_primary_ideal_exits_one() {
    let (code, doc) = json_of(&spec(Mode::FrobeniusMember, 2, &["x"], Some("z")));
    assert_eq!(code, 1);
    assert_eq!(doc["error"]["kind"], "not-primary");
}

#[test]
fn syntax_error_exits_one() {
    let (code, doc) = json_of(&spec(Mode::FrobeniusMember, 2, &["x", "y+"], Some("z")));
    assert_eq!(code, 1);
    assert_eq!(doc["error"]["kind"], "syntax");
}

#[test]
fn degree_cap_exits_two_and_reports_q() {
    let mut s = spec(Mode::TightMember, 101, &["x", "y"], Some("z"));
    s.degree_cap = Some(50);
    let (code, doc) = json_of(&s);
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["kind"], "degree-cap");
    assert!(doc["error"]["message"].as_str().unwrap().contains("q = 101^1 = 101"));
}

#[test]
fn tight_member_reports_bound_and_witness() {
    let (_, yes) = json_of(&spec(Mode::TightMember, 2, &["x", "y"], Some("z^2")));
    assert_eq!(yes["report"]["closure"]["verdict"], true);
    assert_eq!(yes["report"]["closure"]["bound"]["q"], 8);
    assert_eq!(yes["report"]["closure"]["bound"]["threshold"], 7);
    let (_, no) = json_of(&spec(Mode::TightMember, 2, &["x", "y"], Some("z")));
    assert_eq!(no["report"]["closure"]["verdict"], false);
    assert!(no["report"]["closure"]["witness"].is_object());
}

#[test]
fn oracle_defaults_to_n_plus_one() {
    let (code, doc) = json_of(&spec(Mode::Oracle, 2, &["x", "y"], Some("z^2")));
    assert_eq!(code, 0);
    let report = &doc["report"]["closure"];
    assert_eq!(report["exponent"], 1);
    assert_eq!(report["bound"]["e_max"], 3);
}

#[test]
fn closure_mode_lists_added_generators() {
    let (code, doc) = json_of(&spec(Mode::FrobeniusClosure, 2, &["x", "y"], None));
    assert_eq!(code, 0);
    assert_eq!(doc["report"]["closure"]["added_generators"], serde_json::json!(["z^2"]));
    assert_eq!(doc["report"]["minimal_generators"], serde_json::json!(["x", "y", "z^2"]));
}

#[test]
fn syzygy_info_with_pullback() {
    let mut s = spec(Mode::SyzygyInfo, 2, &["x", "y", "z"], None);
    s.twist = 1;
    s.pullback = Some(1);
    let (code, doc) = json_of(&s);
    assert_eq!(code, 0);
    assert_eq!(doc["report"]["syzygy"]["degree"], -3);
    assert_eq!(doc["report"]["syzygy"]["slope"], "-3/2");
    assert_eq!(doc["report"]["pullback"]["syzygy"]["degree"], -6);
}

#[test]
fn empty_search_is_empty_table() {
    let mut s = spec(Mode::Search, 2, &[], None);
    s.samples = 0;
    let (code, doc) = json_of(&s);
    assert_eq!(code, 0);
    assert_eq!(doc["report"]["rows"], serde_json::json!({}));
    assert_eq!(doc["seed"], 0);
}

#[test]
fn search_is_reproducible_from_seed() {
    let mut s = spec(Mode::Search, 2, &[], None);
    s.samples = 4;
    s.seed = 9;
    let (code, a) = json_of(&s);
    assert_eq!(code, 0);
    let (_, b) = json_of(&s);
    assert_eq!(a["report"]["rows"], b["report"]["rows"]);
    assert_eq!(a["seed"], 9);
    assert_eq!(a["report"]["violations"], serde_json::json!([]));
}

#[test]
fn reports_round_trip_through_problem_file() {
    for s in [
        spec(Mode::FrobeniusMember, 2, &["x", "y"], Some("z^2")),
        spec(Mode::TightMember, 5, &["x^2", "y"], Some("x*z")),
        spec(Mode::Oracle, 5, &["x", "y"], Some("z^2")),
    ] {
        let first = run(&s);
        let again = ProblemSpec::from_json(&first.stdout).unwrap();
        assert_eq!(again, s);
        let (_, a) = json_of(&s);
        let (_, b) = json_of(&again);
        for key in ["verdict", "exponent", "q", "bound", "witness"] {
            assert_eq!(a["report"]["closure"][key], b["report"]["closure"][key], "{key}");
        }
    }
}

#[test]
fn binary_runs_spec_examples() {
    let (code, out, _) = charclose(&["frobenius-member", "--p", "2", "--ideal", "x;y", "--element", "z^2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("frobenius-member: true"));
    assert!(out.contains("e = 1, q = 2"));

    let (code, out, _) = charclose(&["hasse", "--p", "7", "--curve", "x^3+y^3+z^3"]);
    assert_eq!(code, 0);
    assert!(out.contains("6 (ordinary)"));

    let (code, _, err) = charclose(&["validate", "--p", "3"]);
    assert_eq!(code, 1);
    assert!(err.contains("not-elliptic"));

    let (code, out, _) = charclose(&["search", "--p", "2", "--samples", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains("seed"));
}

#[test]
fn flags_override_problem_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("problem.json");
    let s = spec(Mode::FrobeniusMember, 2, &["x", "y"], Some("z"));
    std::fs::write(&path, serde_json::to_string(&s).unwrap()).unwrap();
    let path = path.to_str().unwrap();

    let (code, out, _) = charclose(&["--problem", path]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["report"]["closure"]["verdict"], false);

    let (code, out, _) = charclose(&["--problem", path, "--element", "z^2"]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["report"]["closure"]["verdict"], true);
    assert_eq!(doc["problem"]["element"], "z^2");

    let (code, out, _) = charclose(&["hasse", "--problem", path, "--format", "text"]);
    assert_eq!(code, 0);
    assert!(out.contains("hasse      0"));
}
