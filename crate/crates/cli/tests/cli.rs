use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn spec(name: &str) -> String {
    root().join("specs").join(name).display().to_string()
}

fn tilings(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tilings")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn aztec_diamond_of_order_three() {
    let o = tilings(&["count", "--aztec-diamond", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "64\n");
    let o = tilings(&["formula", "--aztec-diamond", "3", "--factor"]);
    assert_eq!(stdout(&o), "64 = 2^6\n");
}

#[test]
fn empty_region_has_one_matching() {
    let o = tilings(&["count", "--spec", &spec("empty.json")]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn figure_one_right_factorization() {
    let o = tilings(&["count", "--spec", &spec("fig1_right.json"), "--factor"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).trim_end().ends_with("= 2^118 * 3^4 * 11^6 * 13^8 * 17^4 * 19^2"), "{}", stdout(&o));
}

#[test]
fn windowed_count_matches_formula() {
    let count = tilings(&["count", "--spec", &spec("fig3.json")]);
    let formula = tilings(&["formula", "--spec", &spec("fig3.json")]);
    assert_eq!(code(&count), 0);
    assert_eq!(stdout(&count), stdout(&formula));
}

#[test]
fn emitted_spec_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ad.json");
    let emitted = tilings(&["build", "--aztec-diamond", "5", "--emit-spec"]);
    assert_eq!(code(&emitted), 0);
    std::fs::write(&path, stdout(&emitted)).unwrap();
    let direct = tilings(&["count", "--aztec-diamond", "5"]);
    let via_file = tilings(&["count", "--spec", path.to_str().unwrap()]);
    assert_eq!(stdout(&direct), stdout(&via_file));

    let torus = ["--torus", "4,5", "--hole", "0,0,1,0", "--hole", "0,0,2,1"];
    let emitted = tilings(&[&["build", "--emit-spec"][..], &torus[..]].concat());
    std::fs::write(&path, stdout(&emitted)).unwrap();
    let direct = tilings(&[&["count"][..], &torus[..]].concat());
    let via_file = tilings(&["count", "--spec", path.to_str().unwrap()]);
    assert_eq!(code(&direct), 0);
    assert_eq!(stdout(&direct), stdout(&via_file));
}

#[test]
fn torus_engines_agree() {
    let torus = ["--torus", "3,3", "--hole", "0,0,1,0", "--hole", "0,0,2,1"];
    let det = tilings(&[&["count"][..], &torus[..]].concat());
    let brute = tilings(&[&["count", "--engine", "brute"][..], &torus[..]].concat());
    assert_eq!(stdout(&det), "112\n");
    assert_eq!(stdout(&det), stdout(&brute));
}

#[test]
fn bad_specs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("unknown.json", r#"{"schema_version":1,"region":{"kind":"aztec_diamond","n":3,"colour":"red"}}"#),
        ("version.json", r#"{"schema_version":9,"region":{"kind":"aztec_diamond","n":3}}"#),
        ("parity.json", r#"{"schema_version":1,"region":{"kind":"sites","sites":[[0,0]]}}"#),
        ("placement.json", r#"{"schema_version":1,"region":{"kind":"torus","m":4,"n":4,"holes":[{"k":0,"l":0,"center":[1,1]}]}}"#),
        ("syntax.json", "{"),
    ];
    for (name, text) in cases {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        let o = tilings(&["count", "--spec", p.to_str().unwrap()]);
        assert_eq!(code(&o), 2, "{name}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn size_guard_exits_three() {
    assert_eq!(code(&tilings(&["count", "--aztec-diamond", "10", "--engine", "brute"])), 3);
    assert_eq!(code(&tilings(&["count", "--aztec-diamond", "40", "--max-vertices", "100"])), 3);
}

#[test]
fn io_failure_exits_four() {
    assert_eq!(code(&tilings(&["count", "--spec", "/nonexistent/region.json"])), 4);
    let o = tilings(&["render", "--aztec-diamond", "2", "-o", "/nonexistent/dir/out.svg"]);
    assert_eq!(code(&o), 4);
}

#[test]
fn verify_smoke_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("smoke.jsonl");
    let o = tilings(&["verify", "smoke", "--report", report.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let text = std::fs::read_to_string(&report).unwrap();
    let last: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(last["summary"]["fail"], 0);
    assert!(last["summary"]["total"].as_u64().unwrap() > 0);
}

#[test]
fn verify_single_theorem() {
    let o = tilings(&["verify", "--theorem", "Eq1", "--params", r#"{"n":5}"#]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("lhs 32768 rhs 32768"));
    let o = tilings(&["verify", "--theorem", "Eq1", "--params", r#"{"n":5,"m":1}"#]);
    assert_eq!(code(&o), 2);
}

#[test]
fn fixtures_catch_a_wrong_exponent() {
    let fx = |n: &str| root().join("tests/fixtures").join(n).display().to_string();
    assert_eq!(code(&tilings(&["verify", "--fixture", &fx("recorded.json")])), 0);
    let o = tilings(&["verify", "--fixture", &fx("wrong_exponent.json")]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("\"expected\":\"2^11\""));
}

#[test]
fn complement_identity() {
    for shading in ["0", "1"] {
        let o = tilings(&["complement", "--aztec-diamond", "3", "--shading", shading, "--count", "--format", "json"]);
        assert_eq!(code(&o), 0);
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["identity_holds"], true);
    }
}

#[test]
fn correlation_of_a_monomer_pair() {
    let o = tilings(&["correlate", "--torus", "3,3", "--hole", "0,0,1,0", "--hole", "0,0,2,1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "omega_{3,3} = 1/4\n");
    assert_eq!(code(&tilings(&["correlate", "--aztec-diamond", "2"])), 2);
}

fn golden(name: &str, args: &[&str]) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.svg");
    let o = tilings(&[&["render", "-o", out.to_str().unwrap()][..], args].concat());
    assert_eq!(code(&o), 0);
    let got = std::fs::read_to_string(&out).unwrap();
    let want = std::fs::read_to_string(Path::new(&root()).join("tests/golden").join(name)).unwrap();
    assert_eq!(got, want, "{name}");
    let again = tilings(&[&["render"][..], args].concat());
    assert_eq!(stdout(&again), want);
}

#[test]
fn renders_match_goldens() {
    golden("empty.svg", &["--spec", &spec("empty.json")]);
    golden("fig10.svg", &["--spec", &spec("fig10.json"), "--scale", "8"]);
    golden("aztec_diamond_2.svg", &["--aztec-diamond", "2", "--scale", "8"]);
}

#[test]
fn figure_three_has_three_windows() {
    let o = tilings(&["build", "--spec", &spec("fig3.json")]);
    assert!(stdout(&o).contains("3 windows"), "{}", stdout(&o));
    let svg = stdout(&tilings(&["render", "--spec", &spec("fig3.json"), "--label-row"]));
    assert!(svg.contains("stroke-dasharray"));
}
