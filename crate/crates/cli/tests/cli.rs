use std::path::PathBuf;
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> String {
    root().join("fixtures").join(format!("{name}.json")).to_string_lossy().into_owned()
}

fn prismatic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prismatic"))
        .args(args)
        .env_remove("PRISMATIC_NODE_BUDGET")
        .env_remove("PRISMATIC_GENERATOR_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("prismatic-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_trivial_exits_zero() {
    let o = prismatic(&["verify", "--algebra", "trivial:3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pass"));
}

#[test]
fn failing_axiom_exits_two() {
    let p = scratch("bad.json");
    std::fs::write(&p, r#"{"elements": 2, "under": [[1, 1], [0, 0]], "over": [[0, 0], [1, 1]]}"#).unwrap();
    let o = prismatic(&["verify", "--biquandle", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn homology_over_the_cap_exits_three() {
    let o = prismatic(&["homology", "--algebra", "alexander:sl2z6-det-example", "--degree", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("generators"));
}

#[test]
fn node_budget_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_prismatic"))
        .args(["colorings", "--diagram", &fixture("5_2"), "--algebra", "conjugation:s3", "--count-only"])
        .env("PRISMATIC_NODE_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn generator_cap_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_prismatic"))
        .args(["homology", "--algebra", "conjugation:s3", "--degree", "2"])
        .env("PRISMATIC_GENERATOR_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn structural_and_io_errors() {
    assert_eq!(prismatic(&["verify", "--algebra", "nonsense:1"]).status.code(), Some(4));
    let p = scratch("broken.json");
    std::fs::write(&p, r#"{"regions": ["A"], "semiarcs": [{"id": "s", "source": "A", "target": "Z"}]}"#).unwrap();
    let o = prismatic(&["colorings", "--diagram", p.to_str().unwrap(), "--algebra", "trivial:2"]);
    assert_eq!(o.status.code(), Some(4));
    let o = prismatic(&["colorings", "--diagram", "/nonexistent.json", "--algebra", "trivial:2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn colorings_count_matches_listing() {
    let d = fixture("hopf");
    let n: usize = stdout(&prismatic(&["colorings", "--diagram", &d, "--algebra", "conjugation:s3", "--count-only"]))
        .trim()
        .parse()
        .unwrap();
    let listed = stdout(&prismatic(&["colorings", "--diagram", &d, "--algebra", "conjugation:s3"]));
    assert_eq!(listed.lines().count(), n);
    assert_eq!(n, 18);
}

#[test]
fn invariant_json_is_identical_across_runs_and_jobs() {
    let d = fixture("5_2");
    let run = |jobs: &str| {
        prismatic(&[
            "invariant", "--diagram", &d, "--algebra", "alexander:unipotent:3", "--xset", "self-under", "--cocycle",
            "zero:2", "--jobs", jobs, "--json",
        ])
    };
    let (a, b, c) = (run("1"), run("1"), run("3"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert!(stdout(&a).starts_with(r#"{"coefficients":"Z","colorings":""#));
}

#[test]
fn make_then_verify_and_evaluate_a_cocycle() {
    let p = scratch("unipotent.json");
    let path = p.to_str().unwrap();
    let o = prismatic(&[
        "make-cocycle", "--family", "unipotent:3", "--kind", "2", "--form", "det-first", "--lambda", "0,1,2", "--out", path,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = prismatic(&[
        "verify-cocycle", "--algebra", "alexander:unipotent:3", "--xset", "self-under", "--cocycle", path, "--generator-cap",
        "2000000",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("exhaustive"));
    let o = prismatic(&[
        "mirror-check", "--diagram", &fixture("hopf"), "--algebra", "alexander:unipotent:3", "--xset", "self-under",
        "--cocycle", path,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn make_cocycle_rejects_a_bad_lambda() {
    let o = prismatic(&["make-cocycle", "--family", "unipotent:3", "--lambda", "1,1,0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tampered_cocycle_fails_verification() {
    let p = scratch("tampered.json");
    let o = prismatic(&["make-cocycle", "--family", "unipotent:3", "--lambda", "0,1,2", "--out", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    let entry = &mut v["simple"][1 * 27 + 5];
    *entry = serde_json::json!((entry.as_i64().unwrap() + 1) % 3);
    std::fs::write(&p, v.to_string()).unwrap();
    let o = prismatic(&["verify-cocycle", "--algebra", "alexander:unipotent:3", "--cocycle", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn lift_and_verify_a_biquandle_cocycle() {
    let bq = scratch("bq.json");
    let zero = vec![0; 27];
    let text = serde_json::json!({
        "arity": 2,
        "modulus": 3,
        "biquandle": {"elements": 3, "under": [[0, 2, 1], [2, 1, 0], [1, 0, 2]], "over": [[0, 0, 0], [1, 1, 1], [2, 2, 2]]},
        "xset": [[0, 2, 1], [2, 1, 0], [1, 0, 2]],
        "values": zero,
    });
    std::fs::write(&bq, text.to_string()).unwrap();
    let (out, ys) = (scratch("lift.json"), scratch("lift-ys.json"));
    let o = prismatic(&[
        "lift-cocycle", "--cocycle", bq.to_str().unwrap(), "--out", out.to_str().unwrap(), "--xset-out", ys.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains("type 2"));
    let o = prismatic(&[
        "verify-cocycle", "--algebra", "dihedral:3", "--xset", ys.to_str().unwrap(), "--cocycle", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn boundary_of_a_chain() {
    let p = scratch("chain.json");
    std::fs::write(&p, r#"[{"coef": "1", "y": 0, "blocks": [[0], [1]]}]"#).unwrap();
    let o = prismatic(&["boundary", "--algebra", "trivial:2", "--chain", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "0");
    std::fs::write(&p, r#"[{"coef": "1", "y": 0, "blocks": [[0], [7]]}]"#).unwrap();
    let o = prismatic(&["boundary", "--algebra", "trivial:2", "--chain", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn type_and_names() {
    assert_eq!(stdout(&prismatic(&["type", "--biquandle", "dihedral:3"])).trim(), "2");
    assert_eq!(stdout(&prismatic(&["type", "--biquandle", "alexander:5:2:3"])).trim(), "4");
    assert!(stdout(&prismatic(&["names"])).contains("alexander:sl2z6-det-example"));
}

#[test]
fn homology_mod_and_json() {
    let o = prismatic(&["homology", "--algebra", "trivial:2", "--degree", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["degree"], 1);
    let o = prismatic(&["homology", "--algebra", "trivial:2", "--degree", "1", "--mod", "3"]);
    assert_eq!(o.status.code(), Some(0));
}
