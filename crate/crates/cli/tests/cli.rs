use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn edgereg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edgereg"))
        .args(args)
        .env_remove("EDGEREG_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn schema_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../schemas")
        .join(format!("{name}.schema.json"))
}

fn assert_valid(schema: &str, instance: &Value) {
    let raw: Value =
        serde_json::from_str(&fs::read_to_string(schema_path(schema)).unwrap()).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&raw).expect("schema compiles");
    let msgs: Vec<String> = match compiled.validate(instance) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| e.to_string()).collect(),
    };
    panic!("{schema}: {msgs:?}\n{instance:#}");
}

fn json_of(args: &[&str]) -> Value {
    let o = edgereg(args);
    assert!(
        o.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn documented_examples() {
    let v = json_of(&["reg", "--graph", "fixture:c4", "--power", "2"]);
    assert_eq!(v["reg"], 4);
    assert_valid("reg", &v);

    let o = edgereg(&[
        "even",
        "--graph",
        "fixture:g-ex",
        "--product",
        "x1-x2",
        "--pair",
        "x4,x4",
    ]);
    assert_eq!(stdout(&o), "x4,x1,x2,x4\n");

    let o = edgereg(&["nu", "--graph", "fixture:c5"]);
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn json_outputs_match_schemas() {
    assert_valid("nu", &json_of(&["nu", "--graph", "fixture:g-ex", "--json"]));
    assert_valid(
        "check-vwc",
        &json_of(&["check-vwc", "--graph", "fixture:g-b", "--json"]),
    );
    assert_valid(
        "label",
        &json_of(&["label", "--graph", "fixture:g-ex", "--json"]),
    );
    let colon = json_of(&[
        "colon",
        "--graph",
        "fixture:g-ex",
        "--product",
        "x1-x2",
        "--json",
    ]);
    assert_eq!(colon["self_loops"], serde_json::json!(["y3", "x4"]));
    assert_valid("colon", &colon);
    let even = json_of(&[
        "even",
        "--graph",
        "fixture:c4",
        "--product",
        "x1-x2",
        "--pair",
        "x1,x3",
        "--json",
    ]);
    assert_eq!(even["connected"], false);
    assert_valid("even", &even);
    assert_valid(
        "even",
        &json_of(&[
            "even",
            "--graph",
            "fixture:g-ex",
            "--product",
            "x1-x2",
            "--pair",
            "y1,y2",
            "--json",
        ]),
    );
    assert_valid(
        "reg",
        &json_of(&[
            "reg",
            "--graph",
            "fixture:c5",
            "--method",
            "lcm-lattice",
            "--field",
            "gf(3)",
        ]),
    );
    assert_valid(
        "records",
        &json_of(&["verify-main", "--graph", "fixture:g-b", "--json"]),
    );
    assert_valid(
        "records",
        &json_of(&[
            "verify-colon-bound",
            "--graph",
            "fixture:c4",
            "--all-products",
            "2",
            "--json",
        ]),
    );
}

#[test]
fn exit_codes() {
    // Usage errors.
    assert_eq!(edgereg(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        edgereg(&["nu", "--graph", "fixture:c4", "--bogus"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        edgereg(&["nu", "--graph", "/nonexistent.edges"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(edgereg(&["nu"]).status.code(), Some(2));
    // Verification failures.
    assert_eq!(
        edgereg(&["check-vwc", "--graph", "fixture:well-covered-9"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        edgereg(&["verify-main", "--graph", "fixture:well-covered-9"])
            .status
            .code(),
        Some(1)
    );
    // Budgets.
    let o = edgereg(&[
        "reg",
        "--graph",
        "fixture:g-ex",
        "--power",
        "3",
        "--max-raw-generators",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_edgereg"))
        .args(["reg", "--graph", "fixture:g-ex", "--power", "3"])
        .env("EDGEREG_BUDGET_MAX_RAW_GENERATORS", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    // Flags override the environment.
    let o = Command::new(env!("CARGO_BIN_EXE_edgereg"))
        .args([
            "reg",
            "--graph",
            "fixture:c4",
            "--power",
            "2",
            "--max-raw-generators",
            "1000",
        ])
        .env("EDGEREG_BUDGET_MAX_RAW_GENERATORS", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn gf_fields_warn() {
    let o = edgereg(&["reg", "--graph", "fixture:c4", "--field", "gf(2)"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn emitted_objects_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = edgereg(&["fixtures", "--out-dir", d.to_str().unwrap()]);
    assert!(o.status.success());
    let listed = stdout(&edgereg(&["fixtures"]));
    for name in listed.lines() {
        let path = d.join(format!("{name}.edges"));
        let a = stdout(&edgereg(&[
            "nu",
            "--graph",
            path.to_str().unwrap(),
            "--json",
        ]));
        let b = stdout(&edgereg(&[
            "nu",
            "--graph",
            &format!("fixture:{name}"),
            "--json",
        ]));
        assert_eq!(a, b, "{name}");
    }

    // The colon ideal text re-parses to the same ideal.
    let ideal = d.join("colon.ideal");
    let o = edgereg(&[
        "colon",
        "--graph",
        "fixture:g-ex",
        "--product",
        "x1-x2",
        "--out",
        ideal.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let direct = json_of(&[
        "colon",
        "--graph",
        "fixture:g-ex",
        "--product",
        "x1-x2",
        "--json",
    ]);
    let reread = json_of(&["reg", "--ideal", ideal.to_str().unwrap()]);
    assert_eq!(reread["ideal"], direct["ideal"]);

    // The colon graph text re-parses to the same graph.
    let gp = d.join("gprime.edges");
    let o = edgereg(&[
        "colon",
        "--graph",
        "fixture:g-b",
        "--product",
        "x1-y2",
        "--gprime",
        "--out",
        gp.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let again = stdout(&edgereg(&[
        "colon",
        "--graph",
        gp.to_str().unwrap(),
        "--product",
        "x1-y1",
        "--json",
    ]));
    let v: Value = serde_json::from_str(&again).unwrap();
    assert_eq!(v["squarefree"], true);
    let o = edgereg(&["check-vwc", "--graph", gp.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn sweeps_are_deterministic_and_thread_independent() {
    let dir = tempfile::tempdir().unwrap();
    let run = |threads: &str, name: &str| {
        let csv = dir.path().join(name);
        let o = edgereg(&[
            "sweep",
            "--family",
            "random-graph",
            "--size",
            "6",
            "--samples",
            "10",
            "--seed",
            "3",
            "--no-timings",
            "--threads",
            threads,
            "--csv",
            csv.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        fs::read(csv).unwrap()
    };
    let a = run("1", "a.csv");
    let b = run("4", "b.csv");
    assert_eq!(a, b);
    assert!(String::from_utf8(a)
        .unwrap()
        .starts_with("statement,graph,s,nu,expected,computed,pass,millis\n"));
}

#[test]
fn sweep_json_mirror() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("out.json");
    let o = edgereg(&[
        "sweep",
        "--family",
        "fixture",
        "--no-timings",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&fs::read_to_string(json).unwrap()).unwrap();
    assert_valid("records", &v);
    assert!(v
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r["statement"] == "c5-power"));
}

#[test]
fn random_sweeps_need_a_seed() {
    let o = edgereg(&["sweep", "--family", "random-graph"]);
    assert_eq!(o.status.code(), Some(2));
}
