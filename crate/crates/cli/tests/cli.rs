use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn thinlie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thinlie"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn free_dims_text() {
    let out = thinlie(&["free-dims", "-p", "3", "--max-degree", "10"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "2,1,2,3,6,9,18,30,56,99");
}

#[test]
fn compute_theorem41_json() {
    let out = thinlie(&[
        "compute", "--preset", "theorem41", "-p", "3", "-n", "1", "-s", "1", "--max-degree", "25",
        "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["schema"], "thinlie.dims/v1");
    // degree 5 is index 4
    assert_eq!(v["dims"][4], 2);
    assert_eq!(v["dims"].as_array().unwrap().len(), 25);
}

#[test]
fn text_and_json_carry_the_same_dims() {
    let base = ["compute", "--preset", "minus1", "-p", "5", "-a", "4", "--max-degree", "28", "--thin-core"];
    let j = json(&thinlie(&[&base[..], &["--format", "json"]].concat()));
    let t = stdout(&thinlie(&base));
    let dims: Vec<String> = j["dims"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d.to_string())
        .collect();
    assert!(t.contains(&format!("dims            {}", dims.join(","))));
    assert_eq!(j["collapse_degree"], 23);
    assert!(t.contains("collapse_degree 23"));
}

#[test]
fn analyze_theorem41_types() {
    let out = thinlie(&[
        "analyze", "--preset", "theorem41", "-p", "3", "--max-degree", "25", "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["schema"], "thinlie.report/v1");
    let rec = |d: u64| {
        v["records"]
            .as_array()
            .unwrap()
            .iter()
            .find(|r| r["degree"] == d)
            .unwrap()
            .clone()
    };
    assert_eq!(rec(9)["kind"], "genuine-finite");
    assert_eq!(rec(9)["lambda"], 1);
    assert_eq!(rec(15)["lambda"], 2);
    assert_eq!(rec(21)["kind"], "fake");
}

#[test]
fn analyze_free_is_a_structural_finding() {
    let out = thinlie(&["analyze", "--preset", "free", "-p", "3", "--max-degree", "8"]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).contains("covering-failure"));
}

#[test]
fn analyze_minus1_collapse() {
    let out = thinlie(&[
        "analyze", "--preset", "minus1", "-p", "5", "-a", "4", "--max-degree", "28", "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let c = json(&out)["collapse_degree"].as_u64().unwrap();
    assert!(c <= 23);
}

#[test]
fn verify_single_and_errors() {
    let out = thinlie(&["verify", "theorem41", "-p", "3", "-n", "1", "-s", "1", "--max-degree", "25"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("PASS theorem41"));

    let out = thinlie(&["verify", "ldies", "-p", "5", "-n", "1", "-a", "4", "--max-degree", "28", "--format", "json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["results"][0]["verdict"], "pass");

    assert_eq!(code(&thinlie(&["verify", "ldies", "-p", "5", "-a", "4", "--max-degree", "20"])), 2);
    assert_eq!(code(&thinlie(&["verify", "nonsense", "-p", "5", "--max-degree", "20"])), 2);
    assert_eq!(code(&thinlie(&["verify", "ldies", "-p", "5", "--max-degree", "28"])), 2);
}

#[test]
fn verify_manifest_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.json");
    fs::write(
        &path,
        r#"{"experiments": [
            {"experiment": "superfluity", "p": 5, "n": 1, "a": 4, "max_degree": 28},
            {"experiment": "ldies", "p": 5, "n": 1, "a": 2, "max_degree": 20}
        ]}"#,
    )
    .unwrap();
    let out = thinlie(&["verify", "all", "--manifest", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["passed"], 1);
    assert_eq!(v["failed"], 1);
}

#[test]
fn save_and_load_algebra() {
    let dir = tempfile::tempdir().unwrap();
    let alg = dir.path().join("n.json");
    let report = dir.path().join("report.json");
    let out = thinlie(&[
        "compute", "--preset", "theorem41", "-p", "3", "--max-degree", "25", "--save-algebra",
        alg.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let out = thinlie(&[
        "analyze", "--load-algebra", alg.to_str().unwrap(), "--q", "3", "--format", "json", "-o",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["diamond_distances"].as_array().unwrap().len(), 10);
}

#[test]
fn relator_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.rel");
    fs::write(&good, "# maximal class start\np=3\n[y,x,y] = 0\n").unwrap();
    let out = thinlie(&["compute", "--relators", good.to_str().unwrap(), "--max-degree", "4"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("dims            2,1,1,1"));

    let out = thinlie(&["compute", "--relators", good.to_str().unwrap(), "-p", "5", "--max-degree", "4"]);
    assert_eq!(code(&out), 2);

    let bad = dir.path().join("bad.rel");
    fs::write(&bad, "p=3\n[y,x,y\n").unwrap();
    let out = thinlie(&["compute", "--relators", bad.to_str().unwrap(), "--max-degree", "4"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn usage_errors() {
    assert_eq!(code(&thinlie(&[])), 2);
    assert_eq!(code(&thinlie(&["compute", "--max-degree", "4"])), 2);
    assert_eq!(code(&thinlie(&["compute", "--preset", "free", "-p", "4", "--max-degree", "4"])), 2);
    assert_eq!(code(&thinlie(&["compute", "--preset", "free", "-p", "3", "--max-degree", "1"])), 2);
}

#[test]
fn binom() {
    let out = thinlie(&["binom", "-p", "5", "10", "5"]);
    assert_eq!(stdout(&out).trim(), "2");
    let out = thinlie(&["binom", "-p", "3", "8", "3", "--format", "json"]);
    // C(8,3) = 56 = 2 mod 3
    assert_eq!(json(&out)["value"], 2);
}
