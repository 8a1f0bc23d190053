use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{}", env!("CARGO_MANIFEST_DIR"), name)
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("toricdef-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toricdef")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn all_on_the_worked_example() {
    let o = run(&["--input", &fixture("sec7.json"), "all"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("== Hilbert basis E =="));
    assert!(s.contains("z8 = [-1,0,2]"));
    assert!(s.contains("dim T1(-R) = 1"));
    assert!(s.contains("[2,-1,1]"));
}

#[test]
fn t1_on_the_second_example() {
    let s = stdout(&run(&["--input", &fixture("sec34.json"), "t1"]));
    assert!(s.contains("dim T1(-R) = 1"));
    assert!(s.contains("C(Q) rays: [13,0,15,10] [2,15,0,5]"));
}

#[test]
fn hilbert_of_the_orthant() {
    let p = scratch("orthant.json", r#"{"rays":[[1,0,0],[0,1,0],[0,0,1]],"R":[2,0,1]}"#);
    let o = run(&["--input", p.to_str().unwrap(), "--format", "json", "hilbert"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let mut got: Vec<Vec<i64>> = serde_json::from_value(v["hilbert"]["elements"].clone()).unwrap();
    got.sort();
    assert_eq!(got, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0], vec![2, 0, 1]]);
}

#[test]
fn exit_codes() {
    let bad = scratch("bad.json", "{bad");
    assert_eq!(run(&["--input", bad.to_str().unwrap(), "hilbert"]).status.code(), Some(2));
    let unknown = scratch("unknown.json", r#"{"rays":[[1,0,0],[0,1,0],[0,0,1]],"R":[1,1,1],"x":0}"#);
    assert_eq!(run(&["--input", unknown.to_str().unwrap(), "hilbert"]).status.code(), Some(2));
    let imprimitive = scratch("imprimitive.json", r#"{"rays":[[0,0,1],[1,0,1],[0,1,1]],"R":[0,0,2]}"#);
    let o = run(&["--input", imprimitive.to_str().unwrap(), "cross-section"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("toricdef: "));
}

#[test]
fn output_is_deterministic() {
    let args = ["--input", &fixture("sec7.json"), "--format", "json", "all"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn text_and_json_agree() {
    let f = fixture("sec7.json");
    let text = stdout(&run(&["--input", &f, "t2"]));
    let v: serde_json::Value = serde_json::from_str(&stdout(&run(&["--input", &f, "--format", "json", "t2"]))).unwrap();
    let rows: Vec<String> = v["t2"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| format!("{} | {} | {}", r["k"], r["w"], r["t2"]))
        .collect();
    assert_eq!(rows.len(), 3);
    for r in rows {
        assert!(text.lines().any(|l| l == r), "missing row {r}");
    }
}
