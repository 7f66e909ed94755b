use std::io::Write;
use std::process::{Command, Output};

fn tautilt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tautilt")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn worked_example_passes() {
    let o = tautilt(&["verify", "paper-example"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 8);
    assert!(out.lines().all(|l| l.starts_with("PASS")));
    assert!(out.contains("3 modules") && out.contains("5 ↦ 5") && out.contains("10 ↦ 10") && out.contains("5 objects"));
}

#[test]
fn signed_sequences_on_a2() {
    let o = tautilt(&["--algebra", "a2", "seq", "list", "--signed"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with('(')).count(), 10);
    assert!(out.contains("(P1[1], S1)"));
    let o = tautilt(&["--algebra", "a2", "seq", "list"]);
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with('(')).count(), 3);
}

#[test]
fn tau_list_over_dual_numbers() {
    let o = tautilt(&["--algebra", "a2-dual-numbers", "--format", "json", "tau", "list"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let dims: Vec<Vec<u64>> = v.as_array().unwrap().iter().map(|r| serde_json::from_value(r["dims"].clone()).unwrap()).collect();
    assert_eq!(dims, vec![vec![0, 2], vec![2, 0], vec![2, 2]]);
}

#[test]
fn output_is_deterministic() {
    let args = ["--algebra", "example-7", "--format", "json", "cluster", "build"];
    let a = tautilt(&args);
    let b = tautilt(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let dot = tautilt(&["--algebra", "example-7", "cluster", "build", "--dot"]);
    assert_eq!(stdout(&dot).matches("->").count(), 11);
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(tautilt(&["--algebra", "no-such-fixture", "tau", "list"]).status.code(), Some(2));
    assert_eq!(tautilt(&["--algebra", "a2", "verify", "bijections"]).status.code(), Some(2));
    assert_eq!(tautilt(&["--algebra", "a2", "perp", "--object", "Q7"]).status.code(), Some(2));
    assert_eq!(tautilt(&["--algebra", "a2", "--format", "dot", "tau", "list"]).status.code(), Some(2));
}

#[test]
fn algebra_files_load() {
    let dir = std::env::temp_dir().join(format!("tautilt-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a2.json");
    let mut f = std::fs::File::create(&path).unwrap();
    write!(
        f,
        r#"{{"vertices": ["1", "2"], "arrows": [{{"label": "a", "src": "1", "tgt": "2"}}], "nilpotency_bound": 2}}"#
    )
    .unwrap();
    let o = tautilt(&["--algebra", path.to_str().unwrap(), "stt", "list"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("total 5"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn perp_reports_gamma() {
    let o = tautilt(&["--algebra", "example-7", "--format", "json", "perp", "--object", "P1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["gamma"]["dim"], 4);
    assert_eq!(v["gamma"]["local"], true);
}
