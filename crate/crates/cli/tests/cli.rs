use std::process::{Command, Output};

fn osculant(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_osculant"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const QUARTIC: &str = r#"{"kind":"rnc","params":{"d":4}}"#;
const MINORS: &str = r#"{"kind":"segre","params":{"dims":[2,3]}}"#;

#[test]
fn tangent_quadric_of_the_quartic() {
    let o = osculant(&["equations", QUARTIC, "--q", "1", "--k", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "dim=1; basis: x0*x4 - 4*x1*x3 + 3*x2^2");
}

#[test]
fn sampled_equations_are_labeled() {
    let o = osculant(&[
        "equations",
        QUARTIC,
        "--q",
        "1",
        "--k",
        "1",
        "--method",
        "sampling",
        "--seed",
        "17",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("(probabilistic, seed=17)"));
}

#[test]
fn betti_row_as_csv() {
    let o = osculant(&["betti-row", MINORS, "--q", "1", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "p,dim\n0,3\n1,2\n2,0\n");
}

#[test]
fn modular_rows_are_filters() {
    let o = osculant(&[
        "betti-row",
        MINORS,
        "--q",
        "1",
        "--arithmetic",
        "modp:2147483647",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["label"], "filter");
    assert_eq!(v["row"], serde_json::json!([3, 2, 0]));
}

#[test]
fn output_is_reproducible() {
    let args = [
        "betti-row",
        r#"{"kind":"rnc","params":{"d":5}}"#,
        "--q",
        "1",
        "--k",
        "1",
        "--format",
        "json",
    ];
    let (a, b) = (osculant(&args), osculant(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn input_errors_exit_with_one() {
    for args in [
        vec!["equations", "{not json", "--q", "1"],
        vec!["equations", QUARTIC, "--q", "1", "--arithmetic", "modp:7"],
        vec!["equations", QUARTIC, "--q", "1", "--method", "guess"],
        vec!["equations", "/nonexistent/variety.json", "--q", "1"],
        vec!["verify", "no-such-suite"],
        vec!["equations", QUARTIC],
    ] {
        let o = osculant(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn verify_suite_passes() {
    let o = osculant(&["verify", "intro", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v["checks"].as_array().is_some_and(|c| !c.is_empty()));
}
