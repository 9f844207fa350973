use std::process::{Command, Output};

fn amdeg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amdeg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{}", env!("CARGO_MANIFEST_DIR"), name)
}

#[test]
fn scroll_prints_the_conic() {
    let o = amdeg(&["scroll", "S(2)"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("ring x0 x1 x2 mod 32003 order degrevlex"));
    assert!(s.contains("-x1^2 + x0*x2"));
}

#[test]
fn scroll_json_has_matrix_and_generators() {
    let o = amdeg(&["scroll", "S(2,2,6)", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["matrix"][0].as_array().unwrap().len(), 10);
    assert_eq!(v["matrix"][0][2], "x3");
    assert_eq!(v["generators"].as_array().unwrap().len(), 45);
}

#[test]
fn cone_gets_a_vertex_variable() {
    let o = amdeg(&["scroll", "S(1,1,2)+vertex:0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["ring"].as_str().unwrap().contains("x7 mod"));
    assert_eq!(v["dim"], 4);
}

#[test]
fn project_example_gives_32_quadrics() {
    let o = amdeg(&["project", "S(2,2,6)", "--point", "e9"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("32 of degree 2"));
    assert!(!s.contains("degree 3"));
}

#[test]
fn project_from_a_point_on_the_scroll_is_an_input_error() {
    let o = amdeg(&["project", "S(2,2,6)", "--point", "e0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("lies on the variety"));
}

#[test]
fn random_point_is_reproducible() {
    let a = amdeg(&[
        "project",
        "S(2,3)",
        "--random-point",
        "--seed",
        "7",
        "--format",
        "json",
    ]);
    let b = amdeg(&[
        "project",
        "S(2,3)",
        "--random-point",
        "--seed",
        "7",
        "--format",
        "json",
    ]);
    let c = amdeg(&[
        "project",
        "S(2,3)",
        "--random-point",
        "--seed",
        "8",
        "--format",
        "json",
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn containing_scroll_is_certified() {
    let o = amdeg(&[
        "project",
        "S(2,4,4)",
        "--point",
        "e1",
        "--containing-scroll",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["containing_scroll"]["valid"], true);
    assert_eq!(v["containing_scroll"]["dim_scroll"], 4);
}

#[test]
fn analyze_depth_three_example() {
    let o = amdeg(&["analyze", "ex6.2B", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["t"], 3);
    assert_eq!(v["is_amd"], true);
    assert_eq!(v["quadric_count"], 34);
}

#[test]
fn analyze_scroll_file() {
    let o = amdeg(&["analyze", &data("twisted_cubic.ideal")]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("minimal degree   yes"));
    assert!(s.contains("almost minimal   no"));
}

#[test]
fn analyze_pfaffians_is_gorenstein() {
    let o = amdeg(&["analyze", "pfaffian"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("Gorenstein       yes"));
}

#[test]
fn betti_tables_in_uv_layout() {
    let o = amdeg(&["betti", "ex6.2A"]);
    let s = stdout(&o);
    assert!(
        s.contains("u: 33 142 278 284 155  48   7  0  0  0"),
        "{}",
        s
    );
    assert!(
        s.contains("v:  1   9  40 141 266 266 156 55 11  1"),
        "{}",
        s
    );
    let o = amdeg(&["betti", "ex6.1C"]);
    let s = stdout(&o);
    assert!(
        s.contains("u: 32 133 248 234 140  48   7   0  0  0  0"),
        "{}",
        s
    );
    assert!(
        s.contains("v:  3  34 155 456 728 728 486 220 66 12  1"),
        "{}",
        s
    );
}

#[test]
fn betti_of_a_polynomial_ring() {
    let o = amdeg(&["betti", &data("plane.ideal"), "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["entries"], serde_json::json!([[0, 0, 1]]));
}

#[test]
fn bad_inputs_exit_with_two() {
    assert_eq!(
        amdeg(&["betti", &data("inhomogeneous.ideal")])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        amdeg(&["analyze", &data("plane.ideal")]).status.code(),
        Some(2)
    );
    assert_eq!(amdeg(&["analyze", "no-such-thing"]).status.code(), Some(2));
    assert_eq!(amdeg(&["verify", "ex9.9"]).status.code(), Some(2));
    assert_eq!(
        amdeg(&["analyze", "S(2,3)", "--window", "4..-6"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(amdeg(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn window_and_prime_flags() {
    let o = amdeg(&[
        "analyze", "quartic", "--window", "-2..2", "--prime", "101", "--format", "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["window"], serde_json::json!([-2, 2]));
    assert_eq!(v["deficiency"]["1"]["hilbert"]["-1"], 1);
}

#[test]
fn verify_single_fixture() {
    let o = amdeg(&["verify", "ex6.3A", "--verbose"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("ex6.3A     PASS"));
    assert!(s.contains("PASS gorenstein"));
}

#[test]
fn verify_all_is_green() {
    let o = amdeg(&["verify", "--all", "--jobs", "2"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let s = stdout(&o);
    assert_eq!(s.lines().filter(|l| l.contains(" PASS (")).count(), 8);
    assert!(s.contains("all fixtures pass"));
}

#[test]
fn verify_json_is_byte_stable() {
    let a = amdeg(&["verify", "quartic", "veronese", "--format", "json"]);
    let b = amdeg(&[
        "verify", "quartic", "veronese", "--format", "json", "--jobs", "2",
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_list() {
    let o = amdeg(&["verify", "--list"]);
    let s = stdout(&o);
    assert_eq!(s.lines().filter(|l| l.contains(" * ")).count(), 8);
}
