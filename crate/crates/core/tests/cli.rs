use std::path::{Path, PathBuf};

use eddsolve::cli::run_with;
use eddsolve::{mutually_associate, parse_matrix, DenseMatrix, Int};

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["eddsolve"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

/// Matrix printed after the `# NAME` marker.
fn section(out: &str, name: &str) -> DenseMatrix<Int> {
    let marker = format!("# {name}\n");
    let start = out.find(&marker).unwrap_or_else(|| panic!("no {name} in\n{out}")) + marker.len();
    let rest = &out[start..];
    let end = rest.find("\n#").map_or(rest.len(), |i| i + 1);
    parse_matrix(&rest[..end]).unwrap()
}

fn fixture(name: &str) -> DenseMatrix<Int> {
    parse_matrix(&std::fs::read_to_string(data(name)).unwrap()).unwrap()
}

#[test]
fn solve_gcd_on_worked_example() {
    let (code, out, _) = run(&["solve", &data("example_B.mat"), &data("example_A.mat"), "--gcd"]);
    assert_eq!(code, 0);
    assert!(out.contains("n=7 k=3 t=5"), "{out}");
    let f = section(&out, "F");
    assert!(mutually_associate(&f, &fixture("example_F.mat")).unwrap());
}

#[test]
fn lcm_witness_is_projector() {
    let (code, out, _) = run(&["lcm", &data("example_B.mat"), &data("example_A.mat"), "--witness"]);
    assert_eq!(code, 0);
    let (n, k) = (section(&out, "N"), section(&out, "K"));
    assert_eq!(&k * &fixture("example_F.mat"), n);
}

#[test]
fn gcd_witness_divides_lcm() {
    let (code, out, _) = run(&["gcd", &data("example_B.mat"), &data("example_A.mat"), "--witness"]);
    assert_eq!(code, 0);
    let (f, m) = (section(&out, "F"), section(&out, "M"));
    let (_, out, _) = run(&["lcm", &data("example_B.mat"), &data("example_A.mat")]);
    assert_eq!(&f * &m, section(&out, "N"));
}

#[test]
fn divides_reports_failure_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let two = write(dir.path(), "two.mat", "2 2\n2 0\n0 2\n");
    let id = write(dir.path(), "id.mat", "2 2\n1 0\n0 1\n");
    let (code, out, _) = run(&["divides", two.to_str().unwrap(), id.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("left divides: false"));
    let (code, out, _) = run(&["divides", id.to_str().unwrap(), two.to_str().unwrap(), "--witness"]);
    assert_eq!(code, 0);
    assert_eq!(section(&out, "W"), DenseMatrix::from_i64(&[&[2, 0], &[0, 2]]));
}

#[test]
fn unsolvable_prints_obstruction() {
    let dir = tempfile::tempdir().unwrap();
    let b = write(dir.path(), "b.mat", "2 2\n2 0\n0 2\n");
    let a = write(dir.path(), "a.mat", "2 2\n1 0\n0 1\n");
    let (code, out, _) = run(&["solve", b.to_str().unwrap(), a.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("unsolvable"), "{out}");
    let (code, out, _) = run(&["--json", "solve", b.to_str().unwrap(), a.to_str().unwrap()]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["solvable"], false);
    assert_eq!(v["obstruction"]["kind"], "divisibility");
}

#[test]
fn verify_battery_passes() {
    let (code, out, _) = run(&[
        "verify",
        &data("example_B.mat"),
        &data("example_A.mat"),
        "--trials",
        "50",
        "--seed",
        "7",
        "--expect-gcd",
        &data("example_F.mat"),
        "--expect-lcm",
        &data("example_N.mat"),
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().all(|l| l.starts_with("PASS")), "{out}");
    assert!(out.contains("trial-50/solvability-preserved"));
    assert!(out.contains("base/gcd-associate"));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", &data("example_B.mat"), &data("example_A.mat"), "--trials", "5", "--seed", "3"];
    let args: Vec<&str> = args.iter().map(|s| s.as_ref()).collect();
    assert_eq!(run(&args), run(&args));
}

#[test]
fn parse_errors_exit_two_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.mat", "2 2\n1 0\n0 x\n");
    let (code, _, err) = run(&["snf", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3, column 3"), "{err}");
    let (code, _, _) = run(&["snf", "/nonexistent/m.mat"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["verify", &data("example_B.mat"), &data("example_A.mat"), "--trials", "0"]);
    assert_eq!(code, 2);
}

#[test]
fn snf_json_shape() {
    let (code, out, _) = run(&["--json", "snf", &data("example_B.mat")]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rank"], 5);
    assert_eq!(v["invariant_factors"], serde_json::json!(["1", "1", "2", "4", "12"]));
    for key in ["P", "Pinv", "E", "Q", "Qinv"] {
        assert_eq!(v[key]["rows"], 7);
        assert_eq!(v[key]["cols"], 7);
        assert_eq!(v[key]["entries"].as_array().unwrap().len(), 7);
    }
}

#[test]
fn snf_output_round_trips() {
    let (code, out, _) = run(&["snf", &data("example_B.mat")]);
    assert_eq!(code, 0);
    let b = fixture("example_B.mat");
    let (p, e, q) = (section(&out, "P"), section(&out, "E"), section(&out, "Q"));
    assert_eq!(&(&p * &b) * &q, e);
    assert_eq!(&p * &section(&out, "Pinv"), DenseMatrix::identity(7));
    assert_eq!(&q * &section(&out, "Qinv"), DenseMatrix::identity(7));
}

#[test]
fn with_params_picks_coset_member() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "t.mat", "2 7\n1 0 0 0 2 1 0\n0 3 0 0 0 0 1\n");
    let (code, out, _) = run(&["solve", &data("example_B.mat"), &data("example_A.mat"), "--with-params", t.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    let x = section(&out, "X");
    assert_eq!(&fixture("example_B.mat") * &x, fixture("example_A.mat"));
}

#[test]
fn polynomial_ring() {
    let dir = tempfile::tempdir().unwrap();
    let b = write(dir.path(), "b.mat", "2 2\n[0,1] [0]\n[0] [1]\n");
    let a = write(dir.path(), "a.mat", "2 2\n[0,0,1] [0]\n[0] [1/2,1]\n");
    let (code, out, _) = run(&["--ring", "polyq", "solve", b.to_str().unwrap(), a.to_str().unwrap(), "--particular"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("[0,1]"), "{out}");
    let (code, out, _) = run(&["--ring", "polyq", "annihilator", b.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("rank(B) = 2"));
}
