use puptent::cli::{run, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};
use puptent::embedding::Embedded;
use puptent::report::TorusReport;

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("puptent").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn solve_json_is_flat_and_embedded() {
    let (code, out, _) = call(&["solve", "--x", "0.25", "--y", "1.0", "--t", "0.01", "--json"]);
    assert_eq!(code, EXIT_OK);
    let r: TorusReport = serde_json::from_str(&out).unwrap();
    assert!(r.theta.unwrap() < 1e-12);
    assert_eq!(r.embedding.embedded, Embedded::Yes);
    assert!(r.matches_reference);
    assert_eq!(r.hull_triangles.len(), 6);
}

#[test]
fn hex_vertex_flags_p0_p7() {
    let (code, out, _) = call(&["golden", "--x", "0.5", "--y", "0.8660254037844386"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("flag: P0 = P7"), "{out}");
}

#[test]
fn verify_passes() {
    let (code, out, _) = call(&["verify"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(!out.contains("FAIL"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(call(&["bogus"]).0, EXIT_USAGE);
    assert_eq!(call(&["solve", "--x", "0.25"]).0, EXIT_USAGE);
    assert_eq!(call(&["golden", "--x", "abc", "--y", "1"]).0, EXIT_USAGE);
    assert_eq!(call(&["--help"]).0, EXIT_OK);
}

#[test]
fn computation_errors_exit_1() {
    let (code, _, err) = call(&["golden", "--x", "0.9", "--y", "1"]);
    assert_eq!(code, EXIT_FAILURE);
    assert!(err.contains("outside"), "{err}");
    assert_eq!(call(&["solve", "--x", "0.25", "--y", "1", "--t", "0"]).0, EXIT_FAILURE);
    assert_eq!(call(&["deform", "--x", "0", "--y", "1", "--t", "0.1"]).0, EXIT_FAILURE);
}

#[test]
fn export_obj_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let obj = dir.path().join("pup.obj");
    let (code, _, _) = call(&["export", "--x", "0.25", "--y", "1", "--t", "0.125", "--format", "obj", "--out", obj.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let text = std::fs::read_to_string(&obj).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 8);
    assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 16);

    let (code, out, _) = call(&["export", "--x", "0.25", "--y", "1", "--t", "0.125"]);
    assert_eq!(code, EXIT_OK);
    let r: TorusReport = serde_json::from_str(&out).unwrap();
    assert_eq!(r.embedding.embedded, Embedded::Yes);

    let (code, out, _) = call(&["export", "--x", "0.25", "--y", "0.6614378277661477", "--what", "polygon"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("trapezoid"));
}

#[test]
fn sweep_writes_json_lines() {
    let (code, out, err) = call(&["sweep", "--nx", "2", "--ny", "2"]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert_eq!(out.lines().count(), 4);
    for line in out.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["status"], "solved");
    }
}

#[test]
fn probe_and_modulus() {
    let (code, out, _) = call(&["probe", "--x", "0.25", "--y", "1", "--t", "0.0625,0.03125"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);

    let (code, out, _) = call(&["modulus", "--x", "0.25", "--y", "1"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["distance_to_z"].as_f64().unwrap() < 1e-10);
}
