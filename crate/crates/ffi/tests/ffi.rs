use std::ffi::CStr;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use puptent_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(pt_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn solved_torus_round_trip() {
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(pt_torus_new(0.25, 1.0, 0.01, PtMode::Solved, &mut t), PtStatus::Ok);
        assert!(!t.is_null());

        let mut v = [0.0; 24];
        assert_eq!(pt_torus_vertices(t, v.as_mut_ptr()), PtStatus::Ok);
        for j in 0..8 {
            let k = 7 - j;
            assert_eq!(v[3 * j], -v[3 * k]);
            assert_eq!(v[3 * j + 1], -v[3 * k + 1]);
            assert_eq!(v[3 * j + 2], v[3 * k + 2]);
        }

        let mut theta = f64::NAN;
        assert_eq!(pt_torus_theta(t, &mut theta), PtStatus::Ok);
        assert!(theta < 1e-12);

        let (mut e, mut m) = (PtEmbedded::No, false);
        assert_eq!(pt_torus_embedding(t, &mut e, &mut m), PtStatus::Ok);
        assert_eq!(e, PtEmbedded::Yes);
        assert!(m);

        let mut hull = 0;
        assert_eq!(pt_torus_hull_triangle_count(t, &mut hull), PtStatus::Ok);
        assert_eq!(hull, 6);

        let mut json = ptr::null_mut();
        assert_eq!(pt_torus_to_json(t, &mut json), PtStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        pt_string_free(json);
        let r: puptent::report::TorusReport = serde_json::from_str(&text).unwrap();
        assert_eq!(r.vertices.iter().flatten().copied().collect::<Vec<_>>(), v.to_vec());

        pt_torus_free(t);
    }
}

#[test]
fn golden_tent_has_no_defect_at_hex_vertex() {
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(pt_torus_new(0.5, 3f64.sqrt() / 2.0, 0.0, PtMode::Golden, &mut t), PtStatus::Ok);
        let mut theta = 0.0;
        assert_eq!(pt_torus_theta(t, &mut theta), PtStatus::Degenerate);
        assert!(!last_error().is_empty());
        pt_torus_free(t);
    }
}

#[test]
fn errors_map_to_status_codes() {
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(pt_torus_new(0.9, 1.0, 0.0, PtMode::Golden, &mut t), PtStatus::OutsideDomain);
        assert!(t.is_null());
        assert!(last_error().contains("outside"));

        assert_eq!(pt_torus_new(0.25, -1.0, 0.0, PtMode::Golden, &mut t), PtStatus::InvalidArgument);
        assert_eq!(pt_torus_new(0.0, 1.2, 0.1, PtMode::Deformed, &mut t), PtStatus::NotInterior);
        assert_eq!(pt_torus_new(0.25, 1.0, 0.0, PtMode::Solved, &mut t), PtStatus::InvalidArgument);
        assert_eq!(pt_torus_new(0.25, 1.0, 0.0, PtMode::Golden, ptr::null_mut()), PtStatus::NullPointer);
        assert_eq!(pt_torus_vertices(ptr::null(), [0.0; 24].as_mut_ptr()), PtStatus::NullPointer);

        assert_eq!(pt_torus_new(0.25, 1.0, 0.0, PtMode::Golden, &mut t), PtStatus::Ok);
        assert!(last_error().is_empty());
        pt_torus_free(t);
        pt_torus_free(ptr::null_mut());
        pt_string_free(ptr::null_mut());
    }
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(pt_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

// `cargo test` leaves the static library next to the test binary in `deps/`.
fn static_library() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    let deps = exe.parent().unwrap();
    [deps, deps.parent().unwrap()]
        .iter()
        .map(|d| d.join("libpuptent_ffi.a"))
        .find(|p| p.exists())
        .expect("libpuptent_ffi.a not built")
}

#[test]
fn c_program_links_against_static_library() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let lib = static_library();
    let out = tempfile::tempdir().unwrap();
    let exe = out.path().join("demo");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(format!("{dir}/include"))
        .arg(format!("{dir}/examples/demo.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&exe).output().unwrap();
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(run.status.success(), "{stdout}");
    assert!(stdout.contains("hull = 6"), "{stdout}");
}
