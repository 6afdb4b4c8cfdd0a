use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use arbor_ffi::*;

const INV1D: &str = r#"{"kind":"comm","convention":"divided-power","dimension":1,"truncation":5,"components":[{"coeffs":[{"alpha":[1],"value":"1"},{"alpha":[2],"value":"-1"}]}]}"#;
const CATALAN: &str = r#"{"kind":"free","convention":"plain","dimension":1,"truncation":5,"components":[{"coeffs":[{"word":[1],"value":"1"},{"word":[1,1],"value":"-1"}]}]}"#;

fn last_error() -> String {
    unsafe { CStr::from_ptr(arbor_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

unsafe fn comm(json: &str) -> *mut ArborCommMap {
    let text = CString::new(json).unwrap();
    let mut map = ptr::null_mut();
    assert_eq!(
        arbor_comm_map_from_json(text.as_ptr(), &mut map),
        ArborStatus::Ok
    );
    map
}

unsafe fn comm_json(map: *const ArborCommMap) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(arbor_comm_map_to_json(map, &mut s), ArborStatus::Ok);
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    arbor_string_free(s);
    out
}

#[test]
fn inversion_round_trip() {
    unsafe {
        let f = comm(INV1D);
        assert_eq!(comm_json(f), INV1D);
        let mut tree = ptr::null_mut();
        let mut rec = ptr::null_mut();
        assert_eq!(
            arbor_comm_invert(f, ArborInvertPath::Tree, &mut tree),
            ArborStatus::Ok
        );
        assert_eq!(
            arbor_comm_invert(f, ArborInvertPath::Recursive, &mut rec),
            ArborStatus::Ok
        );
        let text = comm_json(tree);
        assert_eq!(text, comm_json(rec));
        assert!(text.contains(r#"{"alpha":[5],"value":"105"}"#));

        let mut id = ptr::null_mut();
        assert_eq!(arbor_comm_compose(f, tree, false, &mut id), ArborStatus::Ok);
        assert!(comm_json(id).ends_with(r#"[{"coeffs":[{"alpha":[1],"value":"1"}]}]}"#));
        let mut id2 = ptr::null_mut();
        assert_eq!(arbor_comm_compose(tree, f, true, &mut id2), ArborStatus::Ok);
        assert_eq!(comm_json(id), comm_json(id2));

        for m in [f, tree, rec, id, id2] {
            arbor_comm_map_free(m);
        }
    }
}

#[test]
fn phi_and_fern() {
    unsafe {
        let h = comm(
            r#"{"kind":"comm","convention":"divided-power","dimension":2,"truncation":2,"components":[{"coeffs":[{"alpha":[0,2],"value":"2"}]},{"coeffs":[]}]}"#,
        );
        let mut flag = false;
        assert_eq!(arbor_fern_check(h, 2, 2, true, &mut flag), ArborStatus::Ok);
        assert!(flag);
        assert_eq!(arbor_fern_check(h, 1, 1, false, &mut flag), ArborStatus::Ok);
        assert!(!flag);
        assert_eq!(
            arbor_fern_check(h, 2, 1, false, &mut flag),
            ArborStatus::InvalidArgument
        );
        assert!(last_error().contains("degree bound"));

        let mut p = ptr::null_mut();
        assert_eq!(arbor_comm_phi(h, &mut p), ArborStatus::Ok);
        let mut pp = ptr::null_mut();
        assert_eq!(arbor_comm_phi(p, &mut pp), ArborStatus::Ok);
        assert_eq!(comm_json(pp), comm_json(h));
        for m in [h, p, pp] {
            arbor_comm_map_free(m);
        }
    }
}

#[test]
fn free_maps() {
    unsafe {
        let text = CString::new(CATALAN).unwrap();
        let mut f = ptr::null_mut();
        assert_eq!(
            arbor_free_map_from_json(text.as_ptr(), &mut f),
            ArborStatus::Ok
        );
        let mut g = ptr::null_mut();
        assert_eq!(
            arbor_free_invert(f, ArborInvertPath::Alternating, &mut g),
            ArborStatus::Ok
        );
        let mut s = ptr::null_mut();
        assert_eq!(arbor_free_map_to_json(g, &mut s), ArborStatus::Ok);
        assert!(CStr::from_ptr(s)
            .to_str()
            .unwrap()
            .contains(r#"{"word":[1,1,1,1,1],"value":"14"}"#));
        arbor_string_free(s);
        let mut id = ptr::null_mut();
        assert_eq!(arbor_free_compose(f, g, &mut id), ArborStatus::Ok);
        for m in [f, g, id] {
            arbor_free_map_free(m);
        }
    }
}

#[test]
fn status_codes() {
    unsafe {
        let mut map = ptr::null_mut();
        let bad = CString::new("{").unwrap();
        assert_eq!(
            arbor_comm_map_from_json(bad.as_ptr(), &mut map),
            ArborStatus::ParseError
        );
        assert!(map.is_null());
        assert_eq!(
            arbor_comm_map_from_json(ptr::null(), &mut map),
            ArborStatus::NullPointer
        );

        let singular = comm(
            r#"{"kind":"comm","convention":"divided-power","dimension":1,"truncation":2,"components":[{"coeffs":[{"alpha":[2],"value":"1"}]}]}"#,
        );
        let mut out = ptr::null_mut();
        assert_eq!(
            arbor_comm_invert(singular, ArborInvertPath::Reduction, &mut out),
            ArborStatus::NotInvertible
        );
        assert_eq!(
            arbor_comm_invert(singular, ArborInvertPath::Tree, &mut out),
            ArborStatus::NonIdentityLinearTerm
        );
        arbor_comm_map_free(singular);

        let mut n = 0u64;
        assert_eq!(arbor_count_proper_trees(5, false, &mut n), ArborStatus::Ok);
        assert_eq!(n, 236);
        assert_eq!(
            arbor_count_proper_trees(20, false, &mut n),
            ArborStatus::ResourceLimit
        );
        assert_eq!(
            CStr::from_ptr(arbor_version()).to_str().unwrap(),
            env!("CARGO_PKG_VERSION")
        );
    }
}

fn target_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_static_library() {
    let lib = target_dir().join("libarbor_ffi.a");
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler, skipping");
        return;
    };
    if !lib.exists() {
        eprintln!("{} not built, skipping", lib.display());
        return;
    }
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::temp_dir().join(format!("arbor_c_smoke_{}", std::process::id()));
    let status = Command::new(cc)
        .arg(dir.join("tests/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_file(&exe);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        "236 1,1,3,15,105 ok"
    );
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok())
        .ok_or(())
}
