use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use fraggroup_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let mut buf = vec![0 as c_char; 256];
    unsafe {
        assert_eq!(fg_last_error(buf.as_mut_ptr(), buf.len(), ptr::null_mut()), FgStatus::Ok);
        CStr::from_ptr(buf.as_ptr()).to_string_lossy().into_owned()
    }
}

fn element(sys: *const FgSystem, word: &str) -> *mut FgElement {
    let mut g = ptr::null_mut();
    let w = cstr(word);
    assert_eq!(unsafe { fg_element_from_word(sys, w.as_ptr(), &mut g) }, FgStatus::Ok);
    g
}

#[test]
fn handles_and_orders() {
    unsafe {
        let mut sys = ptr::null_mut();
        assert_eq!(fg_system_load(cstr("grigorchuk").as_ptr(), &mut sys), FgStatus::Ok);
        let mut n = 0;
        assert_eq!(fg_system_generator_count(sys, &mut n), FgStatus::Ok);
        assert_eq!(n, 4);
        for (word, k) in [("a b3", 4), ("a b2", 8), ("a b1", 16), ("", 1)] {
            let g = element(sys, word);
            let mut order = 0;
            assert_eq!(fg_element_order(g, 64, &mut order), FgStatus::Ok);
            assert_eq!(order, k, "{word}");
            fg_element_free(g);
        }
        let g = element(sys, "a b1");
        let mut order = 0;
        assert_eq!(fg_element_order(g, 8, &mut order), FgStatus::ExceedsBound);

        let a = element(sys, "a");
        let mut aa = ptr::null_mut();
        assert_eq!(fg_element_compose(a, a, &mut aa), FgStatus::Ok);
        let id = element(sys, "");
        let mut eq = false;
        assert_eq!(fg_element_equal(aa, id, &mut eq), FgStatus::Ok);
        assert!(eq);

        let mut needed = 0;
        assert_eq!(fg_element_evaluate(a, cstr("(0)").as_ptr(), ptr::null_mut(), 0, &mut needed), FgStatus::BufferTooSmall);
        let mut buf = vec![0 as c_char; needed];
        assert_eq!(fg_element_evaluate(a, cstr("(0)").as_ptr(), buf.as_mut_ptr(), buf.len(), ptr::null_mut()), FgStatus::Ok);
        assert_eq!(CStr::from_ptr(buf.as_ptr()).to_str().unwrap(), "1(0)");
        assert_eq!(fg_element_evaluate(a, cstr("(2)").as_ptr(), buf.as_mut_ptr(), buf.len(), ptr::null_mut()), FgStatus::Parse);

        for p in [g, a, aa, id] {
            fg_element_free(p);
        }
        fg_system_free(sys);
    }
}

#[test]
fn error_reporting() {
    unsafe {
        let mut sys = ptr::null_mut();
        assert_eq!(fg_system_load(ptr::null(), &mut sys), FgStatus::NullPointer);
        assert_eq!(fg_system_load(cstr("f").as_ptr(), &mut sys), FgStatus::Ok);
        let mut g = ptr::null_mut();
        assert_eq!(fg_element_from_word(sys, cstr("a0 zz").as_ptr(), &mut g), FgStatus::UnknownGenerator);
        assert!(last_error().contains("zz"));
        assert!(g.is_null());
        let mut passed = false;
        assert_eq!(fg_verify(cstr("frag").as_ptr(), 1, &mut passed), FgStatus::Ok);
        assert!(passed);
        assert_eq!(fg_verify(cstr("bogus").as_ptr(), 1, &mut passed), FgStatus::InvalidArgument);
        fg_system_free(sys);
        fg_system_free(ptr::null_mut());
        assert!(!CStr::from_ptr(fg_version()).to_str().unwrap().is_empty());
    }
}

fn target_dir() -> PathBuf {
    // tests run from <target>/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links_from_c() {
    let crate_dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libfraggroup_ffi.a");
    let out = target_dir().join("fraggroup_c_smoke");
    let status = Command::new("cc")
        .arg(crate_dir.join("tests/smoke.c"))
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .expect("a C compiler is available");
    assert!(status.success(), "cc failed (static library at {})", lib.display());
    let run = Command::new(&out).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "order 4");
}
