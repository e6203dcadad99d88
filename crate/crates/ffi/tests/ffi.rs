use crg_ffi::*;
use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { crg_string_free(s) };
    out
}

fn group(spec: &str) -> *mut CrgGroup {
    let text = CString::new(spec).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { crg_group_new(text.as_ptr(), ptr::null(), &mut g) }, CrgStatus::Ok);
    g
}

#[test]
fn group_queries() {
    let g = group("G(3,3,3)");
    let mut n = 0usize;
    unsafe {
        assert_eq!(crg_group_reflection_count(g, &mut n), CrgStatus::Ok);
        assert_eq!(n, 9);
        assert_eq!(crg_group_class_count(g, &mut n), CrgStatus::Ok);
        assert_eq!(n, 1);
        assert_eq!(crg_group_class_size(g, 0, &mut n), CrgStatus::Ok);
        assert_eq!(n, 9);
        assert_eq!(crg_group_class_size(g, 4, &mut n), CrgStatus::OutOfRange);
        let mut a = 7u32;
        assert_eq!(crg_group_alpha(g, 0, 0, &mut a), CrgStatus::OutOfRange);
        let mut s = ptr::null_mut();
        assert_eq!(crg_group_name(g, &mut s), CrgStatus::Ok);
        assert_eq!(take(s), "G(3,3,3)");
        assert_eq!(crg_discriminant_json(g, 0, &mut s), CrgStatus::Ok);
        assert_eq!(take(s), r#"{"factors":[[9,1],[0,8]],"remainder":[1],"sign":-1}"#);
        assert_eq!(crg_discriminant_text(g, 0, &mut s), CrgStatus::Ok);
        assert_eq!(take(s), "-(m-9)m^8");
        crg_group_free(g);
    }
}

#[test]
fn alpha_on_a2() {
    let g = group("A2");
    let mut a = 0u32;
    unsafe {
        for (s, u) in [(0, 1), (1, 2), (2, 0)] {
            assert_eq!(crg_group_alpha(g, s, u, &mut a), CrgStatus::Ok);
            assert_eq!(a, 1);
        }
        crg_group_free(g);
    }
}

#[test]
fn errors_are_reported() {
    let mut g = ptr::null_mut();
    let bad = CString::new("G(6,2,3)").unwrap();
    let status = unsafe { crg_group_new(bad.as_ptr(), ptr::null(), &mut g) };
    assert_eq!(status, CrgStatus::Unsupported);
    assert!(g.is_null());
    let msg = unsafe { CStr::from_ptr(crg_last_error()) }.to_str().unwrap();
    assert!(msg.contains("m/p"), "{}", msg);

    let syntax = CString::new("G(3,3").unwrap();
    assert_eq!(unsafe { crg_group_new(syntax.as_ptr(), ptr::null(), &mut g) }, CrgStatus::Parse);
    assert_eq!(unsafe { crg_group_new(ptr::null(), ptr::null(), &mut g) }, CrgStatus::NullArgument);
    let mut k = ptr::null_mut();
    assert_eq!(unsafe { crg_krammer_new(1, &mut k) }, CrgStatus::Unsupported);
    let text = unsafe { CStr::from_ptr(crg_status_message(CrgStatus::Parse)) };
    assert_eq!(text.to_str().unwrap(), "parse error");
}

#[test]
fn verify_a2() {
    let g = group("A2");
    let mut passed = 0;
    let mut report = ptr::null_mut();
    unsafe {
        assert_eq!(crg_verify(g, CrgSuite::All, 7, 1, &mut passed, &mut report), CrgStatus::Ok);
        assert_eq!(passed, 1);
        let json = take(report);
        assert!(json.contains("\"passed\":true"));
        assert_eq!(crg_verify(g, CrgSuite::Core, 7, 0, &mut passed, ptr::null_mut()), CrgStatus::OutOfRange);
        crg_group_free(g);
    }
}

#[test]
fn krammer_handle() {
    let mut k = ptr::null_mut();
    let (mut d, mut ok) = (0usize, 0i32);
    unsafe {
        assert_eq!(crg_krammer_new(4, &mut k), CrgStatus::Ok);
        assert_eq!(crg_krammer_dimension(k, &mut d), CrgStatus::Ok);
        assert_eq!(d, 6);
        assert_eq!(crg_krammer_braid_relations(k, &mut ok), CrgStatus::Ok);
        assert_eq!(ok, 1);
        assert_eq!(crg_krammer_cubic(k, &mut ok), CrgStatus::Ok);
        assert_eq!(ok, 1);
        crg_krammer_free(k);
    }
}

#[test]
fn header_declares_the_api() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/crg.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "typedef struct CrgGroup CrgGroup;",
        "CRG_STATUS_OUT_OF_RANGE = 5",
        "crg_group_new(",
        "crg_discriminant_json(",
        "crg_krammer_cubic(",
        "crg_string_free(",
    ] {
        assert!(text.contains(name), "missing {}", name);
    }
}

#[test]
fn header_compiles_as_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let src = std::env::temp_dir().join(format!("crg_header_{}.c", std::process::id()));
    std::fs::write(
        &src,
        "#include \"crg.h\"\nint main(void) { CrgGroup *g = 0; CrgStatus s = crg_group_new(\"A2\", 0, &g); crg_group_free(g); return (int)s; }\n",
    )
    .unwrap();
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = match Command::new(&cc).arg("-fsyntax-only").arg("-Wall").arg("-Werror").arg("-I").arg(&dir).arg(&src).status() {
        Ok(s) => s,
        Err(_) => {
            eprintln!("no C compiler found; header compile check not run");
            return;
        }
    };
    let _ = std::fs::remove_file(&src);
    assert!(status.success());
}
