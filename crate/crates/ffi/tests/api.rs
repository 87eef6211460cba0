use std::ffi::{c_char, CStr, CString};
use std::ptr;

use stabforge_ffi::*;

fn take_string(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { stab_string_free(s) };
    text
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(stab_last_error_message()) }.to_str().unwrap().to_owned()
}

fn family(j: u32) -> *mut StabCode {
    let mut code = ptr::null_mut();
    assert_eq!(unsafe { stab_family_build(j, &mut code) }, StabStatus::Ok);
    code
}

#[test]
fn eight_qubit_code_through_the_c_interface() {
    let code = family(3);
    unsafe {
        assert_eq!((stab_code_n(code), stab_code_k(code), stab_code_a(code)), (8, 3, 5));
        let expected = ["+XXXXXXXX", "+ZZZZZZZZ", "+XIXIZYZY", "+XIYZXIYZ", "+XZIYIYXZ"];
        for (r, g) in expected.iter().enumerate() {
            let mut out = ptr::null_mut();
            assert_eq!(stab_code_generator(code, r + 1, &mut out), StabStatus::Ok);
            assert_eq!(take_string(out), *g);
        }
        let mut out = ptr::null_mut();
        assert_eq!(stab_code_generator(code, 6, &mut out), StabStatus::InvalidArgument);
        assert!(out.is_null());

        for (error, syndrome) in [("Y6", "11000"), ("+IIXIIIII", "01010"), ("Y3", "11100")] {
            let e = CString::new(error).unwrap();
            let mut out = ptr::null_mut();
            assert_eq!(stab_code_syndrome(code, e.as_ptr(), &mut out), StabStatus::Ok);
            assert_eq!(take_string(out), syndrome);
        }
        let bad = CString::new("Q1").unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(stab_code_syndrome(code, bad.as_ptr(), &mut out), StabStatus::ParseError);

        let mut passed = false;
        assert_eq!(stab_code_check_correctability(code, 1, &mut passed), StabStatus::Ok);
        assert!(passed);
        assert_eq!(stab_code_check_correctability(code, 2, &mut passed), StabStatus::Ok);
        assert!(!passed);
        stab_code_free(code);
    }
}

#[test]
fn json_round_trip_and_rejection() {
    let code = family(4);
    unsafe {
        let mut json = ptr::null_mut();
        assert_eq!(stab_code_to_json(code, &mut json), StabStatus::Ok);
        let text = CString::new(take_string(json)).unwrap();
        let mut copy = ptr::null_mut();
        assert_eq!(stab_code_from_json(text.as_ptr(), &mut copy), StabStatus::Ok);
        assert_eq!(stab_code_k(copy), 10);
        stab_code_free(copy);
        stab_code_free(code);

        let anticommuting = CString::new(r#"{"n": 1, "k": 0, "generators": ["+X", "+Z"], "seed_generators": []}"#).unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(stab_code_from_json(anticommuting.as_ptr(), &mut out), StabStatus::InvalidCode);
        assert!(last_error().contains("anticommute"), "{}", last_error());

        let garbage = CString::new("not json").unwrap();
        assert_eq!(stab_code_from_json(garbage.as_ptr(), &mut out), StabStatus::ParseError);
        assert_eq!(stab_code_from_json(ptr::null(), &mut out), StabStatus::NullPointer);
        let invalid_utf8 = [0xffu8, 0];
        assert_eq!(stab_code_from_json(invalid_utf8.as_ptr().cast(), &mut out), StabStatus::InvalidUtf8);
    }
}

#[test]
fn bounds() {
    assert_eq!(stab_qhb_max_k(13, 1), 7);
    assert_eq!(stab_qhb_max_k(2, 1), -1);
    let mut k = 0i64;
    unsafe {
        assert_eq!(stab_degenerate_max_k(6, 2, &mut k), StabStatus::Ok);
        assert_eq!(k, 1);
        assert_eq!(stab_degenerate_max_k(4, 4, &mut k), StabStatus::InvalidArgument);
        assert_eq!(stab_degenerate_max_k(4, 1, ptr::null_mut()), StabStatus::NullPointer);
    }
}

#[test]
fn errors_are_thread_local() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { stab_family_build(99, &mut out) }, StabStatus::InvalidArgument);
    let here = last_error();
    std::thread::spawn(|| assert_eq!(last_error(), "")).join().unwrap();
    assert_eq!(last_error(), here);
}

#[test]
fn header_lists_the_exports() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/stabforge.h")).unwrap();
    for symbol in [
        "typedef struct StabCode StabCode;",
        "STAB_STATUS_OK = 0",
        "stab_family_build(",
        "stab_code_from_json(",
        "stab_code_to_json(",
        "stab_code_generator(",
        "stab_code_syndrome(",
        "stab_code_check_correctability(",
        "stab_qhb_max_k(",
        "stab_degenerate_max_k(",
        "stab_code_free(",
        "stab_string_free(",
        "stab_last_error_message(",
    ] {
        assert!(header.contains(symbol), "{symbol}");
    }
}
