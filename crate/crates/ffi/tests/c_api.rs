use std::ffi::{CStr, CString};
use std::ptr;

use subshift_ffi::*;

fn shift(toml: &str) -> *mut SubshiftHandle {
    let spec = CString::new(toml).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { subshift_new(spec.as_ptr(), &mut h) }, SubshiftStatus::Ok);
    assert!(!h.is_null());
    h
}

fn last_error() -> String {
    let p = subshift_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn complexity_of_golden_mean() {
    let h = shift("type = \"sft\"\nforbidden = [\"11\"]\n");
    let mut p = 0u64;
    assert_eq!(unsafe { subshift_block_complexity(h, 10, &mut p) }, SubshiftStatus::Ok);
    assert_eq!(p, 144);

    let mut buf = [0u64; 6];
    assert_eq!(unsafe { subshift_complexity_table(h, 6, buf.as_mut_ptr(), buf.len()) }, SubshiftStatus::Ok);
    assert_eq!(buf, [2, 3, 5, 8, 13, 21]);
    assert_eq!(
        unsafe { subshift_complexity_table(h, 7, buf.as_mut_ptr(), buf.len()) },
        SubshiftStatus::BufferTooSmall
    );
    assert!(last_error().contains("need 7"));
    unsafe { subshift_free(h) };
}

#[test]
fn orders_and_rectangles() {
    let h = shift("type = \"substitution\"\nrules = { 0 = \"01\", 1 = \"0\" }\n");
    let mut sigma = ptr::null_mut();
    assert_eq!(unsafe { subshift_code_shift_power(h, 1, &mut sigma) }, SubshiftStatus::Ok);

    let (mut found, mut b, mut a) = (0i32, 0u64, 0i64);
    assert_eq!(unsafe { subshift_order_mod_shift(h, sigma, 8, 24, &mut found, &mut b, &mut a) }, SubshiftStatus::Ok);
    assert_eq!((found, b, a), (1, 1, -1));

    let mut count = 0u64;
    assert_eq!(unsafe { subshift_rect_complexity(h, sigma, 4, 2, &mut count) }, SubshiftStatus::Ok);
    assert_eq!(count, 6);

    let json = CString::new(r#"{"range":1,"rule":{"001":"0","010":"0","100":"1","101":"1"}}"#).unwrap();
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { subshift_code_from_json(h, json.as_ptr(), &mut back) }, SubshiftStatus::Ok);
    assert_eq!(unsafe { subshift_order_mod_shift(h, back, 8, 24, &mut found, &mut b, &mut a) }, SubshiftStatus::Ok);
    assert_eq!((found, b, a), (1, 1, 1));

    let mut n = 0usize;
    assert_eq!(unsafe { subshift_automorphism_count(h, 1, 2, &mut n) }, SubshiftStatus::Ok);
    assert_eq!(n, 3);

    unsafe {
        subshift_code_free(sigma);
        subshift_code_free(back);
        subshift_free(h);
    }
}

#[test]
fn error_codes() {
    let bad = CString::new("type = \"substitution\"\nrules = { 0 = \"00\", 1 = \"11\" }\n").unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { subshift_new(bad.as_ptr(), &mut h) }, SubshiftStatus::InvalidSpec);
    assert!(h.is_null());
    assert!(last_error().contains("primitive"));

    let garbage = CString::new("type = ").unwrap();
    assert_eq!(unsafe { subshift_new(garbage.as_ptr(), &mut h) }, SubshiftStatus::Config);
    assert_eq!(unsafe { subshift_new(ptr::null(), &mut h) }, SubshiftStatus::NullArgument);

    let full = shift("type = \"full\"\n");
    let mut p = 0u64;
    assert_eq!(unsafe { subshift_block_complexity(full, 0, &mut p) }, SubshiftStatus::InvalidSpec);
    assert_eq!(unsafe { subshift_block_complexity(full, 3, ptr::null_mut()) }, SubshiftStatus::NullArgument);
    assert_eq!(unsafe { subshift_block_complexity(full, 3, &mut p) }, SubshiftStatus::Ok);
    assert!(subshift_last_error().is_null());

    let json = CString::new(r#"{"range":0,"rule":{"0":"1"}}"#).unwrap();
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { subshift_code_from_json(full, json.as_ptr(), &mut c) }, SubshiftStatus::MalformedCode);

    let gm = shift("type = \"sft\"\nforbidden = [\"11\"]\n");
    assert_eq!(unsafe { subshift_code_shift_power(gm, 1, &mut c) }, SubshiftStatus::Ok);
    let mut count = 0u64;
    assert_eq!(unsafe { subshift_rect_complexity(full, c, 2, 2, &mut count) }, SubshiftStatus::MalformedCode);
    unsafe {
        subshift_code_free(c);
        subshift_free(gm);
        subshift_free(full);
    }
}

#[test]
fn experiment_json() {
    let cfg = CString::new("[horizons]\nn_max = 8\nrect_grid = [2]\n[specs.full2]\ntype = \"full\"\naut_range = 0\n").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { subshift_run_experiment_json(cfg.as_ptr(), &mut out) }, SubshiftStatus::Ok);
    let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_owned();
    unsafe { subshift_string_free(out) };
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["specs"][0]["automorphisms"]["count"], 2);
    assert_eq!(v["verdict"]["AllPeriodicModShift"]["max_b"], 8);
}
