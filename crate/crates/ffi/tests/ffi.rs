use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;
use tropos_ffi::*;

fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { tropos_string_free(p) };
    s
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(tropos_last_error()) }.to_str().unwrap().to_owned()
}

fn catalog(name: &str) -> *mut TroposGraph {
    let name = CString::new(name).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { tropos_graph_from_catalog(name.as_ptr(), &mut g) }, TroposStatus::Ok);
    g
}

#[test]
fn genus_and_rank_of_canonical() {
    let g = catalog("theta");
    let mut genus = 0;
    let mut k = ptr::null_mut();
    let mut rank = -5;
    let mut deg = 0;
    unsafe {
        assert_eq!(tropos_graph_genus(g, &mut genus), TroposStatus::Ok);
        assert_eq!(tropos_divisor_canonical(g, &mut k), TroposStatus::Ok);
        assert_eq!(tropos_divisor_degree(k, &mut deg), TroposStatus::Ok);
        assert_eq!(tropos_rank(g, k, 1, &mut rank), TroposStatus::Ok);
        tropos_divisor_free(k);
        tropos_graph_free(g);
    }
    assert_eq!(genus, 2);
    assert_eq!(deg, 2);
    assert_eq!(rank, 1);
}

#[test]
fn graph_json_round_trip() {
    let g = catalog("K4");
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { tropos_graph_to_json(g, &mut json) }, TroposStatus::Ok);
    let text = CString::new(take_string(json)).unwrap();
    let mut h = ptr::null_mut();
    let mut genus = 0;
    unsafe {
        assert_eq!(tropos_graph_from_json(text.as_ptr(), &mut h), TroposStatus::Ok);
        assert_eq!(tropos_graph_genus(h, &mut genus), TroposStatus::Ok);
        tropos_graph_free(h);
        tropos_graph_free(g);
    }
    assert_eq!(genus, 3);
}

#[test]
fn reduce_returns_an_equivalent_handle() {
    let g = catalog("theta");
    let d = CString::new(r#"[{"at":"v1","mult":3}]"#).unwrap();
    let base = CString::new("v2").unwrap();
    let mut div = ptr::null_mut();
    let mut red = ptr::null_mut();
    let mut json = ptr::null_mut();
    unsafe {
        assert_eq!(tropos_divisor_from_json(g, d.as_ptr(), &mut div), TroposStatus::Ok);
        assert_eq!(tropos_reduce(g, div, base.as_ptr(), 1, &mut red), TroposStatus::Ok);
        assert_eq!(tropos_divisor_to_json(red, &mut json), TroposStatus::Ok);
        tropos_divisor_free(div);
        tropos_divisor_free(red);
        tropos_graph_free(g);
    }
    let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(v, serde_json::json!([{"at": "v2", "mult": 3}]));
}

#[test]
fn realizability_report() {
    let g = catalog("dumbbell");
    let mut k = ptr::null_mut();
    let mut ok = true;
    let mut report = ptr::null_mut();
    unsafe {
        assert_eq!(tropos_divisor_canonical(g, &mut k), TroposStatus::Ok);
        assert_eq!(tropos_is_realizable(g, k, &mut ok, &mut report), TroposStatus::Ok);
        tropos_divisor_free(k);
        tropos_graph_free(g);
    }
    assert!(!ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(report)).unwrap();
    assert_eq!(v["violations"][0]["location"], "bridge");
}

#[test]
fn systems_and_cells_as_json() {
    let g = catalog("theta");
    let mut k = ptr::null_mut();
    let (mut all, mut ext, mut cells) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(tropos_divisor_canonical(g, &mut k), TroposStatus::Ok);
        assert_eq!(tropos_linear_system(g, k, 2, 0, &mut all), TroposStatus::Ok);
        assert_eq!(tropos_extremals(g, k, 2, 0, &mut ext), TroposStatus::Ok);
        assert_eq!(tropos_cells(g, k, 2, 0, &mut cells), TroposStatus::Ok);
    }
    let all: serde_json::Value = serde_json::from_str(&take_string(all)).unwrap();
    let ext: serde_json::Value = serde_json::from_str(&take_string(ext)).unwrap();
    let cells: serde_json::Value = serde_json::from_str(&take_string(cells)).unwrap();
    assert!(all["count"].as_u64().unwrap() >= ext["count"].as_u64().unwrap());
    assert!(!cells["cells"].as_array().unwrap().is_empty());

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { tropos_linear_system(g, k, 2, 1, &mut out) }, TroposStatus::BudgetExceeded);
    assert!(out.is_null());
    assert!(last_error().starts_with("BudgetExceeded"));
    unsafe {
        tropos_divisor_free(k);
        tropos_graph_free(g);
    }
}

#[test]
fn errors_are_reported() {
    let mut g = ptr::null_mut();
    let bad = CString::new("{not json").unwrap();
    assert_eq!(unsafe { tropos_graph_from_json(bad.as_ptr(), &mut g) }, TroposStatus::Parse);
    assert!(g.is_null());
    assert!(!last_error().is_empty());

    let dup = CString::new(r#"{"vertices":[{"id":"a","weight":0},{"id":"a","weight":0}],"edges":[]}"#).unwrap();
    assert_eq!(unsafe { tropos_graph_from_json(dup.as_ptr(), &mut g) }, TroposStatus::InvalidGraph);

    let unknown = CString::new("nope").unwrap();
    assert_eq!(unsafe { tropos_graph_from_catalog(unknown.as_ptr(), &mut g) }, TroposStatus::InvalidArgument);
    assert_eq!(unsafe { tropos_graph_from_catalog(ptr::null(), &mut g) }, TroposStatus::NullPointer);
    let mut genus = 0;
    assert_eq!(unsafe { tropos_graph_genus(ptr::null(), &mut genus) }, TroposStatus::NullPointer);

    let theta = catalog("theta");
    let mut d = ptr::null_mut();
    let off = CString::new(r#"[{"at":"v9","mult":1}]"#).unwrap();
    assert_eq!(unsafe { tropos_divisor_from_json(theta, off.as_ptr(), &mut d) }, TroposStatus::InvalidDivisor);
    let zero = CString::new("[]").unwrap();
    let mut ok = false;
    unsafe {
        assert_eq!(tropos_divisor_from_json(theta, zero.as_ptr(), &mut d), TroposStatus::Ok);
        assert_eq!(tropos_is_realizable(theta, d, &mut ok, ptr::null_mut()), TroposStatus::NotInCanonicalSystem);
        assert_eq!(tropos_graph_genus(theta, &mut genus), TroposStatus::Ok);
    }
    assert!(last_error().is_empty());
    unsafe {
        tropos_divisor_free(d);
        tropos_graph_free(theta);
        tropos_graph_free(ptr::null_mut());
        tropos_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/tropos.h")).unwrap();
    for name in [
        "tropos_graph_from_json",
        "tropos_graph_from_catalog",
        "tropos_graph_free",
        "tropos_divisor_canonical",
        "tropos_rank",
        "tropos_reduce",
        "tropos_linear_system",
        "tropos_extremals",
        "tropos_cells",
        "tropos_is_realizable",
        "tropos_string_free",
        "tropos_last_error",
        "TROPOS_STATUS_BUDGET_EXCEEDED",
        "typedef struct TroposGraph TroposGraph",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
