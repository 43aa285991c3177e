use kneser_wasm_demo::{achromatic, dv_coloring, psi_lower};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn achromatic_export() {
    let v = parse(achromatic(13));
    assert_eq!(v["colors"], 30);
    assert_eq!(v["report"]["proper"], true);
    assert_eq!(v["report"]["complete"], true);
    assert_eq!(v["classes"].as_array().unwrap().len(), 30);
}

#[test]
fn psi_lower_export() {
    let v = parse(psi_lower(10, 1));
    assert_eq!(v["colors"], 22);
    assert_eq!(v["report"]["complete"], true);
}

#[test]
fn dv_export_has_points() {
    let v = parse(dv_coloring(9, false, 0));
    assert_eq!(v["colors"], 12);
    assert_eq!(v["points"].as_array().unwrap().len(), 9);
    let v = parse(dv_coloring(9, true, 5));
    assert_eq!(v["report"]["complete"], true);
    // The even route is defined for convex position only.
    assert!(parse(dv_coloring(8, true, 5))["error"].as_str().unwrap().contains("convex"));
}

#[test]
fn out_of_range_is_an_error_object() {
    assert!(parse(achromatic(99))["error"].as_str().unwrap().contains("n must lie"));
    assert!(parse(psi_lower(5, 0))["error"].is_string());
    assert!(parse(dv_coloring(17, false, 0))["error"].is_string());
}
