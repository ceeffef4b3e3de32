//! Native tests of the browser facade: every entry point returns a string
//! the page can use directly, with failures encoded in-band.

use serde_json::Value;
use surface_wasm::{analyze_named, polygon_svg_named, slit_certificate, slit_svg};

fn parse(s: &str) -> Value {
    serde_json::from_str(s).expect("endpoint output is JSON")
}

#[test]
fn analyze_reports_the_flipped_theta_torus() {
    let report = parse(&analyze_named("theta", "1", None));
    assert_eq!(report["genus"], 1);
    assert_eq!(report["cusps"]["lengths"], serde_json::json!([6]));
    let values = report["angles"]["solution"]["values_pi"].as_array().unwrap();
    assert!(values.iter().all(|v| v == "1/3"));
    assert!(report.get("error").is_none());
}

#[test]
fn analyze_reaches_the_congruence_generator() {
    let report = parse(&analyze_named("gamma-k", "", Some(7)));
    assert_eq!(report["vertices"], 56);
    assert_eq!(report["genus"], 3);
}

#[test]
fn analyze_failures_stay_in_band() {
    let report = parse(&analyze_named("icosahedron", "", None));
    assert!(report["error"].as_str().unwrap().contains("unknown generator"));

    let report = parse(&analyze_named("theta", "0,zebra", None));
    assert!(report["error"].as_str().unwrap().contains("zebra"));

    let report = parse(&analyze_named("theta", "5", None));
    assert!(report.get("error").is_some(), "flip out of range must fail");
}

#[test]
fn polygon_rendering_round_trips() {
    let svg = polygon_svg_named("cube", "0,7", None);
    assert!(svg.starts_with("<svg"));
    assert!(svg.trim_end().ends_with("</svg>"));
    assert!(!svg.contains("fill=\"#b00\""), "error path taken: {svg}");

    let svg = polygon_svg_named("cube", "99", None);
    assert!(svg.contains("fill=\"#b00\""), "bad flip must surface in the SVG");
}

#[test]
fn slit_endpoints_certify_and_draw() {
    let cert = parse(&slit_certificate(0.8));
    assert_eq!(cert["certified"], true);
    assert!(cert["curvature_excess"].as_f64().unwrap() > 0.0);
    assert!(cert["normal_derivative"].as_f64().unwrap() < 0.0);

    let svg = slit_svg(0.8);
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));

    // Below the 1/e threshold there is no valid outer level.
    let cert = parse(&slit_certificate(0.2));
    assert!(cert.get("error").is_some());
    assert!(slit_svg(0.2).contains("fill=\"#b00\""));
}
