//! Browser bindings: a thin string facade over the library for the static
//! demo page in `www/`.
//!
//! Build with `wasm-pack build crates/wasm --target web --out-dir
//! ../../www/pkg`; the page loads the generated ES module directly, no
//! bundler involved. Every entry point returns a string so the page never
//! handles thrown values: JSON endpoints report failures through an
//! `"error"` member, SVG endpoints return a small SVG carrying the message
//! as text. The crate also compiles natively, which is how its tests run.

use wasm_bindgen::prelude::*;

use trisurf::curves::{slit_horocycle, standard_slit_parameters};
use trisurf::generators;
use trisurf::graph::RotationGraph;
use trisurf::hyperbolic::{assemble_polygon, TickShifts};
use trisurf::render::{curve_svg, polygon_svg};
use trisurf::report::{analysis, Json};

fn parse_flips(flips: &str) -> Result<Vec<usize>, String> {
    flips
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|e| format!("bad flip list entry {s:?}: {e}"))
        })
        .collect()
}

fn named_graph(name: &str, flips: &str, level: Option<u32>) -> Result<RotationGraph, String> {
    let flips = parse_flips(flips)?;
    generators::by_name(name, &flips, level).map_err(|e| e.to_string())
}

fn error_json(msg: &str) -> String {
    Json::obj([("error", Json::from(msg))])
        .to_pretty()
        .unwrap_or_else(|_| "{\"error\": \"unreportable failure\"}\n".to_owned())
}

fn error_svg(msg: &str) -> String {
    let escaped = msg.replace('&', "&amp;").replace('<', "&lt;");
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"60\">\
         <text x=\"10\" y=\"35\" fill=\"#b00\">{escaped}</text></svg>"
    )
}

/// Analyze a named example graph and return the full JSON report:
/// topology, symmetry, exact angles, cusps, and gluing data. `flips` is a
/// comma-separated vertex list (may be empty); `level` applies to
/// `gamma-k` only.
#[wasm_bindgen]
pub fn analyze_named(name: &str, flips: &str, level: Option<u32>) -> String {
    let report = named_graph(name, flips, level)
        .and_then(|g| analysis(&g).map_err(|e| e.to_string()))
        .and_then(|json| json.to_pretty().map_err(|e| e.to_string()));
    report.unwrap_or_else(|msg| error_json(&msg))
}

/// Assemble the fundamental polygon of a named example graph (zero tick
/// shifts) and render it as SVG in the disk model.
#[wasm_bindgen]
pub fn polygon_svg_named(name: &str, flips: &str, level: Option<u32>) -> String {
    let svg = named_graph(name, flips, level).and_then(|g| {
        let poly = assemble_polygon(&g, &TickShifts::zero(&g)).map_err(|e| e.to_string())?;
        Ok(polygon_svg(&g, &poly))
    });
    svg.unwrap_or_else(|msg| error_svg(&msg))
}

fn slit(r2: f64) -> Result<(trisurf::curves::CuspCurve, Json), String> {
    let (r1, r2, theta) = standard_slit_parameters(r2).map_err(|e| e.to_string())?;
    let (curve, cert) = slit_horocycle(r1, r2, theta).map_err(|e| e.to_string())?;
    let json = Json::obj([
        ("r1", Json::Float(r1)),
        ("r2", Json::Float(r2)),
        ("theta", Json::Float(theta)),
        ("total_curvature", Json::Float(cert.total_curvature)),
        (
            "curvature_excess",
            Json::Float(cert.total_curvature - 2.0 * std::f64::consts::PI),
        ),
        ("density_at_max", Json::Float(cert.u_at_max)),
        ("normal_derivative", Json::Float(cert.normal_derivative)),
        ("certified", Json::Bool(cert.certified)),
    ]);
    Ok((curve, json))
}

/// Certificate for the slit-horocycle obstruction at outer level `r2`:
/// the enclosed area exceeds 2 pi while the density maximum over the curve
/// has negative outward derivative.
#[wasm_bindgen]
pub fn slit_certificate(r2: f64) -> String {
    slit(r2)
        .and_then(|(_, json)| json.to_pretty().map_err(|e| e.to_string()))
        .unwrap_or_else(|msg| error_json(&msg))
}

/// The slit-horocycle curve at outer level `r2`, rendered in both the
/// punctured-disk and half-plane views.
#[wasm_bindgen]
pub fn slit_svg(r2: f64) -> String {
    slit(r2)
        .map(|(curve, _)| curve_svg(&curve))
        .unwrap_or_else(|msg| error_svg(&msg))
}
