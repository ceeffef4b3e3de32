//! End-to-end tests of the `surface` binary: pipelines over stdin/stdout,
//! deterministic report bytes, exit codes, and the file-writing flags.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use serde_json::Value;

struct Run {
    code: i32,
    stdout: Vec<u8>,
    stderr: String,
}

fn surface(args: &[&str], stdin: Option<&[u8]>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_surface"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("binary spawns");
    if let Some(bytes) = stdin {
        child
            .stdin
            .as_mut()
            .expect("stdin piped")
            .write_all(bytes)
            .expect("stdin accepts input");
    }
    drop(child.stdin.take());
    let out = child.wait_with_output().expect("binary runs");
    Run {
        code: out.status.code().expect("no signal"),
        stdout: out.stdout,
        stderr: String::from_utf8(out.stderr).expect("stderr is text"),
    }
}

fn json_stdout(run: &Run) -> Value {
    assert_eq!(run.code, 0, "command failed: {}", run.stderr);
    serde_json::from_slice(&run.stdout).expect("stdout is JSON")
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("surface-cli-{}-{name}", std::process::id()));
    p
}

#[test]
fn gen_analyze_pipeline_reports_klein_quartic_data() {
    let graph = surface(&["gen", "gamma-k", "7"], None);
    assert_eq!(graph.code, 0, "{}", graph.stderr);
    let report = json_stdout(&surface(&["analyze", "-"], Some(&graph.stdout)));
    assert_eq!(report["vertices"], 56);
    assert_eq!(report["genus"], 3);
    assert_eq!(report["cusps"]["count"], 24);
    assert_eq!(report["cusps"]["lengths"][0], 7);
    assert_eq!(report["cusps"]["all_larger_than_two_pi"], true);
    assert_eq!(report["symmetry"]["preserving_order"], 168);
}

#[test]
fn analyze_reports_are_byte_identical_across_runs() {
    let graph = surface(&["gen", "theta", "--flip", "1"], None);
    let a = surface(&["analyze", "-"], Some(&graph.stdout));
    let b = surface(&["analyze", "-"], Some(&graph.stdout));
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout, "reports differ between runs");
}

#[test]
fn analyze_flipped_theta_solves_the_equilateral_torus() {
    let graph = surface(&["gen", "theta", "--flip", "1"], None);
    let report = json_stdout(&surface(&["analyze", "-"], Some(&graph.stdout)));
    assert_eq!(report["genus"], 1);
    assert_eq!(report["angles"]["flat_equations"], true);
    let solution = &report["angles"]["solution"];
    assert_eq!(solution["status"], "unique");
    let values = solution["values_pi"].as_array().unwrap();
    assert_eq!(values.len(), 6);
    assert!(values.iter().all(|v| v == "1/3"));
    assert_eq!(report["symmetry"]["preserving_order"], 6);
    let residual = report["parabolicity"]["max_residual"].as_f64().unwrap();
    assert!(residual < 1e-9);
}

#[test]
fn analyze_two_flip_cube_skips_the_flat_solver() {
    let graph = surface(&["gen", "cube", "--flips", "0,7"], None);
    let report = json_stdout(&surface(&["analyze", "-"], Some(&graph.stdout)));
    assert_eq!(report["genus"], 2);
    assert_eq!(report["cusps"]["lengths"], serde_json::json!([12, 12]));
    assert_eq!(report["angles"]["flat_equations"], false);
    // 2E - 2(V - 1) pairings: 24 darts, 7 tree edges.
    assert_eq!(report["side_pairings"].as_array().unwrap().len(), 10);
}

#[test]
fn invalid_json_exits_two_without_partial_output() {
    let run = surface(&["analyze", "-"], Some(b"definitely not json"));
    assert_eq!(run.code, 2);
    assert!(run.stdout.is_empty(), "partial report was written");
    assert!(run.stderr.contains("parse error"));
}

#[test]
fn broken_rotation_system_exits_one() {
    // Twin is the identity (fixed darts), which no edge set allows.
    let bad = serde_json::json!({
        "vertex_count": 2,
        "twin": [0, 1, 2, 3, 4, 5],
        "rotation": [1, 2, 0, 4, 5, 3],
        "dart_vertex": [0, 0, 0, 1, 1, 1],
    });
    let run = surface(&["analyze", "-"], Some(bad.to_string().as_bytes()));
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("invalid graph"));
}

#[test]
fn unknown_generator_exits_one() {
    let run = surface(&["gen", "icosahedron"], None);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("unknown generator"));
}

#[test]
fn metric_extend_certifies_above_threshold_and_rejects_below() {
    let good = json_stdout(&surface(&["metric", "extend", "--r0", "0.5"], None));
    assert_eq!(good["negative_curvature"], true);
    assert_eq!(good["seam_condition"], true);
    assert_eq!(good["matches_cusp_profile_beyond_r0"], true);
    assert!(good["curvature_max"].as_f64().unwrap() < 0.0);

    let bad = surface(&["metric", "extend", "--r0", "0.3"], None);
    assert_eq!(bad.code, 1);
    assert!(bad.stdout.is_empty());
}

#[test]
fn metric_compare_orders_disk_below_cusp() {
    let holds = json_stdout(&surface(
        &["metric", "compare", "--left", "disk", "--right", "dstar"],
        None,
    ));
    assert_eq!(holds["comparison"], "holds");
    let fails = json_stdout(&surface(
        &["metric", "compare", "--left", "dstar", "--right", "disk"],
        None,
    ));
    assert_eq!(fails["comparison"], "fails");
}

#[test]
fn metric_control_stays_in_band_and_sandwiches() {
    let report = json_stdout(&surface(&["metric", "control", "--eps", "0.1"], None));
    assert_eq!(report["within_band"], true);
    let r_eps = report["r_eps"].as_f64().unwrap();
    assert!(0.0 < r_eps && r_eps < 1.0);

    // The two-sided (1 + eps) bound against the disk profile, as shifts of
    // the log-density by half log(1.1).
    let margin = format!("{}", 0.5 * (1.1f64).ln());
    let lower = json_stdout(&surface(
        &[
            "metric", "compare", "--left", "disk", "--right", "control:0.1",
            "--left-shift", &format!("-{margin}"),
        ],
        None,
    ));
    assert_eq!(lower["comparison"], "holds");
    let upper = json_stdout(&surface(
        &[
            "metric", "compare", "--left", "control:0.1", "--right", "disk",
            "--right-shift", &margin,
        ],
        None,
    ));
    assert_eq!(upper["comparison"], "holds");
}

#[test]
fn curves_certificates_have_positive_margins() {
    let slit = json_stdout(&surface(&["curves", "slit"], None));
    assert_eq!(slit["certificate"]["certified"], true);
    assert!(slit["certificate"]["curvature_excess"].as_f64().unwrap() > 0.0);
    assert!(slit["certificate"]["normal_derivative"].as_f64().unwrap() < 0.0);

    let svg_path = temp_path("convex.svg");
    let convex = json_stdout(&surface(
        &["curves", "convex", "--svg", svg_path.to_str().unwrap()],
        None,
    ));
    assert_eq!(convex["certified"], true);
    assert!(convex["curvature_excess"].as_f64().unwrap() > 0.0);
    assert!(convex["density_margin"].as_f64().unwrap() > 0.0);
    let svg = std::fs::read_to_string(&svg_path).expect("svg written");
    assert!(svg.starts_with("<svg"));
    std::fs::remove_file(&svg_path).ok();

    let noextend = json_stdout(&surface(&["curves", "noextend"], None));
    assert_eq!(noextend["certified"], true);
    assert!(noextend["shortcut_margin"].as_f64().unwrap() > 0.0);
    let dist = noextend["quotient_endpoint_distance"].as_f64().unwrap();
    assert!(dist < 3.0 * std::f64::consts::PI);
}

#[test]
fn render_and_output_flags_write_files() {
    let graph_path = temp_path("graph.json");
    let run = surface(
        &["gen", "tetrahedron", "--flip", "3", "-o", graph_path.to_str().unwrap()],
        None,
    );
    assert_eq!(run.code, 0, "{}", run.stderr);

    let svg_path = temp_path("polygon.svg");
    let run = surface(
        &["render", graph_path.to_str().unwrap(), "-o", svg_path.to_str().unwrap()],
        None,
    );
    assert_eq!(run.code, 0, "{}", run.stderr);
    let svg = std::fs::read_to_string(&svg_path).expect("svg written");
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));

    let report_path = temp_path("report.json");
    let render_path = temp_path("analyze.svg");
    let run = surface(
        &[
            "analyze", graph_path.to_str().unwrap(),
            "-o", report_path.to_str().unwrap(),
            "--render", render_path.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(run.stdout.is_empty(), "report leaked to stdout despite -o");
    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["genus"], 1);
    assert!(std::fs::read_to_string(&render_path).unwrap().starts_with("<svg"));

    for p in [graph_path, svg_path, report_path, render_path] {
        std::fs::remove_file(&p).ok();
    }
}

#[test]
fn missing_file_exits_two() {
    let run = surface(&["analyze", "/nonexistent/graph.json"], None);
    assert_eq!(run.code, 2);
}
