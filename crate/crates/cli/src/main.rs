//! Command-line driver.
//!
//! `surface` ties the library into small reproducible pipelines: generate a
//! named example graph, analyze a graph (topology, symmetry, exact angles,
//! cusps, gluing data), render its fundamental polygon, and certify the
//! radial-metric constructions around a cusp. Reports are emitted through
//! the deterministic JSON writer, so identical inputs give identical bytes.
//!
//! Exit codes: 0 success, 1 domain or graph errors (bad arguments, invalid
//! rotation systems), 2 parse and I/O errors, 3 internal numeric failures.

use std::fmt;
use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use trisurf::curves::{
    convex_counterexample, geodesic_horocycle_curve, slit_horocycle, standard_slit_parameters,
    total_geodesic_curvature, CuspCurve, ObstructionCertificate,
};
use trisurf::generators;
use trisurf::graph::RotationGraph;
use trisurf::hyperbolic::{assemble_polygon, TickShifts};
use trisurf::metrics::{
    chebyshev_grid, compare_metrics, curvature_control_profile, curvature_report, extend_metric,
    sharpness_certificate, u_dstar, Comparison, RadialProfile,
};
use trisurf::render::{curvature_plot_svg, curve_svg, polygon_svg, profile_plot_svg};
use trisurf::report::{analysis, Json};

#[derive(Parser)]
#[command(
    name = "surface",
    version,
    about = "Surfaces spanned by cubic graphs with rotation systems"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analyze a graph: topology, symmetry, angles, cusps, gluing data.
    Analyze(AnalyzeArgs),
    /// Generate a named example graph as JSON.
    Gen(GenArgs),
    /// Render a graph's fundamental polygon as SVG.
    Render(RenderArgs),
    /// Radial metrics on the punctured disk: extension, control, comparison.
    #[command(subcommand)]
    Metric(MetricCmd),
    /// Obstruction curves and their certificates.
    #[command(subcommand)]
    Curves(CurvesCmd),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Graph JSON file, or `-` for standard input.
    graph: String,
    /// Write the report here instead of standard output.
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
    /// Also render the fundamental polygon to this SVG file.
    #[arg(long, value_name = "FILE")]
    render: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    /// Generator name: theta, tetrahedron, cube, or gamma-k.
    name: String,
    /// Congruence level (gamma-k only).
    level: Option<u32>,
    /// Flip the rotation at one vertex; may repeat.
    #[arg(long, value_name = "VERTEX")]
    flip: Vec<usize>,
    /// Flip the rotation at a comma-separated list of vertices.
    #[arg(long, value_name = "V,V,..", value_delimiter = ',')]
    flips: Vec<usize>,
    /// Write the graph here instead of standard output.
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    /// Graph JSON file, or `-` for standard input.
    graph: String,
    /// Write the SVG here instead of standard output.
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum MetricCmd {
    /// Extend the cusp metric over the puncture from level r0, keeping
    /// curvature negative; fails for r0 at or below 1/e.
    Extend {
        #[arg(long)]
        r0: f64,
        /// Write the certification report here instead of standard output.
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
        /// Also plot the curvature over the grid to this SVG file.
        #[arg(long, value_name = "FILE")]
        plot: Option<PathBuf>,
    },
    /// Build the curvature-controlled profile for a pinching parameter.
    Control {
        #[arg(long)]
        eps: f64,
        /// Write the report here instead of standard output.
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
        /// Also plot the profile against the disk and cusp profiles.
        #[arg(long, value_name = "FILE")]
        plot: Option<PathBuf>,
    },
    /// Grid-certified pointwise comparison of two radial profiles.
    Compare {
        /// Left profile: dstar, disk, extend:R0, or control:EPS.
        #[arg(long, value_name = "SPEC")]
        left: String,
        /// Right profile: dstar, disk, extend:R0, or control:EPS.
        #[arg(long, value_name = "SPEC")]
        right: String,
        /// Add a constant to the left profile's log-density.
        #[arg(long, value_name = "DU", default_value_t = 0.0, allow_negative_numbers = true)]
        left_shift: f64,
        /// Add a constant to the right profile's log-density.
        #[arg(long, value_name = "DU", default_value_t = 0.0, allow_negative_numbers = true)]
        right_shift: f64,
        /// Write the report here instead of standard output.
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CurvesCmd {
    /// Slit horocycle: the area obstruction with the density maximum on a
    /// deep inner level.
    Slit {
        /// Outer horocycle level in (1/e, 1).
        #[arg(long, default_value_t = 0.8)]
        r2: f64,
        /// Write the certificate here instead of standard output.
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
        /// Also render the curve to this SVG file.
        #[arg(long, value_name = "FILE")]
        svg: Option<PathBuf>,
    },
    /// Convex obstruction curve: horocyclic segment closed by a geodesic
    /// arc, every piece convex.
    Convex {
        /// Write the certificate here instead of standard output.
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
        /// Also render the curve to this SVG file.
        #[arg(long, value_name = "FILE")]
        svg: Option<PathBuf>,
    },
    /// The geodesic-plus-horocycle curve admitting no extension at all.
    Noextend {
        /// Write the report here instead of standard output.
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
        /// Also render the curve to this SVG file.
        #[arg(long, value_name = "FILE")]
        svg: Option<PathBuf>,
    },
}

/// Anything that can stop a command, tagged for the process exit code.
enum Failure {
    Lib(trisurf::Error),
    Io(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Io(_) | Failure::Lib(trisurf::Error::Parse(_)) => 2,
            Failure::Lib(trisurf::Error::InvalidGraph(_) | trisurf::Error::Domain(_)) => 1,
            Failure::Lib(trisurf::Error::Numeric(_)) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Lib(e) => e.fmt(f),
            Failure::Io(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<trisurf::Error> for Failure {
    fn from(e: trisurf::Error) -> Failure {
        Failure::Lib(e)
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    match cli.cmd {
        Cmd::Analyze(args) => cmd_analyze(args),
        Cmd::Gen(args) => cmd_gen(args),
        Cmd::Render(args) => cmd_render(args),
        Cmd::Metric(cmd) => match cmd {
            MetricCmd::Extend { r0, output, plot } => cmd_metric_extend(r0, output, plot),
            MetricCmd::Control { eps, output, plot } => cmd_metric_control(eps, output, plot),
            MetricCmd::Compare {
                left,
                right,
                left_shift,
                right_shift,
                output,
            } => cmd_metric_compare(&left, &right, left_shift, right_shift, output),
        },
        Cmd::Curves(cmd) => match cmd {
            CurvesCmd::Slit { r2, output, svg } => cmd_curves_slit(r2, output, svg),
            CurvesCmd::Convex { output, svg } => cmd_curves_convex(output, svg),
            CurvesCmd::Noextend { output, svg } => cmd_curves_noextend(output, svg),
        },
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::Io(format!("standard input: {e}")))?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("{path}: {e}")))
    }
}

fn read_graph(path: &str) -> Result<RotationGraph, Failure> {
    Ok(RotationGraph::from_json(&read_input(path)?)?)
}

fn write_output(path: Option<&PathBuf>, content: &str) -> CmdResult {
    match path {
        Some(p) => fs::write(p, content)
            .map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn write_report(path: Option<&PathBuf>, report: &Json) -> CmdResult {
    write_output(path, &report.to_pretty()?)
}

fn cmd_analyze(args: AnalyzeArgs) -> CmdResult {
    let g = read_graph(&args.graph)?;
    let report = analysis(&g)?;
    write_report(args.output.as_ref(), &report)?;
    if let Some(svg_path) = args.render {
        let poly = assemble_polygon(&g, &TickShifts::zero(&g))?;
        write_output(Some(&svg_path), &polygon_svg(&g, &poly))?;
    }
    Ok(())
}

fn cmd_gen(args: GenArgs) -> CmdResult {
    let mut flips = args.flip.clone();
    flips.extend(&args.flips);
    let g = generators::by_name(&args.name, &flips, args.level)?;
    write_output(args.output.as_ref(), &g.to_json())
}

fn cmd_render(args: RenderArgs) -> CmdResult {
    let g = read_graph(&args.graph)?;
    let poly = assemble_polygon(&g, &TickShifts::zero(&g))?;
    write_output(args.output.as_ref(), &polygon_svg(&g, &poly))
}

fn cmd_metric_extend(r0: f64, output: Option<PathBuf>, plot: Option<PathBuf>) -> CmdResult {
    let p = extend_metric(r0)?;
    let grid = chebyshev_grid(1000);
    let report = curvature_report(&p, &grid)?;
    let seam = sharpness_certificate(&p, r0)?;
    let matches_beyond = [r0, (r0 + 1.0) / 2.0, 0.99]
        .iter()
        .all(|&r| p.u(r).ok() == u_dstar(r).ok());
    let json = Json::obj([
        ("r0", Json::Float(r0)),
        ("negative_curvature", Json::Bool(report.max < 0.0)),
        ("curvature_min", Json::Float(report.min)),
        ("curvature_max", Json::Float(report.max)),
        ("grid_points", Json::Int(grid.len() as i64)),
        ("seam_condition", Json::Bool(seam)),
        ("slope_at_origin", Json::Float(p.u_prime(0.0)?)),
        ("matches_cusp_profile_beyond_r0", Json::Bool(matches_beyond)),
    ]);
    write_report(output.as_ref(), &json)?;
    if let Some(svg_path) = plot {
        write_output(Some(&svg_path), &curvature_plot_svg(&p, &grid)?)?;
    }
    Ok(())
}

fn cmd_metric_control(eps: f64, output: Option<PathBuf>, plot: Option<PathBuf>) -> CmdResult {
    let (r_eps, p) = curvature_control_profile(eps)?;
    let grid = chebyshev_grid(2000);
    let report = curvature_report(&p, &grid)?;
    let lo = -(1.0 + eps);
    let hi = -1.0 / (1.0 + eps);
    let json = Json::obj([
        ("eps", Json::Float(eps)),
        ("r_eps", Json::Float(r_eps)),
        ("band_low", Json::Float(lo)),
        ("band_high", Json::Float(hi)),
        ("curvature_min", Json::Float(report.min)),
        ("curvature_max", Json::Float(report.max)),
        (
            "within_band",
            Json::Bool(report.min >= lo && report.max <= hi),
        ),
        ("grid_points", Json::Int(grid.len() as i64)),
    ]);
    write_report(output.as_ref(), &json)?;
    if let Some(svg_path) = plot {
        let cusp = RadialProfile::punctured_disk();
        let disk = RadialProfile::disk();
        let svg = profile_plot_svg(
            &[("control", &p), ("cusp", &cusp), ("disk", &disk)],
            &grid,
        );
        write_output(Some(&svg_path), &svg)?;
    }
    Ok(())
}

/// Parse a profile spec: `dstar`, `disk`, `extend:R0`, or `control:EPS`.
fn parse_profile(spec: &str) -> Result<RadialProfile, Failure> {
    let (head, arg) = match spec.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (spec, None),
    };
    let number = |what: &str| -> Result<f64, Failure> {
        arg.ok_or_else(|| {
            Failure::Lib(trisurf::Error::Domain(format!(
                "profile {head:?} needs an argument, e.g. {head}:{what}"
            )))
        })?
        .parse::<f64>()
        .map_err(|e| Failure::Lib(trisurf::Error::Domain(format!("bad number in {spec:?}: {e}"))))
    };
    match head {
        "dstar" => Ok(RadialProfile::punctured_disk()),
        "disk" => Ok(RadialProfile::disk()),
        "extend" => Ok(extend_metric(number("0.5")?)?),
        "control" => Ok(curvature_control_profile(number("0.1")?)?.1),
        other => Err(Failure::Lib(trisurf::Error::Domain(format!(
            "unknown profile {other:?}; expected dstar, disk, extend:R0, or control:EPS"
        )))),
    }
}

fn cmd_metric_compare(
    left: &str,
    right: &str,
    left_shift: f64,
    right_shift: f64,
    output: Option<PathBuf>,
) -> CmdResult {
    let p1 = parse_profile(left)?.shifted(left_shift);
    let p2 = parse_profile(right)?.shifted(right_shift);
    let grid = chebyshev_grid(2000);
    let outcome = compare_metrics(&p1, &p2, &grid)?;
    let verdict = match outcome {
        Comparison::Holds => "holds",
        Comparison::Fails => "fails",
        Comparison::HypothesisViolation => "hypothesis_violation",
    };
    let json = Json::obj([
        ("left", Json::from(left)),
        ("right", Json::from(right)),
        ("left_shift", Json::Float(left_shift)),
        ("right_shift", Json::Float(right_shift)),
        ("grid_points", Json::Int(grid.len() as i64)),
        ("comparison", Json::from(verdict)),
    ]);
    write_report(output.as_ref(), &json)
}

fn certificate_json(cert: &ObstructionCertificate, curve: &CuspCurve) -> Json {
    Json::obj([
        ("max_point_radius", Json::Float(cert.max_point.0)),
        ("max_point_angle", Json::Float(cert.max_point.1)),
        ("density_at_max", Json::Float(cert.u_at_max)),
        ("normal_derivative", Json::Float(cert.normal_derivative)),
        ("total_curvature", Json::Float(cert.total_curvature)),
        (
            "curvature_excess",
            Json::Float(cert.total_curvature - 2.0 * std::f64::consts::PI),
        ),
        ("enclosed_area", Json::Float(curve.enclosed_area)),
        ("certified", Json::Bool(cert.certified)),
    ])
}

fn cmd_curves_slit(r2: f64, output: Option<PathBuf>, svg: Option<PathBuf>) -> CmdResult {
    let (r1, r2, theta) = standard_slit_parameters(r2)?;
    let (curve, cert) = slit_horocycle(r1, r2, theta)?;
    let json = Json::obj([
        ("r1", Json::Float(r1)),
        ("r2", Json::Float(r2)),
        ("theta", Json::Float(theta)),
        ("certificate", certificate_json(&cert, &curve)),
    ]);
    write_report(output.as_ref(), &json)?;
    if let Some(svg_path) = svg {
        write_output(Some(&svg_path), &curve_svg(&curve))?;
    }
    Ok(())
}

fn cmd_curves_convex(output: Option<PathBuf>, svg: Option<PathBuf>) -> CmdResult {
    let (y, theta, curve) = convex_counterexample();
    let total = total_geodesic_curvature(&curve);
    let two_pi = 2.0 * std::f64::consts::PI;
    let top = y / theta.cos();
    let density_margin =
        u_dstar((-two_pi * top).exp())? - u_dstar((-two_pi * y).exp())?;
    let convex = curve
        .pieces
        .iter()
        .all(|p| p.geodesic_curvature() >= 0.0);
    let json = Json::obj([
        ("y", Json::Float(y)),
        ("theta", Json::Float(theta)),
        ("total_curvature", Json::Float(total)),
        ("curvature_excess", Json::Float(total - two_pi)),
        ("density_margin", Json::Float(density_margin)),
        ("pieces_convex", Json::Bool(convex)),
        (
            "certified",
            Json::Bool(convex && total - two_pi > 0.0 && density_margin > 0.0),
        ),
    ]);
    write_report(output.as_ref(), &json)?;
    if let Some(svg_path) = svg {
        write_output(Some(&svg_path), &curve_svg(&curve))?;
    }
    Ok(())
}

fn cmd_curves_noextend(output: Option<PathBuf>, svg: Option<PathBuf>) -> CmdResult {
    let (curve, report) = geodesic_horocycle_curve();
    let json = Json::obj([
        ("total_curvature", Json::Float(report.total_curvature)),
        ("curvature_excess", Json::Float(report.curvature_excess)),
        ("translation_width", Json::Float(report.translation_width)),
        ("geodesic_length", Json::Float(report.geodesic_length)),
        (
            "quotient_endpoint_distance",
            Json::Float(report.quotient_endpoint_distance),
        ),
        ("shortcut_margin", Json::Float(report.shortcut_margin)),
        (
            "certified",
            Json::Bool(report.curvature_excess > 0.0 && report.shortcut_margin > 0.0),
        ),
    ]);
    write_report(output.as_ref(), &json)?;
    if let Some(svg_path) = svg {
        write_output(Some(&svg_path), &curve_svg(&curve))?;
    }
    Ok(())
}
