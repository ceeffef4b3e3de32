//! SVG output: fundamental polygons in the disk model, radial profile and
//! curvature plots, and cusp-curve views.
//!
//! Rendering discretizes analytic data for display only; nothing here feeds
//! back into any computation. Output is deterministic: fixed sampling,
//! fixed coordinate formatting.

use num::complex::Complex64;
use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::curves::{CurveChart, CurvePiece, CuspCurve};
use crate::graph::RotationGraph;
use crate::hyperbolic::FundamentalPolygon;
use crate::metrics::{radial_curvature, RadialProfile};
use crate::mobius::BoundaryPoint;
use crate::Result;

const PALETTE: [&str; 6] = [
    "#c0392b", "#2471a3", "#1e8449", "#b7950b", "#7d3c98", "#b03a2e",
];

struct Canvas {
    width: f64,
    height: f64,
    body: String,
}

impl Canvas {
    fn new(width: f64, height: f64) -> Canvas {
        Canvas {
            width,
            height,
            body: String::new(),
        }
    }

    fn polyline(&mut self, pts: &[(f64, f64)], stroke: &str, width: f64, dash: Option<&str>) {
        if pts.len() < 2 {
            return;
        }
        let mut points = String::new();
        for (x, y) in pts {
            let _ = write!(points, "{x:.2},{y:.2} ");
        }
        let dash = dash
            .map(|d| format!(" stroke-dasharray=\"{d}\""))
            .unwrap_or_default();
        let _ = writeln!(
            self.body,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"{width}\"{dash}/>",
            points.trim_end()
        );
    }

    fn circle(&mut self, center: (f64, f64), r: f64, fill: &str) {
        let _ = writeln!(
            self.body,
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"{r:.2}\" fill=\"{fill}\"/>",
            center.0, center.1
        );
    }

    fn ring(&mut self, center: (f64, f64), r: f64, stroke: &str) {
        let _ = writeln!(
            self.body,
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"{r:.2}\" fill=\"none\" stroke=\"{stroke}\"/>",
            center.0, center.1
        );
    }

    fn text(&mut self, pos: (f64, f64), size: f64, s: &str) {
        let _ = writeln!(
            self.body,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"{size}\" font-family=\"monospace\">{s}</text>",
            pos.0, pos.1
        );
    }

    fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0}\" height=\"{:.0}\" \
             viewBox=\"0 0 {:.0} {:.0}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.width, self.height, self.width, self.height, self.body
        )
    }
}

fn cayley(z: Complex64) -> Complex64 {
    (z - Complex64::i()) / (z + Complex64::i())
}

fn cayley_boundary(p: BoundaryPoint) -> Complex64 {
    match p {
        BoundaryPoint::Finite(x) => cayley(Complex64::new(x, 0.0)),
        BoundaryPoint::Infinity => Complex64::new(1.0, 0.0),
    }
}

/// Sample the half-plane geodesic from `a` to `b` (48 segments).
fn sample_geodesic(a: BoundaryPoint, b: BoundaryPoint) -> Vec<Complex64> {
    let n = 48;
    match (a, b) {
        (BoundaryPoint::Finite(p), BoundaryPoint::Finite(q)) => {
            let center = (p + q) / 2.0;
            let radius = (q - p).abs() / 2.0;
            // Angle pi corresponds to the smaller endpoint.
            let (from, to) = if p < q { (PI, 0.0) } else { (0.0, PI) };
            (0..=n)
                .map(|i| {
                    let t = from + (to - from) * i as f64 / n as f64;
                    Complex64::new(center + radius * t.cos(), radius * t.sin().max(1e-9))
                })
                .collect()
        }
        (BoundaryPoint::Finite(p), BoundaryPoint::Infinity) => vertical_ray(p),
        (BoundaryPoint::Infinity, BoundaryPoint::Finite(p)) => {
            let mut v = vertical_ray(p);
            v.reverse();
            v
        }
        (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => Vec::new(),
    }
}

fn vertical_ray(x: f64) -> Vec<Complex64> {
    let n = 48;
    (0..=n)
        .map(|i| {
            // Log-spaced heights from near the axis to far up.
            let y = 1e-3 * (1e6f64).powf(i as f64 / n as f64);
            Complex64::new(x, y)
        })
        .collect()
}

/// Render an assembled fundamental polygon in the disk model: triangle
/// sides, tick marks, and dashed chords joining the ticks of paired sides.
pub fn polygon_svg(g: &RotationGraph, poly: &FundamentalPolygon) -> String {
    let mut canvas = Canvas::new(600.0, 600.0);
    let to_screen = |w: Complex64| (300.0 + 280.0 * w.re, 300.0 - 280.0 * w.im);
    canvas.ring((300.0, 300.0), 280.0, "#888888");
    for (v, t) in poly.triangles.iter().enumerate() {
        let color = PALETTE[v % PALETTE.len()];
        for k in 0..3 {
            let pts: Vec<(f64, f64)> = sample_geodesic(t.vertices[k], t.vertices[(k + 1) % 3])
                .into_iter()
                .map(|z| to_screen(cayley(z)))
                .collect();
            canvas.polyline(&pts, color, 1.2, None);
        }
        for tick in &t.ticks {
            canvas.circle(to_screen(cayley(*tick)), 3.0, color);
        }
        // Ideal vertices on the boundary circle.
        for &vert in &t.vertices {
            canvas.circle(to_screen(cayley_boundary(vert)), 2.0, "#555555");
        }
    }
    for (&d, _) in &poly.side_pairings {
        if d > g.twin(d) {
            continue;
        }
        let a = poly.triangles[g.vertex_of(d)].ticks[poly.slots[d] as usize];
        let b = poly.triangles[g.vertex_of(g.twin(d))].ticks[poly.slots[g.twin(d)] as usize];
        let pts = [to_screen(cayley(a)), to_screen(cayley(b))];
        canvas.polyline(&pts, "#333333", 0.8, Some("4 3"));
    }
    canvas.finish()
}

struct Frame {
    x0: f64,
    y0: f64,
    w: f64,
    h: f64,
    xmin: f64,
    xmax: f64,
    ymin: f64,
    ymax: f64,
}

impl Frame {
    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        let sx = self.x0 + (x - self.xmin) / (self.xmax - self.xmin) * self.w;
        let sy = self.y0 + self.h - (y - self.ymin) / (self.ymax - self.ymin) * self.h;
        (sx, sy)
    }
}

fn plot(title: &str, series: &[(String, Vec<(f64, f64)>)]) -> String {
    let mut canvas = Canvas::new(640.0, 420.0);
    let (mut ymin, mut ymax) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut xmin, mut xmax) = (f64::INFINITY, f64::NEG_INFINITY);
    for (_, pts) in series {
        for &(x, y) in pts {
            xmin = xmin.min(x);
            xmax = xmax.max(x);
            ymin = ymin.min(y);
            ymax = ymax.max(y);
        }
    }
    if !(ymin.is_finite() && ymax.is_finite()) {
        ymin = 0.0;
        ymax = 1.0;
    }
    let pad = 0.05 * (ymax - ymin).max(1e-9);
    let frame = Frame {
        x0: 60.0,
        y0: 40.0,
        w: 540.0,
        h: 330.0,
        xmin,
        xmax,
        ymin: ymin - pad,
        ymax: ymax + pad,
    };
    canvas.polyline(
        &[
            (frame.x0, frame.y0),
            (frame.x0, frame.y0 + frame.h),
            (frame.x0 + frame.w, frame.y0 + frame.h),
        ],
        "#333333",
        1.0,
        None,
    );
    canvas.text((frame.x0, 24.0), 14.0, title);
    canvas.text((8.0, frame.y0 + 8.0), 11.0, &format!("{:.4}", frame.ymax));
    canvas.text(
        (8.0, frame.y0 + frame.h),
        11.0,
        &format!("{:.4}", frame.ymin),
    );
    canvas.text(
        (frame.x0 + frame.w - 30.0, frame.y0 + frame.h + 16.0),
        11.0,
        &format!("{xmax:.2}"),
    );
    canvas.text(
        (frame.x0, frame.y0 + frame.h + 16.0),
        11.0,
        &format!("{xmin:.2}"),
    );
    for (i, (name, pts)) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let screen: Vec<(f64, f64)> = pts.iter().map(|&(x, y)| frame.map(x, y)).collect();
        canvas.polyline(&screen, color, 1.5, None);
        canvas.text(
            (frame.x0 + frame.w - 120.0, frame.y0 + 16.0 * (i + 1) as f64),
            12.0,
            &format!("<tspan fill=\"{color}\">{name}</tspan>"),
        );
    }
    canvas.finish()
}

/// Plot `u(r)` for one or more named profiles over a grid, skipping radii
/// outside a profile's domain.
pub fn profile_plot_svg(series: &[(&str, &RadialProfile)], grid: &[f64]) -> String {
    let data: Vec<(String, Vec<(f64, f64)>)> = series
        .iter()
        .map(|(name, p)| {
            let pts = grid
                .iter()
                .filter_map(|&r| p.u(r).ok().map(|u| (r, u)))
                .collect();
            (name.to_string(), pts)
        })
        .collect();
    plot("u(r)", &data)
}

/// Plot the curvature of a profile over a grid.
pub fn curvature_plot_svg(p: &RadialProfile, grid: &[f64]) -> Result<String> {
    let pts = grid
        .iter()
        .map(|&r| radial_curvature(p, r).map(|k| (r, k)))
        .collect::<Result<Vec<_>>>()?;
    Ok(plot("kappa(r)", &[("kappa".to_string(), pts)]))
}

/// Sample one curve piece in its native chart (parameter-uniform points).
fn sample_piece(piece: &CurvePiece, n: usize) -> Vec<(f64, f64)> {
    (0..=n)
        .map(|i| {
            let t = i as f64 / n as f64;
            match *piece {
                CurvePiece::LevelArc {
                    r,
                    start_angle,
                    angle,
                } => {
                    let a = start_angle + t * angle;
                    (r * a.cos(), r * a.sin())
                }
                CurvePiece::RadialSlit {
                    angle,
                    r_from,
                    r_to,
                } => {
                    let r = r_from + t * (r_to - r_from);
                    (r * angle.cos(), r * angle.sin())
                }
                CurvePiece::Horocyclic { y, x_from, dx } => (x_from + t * dx, y),
                CurvePiece::Geodesic {
                    center_x,
                    radius,
                    angle_from,
                    angle_to,
                } => {
                    let a = angle_from + t * (angle_to - angle_from);
                    (center_x + radius * a.cos(), radius * a.sin())
                }
            }
        })
        .collect()
}

/// Render a cusp curve in two panels: its punctured-disk view and its
/// half-plane view, converting through the exponential cover either way.
pub fn curve_svg(curve: &CuspCurve) -> String {
    let mut canvas = Canvas::new(840.0, 440.0);
    let n = 64;

    // Per-piece samples as (disk point, half-plane point).
    let mut disk_pieces: Vec<Vec<(f64, f64)>> = Vec::new();
    let mut half_pieces: Vec<Vec<(f64, f64)>> = Vec::new();
    for piece in &curve.pieces {
        let native = sample_piece(piece, n);
        match curve.chart {
            CurveChart::PuncturedDisk => {
                disk_pieces.push(native.clone());
                half_pieces.push(
                    native
                        .iter()
                        .map(|&(x, y)| {
                            let r = (x * x + y * y).sqrt();
                            let phi = y.atan2(x);
                            (phi / (2.0 * PI), -r.ln() / (2.0 * PI))
                        })
                        .collect(),
                );
            }
            CurveChart::HalfPlaneQuotient { width } => {
                half_pieces.push(native.clone());
                disk_pieces.push(
                    native
                        .iter()
                        .map(|&(x, y)| {
                            let rho = (-2.0 * PI * y / width).exp();
                            let phi = 2.0 * PI * x / width;
                            (rho * phi.cos(), rho * phi.sin())
                        })
                        .collect(),
                );
            }
        }
    }

    // Left panel: punctured disk.
    let to_disk = |p: (f64, f64)| (220.0 + 190.0 * p.0, 220.0 - 190.0 * p.1);
    canvas.ring((220.0, 220.0), 190.0, "#888888");
    canvas.circle((220.0, 220.0), 2.5, "#000000");
    for (i, pts) in disk_pieces.iter().enumerate() {
        let screen: Vec<(f64, f64)> = pts.iter().map(|&p| to_disk(p)).collect();
        canvas.polyline(&screen, PALETTE[i % PALETTE.len()], 1.5, None);
    }
    canvas.text((60.0, 428.0), 12.0, "punctured disk");

    // Right panel: half-plane, framed to the samples.
    let (mut xmin, mut xmax, mut ymax) = (f64::INFINITY, f64::NEG_INFINITY, 0.0f64);
    for pts in &half_pieces {
        for &(x, y) in pts {
            xmin = xmin.min(x);
            xmax = xmax.max(x);
            ymax = ymax.max(y);
        }
    }
    let frame = Frame {
        x0: 460.0,
        y0: 30.0,
        w: 360.0,
        h: 380.0,
        xmin: xmin - 0.05 * (xmax - xmin),
        xmax: xmax + 0.05 * (xmax - xmin),
        ymin: 0.0,
        ymax: ymax * 1.15,
    };
    canvas.polyline(
        &[
            (frame.x0, frame.y0 + frame.h),
            (frame.x0 + frame.w, frame.y0 + frame.h),
        ],
        "#333333",
        1.0,
        None,
    );
    if let CurveChart::HalfPlaneQuotient { width } = curve.chart {
        for seam in [0.0, width] {
            let pts = [frame.map(seam, 0.0), frame.map(seam, frame.ymax)];
            canvas.polyline(&pts, "#aaaaaa", 0.8, Some("5 4"));
        }
    }
    for (i, pts) in half_pieces.iter().enumerate() {
        let screen: Vec<(f64, f64)> = pts.iter().map(|&(x, y)| frame.map(x, y)).collect();
        canvas.polyline(&screen, PALETTE[i % PALETTE.len()], 1.5, None);
    }
    canvas.text((460.0, 428.0), 12.0, "half-plane cover");
    canvas.finish()
}
