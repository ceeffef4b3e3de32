//! Obstruction curves around the cusp of the punctured disk.
//!
//! A simple closed curve around the puncture bounds a region containing the
//! cusp; the lemma behind everything here is that the total geodesic
//! curvature of the curve (corner angles included) equals the hyperbolic
//! area of that region. When a curve has total curvature above 2 pi while
//! the maximum of the metric density over the curve sits at a point whose
//! outward normal derivative is negative, the maximum principle rules out
//! extending the cusp metric past the curve with negative curvature. This
//! module builds the three certified examples of that obstruction: a
//! horocycle with a slit, a convex curve (horocycle plus geodesic arc in
//! the half-plane cover), and a geodesic-with-horocyclic-ends curve whose
//! quotient shortcut kills every extension attempt.
//!
//! Curves are stored piecewise-analytically, either in the punctured disk
//! (level arcs and radial slits) or in the half-plane quotient `H / (z ->
//! z + width)` covering it (horocyclic and geodesic arcs); lengths and
//! curvatures are closed-form. Pieces are oriented with the cusp region on
//! the left, and `corners[i]` is the exterior angle at the end of piece
//! `i`.

use std::f64::consts::PI;

use crate::metrics::{u_dstar, u_dstar_prime};
use crate::{Error, Result};

/// Coordinate chart a curve is described in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveChart {
    /// The punctured unit disk; positions are (radius, angle).
    PuncturedDisk,
    /// The quotient of the upper half-plane by `z -> z + width`, which
    /// covers the punctured disk; positions are (x mod width, y).
    HalfPlaneQuotient { width: f64 },
}

/// One analytic piece of a cusp curve.
#[derive(Debug, Clone, Copy)]
pub enum CurvePiece {
    /// Arc of the circle `|z| = r` in the punctured disk from `start_angle`
    /// spanning `angle` counterclockwise. Geodesic curvature 1.
    LevelArc { r: f64, start_angle: f64, angle: f64 },
    /// Radial segment at fixed angle between two levels. Geodesic
    /// curvature 0.
    RadialSlit { angle: f64, r_from: f64, r_to: f64 },
    /// Horizontal segment at height `y` in the half-plane, from `x_from`
    /// with signed Euclidean extent `dx`. Geodesic curvature 1.
    Horocyclic { y: f64, x_from: f64, dx: f64 },
    /// Arc of the half-plane geodesic `|z - center_x| = radius`, traversed
    /// from `angle_from` to `angle_to` (angles from the positive real
    /// axis). Geodesic curvature 0.
    Geodesic {
        center_x: f64,
        radius: f64,
        angle_from: f64,
        angle_to: f64,
    },
}

impl CurvePiece {
    /// Hyperbolic length of the piece.
    pub fn length(&self) -> f64 {
        match *self {
            CurvePiece::LevelArc { r, angle, .. } => angle.abs() / (-r.ln()),
            CurvePiece::RadialSlit { r_from, r_to, .. } => {
                ((-r_from.ln()).ln() - (-r_to.ln()).ln()).abs()
            }
            CurvePiece::Horocyclic { y, dx, .. } => dx.abs() / y,
            CurvePiece::Geodesic {
                angle_from,
                angle_to,
                ..
            } => ((angle_to / 2.0).tan().ln() - (angle_from / 2.0).tan().ln()).abs(),
        }
    }

    /// Geodesic curvature, signed with respect to the cusp region on the
    /// left: level arcs and horocyclic arcs curve around the cusp with
    /// curvature 1; radial slits and geodesic arcs are geodesics.
    pub fn geodesic_curvature(&self) -> f64 {
        match self {
            CurvePiece::LevelArc { .. } | CurvePiece::Horocyclic { .. } => 1.0,
            CurvePiece::RadialSlit { .. } | CurvePiece::Geodesic { .. } => 0.0,
        }
    }

    fn start(&self) -> (f64, f64) {
        match *self {
            CurvePiece::LevelArc { r, start_angle, .. } => {
                (r * start_angle.cos(), r * start_angle.sin())
            }
            CurvePiece::RadialSlit { angle, r_from, .. } => {
                (r_from * angle.cos(), r_from * angle.sin())
            }
            CurvePiece::Horocyclic { y, x_from, .. } => (x_from, y),
            CurvePiece::Geodesic {
                center_x,
                radius,
                angle_from,
                ..
            } => (center_x + radius * angle_from.cos(), radius * angle_from.sin()),
        }
    }

    fn end(&self) -> (f64, f64) {
        match *self {
            CurvePiece::LevelArc {
                r,
                start_angle,
                angle,
            } => {
                let a = start_angle + angle;
                (r * a.cos(), r * a.sin())
            }
            CurvePiece::RadialSlit { angle, r_to, .. } => {
                (r_to * angle.cos(), r_to * angle.sin())
            }
            CurvePiece::Horocyclic { y, x_from, dx } => (x_from + dx, y),
            CurvePiece::Geodesic {
                center_x,
                radius,
                angle_to,
                ..
            } => (center_x + radius * angle_to.cos(), radius * angle_to.sin()),
        }
    }
}

/// A piecewise-analytic simple closed curve around the cusp, with its
/// exterior corner angles and the hyperbolic area of the enclosed region
/// (the component containing the puncture), computed in closed form at
/// construction.
#[derive(Debug, Clone)]
pub struct CuspCurve {
    pub chart: CurveChart,
    pub pieces: Vec<CurvePiece>,
    /// Exterior angle at the end of each piece (same length as `pieces`).
    pub corners: Vec<f64>,
    pub enclosed_area: f64,
}

impl CuspCurve {
    /// Whether consecutive piece endpoints chain up (and close) within
    /// `tol`, comparing x modulo the width in the quotient chart.
    pub fn is_closed_chain(&self, tol: f64) -> bool {
        let n = self.pieces.len();
        (0..n).all(|i| {
            let (xe, ye) = self.pieces[i].end();
            let (xs, ys) = self.pieces[(i + 1) % n].start();
            let dx = match self.chart {
                CurveChart::PuncturedDisk => xe - xs,
                CurveChart::HalfPlaneQuotient { width } => {
                    let d = (xe - xs).rem_euclid(width);
                    d.min(width - d)
                }
            };
            dx.abs() <= tol && (ye - ys).abs() <= tol
        })
    }
}

/// Total geodesic curvature of the curve: per-piece curvature times length
/// plus the exterior corner angles. By Gauss-Bonnet on the enclosed
/// cusp region (Euler characteristic zero, curvature -1, and a vanishing
/// boundary term at the puncture) this equals the enclosed hyperbolic area.
pub fn total_geodesic_curvature(c: &CuspCurve) -> f64 {
    let smooth: f64 = c
        .pieces
        .iter()
        .map(|p| p.geodesic_curvature() * p.length())
        .sum();
    smooth + c.corners.iter().sum::<f64>()
}

/// Why a curve obstructs a negatively curved extension of the cusp metric:
/// the metric density maximum over the curve sits at `max_point` with a
/// negative outward normal derivative while the enclosed area (= total
/// curvature) exceeds 2 pi.
#[derive(Debug, Clone, Copy)]
pub struct ObstructionCertificate {
    /// (radius, angle) of the density maximum over the curve.
    pub max_point: (f64, f64),
    pub u_at_max: f64,
    /// Outward (increasing radius) derivative of the density at the max.
    pub normal_derivative: f64,
    pub total_curvature: f64,
    pub certified: bool,
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Domain(format!("slit horocycle needs {what}")))
    }
}

/// A horocycle with a slit: the level-`r2` horocycle, opened over the
/// angular sector `|arg z| < theta` and rerouted down two radial slits to
/// the level-`r1` horocycle.
///
/// Requires `0 < r1 < 1/e < r2 < 1` and `0 < theta < pi`. The enclosed
/// area is `2 theta / log(1/r1) + 2 (pi - theta) / log(1/r2)`; the density
/// maximum over the curve is at the inner level (certified when
/// `u(r1) > u(r2)`), where the cusp profile is still decreasing outward.
pub fn slit_horocycle(
    r1: f64,
    r2: f64,
    theta: f64,
) -> Result<(CuspCurve, ObstructionCertificate)> {
    let inv_e = (-1.0f64).exp();
    require(r1 > 0.0, &format!("r1 > 0, got r1 = {r1}"))?;
    require(
        r1 < inv_e,
        &format!("r1 < 1/e (the inner level must be past the sharp threshold), got r1 = {r1}"),
    )?;
    require(
        r2 > inv_e,
        &format!("r2 > 1/e (the outer level must be on the rising side), got r2 = {r2}"),
    )?;
    require(r2 < 1.0, &format!("r2 < 1, got r2 = {r2}"))?;
    require(theta > 0.0, &format!("theta > 0, got theta = {theta}"))?;
    require(theta < PI, &format!("theta < pi, got theta = {theta}"))?;

    let l1 = -r1.ln();
    let l2 = -r2.ln();
    let area = 2.0 * theta / l1 + 2.0 * (PI - theta) / l2;
    let pieces = vec![
        CurvePiece::LevelArc {
            r: r1,
            start_angle: -theta,
            angle: 2.0 * theta,
        },
        CurvePiece::RadialSlit {
            angle: theta,
            r_from: r1,
            r_to: r2,
        },
        CurvePiece::LevelArc {
            r: r2,
            start_angle: theta,
            angle: 2.0 * (PI - theta),
        },
        CurvePiece::RadialSlit {
            angle: -theta,
            r_from: r2,
            r_to: r1,
        },
    ];
    // Right angles where slits meet circles; the two turns into the notch
    // are concave, the two out of it convex, netting zero.
    let corners = vec![-PI / 2.0, PI / 2.0, PI / 2.0, -PI / 2.0];
    let curve = CuspCurve {
        chart: CurveChart::PuncturedDisk,
        pieces,
        corners,
        enclosed_area: area,
    };
    let u1 = u_dstar(r1)?;
    let u2 = u_dstar(r2)?;
    let cert = ObstructionCertificate {
        max_point: (r1, 0.0),
        u_at_max: u1,
        normal_derivative: u_dstar_prime(r1)?,
        total_curvature: total_geodesic_curvature(&curve),
        certified: u1 > u2 && area > 2.0 * PI,
    };
    Ok((curve, cert))
}

/// Standard parameters for a certified slit horocycle at outer level `r2`:
/// the inner level is solved (by bisection below 1/e) so its density
/// exceeds the outer one by 0.1, and the slit angle is solved in closed
/// form so the enclosed area is exactly 2 pi + 0.5.
pub fn standard_slit_parameters(r2: f64) -> Result<(f64, f64, f64)> {
    let inv_e = (-1.0f64).exp();
    if !(r2 > inv_e && r2 < 1.0) {
        return Err(Error::Domain(format!(
            "outer level must satisfy 1/e < r2 < 1, got {r2}"
        )));
    }
    let target = u_dstar(r2)? + 0.1;
    // The density is strictly decreasing on (0, 1/e) and unbounded at 0.
    let mut lo = 1e-15;
    let mut hi = inv_e;
    for _ in 0..200 {
        let mid = (lo + hi) / 2.0;
        if u_dstar(mid)? > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let r1 = (lo + hi) / 2.0;
    let a = 2.0 / -r1.ln();
    let b = 2.0 / -r2.ln();
    let theta = (2.0 * PI + 0.5 - PI * b) / (a - b);
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::Domain(format!(
            "no slit angle in (0, pi) reaches area 2*pi + 0.5 for r2 = {r2}"
        )));
    }
    Ok((r1, r2, theta))
}

/// The convex obstruction curve: in the half-plane quotient `H/(z -> z+1)`,
/// a horocyclic segment at height `y` closed by a geodesic arc over the
/// seam that meets it at exterior angle `theta`.
///
/// The angle `theta_0` maximizing the gap in the solvability inequality
/// `pi/(pi + tan t - t) > (-cos t log cos t)/(1 - cos t)` over a 10^4-point
/// scan of (0, pi/2) fixes `y` by total curvature exactly 2 pi; shrinking
/// the angle to `0.9 theta_0` (with `y` kept) then makes the total
/// curvature strictly exceed 2 pi while the density maximum stays at the
/// arc's top, where the outward derivative is negative. Returns
/// `(y, theta, curve)`.
pub fn convex_counterexample() -> (f64, f64, CuspCurve) {
    let mut best = (f64::NEG_INFINITY, 0.0);
    for i in 0..10_000 {
        let t = (i as f64 + 0.5) * (PI / 2.0) / 10_000.0;
        let lhs = PI / (PI + t.tan() - t);
        let c = t.cos();
        let rhs = -c * c.ln() / (1.0 - c);
        let gap = lhs - rhs;
        if gap > best.0 {
            best = (gap, t);
        }
    }
    let (gap, theta0) = best;
    assert!(gap > 0.0, "solvability inequality has no positive gap");
    let y = 1.0 / (2.0 * (PI + theta0.tan() - theta0));
    let theta = 0.9 * theta0;
    let radius = y / theta.cos();
    let half_gap = y * theta.tan();
    let pieces = vec![
        CurvePiece::Horocyclic {
            y,
            x_from: half_gap,
            dx: 1.0 - 2.0 * half_gap,
        },
        CurvePiece::Geodesic {
            center_x: 1.0,
            radius,
            angle_from: PI / 2.0 + theta,
            angle_to: PI / 2.0 - theta,
        },
    ];
    let corners = vec![theta, theta];
    // Enclosed area: the full cusp neighborhood above height y, minus the
    // cap between that horocycle and the geodesic arc near the seam.
    let cap = 2.0 * theta.tan() - 2.0 * theta;
    let curve = CuspCurve {
        chart: CurveChart::HalfPlaneQuotient { width: 1.0 },
        pieces,
        corners,
        enclosed_area: 1.0 / y - cap,
    };
    debug_assert!(total_geodesic_curvature(&curve) > 2.0 * PI);
    (y, theta, curve)
}

/// Report for [`geodesic_horocycle_curve`].
#[derive(Debug, Clone, Copy)]
pub struct GeodesicHorocycleReport {
    pub total_curvature: f64,
    /// Total curvature minus 2 pi (positive: the obstruction threshold).
    pub curvature_excess: f64,
    /// Width of the quotient translation `z -> z + width`.
    pub translation_width: f64,
    pub geodesic_length: f64,
    /// Distance in the quotient between the geodesic piece's endpoints.
    pub quotient_endpoint_distance: f64,
    /// `geodesic_length` minus the quotient distance (positive: the
    /// geodesic piece is not minimizing, so it can be shortcut).
    pub shortcut_margin: f64,
}

/// The curve killing every extension: a geodesic segment of length 3 pi on
/// the unit semicircle, symmetric about its apex, extended at both ends by
/// horocyclic segments of length pi at the endpoint height, taken in the
/// quotient by the horizontal translation identifying the far horocyclic
/// endpoints.
///
/// Its total curvature exceeds 2 pi and the quotient distance between the
/// geodesic segment's endpoints is strictly below 3 pi, witnessing a
/// shortcut through the horocyclic side.
pub fn geodesic_horocycle_curve() -> (CuspCurve, GeodesicHorocycleReport) {
    let s = 1.5 * PI;
    let h = 1.0 / s.cosh();
    let half_x = s.tanh();
    let width = 2.0 * half_x + 2.0 * PI * h;
    let phi0 = h.asin();
    let corner = s.sinh().atan();
    let pieces = vec![
        CurvePiece::Geodesic {
            center_x: 0.0,
            radius: 1.0,
            angle_from: PI - phi0,
            angle_to: phi0,
        },
        CurvePiece::Horocyclic {
            y: h,
            x_from: half_x,
            dx: PI * h,
        },
        CurvePiece::Horocyclic {
            y: h,
            x_from: -half_x - PI * h,
            dx: PI * h,
        },
    ];
    let corners = vec![corner, 0.0, corner];
    // Enclosed area: strip above height h in the quotient, minus the cap
    // between that horocycle and the unit semicircle.
    let cap = 2.0 * half_x / h - 2.0 * half_x.asin();
    let curve = CuspCurve {
        chart: CurveChart::HalfPlaneQuotient { width },
        pieces,
        corners,
        enclosed_area: width / h - cap,
    };
    let total = total_geodesic_curvature(&curve);
    // Quotient distance between the geodesic endpoints (+-half_x, h):
    // minimize the half-plane distance over nearby translated copies.
    let quotient_distance = (-3..=3)
        .map(|k| {
            let dx = 2.0 * half_x + k as f64 * width;
            (1.0 + dx * dx / (2.0 * h * h)).acosh()
        })
        .fold(f64::INFINITY, f64::min);
    let geodesic_length = pieces_geodesic_length(&curve);
    let report = GeodesicHorocycleReport {
        total_curvature: total,
        curvature_excess: total - 2.0 * PI,
        translation_width: width,
        geodesic_length,
        quotient_endpoint_distance: quotient_distance,
        shortcut_margin: geodesic_length - quotient_distance,
    };
    (curve, report)
}

fn pieces_geodesic_length(c: &CuspCurve) -> f64 {
    c.pieces
        .iter()
        .filter(|p| matches!(p, CurvePiece::Geodesic { .. }))
        .map(|p| p.length())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::horoball_area;
    use approx::assert_abs_diff_eq;

    #[test]
    fn slit_with_standard_parameters_is_certified() {
        let (r1, r2, theta) = standard_slit_parameters(0.8).unwrap();
        assert!(r1 < (-1.0f64).exp());
        assert_abs_diff_eq!(
            u_dstar(r1).unwrap() - u_dstar(r2).unwrap(),
            0.1,
            epsilon = 1e-10
        );
        let (curve, cert) = slit_horocycle(r1, r2, theta).unwrap();
        assert_abs_diff_eq!(curve.enclosed_area, 2.0 * PI + 0.5, epsilon = 1e-10);
        assert!(cert.certified);
        assert!(cert.normal_derivative < 0.0);
        assert_abs_diff_eq!(cert.u_at_max, u_dstar(r1).unwrap(), epsilon = 1e-14);
        assert!(curve.is_closed_chain(1e-12));
    }

    #[test]
    fn slit_two_method_curvature() {
        let (curve, cert) = slit_horocycle(0.05, 0.8, 1.0).unwrap();
        // Piece-by-piece curvature plus corners against the closed-form
        // area of the enclosed region.
        assert_abs_diff_eq!(cert.total_curvature, curve.enclosed_area, epsilon = 1e-12);
        assert!(curve.is_closed_chain(1e-12));
    }

    #[test]
    fn slit_parameter_validation() {
        let e = |r1, r2, t| slit_horocycle(r1, r2, t).unwrap_err().to_string();
        assert!(e(0.5, 0.8, 1.0).contains("r1"));
        assert!(e(0.05, 0.2, 1.0).contains("r2"));
        assert!(e(0.05, 0.8, PI).contains("theta"));
        assert!(e(0.05, 0.8, 0.0).contains("theta"));
    }

    #[test]
    fn slit_degenerates_to_horocycle() {
        let r1 = 0.05;
        let (curve, _) = slit_horocycle(r1, 0.8, PI - 1e-9).unwrap();
        assert_abs_diff_eq!(
            curve.enclosed_area,
            horoball_area(r1).unwrap(),
            epsilon = 1e-6
        );
    }

    #[test]
    fn convex_solvability_inequality_at_small_angle() {
        let t = 0.1f64;
        let lhs = PI / (PI + t.tan() - t);
        let c = t.cos();
        let rhs = -c * c.ln() / (1.0 - c);
        assert!(lhs > rhs);
        assert_abs_diff_eq!(lhs, 0.999_893_5, epsilon = 1e-6);
        assert_abs_diff_eq!(rhs, 0.997_494, epsilon = 1e-5);
    }

    #[test]
    fn convex_curve_certificates() {
        let (y, theta, curve) = convex_counterexample();
        assert!(theta > 0.0 && theta < PI / 2.0);
        assert!(y > 0.0);
        let total = total_geodesic_curvature(&curve);
        assert!(total > 2.0 * PI + 1e-6);
        assert_abs_diff_eq!(total, curve.enclosed_area, epsilon = 1e-12);
        for p in &curve.pieces {
            assert!(p.geodesic_curvature() >= 0.0);
        }
        for &a in &curve.corners {
            assert!(a > 0.0, "convexity needs positive exterior angles");
        }
        assert!(curve.is_closed_chain(1e-12));
        // Density maximum at the arc top, decreasing outward there.
        let radius = y / theta.cos();
        let r_top = (-2.0 * PI * radius).exp();
        let r_level = (-2.0 * PI * y).exp();
        assert!(u_dstar(r_top).unwrap() > u_dstar(r_level).unwrap() + 1e-6);
        assert!(u_dstar_prime(r_top).unwrap() < 0.0);
    }

    #[test]
    fn geodesic_horocycle_reports_shortcut() {
        let (curve, report) = geodesic_horocycle_curve();
        assert_abs_diff_eq!(report.geodesic_length, 3.0 * PI, epsilon = 1e-9);
        assert_abs_diff_eq!(
            report.total_curvature,
            2.0 * PI + 2.0 * (1.5 * PI).sinh().atan(),
            epsilon = 1e-12
        );
        assert!(report.curvature_excess > 0.0);
        assert_abs_diff_eq!(
            report.quotient_endpoint_distance,
            (1.0 + 2.0 * PI * PI).acosh(),
            epsilon = 1e-12
        );
        assert!(report.quotient_endpoint_distance < 3.0 * PI);
        assert!(report.shortcut_margin > 0.0);
        assert_abs_diff_eq!(
            report.total_curvature,
            curve.enclosed_area,
            epsilon = 1e-12
        );
        assert!(curve.is_closed_chain(1e-12));
        // Mirror symmetry through the apex vertical: the horocyclic spans
        // sit at reflected x-ranges.
        match (curve.pieces[1], curve.pieces[2]) {
            (
                CurvePiece::Horocyclic {
                    x_from: a, dx: da, ..
                },
                CurvePiece::Horocyclic {
                    x_from: b, dx: db, ..
                },
            ) => {
                assert_abs_diff_eq!(a, -(b + db), epsilon = 1e-12);
                assert_abs_diff_eq!(da, db, epsilon = 1e-12);
            }
            other => panic!("unexpected pieces {other:?}"),
        }
    }
}
