//! Radial conformal metrics on the punctured disk.
//!
//! A radial conformal metric is `e^{2u(r)} |dz|^2` for a profile `u` of the
//! radius alone. This module provides the complete hyperbolic metrics of the
//! disk and the punctured disk in this form, horoball areas, the curvature
//! of arbitrary piecewise profiles, a negative-curvature extension of the
//! cusp metric over the puncture (possible exactly when the horoball inside
//! the curve has area greater than 2 pi), a sharpness certificate for that
//! threshold, profiles with curvature pinched in `[-(1+eps), -1/(1+eps)]`,
//! and a pointwise metric comparison backed by the curvature hypothesis of
//! the Ahlfors-Schwarz style comparison argument.
//!
//! Everything here is grid-certified numerics over closed-form pieces, not
//! interval arithmetic: bounds are checked on explicit grids and reported as
//! such.

use crate::{Error, Result};

fn inv_e() -> f64 {
    (-1.0f64).exp()
}

fn check_unit_interval(r: f64) -> Result<()> {
    if r > 0.0 && r < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "radius must lie strictly between 0 and 1, got {r}"
        )))
    }
}

/// Log-density `u = log(1/(r log(1/r)))` of the complete hyperbolic metric
/// of the punctured unit disk.
pub fn u_dstar(r: f64) -> Result<f64> {
    check_unit_interval(r)?;
    Ok(dstar_u(r))
}

/// Radial derivative of [`u_dstar`]; negative below 1/e, zero at 1/e,
/// positive above.
pub fn u_dstar_prime(r: f64) -> Result<f64> {
    check_unit_interval(r)?;
    Ok(dstar_up(r))
}

/// Log-density `u = log(2/(1-r^2))` of the hyperbolic metric of the unit
/// disk.
pub fn u_disk(r: f64) -> Result<f64> {
    check_unit_interval(r)?;
    Ok(disk_u(r))
}

/// Area of the horoball neighborhood `{0 < |z| < r}` of the puncture in the
/// complete hyperbolic metric of the punctured disk: `-2 pi / log r`. This
/// also equals the length of its horocyclic boundary.
pub fn horoball_area(r: f64) -> Result<f64> {
    check_unit_interval(r)?;
    Ok(-2.0 * std::f64::consts::PI / r.ln())
}

fn dstar_u(r: f64) -> f64 {
    let l = -r.ln();
    -r.ln() - l.ln()
}

fn dstar_up(r: f64) -> f64 {
    let l = -r.ln();
    (1.0 / l - 1.0) / r
}

fn dstar_upp(r: f64) -> f64 {
    let l = -r.ln();
    (l * l - l + 1.0) / (r * l).powi(2)
}

fn disk_u(r: f64) -> f64 {
    (2.0 / (1.0 - r * r)).ln()
}

fn disk_up(r: f64) -> f64 {
    2.0 * r / (1.0 - r * r)
}

fn disk_upp(r: f64) -> f64 {
    2.0 * (1.0 + r * r) / (1.0 - r * r).powi(2)
}

/// Smoothstep and its first two running integrals, used by the C^2 blend
/// windows: `s(t) = 3t^2 - 2t^3`, `S1 = int s`, `S2 = int S1`.
fn smoothstep(t: f64) -> f64 {
    t * t * (3.0 - 2.0 * t)
}

fn smoothstep_int(t: f64) -> f64 {
    t.powi(3) - t.powi(4) / 2.0
}

fn smoothstep_int2(t: f64) -> f64 {
    t.powi(4) / 4.0 - t.powi(5) / 10.0
}

/// Composite Simpson rule with `panels` even subintervals.
fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    debug_assert!(panels % 2 == 0 && panels >= 2);
    let h = (b - a) / panels as f64;
    let mut acc = f(a) + f(b);
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

/// Data shared by the two inner regions of a curvature-controlled profile.
/// The profile is recovered from a density `g` via `e^{-2u(r)} = I(r) =
/// int_r^1 2 s g(s) ds`; `g` is the disk density shifted by `delta` inside
/// `r_b`, blended into the cusp density over `[r_b, r_e]`, and exactly the
/// cusp density beyond `r_e` (where a separate closed-form segment takes
/// over).
#[derive(Debug, Clone, Copy)]
struct ControlData {
    delta: f64,
    r_b: f64,
    r_e: f64,
    /// `I(r_b)`, precomputed by quadrature over the blend window.
    i_rb: f64,
}

fn g_disk(r: f64) -> f64 {
    (1.0 - r * r) / 2.0
}

fn g_dstar(r: f64) -> f64 {
    let l = -r.ln();
    l - l * l
}

fn g_dstar_prime(r: f64) -> f64 {
    let l = -r.ln();
    (2.0 * l - 1.0) / r
}

fn i_disk(r: f64) -> f64 {
    (1.0 - r * r).powi(2) / 4.0
}

fn i_dstar(r: f64) -> f64 {
    (r * r.ln()).powi(2)
}

impl ControlData {
    fn blend_g(&self, r: f64) -> f64 {
        let t = (r - self.r_b) / (self.r_e - self.r_b);
        let s = smoothstep(t);
        (1.0 - s) * (g_disk(r) + self.delta) + s * g_dstar(r)
    }

    fn g(&self, r: f64) -> f64 {
        if r < self.r_b {
            g_disk(r) + self.delta
        } else {
            self.blend_g(r)
        }
    }

    fn g_prime(&self, r: f64) -> f64 {
        if r < self.r_b {
            -r
        } else {
            let w = self.r_e - self.r_b;
            let t = (r - self.r_b) / w;
            let s = smoothstep(t);
            let s_dot = 6.0 * t * (1.0 - t) / w;
            (1.0 - s) * (-r)
                + s * g_dstar_prime(r)
                + s_dot * (g_dstar(r) - g_disk(r) - self.delta)
        }
    }

    fn big_i(&self, r: f64) -> f64 {
        if r < self.r_b {
            self.i_rb + i_disk(r) - i_disk(self.r_b)
                + self.delta * (self.r_b * self.r_b - r * r)
        } else {
            i_dstar(self.r_e) + simpson(|s| 2.0 * s * self.blend_g(s), r, self.r_e, 200)
        }
    }

    fn u(&self, r: f64) -> f64 {
        -0.5 * self.big_i(r).ln()
    }

    fn u_prime(&self, r: f64) -> f64 {
        r * self.g(r) / self.big_i(r)
    }

    fn u_second(&self, r: f64) -> f64 {
        let i = self.big_i(r);
        let g = self.g(r);
        (g + r * self.g_prime(r)) / i + 2.0 * (r * g / i).powi(2)
    }
}

#[derive(Debug, Clone)]
enum SegmentKind {
    /// Complete hyperbolic metric of the punctured disk; not evaluable at 0.
    Dstar,
    /// Complete hyperbolic metric of the unit disk.
    Disk,
    /// `u = u0 + c r^2 / 2`.
    Quadratic { u0: f64, c: f64 },
    /// C^2 window gluing a constant second derivative `c` to the cusp
    /// profile's second derivative `c1` over `[r0 - h, r0]`.
    Window {
        r0: f64,
        h: f64,
        c: f64,
        c1: f64,
        u_start: f64,
    },
    /// Inner regions of a curvature-controlled profile.
    ControlInner(ControlData),
    ControlBlend(ControlData),
}

#[derive(Debug, Clone)]
struct Segment {
    /// Right endpoint; the segment covers `[previous end, end)`.
    end: f64,
    kind: SegmentKind,
}

/// A piecewise radial profile `u(r)` on `[0, 1)` (or `(0, 1)` when the
/// innermost piece blows up at the puncture), C^1 across breakpoints, plus a
/// constant offset. The offset rescales the metric: `u + log a` multiplies
/// the metric by `a^2` and its curvature by `1/a^2`.
#[derive(Debug, Clone)]
pub struct RadialProfile {
    segments: Vec<Segment>,
    offset: f64,
}

impl RadialProfile {
    /// The complete hyperbolic metric of the punctured disk.
    pub fn punctured_disk() -> RadialProfile {
        RadialProfile {
            segments: vec![Segment {
                end: 1.0,
                kind: SegmentKind::Dstar,
            }],
            offset: 0.0,
        }
    }

    /// The complete hyperbolic metric of the unit disk.
    pub fn disk() -> RadialProfile {
        RadialProfile {
            segments: vec![Segment {
                end: 1.0,
                kind: SegmentKind::Disk,
            }],
            offset: 0.0,
        }
    }

    /// The same profile with `du` added to `u` everywhere (a constant
    /// conformal rescaling of the metric).
    pub fn shifted(&self, du: f64) -> RadialProfile {
        RadialProfile {
            segments: self.segments.clone(),
            offset: self.offset + du,
        }
    }

    /// Interior breakpoints between pieces, in increasing order.
    pub fn breakpoints(&self) -> Vec<f64> {
        self.segments[..self.segments.len() - 1]
            .iter()
            .map(|s| s.end)
            .collect()
    }

    fn segment_at(&self, r: f64) -> Result<&SegmentKind> {
        if !(0.0..1.0).contains(&r) {
            return Err(Error::Domain(format!(
                "radius {r} outside the profile domain [0, 1)"
            )));
        }
        let seg = self
            .segments
            .iter()
            .find(|s| r < s.end)
            .expect("segments cover [0, 1)");
        if r == 0.0 && matches!(seg.kind, SegmentKind::Dstar) {
            return Err(Error::Domain(
                "the cusp profile blows up at the puncture r = 0".into(),
            ));
        }
        Ok(&seg.kind)
    }

    pub fn u(&self, r: f64) -> Result<f64> {
        let raw = match self.segment_at(r)? {
            SegmentKind::Dstar => dstar_u(r),
            SegmentKind::Disk => disk_u(r),
            SegmentKind::Quadratic { u0, c } => u0 + c * r * r / 2.0,
            SegmentKind::Window {
                r0,
                h,
                c,
                c1,
                u_start,
            } => {
                let t = (r - (r0 - h)) / h;
                let v_start = c * (r0 - h);
                u_start
                    + h * (v_start * t
                        + h * (c * t * t / 2.0 + (c1 - c) * smoothstep_int2(t)))
            }
            SegmentKind::ControlInner(d) | SegmentKind::ControlBlend(d) => d.u(r),
        };
        Ok(raw + self.offset)
    }

    pub fn u_prime(&self, r: f64) -> Result<f64> {
        Ok(match self.segment_at(r)? {
            SegmentKind::Dstar => dstar_up(r),
            SegmentKind::Disk => disk_up(r),
            SegmentKind::Quadratic { c, .. } => c * r,
            SegmentKind::Window { r0, h, c, c1, .. } => {
                let t = (r - (r0 - h)) / h;
                c * (r0 - h) + h * (c * t + (c1 - c) * smoothstep_int(t))
            }
            SegmentKind::ControlInner(d) | SegmentKind::ControlBlend(d) => d.u_prime(r),
        })
    }

    pub fn u_second(&self, r: f64) -> Result<f64> {
        Ok(match self.segment_at(r)? {
            SegmentKind::Dstar => dstar_upp(r),
            SegmentKind::Disk => disk_upp(r),
            SegmentKind::Quadratic { c, .. } => *c,
            SegmentKind::Window { r0, h, c, c1, .. } => {
                let t = (r - (r0 - h)) / h;
                c + (c1 - c) * smoothstep(t)
            }
            SegmentKind::ControlInner(d) | SegmentKind::ControlBlend(d) => d.u_second(r),
        })
    }
}

/// Gaussian curvature of the metric `e^{2u} |dz|^2` at radius `r`:
/// `-(u'' + u'/r) e^{-2u}`. At `r = 0` the radial symmetry forces
/// `u'/r -> u''(0)`, so the limit `-2 u''(0) e^{-2u(0)}` is used; that
/// requires `u'(0) = 0`, which holds for every profile here that extends
/// over the puncture.
pub fn radial_curvature(p: &RadialProfile, r: f64) -> Result<f64> {
    if r == 0.0 {
        let up = p.u_prime(0.0)?;
        if up.abs() > 1e-12 {
            return Err(Error::Domain(
                "curvature at r = 0 needs a smooth center: u'(0) = 0".into(),
            ));
        }
        return Ok(-2.0 * p.u_second(0.0)? * (-2.0 * p.u(0.0)?).exp());
    }
    Ok(-(p.u_second(r)? + p.u_prime(r)? / r) * (-2.0 * p.u(r)?).exp())
}

/// Curvature of a profile sampled over a grid.
#[derive(Debug, Clone)]
pub struct CurvatureReport {
    pub grid: Vec<f64>,
    pub kappa: Vec<f64>,
    pub min: f64,
    pub max: f64,
}

pub fn curvature_report(p: &RadialProfile, grid: &[f64]) -> Result<CurvatureReport> {
    let kappa: Vec<f64> = grid
        .iter()
        .map(|&r| radial_curvature(p, r))
        .collect::<Result<_>>()?;
    for k in &kappa {
        if !k.is_finite() {
            return Err(Error::Numeric("nonfinite curvature sample".into()));
        }
    }
    let min = kappa.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = kappa.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(CurvatureReport {
        grid: grid.to_vec(),
        kappa,
        min,
        max,
    })
}

/// `n` Chebyshev-spaced radii in (0, 1), strictly increasing and biased
/// toward both endpoints.
pub fn chebyshev_grid(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            let angle = std::f64::consts::PI * (2 * i + 1) as f64 / (2 * n) as f64;
            (1.0 - angle.cos()) / 2.0
        })
        .collect()
}

/// Extend the cusp metric from `{r >= r0}` over the puncture with strictly
/// negative curvature.
///
/// This follows the constructive proof of the extension lemma: pick a
/// positive continuous `w` on `[0, r0]` with integral `u'(r0)` that meets
/// `u''(r0)` at the seam, and integrate twice. Concretely `w` is the
/// constant `u'(r0)/r0` (nudged so the integral stays exact) glued C^1 to
/// `u''` over a window `[r0 - h, r0]` with `h = min(0.05, (r0 - 1/e)/2)`.
/// The result agrees with the cusp profile exactly on `[r0, 1)`, has
/// `u'(0) = 0`, is strictly convex and increasing, and so has negative
/// curvature everywhere.
///
/// The precondition `r0 > 1/e` is the horoball-area threshold
/// `horoball_area(r0) > 2 pi`, and it is sharp: below it the cusp profile
/// has `u' <= 0` at the seam, and the maximum principle rules out any
/// subharmonic (negatively curved) filling.
pub fn extend_metric(r0: f64) -> Result<RadialProfile> {
    check_unit_interval(r0)?;
    if r0 <= inv_e() {
        return Err(Error::Domain(format!(
            "no negatively curved extension exists for r0 = {r0}: it requires \
             horoball area -2*pi/log(r0) > 2*pi, i.e. r0 > 1/e, and that \
             threshold is sharp (the cusp profile has u'(r0) <= 0 there, \
             which the maximum principle forbids for a filled-in metric)"
        )));
    }
    let slope = dstar_up(r0);
    let c1 = dstar_upp(r0);
    let mut h = (0.05f64).min((r0 - inv_e()) / 2.0);
    let mut c = 0.0;
    let mut ok = false;
    for _ in 0..=40 {
        c = (slope - c1 * h / 2.0) / (r0 - h / 2.0);
        if c > 0.0 {
            ok = true;
            break;
        }
        h /= 2.0;
    }
    if !ok {
        return Err(Error::Numeric(format!(
            "could not pick a positive constant density for r0 = {r0} after 40 \
             window halvings"
        )));
    }
    let v_start = c * (r0 - h);
    let u_start = dstar_u(r0) - h * v_start - h * h * (c / 2.0 + 0.15 * (c1 - c));
    let u0 = u_start - c * (r0 - h) * (r0 - h) / 2.0;
    Ok(RadialProfile {
        segments: vec![
            Segment {
                end: r0 - h,
                kind: SegmentKind::Quadratic { u0, c },
            },
            Segment {
                end: r0,
                kind: SegmentKind::Window {
                    r0,
                    h,
                    c,
                    c1,
                    u_start,
                },
            },
            Segment {
                end: 1.0,
                kind: SegmentKind::Dstar,
            },
        ],
        offset: 0.0,
    })
}

/// Whether the cusp profile admits the boundary condition every negatively
/// curved extension of `p` past `r0` needs: a positive outward radial
/// derivative at the seam. `p` must agree with the cusp profile at `r0`.
/// When this returns false, no extension of the cusp metric at level `r0`
/// exists at all.
pub fn sharpness_certificate(p: &RadialProfile, r0: f64) -> Result<bool> {
    check_unit_interval(r0)?;
    debug_assert!(
        (p.u(r0)? - dstar_u(r0)).abs() < 1e-8,
        "profile does not agree with the cusp profile at the seam"
    );
    Ok(dstar_up(r0) > 0.0)
}

/// Outcome of a pointwise metric comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    /// Hypothesis verified and `u1 <= u2` on the whole grid.
    Holds,
    /// Hypothesis verified but the pointwise bound fails somewhere.
    Fails,
    /// The curvature hypothesis `kappa1 <= kappa2 < 0` fails on the grid,
    /// so the comparison says nothing.
    HypothesisViolation,
}

/// Grid-certified comparison of two metrics: under the curvature hypothesis
/// `kappa(p1) <= kappa(p2) < 0` (checked first, with 1e-9 slack), the more
/// curved metric is the smaller one; this checks `u1 <= u2 + 1e-10`
/// pointwise on the grid.
pub fn compare_metrics(
    p1: &RadialProfile,
    p2: &RadialProfile,
    grid: &[f64],
) -> Result<Comparison> {
    for &r in grid {
        let k1 = radial_curvature(p1, r)?;
        let k2 = radial_curvature(p2, r)?;
        if !(k1 <= k2 + 1e-9 && k2 < 0.0) {
            return Ok(Comparison::HypothesisViolation);
        }
    }
    for &r in grid {
        if p1.u(r)? > p2.u(r)? + 1e-10 {
            return Ok(Comparison::Fails);
        }
    }
    Ok(Comparison::Holds)
}

/// A profile agreeing with the cusp metric near the boundary whose curvature
/// is pinched in `[-(1+eps), -1/(1+eps)]`, together with the radius `r_eps`
/// beyond which it is exactly the cusp metric.
///
/// Construction: write metrics through the density `g` with
/// `e^{-2u(r)} = int_r^1 2 s g(s) ds`; the disk and cusp densities
/// `g_D = (1-r^2)/2` and `g_D* = log(1/r) - log(1/r)^2` both vanish at
/// `r = 1` with slope -1, so close to the boundary they are uniformly close
/// in C^1. Pick `r_eps` so close that both gaps stay below
/// `delta = 0.2 eps/(1+eps)`, shift the disk density by the constant
/// `g_D*(r_eps) - g_D(r_eps)` so the two agree at `r_eps`, and blend them
/// C^1 over a window ending at `r_eps`. The curvature
/// `-(2g + r g' + 2 r^2 g^2 / I)` then stays within the band; the band is
/// verified on a 2000-point Chebyshev grid and the smoothing window is
/// halved (at most 40 times) until it passes.
pub fn curvature_control_profile(eps: f64) -> Result<(f64, RadialProfile)> {
    if eps <= 0.0 {
        return Err(Error::Domain(format!("eps must be positive, got {eps}")));
    }
    let delta_target = 0.2 * eps / (1.0 + eps);
    let x_e = (delta_target / 8.0).sqrt();
    let r_e = 1.0 - x_e;
    let delta = g_dstar(r_e) - g_disk(r_e);
    let lo = -(1.0 + eps);
    let hi = -1.0 / (1.0 + eps);
    let grid = chebyshev_grid(2000);
    let mut width = x_e;
    for _ in 0..=40 {
        let r_b = r_e - width;
        let mut data = ControlData {
            delta,
            r_b,
            r_e,
            i_rb: 0.0,
        };
        data.i_rb = i_dstar(r_e) + simpson(|s| 2.0 * s * data.blend_g(s), r_b, r_e, 200);
        let profile = RadialProfile {
            segments: vec![
                Segment {
                    end: r_b,
                    kind: SegmentKind::ControlInner(data),
                },
                Segment {
                    end: r_e,
                    kind: SegmentKind::ControlBlend(data),
                },
                Segment {
                    end: 1.0,
                    kind: SegmentKind::Dstar,
                },
            ],
            offset: 0.0,
        };
        let report = curvature_report(&profile, &grid)?;
        if report.min >= lo && report.max <= hi {
            return Ok((r_e, profile));
        }
        width /= 2.0;
    }
    Err(Error::Numeric(format!(
        "curvature band [-(1+eps), -1/(1+eps)] not met for eps = {eps} after 40 \
         smoothing-window halvings"
    )))
}
