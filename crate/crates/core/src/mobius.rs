//! Real Möbius transformations acting on the upper half-plane.
//!
//! A transformation is a real 2x2 matrix of determinant 1 acting by
//! `z -> (az + b)/(cz + d)`. Matrices are normalized on construction, so a
//! transformation and its negative are the same map and trace comparisons
//! use absolute values.

use num::complex::Complex64;

use crate::{Error, Result};

/// Point on the boundary circle of the half-plane model: a real number or
/// the point at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryPoint {
    Finite(f64),
    Infinity,
}

impl BoundaryPoint {
    /// Distance in the sense used for degeneracy checks: infinite points are
    /// close only to infinite points.
    pub fn separates(self, other: BoundaryPoint, tol: f64) -> bool {
        match (self, other) {
            (BoundaryPoint::Finite(a), BoundaryPoint::Finite(b)) => (a - b).abs() > tol,
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => false,
            _ => true,
        }
    }
}

/// Orientation-preserving isometry of the upper half-plane, stored as a
/// det-1 matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy)]
pub struct Mobius {
    pub m: [[f64; 2]; 2],
}

impl Mobius {
    /// Normalize a matrix with positive determinant to det 1.
    pub fn new(m: [[f64; 2]; 2]) -> Result<Self> {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if det <= 0.0 || !det.is_finite() {
            return Err(Error::Numeric(format!(
                "matrix determinant {det} is not positive"
            )));
        }
        let s = det.sqrt();
        Ok(Mobius {
            m: [[m[0][0] / s, m[0][1] / s], [m[1][0] / s, m[1][1] / s]],
        })
    }

    pub fn identity() -> Self {
        Mobius {
            m: [[1.0, 0.0], [0.0, 1.0]],
        }
    }

    /// `z -> z + t`.
    pub fn translation(t: f64) -> Self {
        Mobius {
            m: [[1.0, t], [0.0, 1.0]],
        }
    }

    /// `z -> e^t z`: hyperbolic translation by distance `t` along the
    /// imaginary axis, in the 0-to-infinity direction.
    pub fn axis_shift(t: f64) -> Self {
        Mobius {
            m: [[(t / 2.0).exp(), 0.0], [0.0, (-t / 2.0).exp()]],
        }
    }

    pub fn det(&self) -> f64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> f64 {
        self.m[0][0] + self.m[1][1]
    }

    /// `||trace| - 2|`: zero exactly for parabolic (or identity) elements.
    pub fn parabolic_residual(&self) -> f64 {
        (self.trace().abs() - 2.0).abs()
    }

    pub fn is_parabolic(&self, tol: f64) -> bool {
        self.parabolic_residual() < tol
    }

    pub fn inverse(&self) -> Self {
        // det = 1, so the adjugate is the inverse.
        Mobius {
            m: [
                [self.m[1][1], -self.m[0][1]],
                [-self.m[1][0], self.m[0][0]],
            ],
        }
    }

    pub fn compose(&self, other: &Mobius) -> Self {
        let a = &self.m;
        let b = &other.m;
        Mobius {
            m: [
                [
                    a[0][0] * b[0][0] + a[0][1] * b[1][0],
                    a[0][0] * b[0][1] + a[0][1] * b[1][1],
                ],
                [
                    a[1][0] * b[0][0] + a[1][1] * b[1][0],
                    a[1][0] * b[0][1] + a[1][1] * b[1][1],
                ],
            ],
        }
    }

    /// Apply to an interior point of the half-plane.
    pub fn apply(&self, z: Complex64) -> Complex64 {
        let a = Complex64::new(self.m[0][0], 0.0);
        let b = Complex64::new(self.m[0][1], 0.0);
        let c = Complex64::new(self.m[1][0], 0.0);
        let d = Complex64::new(self.m[1][1], 0.0);
        (a * z + b) / (c * z + d)
    }

    /// Apply to a boundary point.
    pub fn apply_boundary(&self, p: BoundaryPoint) -> BoundaryPoint {
        const EPS: f64 = 1e-12;
        match p {
            BoundaryPoint::Finite(x) => {
                let denom = self.m[1][0] * x + self.m[1][1];
                if denom.abs() < EPS {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite((self.m[0][0] * x + self.m[0][1]) / denom)
                }
            }
            BoundaryPoint::Infinity => {
                if self.m[1][0].abs() < EPS {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite(self.m[0][0] / self.m[1][0])
                }
            }
        }
    }

    /// Max entrywise distance to another transformation, modulo overall sign.
    pub fn distance(&self, other: &Mobius) -> f64 {
        let mut plus: f64 = 0.0;
        let mut minus: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                plus = plus.max((self.m[i][j] - other.m[i][j]).abs());
                minus = minus.max((self.m[i][j] + other.m[i][j]).abs());
            }
        }
        plus.min(minus)
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.distance(&Mobius::identity()) < tol
    }

    /// Entries row-major, for JSON reports.
    pub fn row_major(&self) -> [f64; 4] {
        [self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]]
    }
}

/// Hyperbolic distance between interior points of the half-plane.
pub fn hyperbolic_distance(p: Complex64, q: Complex64) -> f64 {
    let num = (p - q).norm_sqr();
    let arg = 1.0 + num / (2.0 * p.im * q.im);
    (arg + (arg * arg - 1.0).sqrt()).ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn composition_matches_pointwise_application() {
        let f = Mobius::new([[2.0, 1.0], [1.0, 1.0]]).unwrap();
        let g = Mobius::new([[0.0, -1.0], [1.0, 0.0]]).unwrap();
        let fg = f.compose(&g);
        for &z in &[
            Complex64::new(0.3, 1.2),
            Complex64::new(-2.0, 0.5),
            Complex64::new(5.0, 3.0),
        ] {
            let direct = f.apply(g.apply(z));
            let composed = fg.apply(z);
            assert_abs_diff_eq!(direct.re, composed.re, epsilon = 1e-10);
            assert_abs_diff_eq!(direct.im, composed.im, epsilon = 1e-10);
        }
    }

    #[test]
    fn inverse_cancels() {
        let f = Mobius::new([[3.0, 2.0], [4.0, 3.0]]).unwrap();
        assert!(f.compose(&f.inverse()).is_identity(1e-12));
        assert!(f.inverse().compose(&f).is_identity(1e-12));
    }

    #[test]
    fn normalization_and_trace() {
        let f = Mobius::new([[2.0, 0.0], [0.0, 2.0]]).unwrap();
        assert_abs_diff_eq!(f.det(), 1.0, epsilon = 1e-14);
        assert!(f.is_identity(1e-14));
        assert!(Mobius::new([[1.0, 0.0], [0.0, -1.0]]).is_err());

        let t = Mobius::translation(5.0);
        assert!(t.is_parabolic(1e-14));
        let s = Mobius::axis_shift(1.0);
        assert_abs_diff_eq!(s.trace().abs(), 2.0 * (0.5f64).cosh(), epsilon = 1e-14);
    }

    #[test]
    fn boundary_action() {
        let s = Mobius::new([[0.0, -1.0], [1.0, 0.0]]).unwrap();
        assert_eq!(
            s.apply_boundary(BoundaryPoint::Finite(0.0)),
            BoundaryPoint::Infinity
        );
        assert_eq!(
            s.apply_boundary(BoundaryPoint::Infinity),
            BoundaryPoint::Finite(0.0)
        );
        match s.apply_boundary(BoundaryPoint::Finite(2.0)) {
            BoundaryPoint::Finite(x) => assert_abs_diff_eq!(x, -0.5, epsilon = 1e-14),
            _ => panic!("expected finite image"),
        }
    }

    #[test]
    fn distance_formula() {
        // Points i and e*i on the imaginary axis are at distance 1.
        let d = hyperbolic_distance(
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, std::f64::consts::E),
        );
        assert_abs_diff_eq!(d, 1.0, epsilon = 1e-12);
    }
}
