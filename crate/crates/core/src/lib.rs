//! Connected 3-regular graphs carry a surface once every vertex is given a
//! cyclic order of its edge ends. This crate works with that data directly:
//!
//! * [`graph`]: rotation systems on darts, left-hand-turn tracing, Euler
//!   characteristic and genus of the spanned surface.
//! * [`generators`]: the theta graph, tetrahedron and cube skeletons with
//!   optional vertex flips, and the dual Platonic graphs built from
//!   `PSL(2, Z/k)`.
//! * [`symmetry`]: automorphisms and orientation-reversing automorphisms by
//!   flag propagation, and the induced orbits on triangle corners.
//! * [`angles`]: exact rational solving of the corner-angle systems imposed
//!   by the cusps, symmetries, and flatness.
//! * [`mobius`] and [`hyperbolic`]: ideal triangles in the upper half plane,
//!   fundamental polygons glued per the graph, side pairings, and the
//!   parabolicity test for the cusp cycle transformations.
//! * [`metrics`]: radial conformal metrics on the disk and punctured disk,
//!   the extension construction past the puncture, curvature pinching, and
//!   the curvature comparison test.
//! * [`curves`]: closed curves around the puncture whose geodesic curvature
//!   certifies that no negatively curved extension exists.
//! * [`render`] and [`report`]: deterministic SVG and JSON output.

pub mod angles;
pub mod curves;
pub mod generators;
pub mod graph;
pub mod hyperbolic;
pub mod metrics;
pub mod mobius;
pub mod render;
pub mod report;
pub mod symmetry;

use thiserror::Error;

/// Errors surfaced by the library.
///
/// `InvalidGraph` and `Domain` are caller errors (bad input or a violated
/// precondition); `Numeric` means an internal construction failed to meet its
/// own tolerance and carries a diagnostic.
#[derive(Debug, Error)]
pub enum Error {
    /// The input is not even syntactically a graph description.
    #[error("parse error: {0}")]
    Parse(String),
    /// The dart arrays do not describe a rotation system.
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    /// A precondition on the operation's arguments does not hold.
    #[error("{0}")]
    Domain(String),
    /// A numeric construction could not reach its tolerance.
    #[error("numeric failure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
