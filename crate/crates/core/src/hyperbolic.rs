//! Ideal-triangle geometry over a rotation system: the standard marked
//! triangle, fundamental polygon assembly, side pairings, vertex-cycle
//! transforms, tick shifts, and cusp sizes.
//!
//! One ideal triangle is pasted per graph vertex and one gluing per edge.
//! The standard triangle lives in the upper half-plane with vertices 0, 1
//! and infinity; each side carries a tick mark, and gluings match ticks (or
//! miss them by a prescribed hyperbolic shift). A spanning tree fixes the
//! placements; every non-tree edge then contributes a side-pairing Möbius
//! transformation, and walking once around an ideal vertex composes the
//! pairings into a cycle transform whose parabolicity is exactly the
//! condition for the surface to have a cusp there.
//!
//! # Conventions
//!
//! The three sides of the standard triangle are numbered by slots, oriented
//! counterclockwise: slot 0 runs 0 to 1, slot 1 runs 1 to infinity, slot 2
//! runs infinity to 0. The ticks are `(1+i)/2`, `1+i` and `i` respectively.
//! At each vertex of the graph, its smallest dart takes slot 0 and the
//! rotation advances slots. Shifts are per flag (per dart); a gluing
//! displaces tick from tick by `alpha(dart) + alpha(twin dart)` along the
//! common geodesic, the sum because the two triangles orient the shared
//! side oppositely. The parabolicity condition of a path is that its flag
//! shifts total zero, edges traversed twice counting twice.

use std::collections::{BTreeMap, VecDeque};

use num::complex::Complex64;

use crate::graph::{Dart, RotationGraph};
use crate::mobius::{BoundaryPoint, Mobius};
use crate::{Error, Result};

/// An ideal triangle with a tick mark on each side, stored together with the
/// Möbius transformation that carries the standard triangle onto it.
///
/// `vertices[k]` is the start of side `k`; `ticks[k]` is the (unshifted)
/// tick on side `k`.
#[derive(Debug, Clone)]
pub struct MarkedIdealTriangle {
    pub vertices: [BoundaryPoint; 3],
    pub ticks: [Complex64; 3],
    pub placement: Mobius,
}

/// The standard marked ideal triangle.
pub fn standard_triangle() -> MarkedIdealTriangle {
    place_triangle(Mobius::identity())
}

fn base_vertices() -> [BoundaryPoint; 3] {
    [
        BoundaryPoint::Finite(0.0),
        BoundaryPoint::Finite(1.0),
        BoundaryPoint::Infinity,
    ]
}

fn base_ticks() -> [Complex64; 3] {
    [
        Complex64::new(0.5, 0.5),
        Complex64::new(1.0, 1.0),
        Complex64::new(0.0, 1.0),
    ]
}

fn place_triangle(placement: Mobius) -> MarkedIdealTriangle {
    let vertices = base_vertices().map(|v| placement.apply_boundary(v));
    let ticks = base_ticks().map(|t| placement.apply(t));
    MarkedIdealTriangle {
        vertices,
        ticks,
        placement,
    }
}

/// Möbius carrying the reference side (imaginary axis oriented 0 to
/// infinity, tick at i) onto side `slot`, respecting its orientation.
pub fn side_frame(slot: u8) -> Mobius {
    let m = match slot {
        0 => [[1.0, 0.0], [1.0, 1.0]],
        1 => [[1.0, 1.0], [0.0, 1.0]],
        2 => [[0.0, -1.0], [1.0, 0.0]],
        _ => panic!("slot out of range"),
    };
    Mobius { m }
}

/// `z -> -1/z`: reverses the reference side, fixing its tick.
fn side_reversal() -> Mobius {
    Mobius {
        m: [[0.0, -1.0], [1.0, 0.0]],
    }
}

/// Per-flag hyperbolic tick shifts; flags are identified with darts.
#[derive(Debug, Clone)]
pub struct TickShifts {
    alpha: Vec<f64>,
}

impl TickShifts {
    pub fn zero(g: &RotationGraph) -> TickShifts {
        TickShifts {
            alpha: vec![0.0; g.dart_count()],
        }
    }

    pub fn set(&mut self, dart: Dart, value: f64) {
        self.alpha[dart] = value;
    }

    pub fn get(&self, dart: Dart) -> f64 {
        self.alpha[dart]
    }

    /// Displacement applied when gluing across `dart`: the sum of the two
    /// flags' tick shifts. Each flag measures its shift along its own
    /// triangle's boundary orientation, and the glued triangles induce
    /// opposite orientations on the shared geodesic, so the tick-to-tick
    /// gluing translates by the sum. The same value is obtained from either
    /// side, which is exactly what makes the two crossing maps mutually
    /// inverse (a gluing with side-dependent shifts is not a gluing at all).
    pub fn gluing_shift(&self, g: &RotationGraph, dart: Dart) -> f64 {
        self.alpha[dart] + self.alpha[g.twin(dart)]
    }
}

/// Slot of each dart: its vertex's smallest dart gets 0 and the rotation
/// advances slots, matching the counterclockwise side order.
pub fn slot_assignment(g: &RotationGraph) -> Vec<u8> {
    let mut slots = vec![3u8; g.dart_count()];
    for v in 0..g.vertex_count() {
        let first = g.darts_at(v)[0];
        let mut d = first;
        for s in 0..3 {
            slots[d] = s;
            d = g.rotation(d);
        }
        debug_assert_eq!(d, first);
    }
    slots
}

/// The gluing across `dart`: if the triangle of `dart`'s vertex is placed by
/// `P`, its neighbor across the edge is placed by `P * neighbor_map(dart)`.
pub fn neighbor_map(
    g: &RotationGraph,
    slots: &[u8],
    shifts: &TickShifts,
    dart: Dart,
) -> Mobius {
    let from = side_frame(slots[dart]);
    let to = side_frame(slots[g.twin(dart)]);
    from.compose(&Mobius::axis_shift(shifts.gluing_shift(g, dart)))
        .compose(&side_reversal())
        .compose(&to.inverse())
}

/// A fundamental polygon: one placed triangle per graph vertex, a spanning
/// tree of gluings realized by adjacency, and a side-pairing transformation
/// per non-tree dart.
#[derive(Debug, Clone)]
pub struct FundamentalPolygon {
    pub triangles: Vec<MarkedIdealTriangle>,
    pub tree_darts: Vec<Dart>,
    pub side_pairings: BTreeMap<Dart, Mobius>,
    pub slots: Vec<u8>,
    shifts: TickShifts,
}

impl FundamentalPolygon {
    pub fn placement(&self, vertex: usize) -> &Mobius {
        &self.triangles[vertex].placement
    }

    pub fn shifts(&self) -> &TickShifts {
        &self.shifts
    }

    /// The pairing attached to a dart: a real transformation for non-tree
    /// darts, the identity for tree darts (their triangles are adjacent).
    pub fn pairing(&self, dart: Dart) -> Mobius {
        self.side_pairings
            .get(&dart)
            .copied()
            .unwrap_or_else(Mobius::identity)
    }
}

/// Assemble the fundamental polygon of a graph.
///
/// A breadth-first spanning tree from vertex 0 (darts tried in id order)
/// fixes placements: vertex 0 carries the standard triangle and each tree
/// dart places its far triangle against the near one, side onto side with
/// ticks matching up to the prescribed shift. Every non-tree dart `d` from
/// vertex `a` to vertex `b` yields the pairing carrying triangle `b`'s copy
/// of the shared side onto triangle `a`'s copy.
pub fn assemble_polygon(g: &RotationGraph, shifts: &TickShifts) -> Result<FundamentalPolygon> {
    let slots = slot_assignment(g);
    let n = g.vertex_count();
    let mut placements: Vec<Option<Mobius>> = vec![None; n];
    let mut tree_darts = Vec::new();
    let mut in_tree = vec![false; g.dart_count()];
    placements[0] = Some(Mobius::identity());
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        let p = placements[v].expect("queued vertices are placed");
        for d in g.darts_at(v) {
            let far = g.vertex_of(g.twin(d));
            if placements[far].is_none() {
                placements[far] = Some(p.compose(&neighbor_map(g, &slots, shifts, d)));
                tree_darts.push(d);
                in_tree[d] = true;
                in_tree[g.twin(d)] = true;
                queue.push_back(far);
            }
        }
    }

    let triangles: Vec<MarkedIdealTriangle> = placements
        .into_iter()
        .map(|p| place_triangle(p.expect("graph is connected")))
        .collect();
    for (v, t) in triangles.iter().enumerate() {
        for i in 0..3 {
            for j in (i + 1)..3 {
                if !t.vertices[i].separates(t.vertices[j], 1e-8) {
                    return Err(Error::Numeric(format!(
                        "placed triangle {v} is degenerate: two ideal vertices collide"
                    )));
                }
            }
        }
    }

    let mut side_pairings = BTreeMap::new();
    for d in 0..g.dart_count() {
        if in_tree[d] {
            continue;
        }
        let a = g.vertex_of(d);
        let b = g.vertex_of(g.twin(d));
        let pairing = triangles[a]
            .placement
            .compose(&neighbor_map(g, &slots, shifts, d))
            .compose(&triangles[b].placement.inverse());
        side_pairings.insert(d, pairing);
    }

    Ok(FundamentalPolygon {
        triangles,
        tree_darts,
        side_pairings,
        slots,
        shifts: shifts.clone(),
    })
}

/// Cycle transform of each left-hand-turn path: the composition of the side
/// pairings met while walking once around the path's ideal vertex, in path
/// order. Returned in the order of [`RotationGraph::lht_paths`].
pub fn vertex_cycle_transforms(g: &RotationGraph, poly: &FundamentalPolygon) -> Vec<Mobius> {
    g.lht_paths()
        .iter()
        .map(|p| {
            let mut c = Mobius::identity();
            for &d in p.darts() {
                c = c.compose(&poly.pairing(d));
            }
            c
        })
        .collect()
}

/// `||trace| - 2|` of each cycle transform; zero means parabolic, i.e. the
/// ideal vertex closes up into a cusp.
pub fn parabolicity_residuals(g: &RotationGraph, poly: &FundamentalPolygon) -> Vec<f64> {
    vertex_cycle_transforms(g, poly)
        .iter()
        .map(|c| c.parabolic_residual())
        .collect()
}

/// Total gluing shift of each left-hand-turn path, in the order of
/// [`RotationGraph::lht_paths`]. All sums vanish exactly when every cycle
/// transform is parabolic; in general a path's cycle transform conjugates
/// to `z -> e^s z` where `s` is the path's sum.
pub fn check_shift_condition(g: &RotationGraph, shifts: &TickShifts) -> Vec<f64> {
    g.lht_paths()
        .iter()
        .map(|p| p.darts().iter().map(|&d| shifts.gluing_shift(g, d)).sum())
        .collect()
}

/// Size of each cusp: the boundary length of its maximal embedded horoball
/// neighborhood, which is the number of standard (length-1) horocyclic
/// segments around it, i.e. the combinatorial path length.
pub fn cusp_sizes(g: &RotationGraph) -> Vec<f64> {
    g.lht_paths().iter().map(|p| p.len() as f64).collect()
}

/// Whether every cusp is strictly larger than `threshold`. The interesting
/// threshold is 2 pi: beyond it the cusp metric extends over the puncture
/// with negative curvature.
pub fn large_cusps(g: &RotationGraph, threshold: f64) -> bool {
    cusp_sizes(g).iter().all(|&s| s > threshold)
}

/// Hyperbolic area of the ideal triangle with the given distinct boundary
/// vertices. Always pi; exposed for report plumbing and cross-checks.
pub fn ideal_triangle_area(vertices: [BoundaryPoint; 3]) -> f64 {
    let _ = vertices;
    std::f64::consts::PI
}
