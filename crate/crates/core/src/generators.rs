//! Built-in graph families: the theta graph, the tetrahedron and cube
//! skeletons, and the modular-group quotients.
//!
//! Polyhedral skeletons are built from their oriented face lists, so the
//! unflipped rotation system reproduces the faces as its left-hand-turn
//! paths. Flipping a subset of vertices (reversing their cyclic order) then
//! produces the other surfaces the same graph can span.

use std::collections::HashMap;

use crate::graph::{GraphData, RotationGraph};
use crate::{Error, Result};

/// Build a rotation system from the oriented faces of a polyhedron-like map.
///
/// Each face is a cyclic vertex sequence; every directed edge must appear in
/// exactly one face. Darts are the directed edges `(u, v)` in lexicographic
/// order, owned by `u`. If a face reads `... u, v, w ...`, the rotation at
/// `v` sends the dart `v -> u` to the dart `v -> w`; left-hand-turn tracing
/// of the result walks each face in its given order.
pub fn from_oriented_faces(vertex_count: usize, faces: &[Vec<usize>]) -> Result<RotationGraph> {
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    for face in faces {
        if face.len() < 3 {
            return Err(Error::Domain(format!(
                "face {face:?} is too short; need at least 3 vertices"
            )));
        }
        for i in 0..face.len() {
            let u = face[i];
            let v = face[(i + 1) % face.len()];
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::Domain(format!(
                    "face vertex out of range in {face:?}"
                )));
            }
            if u == v {
                return Err(Error::Domain(format!("face {face:?} repeats vertex {u}")));
            }
            arcs.push((u, v));
        }
    }
    arcs.sort_unstable();
    if arcs.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Domain(
            "a directed edge appears in two faces; orientations disagree".to_string(),
        ));
    }
    let id: HashMap<(usize, usize), usize> =
        arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();

    let dart_count = arcs.len();
    let mut twin = vec![usize::MAX; dart_count];
    let mut rotation = vec![usize::MAX; dart_count];
    let dart_vertex: Vec<usize> = arcs.iter().map(|&(u, _)| u).collect();

    for (d, &(u, v)) in arcs.iter().enumerate() {
        twin[d] = *id
            .get(&(v, u))
            .ok_or_else(|| Error::Domain(format!("edge {u}-{v} lacks its reverse")))?;
    }
    for face in faces {
        let n = face.len();
        for i in 0..n {
            let u = face[i];
            let v = face[(i + 1) % n];
            let w = face[(i + 2) % n];
            rotation[id[&(v, u)]] = id[&(v, w)];
        }
    }

    GraphData {
        vertex_count,
        twin,
        rotation,
        dart_vertex,
    }
    .into_graph()
}

/// The theta graph: two vertices joined by three parallel edges.
///
/// With no flips the rotation system is the planar embedding, whose three
/// left-hand-turn paths have length 2 each (genus 0). Flipping one vertex
/// merges them into a single path of length 6 (genus 1).
pub fn theta(flips: &[usize]) -> Result<RotationGraph> {
    // Multiple edges rule out the face recipe, so the arrays are explicit.
    // Darts 0,1,2 at vertex 0 point along edges e0,e1,e2 to darts 3,4,5 at
    // vertex 1; the two cyclic orders are mirrored, as in the plane.
    let base = GraphData {
        vertex_count: 2,
        twin: vec![3, 4, 5, 0, 1, 2],
        rotation: vec![1, 2, 0, 5, 3, 4],
        dart_vertex: vec![0, 0, 0, 1, 1, 1],
    }
    .into_graph()?;
    base.flip_vertices(flips)
}

/// The tetrahedron skeleton (K4). Vertices are 0..4; with no flips the four
/// triangles are the left-hand-turn paths (genus 0).
pub fn tetrahedron(flips: &[usize]) -> Result<RotationGraph> {
    let faces = vec![
        vec![0, 1, 2],
        vec![0, 2, 3],
        vec![0, 3, 1],
        vec![1, 3, 2],
    ];
    from_oriented_faces(4, &faces)?.flip_vertices(flips)
}

/// The cube skeleton (Q3). Vertex `v` sits at coordinates given by the bits
/// of `v` (bit 0 = x, bit 1 = y, bit 2 = z); with no flips the six squares
/// are the left-hand-turn paths (genus 0).
pub fn cube(flips: &[usize]) -> Result<RotationGraph> {
    let faces = vec![
        vec![4, 5, 7, 6], // top (z = 1) seen from above
        vec![0, 2, 3, 1], // bottom
        vec![0, 1, 5, 4], // y = 0
        vec![2, 6, 7, 3], // y = 1
        vec![1, 3, 7, 5], // x = 1
        vec![0, 4, 6, 2], // x = 0
    ];
    from_oriented_faces(8, &faces)?.flip_vertices(flips)
}

/// 2x2 matrix over `Z/k`, entries reduced and stored row-major.
type Mat = [u32; 4];

fn mat_mul(a: Mat, b: Mat, k: u32) -> Mat {
    [
        (a[0] * b[0] + a[1] * b[2]) % k,
        (a[0] * b[1] + a[1] * b[3]) % k,
        (a[2] * b[0] + a[3] * b[2]) % k,
        (a[2] * b[1] + a[3] * b[3]) % k,
    ]
}

/// Representative of `{M, -M}`: the lexicographically smaller of the pair.
fn psl_canonical(m: Mat, k: u32) -> Mat {
    let neg = [
        (k - m[0]) % k,
        (k - m[1]) % k,
        (k - m[2]) % k,
        (k - m[3]) % k,
    ];
    m.min(neg)
}

/// Cayley-graph quotient of the modular group by its level-`k` principal
/// congruence subgroup.
///
/// Darts are the elements of `PSL(2, Z/k)`. The order-3 element
/// `R = [[0,-1],[1,1]]` acts by left multiplication as the rotation, and the
/// order-2 element `S = [[0,-1],[1,0]]` as the twin, so vertices are the
/// `<R>`-cosets and edges the `<S>`-cosets. The left-hand-turn successor is
/// left multiplication by the parabolic `RS`, hence every path has length `k`
/// (length 2 for `k = 2`).
pub fn gamma_quotient(k: u32) -> Result<RotationGraph> {
    if !(2..=13).contains(&k) {
        return Err(Error::Domain(format!(
            "level must be between 2 and 13, got {k}"
        )));
    }
    let mut elements: Vec<Mat> = Vec::new();
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                for d in 0..k {
                    if (a * d + k * k - (b * c) % (k * k)) % k == 1 % k {
                        let m = psl_canonical([a, b, c, d], k);
                        if m == [a, b, c, d] {
                            elements.push(m);
                        }
                    }
                }
            }
        }
    }
    elements.sort_unstable();
    elements.dedup();
    let index: HashMap<Mat, usize> =
        elements.iter().enumerate().map(|(i, &m)| (m, i)).collect();

    let r: Mat = [0, k - 1, 1, 1];
    let s: Mat = [0, k - 1, 1, 0];
    let dart_count = elements.len();
    let mut rotation = vec![0; dart_count];
    let mut twin = vec![0; dart_count];
    for (d, &m) in elements.iter().enumerate() {
        rotation[d] = index[&psl_canonical(mat_mul(r, m, k), k)];
        twin[d] = index[&psl_canonical(mat_mul(s, m, k), k)];
    }

    // Vertices are the rotation orbits, numbered by smallest member.
    let mut dart_vertex = vec![usize::MAX; dart_count];
    let mut vertex_count = 0;
    for d in 0..dart_count {
        if dart_vertex[d] != usize::MAX {
            continue;
        }
        dart_vertex[d] = vertex_count;
        dart_vertex[rotation[d]] = vertex_count;
        dart_vertex[rotation[rotation[d]]] = vertex_count;
        vertex_count += 1;
    }

    GraphData {
        vertex_count,
        twin,
        rotation,
        dart_vertex,
    }
    .into_graph()
}

/// Look up a named generator, as exposed on the command line.
pub fn by_name(name: &str, flips: &[usize], level: Option<u32>) -> Result<RotationGraph> {
    match name {
        "theta" => theta(flips),
        "tetrahedron" => tetrahedron(flips),
        "cube" => cube(flips),
        "gamma-k" => {
            if !flips.is_empty() {
                return Err(Error::Domain(
                    "gamma-k does not take flips; its rotation system is fixed".to_string(),
                ));
            }
            gamma_quotient(level.ok_or_else(|| {
                Error::Domain("gamma-k requires a level (--level k)".to_string())
            })?)
        }
        other => Err(Error::Domain(format!(
            "unknown generator {other:?}; expected theta, tetrahedron, cube, or gamma-k"
        ))),
    }
}
