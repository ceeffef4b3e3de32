//! Rotation systems on 3-regular graphs.
//!
//! A graph is stored as a set of darts (edge ends). Each edge contributes two
//! darts exchanged by the fixed-point-free involution `twin`; each vertex owns
//! exactly three darts, cyclically ordered by the permutation `rotation`.
//! `rotation[d]` is the next dart counterclockwise around the vertex of `d`,
//! where counterclockwise refers to the orientation of the surface the
//! rotation system spans. Loops and multiple edges are allowed.
//!
//! Left-hand-turn tracing follows `succ(d) = rotation[twin[d]]`: cross the
//! edge of `d`, then take the next edge counterclockwise at the far vertex.
//! The orbits of `succ` partition the darts; they are the face boundaries of
//! the spanned surface and, after pasting an ideal triangle per vertex, the
//! cusps of the punctured surface.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Index of a dart. Darts are dense and 0-based; dart `d` belongs to vertex
/// `dart_vertex[d]`.
pub type Dart = usize;

/// Raw rotation-system arrays, exactly the JSON wire format.
///
/// `twin`, `rotation`, and `dart_vertex` are all indexed by dart. Validation
/// is separate so that malformed input can be reported field by field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphData {
    pub vertex_count: usize,
    pub twin: Vec<Dart>,
    pub rotation: Vec<Dart>,
    pub dart_vertex: Vec<usize>,
}

/// Outcome of validating [`GraphData`]. Empty `violations` means the data is
/// a connected 3-regular rotation system.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl GraphData {
    /// Check every structural rule and report all failures at once.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.vertex_count;
        let dart_count = 3 * n;

        if n == 0 || n % 2 != 0 {
            violations.push(format!(
                "vertex_count must be positive and even for a 3-regular graph, got {n}"
            ));
        }
        for (name, len) in [
            ("twin", self.twin.len()),
            ("rotation", self.rotation.len()),
            ("dart_vertex", self.dart_vertex.len()),
        ] {
            if len != dart_count {
                violations.push(format!(
                    "{name} must list all {dart_count} darts, got {len} entries"
                ));
            }
        }
        if !violations.is_empty() {
            // Index-based checks below assume the arrays have the right size.
            return ValidationReport { violations };
        }

        for (d, &v) in self.dart_vertex.iter().enumerate() {
            if v >= n {
                violations.push(format!("dart_vertex[{d}] = {v} is not a vertex id"));
            }
        }
        let mut degree = vec![0usize; n];
        for &v in &self.dart_vertex {
            if v < n {
                degree[v] += 1;
            }
        }
        for (v, &deg) in degree.iter().enumerate() {
            if deg != 3 {
                violations.push(format!("vertex {v} has {deg} darts, expected 3"));
            }
        }

        for (d, &t) in self.twin.iter().enumerate() {
            if t >= dart_count {
                violations.push(format!("twin[{d}] = {t} is out of range"));
            } else if t == d {
                violations.push(format!("twin[{d}] is a fixed point; every edge needs two darts"));
            } else if self.twin[t] != d {
                violations.push(format!("twin is not an involution at dart {d}"));
            }
        }

        let rot_ok = self.check_rotation(&mut violations);

        // Connectivity under twin and rotation moves. Only meaningful once the
        // permutations are total; the genus formula assumes one surface.
        if rot_ok && violations.is_empty() && !self.is_connected() {
            violations.push("graph is not connected".to_string());
        }

        ValidationReport { violations }
    }

    fn check_rotation(&self, violations: &mut Vec<String>) -> bool {
        let dart_count = self.twin.len();
        let mut seen = vec![false; dart_count];
        let mut ok = true;
        for (d, &r) in self.rotation.iter().enumerate() {
            if r >= dart_count {
                violations.push(format!("rotation[{d}] = {r} is out of range"));
                ok = false;
            } else {
                if seen[r] {
                    violations.push(format!("rotation maps two darts to {r}"));
                    ok = false;
                }
                seen[r] = true;
            }
        }
        if !ok {
            return false;
        }
        let mut visited = vec![false; dart_count];
        for start in 0..dart_count {
            if visited[start] {
                continue;
            }
            let mut len = 0;
            let mut d = start;
            loop {
                visited[d] = true;
                if self.dart_vertex[d] != self.dart_vertex[start] {
                    violations.push(format!(
                        "rotation cycle of dart {start} leaves vertex {}",
                        self.dart_vertex[start]
                    ));
                    ok = false;
                }
                len += 1;
                d = self.rotation[d];
                if d == start || len > dart_count {
                    break;
                }
            }
            if len != 3 {
                violations.push(format!(
                    "rotation cycle of dart {start} has length {len}, expected 3"
                ));
                ok = false;
            }
        }
        ok
    }

    fn is_connected(&self) -> bool {
        let dart_count = self.twin.len();
        if dart_count == 0 {
            return false;
        }
        let mut visited = vec![false; dart_count];
        let mut stack = vec![0];
        visited[0] = true;
        let mut count = 1;
        while let Some(d) = stack.pop() {
            for next in [self.twin[d], self.rotation[d]] {
                if !visited[next] {
                    visited[next] = true;
                    count += 1;
                    stack.push(next);
                }
            }
        }
        count == dart_count
    }

    /// Validate and seal into a [`RotationGraph`].
    pub fn into_graph(self) -> Result<RotationGraph> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(Error::InvalidGraph(report.violations.join("; ")));
        }
        Ok(RotationGraph { data: self })
    }
}

/// A validated connected 3-regular rotation system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationGraph {
    data: GraphData,
}

impl RotationGraph {
    /// Build from raw arrays, validating them.
    pub fn new(
        vertex_count: usize,
        twin: Vec<Dart>,
        rotation: Vec<Dart>,
        dart_vertex: Vec<usize>,
    ) -> Result<Self> {
        GraphData {
            vertex_count,
            twin,
            rotation,
            dart_vertex,
        }
        .into_graph()
    }

    /// Parse the JSON wire format.
    pub fn from_json(text: &str) -> Result<Self> {
        let data: GraphData = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("graph json: {e}")))?;
        data.into_graph()
    }

    /// Serialize to the JSON wire format (stable field order, one line).
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.data).expect("graph serialization cannot fail")
    }

    pub fn data(&self) -> &GraphData {
        &self.data
    }

    pub fn vertex_count(&self) -> usize {
        self.data.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.dart_count() / 2
    }

    pub fn dart_count(&self) -> usize {
        self.data.twin.len()
    }

    #[inline]
    pub fn twin(&self, d: Dart) -> Dart {
        self.data.twin[d]
    }

    #[inline]
    pub fn rotation(&self, d: Dart) -> Dart {
        self.data.rotation[d]
    }

    /// Inverse of `rotation`; for 3-cycles this is `rotation` applied twice.
    #[inline]
    pub fn rotation_inv(&self, d: Dart) -> Dart {
        self.data.rotation[self.data.rotation[d]]
    }

    #[inline]
    pub fn vertex_of(&self, d: Dart) -> usize {
        self.data.dart_vertex[d]
    }

    /// The three darts of `v` in ascending id order.
    pub fn darts_at(&self, v: usize) -> [Dart; 3] {
        let mut out = [usize::MAX; 3];
        let mut k = 0;
        for (d, &dv) in self.data.dart_vertex.iter().enumerate() {
            if dv == v {
                out[k] = d;
                k += 1;
                if k == 3 {
                    break;
                }
            }
        }
        debug_assert_eq!(k, 3);
        out
    }

    /// Left-hand-turn successor: cross the edge, then turn counterclockwise
    /// once at the far vertex.
    #[inline]
    pub fn successor(&self, d: Dart) -> Dart {
        self.rotation(self.twin(d))
    }

    /// All left-hand-turn paths in canonical form: each path starts at its
    /// smallest dart, and paths are sorted by (length, smallest dart).
    pub fn lht_paths(&self) -> Vec<LhtPath> {
        let dart_count = self.dart_count();
        let mut seen = vec![false; dart_count];
        let mut paths = Vec::new();
        for start in 0..dart_count {
            if seen[start] {
                continue;
            }
            let mut darts = Vec::new();
            let mut d = start;
            loop {
                seen[d] = true;
                darts.push(d);
                d = self.successor(d);
                if d == start {
                    break;
                }
            }
            // `start` is the smallest unseen dart, so the orbit is already
            // rotated to its minimum.
            paths.push(LhtPath { darts });
        }
        paths.sort_by_key(|p| (p.len(), p.min_dart()));
        paths
    }

    /// Map each dart to the index of its path in `lht_paths()`.
    pub fn path_index_by_dart(&self, paths: &[LhtPath]) -> Vec<usize> {
        let mut index = vec![usize::MAX; self.dart_count()];
        for (i, p) in paths.iter().enumerate() {
            for &d in &p.darts {
                index[d] = i;
            }
        }
        index
    }

    /// Euler characteristic of the spanned closed surface,
    /// `N_lht - vertex_count / 2`.
    pub fn euler_characteristic(&self) -> i64 {
        let n_lht = self.lht_paths().len() as i64;
        n_lht - self.vertex_count() as i64 / 2
    }

    /// Genus of the spanned closed surface, `(2 - chi) / 2`.
    pub fn genus(&self) -> i64 {
        let chi = self.euler_characteristic();
        debug_assert!(chi % 2 == 0, "chi of a closed orientable surface is even");
        (2 - chi) / 2
    }

    /// Reverse the rotation at the given vertices (a "flip").
    pub fn flip_vertices(&self, vertices: &[usize]) -> Result<Self> {
        let mut data = self.data.clone();
        for &v in vertices {
            if v >= self.vertex_count() {
                return Err(Error::Domain(format!(
                    "flip vertex {v} out of range (vertex_count {})",
                    self.vertex_count()
                )));
            }
            for d in self.darts_at(v) {
                // Inverting a 3-cycle swaps the images: new rot = old rot^2.
                data.rotation[d] = self.rotation_inv(d);
            }
        }
        data.into_graph()
    }

    /// Reverse the rotation at every vertex. The spanned surface is the
    /// mirror image, so all face and genus data are preserved.
    pub fn global_reverse(&self) -> Self {
        let all: Vec<usize> = (0..self.vertex_count()).collect();
        self.flip_vertices(&all)
            .expect("reversing every rotation preserves validity")
    }

    /// Multiset of left-hand-turn path lengths, ascending.
    pub fn path_lengths(&self) -> Vec<usize> {
        self.lht_paths().iter().map(|p| p.len()).collect()
    }
}

/// One left-hand-turn path: a cyclic dart sequence stored from its smallest
/// dart. Its length equals the number of triangle corners along the cusp it
/// bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LhtPath {
    darts: Vec<Dart>,
}

impl LhtPath {
    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn min_dart(&self) -> Dart {
        self.darts[0]
    }

    pub fn contains(&self, d: Dart) -> bool {
        self.darts.contains(&d)
    }
}

/// Uniform random connected rotation system with `vertex_count` vertices.
///
/// The twin involution is a uniform perfect matching on the darts and each
/// vertex independently takes one of its two cyclic orders. Disconnected
/// samples are rejected and redrawn, so the distribution is uniform over
/// connected systems.
pub fn random_connected<R: rand::Rng>(vertex_count: usize, rng: &mut R) -> Result<RotationGraph> {
    if vertex_count == 0 || vertex_count % 2 != 0 {
        return Err(Error::Domain(format!(
            "vertex_count must be positive and even, got {vertex_count}"
        )));
    }
    let dart_count = 3 * vertex_count;
    let dart_vertex: Vec<usize> = (0..dart_count).map(|d| d / 3).collect();
    loop {
        let mut pool: Vec<Dart> = (0..dart_count).collect();
        let mut twin = vec![0; dart_count];
        while !pool.is_empty() {
            let a = pool.swap_remove(rng.random_range(0..pool.len()));
            let b = pool.swap_remove(rng.random_range(0..pool.len()));
            twin[a] = b;
            twin[b] = a;
        }
        let mut rotation = vec![0; dart_count];
        for v in 0..vertex_count {
            let base = 3 * v;
            if rng.random_bool(0.5) {
                rotation[base] = base + 1;
                rotation[base + 1] = base + 2;
                rotation[base + 2] = base;
            } else {
                rotation[base] = base + 2;
                rotation[base + 2] = base + 1;
                rotation[base + 1] = base;
            }
        }
        let data = GraphData {
            vertex_count,
            twin,
            rotation,
            dart_vertex: dart_vertex.clone(),
        };
        if data.validate().is_valid() {
            return data.into_graph();
        }
    }
}
