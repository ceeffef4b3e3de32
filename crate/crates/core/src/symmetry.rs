//! Symmetries of a rotation system: orientation-preserving automorphisms and
//! orientation-reversing anti-automorphisms, found by flag extension.
//!
//! A symmetry is determined by the image of a single flag (vertex plus
//! emanating dart): the twin law and the sign-twisted rotation law propagate
//! that choice over the whole connected graph, and propagation either
//! completes consistently or proves no such symmetry exists. Enumerating all
//! images of one fixed flag therefore enumerates the full group.

use std::collections::{HashSet, VecDeque};

use crate::graph::{Dart, LhtPath, RotationGraph};
use crate::{Error, Result};

/// A vertex together with a dart emanating from it. Since a dart determines
/// its vertex, flags are in bijection with darts; the pair form is kept for
/// readability at call sites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Flag {
    pub vertex: usize,
    pub dart: Dart,
}

impl Flag {
    pub fn of(g: &RotationGraph, dart: Dart) -> Flag {
        Flag {
            vertex: g.vertex_of(dart),
            dart,
        }
    }
}

/// Whether a map respects the rotations or reverses them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Preserving,
    Reversing,
}

impl Sign {
    fn compose(self, other: Sign) -> Sign {
        if self == other {
            Sign::Preserving
        } else {
            Sign::Reversing
        }
    }
}

/// A graph symmetry as an explicit dart bijection.
///
/// Invariants (guaranteed by construction in [`extend_map`]):
/// `image(twin(d)) = twin(image(d))`, and `image(rotation(d))` equals
/// `rotation(image(d))` for preserving maps, `rotation^{-1}(image(d))` for
/// reversing maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMap {
    pub dart_image: Vec<Dart>,
    pub sign: Sign,
}

impl GraphMap {
    pub fn identity(dart_count: usize) -> GraphMap {
        GraphMap {
            dart_image: (0..dart_count).collect(),
            sign: Sign::Preserving,
        }
    }

    pub fn apply(&self, d: Dart) -> Dart {
        self.dart_image[d]
    }

    /// `self` after `other`: (self ∘ other)(d) = self(other(d)).
    pub fn compose(&self, other: &GraphMap) -> GraphMap {
        GraphMap {
            dart_image: other.dart_image.iter().map(|&d| self.dart_image[d]).collect(),
            sign: self.sign.compose(other.sign),
        }
    }

    pub fn inverse(&self) -> GraphMap {
        let mut inv = vec![0; self.dart_image.len()];
        for (d, &e) in self.dart_image.iter().enumerate() {
            inv[e] = d;
        }
        GraphMap {
            dart_image: inv,
            sign: self.sign,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.sign == Sign::Preserving && self.dart_image.iter().enumerate().all(|(d, &e)| d == e)
    }

    /// Order of the map under composition.
    pub fn order(&self) -> usize {
        let mut power = self.clone();
        let mut n = 1;
        while !power.is_identity() {
            power = power.compose(self);
            n += 1;
            debug_assert!(n <= 2 * self.dart_image.len());
        }
        n
    }
}

/// Try to extend `source -> target` with the given sign to a full symmetry.
///
/// Breadth-first propagation: if `d` maps to `e`, then `twin(d)` must map to
/// `twin(e)` and `rotation(d)` to `rotation(e)` (preserving) or
/// `rotation^{-1}(e)` (reversing). Connectivity makes the extension unique;
/// any conflict means no symmetry takes `source` to `target` with that sign.
pub fn extend_map(
    g: &RotationGraph,
    source: Flag,
    target: Flag,
    sign: Sign,
) -> Option<GraphMap> {
    let n = g.dart_count();
    debug_assert_eq!(g.vertex_of(source.dart), source.vertex);
    debug_assert_eq!(g.vertex_of(target.dart), target.vertex);
    let mut image = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    image[source.dart] = target.dart;
    queue.push_back(source.dart);
    while let Some(d) = queue.pop_front() {
        let e = image[d];
        let rot_image = match sign {
            Sign::Preserving => g.rotation(e),
            Sign::Reversing => g.rotation_inv(e),
        };
        for (src, dst) in [(g.twin(d), g.twin(e)), (g.rotation(d), rot_image)] {
            if image[src] == usize::MAX {
                image[src] = dst;
                queue.push_back(src);
            } else if image[src] != dst {
                return None;
            }
        }
    }
    // Connectivity guarantees totality; reject non-bijective images.
    let mut seen = vec![false; n];
    for &e in &image {
        if e == usize::MAX || seen[e] {
            return None;
        }
        seen[e] = true;
    }
    Some(GraphMap {
        dart_image: image,
        sign,
    })
}

/// The full symmetry group of a rotation system.
#[derive(Debug, Clone)]
pub struct SymmetryGroup {
    pub elements: Vec<GraphMap>,
}

impl SymmetryGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn preserving_order(&self) -> usize {
        self.elements
            .iter()
            .filter(|m| m.sign == Sign::Preserving)
            .count()
    }

    pub fn reversing_maps(&self) -> impl Iterator<Item = &GraphMap> {
        self.elements.iter().filter(|m| m.sign == Sign::Reversing)
    }
}

/// Enumerate every symmetry by fixing the flag of dart 0 and trying all
/// `2 * dart_count` images. Closure and inverses are verified; a failure
/// there indicates a bug, not bad input.
pub fn symmetry_group(g: &RotationGraph) -> Result<SymmetryGroup> {
    let source = Flag::of(g, 0);
    let mut elements = Vec::new();
    for target in 0..g.dart_count() {
        for sign in [Sign::Preserving, Sign::Reversing] {
            if let Some(map) = extend_map(g, source, Flag::of(g, target), sign) {
                elements.push(map);
            }
        }
    }

    let index: HashSet<(Vec<Dart>, Sign)> = elements
        .iter()
        .map(|m| (m.dart_image.clone(), m.sign))
        .collect();
    if index.len() != elements.len() {
        return Err(Error::Numeric(
            "symmetry enumeration produced duplicate maps".to_string(),
        ));
    }
    for a in &elements {
        let inv = a.inverse();
        if !index.contains(&(inv.dart_image.clone(), inv.sign)) {
            return Err(Error::Numeric(
                "symmetry group is not closed under inverse".to_string(),
            ));
        }
        for b in &elements {
            let c = a.compose(b);
            if !index.contains(&(c.dart_image.clone(), c.sign)) {
                return Err(Error::Numeric(
                    "symmetry group is not closed under composition".to_string(),
                ));
            }
        }
    }
    Ok(SymmetryGroup { elements })
}

/// Orbits of the symmetry group acting on triangle corners.
///
/// Corners are indexed by darts: the corner of dart `d` lies at the start of
/// the triangle side crossed by `d`, between that side and the side of
/// `rotation^{-1}(d)`. A preserving map sends the corner of `d` to the corner
/// of `image(d)`; a reversing map swaps the two sides bounding the corner,
/// which shifts the index to `rotation(image(d))`. Blocks are sorted
/// ascending and ordered by smallest member.
pub fn corner_orbits(g: &RotationGraph, grp: &SymmetryGroup) -> Vec<Vec<Dart>> {
    let n = g.dart_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        let mut root = x;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = x;
        while parent[cur] != root {
            let next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        root
    }
    for map in &grp.elements {
        for d in 0..n {
            let image_corner = match map.sign {
                Sign::Preserving => map.apply(d),
                Sign::Reversing => g.rotation(map.apply(d)),
            };
            let (a, b) = (find(&mut parent, d), find(&mut parent, image_corner));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut blocks: Vec<Vec<Dart>> = Vec::new();
    let mut block_of = vec![usize::MAX; n];
    for d in 0..n {
        let root = find(&mut parent, d);
        if block_of[root] == usize::MAX {
            block_of[root] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[block_of[root]].push(d);
    }
    blocks.sort_by_key(|b| b[0]);
    blocks
}

/// Index of the left-hand-turn path that `map` carries path `i` onto.
///
/// A preserving map commutes with the turn successor, so path darts map to
/// path darts directly. A reversing map conjugates the successor to its
/// inverse; composing with one rotation step turns the image back into a
/// left-hand-turn path, traversed backwards.
pub fn image_path(
    g: &RotationGraph,
    map: &GraphMap,
    paths: &[LhtPath],
    index_by_dart: &[usize],
    i: usize,
) -> usize {
    let d = paths[i].min_dart();
    let image = match map.sign {
        Sign::Preserving => map.apply(d),
        Sign::Reversing => g.rotation(map.apply(d)),
    };
    index_by_dart[image]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn identity_extension() {
        let g = generators::theta(&[]).unwrap();
        let flag = Flag::of(&g, 0);
        let map = extend_map(&g, flag, flag, Sign::Preserving).unwrap();
        assert!(map.is_identity());
    }

    #[test]
    fn theta_flipped_preserving_order_six() {
        let g = generators::theta(&[1]).unwrap();
        let grp = symmetry_group(&g).unwrap();
        assert_eq!(grp.preserving_order(), 6);
        // The preserving subgroup contains an element of order 6.
        assert!(grp
            .elements
            .iter()
            .any(|m| m.sign == Sign::Preserving && m.order() == 6));
    }

    #[test]
    fn theta_flipped_single_corner_orbit() {
        let g = generators::theta(&[1]).unwrap();
        let grp = symmetry_group(&g).unwrap();
        let orbits = corner_orbits(&g, &grp);
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].len(), 6);
    }

    #[test]
    fn tetrahedron_rotation_group() {
        let g = generators::tetrahedron(&[]).unwrap();
        let grp = symmetry_group(&g).unwrap();
        assert_eq!(grp.preserving_order(), 12);
        assert_eq!(grp.order(), 24);
        // Free action: every source flag admits the same number of
        // preserving extensions.
        for source in 0..g.dart_count() {
            let count = (0..g.dart_count())
                .filter(|&t| {
                    extend_map(
                        &g,
                        Flag::of(&g, source),
                        Flag::of(&g, t),
                        Sign::Preserving,
                    )
                    .is_some()
                })
                .count();
            assert_eq!(count, 12);
        }
    }

    #[test]
    fn two_flip_tetrahedron_reversing_involutions() {
        let g = generators::tetrahedron(&[2, 3]).unwrap();
        let grp = symmetry_group(&g).unwrap();
        assert_eq!(grp.order(), 8);
        let involutions = grp
            .reversing_maps()
            .filter(|m| m.order() == 2)
            .count();
        assert!(involutions >= 3, "got {involutions} reversing involutions");
    }

    #[test]
    fn two_flip_tetrahedron_corner_orbits() {
        let g = generators::tetrahedron(&[2, 3]).unwrap();
        let grp = symmetry_group(&g).unwrap();
        let orbits = corner_orbits(&g, &grp);
        let mut sizes: Vec<usize> = orbits.iter().map(|o| o.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![4, 8]);
        // The size-4 orbit consists of the corners along the short cusp.
        let paths = g.lht_paths();
        let short: Vec<Dart> = {
            let mut v = paths[0].darts().to_vec();
            assert_eq!(paths[0].len(), 4);
            v.sort_unstable();
            v
        };
        let four = orbits.iter().find(|o| o.len() == 4).unwrap();
        assert_eq!(*four, short);
    }

    #[test]
    fn symmetries_preserve_path_multiset() {
        for g in [
            generators::theta(&[0]).unwrap(),
            generators::tetrahedron(&[1]).unwrap(),
            generators::cube(&[0, 7]).unwrap(),
        ] {
            let paths = g.lht_paths();
            let index = g.path_index_by_dart(&paths);
            let grp = symmetry_group(&g).unwrap();
            for map in &grp.elements {
                // Image of each path must be a path of the same length.
                for p in &paths {
                    let d0 = p.darts()[0];
                    let image_path = match map.sign {
                        Sign::Preserving => index[map.apply(d0)],
                        // Reversing maps send LHT paths to backwards paths;
                        // the forward path through the image of twin(d).
                        Sign::Reversing => index[g.twin(map.apply(d0))],
                    };
                    assert_eq!(paths[image_path].len(), p.len());
                }
            }
        }
    }
}
