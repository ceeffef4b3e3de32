//! Combinatorial laws over randomly generated rotation systems: the
//! left-hand-turn paths partition the darts, the Euler characteristic gives
//! an integral non-negative genus, both survive global reversal, and every
//! automorphism permutes the cusps respecting their lengths.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trisurf::graph::{random_connected, RotationGraph};
use trisurf::symmetry::{image_path, symmetry_group, Sign};
use trisurf::generators;

fn check_path_partition(g: &RotationGraph) {
    let paths = g.lht_paths();
    let mut seen = vec![false; g.dart_count()];
    for p in &paths {
        let darts = p.darts();
        for (k, &d) in darts.iter().enumerate() {
            assert!(!seen[d], "dart {d} on two paths");
            seen[d] = true;
            let next = darts[(k + 1) % darts.len()];
            assert_eq!(g.successor(d), next, "path breaks the turn relation");
        }
        assert_eq!(p.min_dart(), *darts.iter().min().unwrap());
    }
    assert!(seen.iter().all(|&s| s), "some dart is on no path");
}

fn check_genus(g: &RotationGraph) {
    let chi = g.euler_characteristic();
    assert!(chi <= 2, "Euler characteristic {chi} exceeds a sphere's");
    assert_eq!((2 - chi).rem_euclid(2), 0, "odd Euler defect");
    assert_eq!(g.genus() as i64, (2 - chi) / 2);
}

fn check_reversal(g: &RotationGraph) {
    let r = g.global_reverse();
    assert_eq!(r.genus(), g.genus(), "mirror surface changed genus");
    let mut a = g.path_lengths();
    let mut b = r.path_lengths();
    a.sort_unstable();
    b.sort_unstable();
    assert_eq!(a, b, "mirror surface changed cusp lengths");
}

fn check_automorphisms_respect_cusps(g: &RotationGraph) {
    let grp = symmetry_group(g).expect("closure or inverses failed");
    let paths = g.lht_paths();
    let index = g.path_index_by_dart(&paths);
    for m in &grp.elements {
        for (i, p) in paths.iter().enumerate() {
            let j = image_path(g, m, &paths, &index, i);
            assert_eq!(paths[j].len(), p.len(), "cusp length changed under a symmetry");
            // The whole dart set must land in path j, not just the
            // representative.
            for &d in p.darts() {
                let image = match m.sign {
                    Sign::Preserving => m.apply(d),
                    Sign::Reversing => g.rotation(m.apply(d)),
                };
                assert_eq!(index[image], j, "path image is split");
            }
        }
    }
}

#[test]
fn five_hundred_random_graphs_obey_the_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_cafe);
    for case in 0..500 {
        let nv = 2 * rng.random_range(1..=20usize);
        let g = random_connected(nv, &mut rng)
            .unwrap_or_else(|e| panic!("case {case}: generation failed: {e}"));
        assert!(g.data().validate().is_valid(), "case {case}");
        check_path_partition(&g);
        check_genus(&g);
        check_reversal(&g);
        check_automorphisms_respect_cusps(&g);
    }
}

#[test]
fn golden_graphs_obey_the_same_laws() {
    let graphs = vec![
        generators::theta(&[]).unwrap(),
        generators::theta(&[1]).unwrap(),
        generators::tetrahedron(&[]).unwrap(),
        generators::tetrahedron(&[2, 3]).unwrap(),
        generators::cube(&[0, 7]).unwrap(),
        generators::gamma_quotient(5).unwrap(),
    ];
    for g in &graphs {
        check_path_partition(g);
        check_genus(g);
        check_reversal(g);
        check_automorphisms_respect_cusps(g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Same laws, driven by arbitrary seeds so failures shrink to a seed.
    #[test]
    fn random_rotation_systems_partition_and_close(seed in any::<u64>(), half in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_connected(2 * half, &mut rng).unwrap();
        check_path_partition(&g);
        check_genus(&g);
        check_reversal(&g);
    }

    // Double reversal is the identity on the wire format.
    #[test]
    fn reversal_is_an_involution(seed in any::<u64>(), half in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_connected(2 * half, &mut rng).unwrap();
        let back = g.global_reverse().global_reverse();
        prop_assert_eq!(back.data(), g.data());
    }
}
