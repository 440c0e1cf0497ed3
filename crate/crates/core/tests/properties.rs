//! Property tests for the invariants of each module.

use std::collections::BTreeSet;

use num_rational::BigRational;
use proptest::prelude::*;

use corect::equivalence::{
    antichain_from_partition, build_matrix, matched_partitions, partition_from_antichain, verify_maxdiag_additivity,
    verify_valuation_additivity,
};
use corect::partitions::{partition_to_indexset, IndexSet, Partition};
use corect::plabic::{perfect_orientations, PlabicGraph};
use corect::polytope::{
    apply_map, extreme_points, f_vector, facets, integer_point, normalized_volume, vertices, RationalPolytopeV,
    UnimodularMap,
};
use corect::superpotential::{antichain_to_dyck, dyck_to_antichain, enumerate_antichains, StaircasePoset};
use corect::valuation::{valuation_maxdiag, CoordinateSystem};

/// A partition inside the `n x n` square with `n` in `1..=max_n`.
fn partition_in_square(max_n: usize) -> impl Strategy<Value = (usize, Partition)> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(0..=n, n).prop_map(move |mut parts| {
            parts.sort_unstable_by(|a, b| b.cmp(a));
            (n, Partition::new(parts).expect("sorted parts"))
        })
    })
}

/// Integer points in a small box, at least `dim + 1` of them.
fn point_cloud(dim: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, dim), dim + 1..dim + 7)
}

/// A product of elementary integer row operations and a translation.
fn unimodular(dim: usize) -> impl Strategy<Value = UnimodularMap> {
    (prop::collection::vec((0..dim, 0..dim, -2i64..=2), 0..8), prop::collection::vec(-3i64..=3, dim), any::<bool>())
        .prop_map(move |(ops, shift, flip)| {
            let mut m: Vec<Vec<i64>> = (0..dim).map(|i| (0..dim).map(|j| i64::from(i == j)).collect()).collect();
            for (a, b, k) in ops {
                if a != b {
                    let source = m[b].clone();
                    m[a].iter_mut().zip(source).for_each(|(x, y)| *x += k * y);
                }
            }
            if flip {
                m[0].iter_mut().for_each(|x| *x = -*x);
            }
            UnimodularMap::new(m)
                .expect("elementary operations keep det 1")
                .with_translation(shift)
                .expect("sizes match")
        })
}

fn full_dimensional(dim: usize, points: &[Vec<i64>]) -> Option<RationalPolytopeV> {
    let p = RationalPolytopeV::from_integer_points(dim, points).ok()?;
    (p.affine_dim() == dim).then_some(p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transpose_and_complement_are_involutions((n, lambda) in partition_in_square(7)) {
        prop_assert_eq!(lambda.transpose().transpose(), lambda.clone());
        let c = lambda.complement(n).unwrap();
        prop_assert_eq!(c.complement(n).unwrap(), lambda.clone());
        prop_assert_eq!(lambda.transpose().complement(n).unwrap(), c.transpose());
        prop_assert_eq!(c.size() + lambda.size(), n * n);
    }

    #[test]
    fn subset_partition_round_trip((n, lambda) in partition_in_square(6)) {
        let set = partition_to_indexset(&lambda, n).unwrap();
        prop_assert_eq!(set.elements().len(), n);
        prop_assert_eq!(set.to_partition(), lambda.clone());
        prop_assert_eq!(partition_to_indexset(&lambda.transpose(), n).unwrap().to_partition(), lambda.transpose());
    }

    #[test]
    fn index_set_round_trip(n in 1usize..=6, seed in any::<u64>()) {
        let all = IndexSet::all(n);
        let set = &all[(seed % all.len() as u64) as usize];
        prop_assert_eq!(&partition_to_indexset(&set.to_partition(), n).unwrap(), set);
    }

    #[test]
    fn maxdiag_is_additive_over_hook_pieces((n, lambda) in partition_in_square(5)) {
        let check = verify_maxdiag_additivity(n, std::slice::from_ref(&lambda)).unwrap();
        prop_assert!(check.ok, "{:?}", check.witness);
    }

    #[test]
    fn valuation_is_additive_over_hook_pieces((n, lambda) in partition_in_square(5)) {
        let check = verify_valuation_additivity(n, std::slice::from_ref(&lambda)).unwrap();
        prop_assert!(check.ok, "{:?}", check.witness);
    }

    #[test]
    fn transpose_pairs_share_valuations((n, lambda) in partition_in_square(5)) {
        let coords = CoordinateSystem::new(n).unwrap();
        prop_assert_eq!(
            valuation_maxdiag(&coords, &lambda).unwrap(),
            valuation_maxdiag(&coords, &lambda.transpose()).unwrap()
        );
    }

    #[test]
    fn matched_partitions_round_trip_through_antichains(n in 1usize..=5, seed in any::<u64>()) {
        let matched = matched_partitions(n);
        let lambda = &matched[(seed % matched.len() as u64) as usize];
        let poset = StaircasePoset::new(n).unwrap();
        let a = antichain_from_partition(&poset, lambda).unwrap();
        prop_assert_eq!(&partition_from_antichain(&poset, &a).unwrap(), lambda);
        let coords = CoordinateSystem::new(n).unwrap();
        let image = build_matrix(n).unwrap().apply(&a.indicator(&poset));
        prop_assert_eq!(image, valuation_maxdiag(&coords, lambda).unwrap());
    }

    #[test]
    fn dyck_paths_round_trip(n in 1usize..=6, seed in any::<u64>()) {
        let poset = StaircasePoset::new(n).unwrap();
        let antichains = enumerate_antichains(&poset);
        let a = &antichains[(seed % antichains.len() as u64) as usize];
        let path = antichain_to_dyck(&poset, a);
        prop_assert!(path.is_valid());
        prop_assert_eq!(&dyck_to_antichain(&poset, &path).unwrap(), a);
    }

    #[test]
    fn perfect_orientation_is_unique(n in 1usize..=4) {
        let g = PlabicGraph::corect(n).unwrap();
        let sources = IndexSet::new((1..=n).collect(), n).unwrap();
        prop_assert_eq!(perfect_orientations(&g, &sources, 2).len(), 1);
    }

    #[test]
    fn volume_is_invariant_under_unimodular_maps(
        (points, map) in (2usize..=4).prop_flat_map(|d| (point_cloud(d), unimodular(d)))
    ) {
        let dim = map.matrix().len();
        let Some(p) = full_dimensional(dim, &points) else { return Ok(()) };
        let image = apply_map(&map, &p).unwrap();
        prop_assert_eq!(normalized_volume(&p).unwrap(), normalized_volume(&image).unwrap());
    }

    #[test]
    fn euler_relation_holds(points in (2usize..=4).prop_flat_map(point_cloud)) {
        let dim = points[0].len();
        let Some(p) = full_dimensional(dim, &points) else { return Ok(()) };
        let f = f_vector(&p).unwrap();
        prop_assert_eq!(f.len(), dim);
        let alternating: i64 = f.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
        let expected = if dim % 2 == 0 { 0 } else { 2 };
        prop_assert_eq!(alternating, expected);
    }

    #[test]
    fn vertices_of_facets_round_trip(points in (2usize..=4).prop_flat_map(point_cloud)) {
        let dim = points[0].len();
        let Some(p) = full_dimensional(dim, &points) else { return Ok(()) };
        let h = facets(&p).unwrap();
        prop_assert_eq!(vertices(&h).unwrap(), extreme_points(&p).unwrap());
        for point in p.points() {
            prop_assert!(h.contains(point));
        }
    }

    #[test]
    fn facets_are_irredundant(points in (2usize..=4).prop_flat_map(point_cloud)) {
        let dim = points[0].len();
        let Some(p) = full_dimensional(dim, &points) else { return Ok(()) };
        let h = facets(&p).unwrap();
        let verts = extreme_points(&p).unwrap();
        let zero = BigRational::from_integer(0.into());
        let tight: Vec<BTreeSet<usize>> = h
            .rows()
            .iter()
            .map(|row| (0..verts.points().len()).filter(|&v| row.evaluate(&verts.points()[v]) == zero).collect())
            .collect();
        for (a, ta) in tight.iter().enumerate() {
            prop_assert!(ta.len() >= dim);
            for (b, tb) in tight.iter().enumerate() {
                prop_assert!(a == b || !ta.is_subset(tb));
            }
        }
    }
}

#[test]
fn chain_polytope_volume_counts_linear_extensions() {
    use corect::superpotential::{gamma_vertices, linear_extension_count};
    for n in 1..=3 {
        let v = normalized_volume(&gamma_vertices(n).unwrap()).unwrap();
        let le = linear_extension_count(&StaircasePoset::new(n).unwrap()).unwrap();
        assert_eq!(v.to_string(), le.to_string());
    }
}

#[test]
fn integer_points_survive_the_rational_round_trip() {
    let p = integer_point(&[1, -2, 3]);
    let v = RationalPolytopeV::new(3, [p]).unwrap();
    assert_eq!(v.integer_points(), Some(vec![vec![1, -2, 3]]));
}
