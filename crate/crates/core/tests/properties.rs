use hyperspace::fixtures;
use hyperspace::homotopy::{path_to_canonical, vietoris_path};
use hyperspace::metric::{directed_hausdorff, dist_point_to_set, hausdorff};
use hyperspace::oracle::oracle_hausdorff;
use hyperspace::random::SetSampler;
use hyperspace::rational::{int, q};
use hyperspace::subsets::{canonical_element, component_count, direction_set, union};
use hyperspace::vietoris::{ball, member_lower, member_upper, OpenRegion};
use hyperspace::{parse_set, ClosedSubset, ExtendedDistance, RayGraph};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph(i: usize) -> RayGraph {
    let all = fixtures::all();
    all[i % all.len()].1.clone()
}

fn draw(g: &RayGraph, seed: u64, count: usize, sampler: &SetSampler) -> Vec<ClosedSubset> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| sampler.set(g, &mut rng)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn metric_axioms(gi in 0usize..8, seed in any::<u64>()) {
        let g = graph(gi);
        let s = draw(&g, seed, 3, &SetSampler::default());
        let (a, b, c) = (&s[0], &s[1], &s[2]);
        prop_assert_eq!(hausdorff(&g, a, a), ExtendedDistance::ZERO);
        prop_assert_eq!(hausdorff(&g, a, b), hausdorff(&g, b, a));
        prop_assert!(hausdorff(&g, a, c) <= hausdorff(&g, a, b) + hausdorff(&g, b, c));
        prop_assert_eq!(hausdorff(&g, a, b).is_zero(), a == b);
    }

    #[test]
    fn finite_iff_same_directions(gi in 0usize..8, seed in any::<u64>()) {
        let g = graph(gi);
        let s = draw(&g, seed, 2, &SetSampler::default());
        prop_assert_eq!(
            hausdorff(&g, &s[0], &s[1]).is_infinite(),
            direction_set(&g, &s[0]) != direction_set(&g, &s[1])
        );
    }

    #[test]
    fn directed_zero_iff_subset(gi in 0usize..8, seed in any::<u64>()) {
        let g = graph(gi);
        let s = draw(&g, seed, 2, &SetSampler::default());
        let ab = union(&g, &s[0], &s[1]);
        prop_assert!(directed_hausdorff(&g, &s[0], &ab).is_zero());
        prop_assert_eq!(directed_hausdorff(&g, &s[0], &s[1]).is_zero(), s[0].is_subset(&s[1]));
    }

    #[test]
    fn union_laws(gi in 0usize..8, seed in any::<u64>()) {
        let g = graph(gi);
        let s = draw(&g, seed, 2, &SetSampler::default());
        let (a, b) = (&s[0], &s[1]);
        let ab = union(&g, a, b);
        prop_assert_eq!(&ab, &union(&g, b, a));
        prop_assert_eq!(&union(&g, a, a), a);
        prop_assert!(a.is_subset(&ab) && b.is_subset(&ab));
        prop_assert_eq!(direction_set(&g, &ab), direction_set(&g, a).union(&direction_set(&g, b)));
        prop_assert!(component_count(&g, &ab) <= component_count(&g, a) + component_count(&g, b));
    }

    #[test]
    fn literal_round_trip(gi in 0usize..8, seed in any::<u64>()) {
        let g = graph(gi);
        let a = &draw(&g, seed, 1, &SetSampler::default())[0];
        prop_assert_eq!(&parse_set(&a.format(&g), &g).unwrap(), a);
    }

    #[test]
    fn point_distance_zero_iff_member(gi in 0usize..8, seed in any::<u64>()) {
        let g = graph(gi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sampler = SetSampler::default();
        let a = sampler.set(&g, &mut rng);
        let p = sampler.point(&g, &mut rng);
        prop_assert_eq!(dist_point_to_set(&g, &p, &a).unwrap() == int(0), a.contains_point(&g, &p));
    }

    #[test]
    fn ball_membership(gi in 0usize..8, seed in any::<u64>(), r in 1i128..24) {
        let g = graph(gi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sampler = SetSampler::default();
        let centre = sampler.point(&g, &mut rng);
        let radius = q(r, 8);
        let region = ball(&g, centre, radius).unwrap();
        for _ in 0..20 {
            let x = sampler.point(&g, &mut rng);
            prop_assert_eq!(region.contains_point(&g, &x), g.point_distance(&centre, &x).unwrap() < radius);
        }
    }

    #[test]
    fn vietoris_monotonicity(gi in 0usize..8, seed in any::<u64>(), r in 1i128..16) {
        let g = graph(gi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sampler = SetSampler::default();
        let a = sampler.set(&g, &mut rng);
        let b = union(&g, &a, &sampler.set(&g, &mut rng));
        let region = OpenRegion::union(&[
            ball(&g, sampler.point(&g, &mut rng), q(r, 4)).unwrap(),
            ball(&g, sampler.point(&g, &mut rng), q(r, 4)).unwrap(),
        ]);
        if member_upper(&g, &b, &region) {
            prop_assert!(member_upper(&g, &a, &region));
        }
        if member_lower(&g, &a, &region) {
            prop_assert!(member_lower(&g, &b, &region));
        }
    }

    #[test]
    fn gamma_grows(gi in 0usize..8, seed in any::<u64>(), s in 0i128..=64, t in 0i128..=64) {
        let g = graph(gi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = SetSampler::default().set_in_cn(&g, 3, &mut rng);
        let path = vietoris_path(&g, &a, 3).unwrap();
        let last = path.stage_count() - 1;
        let (s, t) = (q(s.min(t), 64), q(s.max(t), 64));
        let gs = path.eval_stage(last, s).unwrap();
        let gt = path.eval_stage(last, t).unwrap();
        prop_assert!(gs.is_subset(&gt));
        prop_assert_eq!(path.end(), ClosedSubset::whole(&g));
    }

    #[test]
    fn canonical_path_endpoints(gi in 0usize..8, seed in any::<u64>()) {
        let g = graph(gi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = SetSampler::default().set_in_cn(&g, 3, &mut rng);
        let path = path_to_canonical(&g, &a, 3).unwrap();
        prop_assert_eq!(&path.start(), &a);
        prop_assert_eq!(path.end(), canonical_element(&g, &direction_set(&g, &a)).unwrap());
    }

    #[test]
    fn oracle_tracks_metric(gi in 0usize..8, seed in any::<u64>()) {
        let g = graph(gi);
        let s = draw(&g, seed, 2, &SetSampler::default());
        let h = q(1, 16);
        let exact = hausdorff(&g, &s[0], &s[1]);
        let approx = oracle_hausdorff(&g, &s[0], &s[1], h, int(4));
        match (exact, approx) {
            (ExtendedDistance::Finite(x), ExtendedDistance::Finite(y)) => prop_assert!((x - y) <= h && (y - x) <= h),
            (x, y) => prop_assert_eq!(x, y),
        }
    }
}
