use cxc_core::dimension::{solve_exponent, ExponentMode};
use cxc_core::gdms::{box_dimension, build_gdms, GdmsPoint, IntervalSystem};
use cxc_core::multigraph::WeightedDigraph;
use cxc_core::skewprod::{circle_distance, product_box_dimension, random_word, skew_distance, skew_map, SkewPoint};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn two_loops(d: u64, alpha: f64) -> IntervalSystem {
    let g = WeightedDigraph::from_triples(1, &[(0, 0, d), (0, 0, d)]).unwrap();
    build_gdms(&g, alpha, None).unwrap()
}

fn two_vertex(alpha: f64) -> IntervalSystem {
    let g = WeightedDigraph::from_triples(2, &[(0, 1, 2), (0, 1, 2), (1, 0, 2), (1, 1, 3), (1, 1, 3)]).unwrap();
    build_gdms(&g, alpha, None).unwrap()
}

fn any_point(sys: &IntervalSystem, rng: &mut ChaCha8Rng) -> GdmsPoint {
    let component = rng.gen_range(0..sys.graph().vertex_count());
    let base = sys.base_interval(component);
    GdmsPoint { component, coordinate: rng.gen_range(base.left..=base.right) }
}

fn repellor_point(sys: &IntervalSystem, rng: &mut ChaCha8Rng) -> GdmsPoint {
    let start = rng.gen_range(0..sys.graph().vertex_count());
    let word = random_word(sys, start, 40, rng);
    let end = sys.base_interval(word.end(sys.graph()));
    GdmsPoint { component: start, coordinate: sys.cylinder_point(&word, end.mid()) }
}

#[test]
fn triangle_inequality() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for sys in [two_loops(2, 0.5), two_vertex(0.5), two_vertex(0.3)] {
        for snowflaked in [false, true] {
            for _ in 0..10_000 {
                let p = any_point(&sys, &mut rng);
                let q = any_point(&sys, &mut rng);
                let r = any_point(&sys, &mut rng);
                let direct = sys.distance(&p, &r, snowflaked);
                let via = sys.distance(&p, &q, snowflaked) + sys.distance(&q, &r, snowflaked);
                assert!(direct <= via + 1e-12, "{p:?} {q:?} {r:?}: {direct} > {via}");
            }
        }
    }
}

#[test]
fn g_is_a_similarity_on_each_branch() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let sys = two_vertex(0.4);
    for (e, edge) in sys.graph().edges().iter().enumerate() {
        let j = sys.sub_interval(e);
        let degree = edge.degree as f64;
        for _ in 0..2_000 {
            let p = GdmsPoint { component: edge.src, coordinate: rng.gen_range(j.left..=j.right) };
            let q = GdmsPoint { component: edge.src, coordinate: rng.gen_range(j.left..=j.right) };
            let (gp, gq) = (sys.map_g(&p).unwrap(), sys.map_g(&q).unwrap());
            let plain = sys.distance(&p, &q, false);
            let scaled = sys.distance(&gp, &gq, false);
            assert!((scaled - sys.expansion(e) * plain).abs() <= 1e-12 * scaled.max(1.0));
            let snow = sys.distance(&p, &q, true);
            assert!((sys.distance(&gp, &gq, true) - degree * snow).abs() <= 1e-12 * scaled.max(1.0));
        }
    }
}

#[test]
fn box_dimension_matches_hausdorff_exponent() {
    for sys in [two_loops(2, 0.5), two_loops(3, 0.6), two_vertex(0.5)] {
        let delta = solve_exponent(sys.graph(), ExponentMode::Hausdorff { alpha: sys.alpha() }, 1e-12).unwrap().exponent;
        let est = box_dimension(&sys, false, 2..=10).unwrap().estimate;
        assert!((est - delta).abs() < 0.05, "plain {est} vs {delta}");
        let s = solve_exponent(sys.graph(), ExponentMode::Conformal, 1e-12).unwrap().exponent;
        let snow = box_dimension(&sys, true, 2..=10).unwrap().estimate;
        assert!((snow - s).abs() < 0.05, "snowflaked {snow} vs {s}");
    }
}

#[test]
fn snowflaked_dimension_ignores_alpha() {
    let a = box_dimension(&two_loops(2, 0.25), true, 2..=10).unwrap().estimate;
    let b = box_dimension(&two_loops(2, 0.5), true, 2..=10).unwrap().estimate;
    assert!((a - b).abs() < 0.05, "{a} vs {b}");
    let a = box_dimension(&two_vertex(0.25), true, 2..=10).unwrap().estimate;
    let b = box_dimension(&two_vertex(0.5), true, 2..=10).unwrap().estimate;
    assert!((a - b).abs() < 0.05, "{a} vs {b}");
}

#[test]
fn skew_map_is_a_local_homothety() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for sys in [two_loops(2, 0.5), two_vertex(0.5)] {
        for (e, edge) in sys.graph().edges().iter().enumerate() {
            let j = sys.sub_interval(e);
            let d = edge.degree as f64;
            for _ in 0..10_000 {
                let base = |rng: &mut ChaCha8Rng| GdmsPoint { component: edge.src, coordinate: rng.gen_range(j.left..=j.right) };
                let t = rng.gen::<f64>();
                let p = SkewPoint::new(base(&mut rng), t);
                let q = SkewPoint::new(base(&mut rng), t + rng.gen_range(-0.4999..0.4999) / d);
                assert!(circle_distance(p.angle, q.angle) < 0.5 / d);
                let before = skew_distance(&sys, &p, &q);
                let after = skew_distance(&sys, &skew_map(&sys, &p).unwrap(), &skew_map(&sys, &q).unwrap());
                assert!((after - d * before).abs() <= 1e-12 * after.max(1.0), "edge {e}: {after} vs {}", d * before);
            }
        }
    }
}

#[test]
fn far_angles_can_shrink() {
    let sys = two_loops(2, 0.5);
    let j = sys.sub_interval(0);
    let base = GdmsPoint { component: 0, coordinate: j.mid() };
    let p = SkewPoint::new(base, 0.0);
    let q = SkewPoint::new(base, 0.5);
    let after = skew_distance(&sys, &skew_map(&sys, &p).unwrap(), &skew_map(&sys, &q).unwrap());
    assert!(after < 2.0 * skew_distance(&sys, &p, &q));
}

#[test]
fn product_dimension_is_one_plus_s() {
    let sys = two_loops(2, 0.5);
    let s = solve_exponent(sys.graph(), ExponentMode::Conformal, 1e-12).unwrap().exponent;
    let est = product_box_dimension(&sys, 2..=10).unwrap().estimate;
    assert!((est - (1.0 + s)).abs() < 0.1, "{est} vs {}", 1.0 + s);
}

proptest! {
    #[test]
    fn repellor_points_stay_on_the_repellor(seed in any::<u64>(), steps in 1usize..8) {
        let sys = two_vertex(0.5);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut p = repellor_point(&sys, &mut rng);
        for _ in 0..steps {
            p = sys.map_g(&p).unwrap();
        }
        let base = sys.base_interval(p.component);
        prop_assert!(base.contains(p.coordinate));
    }

    #[test]
    fn inverse_branch_undoes_g(seed in any::<u64>()) {
        let sys = two_vertex(0.5);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = rng.gen_range(0..sys.graph().edges().len());
        let j = sys.base_interval(sys.graph().edge(e).dst);
        let x = rng.gen_range(j.left..=j.right);
        let back = sys.map_on_edge(e, sys.inverse_branch(e, x));
        prop_assert!((back.coordinate - x).abs() < 1e-12);
    }
}
