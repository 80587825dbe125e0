//! Acceptance gate: one PASS/FAIL line per criterion.

use std::process::ExitCode;

use cxc_core::dimension::{solve_exponent, ExponentMode};
use cxc_core::gdms::{box_dimension, build_gdms, GdmsPoint, IntervalSystem};
use cxc_core::ifs::{kneading_q, kneading_reference, IfsParam, KneadingSource};
use cxc_core::menger::{
    expanding_map, membership, segment_clear_of_folds, snowflake_distance, CubePoint, FoldMode, Membership, MengerParams,
    DEFAULT_BOUNDARY_TOL,
};
use cxc_core::multigraph::WeightedDigraph;
use cxc_core::pillowcase::map::t_matrices;
use cxc_core::pillowcase::tiling::skeleton_forward_invariant;
use cxc_core::pillowcase::{
    cone_points, differential_report, obstruction_report, orb_point, postcritical_set, subdivide, OrbPoint,
};
use cxc_core::rational::q;
use cxc_core::skewprod::{skew_dimension, skew_distance, skew_map, SkewPoint};
use cxc_core::verify::{
    build_covers, degree_report, visual_metric_check, GdmsAdapter, HalfIntervalAdapter, SystemAdapter, DEFAULT_SPREAD_BOUND,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Magnitude in `[lo, hi)` with a random sign; keeps differences well above
/// rounding noise.
fn signed(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let m = rng.gen_range(lo..hi);
    if rng.gen_bool(0.5) {
        m
    } else {
        -m
    }
}

fn two_loops(d: u64) -> WeightedDigraph {
    WeightedDigraph::from_triples(1, &[(0, 0, d), (0, 0, d)]).unwrap()
}

fn system(d: u64) -> IntervalSystem {
    build_gdms(&two_loops(d), 0.5, None).unwrap()
}

fn dimension_solver() -> Outcome {
    let s2 = solve_exponent(&two_loops(2), ExponentMode::Conformal, 1e-12).map_err(|e| e.to_string())?.exponent;
    let s4 = solve_exponent(&two_loops(4), ExponentMode::Conformal, 1e-12).map_err(|e| e.to_string())?.exponent;
    let k2 = skew_dimension(&system(2), 1e-12).map_err(|e| e.to_string())?.dimension;
    let k4 = skew_dimension(&system(4), 1e-12).map_err(|e| e.to_string())?.dimension;
    check(
        (s2 - 1.0).abs() <= 1e-9 && (s4 - 0.5).abs() <= 1e-9 && (k2 - 2.0).abs() <= 1e-9 && (k4 - 1.5).abs() <= 1e-9,
        format!("s = {s2:.12}, {s4:.12}; skew dimension = {k2:.12}, {k4:.12}"),
    )
}

fn delta_over_alpha() -> Outcome {
    let g = two_loops(2);
    let s = solve_exponent(&g, ExponentMode::Conformal, 1e-13).map_err(|e| e.to_string())?.exponent;
    let mut parts = Vec::new();
    let mut ok = true;
    for alpha in [0.25, 0.5] {
        let d = solve_exponent(&g, ExponentMode::Hausdorff { alpha }, 1e-13).map_err(|e| e.to_string())?.exponent;
        ok &= (d / alpha - s).abs() <= 1e-8;
        parts.push(format!("alpha {alpha}: delta/alpha = {:.12}", d / alpha));
    }
    check(ok, format!("s = {s:.12}; {}", parts.join(", ")))
}

fn singular_values() -> Outcome {
    let [t1, t2, t3] = t_matrices();
    let derived = t2 == cxc_core::pillowcase::Mat2::new(q(3, 2), q(-1, 1), q(1, 1), q(0, 1));
    let expect = [(1.0, 2.0), (0.5, 2.0), (0.5, 1.0)];
    let got = [t1.singular_values(), t2.singular_values(), t3.singular_values()];
    let ok = got.iter().zip(expect).all(|(g, e)| (g.0 - e.0).abs() <= 1e-12 && (g.1 - e.1).abs() <= 1e-12);
    check(derived && ok, format!("T_2 re-derived = {derived}; singular values {got:?}"))
}

fn expansion_certificate() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for a in [q(1, 64), q(1, 16), q(1, 8)] {
        let r = differential_report(a).map_err(|e| e.to_string())?;
        ok &= (r.min_sv - 1.0).abs() <= 1e-12 && r.q_disjointness && r.second_iterate_bound >= 2.0;
        parts.push(format!("a={a}: min_sv {} disjoint {} bound {}", r.min_sv, r.q_disjointness, r.second_iterate_bound));
    }
    check(ok, parts.join("; "))
}

fn postcritical_sets() -> Outcome {
    let p0 = postcritical_set(q(0, 1), 1000).map_err(|e| e.to_string())?;
    let mut cones: Vec<OrbPoint> = cone_points().to_vec();
    cones.sort();
    let p8 = postcritical_set(q(1, 8), 1000).map_err(|e| e.to_string())?;
    let mut six: Vec<OrbPoint> =
        [(0, 1, 0, 1), (1, 2, 0, 1), (0, 1, 1, 2), (7, 16, 1, 2), (1, 8, 0, 1), (1, 4, 0, 1)]
            .iter()
            .map(|&(a, b, c, d)| orb_point(q(a, b), q(c, d)))
            .collect();
    six.sort();
    check(p0 == cones && p8 == six, format!("|P_0| = {}, |P_1/8| = {}", p0.len(), p8.len()))
}

fn obstruction() -> Outcome {
    let r = obstruction_report(q(1, 64)).map_err(|e| e.to_string())?;
    let mut heights: Vec<_> = r.preimages.iter().map(|(h, d, _)| (*h, *d)).collect();
    heights.sort();
    let ok = heights == vec![(Some(q(1, 8)), 2), (Some(q(3, 8)), 2)]
        && r.thurston.matrix == vec![vec![q(1, 1)]]
        && (r.thurston.radius - 1.0).abs() <= 1e-12
        && r.obstructed;
    let shown: Vec<String> =
        heights.iter().map(|(h, d)| format!("height {} degree {d}", h.map_or("-".into(), |h| h.to_string()))).collect();
    check(ok, format!("{}; radius {}", shown.join(", "), r.thurston.radius))
}

fn tilings() -> Outcome {
    let t0 = subdivide(q(0, 1), 2).map_err(|e| e.to_string())?;
    let squares = t0.tiles.iter().all(|t| {
        if t.fragments.len() != 1 || t.fragments[0].len() != 4 {
            return false;
        }
        let p = &t.fragments[0];
        let xs: Vec<_> = p.iter().map(|v| v[0]).collect();
        let ys: Vec<_> = p.iter().map(|v| v[1]).collect();
        let w = *xs.iter().max().unwrap() - *xs.iter().min().unwrap();
        let h = *ys.iter().max().unwrap() - *ys.iter().min().unwrap();
        w == q(1, 8) && h == q(1, 8) && t.area == q(1, 64)
    });
    let t8 = subdivide(q(1, 8), 4).map_err(|e| e.to_string())?;
    // 6 * (1666 + 1) >= 10^4 sample points
    let inv = skeleton_forward_invariant(q(1, 8), 1666).map_err(|e| e.to_string())?;
    let inv0 = skeleton_forward_invariant(q(0, 1), 1666).map_err(|e| e.to_string())?;
    check(
        t0.tiles.len() == 32 && squares && t8.tiles.len() == 512 && inv && inv0,
        format!("a=0: {} tiles, congruent squares {squares}; a=1/8: {} tiles; skeleton invariant {inv}", t0.tiles.len(), t8.tiles.len()),
    )
}

fn kneading() -> Outcome {
    let param = IfsParam::real(0.5).map_err(|e| e.to_string())?;
    let k = kneading_q(&param, 16, 20, None).map_err(|e| e.to_string())?;
    let r = kneading_reference(KneadingSource::RealQuadratic(-2.0), 16).map_err(|e| e.to_string())?;
    let expect = format!("1{}", "0".repeat(15));
    check(k.to_string() == expect && r.to_string() == expect, format!("q: {k}, reference: {r}"))
}

/// Independent oracle: the point is out at the first level where more than
/// `n` coordinates have ternary digit 1.
fn digit_oracle(digits: &[Vec<u8>], n: usize, depth: usize) -> Membership {
    for level in 0..=depth {
        if digits.iter().filter(|d| d[level] == 1).count() > n {
            return Membership::Out { level };
        }
    }
    Membership::In
}

const DYADIC: u32 = 1 << 20;

fn menger() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let sponge = MengerParams::sponge();
    let depth = 5;
    let (mut agree, mut unknown, mut disagree) = (0, 0, 0);
    for _ in 0..10_000 {
        let digits: Vec<Vec<u8>> = (0..3).map(|_| (0..14).map(|_| rng.gen_range(0..3u8)).collect()).collect();
        let coords = digits
            .iter()
            .map(|d| {
                let tail = rng.gen_range(0.1..0.9) * 3f64.powi(-14);
                d.iter().rev().fold(0.0, |acc, &x| (acc + x as f64) / 3.0) + tail
            })
            .collect();
        let m = membership(&sponge, &CubePoint::new(coords).unwrap(), depth, DEFAULT_BOUNDARY_TOL).map_err(|e| e.to_string())?;
        match m {
            Membership::BoundaryUnknown { .. } => unknown += 1,
            m if m == digit_oracle(&digits, 1, depth) => agree += 1,
            _ => disagree += 1,
        }
    }

    let mut worst: f64 = 0.0;
    for factors in [vec![3, 3, 3], vec![3, 9, 3]] {
        let params = MengerParams::new(1, factors, FoldMode::Reflect).map_err(|e| e.to_string())?;
        let mut pairs = 0;
        while pairs < 10_000 {
            // dyadic coordinates keep scaling and folding exact
            let x: Vec<f64> = (0..3).map(|_| rng.gen_range(0..DYADIC) as f64 / DYADIC as f64).collect();
            let y: Vec<f64> =
                x.iter().map(|c| (c + signed(&mut rng, 64.0, 1024.0).round() / DYADIC as f64).clamp(0.0, 1.0)).collect();
            let (x, y) = (CubePoint::new(x).unwrap(), CubePoint::new(y).unwrap());
            if !segment_clear_of_folds(&params, &x, &y, 1e-9) {
                continue;
            }
            let d = snowflake_distance(&params, &x, &y);
            if d == 0.0 {
                continue;
            }
            let fx = expanding_map(&params, &x).map_err(|e| e.to_string())?;
            let fy = expanding_map(&params, &y).map_err(|e| e.to_string())?;
            worst = worst.max((snowflake_distance(&params, &fx, &fy) / d - 3.0).abs());
            pairs += 1;
        }
    }
    check(
        disagree == 0 && worst <= 1e-12,
        format!("oracle agrees {agree}, boundary unknown {unknown}, disagreements {disagree}; homothety error {worst:.2e}"),
    )
}

/// Cylinder endpoints at depth 8 are floats near 1 with length 4^-8, so
/// their midpoint is only symmetric to about 1e-11 relative.
const ROUNDNESS_TOL: f64 = 1e-9;

fn gdms_verifier() -> Outcome {
    let adapter = GdmsAdapter::new(system(2), false);
    let covers = build_covers(&adapter, 8, 1 << 12).map_err(|e| e.to_string())?;
    let mesh_ok = covers.mesh().iter().enumerate().all(|(n, &m)| m == 0.25f64.powi(n as i32));
    let deg = degree_report(&covers, 8).max_degree;
    let mut worst_round: f64 = 0.0;
    for level in covers.levels() {
        for node in level {
            let e = &node.element;
            let r = adapter.roundness(e, &adapter.center(e)).map_err(|e| e.to_string())?;
            worst_round = worst_round.max((r - 1.0).abs());
        }
    }

    let sys = system(2);
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst_scale: f64 = 0.0;
    let mut pairs = 0;
    while pairs < 10_000 {
        let e = rng.gen_range(0..2);
        let iv = sys.sub_interval(e);
        let x = rng.gen_range(iv.left..iv.right);
        let y = (x + signed(&mut rng, 1e-3, 1e-2)).clamp(iv.left, iv.right);
        let s = rng.gen_range(0.0..1.0);
        let t = s + signed(&mut rng, 0.01, 0.2);
        let p = SkewPoint::new(GdmsPoint { component: 0, coordinate: x }, s);
        let r = SkewPoint::new(GdmsPoint { component: 0, coordinate: y }, t);
        let d = skew_distance(&sys, &p, &r);
        if d == 0.0 {
            continue;
        }
        let fp = skew_map(&sys, &p).map_err(|e| e.to_string())?;
        let fr = skew_map(&sys, &r).map_err(|e| e.to_string())?;
        worst_scale = worst_scale.max((skew_distance(&sys, &fp, &fr) / d - 2.0).abs() / 2.0);
        pairs += 1;
    }
    check(
        mesh_ok && deg == 1 && worst_round <= ROUNDNESS_TOL && worst_scale <= 1e-12,
        format!("mesh exact {mesh_ok}; degree {deg}; roundness error {worst_round:.1e}; skew scaling error {worst_scale:.1e}"),
    )
}

fn visual_metric() -> Outcome {
    let adapter = HalfIntervalAdapter::default();
    let covers = build_covers(&adapter, 10, 1 << 16).map_err(|e| e.to_string())?;
    let r = visual_metric_check(&adapter, &covers, 2..=10, DEFAULT_SPREAD_BOUND, 4096).map_err(|e| e.to_string())?;
    check(
        (0.6..=0.8).contains(&r.epsilon) && r.spread <= 8.0,
        format!("epsilon {:.4} (log 2 = {:.4}); spread {:.3}; roundness sup {:.3}", r.epsilon, 2f64.ln(), r.spread, r.roundness_sup),
    )
}

fn box_dimensions() -> Outcome {
    let sys = system(2);
    let plain = box_dimension(&sys, false, 4..=12).map_err(|e| e.to_string())?.estimate;
    let snow = box_dimension(&sys, true, 4..=12).map_err(|e| e.to_string())?.estimate;
    check((plain - 0.5).abs() <= 0.05 && (snow - 1.0).abs() <= 0.1, format!("dim(C, d) = {plain:.4}, dim(C, d_alpha) = {snow:.4}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("dimension solver", dimension_solver),
        ("delta/alpha invariance", delta_over_alpha),
        ("singular values", singular_values),
        ("expansion certificate", expansion_certificate),
        ("postcritical sets", postcritical_sets),
        ("obstruction", obstruction),
        ("tilings", tilings),
        ("kneading equality", kneading),
        ("menger membership and homothety", menger),
        ("verifier on interval system", gdms_verifier),
        ("visual metric on A_1/2", visual_metric),
        ("box dimensions", box_dimensions),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
