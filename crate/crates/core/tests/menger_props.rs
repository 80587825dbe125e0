use cxc_core::menger::{
    carpet_membership, expanding_map, expanding_map_exact, fold_coordinates, membership, membership_exact, segment_clear_of_folds,
    snowflake_distance, CubePoint, FoldMode, MengerParams, Membership, DEFAULT_BOUNDARY_TOL,
};
use cxc_core::Q;
use num_integer::Integer;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Distance from `y` to the nearest even integer.
fn dist_to_even(y: Q) -> Q {
    let two = Q::from_integer(2);
    let r = y - two * (y / two).floor();
    r.min(two - r)
}

/// Closed form for reflect folding: the `k`-th iterate has coordinates
/// `dist(lambda_i^k x_i, 2Z)`.
fn iterate_oracle(factors: &[u32], x: &[Q], k: u32) -> Vec<Q> {
    x.iter().zip(factors).map(|(&c, &l)| dist_to_even(c * Q::from_integer((l as i128).pow(k)))).collect()
}

fn membership_oracle(n: usize, factors: &[u32], x: &[Q], depth: usize) -> Membership {
    let (lo, hi) = (Q::new(1, 3), Q::new(2, 3));
    for level in 0..=depth {
        let y = iterate_oracle(factors, x, level as u32);
        if y.iter().filter(|&&c| lo < c && c < hi).count() > n {
            return Membership::Out { level };
        }
    }
    Membership::In
}

fn ternary_point(k: usize, rng: &mut ChaCha8Rng) -> Vec<Q> {
    let den = 3i128.pow(9) * [1, 2, 4][rng.gen_range(0..3)];
    (0..k).map(|_| Q::new(rng.gen_range(0..=den), den)).collect()
}

#[test]
fn exact_membership_matches_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let cases = [
        MengerParams::sponge(),
        MengerParams::new(1, vec![3, 9, 3], FoldMode::Reflect).unwrap(),
        MengerParams::uniform(2, 5, FoldMode::Reflect).unwrap(),
    ];
    for params in &cases {
        let (mut out, mut inside) = (0, 0);
        for _ in 0..10_000 {
            let x = ternary_point(params.k(), &mut rng);
            let got = membership_exact(params, &x, 5).unwrap();
            assert_eq!(got, membership_oracle(params.n(), params.factors(), &x, 5), "{x:?}");
            match got {
                Membership::In => inside += 1,
                _ => out += 1,
            }
        }
        assert!(inside > 0 && out > 0);
    }
}

#[test]
fn float_membership_agrees_off_the_boundary() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let params = MengerParams::sponge();
    let mut decided = 0;
    for _ in 0..10_000 {
        let x = ternary_point(3, &mut rng);
        let floats: Vec<f64> = x.iter().map(|c| *c.numer() as f64 / *c.denom() as f64).collect();
        let got = membership(&params, &CubePoint::new(floats).unwrap(), 5, DEFAULT_BOUNDARY_TOL).unwrap();
        if !matches!(got, Membership::BoundaryUnknown { .. }) {
            assert_eq!(got, membership_exact(&params, &x, 5).unwrap());
            decided += 1;
        }
    }
    assert!(decided > 5_000);
}

#[test]
fn homothety_off_the_folds() {
    const DYADIC: f64 = (1u32 << 20) as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for factors in [vec![3, 3, 3], vec![3, 9, 3], vec![5, 3, 7, 3, 3]] {
        let n = (factors.len() - 1) / 2;
        let params = MengerParams::new(n, factors, FoldMode::Reflect).unwrap();
        let reach = 0.5 / params.max_factor() as f64;
        let mut pairs = 0;
        while pairs < 10_000 {
            let x: Vec<f64> = (0..params.k()).map(|_| rng.gen_range(0..1u32 << 20) as f64 / DYADIC).collect();
            let y: Vec<f64> = x
                .iter()
                .map(|c| (c + (rng.gen_range(-reach..reach) * DYADIC).round() / DYADIC).clamp(0.0, 1.0))
                .collect();
            let (x, y) = (CubePoint::new(x).unwrap(), CubePoint::new(y).unwrap());
            let d = snowflake_distance(&params, &x, &y);
            if d == 0.0 || !segment_clear_of_folds(&params, &x, &y, 1e-9) {
                continue;
            }
            let fx = expanding_map(&params, &x).unwrap();
            let fy = expanding_map(&params, &y).unwrap();
            let after = snowflake_distance(&params, &fx, &fy);
            assert!((after - 3.0 * d).abs() <= 1e-12, "{x:?} {y:?}: {after} vs {}", 3.0 * d);
            pairs += 1;
        }
    }
}

#[test]
fn level_zero_ambiguity_sits_on_the_branch_locus() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let params = MengerParams::sponge();
    let mut flagged = 0;
    for _ in 0..10_000 {
        let coords: Vec<f64> = (0..3)
            .map(|_| match rng.gen_range(0..4) {
                0 => 1.0 / 3.0 + rng.gen_range(-1e-10..1e-10),
                1 => 2.0 / 3.0 + rng.gen_range(-1e-10..1e-10),
                _ => rng.gen::<f64>(),
            })
            .collect();
        let x = CubePoint::new(coords).unwrap();
        if membership(&params, &x, 3, DEFAULT_BOUNDARY_TOL).unwrap() == (Membership::BoundaryUnknown { level: 0 }) {
            flagged += 1;
            assert!(!fold_coordinates(&params, &x, DEFAULT_BOUNDARY_TOL).is_empty(), "{x:?}");
            assert!(x.coords.iter().any(|c| (c - 1.0 / 3.0).abs() <= 1e-9 || (c - 2.0 / 3.0).abs() <= 1e-9));
        }
    }
    assert!(flagged > 0);
}

proptest! {
    #[test]
    fn fold_matches_distance_to_even(num in 0i128..=3i128.pow(8), k in 0u32..6) {
        let x = Q::new(num, 3i128.pow(8));
        let params = MengerParams::sponge();
        let mut y = vec![x, Q::new(1, 2), x / Q::from_integer(2)];
        for _ in 0..k {
            y = expanding_map_exact(&params, &y).unwrap();
        }
        prop_assert_eq!(y, iterate_oracle(params.factors(), &[x, Q::new(1, 2), x / Q::from_integer(2)], k));
    }

    #[test]
    fn face_restriction_is_the_carpet(a in 0u32..=1 << 16, b in 0u32..=1 << 16) {
        let params = MengerParams::sponge();
        let (x1, x2) = (a as f64 / 65536.0, b as f64 / 65536.0);
        let x = CubePoint::new(vec![x1, x2, 0.0]).unwrap();
        prop_assert_eq!(expanding_map(&params, &x).unwrap().coords[2], 0.0);
        prop_assert_eq!(
            membership(&params, &x, 6, DEFAULT_BOUNDARY_TOL).unwrap(),
            carpet_membership([x1, x2], 6, DEFAULT_BOUNDARY_TOL).unwrap()
        );
    }

    #[test]
    fn reduced_fractions_stay_in_the_cube(num in 0i128..=1000, den in 1i128..=1000) {
        prop_assume!(num <= den);
        let x = Q::new(num, den);
        let params = MengerParams::new(1, vec![4, 3, 5], FoldMode::Reflect).unwrap();
        let y = expanding_map_exact(&params, &[x, x, x]).unwrap();
        prop_assert!(y.iter().all(|c| *c >= Q::from_integer(0) && *c <= Q::from_integer(1)));
        prop_assert!(y.iter().all(|c| c.denom().is_odd() || den.is_even()));
    }
}
