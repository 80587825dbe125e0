use std::collections::BTreeSet;

use cxc_core::pillowcase::map::rtilde_pieces;
use cxc_core::pillowcase::tiling::polygon_area;
use cxc_core::pillowcase::{
    f_a, orb_distance, orb_point, postcritical_set, preimages, subdivide, tent, tent_orbit, OrbPoint,
};
use cxc_core::rational::q;
use cxc_core::Q;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PARAMS: [(i128, i128); 4] = [(0, 1), (1, 64), (1, 16), (1, 8)];

fn params() -> impl Strategy<Value = Q> {
    (0i128..=16).prop_map(|k| q(k, 128))
}

fn points() -> impl Strategy<Value = OrbPoint> {
    (0i128..=96, -96i128..=96).prop_map(|(x, y)| orb_point(q(x, 192), q(y, 192)))
}

fn random_point(rng: &mut ChaCha8Rng) -> OrbPoint {
    let den = 2 * 3 * 5 * 7 * 64;
    orb_point(q(rng.gen_range(0..=den / 2), den), q(rng.gen_range(-den / 2..=den / 2), den))
}

#[test]
fn pieces_agree_on_shared_edges() {
    for (n, d) in PARAMS {
        let a = q(n, d);
        let [p1, p2, p3] = rtilde_pieces(a);
        for k in 0..=32 {
            let t = q(k, 32);
            let e12 = [t * a, t * a / Q::from_integer(2)];
            assert_eq!(p1.apply(e12), p2.apply(e12));
            let e23 = [t * a, t * a];
            assert_eq!(p2.apply(e23), p3.apply(e23));
            let bottom = [t * a, Q::zero()];
            assert_eq!(p1.apply(bottom), bottom);
            let left = [Q::zero(), t * a];
            assert_eq!(p3.apply(left), left);
        }
    }
}

#[test]
fn commutes_with_j() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..10_000 {
        let a = q(rng.gen_range(0..=16), 128);
        let p = random_point(&mut rng);
        assert_eq!(f_a(a, &p.conj()).unwrap(), f_a(a, &p).unwrap().conj(), "a = {a}, p = {p}");
    }
}

proptest! {
    #[test]
    fn alpha_and_beta_land_on_alpha(a in params(), x in 0i128..=256) {
        let x = q(x, 512);
        let on_alpha = f_a(a, &orb_point(x, Q::zero())).unwrap();
        prop_assert_eq!(on_alpha, orb_point(tent(x), Q::zero()));
        let from_beta = f_a(a, &orb_point(x, q(1, 2))).unwrap();
        prop_assert!(from_beta.y().is_zero());
    }

    #[test]
    fn preimage_degrees_sum_to_four(a in params(), p in points()) {
        let pre = preimages(a, &p).unwrap();
        prop_assert_eq!(pre.iter().map(|(_, d)| d).sum::<u32>(), 4);
        for (z, _) in &pre {
            prop_assert_eq!(f_a(a, z).unwrap(), p);
        }
    }

    #[test]
    fn forward_image_is_among_preimages(a in params(), p in points()) {
        let image = f_a(a, &p).unwrap();
        prop_assert!(preimages(a, &image).unwrap().iter().any(|(z, _)| *z == p));
    }
}

fn in_band(p: &OrbPoint, lo: Q, hi: Q) -> bool {
    let y = p.y().abs();
    lo <= y && y <= hi
}

#[test]
fn annuli_double_cover_a() {
    let (a1, a2, target) = ((q(1, 8), q(3, 16)), (q(5, 16), q(3, 8)), (q(1, 4), q(3, 8)));
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..5_000 {
        let band = if rng.gen() { a1 } else { a2 };
        let y = band.0 + (band.1 - band.0) * q(rng.gen_range(0..=64), 64);
        let y = if rng.gen() { y } else { -y };
        let p = orb_point(q(rng.gen_range(0..=256), 512), y);
        let images: BTreeSet<OrbPoint> = PARAMS.iter().map(|&(n, d)| f_a(q(n, d), &p).unwrap()).collect();
        assert_eq!(images.len(), 1, "f_a({p}) depends on a");
        assert!(in_band(images.iter().next().unwrap(), target.0, target.1));
    }
    for _ in 0..2_000 {
        let y = target.0 + (target.1 - target.0) * q(rng.gen_range(0..=64), 64);
        let p = orb_point(q(rng.gen_range(0..=256), 512), y);
        for (n, d) in PARAMS {
            let pre = preimages(q(n, d), &p).unwrap();
            let count = |band: (Q, Q)| pre.iter().filter(|(z, _)| in_band(z, band.0, band.1)).map(|(_, d)| d).sum::<u32>();
            assert_eq!((count(a1), count(a2)), (2, 2), "p = {p}, a = {n}/{d}");
        }
    }
}

#[test]
fn postcritical_traces_separate_parameters() {
    let grid: Vec<Q> = (0..=32).map(|k| q(k, 256)).collect();
    let trace = |a: Q| -> BTreeSet<Q> {
        postcritical_set(a, 10_000).unwrap().into_iter().filter(|p| p.y().is_zero()).map(|p| p.x()).collect()
    };
    for &a in &grid {
        let ta = trace(a);
        let orbit: BTreeSet<Q> = tent_orbit(a, 10_000).unwrap().orbit.into_iter().collect();
        assert!(orbit.is_subset(&ta));
        for &b in &grid {
            if a != b && !orbit.contains(&b) {
                assert_ne!(ta, trace(b), "a = {a}, b = {b}");
            }
        }
    }
}

#[test]
fn continuous_in_a() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let sample: Vec<OrbPoint> = (0..4_000).map(|_| random_point(&mut rng)).collect();
    let mut previous = f64::INFINITY;
    let mut lipschitz: f64 = 0.0;
    for k in [64, 256, 1024, 4096] {
        let step = q(1, k);
        let mut sup: f64 = 0.0;
        for base in [q(0, 1), q(1, 16), q(1, 8) - step] {
            for p in &sample {
                let d = orb_distance(&f_a(base, p).unwrap(), &f_a(base + step, p).unwrap());
                sup = sup.max(d);
            }
        }
        let ratio = sup * k as f64;
        lipschitz = lipschitz.max(ratio);
        assert!(sup < previous, "sup {sup} at step 1/{k}");
        previous = sup;
    }
    assert!(lipschitz <= 4.0, "Lipschitz estimate {lipschitz}");
}

#[test]
fn tilings_partition_the_faces() {
    for (n, d) in PARAMS {
        for depth in 0..=3 {
            let t = subdivide(q(n, d), depth).unwrap();
            assert_eq!(t.tiles.len(), 2 * 4usize.pow(depth as u32));
            let total: Q = t.tiles.iter().map(|tile| tile.area).sum();
            assert_eq!(total, q(1, 2), "a = {n}/{d}, depth {depth}");
            for tile in &t.tiles {
                let fragments: Q = tile.fragments.iter().map(|f| polygon_area(f).abs()).sum();
                assert_eq!(fragments, tile.area);
            }
        }
    }
}
