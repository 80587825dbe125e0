//! The square pillowcase `O = R^2 / G`, `G = {z -> +-z + (m, n)}`, and the
//! family `f_a = R_a o F`, `a in [0, 1/8]`, all in exact rational
//! arithmetic.
//!
//! Points are stored as canonical representatives in the rectangle
//! `R = [0, 1/2] x [-1/2, 1/2]` with `y` in `(-1/2, 1/2]`, and `y >= 0` on the
//! side edges `x = 0` and `x = 1/2`.

pub mod curves;
pub mod map;
pub mod tent;
pub mod tiling;

use core::fmt;

use num_traits::{One, Signed, Zero};
#[allow(unused_imports)]
use num_traits::Float;

use crate::rational::{format_q, to_f64, Q};

pub use curves::{curve_preimage, obstruction_report, thurston_matrix, ObstructionReport, PreimageCurve, PullbackData, ThurstonMatrix};
pub use map::{differential_report, f_a, lattes, preimages, r_a, r_a_inverse, DifferentialReport, Mat2, PieceMap};
pub use tent::{postcritical_set, tent, tent_orbit, TentOrbit};
pub use tiling::{subdivide, Tile, Tiling};

pub type Vec2 = [Q; 2];

pub fn half() -> Q {
    Q::new(1, 2)
}

/// `z -> sign * z + shift`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupElem {
    pub sign: i8,
    pub shift: [i128; 2],
}

impl GroupElem {
    pub const IDENTITY: GroupElem = GroupElem { sign: 1, shift: [0, 0] };

    pub fn translation(m: i128, n: i128) -> Self {
        Self { sign: 1, shift: [m, n] }
    }

    pub fn negation(m: i128, n: i128) -> Self {
        Self { sign: -1, shift: [m, n] }
    }

    pub fn apply(&self, z: Vec2) -> Vec2 {
        let s = Q::from_integer(self.sign as i128);
        [s * z[0] + Q::from_integer(self.shift[0]), s * z[1] + Q::from_integer(self.shift[1])]
    }

    pub fn apply_f64(&self, z: [f64; 2]) -> [f64; 2] {
        let s = self.sign as f64;
        [s * z[0] + self.shift[0] as f64, s * z[1] + self.shift[1] as f64]
    }

    /// `self o first`.
    pub fn after(&self, first: &GroupElem) -> GroupElem {
        let s = self.sign as i128;
        GroupElem {
            sign: self.sign * first.sign,
            shift: [s * first.shift[0] + self.shift[0], s * first.shift[1] + self.shift[1]],
        }
    }
}

/// A point of `O` in canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbPoint {
    x: Q,
    y: Q,
}

impl OrbPoint {
    pub fn x(&self) -> Q {
        self.x
    }

    pub fn y(&self) -> Q {
        self.y
    }

    pub fn coords(&self) -> Vec2 {
        [self.x, self.y]
    }

    pub fn to_f64(&self) -> [f64; 2] {
        [to_f64(self.x), to_f64(self.y)]
    }

    /// The involution `j`, induced by `(x, y) -> (x, -y)`.
    pub fn conj(&self) -> OrbPoint {
        orb_point(self.x, -self.y)
    }

    pub fn is_cone_point(&self) -> bool {
        let h = half();
        (self.x.is_zero() || self.x == h) && (self.y.is_zero() || self.y == h)
    }

    /// On the edges `alpha` (`y = 0`) or `beta` (`y = 1/2`).
    pub fn on_alpha_or_beta(&self) -> bool {
        self.y.is_zero() || self.y == half()
    }

    /// On the 1-skeleton: `alpha`, `beta` or a side edge.
    pub fn on_skeleton(&self) -> bool {
        self.on_alpha_or_beta() || self.x.is_zero() || self.x == half()
    }
}

impl fmt::Display for OrbPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_q(self.x), format_q(self.y))
    }
}

/// Canonical representative of the orbit of `z`, and the group element
/// carrying `z` to it.
pub fn canonicalize(z: Vec2) -> (OrbPoint, GroupElem) {
    let h = half();
    let one = Q::one();
    let k = z[0].floor().to_integer();
    let mut g = GroupElem::translation(-k, 0);
    let mut p = g.apply(z);
    if p[0] > h {
        let flip = GroupElem::negation(1, 0);
        p = flip.apply(p);
        g = flip.after(&g);
    }
    let l = (p[1] - h).ceil().to_integer();
    let shift = GroupElem::translation(0, -l);
    p = shift.apply(p);
    g = shift.after(&g);
    if (p[0].is_zero() || p[0] == h) && p[1].is_negative() {
        let m = if p[0].is_zero() { 0 } else { 1 };
        let flip = GroupElem::negation(m, 0);
        p = flip.apply(p);
        g = flip.after(&g);
    }
    debug_assert!(p[1] > -h && p[1] <= h && p[1] < one);
    (OrbPoint { x: p[0], y: p[1] }, g)
}

pub fn orb_point(x: Q, y: Q) -> OrbPoint {
    canonicalize([x, y]).0
}

/// The length metric `rho`: the shortest lift of a segment, found among the
/// images `+-q + (m, n)`, `m, n in {-1, 0, 1}`.
pub fn orb_distance(p: &OrbPoint, q: &OrbPoint) -> f64 {
    orb_distance_f64(p.to_f64(), q.to_f64())
}

/// [`orb_distance`] for points given by representatives in `R`.
pub fn orb_distance_f64(p: [f64; 2], q: [f64; 2]) -> f64 {
    let mut best = f64::INFINITY;
    for sign in [1.0, -1.0] {
        for m in -1..=1 {
            for n in -1..=1 {
                let dx = p[0] - (sign * q[0] + m as f64);
                let dy = p[1] - (sign * q[1] + n as f64);
                best = best.min(dx.hypot(dy));
            }
        }
    }
    best
}

pub fn cone_points() -> [OrbPoint; 4] {
    let (z, h) = (Q::zero(), half());
    [orb_point(z, z), orb_point(h, z), orb_point(z, h), orb_point(h, h)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn canonical_examples() {
        assert_eq!(orb_point(q(1, 1), q(1, 1)), orb_point(q(0, 1), q(0, 1)));
        let p = orb_point(q(-1, 4), q(3, 4));
        assert_eq!((p.x(), p.y()), (q(1, 4), q(1, 4)));
        let p = orb_point(q(1, 2), q(-1, 2));
        assert_eq!((p.x(), p.y()), (q(1, 2), q(1, 2)));
        let p = orb_point(q(0, 1), q(-1, 3));
        assert_eq!((p.x(), p.y()), (q(0, 1), q(1, 3)));
        let p = orb_point(q(1, 4), q(-1, 2));
        assert_eq!((p.x(), p.y()), (q(1, 4), q(1, 2)));
    }

    #[test]
    fn canonical_is_idempotent_and_tracks_group() {
        for (x, y) in [(q(7, 5), q(-9, 4)), (q(-3, 8), q(5, 8)), (q(3, 4), q(1, 2))] {
            let (p, g) = canonicalize([x, y]);
            assert_eq!(g.apply([x, y]), p.coords());
            assert_eq!(orb_point(p.x(), p.y()), p);
        }
    }

    #[test]
    fn distance_examples() {
        let p = orb_point(q(0, 1), q(49, 100));
        let r = orb_point(q(0, 1), q(-49, 100));
        assert_eq!(p, r);
        assert_eq!(orb_distance(&p, &r), 0.0);
        let a = [0.0, 0.49];
        let b = [0.0, -0.49];
        assert!((orb_distance_f64(a, b) - 0.0).abs() < 1e-12);
        let a = [0.1, 0.49];
        let b = [0.1, -0.49];
        assert!((orb_distance_f64(a, b) - 0.02).abs() < 1e-12);
        let s = orb_point(q(1, 100), q(0, 1));
        let t = orb_point(q(-1, 100), q(0, 1));
        assert_eq!(orb_distance(&s, &t), 0.0);
    }

    #[test]
    fn conj_and_skeleton() {
        let p = orb_point(q(1, 8), q(3, 8));
        assert_eq!(p.conj().y(), q(-3, 8));
        assert_eq!(p.conj().conj(), p);
        assert!(orb_point(q(1, 2), q(1, 2)).is_cone_point());
        assert!(orb_point(q(1, 5), q(0, 1)).on_skeleton());
        assert!(!p.on_skeleton());
    }
}
