//! The Lattes map `F`, the piecewise-linear perturbation `R_a` supported on
//! `Q_a = [1/2 - a, 1/2]^2` and its mirror `j(Q_a)`, and `f_a = R_a o F`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::ops::Mul;

use num_traits::{One, Zero};
#[allow(unused_imports)]
use num_traits::Float;

use super::{canonicalize, half, orb_point, OrbPoint, Vec2};
use crate::error::{Error, Result};
use crate::rational::{to_f64, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat2(pub [[Q; 2]; 2]);

impl Mat2 {
    pub fn new(a: Q, b: Q, c: Q, d: Q) -> Self {
        Self([[a, b], [c, d]])
    }

    pub fn identity() -> Self {
        Self::scalar(Q::one())
    }

    pub fn scalar(s: Q) -> Self {
        Self::new(s, Q::zero(), Q::zero(), s)
    }

    /// `diag(1, -1)`, the linear part of `j`.
    pub fn flip() -> Self {
        Self::new(Q::one(), Q::zero(), Q::zero(), -Q::one())
    }

    pub fn apply(&self, z: Vec2) -> Vec2 {
        let m = &self.0;
        [m[0][0] * z[0] + m[0][1] * z[1], m[1][0] * z[0] + m[1][1] * z[1]]
    }

    pub fn det(&self) -> Q {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.is_zero() {
            return None;
        }
        let m = &self.0;
        Some(Self::new(m[1][1] / d, -m[0][1] / d, -m[1][0] / d, m[0][0] / d))
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Self::new(m[0][0], m[1][0], m[0][1], m[1][1])
    }

    /// Matrix with the given columns.
    pub fn from_columns(c0: Vec2, c1: Vec2) -> Self {
        Self::new(c0[0], c1[0], c0[1], c1[1])
    }

    /// Singular values `(smallest, largest)`: square roots of the eigenvalues
    /// of `M M^t`.
    pub fn singular_values(&self) -> (f64, f64) {
        let s = *self * self.transpose();
        let tr = to_f64(s.0[0][0] + s.0[1][1]);
        let det = to_f64(s.det());
        let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
        let hi = 0.5 * (tr + disc);
        let lo = if hi > 0.0 { det / hi } else { 0.0 };
        (lo.max(0.0).sqrt(), hi.sqrt())
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        let e = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
        Mat2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }
}

/// An affine map `z -> matrix z + offset` on a triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PieceMap {
    pub matrix: Mat2,
    pub offset: Vec2,
    pub domain: [Vec2; 3],
}

impl PieceMap {
    pub fn apply(&self, z: Vec2) -> Vec2 {
        let w = self.matrix.apply(z);
        [w[0] + self.offset[0], w[1] + self.offset[1]]
    }

    /// Whether `z` lies in the closed domain triangle.
    pub fn contains(&self, z: Vec2) -> bool {
        let [p, q, r] = self.domain;
        let orient = |a: Vec2, b: Vec2, c: Vec2| (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
        let (d1, d2, d3) = (orient(p, q, z), orient(q, r, z), orient(r, p, z));
        let zero = Q::zero();
        (d1 >= zero && d2 >= zero && d3 >= zero) || (d1 <= zero && d2 <= zero && d3 <= zero)
    }
}

pub fn check_a(a: Q) -> Result<()> {
    if a < Q::zero() || a > Q::new(1, 8) {
        return Err(Error::InvalidParameter(format!("a = {a} is outside [0, 1/8]")));
    }
    Ok(())
}

/// `T_1`, `T_2`, `T_3`. `T_2` is assembled from the vertex images: it sends
/// `(1, 1/2)` to `(1, 1)` and `(1, 1)` to `(1/2, 1)`.
pub fn t_matrices() -> [Mat2; 3] {
    let (z, o, h) = (Q::zero(), Q::one(), half());
    let t1 = Mat2::new(o, z, z, Q::from_integer(2));
    let src = Mat2::from_columns([o, h], [o, o]);
    let dst = Mat2::from_columns([o, o], [h, o]);
    let t2 = dst * src.inverse().expect("independent columns");
    let t3 = Mat2::new(h, z, z, o);
    [t1, t2, t3]
}

/// The three pieces of `R~_a` on `[0, a]^2`, domains `Delta_1..3`.
pub fn rtilde_pieces(a: Q) -> [PieceMap; 3] {
    let z = Q::zero();
    let o = [z, z];
    let [t1, t2, t3] = t_matrices();
    let h = a / Q::from_integer(2);
    [
        PieceMap { matrix: t1, offset: o, domain: [o, [a, z], [a, h]] },
        PieceMap { matrix: t2, offset: o, domain: [o, [a, h], [a, a]] },
        PieceMap { matrix: t3, offset: o, domain: [o, [a, a], [z, a]] },
    ]
}

/// Which piece of `R_a` acts at a canonical point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Region {
    /// Outside `Q_a` and `j(Q_a)`: `R_a` is the identity.
    Plain,
    /// In `Q_a`, piece `Delta_{i+1}`.
    Q(usize),
    /// In `j(Q_a)`, piece `j(Delta_{i+1})`.
    JQ(usize),
}

fn corner(a: Q) -> Q {
    half() - a
}

fn piece_of_local(u: Q, v: Q) -> usize {
    let two = Q::from_integer(2);
    if two * v <= u {
        0
    } else if v <= u {
        1
    } else {
        2
    }
}

fn inverse_piece_of_local(u: Q, v: Q) -> usize {
    let two = Q::from_integer(2);
    if v <= u {
        0
    } else if v <= two * u {
        1
    } else {
        2
    }
}

pub fn region_of(a: Q, p: &OrbPoint) -> Region {
    if a.is_zero() {
        return Region::Plain;
    }
    let c = corner(a);
    if p.x() < c {
        return Region::Plain;
    }
    if p.y() >= c {
        Region::Q(piece_of_local(p.x() - c, p.y() - c))
    } else if p.y() <= -c {
        Region::JQ(piece_of_local(p.x() - c, -p.y() - c))
    } else {
        Region::Plain
    }
}

fn apply_local(a: Q, p: &OrbPoint, inverse: bool) -> OrbPoint {
    if a.is_zero() {
        return *p;
    }
    let c = corner(a);
    let [t1, t2, t3] = t_matrices();
    let ts = [t1, t2, t3];
    let act = |u: Q, v: Q| -> Vec2 {
        if inverse {
            let i = inverse_piece_of_local(u, v);
            ts[i].inverse().expect("invertible").apply([u, v])
        } else {
            ts[piece_of_local(u, v)].apply([u, v])
        }
    };
    if p.x() < c {
        return *p;
    }
    if p.y() >= c {
        let w = act(p.x() - c, p.y() - c);
        orb_point(w[0] + c, w[1] + c)
    } else if p.y() <= -c {
        let w = act(p.x() - c, -p.y() - c);
        orb_point(w[0] + c, -(w[1] + c))
    } else {
        *p
    }
}

/// `R_a`.
pub fn r_a(a: Q, p: &OrbPoint) -> OrbPoint {
    apply_local(a, p, false)
}

/// `R_a^{-1}`; on `Q_a` the pieces are `Delta'_1 = {v <= u}`,
/// `Delta'_2 = {u <= v <= 2u}`, `Delta'_3 = {v >= 2u}` in local coordinates.
pub fn r_a_inverse(a: Q, p: &OrbPoint) -> OrbPoint {
    apply_local(a, p, true)
}

/// The Lattes map `F`, induced by `z -> 2z`.
pub fn lattes(p: &OrbPoint) -> OrbPoint {
    let two = Q::from_integer(2);
    orb_point(two * p.x(), two * p.y())
}

/// `f_a = R_a o F`.
pub fn f_a(a: Q, p: &OrbPoint) -> Result<OrbPoint> {
    check_a(a)?;
    Ok(r_a(a, &lattes(p)))
}

/// All solutions of `f_a(q) = p` with local degrees (summing to 4), sorted.
pub fn preimages(a: Q, p: &OrbPoint) -> Result<Vec<(OrbPoint, u32)>> {
    check_a(a)?;
    let r = r_a_inverse(a, p);
    let two = Q::from_integer(2);
    let mut found: BTreeMap<OrbPoint, u32> = BTreeMap::new();
    for m in 0..2 {
        for n in 0..2 {
            let z = [(r.x() + Q::from_integer(m)) / two, (r.y() + Q::from_integer(n)) / two];
            *found.entry(canonicalize(z).0).or_insert(0) += 1;
        }
    }
    Ok(found.into_iter().collect())
}

/// One affine piece of `f_a` in lifted coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferentialPiece {
    /// Region of `F(z)` that selects the piece.
    pub region: Region,
    pub matrix: Mat2,
    pub singular_values: (f64, f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DifferentialReport {
    pub pieces: Vec<DifferentialPiece>,
    pub min_sv: f64,
    pub second_iterate_bound: f64,
    pub q_disjointness: bool,
    pub samples_checked: usize,
}

/// Affine pieces of `f_a`, singular values and the two-step expansion bound.
/// A point whose `F`-image lies in `Q_a` or `j(Q_a)` lands in `F(Q_a)`, a
/// neighbourhood of `(0, 0)` of radius `2a`, so a perturbed piece is always
/// followed by the plain piece `2 Id`.
pub fn differential_report(a: Q) -> Result<DifferentialReport> {
    check_a(a)?;
    if a.is_zero() {
        return Err(Error::InvalidParameter("a must be positive".into()));
    }
    let two = Mat2::scalar(Q::from_integer(2));
    let j = Mat2::flip();
    let mut pieces = Vec::new();
    pieces.push(DifferentialPiece { region: Region::Plain, matrix: two, singular_values: two.singular_values() });
    for (i, t) in t_matrices().iter().enumerate() {
        let m = *t * two;
        pieces.push(DifferentialPiece { region: Region::Q(i), matrix: m, singular_values: m.singular_values() });
    }
    for (i, t) in t_matrices().iter().enumerate() {
        let m = j * *t * j * two;
        pieces.push(DifferentialPiece { region: Region::JQ(i), matrix: m, singular_values: m.singular_values() });
    }
    let min_sv = pieces.iter().map(|p| p.singular_values.0).fold(f64::INFINITY, f64::min);

    let mut second = f64::INFINITY;
    for first in &pieces {
        for next in &pieces {
            if first.region != Region::Plain && next.region != Region::Plain {
                continue;
            }
            second = second.min((next.matrix * first.matrix).singular_values().0);
        }
    }

    let c = corner(a);
    let exact = Q::from_integer(2) * a < c;
    let steps = 100i128;
    let mut sampled = true;
    let mut count = 0;
    for i in 0..steps {
        for k in 0..steps {
            let u = a * Q::new(i, steps - 1);
            let v = a * Q::new(k, steps - 1);
            for p in [orb_point(c + u, c + v), orb_point(c + u, -(c + v))] {
                let image = f_a(a, &p)?;
                count += 1;
                if region_of(a, &image) != Region::Plain {
                    sampled = false;
                }
            }
        }
    }

    Ok(DifferentialReport {
        pieces,
        min_sv,
        second_iterate_bound: second,
        q_disjointness: exact && sampled,
        samples_checked: count,
    })
}
