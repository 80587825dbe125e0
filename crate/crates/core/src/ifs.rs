//! The IFS `F_0(z) = lambda z`, `F_1(z) = lambda z + 1`, its attractor
//! `A_lambda`, the overlap point `o_lambda`, the branched double cover
//! `q_lambda` and kneading sequences.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_traits::Zero;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::rational::Q;

pub const MAX_DEPTH: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IfsParam {
    lambda: Complex64,
}

impl IfsParam {
    pub fn new(lambda: Complex64) -> Result<Self> {
        let r = lambda.norm();
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::InvalidParameter(format!("|lambda| = {r} is not in (0, 1)")));
        }
        Ok(Self { lambda })
    }

    pub fn real(lambda: f64) -> Result<Self> {
        Self::new(Complex64::new(lambda, 0.0))
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    pub fn modulus(&self) -> f64 {
        self.lambda.norm()
    }

    pub fn f0(&self, z: Complex64) -> Complex64 {
        self.lambda * z
    }

    pub fn f1(&self, z: Complex64) -> Complex64 {
        self.lambda * z + 1.0
    }

    pub fn apply(&self, bit: u8, z: Complex64) -> Complex64 {
        if bit == 0 {
            self.f0(z)
        } else {
            self.f1(z)
        }
    }

    /// `1 / (1 - lambda)`, the fixed point of `F_1` and the centre of
    /// symmetry of `A_lambda`.
    pub fn fixed_point_1(&self) -> Complex64 {
        (Complex64::new(1.0, 0.0) - self.lambda).inv()
    }

    /// The involution `s(z) = -z + 1/(1 - lambda)` swapping the two halves.
    pub fn involution(&self, z: Complex64) -> Complex64 {
        self.fixed_point_1() - z
    }

    /// The branch of `q` that inverts `F_0` (`bit == 0`) or `F_1 o s`
    /// (`bit == 1`).
    pub fn q_branch(&self, bit: u8, z: Complex64) -> Complex64 {
        if bit == 0 {
            z / self.lambda
        } else {
            -(z - 1.0) / self.lambda + self.fixed_point_1()
        }
    }

    /// Upper bound for `diam(A_lambda)`.
    pub fn diameter_bound(&self) -> f64 {
        1.0 / (1.0 - self.modulus())
    }

    /// Contraction error bound `4 |lambda|^m / (1 - |lambda|)`.
    pub fn default_tolerance(&self, depth: usize) -> f64 {
        4.0 * self.modulus().powi(depth as i32) / (1.0 - self.modulus())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttractorApprox {
    pub depth: usize,
    /// `points[i]` has address given by the `depth` bits of `i`, first symbol
    /// in the most significant bit.
    pub points: Vec<Complex64>,
}

impl AttractorApprox {
    pub fn address(&self, index: usize) -> Vec<u8> {
        (0..self.depth).rev().map(|k| ((index >> k) & 1) as u8).collect()
    }

    pub fn index_of(address: &[u8]) -> usize {
        address.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }

    pub fn leading_bit(&self, index: usize) -> u8 {
        ((index >> (self.depth - 1)) & 1) as u8
    }

    /// Index of the complemented address.
    pub fn complement(&self, index: usize) -> usize {
        !index & ((1usize << self.depth) - 1)
    }
}

/// All `2^depth` images `F_{w_1} o ... o F_{w_m}(0)`.
pub fn attractor_points(param: &IfsParam, depth: usize) -> Result<AttractorApprox> {
    if depth == 0 || depth > MAX_DEPTH {
        return Err(Error::InvalidParameter(format!("depth must be in 1..={MAX_DEPTH}, got {depth}")));
    }
    let mut level = vec![Complex64::zero()];
    for m in 0..depth {
        let mut next = Vec::with_capacity(level.len() * 2);
        for bit in 0..2u8 {
            next.extend(level.iter().map(|&z| param.apply(bit, z)));
        }
        debug_assert_eq!(next.len(), 2 << m);
        level = next;
    }
    Ok(AttractorApprox { depth, points: level })
}

/// Uniform grid over a point cloud for nearest-neighbour queries.
#[derive(Debug, Clone)]
pub struct PointIndex {
    cell: f64,
    buckets: BTreeMap<(i64, i64), Vec<usize>>,
    points: Vec<Complex64>,
}

impl PointIndex {
    pub fn new(points: &[Complex64], cell: f64) -> Self {
        let mut buckets: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
        for (i, z) in points.iter().enumerate() {
            buckets.entry(Self::key_of(*z, cell)).or_default().push(i);
        }
        Self { cell, buckets, points: points.to_vec() }
    }

    fn key_of(z: Complex64, cell: f64) -> (i64, i64) {
        ((z.re / cell).floor() as i64, (z.im / cell).floor() as i64)
    }

    /// Indices of points within `r` of `z`.
    pub fn within(&self, z: Complex64, r: f64) -> Vec<usize> {
        let (cx, cy) = Self::key_of(z, self.cell);
        let k = (r / self.cell).ceil() as i64;
        let mut out = Vec::new();
        for dx in -k..=k {
            for dy in -k..=k {
                if let Some(ids) = self.buckets.get(&(cx + dx, cy + dy)) {
                    out.extend(ids.iter().copied().filter(|&i| (self.points[i] - z).norm() <= r));
                }
            }
        }
        out
    }

    /// Nearest point to `z` and its distance.
    pub fn nearest(&self, z: Complex64) -> Option<(usize, f64)> {
        if self.points.is_empty() {
            return None;
        }
        let (cx, cy) = Self::key_of(z, self.cell);
        let mut best: Option<(usize, f64)> = None;
        let mut ring = 0i64;
        loop {
            for dx in -ring..=ring {
                for dy in -ring..=ring {
                    if dx.abs() != ring && dy.abs() != ring {
                        continue;
                    }
                    if let Some(ids) = self.buckets.get(&(cx + dx, cy + dy)) {
                        for &i in ids {
                            let d = (self.points[i] - z).norm();
                            if best.map_or(true, |(_, b)| d < b) {
                                best = Some((i, d));
                            }
                        }
                    }
                }
            }
            if let Some((_, b)) = best {
                if (ring as f64) * self.cell >= b {
                    return best;
                }
            }
            ring += 1;
            if ring > 1 << 20 {
                return best;
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingletonVerdict {
    Plausible,
    Rejected,
    Inconclusive,
}

impl fmt::Display for SingletonVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Plausible => "plausible",
            Self::Rejected => "rejected",
            Self::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OverlapReport {
    pub depth: usize,
    pub tolerance: f64,
    pub pair_count: usize,
    pub midpoints: Vec<Complex64>,
    pub overlap_diameter: f64,
    pub candidate_o: Option<Complex64>,
    pub verdict: SingletonVerdict,
}

struct Overlap {
    midpoints: Vec<Complex64>,
    pairs: usize,
    diameter: f64,
}

fn collect_overlap(approx: &AttractorApprox, tol: f64) -> Overlap {
    let half = approx.points.len() / 2;
    let (zero, one) = approx.points.split_at(half);
    let index = PointIndex::new(one, tol.max(f64::MIN_POSITIVE));
    let mut midpoints = Vec::new();
    for &p in zero {
        for j in index.within(p, tol) {
            midpoints.push(0.5 * (p + one[j]));
        }
    }
    let pairs = midpoints.len();
    let diameter = point_set_diameter(&midpoints);
    Overlap { midpoints, pairs, diameter }
}

/// Diameter of a finite planar set (convex hull, then all hull pairs).
pub fn point_set_diameter(points: &[Complex64]) -> f64 {
    let hull = convex_hull(points);
    let mut best = 0.0f64;
    for (i, a) in hull.iter().enumerate() {
        for b in &hull[i + 1..] {
            best = best.max((a - b).norm());
        }
    }
    best
}

fn convex_hull(points: &[Complex64]) -> Vec<Complex64> {
    let mut pts: Vec<Complex64> = points.to_vec();
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let cross = |o: Complex64, a: Complex64, b: Complex64| (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re);
    let mut hull: Vec<Complex64> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: alloc::boxed::Box<dyn Iterator<Item = &Complex64>> =
            if pass == 0 { alloc::boxed::Box::new(pts.iter()) } else { alloc::boxed::Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Searches for pairs across the two halves within `tol` (default
/// [`IfsParam::default_tolerance`]). The verdict is heuristic: `plausible`
/// when the overlap set is nonempty and either tiny or clearly shrinking
/// against depth `depth - 2`, `rejected` when empty at a tolerance above the
/// approximation error.
pub fn overlap_test(param: &IfsParam, depth: usize, tol: Option<f64>) -> Result<OverlapReport> {
    let approx = attractor_points(param, depth)?;
    let tol = tol.unwrap_or_else(|| param.default_tolerance(depth));
    let here = collect_overlap(&approx, tol);
    let r = param.modulus();
    let approx_error = 2.0 * r.powi(depth as i32) / (1.0 - r);

    let verdict = if here.pairs == 0 {
        if tol >= approx_error {
            SingletonVerdict::Rejected
        } else {
            SingletonVerdict::Inconclusive
        }
    } else if here.diameter <= 2.0 * tol {
        SingletonVerdict::Plausible
    } else if depth > 2 {
        let coarse_depth = depth - 2;
        let coarse = attractor_points(param, coarse_depth)?;
        let scale = tol / param.default_tolerance(depth);
        let prev = collect_overlap(&coarse, scale * param.default_tolerance(coarse_depth));
        if here.diameter < 0.75 * prev.diameter {
            SingletonVerdict::Plausible
        } else {
            SingletonVerdict::Inconclusive
        }
    } else {
        SingletonVerdict::Inconclusive
    };

    let candidate_o = if here.midpoints.is_empty() {
        None
    } else {
        let sum: Complex64 = here.midpoints.iter().sum();
        Some(sum / here.midpoints.len() as f64)
    };
    Ok(OverlapReport {
        depth,
        tolerance: tol,
        pair_count: here.pairs,
        overlap_diameter: here.diameter,
        candidate_o,
        midpoints: here.midpoints,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KneadingSeq {
    pub symbols: Vec<u8>,
}

impl KneadingSeq {
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

impl fmt::Display for KneadingSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.symbols.iter().map(|&b| if b == 0 { '0' } else { '1' }).collect();
        f.write_str(&s)
    }
}

impl core::str::FromStr for KneadingSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::InvalidParameter(format!("kneading symbol {c:?} is not 0 or 1"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(Self { symbols })
    }
}

/// Orbit of `q(o)` under `q` together with its symbols.
#[derive(Debug, Clone, PartialEq)]
pub struct KneadingOrbit {
    pub o: Complex64,
    pub orbit: Vec<Complex64>,
    pub sequence: KneadingSeq,
}

/// Kneading sequence of `q_lambda`: the itinerary of `z_1 = q(o)`,
/// `z_{m+1} = q(z_m)`, with the half containing `q(o)` labelled 1. Halves are
/// decided by the leading address bit of the nearest depth-`depth` point.
/// The overlap search only confirms `o`; its value is the fixed point
/// `1 / (2 (1 - lambda))` of `s`.
pub fn kneading_q(param: &IfsParam, n: usize, depth: usize, tol: Option<f64>) -> Result<KneadingSeq> {
    kneading_q_orbit(param, n, depth, tol).map(|k| k.sequence)
}

pub fn kneading_q_orbit(param: &IfsParam, n: usize, depth: usize, tol: Option<f64>) -> Result<KneadingOrbit> {
    if n == 0 {
        return Err(Error::InvalidParameter("kneading length must be at least 1".into()));
    }
    let tol = tol.unwrap_or_else(|| param.default_tolerance(depth));
    let report = overlap_test(param, depth, Some(tol))?;
    let candidate = report
        .candidate_o
        .ok_or_else(|| Error::Domain("the two halves of the attractor do not meet at this depth".into()))?;
    // s swaps the halves, so a one-point overlap is the fixed point of s
    let o = 0.5 * param.fixed_point_1();
    if (candidate - o).norm() > report.overlap_diameter + tol {
        return Err(Error::Domain(format!("overlap centroid {candidate} is not the fixed point {o} of s")));
    }
    let approx = attractor_points(param, depth)?;
    let index = PointIndex::new(&approx.points, (param.diameter_bound() / (approx.points.len() as f64).sqrt()).max(tol));
    let half_of = |z: Complex64| -> u8 {
        let (i, _) = index.nearest(z).expect("nonempty attractor");
        approx.leading_bit(i)
    };

    let mut z = param.q_branch(0, o);
    let one_half = half_of(z);
    let mut orbit = Vec::with_capacity(n);
    let mut symbols = Vec::with_capacity(n);
    for step in 1..=n {
        if (z - o).norm() <= tol {
            return Err(Error::BranchPoint { step });
        }
        let bit = half_of(z);
        orbit.push(z);
        symbols.push(u8::from(bit == one_half));
        z = param.q_branch(bit, z);
    }
    Ok(KneadingOrbit { o, orbit, sequence: KneadingSeq { symbols } })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KneadingSource {
    /// `f_c(z) = z^2 + c` with real `c`.
    RealQuadratic(f64),
    /// Doubling map with a rational angle in `[0, 1)`.
    ExternalAngle(Q),
}

/// Reference kneading sequences.
///
/// Real case: symbols of `c, f(c), f^2(c), ...` relative to the two sides of
/// 0, the side containing `c` labelled 1. Angle case: symbols of `theta,
/// 2 theta, 4 theta, ...` relative to the partition of the circle by
/// `theta/2` and `(theta + 1)/2`, the arc containing `theta` labelled 1.
pub fn kneading_reference(source: KneadingSource, n: usize) -> Result<KneadingSeq> {
    let mut symbols = Vec::with_capacity(n);
    match source {
        KneadingSource::RealQuadratic(c) => {
            if !c.is_finite() {
                return Err(Error::InvalidParameter(format!("c = {c} is not finite")));
            }
            let bound = 2.0 + c.abs();
            let mut z = c;
            for step in 1..=n {
                if z == 0.0 {
                    return Err(Error::BranchPoint { step });
                }
                if z.abs() > bound {
                    return Err(Error::Escape { step });
                }
                symbols.push(u8::from((z > 0.0) == (c > 0.0)));
                z = z * z + c;
            }
        }
        KneadingSource::ExternalAngle(theta) => {
            let zero = Q::from_integer(0);
            let one = Q::from_integer(1);
            if theta < zero || theta >= one {
                return Err(Error::InvalidParameter(format!("angle {theta} is not in [0, 1)")));
            }
            let two = Q::from_integer(2);
            let a = theta / two;
            let b = (theta + one) / two;
            let inside = |t: Q| a < t && t < b;
            let theta_inside = inside(theta);
            let mut t = theta;
            for step in 1..=n {
                if t == a || t == b {
                    return Err(Error::BranchPoint { step });
                }
                symbols.push(u8::from(inside(t) == theta_inside));
                t = t * two;
                if t >= one {
                    t -= one;
                }
            }
        }
    }
    Ok(KneadingSeq { symbols })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use alloc::string::ToString;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn depth_one() {
        let p = IfsParam::real(0.5).unwrap();
        let a = attractor_points(&p, 1).unwrap();
        assert_eq!(a.points, vec![c(0.0), c(1.0)]);
        assert_eq!(a.address(1), vec![1]);
        assert!(attractor_points(&p, 25).is_err());
    }

    #[test]
    fn addresses_are_msb_first() {
        let p = IfsParam::real(0.5).unwrap();
        let a = attractor_points(&p, 3).unwrap();
        // address 011 -> F_0(F_1(F_1(0))) = 0.5 * (0.5 * 1 + 1) = 0.75
        let i = AttractorApprox::index_of(&[0, 1, 1]);
        assert_eq!(a.points[i], c(0.75));
        assert_eq!(a.points[0], c(0.0));
    }

    #[test]
    fn half_overlap() {
        let p = IfsParam::real(0.5).unwrap();
        let r = overlap_test(&p, 12, None).unwrap();
        assert_eq!(r.verdict, SingletonVerdict::Plausible);
        assert!((r.candidate_o.unwrap() - c(1.0)).norm() < 1e-2);
    }

    #[test]
    fn small_lambda_rejected() {
        let p = IfsParam::real(0.1).unwrap();
        let r = overlap_test(&p, 12, None).unwrap();
        assert_eq!(r.verdict, SingletonVerdict::Rejected);
        assert!(r.candidate_o.is_none());
    }

    #[test]
    fn half_kneading() {
        let p = IfsParam::real(0.5).unwrap();
        let k = kneading_q_orbit(&p, 4, 12, None).unwrap();
        assert_eq!(k.sequence.to_string(), "1000");
        assert!((k.orbit[0] - c(2.0)).norm() < 1e-2);
        assert!(k.orbit[1].norm() < 1e-2);
        assert_eq!(kneading_q(&p, 1, 12, None).unwrap().to_string(), "1");
    }

    #[test]
    fn references() {
        assert_eq!(kneading_reference(KneadingSource::RealQuadratic(-2.0), 4).unwrap().to_string(), "1000");
        assert_eq!(kneading_reference(KneadingSource::ExternalAngle(q(1, 2)), 3).unwrap().to_string(), "100");
        assert!(matches!(kneading_reference(KneadingSource::RealQuadratic(-2.5), 8), Err(Error::Escape { .. })));
        assert!(matches!(kneading_reference(KneadingSource::RealQuadratic(0.0), 2), Err(Error::BranchPoint { step: 1 })));
    }

    #[test]
    fn basilica_angle() {
        // theta = 1/3: 1/3 -> 2/3 -> 1/3, partition {1/6, 2/3}; 2/3 hits the
        // partition point
        assert!(kneading_reference(KneadingSource::ExternalAngle(q(1, 3)), 3).is_err());
        // theta = 1/7: orbit 1/7, 2/7, 4/7 with partition {1/14, 4/7}
        assert!(kneading_reference(KneadingSource::ExternalAngle(q(1, 7)), 3).is_err());
        // theta = 1/5: 1/5, 2/5, 4/5 against {1/10, 3/5}, then 3/5 is hit
        let k = kneading_reference(KneadingSource::ExternalAngle(q(1, 5)), 3).unwrap();
        assert_eq!(k.to_string(), "110");
        assert!(kneading_reference(KneadingSource::ExternalAngle(q(1, 5)), 4).is_err());
    }

    #[test]
    fn hull_diameter() {
        let pts = [c(0.0), c(1.0), Complex64::new(0.5, 0.2), Complex64::new(0.5, -0.1)];
        assert!((point_set_diameter(&pts) - 1.0).abs() < 1e-15);
        assert_eq!(point_set_diameter(&[]), 0.0);
    }
}
