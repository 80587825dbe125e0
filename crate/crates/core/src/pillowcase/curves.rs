//! Pullback of closed curves under `f_a` by continuation, and the Thurston
//! matrix of a multicurve.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::map::{check_a, preimages};
use super::tent::postcritical_set;
use super::{canonicalize, half, orb_distance, OrbPoint, Vec2};
use crate::dimension::nonneg_spectral_radius;
use crate::error::{Error, Result};
use crate::rational::{to_f64, Q};

pub const DEFAULT_SAMPLES_PER_SEGMENT: usize = 64;
const POSTCRITICAL_CLEARANCE: f64 = 1e-9;

/// One connected component of `f_a^{-1}(curve)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PreimageCurve {
    /// Closed polyline; the last point connects back to the first.
    pub points: Vec<OrbPoint>,
    /// Degree of `f_a` restricted to this component.
    pub degree: usize,
}

impl PreimageCurve {
    /// `|y|` if every point has the same `|y|` (a horizontal circle).
    pub fn horizontal_height(&self) -> Option<Q> {
        let h = self.points.first()?.y().abs();
        self.points.iter().all(|p| p.y().abs() == h).then_some(h)
    }
}

fn sample_curve(vertices: &[Vec2], per_segment: usize) -> Result<Vec<OrbPoint>> {
    if vertices.len() < 2 || per_segment == 0 {
        return Err(Error::InvalidParameter("a closed curve needs at least two vertices and one sample per segment".into()));
    }
    let first = canonicalize(vertices[0]).0;
    let last = canonicalize(vertices[vertices.len() - 1]).0;
    if first != last {
        return Err(Error::InvalidParameter("curve is not closed: last vertex is not identified with the first".into()));
    }
    let mut out = Vec::new();
    let steps = per_segment as i128;
    for w in vertices.windows(2) {
        let (p, q) = (w[0], w[1]);
        for k in 0..steps {
            let t = Q::new(k, steps);
            out.push(canonicalize([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]).0);
        }
    }
    Ok(out)
}

/// Connected components of `f_a^{-1}(curve)`, with degrees. The curve is a
/// planar polyline whose last vertex is identified with its first; each
/// segment is sampled `per_segment` times and the four preimages of every
/// sample are matched to the nearest preimage of the previous sample.
pub fn curve_preimage(a: Q, vertices: &[Vec2], per_segment: usize) -> Result<Vec<PreimageCurve>> {
    check_a(a)?;
    let samples = sample_curve(vertices, per_segment)?;
    let post = postcritical_set(a, 10_000)?;
    for s in &samples {
        if post.iter().any(|p| orb_distance(p, s) <= POSTCRITICAL_CLEARANCE) {
            return Err(Error::InvalidParameter(alloc::format!("curve passes through the postcritical point {s}")));
        }
    }

    let simple = |k: usize, p: &OrbPoint| -> Result<Vec<OrbPoint>> {
        let pre = preimages(a, p)?;
        if pre.len() != 4 {
            return Err(Error::Ambiguous { sample: k });
        }
        Ok(pre.into_iter().map(|(q, _)| q).collect())
    };

    let start = simple(0, &samples[0])?;
    let mut tracks: Vec<Vec<OrbPoint>> = start.iter().map(|p| vec![*p]).collect();
    let n = samples.len();
    for k in 1..=n {
        let target = if k == n { start.clone() } else { simple(k, &samples[k])? };
        let mut used = [false; 4];
        for track in tracks.iter_mut() {
            let cur = *track.last().expect("nonempty track");
            let mut d: Vec<(f64, usize)> = target.iter().enumerate().map(|(i, q)| (orb_distance(&cur, q), i)).collect();
            d.sort_by(|x, y| x.0.total_cmp(&y.0));
            if !(d[1].0 > 2.0 * d[0].0) || used[d[0].1] {
                return Err(Error::Ambiguous { sample: k });
            }
            used[d[0].1] = true;
            track.push(target[d[0].1]);
        }
    }

    // each track ends at the start of some track: follow the permutation
    let successor: Vec<usize> = tracks
        .iter()
        .map(|t| start.iter().position(|s| s == t.last().expect("nonempty")).expect("ends at a start point"))
        .collect();
    let mut visited = [false; 4];
    let mut curves = Vec::new();
    for i in 0..4 {
        if visited[i] {
            continue;
        }
        let mut points = Vec::new();
        let mut j = i;
        let mut degree = 0;
        while !visited[j] {
            visited[j] = true;
            degree += 1;
            let t = &tracks[j];
            points.extend_from_slice(&t[..t.len() - 1]);
            j = successor[j];
        }
        curves.push(PreimageCurve { points, degree });
    }
    Ok(curves)
}

/// Horizontal circles at heights `h1`, `h2` in `(0, 1/2)` are isotopic in
/// the complement of `post` iff no point of `post` has `|y|` between them.
pub fn horizontal_isotopic(h1: Q, h2: Q, post: &[OrbPoint]) -> bool {
    let (lo, hi) = if h1 <= h2 { (h1, h2) } else { (h2, h1) };
    lo > Q::zero() && hi < half() && post.iter().all(|p| {
        let y = p.y().abs();
        y < lo || y > hi
    })
}

/// Preimage components of multicurve element `source`: for each, the
/// element it is isotopic to (if any) and its degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullbackData {
    pub source: usize,
    pub preimages: Vec<(Option<usize>, usize)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThurstonMatrix {
    pub matrix: Vec<Vec<Q>>,
    pub radius: f64,
    pub obstructed: bool,
    /// Preimage components not isotopic to any element.
    pub dropped: usize,
}

/// Entry `(i, j)` sums `1/deg` over preimages of `gamma_j` isotopic to
/// `gamma_i`. Radius at least 1 flags an obstruction.
pub fn thurston_matrix(size: usize, data: &[PullbackData]) -> Result<ThurstonMatrix> {
    let mut matrix = vec![vec![Q::zero(); size]; size];
    let mut dropped = 0;
    for d in data {
        if d.source >= size {
            return Err(Error::InvalidParameter(alloc::format!("curve index {} out of range", d.source)));
        }
        for &(target, degree) in &d.preimages {
            match target {
                Some(i) if i < size && degree > 0 => matrix[i][d.source] += Q::new(1, degree as i128),
                _ => dropped += 1,
            }
        }
    }
    let float: Vec<Vec<f64>> = matrix.iter().map(|r| r.iter().map(|&x| to_f64(x)).collect()).collect();
    let radius = nonneg_spectral_radius(&float, 1e-12)?.radius;
    Ok(ThurstonMatrix { matrix, radius, obstructed: radius >= 1.0 - 1e-9, dropped })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObstructionReport {
    pub a: Q,
    pub curve_height: Q,
    /// `(|y| if horizontal, degree, isotopic to the curve)` per component.
    pub preimages: Vec<(Option<Q>, usize, bool)>,
    pub thurston: ThurstonMatrix,
    /// `a = 0` is the Lattes map, where the invariant curve is not an
    /// obstruction.
    pub lattes: bool,
    pub obstructed: bool,
}

/// Pulls back the horizontal curve at height `1/4` and builds its Thurston
/// matrix.
pub fn obstruction_report(a: Q) -> Result<ObstructionReport> {
    let height = Q::new(1, 4);
    let curve = [[Q::zero(), height], [Q::from_integer(1), height]];
    let comps = curve_preimage(a, &curve, DEFAULT_SAMPLES_PER_SEGMENT)?;
    let post = postcritical_set(a, 10_000)?;
    let mut pre = Vec::new();
    let mut data = PullbackData { source: 0, preimages: Vec::new() };
    for c in &comps {
        let h = c.horizontal_height();
        let iso = h.is_some_and(|h| horizontal_isotopic(h, height, &post));
        pre.push((h, c.degree, iso));
        data.preimages.push((iso.then_some(0), c.degree));
    }
    let thurston = thurston_matrix(1, &[data])?;
    let lattes = a.is_zero();
    let obstructed = thurston.obstructed && !lattes;
    Ok(ObstructionReport { a, curve_height: height, preimages: pre, thurston, lattes, obstructed })
}
