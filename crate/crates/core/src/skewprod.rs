//! The circle skew product `f(x, t) = (g(x), d(e) t)` over the interval
//! system, on `C x T` with the metric `d_alpha + d_T`.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::dimension::{solve_exponent, ExponentMode};
use crate::error::{Error, Result};
use crate::gdms::{max_cylinder_diameter, CylinderWord, GdmsPoint, IntervalSystem};
use crate::stats::{fit_line, LineFit};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SkewPoint {
    pub base: GdmsPoint,
    /// Coordinate on `R/Z`, in `[0, 1)`.
    pub angle: f64,
}

impl SkewPoint {
    pub fn new(base: GdmsPoint, angle: f64) -> Self {
        Self { base, angle: wrap(angle) }
    }
}

fn wrap(t: f64) -> f64 {
    let f = t - t.floor();
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

pub fn circle_distance(a: f64, b: f64) -> f64 {
    let d = wrap(a - b);
    d.min(1.0 - d)
}

pub fn skew_map(sys: &IntervalSystem, p: &SkewPoint) -> Result<SkewPoint> {
    let e = sys.edge_containing(&p.base).ok_or_else(|| {
        Error::Domain(alloc::format!(
            "base coordinate {} of component {} lies in no J_e",
            p.base.coordinate,
            p.base.component + 1
        ))
    })?;
    let d = sys.graph().edge(e).degree as f64;
    Ok(SkewPoint { base: sys.map_on_edge(e, p.base.coordinate), angle: wrap(d * p.angle) })
}

pub fn skew_distance(sys: &IntervalSystem, p: &SkewPoint, q: &SkewPoint) -> f64 {
    sys.distance(&p.base, &q.base, true) + circle_distance(p.angle, q.angle)
}

/// Dimension of the repellor `C x T`.
///
/// The metric `d_alpha + d_T` realizes the conformal dimension of the
/// repellor, so `dimension` is also its conformal dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewDimension {
    /// Hausdorff dimension `s` of `C` in `d_alpha`.
    pub base_dimension: f64,
    /// `1 + s`.
    pub dimension: f64,
    pub realizes_conformal_dimension: bool,
}

pub fn skew_dimension(sys: &IntervalSystem, tol: f64) -> Result<SkewDimension> {
    let s = solve_exponent(sys.graph(), ExponentMode::Conformal, tol)?.exponent;
    Ok(SkewDimension { base_dimension: s, dimension: 1.0 + s, realizes_conformal_dimension: true })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProductBoxDimension {
    pub estimate: f64,
    pub samples: Vec<(f64, f64)>,
    pub fit: LineFit,
}

/// Box-counting estimate over product covers: a stopping-time cylinder
/// cover at scale `r` times `ceil(1/r)` arcs of length at most `r`.
pub fn product_box_dimension(sys: &IntervalSystem, depths: core::ops::RangeInclusive<usize>) -> Result<ProductBoxDimension> {
    let mut samples = Vec::new();
    for m in depths {
        let r = max_cylinder_diameter(sys, m, true);
        let cylinders = sys.stopping_cover_count(r, true, m + 64) as f64;
        let arcs = (1.0 / r).ceil();
        samples.push(((1.0 / r).ln(), (cylinders * arcs).ln()));
    }
    let fit = fit_line(&samples).ok_or_else(|| Error::Degenerate("need at least two distinct scales".into()))?;
    Ok(ProductBoxDimension { estimate: fit.slope, samples, fit })
}

/// Random admissible word of length `depth` from `start`, choosing each edge
/// uniformly among the out-edges of the current vertex.
pub fn random_word<R: Rng + ?Sized>(sys: &IntervalSystem, start: usize, depth: usize, rng: &mut R) -> CylinderWord {
    let g = sys.graph();
    let mut word = CylinderWord::root(start);
    let mut v = start;
    for _ in 0..depth {
        let out: Vec<usize> = g.out_edges(v).collect();
        let e = out[rng.gen_range(0..out.len())];
        word.edges.push(e);
        v = g.edge(e).dst;
    }
    word
}

/// An orbit of length `steps` starting near `C`. Base points are computed
/// symbolically (`x_k` is the cylinder point of the shifted word) so the orbit
/// never drifts off `J_1` through rounding.
pub fn sample_orbit<R: Rng + ?Sized>(sys: &IntervalSystem, steps: usize, rng: &mut R) -> Vec<SkewPoint> {
    let g = sys.graph();
    let start = rng.gen_range(0..g.vertex_count());
    let tail = 48;
    let word = random_word(sys, start, steps + tail, rng);
    let end = word.end(g);
    let anchor = sys.base_interval(end).mid();
    let mut angle = rng.gen::<f64>();
    let mut out = Vec::with_capacity(steps + 1);
    let mut v = start;
    for k in 0..=steps {
        let shifted = CylinderWord { start: v, edges: word.edges[k..].to_vec() };
        let x = sys.cylinder_point(&shifted, anchor);
        out.push(SkewPoint::new(GdmsPoint { component: v, coordinate: x }, angle));
        if k < steps {
            let e = word.edges[k];
            angle = wrap(g.edge(e).degree as f64 * angle);
            v = g.edge(e).dst;
        }
    }
    out
}
