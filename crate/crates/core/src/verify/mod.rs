//! Numerical verification of the topological CXC conditions for a system
//! exposed through [`SystemAdapter`]: pullback cover sequences, degree
//! bounds, roundness and diameter distortion, eventual onto-ness, and
//! visual-metric and snowflake fits.

mod adapters;
mod grid;

pub use adapters::{GdmsAdapter, HalfIntervalAdapter, MengerAdapter, MengerBox, SkewAdapter, SkewCell};
pub use grid::{CellSet, GridCover, PillowGridAdapter, DEFAULT_RESOLUTION};

use alloc::vec::Vec;
use core::ops::RangeInclusive;

#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::stats::fit_line;

/// Interface between a concrete dynamical system and the generic checks.
pub trait SystemAdapter {
    type Point: Clone + core::fmt::Debug;
    type Element: Clone + core::fmt::Debug + PartialEq;

    fn evaluate(&self, p: &Self::Point) -> Result<Self::Point>;
    /// Components of `f^{-1}(e)`, each with the degree of `f` onto `e`.
    fn preimage_components(&self, e: &Self::Element) -> Result<Vec<(Self::Element, u32)>>;
    fn metric(&self, p: &Self::Point, q: &Self::Point) -> f64;
    fn sample_points(&self, e: &Self::Element, count: usize) -> Vec<Self::Point>;
    fn ambient_cover0(&self) -> Vec<Self::Element>;
    fn diameter(&self, e: &Self::Element) -> f64;
    fn center(&self, e: &Self::Element) -> Self::Point;
    /// `L / l` about `basepoint`; an error when the basepoint is not interior.
    fn roundness(&self, e: &Self::Element, basepoint: &Self::Point) -> Result<f64>;
    fn contains(&self, outer: &Self::Element, inner: &Self::Element) -> bool;
    fn contains_point(&self, e: &Self::Element, p: &Self::Point) -> bool;

    fn forward_image(&self, _e: &Self::Element) -> Option<Vec<Self::Element>> {
        None
    }

    fn covers_space(&self, _elements: &[Self::Element]) -> Option<bool> {
        None
    }

    /// Exact local expansion ratio of `f` at the pair, when `f` is a
    /// similarity on a neighbourhood containing both points.
    fn local_scaling(&self, _p: &Self::Point, _q: &Self::Point) -> Option<f64> {
        None
    }
}

/// `L / l` from sampled points: `outer` approximates the element, `boundary`
/// the frontier between the element and its complement.
pub fn roundness_from_samples<P>(basepoint: &P, outer: &[P], boundary: &[P], metric: impl Fn(&P, &P) -> f64) -> Result<f64> {
    let big = outer.iter().map(|p| metric(basepoint, p)).fold(0.0, f64::max);
    let small = boundary.iter().map(|p| metric(basepoint, p)).fold(big, f64::min);
    if small <= 0.0 || big <= 0.0 {
        return Err(Error::Degenerate("basepoint is not an interior point".into()));
    }
    Ok(big / small)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverNode<E> {
    pub element: E,
    /// Index in the previous level of the element this one maps onto.
    pub parent: Option<usize>,
    pub degree: u32,
}

/// The sequence `U_0, U_1, ...` with `U_{n+1}` the components of preimages
/// of elements of `U_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverSequence<E> {
    levels: Vec<Vec<CoverNode<E>>>,
    mesh: Vec<f64>,
}

impl<E> CoverSequence<E> {
    pub fn levels(&self) -> &[Vec<CoverNode<E>>] {
        &self.levels
    }

    pub fn level(&self, n: usize) -> &[CoverNode<E>] {
        &self.levels[n]
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn mesh(&self) -> &[f64] {
        &self.mesh
    }

    /// Index at level `n - k` of the `k`-th ancestor of element `i` of level `n`.
    pub fn ancestor(&self, n: usize, i: usize, k: usize) -> usize {
        let mut idx = i;
        for step in 0..k {
            idx = self.levels[n - step][idx].parent.expect("levels above zero have parents");
        }
        idx
    }

    /// Degree of `f^k` from element `i` of level `n` onto its ancestor.
    pub fn chain_degree(&self, n: usize, i: usize, k: usize) -> u64 {
        let mut idx = i;
        let mut deg = 1u64;
        for step in 0..k {
            let node = &self.levels[n - step][idx];
            deg *= node.degree as u64;
            idx = node.parent.expect("levels above zero have parents");
        }
        deg
    }
}

pub fn initial_cover<A: SystemAdapter>(adapter: &A) -> Result<CoverSequence<A::Element>> {
    let level: Vec<_> = adapter.ambient_cover0().into_iter().map(|element| CoverNode { element, parent: None, degree: 1 }).collect();
    if level.is_empty() {
        return Err(Error::Degenerate("initial cover is empty".into()));
    }
    let mesh = level.iter().map(|n| adapter.diameter(&n.element)).fold(0.0, f64::max);
    Ok(CoverSequence { levels: alloc::vec![level], mesh: alloc::vec![mesh] })
}

/// Appends the next level. Fails when it would exceed `max_elements`.
pub fn refine<A: SystemAdapter>(adapter: &A, covers: &mut CoverSequence<A::Element>, max_elements: usize) -> Result<()> {
    let last = covers.levels.last().expect("cover sequences are nonempty");
    let mut next = Vec::new();
    for (i, node) in last.iter().enumerate() {
        for (element, degree) in adapter.preimage_components(&node.element)? {
            next.push(CoverNode { element, parent: Some(i), degree });
            if next.len() > max_elements {
                return Err(Error::InvalidParameter(alloc::format!(
                    "level {} has more than {max_elements} elements",
                    covers.levels.len()
                )));
            }
        }
    }
    let mesh = next.iter().map(|n| adapter.diameter(&n.element)).fold(0.0, f64::max);
    covers.levels.push(next);
    covers.mesh.push(mesh);
    Ok(())
}

pub fn build_covers<A: SystemAdapter>(adapter: &A, depth: usize, max_elements: usize) -> Result<CoverSequence<A::Element>> {
    let mut covers = initial_cover(adapter)?;
    for _ in 0..depth {
        refine(adapter, &mut covers, max_elements)?;
    }
    Ok(covers)
}

/// Ratio `exp(slope)` of a least-squares fit of `log mesh` against the level.
pub fn mesh_decay<E>(covers: &CoverSequence<E>) -> Result<f64> {
    let pts: Vec<(f64, f64)> = covers.mesh.iter().enumerate().filter(|(_, &m)| m > 0.0).map(|(n, m)| (n as f64, m.ln())).collect();
    let fit = fit_line(&pts).ok_or_else(|| Error::Degenerate("need two levels with positive mesh".into()))?;
    Ok(fit.slope.exp())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReport {
    /// Entry `k - 1` is the largest degree of `f^k` over chains of length `k`.
    pub max_by_k: Vec<u64>,
    pub max_degree: u64,
}

pub fn degree_report<E>(covers: &CoverSequence<E>, k_max: usize) -> DegreeReport {
    let k_max = k_max.min(covers.depth());
    let mut max_by_k = alloc::vec![0u64; k_max];
    for k in 1..=k_max {
        for n in k..=covers.depth() {
            for i in 0..covers.levels[n].len() {
                max_by_k[k - 1] = max_by_k[k - 1].max(covers.chain_degree(n, i, k));
            }
        }
    }
    let max_degree = max_by_k.iter().copied().max().unwrap_or(1).max(1);
    DegreeReport { max_by_k, max_degree }
}

/// Sampled check that each element maps into its parent and that the images
/// come close to every sample of the parent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefinementCheck {
    pub pairs: usize,
    pub outside: usize,
    /// Largest distance from a parent sample to the sampled image, relative
    /// to the parent's diameter.
    pub max_gap: f64,
}

pub fn check_refinement<A: SystemAdapter>(
    adapter: &A,
    covers: &CoverSequence<A::Element>,
    samples: usize,
    max_pairs_per_level: usize,
) -> Result<RefinementCheck> {
    let mut out = RefinementCheck { pairs: 0, outside: 0, max_gap: 0.0 };
    for n in 1..=covers.depth() {
        let level = &covers.levels[n];
        let stride = (level.len() / max_pairs_per_level.max(1)).max(1);
        for node in level.iter().step_by(stride) {
            let parent = &covers.levels[n - 1][node.parent.expect("parent")].element;
            let images: Vec<A::Point> =
                adapter.sample_points(&node.element, samples).iter().map(|p| adapter.evaluate(p)).collect::<Result<_>>()?;
            out.outside += images.iter().filter(|p| !adapter.contains_point(parent, p)).count();
            let diam = adapter.diameter(parent);
            for p in adapter.sample_points(parent, samples.div_ceil(4).max(1)) {
                let gap = images.iter().map(|q| adapter.metric(&p, q)).fold(f64::INFINITY, f64::min);
                if diam > 0.0 {
                    out.max_gap = out.max_gap.max(gap / diam);
                }
            }
            out.pairs += 1;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistortionKind {
    Roundness,
    Diameter,
}

impl DistortionKind {
    pub fn name(&self) -> &'static str {
        match self {
            DistortionKind::Roundness => "roundness",
            DistortionKind::Diameter => "diameter",
        }
    }
}

/// One sampled pair. For roundness, `value_in` is the roundness of `U` about
/// `y` and `value_out` that of the pulled-back `U~` about `y~`. For diameters,
/// `value_in = diam U' / diam U` and `value_out = diam U~' / diam U~`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistortionRow {
    pub kind: DistortionKind,
    pub n: usize,
    pub k: usize,
    pub value_in: f64,
    pub value_out: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistortionReport {
    pub rows: Vec<DistortionRow>,
    pub skipped: usize,
    /// Running maximum of `value_out` over increasing `value_in`.
    pub roundness_envelope: Vec<(f64, f64)>,
    pub diameter_envelope: Vec<(f64, f64)>,
}

fn envelope(rows: &[DistortionRow], kind: DistortionKind) -> Vec<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = rows.iter().filter(|r| r.kind == kind).map(|r| (r.value_in, r.value_out)).collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut best = f64::NEG_INFINITY;
    for p in pts.iter_mut() {
        best = best.max(p.1);
        p.1 = best;
    }
    pts
}

/// Samples roundness and nested-diameter pairs for `f^k` with `1 <= k <= k_max`.
pub fn distortion_report<A: SystemAdapter>(
    adapter: &A,
    covers: &CoverSequence<A::Element>,
    k_max: usize,
    samples: usize,
    seed: u64,
) -> Result<DistortionReport> {
    let depth = covers.depth();
    if k_max == 0 || k_max > depth {
        return Err(Error::InvalidParameter(alloc::format!("k must lie in 1..={depth}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut skipped = 0;

    for _ in 0..samples {
        let k = rng.gen_range(1..=k_max);
        let top = rng.gen_range(k..=depth);
        let i = rng.gen_range(0..covers.levels[top].len());
        let j = covers.ancestor(top, i, k);
        let pulled = &covers.levels[top][i].element;
        let image = &covers.levels[top - k][j].element;
        let y_tilde = adapter.center(pulled);
        let mut y = y_tilde.clone();
        for _ in 0..k {
            y = adapter.evaluate(&y)?;
        }
        match (adapter.roundness(image, &y), adapter.roundness(pulled, &y_tilde)) {
            (Ok(r_in), Ok(r_out)) => {
                rows.push(DistortionRow { kind: DistortionKind::Roundness, n: top - k, k, value_in: r_in, value_out: r_out })
            }
            _ => skipped += 1,
        }
    }

    if depth >= 2 {
        for _ in 0..samples {
            let k = rng.gen_range(1..=k_max.min(depth - 1));
            let inner_level = rng.gen_range(k + 1..=depth);
            let outer_level = rng.gen_range(k..inner_level);
            let i = rng.gen_range(0..covers.levels[inner_level].len());
            let inner = &covers.levels[inner_level][i].element;
            let candidates: Vec<usize> = covers.levels[outer_level]
                .iter()
                .enumerate()
                .filter(|(_, n)| adapter.contains(&n.element, inner))
                .map(|(idx, _)| idx)
                .collect();
            if candidates.is_empty() {
                skipped += 1;
                continue;
            }
            let o = candidates[rng.gen_range(0..candidates.len())];
            let outer = &covers.levels[outer_level][o].element;
            let inner_img = &covers.levels[inner_level - k][covers.ancestor(inner_level, i, k)].element;
            let outer_img = &covers.levels[outer_level - k][covers.ancestor(outer_level, o, k)].element;
            let (di, dout) = (adapter.diameter(outer_img), adapter.diameter(outer));
            if di <= 0.0 || dout <= 0.0 {
                skipped += 1;
                continue;
            }
            rows.push(DistortionRow {
                kind: DistortionKind::Diameter,
                n: outer_level - k,
                k,
                value_in: adapter.diameter(inner_img) / di,
                value_out: adapter.diameter(inner) / dout,
            });
        }
    }

    let roundness_envelope = envelope(&rows, DistortionKind::Roundness);
    let diameter_envelope = envelope(&rows, DistortionKind::Diameter);
    Ok(DistortionReport { rows, skipped, roundness_envelope, diameter_envelope })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Onto {
    /// The union of `f^k(W)`, `k <= n`, is the whole space.
    After(usize),
    NotWithin(usize),
}

/// Smallest `n` with `f^0(W) u ... u f^n(W) = X`, using the adapter's
/// symbolic forward images.
pub fn eventually_onto_check<A: SystemAdapter>(adapter: &A, element: &A::Element, max_iter: usize) -> Result<Onto> {
    let unsupported = || Error::InvalidParameter("this system has no symbolic forward images".into());
    let mut current = alloc::vec![element.clone()];
    let mut seen = current.clone();
    if adapter.covers_space(&seen).ok_or_else(unsupported)? {
        return Ok(Onto::After(0));
    }
    for n in 1..=max_iter {
        let mut next: Vec<A::Element> = Vec::new();
        for e in &current {
            for img in adapter.forward_image(e).ok_or_else(unsupported)? {
                if !next.contains(&img) {
                    next.push(img);
                }
            }
        }
        for e in &next {
            if !seen.contains(e) {
                seen.push(e.clone());
            }
        }
        if adapter.covers_space(&seen).ok_or_else(unsupported)? {
            return Ok(Onto::After(n));
        }
        current = next;
    }
    Ok(Onto::NotWithin(max_iter))
}

pub const DEFAULT_SPREAD_BOUND: f64 = 8.0;

#[derive(Debug, Clone, PartialEq)]
pub struct VisualMetricReport {
    pub epsilon: f64,
    /// `max / min` of `diam(U) e^{epsilon n}` over the sampled elements.
    pub spread: f64,
    pub roundness_sup: f64,
    /// Largest relative deviation from the exact local scaling, or `None`
    /// when the system offers no local similarity data.
    pub local_similarity_error: Option<f64>,
    pub elements: usize,
    pub passed: bool,
}

/// Fits `diam U ~ e^{-epsilon n}` over `levels`, bounds the roundness of
/// every sampled element about its center, and checks local similarity
/// where available.
pub fn visual_metric_check<A: SystemAdapter>(
    adapter: &A,
    covers: &CoverSequence<A::Element>,
    levels: RangeInclusive<usize>,
    spread_bound: f64,
    max_per_level: usize,
) -> Result<VisualMetricReport> {
    let (lo, hi) = (*levels.start(), *levels.end());
    if hi > covers.depth() || hi < lo + 3 {
        return Err(Error::InvalidParameter(alloc::format!(
            "need at least four levels within 0..={}, got {lo}..={hi}",
            covers.depth()
        )));
    }
    let mut pts = Vec::new();
    let mut roundness_sup: f64 = 0.0;
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    for n in lo..=hi {
        let level = &covers.levels[n];
        let stride = (level.len() / max_per_level.max(1)).max(1);
        for i in (0..level.len()).step_by(stride) {
            let e = &level[i].element;
            let d = adapter.diameter(e);
            if d > 0.0 {
                pts.push((n as f64, -d.ln()));
                chosen.push((n, i));
            }
            let r = adapter.roundness(e, &adapter.center(e)).unwrap_or(f64::INFINITY);
            roundness_sup = roundness_sup.max(r);
        }
    }
    let fit = fit_line(&pts).ok_or_else(|| Error::Degenerate("diameters do not vary with the level".into()))?;
    let eps = fit.slope;
    let (mut cmin, mut cmax) = (f64::INFINITY, 0.0f64);
    for &(n, i) in &chosen {
        let c = adapter.diameter(&covers.levels[n][i].element) * (eps * n as f64).exp();
        cmin = cmin.min(c);
        cmax = cmax.max(c);
    }
    let spread = cmax / cmin;

    let mut local: Option<f64> = None;
    let level = &covers.levels[hi];
    let stride = (level.len() / max_per_level.max(1)).max(1);
    for node in level.iter().step_by(stride) {
        let pts = adapter.sample_points(&node.element, 4);
        for w in pts.windows(2) {
            if let Some(r) = adapter.local_scaling(&w[0], &w[1]) {
                let d = adapter.metric(&w[0], &w[1]);
                if d <= 0.0 {
                    continue;
                }
                let measured = adapter.metric(&adapter.evaluate(&w[0])?, &adapter.evaluate(&w[1])?) / d;
                let err = (measured / r - 1.0).abs();
                local = Some(local.map_or(err, |x: f64| x.max(err)));
            }
        }
    }

    let passed = spread <= spread_bound && roundness_sup.is_finite() && local.is_none_or(|e| e < 1e-6);
    Ok(VisualMetricReport { epsilon: eps, spread, roundness_sup, local_similarity_error: local, elements: chosen.len(), passed })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnowflakeFit {
    /// Slope of `log d_b` against `log d_a`.
    pub exponent: f64,
    pub residual_band: f64,
    pub count: usize,
}

pub const MIN_SNOWFLAKE_PAIRS: usize = 100;

/// Fits `d_b ~ C d_a^exponent` over sampled distance pairs `(d_a, d_b)`.
pub fn snowflake_fit(pairs: &[(f64, f64)]) -> Result<SnowflakeFit> {
    if pairs.len() < MIN_SNOWFLAKE_PAIRS {
        return Err(Error::InvalidParameter(alloc::format!(
            "need at least {MIN_SNOWFLAKE_PAIRS} pairs, got {}",
            pairs.len()
        )));
    }
    if pairs.iter().any(|&(a, b)| !(a > 0.0) || !(b > 0.0)) {
        return Err(Error::Degenerate("zero distance in sample".into()));
    }
    let pts: Vec<(f64, f64)> = pairs.iter().map(|&(a, b)| (a.ln(), b.ln())).collect();
    let fit = fit_line(&pts).ok_or_else(|| Error::Degenerate("all sampled d_a values are equal".into()))?;
    Ok(SnowflakeFit { exponent: fit.slope, residual_band: fit.residual_band, count: fit.count })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn interval_roundness() {
        let m = |a: &f64, b: &f64| (a - b).abs();
        let ends = [0.0, 1.0];
        assert!((roundness_from_samples(&0.5, &ends, &ends, m).unwrap() - 1.0).abs() < 1e-15);
        assert!((roundness_from_samples(&0.25, &ends, &ends, m).unwrap() - 3.0).abs() < 1e-15);
        assert!(roundness_from_samples(&0.0, &ends, &ends, m).is_err());
    }

    #[test]
    fn snowflake_examples() {
        let pairs: Vec<(f64, f64)> = (1..=200).map(|i| (i as f64 / 200.0, (i as f64 / 200.0).sqrt())).collect();
        let f = snowflake_fit(&pairs).unwrap();
        assert!((f.exponent - 0.5).abs() < 1e-12);
        let pairs: Vec<(f64, f64)> = (1..=200).map(|i| (i as f64, 3.0 * i as f64)).collect();
        let f = snowflake_fit(&pairs).unwrap();
        assert!((f.exponent - 1.0).abs() < 1e-12 && f.residual_band < 1e-12);
        assert!(snowflake_fit(&pairs[..50]).is_err());
        let mut z = pairs.clone();
        z[3].0 = 0.0;
        assert!(snowflake_fit(&z).is_err());
    }

    #[test]
    fn envelope_is_running_max() {
        let row = |i, o| DistortionRow { kind: DistortionKind::Roundness, n: 0, k: 1, value_in: i, value_out: o };
        let e = envelope(&[row(2.0, 1.0), row(1.0, 3.0), row(3.0, 2.0)], DistortionKind::Roundness);
        assert_eq!(e, vec![(1.0, 3.0), (2.0, 3.0), (3.0, 3.0)]);
    }
}
