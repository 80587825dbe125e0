//! The interval system built from a valid weighted graph and a snowflake
//! parameter `alpha`.
//!
//! Every vertex `i` gets a base interval `I_i` of length `w_i` (the Perron
//! vector of `A_alpha`), every edge `e: i -> j` a subinterval `J_e` of `I_i`
//! of length `w_j d(e)^(-1/alpha)`, and `g` maps `J_e` affinely onto `I_j`.
//! The inverse branches form a graph-directed system whose limit set is a
//! Cantor set `C`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::dimension::perron_vector;
use crate::error::{Error, Result};
use crate::multigraph::{validate_graph, WeightedDigraph};
use crate::stats::{fit_line, LineFit};

/// Gap between consecutive base intervals in the global placement.
const COMPONENT_SPACING: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub left: f64,
    pub right: f64,
}

impl Interval {
    pub fn new(left: f64, right: f64) -> Self {
        Self { left, right }
    }

    pub fn len(&self) -> f64 {
        self.right - self.left
    }

    pub fn is_empty(&self) -> bool {
        self.right <= self.left
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.left + self.right)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.left <= x && x <= self.right
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.left <= other.left && other.right <= self.right
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GdmsPoint {
    pub component: usize,
    /// Global coordinate inside the base interval of `component`.
    pub coordinate: f64,
}

/// An admissible edge path `e_1 ... e_m` starting in base interval `start`.
/// Its cylinder is the set of points whose first `m` steps under `g` follow
/// the path.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CylinderWord {
    pub start: usize,
    pub edges: Vec<usize>,
}

impl CylinderWord {
    pub fn root(start: usize) -> Self {
        Self { start, edges: Vec::new() }
    }

    pub fn depth(&self) -> usize {
        self.edges.len()
    }

    /// Vertex whose base interval the last symbol maps onto.
    pub fn end(&self, g: &WeightedDigraph) -> usize {
        self.edges.last().map_or(self.start, |&e| g.edge(e).dst)
    }

    pub fn is_admissible(&self, g: &WeightedDigraph) -> bool {
        let mut v = self.start;
        for &e in &self.edges {
            let ed = g.edge(e);
            if ed.src != v {
                return false;
            }
            v = ed.dst;
        }
        true
    }

    pub fn is_prefix_of(&self, other: &CylinderWord) -> bool {
        self.start == other.start && other.edges.starts_with(&self.edges)
    }
}

#[derive(Debug, Clone)]
pub struct IntervalSystem {
    graph: WeightedDigraph,
    alpha: f64,
    cross_distance: f64,
    weights: Vec<f64>,
    base: Vec<Interval>,
    sub: Vec<Interval>,
    ratio: Vec<f64>,
    reversed: Vec<bool>,
}

/// Affine map `x -> offset + scale * (x - anchor)` from a base interval onto a
/// cylinder.
#[derive(Debug, Clone, Copy)]
struct Branch {
    anchor: f64,
    offset: f64,
    scale: f64,
}

impl Branch {
    fn apply(&self, x: f64) -> f64 {
        self.offset + self.scale * (x - self.anchor)
    }
}

/// Builds the interval system. Subintervals are laid out left to right in
/// edge order with equal gaps at both ends and between neighbours; `D`
/// defaults to `max w_i`.
pub fn build_gdms(graph: &WeightedDigraph, alpha: f64, cross_distance: Option<f64>) -> Result<IntervalSystem> {
    validate_graph(graph)?.into_result()?;
    let perron = perron_vector(graph, alpha, 1e-13)?;
    let weights = perron.vector;
    let max_w = weights.iter().cloned().fold(0.0, f64::max);
    let d = cross_distance.unwrap_or(max_w);
    if !(d > 0.5 * max_w) {
        return Err(Error::InvalidParameter(format!(
            "cross-component distance {d} must exceed max(w)/2 = {}",
            0.5 * max_w
        )));
    }

    let n = graph.vertex_count();
    let mut base = Vec::with_capacity(n);
    let mut start = 0.0;
    for &w in &weights {
        base.push(Interval::new(start, start + w));
        start += w + COMPONENT_SPACING;
    }

    let m = graph.edges().len();
    let mut sub = vec![Interval::new(0.0, 0.0); m];
    let mut ratio = vec![0.0; m];
    for v in 0..n {
        let out: Vec<usize> = graph.out_edges(v).collect();
        let lens: Vec<f64> = out
            .iter()
            .map(|&e| {
                let ed = graph.edge(e);
                weights[ed.dst] * (ed.degree as f64).powf(-1.0 / alpha)
            })
            .collect();
        let used: f64 = lens.iter().sum();
        let gap = (weights[v] - used) / (out.len() as f64 + 1.0);
        if !(gap > 0.0) {
            return Err(Error::NotContracting { radius: perron.radius });
        }
        let mut x = base[v].left + gap;
        for (&e, &len) in out.iter().zip(&lens) {
            sub[e] = Interval::new(x, x + len);
            ratio[e] = (graph.edge(e).degree as f64).powf(1.0 / alpha);
            x += len + gap;
        }
    }

    Ok(IntervalSystem {
        graph: graph.clone(),
        alpha,
        cross_distance: d,
        weights,
        base,
        sub,
        ratio,
        reversed: vec![false; m],
    })
}

impl IntervalSystem {
    /// Replaces the branch orientations (`true` = orientation reversing).
    pub fn with_orientations(mut self, reversed: Vec<bool>) -> Result<Self> {
        if reversed.len() != self.sub.len() {
            return Err(Error::InvalidParameter(format!(
                "expected {} orientation flags, got {}",
                self.sub.len(),
                reversed.len()
            )));
        }
        self.reversed = reversed;
        Ok(self)
    }

    pub fn graph(&self) -> &WeightedDigraph {
        &self.graph
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn cross_distance(&self) -> f64 {
        self.cross_distance
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn base_interval(&self, v: usize) -> Interval {
        self.base[v]
    }

    pub fn base_intervals(&self) -> &[Interval] {
        &self.base
    }

    pub fn sub_interval(&self, e: usize) -> Interval {
        self.sub[e]
    }

    pub fn is_reversed(&self, e: usize) -> bool {
        self.reversed[e]
    }

    /// Expansion ratio `d(e)^(1/alpha)` of `g` on `J_e`.
    pub fn expansion(&self, e: usize) -> f64 {
        self.ratio[e]
    }

    /// The edge whose closed subinterval contains `p`, if any.
    pub fn edge_containing(&self, p: &GdmsPoint) -> Option<usize> {
        self.graph.out_edges(p.component).find(|&e| self.sub[e].contains(p.coordinate))
    }

    /// Applies `g`. Points in the gaps (off `J_1`) are a domain error.
    pub fn map_g(&self, p: &GdmsPoint) -> Result<GdmsPoint> {
        let e = self
            .edge_containing(p)
            .ok_or_else(|| Error::Domain(format!("coordinate {} of component {} lies in no J_e", p.coordinate, p.component + 1)))?;
        Ok(self.map_on_edge(e, p.coordinate))
    }

    /// `g|J_e` applied to `x` (no membership check).
    pub fn map_on_edge(&self, e: usize, x: f64) -> GdmsPoint {
        let j = self.graph.edge(e).dst;
        let sub = self.sub[e];
        let t = if self.reversed[e] { sub.right - x } else { x - sub.left };
        GdmsPoint { component: j, coordinate: self.base[j].left + t * self.ratio[e] }
    }

    /// Inverse branch `I_j -> J_e` applied to `x`.
    pub fn inverse_branch(&self, e: usize, x: f64) -> f64 {
        let j = self.graph.edge(e).dst;
        let t = (x - self.base[j].left) / self.ratio[e];
        let sub = self.sub[e];
        if self.reversed[e] {
            sub.right - t
        } else {
            sub.left + t
        }
    }

    fn root_branch(&self, v: usize) -> Branch {
        let left = self.base[v].left;
        Branch { anchor: left, offset: left, scale: 1.0 }
    }

    fn extend(&self, b: &Branch, e: usize) -> Branch {
        let j = self.graph.edge(e).dst;
        let sub = self.sub[e];
        let (start, sign) = if self.reversed[e] { (sub.right, -1.0) } else { (sub.left, 1.0) };
        Branch { anchor: self.base[j].left, offset: b.apply(start), scale: b.scale * sign / self.ratio[e] }
    }

    fn branch_interval(&self, b: &Branch, v: usize) -> Interval {
        let base = self.base[v];
        let (a, c) = (b.apply(base.left), b.apply(base.right));
        Interval::new(a.min(c), a.max(c))
    }

    /// The cylinder of an admissible word.
    pub fn cylinder(&self, word: &CylinderWord) -> Result<Interval> {
        if !word.is_admissible(&self.graph) {
            return Err(Error::InvalidParameter("word is not an admissible path".into()));
        }
        let mut b = self.root_branch(word.start);
        for &e in &word.edges {
            b = self.extend(&b, e);
        }
        Ok(self.branch_interval(&b, word.end(&self.graph)))
    }

    /// Point of the cylinder of `word` corresponding to `x` in the base
    /// interval of the word's end vertex.
    pub fn cylinder_point(&self, word: &CylinderWord, x: f64) -> f64 {
        let mut b = self.root_branch(word.start);
        for &e in &word.edges {
            b = self.extend(&b, e);
        }
        b.apply(x)
    }

    /// All admissible words of length `depth` with their cylinders, grouped
    /// by start vertex and in lexicographic edge order.
    pub fn repellor_cover(&self, depth: usize) -> Vec<(CylinderWord, Interval)> {
        let mut out = Vec::new();
        for v in 0..self.graph.vertex_count() {
            let mut word = CylinderWord::root(v);
            self.cover_rec(&self.root_branch(v), v, depth, &mut word, &mut out);
        }
        out
    }

    fn cover_rec(
        &self,
        b: &Branch,
        v: usize,
        remaining: usize,
        word: &mut CylinderWord,
        out: &mut Vec<(CylinderWord, Interval)>,
    ) {
        if remaining == 0 {
            out.push((word.clone(), self.branch_interval(b, v)));
            return;
        }
        for e in self.graph.out_edges(v) {
            let child = self.extend(b, e);
            word.edges.push(e);
            self.cover_rec(&child, self.graph.edge(e).dst, remaining - 1, word, out);
            word.edges.pop();
        }
    }

    /// `d` or, when `snowflaked`, `d^alpha`.
    pub fn distance(&self, p: &GdmsPoint, q: &GdmsPoint, snowflaked: bool) -> f64 {
        let raw = if p.component == q.component { (p.coordinate - q.coordinate).abs() } else { self.cross_distance };
        if snowflaked {
            raw.powf(self.alpha)
        } else {
            raw
        }
    }

    /// Diameter of a single-component interval in `d` or `d^alpha`.
    pub fn interval_diameter(&self, iv: &Interval, snowflaked: bool) -> f64 {
        if snowflaked {
            iv.len().powf(self.alpha)
        } else {
            iv.len()
        }
    }

    /// Number of cylinders in the stopping-time cover at scale `r`: maximal
    /// cylinders of diameter at most `r`.
    pub fn stopping_cover_count(&self, r: f64, snowflaked: bool, max_depth: usize) -> usize {
        let mut count = 0;
        for v in 0..self.graph.vertex_count() {
            self.stopping_rec(&self.root_branch(v), v, r, snowflaked, max_depth, &mut count);
        }
        count
    }

    fn stopping_rec(&self, b: &Branch, v: usize, r: f64, snowflaked: bool, left: usize, count: &mut usize) {
        // length from the scale factor: endpoint differences lose precision
        // once cylinders are much shorter than their coordinates
        let len = b.scale.abs() * self.base[v].len();
        let diam = if snowflaked { len.powf(self.alpha) } else { len };
        if diam <= r * (1.0 + 1e-12) || left == 0 {
            *count += 1;
            return;
        }
        for e in self.graph.out_edges(v) {
            self.stopping_rec(&self.extend(b, e), self.graph.edge(e).dst, r, snowflaked, left - 1, count);
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoxDimension {
    pub estimate: f64,
    /// `(log(1/r), log N(r))` samples used in the fit.
    pub samples: Vec<(f64, f64)>,
    pub fit: LineFit,
}

/// Box-counting estimate of `dim(C)` in `d` (or `d^alpha`). Scales are the
/// largest cylinder diameters at each depth in `depths`; counts come from
/// stopping-time cylinder covers at that scale.
pub fn box_dimension(sys: &IntervalSystem, snowflaked: bool, depths: core::ops::RangeInclusive<usize>) -> Result<BoxDimension> {
    let mut samples = Vec::new();
    for m in depths {
        let r = max_cylinder_diameter(sys, m, snowflaked);
        let count = sys.stopping_cover_count(r, snowflaked, m + 64);
        samples.push(((1.0 / r).ln(), (count as f64).ln()));
    }
    let fit = fit_line(&samples).ok_or_else(|| Error::Degenerate("need at least two distinct scales".into()))?;
    Ok(BoxDimension { estimate: fit.slope, samples, fit })
}

/// Largest cylinder diameter at `depth`; the branch ratios make this the
/// product of the largest per-step contraction along admissible paths.
pub fn max_cylinder_diameter(sys: &IntervalSystem, depth: usize, snowflaked: bool) -> f64 {
    // dynamic programming over end vertices: best[v] = largest scale factor
    // of a depth-k word starting anywhere and ending at v
    let g = sys.graph();
    let n = g.vertex_count();
    let mut best = vec![1.0f64; n];
    for _ in 0..depth {
        let mut next = vec![0.0f64; n];
        for (e, ed) in g.edges().iter().enumerate() {
            let s = best[ed.src] / sys.expansion(e);
            if s > next[ed.dst] {
                next[ed.dst] = s;
            }
        }
        best = next;
    }
    let len = (0..n).map(|v| best[v] * sys.weights()[v]).fold(0.0, f64::max);
    if snowflaked {
        len.powf(sys.alpha())
    } else {
        len
    }
}
