//! Adapters for the interval systems, the circle skew product, the interval
//! map `q_{1/2}` and the Menger folding maps.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::{roundness_from_samples, SystemAdapter};
use crate::error::{Error, Result};
use crate::gdms::{CylinderWord, GdmsPoint, Interval, IntervalSystem};
use crate::menger::{expanding_map, fold, segment_clear_of_folds, snowflake_distance, CubePoint, FoldMode, MengerParams};
use crate::skewprod::{circle_distance, skew_distance, skew_map, SkewPoint};

const SAMPLE_EXTENSION: usize = 10;

/// Small deterministic generator for sample paths.
fn mix(seed: u64) -> u64 {
    let mut z = seed.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn unit(seed: u64) -> f64 {
    (mix(seed) >> 11) as f64 / (1u64 << 53) as f64
}

/// Cylinders of the interval system.
#[derive(Debug, Clone)]
pub struct GdmsAdapter {
    sys: IntervalSystem,
    snowflaked: bool,
}

impl GdmsAdapter {
    pub fn new(sys: IntervalSystem, snowflaked: bool) -> Self {
        Self { sys, snowflaked }
    }

    pub fn system(&self) -> &IntervalSystem {
        &self.sys
    }

    fn base_length(&self, w: &CylinderWord) -> f64 {
        let g = self.sys.graph();
        let scale: f64 = w.edges.iter().map(|&e| 1.0 / self.sys.expansion(e)).product();
        self.sys.base_interval(w.end(g)).len() * scale
    }

    /// A point of the repellor-like set inside the cylinder, chosen by
    /// extending `w` along a pseudo-random path.
    fn deep_point(&self, w: &CylinderWord, seed: u64) -> GdmsPoint {
        let g = self.sys.graph();
        let mut ext = w.clone();
        for step in 0..SAMPLE_EXTENSION {
            let v = ext.end(g);
            let outs: Vec<usize> = g.out_edges(v).collect();
            ext.edges.push(outs[(mix(seed * 31 + step as u64) % outs.len() as u64) as usize]);
        }
        let mid = self.sys.base_interval(ext.end(g)).mid();
        GdmsPoint { component: w.start, coordinate: self.sys.cylinder_point(&ext, mid) }
    }
}

impl SystemAdapter for GdmsAdapter {
    type Point = GdmsPoint;
    type Element = CylinderWord;

    fn evaluate(&self, p: &GdmsPoint) -> Result<GdmsPoint> {
        self.sys.map_g(p)
    }

    fn preimage_components(&self, w: &CylinderWord) -> Result<Vec<(CylinderWord, u32)>> {
        let g = self.sys.graph();
        Ok(g.in_edges(w.start)
            .map(|e| {
                let mut edges = Vec::with_capacity(w.edges.len() + 1);
                edges.push(e);
                edges.extend_from_slice(&w.edges);
                (CylinderWord { start: g.edge(e).src, edges }, 1)
            })
            .collect())
    }

    fn metric(&self, p: &GdmsPoint, q: &GdmsPoint) -> f64 {
        self.sys.distance(p, q, self.snowflaked)
    }

    fn sample_points(&self, w: &CylinderWord, count: usize) -> Vec<GdmsPoint> {
        (0..count as u64).map(|i| self.deep_point(w, i)).collect()
    }

    fn ambient_cover0(&self) -> Vec<CylinderWord> {
        (0..self.sys.graph().vertex_count()).map(CylinderWord::root).collect()
    }

    fn diameter(&self, w: &CylinderWord) -> f64 {
        let len = self.base_length(w);
        if self.snowflaked {
            len.powf(self.sys.alpha())
        } else {
            len
        }
    }

    fn center(&self, w: &CylinderWord) -> GdmsPoint {
        let iv = self.sys.cylinder(w).expect("cover elements are admissible");
        GdmsPoint { component: w.start, coordinate: iv.mid() }
    }

    fn roundness(&self, w: &CylinderWord, b: &GdmsPoint) -> Result<f64> {
        let iv = self.sys.cylinder(w)?;
        if b.component != w.start || !(b.coordinate > iv.left && b.coordinate < iv.right) {
            return Err(Error::Degenerate("basepoint is not an interior point".into()));
        }
        let ends = [GdmsPoint { component: w.start, coordinate: iv.left }, GdmsPoint { component: w.start, coordinate: iv.right }];
        roundness_from_samples(b, &ends, &ends, |p, q| self.metric(p, q))
    }

    fn contains(&self, outer: &CylinderWord, inner: &CylinderWord) -> bool {
        outer.is_prefix_of(inner)
    }

    fn contains_point(&self, w: &CylinderWord, p: &GdmsPoint) -> bool {
        p.component == w.start && self.sys.cylinder(w).is_ok_and(|iv| iv.contains(p.coordinate))
    }

    fn forward_image(&self, w: &CylinderWord) -> Option<Vec<CylinderWord>> {
        let g = self.sys.graph();
        if w.edges.is_empty() {
            let mut out: Vec<CylinderWord> = Vec::new();
            for e in g.out_edges(w.start) {
                let r = CylinderWord::root(g.edge(e).dst);
                if !out.contains(&r) {
                    out.push(r);
                }
            }
            Some(out)
        } else {
            Some(vec![CylinderWord { start: g.edge(w.edges[0]).dst, edges: w.edges[1..].to_vec() }])
        }
    }

    fn covers_space(&self, elements: &[CylinderWord]) -> Option<bool> {
        let n = self.sys.graph().vertex_count();
        Some((0..n).all(|v| elements.iter().any(|w| w.start == v && w.edges.is_empty())))
    }

    fn local_scaling(&self, p: &GdmsPoint, q: &GdmsPoint) -> Option<f64> {
        let e = self.sys.edge_containing(p)?;
        if p.component != q.component || self.sys.edge_containing(q) != Some(e) {
            return None;
        }
        let r = self.sys.expansion(e);
        Some(if self.snowflaked { r.powf(self.sys.alpha()) } else { r })
    }
}

/// Product of a cylinder with a closed arc `[start, start + len]` of the
/// circle; `len >= 1` is the whole circle.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewCell {
    pub word: CylinderWord,
    pub arc_start: f64,
    pub arc_len: f64,
}

impl SkewCell {
    pub fn full_circle(&self) -> bool {
        self.arc_len >= 1.0
    }

    fn arc_offset(&self, t: f64) -> f64 {
        let d = t - self.arc_start;
        d - d.floor()
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

/// The circle skew product with cells of cylinders times arcs.
#[derive(Debug, Clone)]
pub struct SkewAdapter {
    base: GdmsAdapter,
}

impl SkewAdapter {
    pub fn new(sys: IntervalSystem) -> Self {
        Self { base: GdmsAdapter::new(sys, true) }
    }

    fn sys(&self) -> &IntervalSystem {
        &self.base.sys
    }

    fn cell(&self, word: CylinderWord, start: f64, len: f64) -> SkewCell {
        if len >= 1.0 {
            SkewCell { word, arc_start: 0.0, arc_len: 1.0 }
        } else {
            SkewCell { word, arc_start: wrap(start), arc_len: len }
        }
    }
}

impl SystemAdapter for SkewAdapter {
    type Point = SkewPoint;
    type Element = SkewCell;

    fn evaluate(&self, p: &SkewPoint) -> Result<SkewPoint> {
        skew_map(self.sys(), p)
    }

    fn preimage_components(&self, c: &SkewCell) -> Result<Vec<(SkewCell, u32)>> {
        let g = self.sys().graph();
        let mut out = Vec::new();
        for (word, _) in self.base.preimage_components(&c.word)? {
            let d = g.edge(word.edges[0]).degree;
            if c.full_circle() {
                out.push((self.cell(word, 0.0, 1.0), d as u32));
            } else {
                for k in 0..d {
                    let df = d as f64;
                    out.push((self.cell(word.clone(), (c.arc_start + k as f64) / df, c.arc_len / df), 1));
                }
            }
        }
        Ok(out)
    }

    fn metric(&self, p: &SkewPoint, q: &SkewPoint) -> f64 {
        skew_distance(self.sys(), p, q)
    }

    fn sample_points(&self, c: &SkewCell, count: usize) -> Vec<SkewPoint> {
        let bases = self.base.sample_points(&c.word, count);
        bases
            .into_iter()
            .enumerate()
            .map(|(i, b)| SkewPoint::new(b, c.arc_start + c.arc_len.min(1.0) * unit(i as u64 + 7919)))
            .collect()
    }

    /// Roots times overlapping arcs of length `3 / (8 max d)`.
    fn ambient_cover0(&self) -> Vec<SkewCell> {
        let n = 4 * self.sys().graph().max_degree() as usize;
        let len = 1.5 / n as f64;
        let mut out = Vec::new();
        for w in self.base.ambient_cover0() {
            for k in 0..n {
                out.push(self.cell(w.clone(), k as f64 / n as f64, len));
            }
        }
        out
    }

    fn diameter(&self, c: &SkewCell) -> f64 {
        self.base.diameter(&c.word) + c.arc_len.min(0.5)
    }

    fn center(&self, c: &SkewCell) -> SkewPoint {
        SkewPoint::new(self.base.center(&c.word), c.arc_start + c.arc_len.min(1.0) / 2.0)
    }

    fn roundness(&self, c: &SkewCell, b: &SkewPoint) -> Result<f64> {
        let iv = self.sys().cylinder(&c.word)?;
        let alpha = self.sys().alpha();
        let x = b.base.coordinate;
        if b.base.component != c.word.start || !(x > iv.left && x < iv.right) {
            return Err(Error::Degenerate("basepoint is not an interior point".into()));
        }
        let (near, far) = ((x - iv.left).min(iv.right - x), (x - iv.left).max(iv.right - x));
        let mut big = far.powf(alpha);
        let mut small = near.powf(alpha);
        if c.full_circle() {
            big += 0.5;
        } else {
            let off = c.arc_offset(b.angle);
            if !(off > 0.0 && off < c.arc_len) {
                return Err(Error::Degenerate("basepoint is not an interior point".into()));
            }
            big += off.max(c.arc_len - off).min(0.5);
            small = small.min(off.min(c.arc_len - off));
        }
        Ok(big / small.min(big))
    }

    fn contains(&self, outer: &SkewCell, inner: &SkewCell) -> bool {
        if !outer.word.is_prefix_of(&inner.word) {
            return false;
        }
        if outer.full_circle() {
            return true;
        }
        !inner.full_circle() && outer.arc_offset(inner.arc_start) + inner.arc_len <= outer.arc_len + 1e-12
    }

    fn contains_point(&self, c: &SkewCell, p: &SkewPoint) -> bool {
        self.base.contains_point(&c.word, &p.base) && (c.full_circle() || c.arc_offset(p.angle) <= c.arc_len + 1e-12)
    }

    fn forward_image(&self, c: &SkewCell) -> Option<Vec<SkewCell>> {
        let g = self.sys().graph();
        let step = |e: usize, word: CylinderWord| {
            let d = g.edge(e).degree as f64;
            self.cell(word, c.arc_start * d, c.arc_len * d)
        };
        if c.word.edges.is_empty() {
            let mut out: Vec<SkewCell> = Vec::new();
            for e in g.out_edges(c.word.start) {
                let img = step(e, CylinderWord::root(g.edge(e).dst));
                if !out.contains(&img) {
                    out.push(img);
                }
            }
            Some(out)
        } else {
            let e = c.word.edges[0];
            Some(vec![step(e, CylinderWord { start: g.edge(e).dst, edges: c.word.edges[1..].to_vec() })])
        }
    }

    fn covers_space(&self, elements: &[SkewCell]) -> Option<bool> {
        let n = self.sys().graph().vertex_count();
        Some((0..n).all(|v| elements.iter().any(|c| c.word.start == v && c.word.edges.is_empty() && c.full_circle())))
    }

    fn local_scaling(&self, p: &SkewPoint, q: &SkewPoint) -> Option<f64> {
        let e = self.sys().edge_containing(&p.base)?;
        if p.base.component != q.base.component || self.sys().edge_containing(&q.base) != Some(e) {
            return None;
        }
        let d = self.sys().graph().edge(e).degree as f64;
        (circle_distance(p.angle, q.angle) < 0.5 / d).then_some(d)
    }
}

/// `q_{1/2}` on `A_{1/2} = [0, 2]`: `z -> 2z` on `[0, 1]`, `z -> 4 - 2z` on
/// `[1, 2]`, with critical point `1`.
#[derive(Debug, Clone)]
pub struct HalfIntervalAdapter {
    cover: Vec<Interval>,
}

impl Default for HalfIntervalAdapter {
    fn default() -> Self {
        Self::with_cover(4)
    }
}

impl HalfIntervalAdapter {
    /// Initial cover by `n` overlapping intervals of length `3 / n`, clipped
    /// to `[0, 2]`.
    pub fn with_cover(n: usize) -> Self {
        let n = n.max(2);
        let step = 2.0 / n as f64;
        let cover = (0..n).map(|k| Interval::new(k as f64 * step, (k as f64 * step + 1.5 * step).min(2.0))).collect();
        Self { cover }
    }
}

const HALF_TOUCH: f64 = 1e-12;

impl SystemAdapter for HalfIntervalAdapter {
    type Point = f64;
    type Element = Interval;

    fn evaluate(&self, z: &f64) -> Result<f64> {
        if !(0.0..=2.0).contains(z) {
            return Err(Error::Domain(alloc::format!("{z} is outside [0, 2]")));
        }
        Ok(if *z <= 1.0 { 2.0 * z } else { 4.0 - 2.0 * z })
    }

    fn preimage_components(&self, iv: &Interval) -> Result<Vec<(Interval, u32)>> {
        let left = Interval::new(iv.left / 2.0, iv.right / 2.0);
        let right = Interval::new(2.0 - iv.right / 2.0, 2.0 - iv.left / 2.0);
        if right.left <= left.right + HALF_TOUCH {
            Ok(vec![(Interval::new(left.left, right.right), 2)])
        } else {
            Ok(vec![(left, 1), (right, 1)])
        }
    }

    fn metric(&self, p: &f64, q: &f64) -> f64 {
        (p - q).abs()
    }

    fn sample_points(&self, iv: &Interval, count: usize) -> Vec<f64> {
        if count <= 1 {
            return vec![iv.mid()];
        }
        (0..count).map(|i| iv.left + iv.len() * i as f64 / (count - 1) as f64).collect()
    }

    fn ambient_cover0(&self) -> Vec<Interval> {
        self.cover.clone()
    }

    fn diameter(&self, iv: &Interval) -> f64 {
        iv.len()
    }

    fn center(&self, iv: &Interval) -> f64 {
        iv.mid()
    }

    /// Endpoints at `0` or `2` are not frontier points of the element.
    fn roundness(&self, iv: &Interval, b: &f64) -> Result<f64> {
        if !iv.contains(*b) || (*b <= iv.left && iv.left > 0.0) || (*b >= iv.right && iv.right < 2.0) {
            return Err(Error::Degenerate("basepoint is not an interior point".into()));
        }
        let ends = [iv.left, iv.right];
        let frontier: Vec<f64> = ends.iter().copied().filter(|&e| e > 0.0 && e < 2.0).collect();
        roundness_from_samples(b, &ends, &frontier, |p, q| (p - q).abs())
    }

    fn contains(&self, outer: &Interval, inner: &Interval) -> bool {
        outer.contains_interval(inner)
    }

    fn contains_point(&self, iv: &Interval, p: &f64) -> bool {
        p + 1e-12 >= iv.left && *p <= iv.right + 1e-12
    }

    fn forward_image(&self, iv: &Interval) -> Option<Vec<Interval>> {
        let img = if iv.right <= 1.0 {
            Interval::new(2.0 * iv.left, 2.0 * iv.right)
        } else if iv.left >= 1.0 {
            Interval::new(4.0 - 2.0 * iv.right, 4.0 - 2.0 * iv.left)
        } else {
            Interval::new((2.0 * iv.left).min(4.0 - 2.0 * iv.right), 2.0)
        };
        Some(vec![img])
    }

    fn covers_space(&self, elements: &[Interval]) -> Option<bool> {
        let mut ivs: Vec<Interval> = elements.to_vec();
        ivs.sort_by(|a, b| a.left.total_cmp(&b.left));
        let mut reach = 0.0;
        for iv in ivs {
            if iv.left > reach + HALF_TOUCH {
                return Some(false);
            }
            reach = f64::max(reach, iv.right);
        }
        Some(reach >= 2.0 - HALF_TOUCH)
    }

    fn local_scaling(&self, p: &f64, q: &f64) -> Option<f64> {
        ((*p <= 1.0) == (*q <= 1.0)).then_some(2.0)
    }
}

/// Axis-parallel box `prod [lo_i, hi_i]` in the cube.
#[derive(Debug, Clone, PartialEq)]
pub struct MengerBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

/// The folding map on boxes of the ambient cube, with the snowflake metric.
#[derive(Debug, Clone)]
pub struct MengerAdapter {
    params: MengerParams,
    eps: Vec<f64>,
}

const BOX_TOUCH: f64 = 1e-12;

impl MengerAdapter {
    /// Only reflection folding is supported: translation folding glues the
    /// faces of the cube and its boxes wrap around.
    pub fn new(params: MengerParams) -> Result<Self> {
        if params.mode() != FoldMode::Reflect {
            return Err(Error::InvalidParameter("box covers need reflection folding".into()));
        }
        let eps = params.exponents();
        Ok(Self { params, eps })
    }

    /// Preimage pieces of `[l, r]` under `x -> fold(lambda x)`, merged where
    /// they touch, each with the number of merged pieces.
    fn coordinate_preimages(l: f64, r: f64, lambda: u32) -> Vec<(f64, f64, u32)> {
        let lf = lambda as f64;
        let mut pieces: Vec<(f64, f64)> = (0..lambda)
            .map(|j| {
                let j = j as f64;
                if j as u32 % 2 == 0 {
                    ((l + j) / lf, (r + j) / lf)
                } else {
                    ((j + 1.0 - r) / lf, (j + 1.0 - l) / lf)
                }
            })
            .collect();
        pieces.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut out: Vec<(f64, f64, u32)> = Vec::new();
        for (a, b) in pieces {
            match out.last_mut() {
                Some(last) if a <= last.1 + BOX_TOUCH => {
                    last.1 = last.1.max(b);
                    last.2 += 1;
                }
                _ => out.push((a, b, 1)),
            }
        }
        out
    }
}

impl SystemAdapter for MengerAdapter {
    type Point = CubePoint;
    type Element = MengerBox;

    fn evaluate(&self, p: &CubePoint) -> Result<CubePoint> {
        expanding_map(&self.params, p)
    }

    fn preimage_components(&self, b: &MengerBox) -> Result<Vec<(MengerBox, u32)>> {
        let per: Vec<Vec<(f64, f64, u32)>> = (0..self.params.k())
            .map(|i| Self::coordinate_preimages(b.lo[i], b.hi[i], self.params.factors()[i]))
            .collect();
        let mut out = Vec::new();
        let mut idx = vec![0usize; per.len()];
        loop {
            let mut lo = Vec::with_capacity(per.len());
            let mut hi = Vec::with_capacity(per.len());
            let mut deg = 1u32;
            for (i, &j) in idx.iter().enumerate() {
                let (a, c, d) = per[i][j];
                lo.push(a);
                hi.push(c);
                deg *= d;
            }
            out.push((MengerBox { lo, hi }, deg));
            let mut i = 0;
            loop {
                if i == per.len() {
                    return Ok(out);
                }
                idx[i] += 1;
                if idx[i] < per[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    }

    fn metric(&self, p: &CubePoint, q: &CubePoint) -> f64 {
        snowflake_distance(&self.params, p, q)
    }

    fn sample_points(&self, b: &MengerBox, count: usize) -> Vec<CubePoint> {
        (0..count as u64)
            .map(|s| {
                let coords = (0..b.lo.len())
                    .map(|i| b.lo[i] + (b.hi[i] - b.lo[i]) * (0.05 + 0.9 * unit(s * 131 + i as u64)))
                    .collect();
                CubePoint { coords }
            })
            .collect()
    }

    /// Products of `[0, 1/2]`, `[1/4, 3/4]`, `[1/2, 1]`.
    fn ambient_cover0(&self) -> Vec<MengerBox> {
        let pieces = [(0.0, 0.5), (0.25, 0.75), (0.5, 1.0)];
        let k = self.params.k();
        let total = 3usize.pow(k as u32);
        (0..total)
            .map(|mut code| {
                let mut lo = Vec::with_capacity(k);
                let mut hi = Vec::with_capacity(k);
                for _ in 0..k {
                    let (a, b) = pieces[code % 3];
                    code /= 3;
                    lo.push(a);
                    hi.push(b);
                }
                MengerBox { lo, hi }
            })
            .collect()
    }

    fn diameter(&self, b: &MengerBox) -> f64 {
        (0..b.lo.len()).map(|i| (b.hi[i] - b.lo[i]).powf(self.eps[i])).fold(0.0, f64::max)
    }

    fn center(&self, b: &MengerBox) -> CubePoint {
        CubePoint { coords: (0..b.lo.len()).map(|i| (b.lo[i] + b.hi[i]) / 2.0).collect() }
    }

    /// In the sup-type snowflake metric a ball is a box, so both radii are
    /// attained coordinatewise; faces on the cube's boundary are not frontier.
    fn roundness(&self, b: &MengerBox, p: &CubePoint) -> Result<f64> {
        let mut big: f64 = 0.0;
        let mut small = f64::INFINITY;
        for i in 0..b.lo.len() {
            let x = p.coords[i];
            let (to_lo, to_hi) = (x - b.lo[i], b.hi[i] - x);
            if to_lo < 0.0 || to_hi < 0.0 {
                return Err(Error::Degenerate("basepoint is outside the box".into()));
            }
            big = big.max(to_lo.max(to_hi).powf(self.eps[i]));
            if b.lo[i] > 0.0 {
                small = small.min(to_lo.powf(self.eps[i]));
            }
            if b.hi[i] < 1.0 {
                small = small.min(to_hi.powf(self.eps[i]));
            }
        }
        let small = small.min(big);
        if small <= 0.0 {
            return Err(Error::Degenerate("basepoint is not an interior point".into()));
        }
        Ok(big / small)
    }

    fn contains(&self, outer: &MengerBox, inner: &MengerBox) -> bool {
        (0..outer.lo.len()).all(|i| outer.lo[i] <= inner.lo[i] + BOX_TOUCH && inner.hi[i] <= outer.hi[i] + BOX_TOUCH)
    }

    fn contains_point(&self, b: &MengerBox, p: &CubePoint) -> bool {
        (0..b.lo.len()).all(|i| b.lo[i] <= p.coords[i] + BOX_TOUCH && p.coords[i] <= b.hi[i] + BOX_TOUCH)
    }

    fn forward_image(&self, b: &MengerBox) -> Option<Vec<MengerBox>> {
        let mut lo = Vec::with_capacity(b.lo.len());
        let mut hi = Vec::with_capacity(b.lo.len());
        for (i, &lambda) in self.params.factors().iter().enumerate() {
            let (s, t) = (lambda as f64 * b.lo[i], lambda as f64 * b.hi[i]);
            let mut vals = vec![fold(s, FoldMode::Reflect), fold(t, FoldMode::Reflect)];
            let mut m = s.floor() + 1.0;
            while m < t {
                vals.push(fold(m, FoldMode::Reflect));
                m += 1.0;
            }
            lo.push(vals.iter().copied().fold(f64::INFINITY, f64::min));
            hi.push(vals.iter().copied().fold(0.0, f64::max));
        }
        Some(vec![MengerBox { lo, hi }])
    }

    fn covers_space(&self, elements: &[MengerBox]) -> Option<bool> {
        Some(elements.iter().any(|b| b.lo.iter().all(|&l| l <= BOX_TOUCH) && b.hi.iter().all(|&h| h >= 1.0 - BOX_TOUCH)))
    }

    fn local_scaling(&self, p: &CubePoint, q: &CubePoint) -> Option<f64> {
        segment_clear_of_folds(&self.params, p, q, 1e-12).then_some(3.0)
    }
}
