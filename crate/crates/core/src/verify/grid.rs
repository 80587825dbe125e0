//! The pillowcase maps `f_a` on rasterized open sets: unions of grid cells of
//! side `2^-m` in the fundamental rectangle `[0, 1/2] x [-1/2, 1/2]`, with
//! adjacency across the glued sides.

use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_traits::Zero;
#[allow(unused_imports)]
use num_traits::Float;

use super::{roundness_from_samples, SystemAdapter};
use crate::error::{Error, Result};
use crate::pillowcase::map::check_a;
use crate::pillowcase::{canonicalize, f_a, half, orb_distance_f64, orb_point, preimages, OrbPoint};
use crate::rational::Q;

pub const DEFAULT_RESOLUTION: u32 = 10;
const MAX_RESOLUTION: u32 = 11;
const MAX_GEOMETRY_POINTS: usize = 256;
/// Sample points per side of a cell when pushing a set forward.
const IMAGE_SAMPLES: i128 = 4;

/// Sorted cell indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CellSet {
    pub cells: Vec<u32>,
}

impl CellSet {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains_cell(&self, c: u32) -> bool {
        self.cells.binary_search(&c).is_ok()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridCover {
    /// The two squares `y >= 0` and `y <= 0`.
    Faces,
    /// Open stars of the vertices of the grid of side `2^-coarse`.
    Stars { coarse: u32 },
}

struct Scratch {
    stamp: u32,
    seen: Vec<u32>,
    component: Vec<u32>,
}

pub struct PillowGridAdapter {
    a: Q,
    m: u32,
    width: u32,
    height: u32,
    target: Vec<u32>,
    /// Cells grouped by target: `sources[offsets[t]..offsets[t + 1]]`.
    offsets: Vec<u32>,
    sources: Vec<u32>,
    cover: GridCover,
    scratch: RefCell<Scratch>,
}

impl core::fmt::Debug for PillowGridAdapter {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("PillowGridAdapter").field("a", &self.a).field("m", &self.m).field("cover", &self.cover).finish()
    }
}

impl PillowGridAdapter {
    pub fn new(a: Q, m: u32, cover: GridCover) -> Result<Self> {
        check_a(a)?;
        if !(2..=MAX_RESOLUTION).contains(&m) {
            return Err(Error::InvalidParameter(alloc::format!("grid resolution must lie in 2..={MAX_RESOLUTION}")));
        }
        if let GridCover::Stars { coarse } = cover {
            if !(1..=m).contains(&coarse) {
                return Err(Error::InvalidParameter("star grid must be coarser than the cells".into()));
            }
        }
        let width = 1u32 << (m - 1);
        let height = 1u32 << m;
        let n = (width * height) as usize;
        let mut adapter = Self {
            a,
            m,
            width,
            height,
            target: Vec::new(),
            offsets: Vec::new(),
            sources: Vec::new(),
            cover,
            scratch: RefCell::new(Scratch { stamp: 0, seen: vec![0; n], component: vec![0; n] }),
        };
        let mut target = Vec::with_capacity(n);
        for c in 0..n as u32 {
            target.push(adapter.cell_of(&f_a(a, &adapter.cell_center(c))?));
        }
        let mut offsets = vec![0u32; n + 1];
        for &t in &target {
            offsets[t as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut sources = vec![0u32; n];
        for (c, &t) in target.iter().enumerate() {
            sources[fill[t as usize] as usize] = c as u32;
            fill[t as usize] += 1;
        }
        adapter.target = target;
        adapter.offsets = offsets;
        adapter.sources = sources;
        Ok(adapter)
    }

    pub fn a(&self) -> Q {
        self.a
    }

    pub fn resolution(&self) -> u32 {
        self.m
    }

    pub fn cell_count(&self) -> usize {
        (self.width * self.height) as usize
    }

    fn side(&self) -> Q {
        Q::new(1, 1i128 << self.m)
    }

    fn ij(&self, c: u32) -> (u32, u32) {
        (c % self.width, c / self.width)
    }

    fn corner(&self, i: u32, j: u32) -> [Q; 2] {
        let h = self.side();
        [h * Q::from_integer(i as i128), h * Q::from_integer(j as i128) - half()]
    }

    fn cell_point(&self, c: u32, fx: Q, fy: Q) -> [Q; 2] {
        let (i, j) = self.ij(c);
        let h = self.side();
        let p = self.corner(i, j);
        [p[0] + h * fx, p[1] + h * fy]
    }

    pub fn cell_center(&self, c: u32) -> OrbPoint {
        let p = self.cell_point(c, half(), half());
        orb_point(p[0], p[1])
    }

    pub fn cell_of(&self, p: &OrbPoint) -> u32 {
        let [x, y] = p.to_f64();
        self.cell_of_f64(x, y)
    }

    fn cell_of_f64(&self, x: f64, y: f64) -> u32 {
        let s = (1u64 << self.m) as f64;
        let i = ((x * s).floor().max(0.0) as u32).min(self.width - 1);
        let j = (((y + 0.5) * s).floor().max(0.0) as u32).min(self.height - 1);
        j * self.width + i
    }

    /// Edge neighbours, glued across `x = 0`, `x = 1/2` and `y = +-1/2`.
    fn neighbours(&self, c: u32) -> [u32; 4] {
        let (i, j) = self.ij(c);
        let (w, h) = (self.width, self.height);
        let id = |i: u32, j: u32| j * w + i;
        let left = if i == 0 { id(0, h - 1 - j) } else { id(i - 1, j) };
        let right = if i == w - 1 { id(w - 1, h - 1 - j) } else { id(i + 1, j) };
        let down = if j == 0 { id(i, h - 1) } else { id(i, j - 1) };
        let up = if j == h - 1 { id(i, 0) } else { id(i, j + 1) };
        [left, right, down, up]
    }

    fn f64_point(&self, c: u32, fx: f64, fy: f64) -> [f64; 2] {
        let (i, j) = self.ij(c);
        let h = 1.0 / (1u64 << self.m) as f64;
        [(i as f64 + fx) * h, (j as f64 + fy) * h - 0.5]
    }

    /// Points on the frontier of `e`: ends and midpoints of cell edges facing
    /// cells outside `e`.
    fn frontier(&self, e: &CellSet) -> Vec<[f64; 2]> {
        let mut out = Vec::new();
        for &c in &e.cells {
            let nb = self.neighbours(c);
            let sides = [
                [(0.0, 0.0), (0.0, 0.5), (0.0, 1.0)],
                [(1.0, 0.0), (1.0, 0.5), (1.0, 1.0)],
                [(0.0, 0.0), (0.5, 0.0), (1.0, 0.0)],
                [(0.0, 1.0), (0.5, 1.0), (1.0, 1.0)],
            ];
            for (k, &n) in nb.iter().enumerate() {
                if !e.contains_cell(n) {
                    for (fx, fy) in sides[k] {
                        out.push(self.f64_point(c, fx, fy));
                    }
                }
            }
        }
        out
    }

    /// Corners of frontier cells plus a strided sample of all cells, capped.
    fn outline(&self, e: &CellSet) -> Vec<[f64; 2]> {
        let mut cells: Vec<u32> =
            e.cells.iter().copied().filter(|&c| self.neighbours(c).iter().any(|n| !e.contains_cell(*n))).collect();
        let stride = (e.len() / 64).max(1);
        cells.extend(e.cells.iter().copied().step_by(stride));
        let stride = (cells.len() * 4 / MAX_GEOMETRY_POINTS).max(1);
        let mut out = Vec::new();
        for &c in cells.iter().step_by(stride) {
            for (fx, fy) in [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)] {
                out.push(self.f64_point(c, fx, fy));
            }
        }
        out
    }

    fn thin(points: Vec<[f64; 2]>) -> Vec<[f64; 2]> {
        let stride = (points.len() / (4 * MAX_GEOMETRY_POINTS)).max(1);
        points.into_iter().step_by(stride).collect()
    }

    fn star(&self, coarse: u32, p: u32, q: u32) -> CellSet {
        let k = 1i128 << (self.m - coarse);
        let denom = 1i128 << (self.m + 1);
        let mut cells = Vec::new();
        for di in -k..k {
            for dj in -k..k {
                let x = Q::new(2 * (p as i128 * k + di) + 1, denom);
                let y = Q::new(2 * (q as i128 * k + dj) + 1, denom) - half();
                cells.push(self.cell_of(&canonicalize([x, y]).0));
            }
        }
        cells.sort_unstable();
        cells.dedup();
        CellSet { cells }
    }

    /// A cell of `e` whose neighbours all lie in `e`, if there is one.
    fn deep_cell(&self, e: &CellSet) -> u32 {
        e.cells.iter().copied().find(|&c| self.neighbours(c).iter().all(|n| e.contains_cell(*n))).unwrap_or(e.cells[0])
    }
}

impl SystemAdapter for PillowGridAdapter {
    type Point = OrbPoint;
    type Element = CellSet;

    fn evaluate(&self, p: &OrbPoint) -> Result<OrbPoint> {
        f_a(self.a, p)
    }

    fn preimage_components(&self, e: &CellSet) -> Result<Vec<(CellSet, u32)>> {
        let mut scratch = self.scratch.borrow_mut();
        scratch.stamp = scratch.stamp.wrapping_add(2);
        if scratch.stamp < 2 {
            scratch.seen.iter_mut().for_each(|s| *s = 0);
            scratch.stamp = 2;
        }
        let (member, visited) = (scratch.stamp, scratch.stamp + 1);
        let mut pre = Vec::new();
        for &t in &e.cells {
            for &c in &self.sources[self.offsets[t as usize] as usize..self.offsets[t as usize + 1] as usize] {
                scratch.seen[c as usize] = member;
                pre.push(c);
            }
        }
        let mut comps: Vec<CellSet> = Vec::new();
        let mut stack = Vec::new();
        for &start in &pre {
            if scratch.seen[start as usize] != member {
                continue;
            }
            let idx = comps.len() as u32;
            scratch.seen[start as usize] = visited;
            scratch.component[start as usize] = idx;
            stack.push(start);
            let mut cells = Vec::new();
            while let Some(c) = stack.pop() {
                cells.push(c);
                for n in self.neighbours(c) {
                    if scratch.seen[n as usize] == member {
                        scratch.seen[n as usize] = visited;
                        scratch.component[n as usize] = idx;
                        stack.push(n);
                    }
                }
            }
            cells.sort_unstable();
            comps.push(CellSet { cells });
        }

        // degree: preimages of a generic point near a deep cell of e
        let mut degrees = vec![0u32; comps.len()];
        if !e.is_empty() {
            let deep = self.deep_cell(e);
            let p = self.cell_point(deep, Q::new(3, 7), Q::new(6, 11));
            for (z, mult) in preimages(self.a, &orb_point(p[0], p[1]))? {
                let c = self.cell_of(&z) as usize;
                if scratch.seen[c] == visited {
                    degrees[scratch.component[c] as usize] += mult;
                }
            }
        }
        Ok(comps.into_iter().zip(degrees).map(|(c, d)| (c, d.max(1))).collect())
    }

    fn metric(&self, p: &OrbPoint, q: &OrbPoint) -> f64 {
        orb_distance_f64(p.to_f64(), q.to_f64())
    }

    fn sample_points(&self, e: &CellSet, count: usize) -> Vec<OrbPoint> {
        if e.is_empty() || count == 0 {
            return Vec::new();
        }
        let stride = (e.len() / count).max(1);
        e.cells.iter().step_by(stride).take(count).map(|&c| self.cell_center(c)).collect()
    }

    fn ambient_cover0(&self) -> Vec<CellSet> {
        match self.cover {
            GridCover::Faces => {
                let n = self.cell_count() as u32;
                let split = self.width * (self.height / 2);
                vec![CellSet { cells: (split..n).collect() }, CellSet { cells: (0..split).collect() }]
            }
            GridCover::Stars { coarse } => {
                let mut out: Vec<CellSet> = Vec::new();
                for p in 0..=(1u32 << (coarse - 1)) {
                    for q in 0..(1u32 << coarse) {
                        let s = self.star(coarse, p, q);
                        if !out.contains(&s) {
                            out.push(s);
                        }
                    }
                }
                out
            }
        }
    }

    fn diameter(&self, e: &CellSet) -> f64 {
        let pts = self.outline(e);
        let mut best: f64 = 0.0;
        for (i, p) in pts.iter().enumerate() {
            for q in &pts[i + 1..] {
                best = best.max(orb_distance_f64(*p, *q));
            }
        }
        best
    }

    /// The sampled cell farthest from the frontier.
    fn center(&self, e: &CellSet) -> OrbPoint {
        let frontier = Self::thin(self.frontier(e));
        if frontier.is_empty() {
            return self.cell_center(e.cells[e.len() / 2]);
        }
        let stride = (e.len() / 64).max(1);
        let best = e
            .cells
            .iter()
            .step_by(stride)
            .map(|&c| {
                let p = self.cell_center(c).to_f64();
                (frontier.iter().map(|q| orb_distance_f64(p, *q)).fold(f64::INFINITY, f64::min), c)
            })
            .max_by(|a, b| a.0.total_cmp(&b.0))
            .expect("nonempty");
        self.cell_center(best.1)
    }

    fn roundness(&self, e: &CellSet, b: &OrbPoint) -> Result<f64> {
        if !e.contains_cell(self.cell_of(b)) {
            return Err(Error::Degenerate("basepoint is outside the element".into()));
        }
        let outer = self.outline(e);
        let frontier = Self::thin(self.frontier(e));
        roundness_from_samples(&b.to_f64(), &outer, &frontier, |p, q| orb_distance_f64(*p, *q))
    }

    fn contains(&self, outer: &CellSet, inner: &CellSet) -> bool {
        inner.cells.iter().all(|c| outer.contains_cell(*c))
    }

    /// Up to one cell of rasterization slack.
    fn contains_point(&self, e: &CellSet, p: &OrbPoint) -> bool {
        let c = self.cell_of(p);
        e.contains_cell(c) || self.neighbours(c).iter().any(|n| e.contains_cell(*n))
    }

    fn forward_image(&self, e: &CellSet) -> Option<Vec<CellSet>> {
        let fr: Vec<Q> = (0..IMAGE_SAMPLES).map(|k| Q::new(2 * k + 1, 2 * IMAGE_SAMPLES)).collect();
        let mut cells = Vec::with_capacity(fr.len() * fr.len() * e.len());
        for &c in &e.cells {
            for (fx, fy) in fr.iter().flat_map(|&x| fr.iter().map(move |&y| (x, y))) {
                let p = self.cell_point(c, fx, fy);
                let img = f_a(self.a, &orb_point(p[0], p[1])).ok()?;
                cells.push(self.cell_of(&img));
            }
        }
        cells.sort_unstable();
        cells.dedup();
        Some(vec![CellSet { cells }])
    }

    fn covers_space(&self, elements: &[CellSet]) -> Option<bool> {
        let mut hit = vec![false; self.cell_count()];
        for e in elements {
            for &c in &e.cells {
                hit[c as usize] = true;
            }
        }
        Some(hit.iter().all(|&h| h))
    }

    fn local_scaling(&self, p: &OrbPoint, q: &OrbPoint) -> Option<f64> {
        (self.a.is_zero() && self.metric(p, q) < 1.0 / (1u64 << (self.m + 2)) as f64).then_some(2.0)
    }
}
