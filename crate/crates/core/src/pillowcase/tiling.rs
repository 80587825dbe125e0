//! Subdivision tilings: the components of `f_a^{-n}` of the two open faces.
//!
//! A tile is stored as convex rational fragments inside `R`. One pullback
//! step splits each fragment along the pieces of `R_a^{-1}`, applies them,
//! takes the four branches `z -> (z + (m, n))/2` of `F^{-1}` and moves every
//! piece back into `R`. Fragments coming from the same parent tile are then
//! grouped into components through shared edges, including edges glued by
//! the boundary identifications of `R`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::map::{check_a, f_a, t_matrices, Mat2};
use super::{canonicalize, half, orb_point, Vec2};
use crate::error::{Error, Result};
use crate::rational::{to_f64, Q};

pub const MAX_DEPTH: usize = 8;

pub type Polygon = Vec<Vec2>;

#[derive(Debug, Clone, PartialEq)]
pub struct Tile {
    pub fragments: Vec<Polygon>,
    pub depth: usize,
    /// Face that `f_a^depth` maps the tile onto: 0 front (`y > 0`), 1 back.
    pub face: u8,
    pub area: Q,
    pub centroid: [f64; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tiling {
    pub a: Q,
    pub depth: usize,
    /// Sorted by centroid.
    pub tiles: Vec<Tile>,
    /// Tile boundaries drawn in `R`, merged into maximal segments.
    pub skeleton: Vec<[Vec2; 2]>,
}

/// `n . z <= c`.
#[derive(Debug, Clone, Copy)]
struct HalfPlane {
    n: Vec2,
    c: Q,
}

impl HalfPlane {
    fn new(nx: i128, ny: i128, c: Q) -> Self {
        Self { n: [Q::from_integer(nx), Q::from_integer(ny)], c }
    }

    fn eval(&self, z: Vec2) -> Q {
        self.n[0] * z[0] + self.n[1] * z[1] - self.c
    }
}

fn clip(poly: &[Vec2], h: &HalfPlane) -> Polygon {
    let mut out = Vec::with_capacity(poly.len() + 1);
    for i in 0..poly.len() {
        let p = poly[i];
        let q = poly[(i + 1) % poly.len()];
        let (fp, fq) = (h.eval(p), h.eval(q));
        if !fp.is_positive() {
            out.push(p);
        }
        if (fp.is_negative() && fq.is_positive()) || (fp.is_positive() && fq.is_negative()) {
            let t = fp / (fp - fq);
            out.push([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]);
        }
    }
    simplify(out)
}

fn cross(o: Vec2, a: Vec2, b: Vec2) -> Q {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn simplify(mut poly: Polygon) -> Polygon {
    poly.dedup();
    while poly.len() > 1 && poly.first() == poly.last() {
        poly.pop();
    }
    let mut changed = true;
    while changed && poly.len() >= 3 {
        changed = false;
        for i in 0..poly.len() {
            let n = poly.len();
            let (a, b, c) = (poly[(i + n - 1) % n], poly[i], poly[(i + 1) % n]);
            if cross(a, b, c).is_zero() {
                poly.remove(i);
                changed = true;
                break;
            }
        }
    }
    if poly.len() < 3 {
        poly.clear();
    }
    poly
}

pub fn polygon_area(poly: &[Vec2]) -> Q {
    let mut s = Q::zero();
    for i in 0..poly.len() {
        let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
        s += p[0] * q[1] - q[0] * p[1];
    }
    (s / Q::from_integer(2)).abs()
}

fn vertex_mean(poly: &[Vec2]) -> Vec2 {
    let n = Q::from_integer(poly.len() as i128);
    let sx: Q = poly.iter().map(|p| p[0]).sum();
    let sy: Q = poly.iter().map(|p| p[1]).sum();
    [sx / n, sy / n]
}

/// An affine map `z -> m z + t` applied on a convex region.
struct RegionMap {
    planes: Vec<HalfPlane>,
    matrix: Mat2,
    offset: Vec2,
}

/// Pieces of `R_a^{-1}` as convex regions of `R` with their affine maps.
fn inverse_regions(a: Q) -> Vec<RegionMap> {
    let id = Mat2::identity();
    let zero = [Q::zero(), Q::zero()];
    if a.is_zero() {
        return vec![RegionMap { planes: Vec::new(), matrix: id, offset: zero }];
    }
    let c = half() - a;
    let mut out = vec![
        RegionMap { planes: vec![HalfPlane::new(1, 0, c)], matrix: id, offset: zero },
        RegionMap {
            planes: vec![HalfPlane::new(-1, 0, -c), HalfPlane::new(0, 1, c), HalfPlane::new(0, -1, c)],
            matrix: id,
            offset: zero,
        },
    ];
    let inv: Vec<Mat2> = t_matrices().iter().map(|t| t.inverse().expect("invertible")).collect();
    let j = Mat2::flip();
    for mirrored in [false, true] {
        // local coordinates u = x - c, v = +-y - c
        let s: i128 = if mirrored { -1 } else { 1 };
        let base = vec![HalfPlane::new(-1, 0, -c), HalfPlane::new(0, -s, -c)];
        // v <= u, u <= v <= 2u, v >= 2u; u - v and 2u - v shift by c and -c
        let cuts = [
            vec![HalfPlane::new(-1, s, Q::zero())],
            vec![HalfPlane::new(1, -s, Q::zero()), HalfPlane::new(-2, s, -c)],
            vec![HalfPlane::new(2, -s, c)],
        ];
        for (i, cut) in cuts.into_iter().enumerate() {
            let mut planes = base.clone();
            planes.extend(cut);
            // z -> C + M (z - C), conjugated by j on the mirror
            let m = if mirrored { j * inv[i] * j } else { inv[i] };
            let corner = if mirrored { [c, -c] } else { [c, c] };
            let mc = m.apply(corner);
            out.push(RegionMap { planes, matrix: m, offset: [corner[0] - mc[0], corner[1] - mc[1]] });
        }
    }
    out
}

fn apply_affine(poly: &[Vec2], m: &Mat2, t: Vec2) -> Polygon {
    poly.iter()
        .map(|&z| {
            let w = m.apply(z);
            [w[0] + t[0], w[1] + t[1]]
        })
        .collect()
}

/// All fragments of `f_a^{-1}` of a set of fragments.
fn pull_back(regions: &[RegionMap], fragments: &[Polygon]) -> Vec<Polygon> {
    let two = Q::from_integer(2);
    let h = half();
    let mut out = Vec::new();
    for frag in fragments {
        for region in regions {
            let mut piece = frag.clone();
            for plane in &region.planes {
                piece = clip(&piece, plane);
                if piece.is_empty() {
                    break;
                }
            }
            if piece.is_empty() {
                continue;
            }
            let moved = apply_affine(&piece, &region.matrix, region.offset);
            for m in 0..2 {
                for n in 0..2 {
                    let lifted: Polygon = moved
                        .iter()
                        .map(|z| [(z[0] + Q::from_integer(m)) / two, (z[1] + Q::from_integer(n)) / two])
                        .collect();
                    let below = clip(&lifted, &HalfPlane::new(0, 1, h));
                    let above = clip(&lifted, &HalfPlane::new(0, -1, -h));
                    for part in [below, above] {
                        if part.is_empty() {
                            continue;
                        }
                        let g = canonicalize(vertex_mean(&part)).1;
                        out.push(part.iter().map(|&z| g.apply(z)).collect());
                    }
                }
            }
        }
    }
    out
}

/// Line through a segment as an exact key plus the parameter range along it.
fn line_key(p: Vec2, q: Vec2) -> ((u8, Q, Q), Q, Q) {
    if p[0] == q[0] {
        let (lo, hi) = if p[1] <= q[1] { (p[1], q[1]) } else { (q[1], p[1]) };
        ((1, p[0], Q::zero()), lo, hi)
    } else {
        let slope = (q[1] - p[1]) / (q[0] - p[0]);
        let intercept = p[1] - slope * p[0];
        let (lo, hi) = if p[0] <= q[0] { (p[0], q[0]) } else { (q[0], p[0]) };
        ((0, slope, intercept), lo, hi)
    }
}

/// Representations of an edge: itself, plus its glued copy when it lies on
/// the boundary of `R`.
fn edge_copies(p: Vec2, q: Vec2) -> Vec<(Vec2, Vec2)> {
    let h = half();
    let mut out = vec![(p, q)];
    if p[0] == q[0] && (p[0].is_zero() || p[0] == h) {
        out.push(([p[0], -p[1]], [q[0], -q[1]]));
    }
    if p[1] == q[1] && p[1].abs() == h {
        out.push(([p[0], -p[1]], [q[0], -q[1]]));
    }
    out
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut k = i;
        while self.0[k] != r {
            let next = self.0[k];
            self.0[k] = r;
            k = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Groups fragments into connected pieces through shared edges of positive
/// length.
fn components(fragments: &[Polygon]) -> Vec<Vec<usize>> {
    let mut lines: BTreeMap<(u8, Q, Q), Vec<(Q, Q, usize)>> = BTreeMap::new();
    for (i, poly) in fragments.iter().enumerate() {
        for k in 0..poly.len() {
            let (p, q) = (poly[k], poly[(k + 1) % poly.len()]);
            for (a, b) in edge_copies(p, q) {
                let (key, lo, hi) = line_key(a, b);
                lines.entry(key).or_default().push((lo, hi, i));
            }
        }
    }
    let mut uf = UnionFind((0..fragments.len()).collect());
    for (_, mut segs) in lines {
        segs.sort();
        for i in 0..segs.len() {
            for j in i + 1..segs.len() {
                if segs[j].0 >= segs[i].1 {
                    break;
                }
                if segs[i].2 != segs[j].2 {
                    uf.union(segs[i].2, segs[j].2);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..fragments.len() {
        let r = uf.find(i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

fn make_tile(fragments: Vec<Polygon>, depth: usize, face: u8) -> Tile {
    let mut area = Q::zero();
    let (mut cx, mut cy) = (0.0, 0.0);
    for f in &fragments {
        let w = polygon_area(f);
        let m = vertex_mean(f);
        area += w;
        cx += to_f64(w) * to_f64(m[0]);
        cy += to_f64(w) * to_f64(m[1]);
    }
    let total = to_f64(area);
    Tile { fragments, depth, face, area, centroid: [cx / total, cy / total] }
}

/// Checks `f_a(skeleton) in skeleton` on rational samples of the four edges.
pub fn skeleton_forward_invariant(a: Q, samples: i128) -> Result<bool> {
    let h = half();
    for k in 0..=samples {
        let t = Q::new(k, samples) * h;
        for p in [orb_point(t, Q::zero()), orb_point(t, h), orb_point(Q::zero(), t), orb_point(h, t), orb_point(Q::zero(), -t), orb_point(h, -t)] {
            if !f_a(a, &p)?.on_skeleton() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Boundary segments of a tile in `R`: parts of fragment edges covered once.
pub fn tile_outline(tile: &Tile) -> Vec<[Vec2; 2]> {
    let mut lines: BTreeMap<(u8, Q, Q), Vec<(Q, Q)>> = BTreeMap::new();
    for poly in &tile.fragments {
        for k in 0..poly.len() {
            let (key, lo, hi) = line_key(poly[k], poly[(k + 1) % poly.len()]);
            lines.entry(key).or_default().push((lo, hi));
        }
    }
    let mut out = Vec::new();
    for (key, segs) in lines {
        let mut cuts: Vec<Q> = segs.iter().flat_map(|s| [s.0, s.1]).collect();
        cuts.sort();
        cuts.dedup();
        for w in cuts.windows(2) {
            let mid = (w[0] + w[1]) / Q::from_integer(2);
            let cover = segs.iter().filter(|s| s.0 < mid && mid < s.1).count();
            if cover == 1 {
                out.push([point_on(key, w[0]), point_on(key, w[1])]);
            }
        }
    }
    out
}

fn point_on(key: (u8, Q, Q), t: Q) -> Vec2 {
    if key.0 == 1 {
        [key.1, t]
    } else {
        [t, key.1 * t + key.2]
    }
}

/// Merges collinear overlapping or touching segments.
fn merge_segments(segs: Vec<[Vec2; 2]>) -> Vec<[Vec2; 2]> {
    let mut lines: BTreeMap<(u8, Q, Q), Vec<(Q, Q)>> = BTreeMap::new();
    for s in segs {
        let (key, lo, hi) = line_key(s[0], s[1]);
        lines.entry(key).or_default().push((lo, hi));
    }
    let mut out = Vec::new();
    for (key, mut ivs) in lines {
        ivs.sort();
        let mut cur = ivs[0];
        for iv in ivs.into_iter().skip(1) {
            if iv.0 <= cur.1 {
                if iv.1 > cur.1 {
                    cur.1 = iv.1;
                }
            } else {
                out.push([point_on(key, cur.0), point_on(key, cur.1)]);
                cur = iv;
            }
        }
        out.push([point_on(key, cur.0), point_on(key, cur.1)]);
    }
    out
}

/// The tiling by components of `f_a^{-depth}` of the open faces.
pub fn subdivide(a: Q, depth: usize) -> Result<Tiling> {
    check_a(a)?;
    if depth > MAX_DEPTH {
        return Err(Error::InvalidParameter(format!("depth {depth} exceeds the cap {MAX_DEPTH}")));
    }
    if !skeleton_forward_invariant(a, 64)? {
        return Err(Error::Inconsistent("the 1-skeleton is not forward invariant".into()));
    }
    let (z, h) = (Q::zero(), half());
    let front = vec![[z, z], [h, z], [h, h], [z, h]];
    let back = vec![[z, -h], [h, -h], [h, z], [z, z]];
    let mut tiles = vec![make_tile(vec![front], 0, 0), make_tile(vec![back], 0, 1)];
    let regions = inverse_regions(a);
    for level in 1..=depth {
        let mut next = Vec::with_capacity(tiles.len() * 4);
        for tile in &tiles {
            let pulled = pull_back(&regions, &tile.fragments);
            let groups = components(&pulled);
            if groups.len() != 4 {
                return Err(Error::Inconsistent(format!(
                    "a tile at depth {} has {} preimage components instead of 4",
                    level - 1,
                    groups.len()
                )));
            }
            for g in groups {
                let frags = g.into_iter().map(|i| pulled[i].clone()).collect();
                next.push(make_tile(frags, level, tile.face));
            }
        }
        tiles = next;
    }
    tiles.sort_by(|s, t| s.centroid[0].total_cmp(&t.centroid[0]).then(s.centroid[1].total_cmp(&t.centroid[1])));
    let skeleton = merge_segments(tiles.iter().flat_map(tile_outline).collect());
    Ok(Tiling { a, depth, tiles, skeleton })
}
