use std::fmt::Write;

use cxc_core::pillowcase::tiling::tile_outline;
use cxc_core::pillowcase::Tiling;
use cxc_core::rational::to_f64;

const SCALE: f64 = 800.0;
const FACE_FILL: [&str; 2] = ["#cfe0ef", "#f2dcc4"];

/// Binary greymap, row-major, one byte per pixel.
pub fn pgm(width: u32, height: u32, pixels: &[u8]) -> Vec<u8> {
    debug_assert_eq!(pixels.len(), (width * height) as usize);
    let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
    out.extend_from_slice(pixels);
    out
}

/// The rectangle `[0, 1/2] x [-1/2, 1/2]` with `y` pointing up.
fn to_px(p: [f64; 2]) -> (f64, f64) {
    (p[0] * SCALE, (0.5 - p[1]) * SCALE)
}

/// One filled path per tile, coloured by face, with tile outlines on top.
pub fn tiling_svg(t: &Tiling) -> String {
    let (w, h) = (0.5 * SCALE, SCALE);
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(s, r#"<g stroke="none">"#);
    for tile in &t.tiles {
        let mut d = String::new();
        for poly in &tile.fragments {
            for (i, v) in poly.iter().enumerate() {
                let (x, y) = to_px([to_f64(v[0]), to_f64(v[1])]);
                let _ = write!(d, "{}{x:.3} {y:.3} ", if i == 0 { 'M' } else { 'L' });
            }
            d.push_str("Z ");
        }
        let _ = writeln!(s, r#"<path fill="{}" d="{}"/>"#, FACE_FILL[tile.face as usize & 1], d.trim_end());
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r##"<g stroke="#333" stroke-width="0.6" stroke-linecap="round">"##);
    for tile in &t.tiles {
        for [p, q] in tile_outline(tile) {
            let (x1, y1) = to_px([to_f64(p[0]), to_f64(p[1])]);
            let (x2, y2) = to_px([to_f64(q[0]), to_f64(q[1])]);
            let _ = writeln!(s, r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#);
        }
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    s
}

/// Interval diagram: row `k` shows the level-`k` intervals.
pub fn strips_svg(rows: &[Vec<(f64, f64)>]) -> String {
    let (width, row_h, gap, margin) = (1000.0, 14.0, 6.0, 10.0);
    let lo = rows.iter().flatten().map(|iv| iv.0).fold(f64::INFINITY, f64::min);
    let hi = rows.iter().flatten().map(|iv| iv.1).fold(f64::NEG_INFINITY, f64::max);
    let span = if hi > lo { hi - lo } else { 1.0 };
    let height = 2.0 * margin + rows.len() as f64 * (row_h + gap);
    let total = width + 2.0 * margin;
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total}" height="{height}" viewBox="0 0 {total} {height}">"#);
    for (k, row) in rows.iter().enumerate() {
        let y = margin + k as f64 * (row_h + gap);
        let _ = writeln!(s, r##"<g fill="#2b4c7e" data-level="{k}">"##);
        for &(l, r) in row {
            let x = margin + (l - lo) / span * width;
            let w = ((r - l) / span * width).max(0.25);
            let _ = writeln!(s, r#"<rect x="{x:.3}" y="{y:.1}" width="{w:.3}" height="{row_h}"/>"#);
        }
        let _ = writeln!(s, "</g>");
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pgm_header() {
        let bytes = pgm(2, 1, &[0, 255]);
        assert!(bytes.starts_with(b"P5\n2 1\n255\n"));
        assert_eq!(bytes.len(), 11 + 2);
    }

    #[test]
    fn strips_have_one_rect_per_interval() {
        let svg = strips_svg(&[vec![(0.0, 1.0)], vec![(0.0, 0.25), (0.75, 1.0)]]);
        assert_eq!(svg.matches("<rect").count(), 3);
    }
}
