use cxc_core::pillowcase::map::{t_matrices, Region};
use cxc_core::pillowcase::tiling::skeleton_forward_invariant;
use cxc_core::pillowcase::{differential_report, obstruction_report, postcritical_set, subdivide, tent_orbit, Mat2, OrbPoint};
use cxc_core::Q;
use serde_json::{json, Value};

use super::rat;
use crate::output::Format;
use crate::render::tiling_svg;
use crate::PillowCommand;

fn point(p: &OrbPoint) -> Value {
    json!([rat(p.x()), rat(p.y())])
}

fn matrix(m: &Mat2) -> Value {
    m.0.iter().map(|row| row.iter().map(|&x| rat(x)).collect::<Vec<_>>()).collect()
}

fn region(r: Region) -> String {
    match r {
        Region::Plain => "plain".into(),
        Region::Q(i) => format!("q{}", i + 1),
        Region::JQ(i) => format!("jq{}", i + 1),
    }
}

pub fn run(command: PillowCommand) -> anyhow::Result<()> {
    match command {
        PillowCommand::Subdivide { a, depth, out } => {
            let format = out.format(&[Format::Json, Format::Svg])?;
            let t = subdivide(a.a, depth)?;
            if format == Format::Svg {
                return out.write(tiling_svg(&t).as_bytes());
            }
            let front = t.tiles.iter().filter(|tile| tile.face == 0).count();
            let area: Q = t.tiles.iter().map(|tile| tile.area).sum();
            let tiles: Vec<Value> = t
                .tiles
                .iter()
                .map(|tile| {
                    json!({
                        "face": if tile.face == 0 { "front" } else { "back" },
                        "area": rat(tile.area),
                        "centroid": tile.centroid,
                        "fragments": tile.fragments.iter().map(|f| f.iter().map(|v| json!([rat(v[0]), rat(v[1])])).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            out.json(&json!({
                "a": rat(t.a),
                "depth": t.depth,
                "tile_count": t.tiles.len(),
                "faces": {"front": front, "back": t.tiles.len() - front},
                "total_area": rat(area),
                "skeleton_segments": t.skeleton.len(),
                "tiles": tiles,
            }))
        }
        PillowCommand::Pcs { a, max_steps, out } => {
            out.format(&[Format::Json])?;
            let pcs = postcritical_set(a.a, max_steps)?;
            out.json(&json!({"a": rat(a.a), "count": pcs.len(), "points": pcs.iter().map(point).collect::<Vec<_>>()}))
        }
        PillowCommand::Obstruct { a, out } => {
            out.format(&[Format::Json])?;
            let r = obstruction_report(a.a)?;
            let pre: Vec<Value> =
                r.preimages.iter().map(|&(h, degree, iso)| json!({"height": h.map(rat), "degree": degree, "isotopic": iso})).collect();
            let m: Vec<Vec<Value>> = r.thurston.matrix.iter().map(|row| row.iter().map(|&x| rat(x)).collect()).collect();
            out.json(&json!({
                "a": rat(r.a),
                "curve_height": rat(r.curve_height),
                "preimages": pre,
                "thurston": {"matrix": m, "radius": r.thurston.radius, "obstructed": r.thurston.obstructed, "dropped": r.thurston.dropped},
                "lattes": r.lattes,
                "obstructed": r.obstructed,
            }))
        }
        PillowCommand::Diff { a, out } => {
            out.format(&[Format::Json])?;
            let r = differential_report(a.a)?;
            let pieces: Vec<Value> = r
                .pieces
                .iter()
                .map(|p| json!({"region": region(p.region), "matrix": matrix(&p.matrix), "singular_values": [p.singular_values.0, p.singular_values.1]}))
                .collect();
            let ts: Vec<Value> = t_matrices()
                .iter()
                .map(|m| {
                    let (lo, hi) = m.singular_values();
                    json!({"matrix": matrix(m), "singular_values": [lo, hi]})
                })
                .collect();
            out.json(&json!({
                "a": rat(a.a),
                "t_matrices": ts,
                "pieces": pieces,
                "min_sv": r.min_sv,
                "second_iterate_bound": r.second_iterate_bound,
                "q_disjointness": r.q_disjointness,
                "samples_checked": r.samples_checked,
            }))
        }
        PillowCommand::Tent { a, max_steps, out } => {
            out.format(&[Format::Json])?;
            let t = tent_orbit(a.a, max_steps)?;
            out.json(&json!({
                "a": rat(a.a),
                "orbit": t.orbit.iter().map(|&x| rat(x)).collect::<Vec<_>>(),
                "preperiod": t.preperiod,
                "period": t.period,
                "pcf": t.pcf,
            }))
        }
        PillowCommand::Skeleton { a, samples, out } => {
            out.format(&[Format::Json])?;
            let ok = skeleton_forward_invariant(a.a, samples.max(1))?;
            out.json(&json!({"a": rat(a.a), "samples": samples, "forward_invariant": ok}))
        }
    }
}
