use cxc_core::dimension::{perron_vector, solve_exponent, spectral_radius_at, DimensionResult, ExponentMode};
use cxc_core::gdms::{box_dimension, build_gdms, GdmsPoint, IntervalSystem};
use cxc_core::multigraph::validate_graph;
use cxc_core::skewprod::{product_box_dimension, random_word, sample_orbit, skew_dimension};
use cxc_core::verify::snowflake_fit;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{load_graph, read_graph};
use crate::output::{csv_bytes, usage, Format};
use crate::{DimArgs, DimMode, GdmsArgs, GraphArgs, SkewArgs, SystemArgs};

pub fn graph(args: GraphArgs) -> anyhow::Result<()> {
    args.out.format(&[Format::Json])?;
    let g = read_graph(&args.graph)?;
    let report = validate_graph(&g)?;
    let edges: Vec<Value> = g.edges().iter().map(|e| json!({"src": e.src + 1, "dst": e.dst + 1, "degree": e.degree})).collect();
    args.out.json(&json!({
        "vertices": g.vertex_count(),
        "edges": edges,
        "irreducible": report.irreducible,
        "unreachable": report.unreachable.map(|(a, b)| [a + 1, b + 1]),
        "levy_cycle": report.levy_witness.as_ref().map(|c| c.edges.iter().map(|e| e + 1).collect::<Vec<_>>()),
        "simple_cycles": report.simple_cycles,
        "valid": report.is_valid(),
    }))?;
    report.into_result()?;
    Ok(())
}

fn alpha_required(alpha: Option<f64>, mode: &str) -> anyhow::Result<f64> {
    alpha.ok_or_else(|| usage(format!("--mode {mode} needs --alpha")))
}

fn trace_rows(r: &DimensionResult) -> Vec<Vec<String>> {
    r.radius_trace.iter().map(|(e, rad)| vec![e.to_string(), rad.to_string()]).collect()
}

fn solution_json(r: &DimensionResult, trace: bool) -> Value {
    let mut v = json!({
        "exponent": r.exponent,
        "bracket": [r.bracket.0, r.bracket.1],
        "tolerance": r.tolerance,
        "evaluations": r.evaluations,
    });
    if trace {
        v["trace"] = r.radius_trace.iter().map(|&(e, rad)| json!([e, rad])).collect();
    }
    v
}

pub fn dim(args: DimArgs) -> anyhow::Result<()> {
    let g = load_graph(&args.graph)?;
    let solving = matches!(args.mode, DimMode::Conformal | DimMode::Hausdorff);
    let allowed: &[Format] = if solving { &[Format::Json, Format::Csv] } else { &[Format::Json] };
    let format = args.out.format(allowed)?;
    let value = match args.mode {
        DimMode::Conformal => {
            let r = solve_exponent(&g, ExponentMode::Conformal, args.tol)?;
            if format == Format::Csv {
                return args.out.write(&csv_bytes(&["exponent", "radius"], trace_rows(&r))?);
            }
            let mut v = solution_json(&r, args.trace);
            v["mode"] = "conformal".into();
            v["skew_dimension"] = (1.0 + r.exponent).into();
            v
        }
        DimMode::Hausdorff => {
            let alpha = alpha_required(args.alpha, "hausdorff")?;
            let r = solve_exponent(&g, ExponentMode::Hausdorff { alpha }, args.tol)?;
            if format == Format::Csv {
                return args.out.write(&csv_bytes(&["exponent", "radius"], trace_rows(&r))?);
            }
            let mut v = solution_json(&r, args.trace);
            v["mode"] = "hausdorff".into();
            v["alpha"] = alpha.into();
            v["delta_over_alpha"] = (r.exponent / alpha).into();
            v
        }
        DimMode::Radius => {
            let alpha = alpha_required(args.alpha, "radius")?;
            let est = spectral_radius_at(&g, alpha, args.tol)?;
            json!({
                "mode": "radius",
                "alpha": alpha,
                "radius": est.radius,
                "enclosure": [est.enclosure.0, est.enclosure.1],
                "iterations": est.iterations,
                "vector": est.vector,
            })
        }
        DimMode::Perron => {
            let alpha = alpha_required(args.alpha, "perron")?;
            let p = perron_vector(&g, alpha, args.tol)?;
            json!({"mode": "perron", "alpha": p.alpha, "radius": p.radius, "vector": p.vector})
        }
    };
    args.out.json(&value)
}

pub fn build_system(args: &SystemArgs) -> anyhow::Result<IntervalSystem> {
    let g = load_graph(&args.graph)?;
    let sys = build_gdms(&g, args.alpha, args.cross_distance)?;
    if args.reverse.is_empty() {
        return Ok(sys);
    }
    let mut reversed = vec![false; g.edges().len()];
    for &e in &args.reverse {
        if e == 0 || e > reversed.len() {
            return Err(usage(format!("--reverse edge {e} is not in 1..={}", reversed.len())));
        }
        reversed[e - 1] = true;
    }
    Ok(sys.with_orientations(reversed)?)
}

fn min_depth(depth: usize) -> anyhow::Result<()> {
    if depth < 3 {
        return Err(usage("--depth must be at least 3 for box counting"));
    }
    Ok(())
}

fn word_label(start: usize, edges: &[usize]) -> String {
    let path: Vec<String> = edges.iter().map(|e| (e + 1).to_string()).collect();
    format!("{}:{}", start + 1, path.join("."))
}

fn repellor_pairs(sys: &IntervalSystem, count: usize, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = sys.graph().vertex_count();
    let point = |rng: &mut ChaCha8Rng| {
        let start = rng.gen_range(0..n);
        let word = random_word(sys, start, 48, rng);
        let end = sys.base_interval(word.end(sys.graph()));
        GdmsPoint { component: start, coordinate: sys.cylinder_point(&word, end.mid()) }
    };
    let mut pairs = Vec::with_capacity(count);
    while pairs.len() < count {
        let (p, q) = (point(&mut rng), point(&mut rng));
        let d = sys.distance(&p, &q, false);
        if d > 0.0 {
            pairs.push((d, sys.distance(&p, &q, true)));
        }
    }
    pairs
}

pub fn gdms(args: GdmsArgs) -> anyhow::Result<()> {
    let format = args.out.format(&[Format::Json, Format::Csv, Format::Svg])?;
    let sys = build_system(&args.system)?;
    match format {
        Format::Csv => {
            let rows = sys.repellor_cover(args.depth).into_iter().map(|(w, iv)| {
                vec![word_label(w.start, &w.edges), iv.left.to_string(), iv.right.to_string(), iv.len().to_string()]
            });
            args.out.write(&csv_bytes(&["word", "left", "right", "length"], rows)?)
        }
        Format::Svg => {
            let rows: Vec<Vec<(f64, f64)>> =
                (0..=args.depth).map(|k| sys.repellor_cover(k).into_iter().map(|(_, iv)| (iv.left, iv.right)).collect()).collect();
            args.out.write(crate::render::strips_svg(&rows).as_bytes())
        }
        _ => {
            min_depth(args.depth)?;
            let g = sys.graph();
            let s = solve_exponent(g, ExponentMode::Conformal, 1e-12)?.exponent;
            let delta = solve_exponent(g, ExponentMode::Hausdorff { alpha: sys.alpha() }, 1e-12)?.exponent;
            let plain = box_dimension(&sys, false, 2..=args.depth)?;
            let snow = box_dimension(&sys, true, 2..=args.depth)?;
            let subs: Vec<Value> = (0..g.edges().len())
                .map(|e| {
                    let j = sys.sub_interval(e);
                    json!({"edge": e + 1, "interval": [j.left, j.right], "expansion": sys.expansion(e), "reversed": sys.is_reversed(e)})
                })
                .collect();
            let mut v = json!({
                "alpha": sys.alpha(),
                "cross_distance": sys.cross_distance(),
                "weights": sys.weights(),
                "base_intervals": sys.base_intervals().iter().map(|iv| [iv.left, iv.right]).collect::<Vec<_>>(),
                "sub_intervals": subs,
                "conformal_dimension": s,
                "hausdorff_dimension": delta,
                "box_dimension": {"plain": plain.estimate, "snowflaked": snow.estimate, "depths": [2, args.depth]},
                "cylinders": sys.repellor_cover(args.depth).len(),
            });
            if let Some(count) = args.snowflake_pairs {
                let fit = snowflake_fit(&repellor_pairs(&sys, count, args.seed))?;
                v["snowflake_fit"] = json!({"exponent": fit.exponent, "residual_band": fit.residual_band, "count": fit.count});
            }
            args.out.json(&v)
        }
    }
}

pub fn skew(args: SkewArgs) -> anyhow::Result<()> {
    let format = args.out.format(&[Format::Json, Format::Csv])?;
    let sys = build_system(&args.system)?;
    if format == Format::Csv {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        let rows = sample_orbit(&sys, args.steps, &mut rng)
            .into_iter()
            .enumerate()
            .map(|(i, p)| vec![i.to_string(), (p.base.component + 1).to_string(), p.base.coordinate.to_string(), p.angle.to_string()]);
        return args.out.write(&csv_bytes(&["step", "component", "coordinate", "angle"], rows)?);
    }
    min_depth(args.depth)?;
    let d = skew_dimension(&sys, args.tol)?;
    let product = product_box_dimension(&sys, 2..=args.depth)?;
    args.out.json(&json!({
        "base_dimension": d.base_dimension,
        "dimension": d.dimension,
        "realizes_conformal_dimension": d.realizes_conformal_dimension,
        "product_box_dimension": product.estimate,
        "depths": [2, args.depth],
    }))
}
