use cxc_core::menger::{FoldMode, MengerParams};
use cxc_core::verify::{
    build_covers, check_refinement, degree_report, distortion_report, eventually_onto_check, mesh_decay, visual_metric_check,
    DistortionKind, DistortionRow, GdmsAdapter, GridCover, HalfIntervalAdapter, MengerAdapter, Onto, PillowGridAdapter,
    SkewAdapter, SystemAdapter, DEFAULT_SPREAD_BOUND,
};
use serde_json::{json, Value};

use super::graph::build_system;
use crate::output::{csv_bytes, usage, Format};
use crate::{FoldArg, SystemArgs, SystemKind, VerifyArgs};

const REFINEMENT_SAMPLES: usize = 16;
const REFINEMENT_PAIRS: usize = 64;
const VISUAL_PER_LEVEL: usize = 256;
const ONTO_ELEMENTS: usize = 8;
const ONTO_MAX_ITER: usize = 32;

fn default_depth(kind: SystemKind) -> usize {
    match kind {
        SystemKind::Gdms | SystemKind::Half => 8,
        SystemKind::Skew => 4,
        SystemKind::Menger => 2,
        SystemKind::Pillow => 3,
    }
}

fn kind_summary(rows: &[DistortionRow], kind: DistortionKind) -> Value {
    let picked: Vec<&DistortionRow> = rows.iter().filter(|r| r.kind == kind).collect();
    let max_in = picked.iter().map(|r| r.value_in).fold(f64::NAN, f64::max);
    let max_out = picked.iter().map(|r| r.value_out).fold(f64::NAN, f64::max);
    json!({"rows": picked.len(), "max_in": max_in, "max_out": max_out})
}

struct Report {
    summary: Value,
    rows: Vec<DistortionRow>,
}

fn check<A: SystemAdapter>(adapter: &A, args: &VerifyArgs, depth: usize) -> anyhow::Result<Report> {
    let covers = build_covers(adapter, depth, args.max_elements)?;
    let k = args.k.clamp(1, depth.max(1));
    let degree = degree_report(&covers, k);
    let refinement = check_refinement(adapter, &covers, REFINEMENT_SAMPLES, REFINEMENT_PAIRS)?;
    let distortion = distortion_report(adapter, &covers, k, args.samples, args.seed)?;

    let visual = if depth >= 5 {
        match visual_metric_check(adapter, &covers, 2..=depth, DEFAULT_SPREAD_BOUND, VISUAL_PER_LEVEL) {
            Ok(v) => json!({
                "levels": [2, depth],
                "epsilon": v.epsilon,
                "spread": v.spread,
                "roundness_sup": v.roundness_sup,
                "local_similarity_error": v.local_similarity_error,
                "elements": v.elements,
                "passed": v.passed,
            }),
            Err(e) => json!({"error": e.to_string()}),
        }
    } else {
        Value::Null
    };

    let level = depth.min(2);
    let mut onto = Some(0usize);
    for node in covers.level(level).iter().take(ONTO_ELEMENTS) {
        match eventually_onto_check(adapter, &node.element, ONTO_MAX_ITER) {
            Ok(Onto::After(n)) => onto = onto.map(|m| m.max(n)),
            Ok(Onto::NotWithin(_)) => {
                onto = None;
                break;
            }
            Err(_) => {
                onto = None;
                break;
            }
        }
    }

    let summary = json!({
        "depth": depth,
        "elements": covers.levels().iter().map(Vec::len).collect::<Vec<_>>(),
        "mesh": covers.mesh(),
        "mesh_decay": mesh_decay(&covers).ok(),
        "degree": {"max_by_k": degree.max_by_k, "max_degree": degree.max_degree},
        "refinement": {"pairs": refinement.pairs, "outside": refinement.outside, "max_gap": refinement.max_gap},
        "distortion": {
            "k": k,
            "samples": args.samples,
            "seed": args.seed,
            "skipped": distortion.skipped,
            "roundness": kind_summary(&distortion.rows, DistortionKind::Roundness),
            "diameter": kind_summary(&distortion.rows, DistortionKind::Diameter),
        },
        "visual_metric": visual,
        "eventually_onto": {"level": level, "iterations": onto},
    });
    Ok(Report { summary, rows: distortion.rows })
}

fn system_args(args: &VerifyArgs) -> anyhow::Result<SystemArgs> {
    let graph = args.graph.clone().ok_or_else(|| usage("--system gdms and skew need --graph"))?;
    Ok(SystemArgs { graph, alpha: args.alpha, cross_distance: None, reverse: Vec::new() })
}

pub fn run(args: VerifyArgs) -> anyhow::Result<()> {
    let format = args.out.format(&[Format::Json, Format::Csv])?;
    let depth = args.depth.unwrap_or_else(|| default_depth(args.system));
    let (name, report) = match args.system {
        SystemKind::Gdms => ("gdms", check(&GdmsAdapter::new(build_system(&system_args(&args)?)?, args.snowflaked), &args, depth)?),
        SystemKind::Skew => ("skew", check(&SkewAdapter::new(build_system(&system_args(&args)?)?), &args, depth)?),
        SystemKind::Half => ("half", check(&HalfIntervalAdapter::default(), &args, depth)?),
        SystemKind::Menger => {
            let mode = match args.menger.fold {
                FoldArg::Reflect => FoldMode::Reflect,
                FoldArg::Translate => FoldMode::Translate,
            };
            let params = MengerParams::new(args.menger.n, args.menger.factors.clone(), mode)?;
            ("menger", check(&MengerAdapter::new(params)?, &args, depth)?)
        }
        SystemKind::Pillow => {
            let a = args.a.ok_or_else(|| usage("--system pillow needs --a"))?;
            let cover = args.coarse.map_or(GridCover::Faces, |coarse| GridCover::Stars { coarse });
            ("pillow", check(&PillowGridAdapter::new(a, args.grid, cover)?, &args, depth)?)
        }
    };
    if format == Format::Csv {
        let rows = report.rows.iter().map(|r| {
            vec![r.kind.name().to_string(), r.n.to_string(), r.k.to_string(), r.value_in.to_string(), r.value_out.to_string()]
        });
        return args.out.write(&csv_bytes(&["kind", "n", "k", "value_in", "value_out"], rows)?);
    }
    let mut summary = report.summary;
    summary["system"] = name.into();
    args.out.json(&summary)
}
