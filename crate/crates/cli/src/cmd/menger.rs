use cxc_core::menger::{
    expanding_map, membership, membership_exact, segment_clear_of_folds, snowflake_distance, CubePoint, FoldMode, Membership,
    MengerParams, DEFAULT_BOUNDARY_TOL,
};
use cxc_core::rational::to_f64;
use cxc_core::Q;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::rat;
use crate::output::{usage, Format};
use crate::parse::{coords, Coords};
use crate::render::pgm;
use crate::{FoldArg, MengerArgs, MengerCommand};

fn params(args: &MengerArgs) -> anyhow::Result<MengerParams> {
    let mode = match args.fold {
        FoldArg::Reflect => FoldMode::Reflect,
        FoldArg::Translate => FoldMode::Translate,
    };
    Ok(MengerParams::new(args.n, args.factors.clone(), mode)?)
}

fn verdict(m: Membership) -> Value {
    match m {
        Membership::In => json!({"membership": "in", "level": null}),
        Membership::Out { level } => json!({"membership": "out", "level": level}),
        Membership::BoundaryUnknown { level } => json!({"membership": "boundary_unknown", "level": level}),
    }
}

pub fn run(command: MengerCommand) -> anyhow::Result<()> {
    match command {
        MengerCommand::Query { params: p, point, depth, tol, out } => {
            out.format(&[Format::Json])?;
            let params = params(&p)?;
            let (m, shown, exact) = match coords(&point).map_err(usage)? {
                Coords::Exact(x) => (membership_exact(&params, &x, depth)?, x.iter().map(|&c| rat(c)).collect::<Vec<_>>(), true),
                Coords::Float(x) => {
                    let shown = x.iter().map(|&c| json!(c)).collect();
                    (membership(&params, &CubePoint::new(x)?, depth, tol)?, shown, false)
                }
            };
            let mut v = verdict(m);
            v["point"] = shown.into();
            v["exact"] = exact.into();
            v["depth"] = depth.into();
            out.json(&v)
        }
        MengerCommand::Slice { params: p, axes, fixed, size, depth, out } => {
            out.format(&[Format::Pgm])?;
            let params = params(&p)?;
            let k = params.k();
            if axes.len() != 2 || axes[0] == axes[1] || axes.iter().any(|&a| a == 0 || a > k) {
                return Err(usage(format!("--axes needs two distinct coordinates in 1..={k}")));
            }
            if fixed.len() > k - 2 {
                return Err(usage(format!("--fixed takes at most {} values", k - 2)));
            }
            let mut rest = fixed.into_iter().chain(std::iter::repeat(Q::zero()));
            let mut x: Vec<Q> = (1..=k).map(|i| if axes.contains(&i) { Q::zero() } else { rest.next().unwrap() }).collect();
            let size = size.max(1);
            let centre = |i: u32| Q::new(2 * i as i128 + 1, 2 * size as i128);
            let mut pixels = Vec::with_capacity((size * size) as usize);
            for row in 0..size {
                x[axes[1] - 1] = centre(size - 1 - row);
                for col in 0..size {
                    x[axes[0] - 1] = centre(col);
                    let inside = membership_exact(&params, &x, depth)? == Membership::In;
                    pixels.push(if inside { 0 } else { 255 });
                }
            }
            out.write(&pgm(size, size, &pixels))
        }
        MengerCommand::Check { params: p, samples, depth, seed, out } => {
            out.format(&[Format::Json])?;
            let params = params(&p)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let oracle = oracle_check(&params, samples, depth, &mut rng)?;
            let homothety = homothety_check(&params, samples, &mut rng)?;
            out.json(&json!({
                "factors": params.factors(),
                "n": params.n(),
                "depth": depth,
                "membership": oracle,
                "homothety": homothety,
            }))
        }
    }
}

/// `lambda^level x` folded into `[0, 1]` in closed form.
fn folded_power(x: Q, factor: u32, level: usize, mode: FoldMode) -> Q {
    let y = x * Q::from_integer((factor as i128).pow(level as u32));
    match mode {
        FoldMode::Reflect => {
            let two = Q::from_integer(2);
            let r = y - two * (y / two).floor();
            r.min(two - r)
        }
        FoldMode::Translate => y - y.floor(),
    }
}

fn closed_form_membership(params: &MengerParams, x: &[Q], depth: usize) -> Membership {
    let (lo, hi) = (Q::new(1, 3), Q::new(2, 3));
    for level in 0..=depth {
        let inside = x
            .iter()
            .zip(params.factors())
            .filter(|&(&c, &l)| {
                let y = folded_power(c, l, level, params.mode());
                lo < y && y < hi
            })
            .count();
        if inside > params.n() {
            return Membership::Out { level };
        }
    }
    Membership::In
}

/// Float membership at points with denominators `3^9 * {1, 2, 4}` against the
/// closed form; undecided points are counted separately.
fn oracle_check(params: &MengerParams, samples: usize, depth: usize, rng: &mut ChaCha8Rng) -> anyhow::Result<Value> {
    let (mut agree, mut disagree, mut unknown, mut inside) = (0usize, 0usize, 0usize, 0usize);
    for _ in 0..samples {
        let den = 3i128.pow(9) * [1, 2, 4][rng.gen_range(0..3)];
        let x: Vec<Q> = (0..params.k()).map(|_| Q::new(rng.gen_range(0..=den), den)).collect();
        let expected = closed_form_membership(params, &x, depth);
        if expected == Membership::In {
            inside += 1;
        }
        let point = CubePoint::new(x.iter().map(|&c| to_f64(c)).collect())?;
        match membership(params, &point, depth, DEFAULT_BOUNDARY_TOL)? {
            Membership::BoundaryUnknown { .. } => unknown += 1,
            got if got == expected => agree += 1,
            _ => disagree += 1,
        }
    }
    Ok(json!({"samples": samples, "agree": agree, "disagree": disagree, "boundary_unknown": unknown, "inside": inside}))
}

/// Ratio of snowflake distances across `f` for dyadic pairs whose segment
/// avoids the folds.
fn homothety_check(params: &MengerParams, pairs: usize, rng: &mut ChaCha8Rng) -> anyhow::Result<Value> {
    const DYADIC: f64 = (1u32 << 20) as f64;
    let reach = 0.5 / params.max_factor() as f64;
    let (mut count, mut max_error, mut attempts) = (0usize, 0.0f64, 0usize);
    while count < pairs && attempts < 100 * pairs.max(1) {
        attempts += 1;
        let x: Vec<f64> = (0..params.k()).map(|_| rng.gen_range(0..1u32 << 20) as f64 / DYADIC).collect();
        let y: Vec<f64> =
            x.iter().map(|c| (c + (rng.gen_range(-reach..reach) * DYADIC).round() / DYADIC).clamp(0.0, 1.0)).collect();
        let (x, y) = (CubePoint::new(x)?, CubePoint::new(y)?);
        let d = snowflake_distance(params, &x, &y);
        if d == 0.0 || !segment_clear_of_folds(params, &x, &y, 1e-9) {
            continue;
        }
        let after = snowflake_distance(params, &expanding_map(params, &x)?, &expanding_map(params, &y)?);
        max_error = max_error.max((after - 3.0 * d).abs());
        count += 1;
    }
    Ok(json!({"pairs": count, "factor": 3.0, "max_abs_error": max_error}))
}
