use cxc_core::ifs::{attractor_points, kneading_q_orbit, kneading_reference, overlap_test, IfsParam, KneadingSource};
use cxc_core::Q;
use serde_json::{json, Value};

use super::{complex, rat};
use crate::output::{csv_bytes, Format};
use crate::render::pgm;
use crate::IfsCommand;

fn source(c: Option<f64>, angle: Option<Q>) -> Option<(KneadingSource, Value)> {
    match (c, angle) {
        (Some(c), _) => Some((KneadingSource::RealQuadratic(c), json!({"c": c}))),
        (None, Some(t)) => Some((KneadingSource::ExternalAngle(t), json!({"angle": rat(t)}))),
        (None, None) => None,
    }
}

pub fn run(command: IfsCommand) -> anyhow::Result<()> {
    match command {
        IfsCommand::Points { lambda, depth, size, out } => {
            let format = out.format(&[Format::Csv, Format::Pgm])?;
            let param = IfsParam::new(lambda.lambda)?;
            let approx = attractor_points(&param, depth)?;
            if format == Format::Pgm {
                return out.write(&raster(&approx.points, size.max(2)));
            }
            let rows = approx.points.iter().enumerate().map(|(i, z)| {
                let address: String = approx.address(i).iter().map(|b| char::from(b'0' + b)).collect();
                vec![i.to_string(), address, z.re.to_string(), z.im.to_string()]
            });
            out.write(&csv_bytes(&["index", "address", "re", "im"], rows)?)
        }
        IfsCommand::Overlap { lambda, depth, tol, out } => {
            out.format(&[Format::Json])?;
            let param = IfsParam::new(lambda.lambda)?;
            let r = overlap_test(&param, depth, tol)?;
            out.json(&json!({
                "lambda": complex(param.lambda()),
                "depth": r.depth,
                "tolerance": r.tolerance,
                "pair_count": r.pair_count,
                "overlap_diameter": r.overlap_diameter,
                "candidate_o": r.candidate_o.map(complex),
                "verdict": r.verdict.to_string(),
            }))
        }
        IfsCommand::Kneading { lambda, length, depth, tol, c, angle, out } => {
            out.format(&[Format::Json])?;
            let param = IfsParam::new(lambda.lambda)?;
            let k = kneading_q_orbit(&param, length, depth, tol)?;
            let sequence = k.sequence.to_string();
            let mut v = json!({
                "lambda": complex(param.lambda()),
                "o": complex(k.o),
                "sequence": sequence,
                "orbit": k.orbit.iter().map(|&z| complex(z)).collect::<Vec<_>>(),
            });
            if let Some((src, label)) = source(c, angle) {
                let reference = kneading_reference(src, length)?.to_string();
                v["reference"] = json!({"source": label, "sequence": reference, "equal": reference == sequence});
            }
            out.json(&v)
        }
        IfsCommand::Reference { c, angle, length, out } => {
            out.format(&[Format::Json])?;
            let (src, label) = source(c, angle).expect("clap requires --c or --angle");
            let seq = kneading_reference(src, length)?;
            out.json(&json!({"source": label, "sequence": seq.to_string()}))
        }
    }
}

/// Black points on white, scaled to fit a square with a small margin.
fn raster(points: &[num_complex::Complex64], size: u32) -> Vec<u8> {
    let (mut lo_x, mut hi_x, mut lo_y, mut hi_y) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for z in points {
        lo_x = lo_x.min(z.re);
        hi_x = hi_x.max(z.re);
        lo_y = lo_y.min(z.im);
        hi_y = hi_y.max(z.im);
    }
    let span = (hi_x - lo_x).max(hi_y - lo_y).max(f64::EPSILON) * 1.04;
    let (cx, cy) = (0.5 * (lo_x + hi_x), 0.5 * (lo_y + hi_y));
    let last = (size - 1) as f64;
    let mut pixels = vec![255u8; (size * size) as usize];
    for z in points {
        let col = (((z.re - cx) / span + 0.5) * last).round() as usize;
        let row = ((0.5 - (z.im - cy) / span) * last).round() as usize;
        pixels[row * size as usize + col] = 0;
    }
    pgm(size, size, &pixels)
}
