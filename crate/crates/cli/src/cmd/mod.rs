pub mod graph;
pub mod ifs;
pub mod menger;
pub mod pillow;
pub mod verify;

use std::fs;
use std::path::Path;

use anyhow::Context;
use cxc_core::multigraph::{parse_graph, validate_graph, WeightedDigraph};
use cxc_core::rational::format_q;
use cxc_core::Q;
use num_complex::Complex64;
use serde_json::{json, Value};

/// Reads and validates a graph file.
pub fn load_graph(path: &Path) -> anyhow::Result<WeightedDigraph> {
    let g = read_graph(path)?;
    validate_graph(&g)?.into_result().with_context(|| format!("{} is not admissible", path.display()))?;
    Ok(g)
}

pub fn read_graph(path: &Path) -> anyhow::Result<WeightedDigraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn rat(x: Q) -> Value {
    Value::String(format_q(x))
}

pub fn complex(z: Complex64) -> Value {
    json!([z.re, z.im])
}
