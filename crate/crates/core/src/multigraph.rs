//! Weighted directed multigraphs with positive integer edge degrees.
//!
//! Loops and parallel edges are allowed; an edge is identified by its
//! position in [`WeightedDigraph::edges`]. Vertices are 0-based internally
//! and 1-based in the text format:
//!
//! ```text
//! # two self-loops of degree 2
//! vertices 1
//! edge 1 1 2
//! edge 1 1 2
//! ```

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{Error, Result};

/// Default cap on the number of simple cycles enumerated by
/// [`validate_graph`].
pub const DEFAULT_CYCLE_CAP: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub degree: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedDigraph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl WeightedDigraph {
    /// Builds a graph from 0-based edges, checking every invariant.
    pub fn new(vertex_count: usize, edges: Vec<Edge>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidParameter("graph needs at least one vertex".into()));
        }
        for (i, e) in edges.iter().enumerate() {
            if e.src >= vertex_count || e.dst >= vertex_count {
                return Err(Error::InvalidParameter(format!("edge {}: vertex index out of range", i + 1)));
            }
            if e.degree == 0 {
                return Err(Error::InvalidParameter(format!("edge {}: degree must be positive", i + 1)));
            }
        }
        Ok(Self { vertex_count, edges })
    }

    /// Convenience constructor from `(src, dst, degree)` triples, 0-based.
    pub fn from_triples(vertex_count: usize, triples: &[(usize, usize, u64)]) -> Result<Self> {
        let edges = triples.iter().map(|&(src, dst, degree)| Edge { src, dst, degree }).collect();
        Self::new(vertex_count, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    /// Ids of the edges leaving `v`, in edge order.
    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().enumerate().filter(move |(_, e)| e.src == v).map(|(i, _)| i)
    }

    /// Ids of the edges entering `v`, in edge order.
    pub fn in_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().enumerate().filter(move |(_, e)| e.dst == v).map(|(i, _)| i)
    }

    /// `#E_ij`, the number of parallel edges from `i` to `j`.
    pub fn multiplicity(&self, i: usize, j: usize) -> usize {
        self.edges.iter().filter(|e| e.src == i && e.dst == j).count()
    }

    pub fn max_degree(&self) -> u64 {
        self.edges.iter().map(|e| e.degree).max().unwrap_or(1)
    }

    /// Serializes to the line-oriented text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "vertices {}", self.vertex_count);
        for e in &self.edges {
            let _ = writeln!(out, "edge {} {} {}", e.src + 1, e.dst + 1, e.degree);
        }
        out
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Parses the graph file format. Edges keep their file order.
pub fn parse_graph(text: &str) -> Result<WeightedDigraph> {
    let mut vertex_count: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            [] => continue,
            ["vertices", n] => {
                if vertex_count.is_some() {
                    return Err(parse_err(line_no, "duplicate vertices line"));
                }
                let n: usize = n.parse().map_err(|_| parse_err(line_no, "vertex count is not a positive integer"))?;
                if n == 0 {
                    return Err(parse_err(line_no, "vertex count must be positive"));
                }
                vertex_count = Some(n);
            }
            ["edge", s, d, w] => {
                let n = vertex_count.ok_or_else(|| parse_err(line_no, "edge before vertices line"))?;
                let index = |t: &str| -> Result<usize> {
                    let v: usize = t.parse().map_err(|_| parse_err(line_no, "vertex index is not an integer"))?;
                    if v == 0 || v > n {
                        return Err(parse_err(line_no, "vertex index out of range"));
                    }
                    Ok(v - 1)
                };
                let src = index(s)?;
                let dst = index(d)?;
                let degree: u64 = w.parse().map_err(|_| parse_err(line_no, "degree is not a positive integer"))?;
                if degree == 0 {
                    return Err(parse_err(line_no, "degree must be positive"));
                }
                edges.push(Edge { src, dst, degree });
            }
            _ => return Err(parse_err(line_no, format!("malformed line: {:?}", raw.trim()))),
        }
    }
    let n = vertex_count.ok_or_else(|| parse_err(text.lines().count().max(1), "missing vertices line"))?;
    WeightedDigraph::new(n, edges)
}

/// A directed cycle given by its edge ids in traversal order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    pub edges: Vec<usize>,
}

impl Cycle {
    pub fn degree_product(&self, g: &WeightedDigraph) -> u128 {
        self.edges.iter().map(|&e| g.edge(e).degree as u128).product()
    }

    /// Whether the cycle satisfies both No Levy Cycle conditions.
    pub fn is_admissible(&self, g: &WeightedDigraph) -> bool {
        self.degree_product(g) > 1
            && self.edges.iter().any(|&e| {
                let ed = g.edge(e);
                g.multiplicity(ed.src, ed.dst) >= 2
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub irreducible: bool,
    /// First unreachable ordered pair, when not irreducible.
    pub unreachable: Option<(usize, usize)>,
    pub levy_witness: Option<Cycle>,
    pub simple_cycles: usize,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.irreducible && self.levy_witness.is_none()
    }

    /// Converts a failed report into the matching error.
    pub fn into_result(self) -> Result<Self> {
        if let Some((from, to)) = self.unreachable {
            return Err(Error::NotIrreducible { from: from + 1, to: to + 1 });
        }
        if let Some(c) = &self.levy_witness {
            return Err(Error::LevyCycle { edges: c.edges.iter().map(|e| e + 1).collect() });
        }
        Ok(self)
    }
}

/// Vertices reachable from `start` by paths of length at least one.
pub fn reachable_from(g: &WeightedDigraph, start: usize) -> Vec<bool> {
    let mut seen = vec![false; g.vertex_count()];
    let mut queue = VecDeque::new();
    for e in g.out_edges(start) {
        let d = g.edge(e).dst;
        if !seen[d] {
            seen[d] = true;
            queue.push_back(d);
        }
    }
    while let Some(v) = queue.pop_front() {
        for e in g.out_edges(v) {
            let d = g.edge(e).dst;
            if !seen[d] {
                seen[d] = true;
                queue.push_back(d);
            }
        }
    }
    seen
}

/// First ordered pair `(i, j)` with no directed path of positive length.
pub fn first_unreachable_pair(g: &WeightedDigraph) -> Option<(usize, usize)> {
    (0..g.vertex_count()).find_map(|i| {
        let r = reachable_from(g, i);
        r.iter().position(|&ok| !ok).map(|j| (i, j))
    })
}

/// Calls `visit` on every simple cycle (as an edge sequence; parallel edges
/// give distinct cycles). Each cycle is reported once, starting at its
/// smallest vertex. Stops with an error after `cap` cycles.
pub fn for_each_simple_cycle(
    g: &WeightedDigraph,
    cap: usize,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> Result<usize> {
    let n = g.vertex_count();
    let out: Vec<Vec<usize>> = (0..n).map(|v| g.out_edges(v).collect()).collect();
    let mut count = 0usize;
    let mut on_path = vec![false; n];
    let mut path: Vec<usize> = Vec::new();
    // Explicit stack of (vertex, next out-edge slot).
    for start in 0..n {
        let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
        on_path[start] = true;
        while let Some(&mut (v, ref mut slot)) = stack.last_mut() {
            if *slot >= out[v].len() {
                stack.pop();
                on_path[v] = false;
                path.pop();
                continue;
            }
            let e = out[v][*slot];
            *slot += 1;
            let d = g.edge(e).dst;
            if d == start {
                path.push(e);
                count += 1;
                if count > cap {
                    return Err(Error::CycleCapExceeded { cap });
                }
                let keep_going = visit(&path);
                path.pop();
                if !keep_going {
                    return Ok(count);
                }
            } else if d > start && !on_path[d] {
                on_path[d] = true;
                path.push(e);
                stack.push((d, 0));
            }
        }
        // The start vertex is popped without a matching path push.
        path.clear();
        on_path.iter_mut().for_each(|b| *b = false);
    }
    Ok(count)
}

/// Checks irreducibility and the No Levy Cycle condition. Only simple
/// cycles are inspected: every closed walk splits into simple cycles whose
/// degree products multiply, and a parallel-edge arc of a piece is one of the
/// whole walk.
pub fn validate_graph(g: &WeightedDigraph) -> Result<ValidationReport> {
    validate_graph_with_cap(g, DEFAULT_CYCLE_CAP)
}

pub fn validate_graph_with_cap(g: &WeightedDigraph, cap: usize) -> Result<ValidationReport> {
    let unreachable = first_unreachable_pair(g);
    let mut witness = None;
    let simple_cycles = for_each_simple_cycle(g, cap, |edges| {
        let c = Cycle { edges: edges.to_vec() };
        if c.is_admissible(g) {
            true
        } else {
            witness = Some(c);
            false
        }
    })?;
    Ok(ValidationReport { irreducible: unreachable.is_none(), unreachable, levy_witness: witness, simple_cycles })
}

impl core::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "irreducible={} levy_witness=", self.irreducible)?;
        match &self.levy_witness {
            None => f.write_str("none"),
            Some(c) => {
                let ids: Vec<String> = c.edges.iter().map(|e| (e + 1).to_string()).collect();
                write!(f, "[{}]", ids.join(","))
            }
        }
    }
}
