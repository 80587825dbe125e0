//! Spectral radii of `A_alpha` and the two dimension equations.
//!
//! `(A_alpha)_{ij} = sum_{e in E_ij} d(e)^(-1/alpha)`. For a valid graph the
//! radius is strictly increasing in `alpha`, tends to 0 as `alpha -> 0+` and
//! is at least 2 in the limit `alpha -> infinity`, so both equations below
//! have a unique root that bisection can bracket.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::multigraph::{first_unreachable_pair, validate_graph, WeightedDigraph};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const MAX_POWER_ITERATIONS: usize = 100_000;
const WARM_SQUARINGS: usize = 24;
const BRACKET_START: (f64, f64) = (1e-3, 1.0);
const BRACKET_LIMIT: f64 = (1u64 << 20) as f64;

/// Dense nonnegative square matrix, row-major.
pub type Matrix = Vec<Vec<f64>>;

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralEstimate {
    pub radius: f64,
    /// Eigenvector for `radius`, sup-norm 1.
    pub vector: Vec<f64>,
    pub iterations: usize,
    /// Collatz-Wielandt enclosure of the radius. Both ends coincide when the
    /// iterate has zero entries and only the successive-difference test
    /// applies.
    pub enclosure: (f64, f64),
}

/// `A` with entries `sum d(e)^(-p)`; `p = 1/alpha` gives `A_alpha`.
pub fn matrix_with_power(g: &WeightedDigraph, p: f64) -> Matrix {
    let n = g.vertex_count();
    let mut a = vec![vec![0.0; n]; n];
    for e in g.edges() {
        a[e.src][e.dst] += (e.degree as f64).powf(-p);
    }
    a
}

pub fn matrix_a(g: &WeightedDigraph, alpha: f64) -> Matrix {
    matrix_with_power(g, 1.0 / alpha)
}

/// Power iteration on `A + I` with sup-norm normalization. The shift makes
/// irreducible (possibly periodic) matrices primitive without moving the
/// eigenvector. Stops when the Collatz-Wielandt enclosure is narrower than
/// `tol`, or, if the iterate has zero entries (reducible input), when
/// successive estimates differ by less than `tol / 10`.
pub fn nonneg_spectral_radius(a: &Matrix, tol: f64) -> Result<SpectralEstimate> {
    let n = a.len();
    if n == 0 {
        return Ok(SpectralEstimate { radius: 0.0, vector: Vec::new(), iterations: 0, enclosure: (0.0, 0.0) });
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    let mut x = warm_start(a);
    let mut y = vec![0.0; n];
    let mut previous = f64::INFINITY;
    let mut residual = f64::INFINITY;
    for it in 1..=MAX_POWER_ITERATIONS {
        for i in 0..n {
            let mut s = x[i];
            for j in 0..n {
                s += a[i][j] * x[j];
            }
            y[i] = s;
        }
        let top = y.iter().cloned().fold(0.0, f64::max);
        if x.iter().all(|&v| v > 0.0) {
            let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
            for i in 0..n {
                let r = y[i] / x[i];
                lo = lo.min(r);
                hi = hi.max(r);
            }
            residual = hi - lo;
            if residual < tol {
                let vector = y.iter().map(|v| v / top).collect();
                return Ok(SpectralEstimate {
                    radius: 0.5 * (lo + hi) - 1.0,
                    vector,
                    iterations: it,
                    enclosure: (lo - 1.0, hi - 1.0),
                });
            }
        } else {
            residual = (top - previous).abs();
            if residual < tol / 10.0 {
                let vector = y.iter().map(|v| v / top).collect();
                return Ok(SpectralEstimate { radius: top - 1.0, vector, iterations: it, enclosure: (top - 1.0, top - 1.0) });
            }
        }
        previous = top;
        for i in 0..n {
            x[i] = y[i] / top;
        }
    }
    Err(Error::NoConvergence { iterations: MAX_POWER_ITERATIONS, residual })
}

/// Row sums of `(A + I)^(2^k)`, normalized. Repeated squaring makes the
/// slow modes of near-periodic matrices die off quickly.
fn warm_start(a: &Matrix) -> Vec<f64> {
    let n = a.len();
    let mut m: Matrix = (0..n).map(|i| (0..n).map(|j| a[i][j] + if i == j { 1.0 } else { 0.0 }).collect()).collect();
    for _ in 0..WARM_SQUARINGS {
        let mut next = vec![vec![0.0; n]; n];
        for i in 0..n {
            for k in 0..n {
                if m[i][k] == 0.0 {
                    continue;
                }
                for j in 0..n {
                    next[i][j] += m[i][k] * m[k][j];
                }
            }
        }
        let top = next.iter().flatten().cloned().fold(0.0, f64::max);
        if !(top > 0.0) || !top.is_finite() {
            break;
        }
        m = next.into_iter().map(|row| row.into_iter().map(|v| v / top).collect()).collect();
    }
    let x: Vec<f64> = m.iter().map(|row| row.iter().sum()).collect();
    let top = x.iter().cloned().fold(0.0, f64::max);
    if top > 0.0 && top.is_finite() {
        x.iter().map(|v| v / top).collect()
    } else {
        vec![1.0; n]
    }
}

fn require_irreducible(g: &WeightedDigraph) -> Result<()> {
    match first_unreachable_pair(g) {
        Some((i, j)) => Err(Error::NotIrreducible { from: i + 1, to: j + 1 }),
        None => Ok(()),
    }
}

/// `lambda(A_alpha)` and its positive eigenvector (sup-norm 1).
pub fn spectral_radius_at(g: &WeightedDigraph, alpha: f64, tol: f64) -> Result<SpectralEstimate> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidParameter(format!("alpha must be positive, got {alpha}")));
    }
    require_irreducible(g)?;
    nonneg_spectral_radius(&matrix_a(g, alpha), tol)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExponentMode {
    /// `s` with `lambda(A_{1/s}) = 1`.
    Conformal,
    /// `delta` with `lambda(A_{alpha/delta}) = 1`.
    Hausdorff { alpha: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DimensionResult {
    pub exponent: f64,
    /// Final bracket: the radius is `>= 1` at `lo` and `< 1` at `hi`.
    pub bracket: (f64, f64),
    pub tolerance: f64,
    pub evaluations: usize,
    /// `(exponent, radius)` at every evaluation, in order.
    pub radius_trace: Vec<(f64, f64)>,
}

/// Solves one of the dimension equations by bisection on the exponent.
/// The radius decreases in the exponent; the bracket starts at `[1e-3, 1]`
/// and its upper end doubles (up to `2^20`) until it straddles 1.
pub fn solve_exponent(g: &WeightedDigraph, mode: ExponentMode, tol: f64) -> Result<DimensionResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    validate_graph(g)?.into_result()?;
    // entries are d^(-u * scale)
    let scale = match mode {
        ExponentMode::Conformal => 1.0,
        ExponentMode::Hausdorff { alpha } => {
            if !(alpha > 0.0) {
                return Err(Error::InvalidParameter(format!("alpha must be positive, got {alpha}")));
            }
            1.0 / alpha
        }
    };
    let radius_tol = (tol * 1e-2).max(4e-15);
    let mut trace = Vec::new();
    let mut eval = |u: f64| -> Result<f64> {
        let est = nonneg_spectral_radius(&matrix_with_power(g, u * scale), radius_tol)?;
        trace.push((u, est.radius));
        Ok(est.radius)
    };

    let (mut lo, mut hi) = BRACKET_START;
    while eval(hi)? >= 1.0 {
        hi *= 2.0;
        if hi > BRACKET_LIMIT {
            return Err(Error::BracketNotFound { limit: BRACKET_LIMIT });
        }
    }
    while eval(lo)? < 1.0 {
        lo *= 0.5;
        if lo < 1e-15 {
            return Err(Error::BracketNotFound { limit: BRACKET_LIMIT });
        }
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if eval(mid)? >= 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let exponent = 0.5 * (lo + hi);
    if let ExponentMode::Hausdorff { alpha } = mode {
        if exponent > 1.0 + tol {
            return Err(Error::InvalidParameter(format!(
                "Hausdorff exponent {exponent} exceeds 1: lambda(A_alpha) >= 1 at alpha = {alpha}"
            )));
        }
    }
    let evaluations = trace.len();
    Ok(DimensionResult { exponent, bracket: (lo, hi), tolerance: tol, evaluations, radius_trace: trace })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerronData {
    pub alpha: f64,
    pub radius: f64,
    /// Strictly positive, sup-norm 1, with `A_alpha w < w` componentwise.
    pub vector: Vec<f64>,
}

/// Perron vector `w` of `A_alpha`; `A_alpha w < w` is checked before return.
pub fn perron_vector(g: &WeightedDigraph, alpha: f64, tol: f64) -> Result<PerronData> {
    let est = spectral_radius_at(g, alpha, tol)?;
    if est.radius >= 1.0 {
        return Err(Error::NotContracting { radius: est.radius });
    }
    let a = matrix_a(g, alpha);
    let w = est.vector;
    if w.iter().any(|&v| !(v > 0.0)) {
        return Err(Error::Inconsistent("Perron vector has a nonpositive entry".into()));
    }
    for (i, row) in a.iter().enumerate() {
        let aw: f64 = row.iter().zip(&w).map(|(x, y)| x * y).sum();
        if !(aw < w[i]) {
            return Err(Error::NotContracting { radius: est.radius });
        }
    }
    Ok(PerronData { alpha, radius: est.radius, vector: w })
}
