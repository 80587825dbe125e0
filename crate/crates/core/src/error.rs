use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph is not irreducible: no directed path from vertex {from} to vertex {to}")]
    NotIrreducible { from: usize, to: usize },

    #[error("graph has a Levy cycle (edges {edges:?}, 1-based edge positions)")]
    LevyCycle { edges: Vec<usize> },

    #[error("simple-cycle enumeration exceeded the cap of {cap} cycles")]
    CycleCapExceeded { cap: usize },

    #[error("power iteration did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("no strictly contracted vector exists: spectral radius {radius} >= 1")]
    NotContracting { radius: f64 },

    #[error("no bracket straddling radius 1 found (searched exponents up to {limit})")]
    BracketNotFound { limit: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("point outside the domain of the map: {0}")]
    Domain(String),

    #[error("itinerary hits branch point at step {step}")]
    BranchPoint { step: usize },

    #[error("orbit escapes: not in Julia set regime (step {step})")]
    Escape { step: usize },

    #[error("orbit not periodic within {limit} steps")]
    NoCycle { limit: usize },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("curve continuation is ambiguous near sample {sample}; refine the curve")]
    Ambiguous { sample: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),
}
