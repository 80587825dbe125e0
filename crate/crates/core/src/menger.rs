//! Folding maps on the cube `I^k` and the Menger spaces they leave invariant.
//!
//! `f` scales coordinate `i` by `lambda_i` and folds the result back into
//! `[0, 1]`, either by the reflection group of the faces (`Reflect`) or by
//! integer translations (`Translate`, the torus quotient). A point belongs to
//! `X` when no iterate lies in `U_1`, the set of points with at least `n + 1`
//! coordinates strictly inside `(1/3, 2/3)`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::rational::Q;

pub const DEFAULT_BOUNDARY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoldMode {
    Reflect,
    Translate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MengerParams {
    n: usize,
    factors: Vec<u32>,
    mode: FoldMode,
}

impl MengerParams {
    pub fn new(n: usize, factors: Vec<u32>, mode: FoldMode) -> Result<Self> {
        let k = factors.len();
        if k < 2 * n + 1 {
            return Err(Error::InvalidParameter(format!("need k >= 2n + 1, got k = {k}, n = {n}")));
        }
        if let Some(bad) = factors.iter().find(|&&l| l < 3) {
            return Err(Error::InvalidParameter(format!("expansion factor {bad} is below 3")));
        }
        Ok(Self { n, factors, mode })
    }

    /// All factors equal to 3.
    pub fn uniform(n: usize, k: usize, mode: FoldMode) -> Result<Self> {
        Self::new(n, vec![3; k], mode)
    }

    /// The sponge: `n = 1`, `k = 3`, reflections.
    pub fn sponge() -> Self {
        Self { n: 1, factors: vec![3; 3], mode: FoldMode::Reflect }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn mode(&self) -> FoldMode {
        self.mode
    }

    /// `epsilon_i = log 3 / log lambda_i`.
    pub fn exponents(&self) -> Vec<f64> {
        self.factors.iter().map(|&l| 3f64.ln() / (l as f64).ln()).collect()
    }

    pub fn max_factor(&self) -> u32 {
        self.factors.iter().copied().max().unwrap_or(3)
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.k() {
            return Err(Error::InvalidParameter(format!("point has {len} coordinates, expected {}", self.k())));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CubePoint {
    pub coords: Vec<f64>,
}

impl CubePoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if let Some(c) = coords.iter().find(|c| !(0.0..=1.0).contains(*c)) {
            return Err(Error::InvalidParameter(format!("coordinate {c} is outside [0, 1]")));
        }
        Ok(Self { coords })
    }
}

/// Folds a real number into `[0, 1]`.
pub fn fold(y: f64, mode: FoldMode) -> f64 {
    match mode {
        FoldMode::Reflect => {
            let m = y - 2.0 * (y / 2.0).floor();
            if m > 1.0 {
                2.0 - m
            } else {
                m
            }
        }
        FoldMode::Translate => {
            let m = y - y.floor();
            if m >= 1.0 {
                0.0
            } else {
                m
            }
        }
    }
}

pub fn fold_exact(y: Q, mode: FoldMode) -> Q {
    let one = Q::one();
    let two = Q::from_integer(2);
    match mode {
        FoldMode::Reflect => {
            let m = y - two * (y / two).floor();
            if m > one {
                two - m
            } else {
                m
            }
        }
        FoldMode::Translate => y - y.floor(),
    }
}

/// `f(x)`: scale by `lambda_i`, then fold.
pub fn expanding_map(params: &MengerParams, x: &CubePoint) -> Result<CubePoint> {
    params.check_dim(x.coords.len())?;
    let coords = x.coords.iter().zip(&params.factors).map(|(&c, &l)| fold(l as f64 * c, params.mode)).collect();
    Ok(CubePoint { coords })
}

pub fn expanding_map_exact(params: &MengerParams, x: &[Q]) -> Result<Vec<Q>> {
    params.check_dim(x.len())?;
    Ok(x.iter().zip(&params.factors).map(|(&c, &l)| fold_exact(c * Q::from_integer(l as i128), params.mode)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    In,
    /// The `level`-th iterate lies in `U_1`.
    Out { level: usize },
    /// The `level`-th iterate is within the tolerance of the boundary of `U_1`
    /// and the count is undecided.
    BoundaryUnknown { level: usize },
}

/// Depth-limited membership in `X`.
pub fn membership(params: &MengerParams, x: &CubePoint, depth: usize, tol: f64) -> Result<Membership> {
    params.check_dim(x.coords.len())?;
    let (lo, hi) = (1.0 / 3.0, 2.0 / 3.0);
    let mut y = x.clone();
    for level in 0..=depth {
        let mut inside = 0;
        let mut ambiguous = 0;
        for &c in &y.coords {
            if (c - lo).abs() <= tol || (c - hi).abs() <= tol {
                ambiguous += 1;
            } else if lo < c && c < hi {
                inside += 1;
            }
        }
        if inside > params.n {
            return Ok(Membership::Out { level });
        }
        if inside + ambiguous > params.n {
            return Ok(Membership::BoundaryUnknown { level });
        }
        if level < depth {
            y = expanding_map(params, &y)?;
        }
    }
    Ok(Membership::In)
}

/// Exact depth-limited membership for rational points; never undecided.
pub fn membership_exact(params: &MengerParams, x: &[Q], depth: usize) -> Result<Membership> {
    params.check_dim(x.len())?;
    for c in x {
        if *c < Q::zero() || *c > Q::one() {
            return Err(Error::InvalidParameter(format!("coordinate {c} is outside [0, 1]")));
        }
    }
    let lo = Q::new(1, 3);
    let hi = Q::new(2, 3);
    let mut y = x.to_vec();
    for level in 0..=depth {
        let inside = y.iter().filter(|&&c| lo < c && c < hi).count();
        if inside > params.n {
            return Ok(Membership::Out { level });
        }
        if level < depth {
            y = expanding_map_exact(params, &y)?;
        }
    }
    Ok(Membership::In)
}

/// The carpet obtained by restricting the sponge to a coordinate face: a
/// point of the square is removed when some iterate has both coordinates in
/// the middle third.
pub fn carpet_membership(x: [f64; 2], depth: usize, tol: f64) -> Result<Membership> {
    let params = MengerParams { n: 1, factors: vec![3, 3], mode: FoldMode::Reflect };
    membership(&params, &CubePoint::new(x.to_vec())?, depth, tol)
}

/// `max_i |x_i - y_i|^{epsilon_i}`.
pub fn snowflake_distance(params: &MengerParams, x: &CubePoint, y: &CubePoint) -> f64 {
    let eps = params.exponents();
    x.coords
        .iter()
        .zip(&y.coords)
        .zip(&eps)
        .map(|((a, b), e)| (a - b).abs().powf(*e))
        .fold(0.0, f64::max)
}

/// Whether the segment from `x` to `y` stays at least `margin` away from the
/// fold hyperplanes `x_i = j / lambda_i`, so `f` is a homothety along it.
pub fn segment_clear_of_folds(params: &MengerParams, x: &CubePoint, y: &CubePoint, margin: f64) -> bool {
    x.coords.iter().zip(&y.coords).zip(&params.factors).all(|((&a, &b), &l)| {
        let (lo, hi) = (a.min(b) * l as f64, a.max(b) * l as f64);
        let m = margin * l as f64;
        (lo - m).floor() == (hi + m).floor()
    })
}

/// Coordinates of the fold (branch) locus hit by `x`: indices `i` with `x_i`
/// within `tol` of a multiple of `1/lambda_i` strictly inside `(0, 1)`.
pub fn fold_coordinates(params: &MengerParams, x: &CubePoint, tol: f64) -> Vec<usize> {
    x.coords
        .iter()
        .zip(&params.factors)
        .enumerate()
        .filter(|(_, (&c, &l))| {
            let s = c * l as f64;
            let j = s.round();
            j > 0.0 && j < l as f64 && (s - j).abs() <= tol * l as f64
        })
        .map(|(i, _)| i)
        .collect()
}
