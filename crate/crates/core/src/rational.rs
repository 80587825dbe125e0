//! Exact rationals used by the pillowcase family and the tent map.

use alloc::format;
use core::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Exact rational with 128-bit numerator and denominator.
pub type Q = Ratio<i128>;

pub fn q(num: i128, den: i128) -> Q {
    Q::new(num, den)
}

pub fn q_int(n: i128) -> Q {
    Q::from_integer(n)
}

pub fn to_f64(x: Q) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

/// Parses `"p/q"` or an integer literal.
pub fn parse_q(text: &str) -> Result<Q> {
    let t = text.trim();
    let bad = || Error::InvalidParameter(format!("not a rational \"p/q\": {t:?}"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n = i128::from_str(n.trim()).map_err(|_| bad())?;
            let d = i128::from_str(d.trim()).map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(i128::from_str(t).map_err(|_| bad())?)),
    }
}

/// Formats as `"p/q"`, or `"p"` for integers.
pub fn format_q(x: Q) -> alloc::string::String {
    if *x.denom() == 1 {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Dyadic rational closest to `x` with denominator `2^bits` (used to sample
/// exact points from a float RNG).
pub fn dyadic(x: f64, bits: u32) -> Q {
    let scale = (1i128) << bits;
    let n = libm::round(x * scale as f64) as i128;
    Q::new(n, scale)
}
