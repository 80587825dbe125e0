use cxc_core::rational::parse_q;
use cxc_core::Q;
use num_complex::Complex64;

pub fn rational(s: &str) -> Result<Q, String> {
    parse_q(s.trim()).map_err(|e| e.to_string())
}

/// `re,im` or a bare real part.
pub fn lambda(s: &str) -> Result<Complex64, String> {
    let number = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("{t:?} is not a number"));
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(number(re)?, number(im)?)),
        None => Ok(Complex64::new(number(s)?, 0.0)),
    }
}

pub enum Coords {
    Exact(Vec<Q>),
    Float(Vec<f64>),
}

/// Comma-separated coordinates, exact unless some entry is a decimal literal.
pub fn coords(s: &str) -> Result<Coords, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.iter().any(|p| p.contains(['.', 'e', 'E'])) {
        parts
            .iter()
            .map(|p| p.parse::<f64>().map_err(|_| format!("{p:?} is not a number")))
            .collect::<Result<_, _>>()
            .map(Coords::Float)
    } else {
        parts.iter().map(|p| rational(p)).collect::<Result<_, _>>().map(Coords::Exact)
    }
}
