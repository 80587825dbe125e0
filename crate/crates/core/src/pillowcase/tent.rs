//! The tent map `tau(x) = 1/2 - 2|x - 1/4|` on `alpha` and the postcritical
//! set of `f_a`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::map::{check_a, f_a};
use super::{half, orb_point, OrbPoint};
use crate::error::{Error, Result};
use crate::rational::Q;

pub fn tent(x: Q) -> Q {
    half() - Q::from_integer(2) * (x - Q::new(1, 4)).abs()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TentOrbit {
    /// Distinct values `a, tau(a), ...` up to the first repeat.
    pub orbit: Vec<Q>,
    pub preperiod: usize,
    pub period: usize,
    pub pcf: bool,
}

/// Exact orbit of `a` with cycle detection. Every rational orbit is
/// eventually periodic; `max_steps` only guards against huge denominators.
pub fn tent_orbit(a: Q, max_steps: usize) -> Result<TentOrbit> {
    if a < Q::zero() || a > half() {
        return Err(Error::InvalidParameter(format!("{a} is outside [0, 1/2]")));
    }
    let mut seen: BTreeMap<Q, usize> = BTreeMap::new();
    let mut orbit = Vec::new();
    let mut x = a;
    for step in 0..=max_steps {
        if let Some(&first) = seen.get(&x) {
            return Ok(TentOrbit { preperiod: first, period: step - first, orbit, pcf: true });
        }
        seen.insert(x, step);
        orbit.push(x);
        x = tent(x);
    }
    Err(Error::NoCycle { limit: max_steps })
}

/// The six critical points of `F` (and of every `f_a`): quarter-lattice
/// points that are not half-lattice points.
pub fn critical_points() -> [OrbPoint; 6] {
    let (z, q, h) = (Q::zero(), Q::new(1, 4), half());
    [
        orb_point(q, z),
        orb_point(z, q),
        orb_point(h, q),
        orb_point(q, h),
        orb_point(q, q),
        orb_point(q, -q),
    ]
}

/// `P_{f_a}` from the closed formula, cross-checked against the forward
/// orbits of the critical values. Sorted.
pub fn postcritical_set(a: Q, max_steps: usize) -> Result<Vec<OrbPoint>> {
    check_a(a)?;
    let z = Q::zero();
    let h = half();
    let mut formula: BTreeSet<OrbPoint> =
        [orb_point(z, z), orb_point(h, z), orb_point(z, h), orb_point((Q::from_integer(1) - a) / Q::from_integer(2), h)]
            .into_iter()
            .collect();
    for x in tent_orbit(a, max_steps)?.orbit {
        formula.insert(orb_point(x, z));
    }

    let mut orbits: BTreeSet<OrbPoint> = BTreeSet::new();
    for c in critical_points() {
        let mut p = f_a(a, &c)?;
        let mut steps = 0;
        while orbits.insert(p) {
            p = f_a(a, &p)?;
            steps += 1;
            if steps > max_steps {
                return Err(Error::NoCycle { limit: max_steps });
            }
        }
    }

    if formula != orbits {
        return Err(Error::Inconsistent(format!(
            "postcritical formula gives {} points, critical orbits give {}",
            formula.len(),
            orbits.len()
        )));
    }
    Ok(formula.into_iter().collect())
}
