//! Concrete coarse expanding conformal (cxc) dynamical systems.
//!
//! The crate is `no_std` and only needs `alloc`. It contains:
//!
//! - [`multigraph`]: weighted directed multigraphs, irreducibility and the
//!   No Levy Cycle condition.
//! - [`dimension`]: the matrices `A_alpha`, Perron data and the dimension
//!   equations `lambda(A_{1/s}) = 1`, `lambda(A_{alpha/delta}) = 1`.
//! - [`gdms`]: the interval system, its expanding map `g`, cylinder covers of
//!   the Cantor repellor and the metrics `d`, `d^alpha`.
//! - [`skewprod`]: the circle skew product over `g`.
//! - [`ifs`]: the two-map IFS `z -> lambda z`, `z -> lambda z + 1`, its branched
//!   double cover and kneading sequences.
//! - [`menger`]: fold-and-scale maps on cubes, Menger/carpet membership.
//! - [`pillowcase`]: the family `f_a` on the square pillowcase, in exact
//!   rational arithmetic.
//! - [`verify`]: an empirical checker for the cxc axioms over cover sequences.
#![no_std]

extern crate alloc;

pub mod dimension;
pub mod error;
pub mod gdms;
pub mod ifs;
pub mod menger;
pub mod multigraph;
pub mod pillowcase;
pub mod rational;
pub mod skewprod;
pub mod stats;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Q;
