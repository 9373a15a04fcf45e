//! Deterministic divide-and-conquer perfect matching for embedded planar
//! graphs, built on exact Pfaffian counting, rotations inside the perfect
//! matching polytope, minimum odd cuts and uncrossing of tight odd sets.

pub mod cuts;
pub mod driver;
#[cfg(test)]
mod fixtures;
pub mod graph;
pub mod linalg;
pub mod observer;
pub mod pfaffian;
pub mod polytope;
pub mod uncross;
pub mod walks;

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;

/// Exact rational number used for every fractional quantity.
pub type Rational = BigRational;
