//! Generators, brute-force oracles, corpus definitions and validators used to
//! check planar-match against independent computations.

pub mod corpus;
pub mod generators;
pub mod oracles;
pub mod suite;
