//! Exact computation of Betti numbers, Poincare polynomials and Euler
//! characteristics of moduli spaces of semistable quiver representations.
//!
//! The engine counts points of semistable loci over finite fields as reduced
//! rational functions in `q` and assembles cohomological data from them.
//! Three independent routes — a stratification recursion, a brute-force
//! resolved sum and a transfer-matrix corner inversion — compute the same
//! counting series and cross-check each other.
//!
//! All arithmetic is exact: arbitrary-precision integer polynomials, reduced
//! rational functions, and slopes compared by cross-multiplication. No
//! floating point anywhere.

pub mod betti;
pub mod cli;
pub mod error;
pub mod hn;
pub mod input;
pub mod poly;
pub mod presets;
pub mod qseries;
pub mod quiver;
pub mod ratfun;
pub mod scalar;

pub use error::{Error, Result};

/// Integer polynomials in `q` with arbitrary-precision coefficients.
pub type PolyQ = poly::Poly<num::BigInt>;

/// Reduced rational functions in `q` with arbitrary-precision coefficients.
pub type RatFunQ = ratfun::RatFun<num::BigInt>;
