//! Exact symbolic engine for the partition algebras `A_k(z)` and `A_{k+1/2}(z)`
//! over the rational function field Q(z).
//!
//! The crate builds the diagram basis and its composition product, the
//! Jucys-Murphy elements and their recursions, the branching graph with its
//! path combinatorics, the Murphy cellular machinery (ideals, cell modules,
//! bilinear forms), seminormal bases and representing matrices by two
//! independent routes (an exact linear-algebra oracle and closed-form entry
//! formulas), and the central-element generating function recursions.
//!
//! Everything is exact: coefficients live in Q(z) (and Q(z)(u) for the
//! central series), never floats.

pub mod bratteli;
pub mod cellular;
pub mod central;
pub mod diagram;
pub mod errata;
pub mod field;
pub mod golden;
pub mod jm;
pub mod level;
pub mod linalg;
pub mod par;
pub mod report;
pub mod seminormal;
pub mod suites;

pub use field::{BigRat, Poly, RationalFunction, URationalFunction};
pub use level::LevelIndex;
