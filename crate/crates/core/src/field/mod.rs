//! Exact arithmetic in Q, Q[z], Q(z) and the tower Q(z)(u).
//!
//! All values are canonical after construction: rationals are gcd-reduced
//! with positive denominator, rational functions carry a monic denominator
//! coprime to the numerator. Equality is structural.

mod parse;
mod poly;
mod ratfn;
mod ufn;

pub use num_rational::BigRational as BigRat;
pub use parse::{parse_ratfn, parse_uratfn, ParseError};
pub use poly::Poly;
pub use ratfn::RationalFunction;
pub use ufn::{UPoly, URationalFunction};

use num_bigint::BigInt;

/// Arithmetic failures surfaced by the field layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    DivisionByZero,
    /// Evaluation of a u-rational function at a pole.
    PoleAtPoint(String),
    /// Residue requested at a pole of order >= 2.
    HigherOrderPole { order: usize, at: String },
}

impl std::fmt::Display for FieldError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldError::DivisionByZero => write!(f, "division by zero"),
            FieldError::PoleAtPoint(a) => write!(f, "evaluation at a pole u = {a}"),
            FieldError::HigherOrderPole { order, at } => {
                write!(f, "pole of order {order} at u = {at}, residue undefined")
            }
        }
    }
}

impl std::error::Error for FieldError {}

pub fn rat_int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}
