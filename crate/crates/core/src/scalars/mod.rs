//! Exact arithmetic in `Q` and in the rational function field over the
//! coefficient symbols.

use std::collections::BTreeMap;

use thiserror::Error;

pub mod format;
pub mod gcd;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod symbol;

pub use monomial::Monomial;
pub use num_rational::BigRational as Rational;
pub use parse::{parse_expr, parse_scalar, Expr};
pub use poly::Poly;
pub use scalar::Scalar;
pub use symbol::Symbol;

/// Assignment of rational values to symbols.
pub type Point = BTreeMap<Symbol, Rational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the sample point")]
    PoleAtPoint,
    #[error("no value given for symbol {0}")]
    MissingSymbol(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("symbol table full, cannot register {0}")]
    TooManySymbols(String),
}
