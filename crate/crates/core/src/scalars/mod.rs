//! Exact arithmetic in `ℚ(μ_1, …, μ_n, params)`.

mod monomial;
mod polynomial;
mod scalar;
mod var;

pub use monomial::Monomial;
pub use polynomial::Polynomial;
pub use scalar::{scalar_arith, ArithOp, Scalar};
pub use var::{Context, Var, MAX_RANK, PARAMS};

use thiserror::Error;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by the zero scalar")]
    DivisionByZero,
    #[error("no value assigned to {0}")]
    MissingAssignment(String),
    #[error("denominator vanishes at this specialization")]
    DenominatorVanishes,
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown indeterminate `{name}` at byte {offset}")]
    UnknownIndeterminate { name: String, offset: usize },
}

/// `scalar_eq`: cross-multiplied difference is the zero polynomial.
pub fn scalar_eq(lhs: &Scalar, rhs: &Scalar) -> bool {
    lhs == rhs
}

/// Parses a scalar expression over the indeterminates of `ctx`.
pub fn parse_scalar(text: &str, ctx: &Context) -> Result<Scalar, ScalarError> {
    crate::syntax::parse_scalar(text, ctx)
}

/// Parses an exact rational literal such as `3`, `-7/2`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let t = text.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: num_bigint::BigInt = n.parse().ok()?;
    let d: num_bigint::BigInt = d.parse().ok()?;
    if num_traits::Zero::is_zero(&d) {
        return None;
    }
    Some(Rational::new(n, d))
}
