//! Exact scalars, monomials, monomial orders and polynomials.

mod monomial;
mod order;
mod poly;
mod scalar;
mod sorted;

pub use monomial::Monomial;
pub use order::{compare, MonomialOrder, OrderKind};
pub use poly::{Poly, Ring};
pub use scalar::Scalar;
pub use sorted::SortedPoly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("the zero polynomial has no weighted degree")]
    ZeroPolynomial,
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}
