//! Polynomials and standard-graded quotient rings.

pub mod monomial;
pub mod poly;
pub mod ring;

pub use monomial::Monomial;
pub use poly::{parse_polynomial, Polynomial};
pub use ring::{GradedQuotientRing, RingElement};
