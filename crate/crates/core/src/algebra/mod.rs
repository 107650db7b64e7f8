//! Exact arithmetic over prime fields and their polynomial rings.

mod field;
mod irreducible;
mod laurent;
pub(crate) mod linalg;
mod poly;

pub use field::{binomial_mod, is_prime, FieldElement, PrimeField};
pub use irreducible::{is_irreducible, monic_irreducibles, monic_polys_of_degree};
pub use laurent::{laurent_expand, power_series_div, LaurentSeries};
pub use poly::{poly_arith, Poly, PolyArithOutput, PolyOp};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("operands live over different fields (p={0} vs p={1})")]
    ModulusMismatch(u32, u32),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial does not divide exactly")]
    NotDivisible,
    #[error("denominator vanishes at x = 0; power series does not exist")]
    NotInvertibleAtZero,
    #[error("interpolation needs {expected} values, got {got}")]
    InterpolationLength { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
