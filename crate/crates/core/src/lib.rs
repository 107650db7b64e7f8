//! Low-discrepancy point sets over finite fields, their quality measures, and
//! finite-field applications (complete mappings, check digits, polynomial
//! factoring, inversive generators, Zaremba fractions).
//!
//! Every construction that lives over a finite field produces exact rational
//! coordinates, and every quality measure has a brute-force counterpart in
//! [`oracles`].

pub mod algebra;
pub mod diophantine;
pub mod factorizer;
pub mod generators;
pub mod oracles;
pub mod permutations;
pub mod pointsets;
pub mod quality;

pub use algebra::{FieldElement, LaurentSeries, Poly, PrimeField};
pub use diophantine::ContinuedFraction;
pub use pointsets::{GeneratingMatrixSet, PointSet, PolyLatticeParams};
pub use quality::{DualSpace, QualityReport};
