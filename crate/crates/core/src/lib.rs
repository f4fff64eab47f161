//! Exact and randomized computation in the generic degree-5 quasi-symbol
//! algebra D = (a, b)_K, K = Q(ρ)(a, b, η), with its semilinear automorphism
//! τ, reduced characteristic polynomials, cubic-form descent, and the
//! construction of an element w of D^τ outside the center with w⁵ central.

pub mod error;
pub mod expr;
pub mod fields;
pub mod parse;
pub mod verify;
pub mod algebra;
pub mod construction;
pub mod descent;

pub use error::{Error, NonInvertible, Result};
