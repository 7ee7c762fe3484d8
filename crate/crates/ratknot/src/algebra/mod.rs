//! Exact sparse Laurent-polynomial arithmetic over arbitrary-precision
//! integers, and the rational-function field built on top of it.
//!
//! The HOMFLY variables are l and s = q^(1/2); q itself never appears, so
//! half-integer q-exponents are integer s-exponents. Jones and Alexander
//! results live in u = t^(1/2) the same way.

mod field;
mod poly;

pub use field::{substitute_poly, FieldElem};
pub use poly::{bracket, Mono, MultiPoly, Var};
