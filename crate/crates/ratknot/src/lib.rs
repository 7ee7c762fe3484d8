//! Exact HOMFLY, Jones and Alexander polynomials of rational knots and
//! links, computed from continued fractions through labeled path posets and
//! an F-polynomial specialization, with an independent skein-recursion
//! oracle for machine verification.

pub mod algebra;
pub mod cf;
pub mod cli;
pub mod error;
pub mod fpoly;
pub mod invariants;
pub mod poset;
pub mod verify;

pub use error::{Error, Result};
