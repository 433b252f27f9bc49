//! Bonahon–Dreyer coordinates of Fuchsian points in the Hitchin component of a
//! pair of pants.
//!
//! The crate builds the hyperbolic structure of a pair of pants from its three
//! boundary lengths, pushes it into `PSL(n, R)` through the irreducible
//! representation, and evaluates triangle and shearing invariants of the flag
//! curve along a fixed maximal lamination. Every invariant is computed two
//! independent ways: from wedge determinants of flags, and from closed-form
//! binomial determinants.

pub mod error;
pub mod scalar;
pub mod matrix;
pub mod flag;
pub mod pants;
pub mod veronese;
pub mod coords;
pub mod sampling;
pub mod verify;
pub mod cli;

pub use error::{Error, Result};
pub use scalar::{Backend, Field, Rational, Scalar};
