//! Executable symbolic dynamics: subshift languages and complexity, sliding
//! block codes and their orders modulo the shift, and windows of the
//! two-dimensional configurations `eta(i, j) = (phi^j x)(i)`.
//!
//! Conventions used throughout:
//! - the shift is the left shift, `(sigma x)(i) = x(i + 1)`;
//! - a period vector `(a, b)` of a two-dimensional configuration means
//!   `eta(i + a, j + b) = eta(i, j)`, i.e. `S^a T^b eta = eta`.

pub mod alphabet;
pub mod error;
pub mod codes;
pub mod harness;
pub mod language;
pub mod two_dim;

pub use alphabet::{Alphabet, Symbol, Word};
pub use error::{Error, Result};
