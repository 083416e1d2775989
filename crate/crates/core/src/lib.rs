//! Exact eigenvectors, diagonalizations and Jordan forms from products of
//! characteristic matrices `A − λI`.
//!
//! All arithmetic is exact over the rationals or the Gaussian rationals, so
//! every equality check in this crate is a true equality.

pub mod error;
pub mod factor;
pub mod field;
pub mod jordan;
pub mod kappa;
pub mod matrix;
pub mod samples;
pub mod spectrum;
pub mod verify;

pub use error::{EigenError, Result};
pub use field::{Field, GaussianRational, Rational};
pub use matrix::{Matrix, OpCounter, OpCounts, Orientation, Vector};
pub use kappa::Side;
pub use spectrum::{Polynomial, Spectrum};

/// Matrix over the Gaussian rationals.
pub type GqMatrix = Matrix<GaussianRational>;
/// Matrix over the rationals.
pub type QMatrix = Matrix<Rational>;
pub type GqVector = Vector<GaussianRational>;
pub type QVector = Vector<Rational>;
