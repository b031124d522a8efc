//! Even Clifford algebras of quadratic forms with values in line bundles on the
//! projective plane, computed with exact arithmetic.
//!
//! A form is a symmetric 3x3 matrix of homogeneous polynomials in `u, v, w`
//! whose `(i, j)` entry has degree `a_i + a_j + d`. From it the crate builds the
//! discriminant curve, the fiberwise even Clifford algebras and their
//! classification, the trace pairing and its inverse, the Brauer–Severi
//! matrix, and the numerical invariants of the associated conic bundles.

pub mod brauer_severi;
pub mod catalog;
pub mod clifford;
pub mod error;
pub mod exactpoly;
pub mod invariants;
pub mod qform;

pub use error::{Error, ErrorClass, Result};
