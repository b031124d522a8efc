//! Exact arithmetic: scalars, homogeneous polynomials, polynomial matrices and
//! rational power series.

mod matrix;
mod parse;
mod poly;
mod scalar;
mod series;

pub use matrix::{adjugate3, det3, minor, Matrix, PolyMatrix, RingElem};
pub use parse::{parse_any, parse_poly, parse_scalar};
pub use poly::{default_names, divide_exact, poly_sqrt, HomogPoly, Monomial, Poly};
pub use scalar::{Domain, Scalar, DEFAULT_PRIME};
pub use series::{series_expand, RationalSeries};
