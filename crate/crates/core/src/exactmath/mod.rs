//! Exact arithmetic: base fields, polynomials and their factorization, dense
//! matrices and subspaces.

pub mod factor;
pub mod field;
pub mod fp_poly;
pub mod matrix;
pub mod poly;
pub mod subspace;

pub use factor::{factor, factor_seeded, Factorization};
pub use field::{is_prime, Field, FieldKind, RatFunc, Scalar};
pub use matrix::Matrix;
pub use poly::Polynomial;
pub use subspace::Subspace;
