//! Exact-arithmetic computational algebra for quadratic algebras over a
//! finite-dimensional base ring: Koszul-type resolutions, generalized smash
//! products from braidings, and PBW deformation checks validated by an
//! independent filtered-dimension oracle.
//!
//! Everything is computed over `Q` or `GF(p)` with exact linear algebra;
//! every verdict is a dimension equality or an exact matrix identity.

pub mod algebra;
pub mod cli;
pub mod entwine;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod gorenstein;
pub mod matrix;
pub mod pbw;
pub mod presentation;
pub mod quadratic;
pub mod report;
pub mod subspace;
pub mod tensor;

pub use error::KoszulError;
pub use field::{FieldSpec, Scalar};
pub use matrix::Matrix;
pub use subspace::Subspace;
