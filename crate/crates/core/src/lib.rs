//! Exact finite-dimensional matrix representations of shift and difference
//! operators on spaces of polynomials, and the isospectral matrices they
//! produce for the Wilson, Racah and Askey-Wilson families.

pub mod askey;
pub mod cli;
pub mod error;
pub mod exec;
pub mod foundation;
pub mod matrix;
pub mod opcompile;
pub mod report;
pub mod sampling;
pub mod scalar;
pub mod shift;
pub mod spectra;
pub mod zeros;

pub use error::{Error, Result};
pub use matrix::{ColumnVector, SquareMatrix};
pub use scalar::{Backend, GaussRational, Scalar};
