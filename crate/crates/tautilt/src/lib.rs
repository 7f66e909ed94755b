//! Exact τ-tilting computations for bound quiver algebras, with emphasis on
//! tensor products `R ⊗ kQ` of a commutative local algebra with a path algebra.

pub mod algebra;
pub mod cluster;
pub mod error;
pub mod exactlin;
pub mod fixtures;
pub mod homology;
pub mod rep;
pub mod sequences;
pub mod tau;
pub mod twoterm;
pub mod wide;

pub use error::{Error, Result};
pub use exactlin::{Mat, Scalar};
