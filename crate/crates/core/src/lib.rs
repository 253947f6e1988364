//! Exact construction and analysis of Lie nilpotent subalgebras of matrix
//! algebras over the rationals and finite fields.
//!
//! Vectors are row vectors and matrices act on the right. Every computation is
//! exact; there is no floating point anywhere in the crate.

pub mod algebra;
pub mod bound;
pub mod chain;
pub mod document;
pub mod error;
pub mod extremal;
pub mod fuzz;
pub mod lie;
pub mod linalg;
pub mod peirce;
pub mod pipeline;
pub mod scalar;
pub mod tables;

pub use algebra::MatrixAlgebra;
pub use bound::Composition;
pub use chain::{BoundReport, ChainTrace, ComplementStrategy};
pub use document::{AlgebraDocument, ParsedDocument};
pub use error::{Error, Result};
pub use linalg::{Matrix, Subspace};
pub use scalar::{Elem, FieldSpec, Scalar};
