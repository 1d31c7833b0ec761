//! Exact computation of Hochschild, cyclic and Chevalley–Eilenberg homology
//! for finite-dimensional associative algebras.
//!
//! The linear algebra and every construction on top of it are generic over a
//! [`Scalar`] field; the aliases below fix the exact rational instance used by
//! the command-line tool.

pub mod algebra;
pub mod chain;
pub mod excision;
pub mod hochschild;
pub mod lie;
pub mod linalg;
pub mod scalar;
pub mod sparse;
pub mod tangent;

pub use algebra::{Algebra, AlgebraError, AlgebraMorphism, Bimodule, Ideal};
pub use chain::{ChainComplex, ChainError, ChainMap, DegreeRange, HomologyReport};
pub use scalar::Scalar;
pub use sparse::{SparseMatrix, SparseVec};

/// Exact rationals in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;
pub type QMatrix = SparseMatrix<Rational>;
pub type QComplex = ChainComplex<Rational>;
