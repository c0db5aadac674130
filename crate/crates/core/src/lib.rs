//! Exact and floating-point tools for matrix Sobolev inner products: moment
//! matrices, derivative-operator assembly, orthogonal polynomials, pencil
//! eigenvalue bounds and the diagnostics built on them.

pub mod diagnostics;
pub mod error;
pub mod linalg;
pub mod matrix;
pub mod measures;
pub mod orthopoly;
pub mod poly;
pub mod scalar;
pub mod sobolev;
pub mod source;

pub use error::{Error, Result};
pub use matrix::{HermitianMatrix, Truncation};
pub use measures::{MeasureSpec, WeightedCircle};
pub use poly::Polynomial;
pub use scalar::{Complex64, ExactComplex, Rational, Scalar};
pub use sobolev::{
    derivative_operator, sobolev_matrix, ComponentSource, DerivativeOperator, SobolevComponent,
    SobolevSpec,
};
pub use source::{Identity, MatrixSource};
