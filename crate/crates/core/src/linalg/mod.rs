//! Factorizations and eigensolvers shared by every other module.

pub mod cholesky;
pub mod jacobi;
pub mod ldl;
pub mod pencil;
pub mod roots;

pub use cholesky::cholesky_float;
pub use jacobi::{hermitian_eigs, JacobiConfig};
pub use ldl::{ldl_decompose, LdlFactorization};
pub use pencil::{
    generalized_extreme_eigs, generalized_extreme_eigs_with, PencilConfig, PencilExtremes,
    PencilReduction,
};
pub use roots::companion_roots;
