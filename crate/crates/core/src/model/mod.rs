//! Sparse polynomials, the black-box abstraction with probe accounting,
//! random instance generation, and the instance file format.

mod instance;
mod oracle;
mod poly;
mod random;

use thiserror::Error;

pub use instance::{Instance, InstanceError};
pub use oracle::{BlackBox, EvaluationOracle, FnBlackBox, PolynomialBlackBox};
pub use poly::{is_diverse, poly_equal, ExponentVector, SparsePolynomial, Term};
pub use random::random_sparse_polynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("expected {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("scaling factors must be nonzero")]
    ZeroScaling,
    #[error("cannot pick {t} distinct monomials from only {available}")]
    TooManyTerms { t: usize, available: u128 },
}
