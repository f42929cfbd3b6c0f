//! Linear-algebra kernel for geometric-sum sequences: minimal recurrences,
//! distinct-root extraction, and transposed Vandermonde solves.

mod dense;
mod recurrence;
mod roots;
mod vandermonde;

use thiserror::Error;

pub use dense::DensePolynomial;
pub use recurrence::{berlekamp_massey, RecurrenceResult};
pub use roots::find_distinct_roots;
pub use vandermonde::solve_transposed_vandermonde;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("polynomial of degree {expected} has only {found} distinct roots in the field")]
    TooFewRoots { expected: usize, found: usize },
    #[error("equal-degree splitting made no progress on a degree-{degree} factor")]
    SplittingExhausted { degree: usize },
    #[error("Vandermonde nodes are not pairwise distinct")]
    DuplicateNodes,
    #[error("{nodes} nodes but {rhs} right-hand side values")]
    LengthMismatch { nodes: usize, rhs: usize },
}
