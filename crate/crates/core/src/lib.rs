//! Sparse multivariate polynomial interpolation over prime fields by
//! diversification.
//!
//! A black box for `f in F_p[x_1..x_n]` with at most `T` terms and partial
//! degrees at most `D` is probed at `2(n+1)T` points. The recovered
//! polynomial is exact with probability at least 3/4 once
//! `p >= 2(n+2)T^2 D + 1`.
//!
//! ```
//! use diversify::field::PrimeField;
//! use diversify::interp::{interpolate, RunOptions};
//! use diversify::model::{EvaluationOracle, PolynomialBlackBox, random_sparse_polynomial};
//! use rand::SeedableRng;
//!
//! let field = PrimeField::new(1_000_000_007).unwrap();
//! let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
//! let f = random_sparse_polynomial(&field, 3, 6, 20, &mut rng).unwrap();
//! let oracle = EvaluationOracle::new(PolynomialBlackBox::new(field.clone(), f.clone()));
//! let report = interpolate(&oracle, &field, 6, 20, None, &mut rng, RunOptions::default()).unwrap();
//! assert_eq!(report.outcome.polynomial(), Some(&f));
//! assert_eq!(report.probes, 2 * 4 * 6);
//! ```

pub mod field;
#[cfg(feature = "cli")]
pub mod harness;
pub mod interp;
pub mod model;
pub mod solvers;
pub mod worked_example;
