//! Building blocks of the `diversify` command-line tool: instance
//! generation, pinned randomness, benchmark sweeps and the worked-example
//! self-test.

mod bench;
mod selftest;

use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::{Fp, PrimeField};
use crate::interp::{FailReason, InterpConfig};
use crate::model::{random_sparse_polynomial, Instance, ModelError};

pub use bench::{
    run_bench, summarize, write_records, write_summary, BenchRecord, BenchSpec, BenchSummary, Param,
    TrialOutcome,
};
pub use selftest::{selftest, Check};

/// Process exit codes of the command-line tool.
pub mod exit {
    pub const OK: i32 = 0;
    /// Bad arguments, unreadable or malformed files, I/O errors.
    pub const USAGE: i32 = 2;
    /// The field is below the guaranteed-success bound and `--force` is absent.
    pub const FIELD_TOO_SMALL: i32 = 3;
    /// A polynomial was returned but differs from the hidden instance.
    pub const WRONG_ANSWER: i32 = 4;
    /// A self-test check did not match.
    pub const SELFTEST_FAILED: i32 = 5;
}

/// Exit code for a failed interpolation: 10 plus the reason's position in
/// [`FailReason::ALL`].
pub fn fail_exit_code(reason: FailReason) -> i32 {
    10 + FailReason::ALL
        .iter()
        .position(|&r| r == reason)
        .expect("ALL lists every reason") as i32
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FixedRandomnessError {
    #[error("expected `a1,...,an;z1,...,zn;omega`")]
    Shape,
    #[error("`{0}` is not a nonnegative integer")]
    Number(String),
    #[error("alpha has {alpha} entries but zeta has {zeta}")]
    LengthMismatch { alpha: usize, zeta: usize },
}

/// Explicit `alpha`, `zeta` and `omega`, parsed from
/// `a1,...,an;z1,...,zn;omega`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedRandomness {
    pub alpha: Vec<u64>,
    pub zeta: Vec<u64>,
    pub omega: u64,
}

impl FixedRandomness {
    /// Builds a config; values are reduced mod `p` and then checked by
    /// [`InterpConfig::validate`].
    pub fn config(
        &self,
        field: &PrimeField,
        terms_bound: usize,
        degree_bound: u64,
        seed: u64,
    ) -> InterpConfig {
        let conv = |v: &[u64]| -> Vec<Fp> { v.iter().map(|&x| field.elem(x)).collect() };
        InterpConfig {
            terms_bound,
            degree_bound,
            omega: field.elem(self.omega),
            alpha: conv(&self.alpha),
            zeta: conv(&self.zeta),
            seed,
        }
    }
}

impl FromStr for FixedRandomness {
    type Err = FixedRandomnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(';').map(str::trim).collect();
        let [a, z, w] = parts[..] else {
            return Err(FixedRandomnessError::Shape);
        };
        let num = |tok: &str| {
            let tok = tok.trim();
            tok.parse::<u64>()
                .map_err(|_| FixedRandomnessError::Number(tok.to_string()))
        };
        let list = |part: &str| part.split(',').map(num).collect::<Result<Vec<_>, _>>();
        let alpha = list(a)?;
        let zeta = list(z)?;
        if alpha.len() != zeta.len() {
            return Err(FixedRandomnessError::LengthMismatch {
                alpha: alpha.len(),
                zeta: zeta.len(),
            });
        }
        Ok(Self {
            alpha,
            zeta,
            omega: num(w)?,
        })
    }
}

/// Random instance with exactly `t` terms, reproducible from `seed`.
pub fn generate_instance(
    field: &PrimeField,
    n: usize,
    t: usize,
    degree_bound: u64,
    seed: u64,
) -> Result<Instance, ModelError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let poly = random_sparse_polynomial(field, n, t, degree_bound, &mut rng)?;
    Ok(Instance {
        field: field.clone(),
        degree_bound,
        poly,
    })
}
