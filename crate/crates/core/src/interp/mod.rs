//! Diversified Ben-Or/Tiwari interpolation.
//!
//! [`mc_pairs`] recovers the pairs `(c~_i, v_i)` of a black box from `2T`
//! probes along a geometric progression scaled by `zeta`. [`interpolate`]
//! runs it once at the base point and once per variable with that
//! variable's ratio multiplied by a generator `omega`; diversified
//! coefficients match terms across runs, and bounded discrete logarithms
//! of `v_{i,k} / v_i` give the exponents.

mod algorithm;
mod bounds;
mod mc;

use std::fmt;
use std::time::Duration;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::field::{Fp, PrimeField};
use crate::model::SparsePolynomial;

pub use algorithm::{interpolate, interpolate_with_config};
pub use bounds::{algorithm_field_bound, min_field_size, success_probability_bound};
pub use mc::{mc_pairs, mc_trace, probe_sequence, McPairs, McTrace, Shift};

/// Why a run returned failure instead of a polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailReason {
    /// The recurrence has repeated roots or roots outside `F_p`.
    TooFewRoots,
    /// Root splitting exhausted its retry budget.
    SplittingExhausted,
    /// Zero is a root of the recurrence, which no monomial value can be.
    ZeroRoot,
    /// A recovered coefficient vanished.
    ZeroCoefficient,
    /// The recurrence is longer than the term bound.
    TermBoundExceeded,
    /// Two diversified coefficients coincide, so terms cannot be matched.
    DuplicateCoefficient,
    /// A shifted run found a different number of terms than the base run.
    TermCountMismatch,
    /// Sorted coefficient lists of the base and a shifted run differ.
    CoefficientMismatch,
    /// Some `v_{i,k} / v_i` is not `omega^e` for any `e <= D`.
    DlogOutOfRange,
}

impl FailReason {
    pub const ALL: [FailReason; 9] = [
        FailReason::TooFewRoots,
        FailReason::SplittingExhausted,
        FailReason::ZeroRoot,
        FailReason::ZeroCoefficient,
        FailReason::TermBoundExceeded,
        FailReason::DuplicateCoefficient,
        FailReason::TermCountMismatch,
        FailReason::CoefficientMismatch,
        FailReason::DlogOutOfRange,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FailReason::TooFewRoots => "too-few-roots",
            FailReason::SplittingExhausted => "splitting-exhausted",
            FailReason::ZeroRoot => "zero-root",
            FailReason::ZeroCoefficient => "zero-coefficient",
            FailReason::TermBoundExceeded => "term-bound-exceeded",
            FailReason::DuplicateCoefficient => "duplicate-coefficient",
            FailReason::TermCountMismatch => "term-count-mismatch",
            FailReason::CoefficientMismatch => "coefficient-mismatch",
            FailReason::DlogOutOfRange => "dlog-out-of-range",
        }
    }
}

impl fmt::Display for FailReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which MC run a failure came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RunId {
    Base,
    /// Zero-based variable index of the shifted run.
    Variable(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub reason: FailReason,
    pub run: RunId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Success(SparsePolynomial),
    Fail(Failure),
}

impl Outcome {
    pub fn polynomial(&self) -> Option<&SparsePolynomial> {
        match self {
            Outcome::Success(p) => Some(p),
            Outcome::Fail(_) => None,
        }
    }

    pub fn failure(&self) -> Option<Failure> {
        match self {
            Outcome::Success(_) => None,
            Outcome::Fail(f) => Some(*f),
        }
    }
}

/// What to do when `p < 2(n+2)T^2 D + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FieldSizeCheck {
    #[default]
    Reject,
    /// Proceed and record a warning; the success guarantee no longer holds.
    Warn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub field_size_check: FieldSizeCheck,
    /// Run the per-variable shifted runs concurrently.
    pub parallel: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            field_size_check: FieldSizeCheck::Reject,
            parallel: true,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InterpError {
    #[error("term bound T must be at least 1")]
    ZeroTermBound,
    #[error("degree bound D must be at least 1")]
    ZeroDegreeBound,
    #[error("degree bound D = {degree_bound} must be below p - 1 = {order}")]
    DegreeBoundTooLarge { degree_bound: u64, order: u64 },
    #[error("field too small: p = {actual} but the success guarantee needs p >= {required}")]
    FieldTooSmall { required: u128, actual: u64 },
    #[error("omega = {0} does not generate the multiplicative group")]
    NotAGenerator(Fp),
    #[error("{what} has {found} entries, expected {expected}")]
    ArityMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{0} entries must be nonzero")]
    ZeroPoint(&'static str),
    #[error("epsilon must lie strictly between 0 and 1")]
    EpsilonOutOfRange,
}

/// Everything that pins down one interpolation run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InterpConfig {
    pub terms_bound: usize,
    pub degree_bound: u64,
    pub omega: Fp,
    pub alpha: Vec<Fp>,
    pub zeta: Vec<Fp>,
    /// Seeds the root-finding randomness of each MC run.
    pub seed: u64,
}

impl InterpConfig {
    /// Checks every precondition; returns the warnings that were downgraded
    /// from errors by `check`.
    pub fn validate(
        &self,
        field: &PrimeField,
        n: usize,
        check: FieldSizeCheck,
    ) -> Result<Vec<String>, InterpError> {
        if self.terms_bound == 0 {
            return Err(InterpError::ZeroTermBound);
        }
        if self.degree_bound == 0 {
            return Err(InterpError::ZeroDegreeBound);
        }
        let order = field.modulus() - 1;
        if self.degree_bound >= order {
            return Err(InterpError::DegreeBoundTooLarge {
                degree_bound: self.degree_bound,
                order,
            });
        }
        for (what, v) in [("alpha", &self.alpha), ("zeta", &self.zeta)] {
            if v.len() != n {
                return Err(InterpError::ArityMismatch {
                    what,
                    expected: n,
                    found: v.len(),
                });
            }
            if v.iter().any(|x| x.is_zero() || x.value() >= field.modulus()) {
                return Err(InterpError::ZeroPoint(what));
            }
        }
        if self.omega.value() >= field.modulus() || !field.is_generator(self.omega) {
            return Err(InterpError::NotAGenerator(self.omega));
        }
        let mut warnings = Vec::new();
        let required = algorithm_field_bound(n, self.terms_bound, self.degree_bound);
        if (field.modulus() as u128) < required {
            match check {
                FieldSizeCheck::Reject => {
                    return Err(InterpError::FieldTooSmall {
                        required,
                        actual: field.modulus(),
                    })
                }
                FieldSizeCheck::Warn => warnings.push(format!(
                    "p = {} is below 2(n+2)T^2D+1 = {required}; success probability is not guaranteed",
                    field.modulus()
                )),
            }
        }
        Ok(warnings)
    }
}

fn as_micros<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u128(d.as_micros())
}

/// Time spent per stage. Stage times are summed over all MC runs (which
/// may overlap when run in parallel); `total` is wall-clock.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct StageTimings {
    #[serde(serialize_with = "as_micros")]
    pub probe: Duration,
    #[serde(serialize_with = "as_micros")]
    pub recurrence: Duration,
    #[serde(serialize_with = "as_micros")]
    pub roots: Duration,
    #[serde(serialize_with = "as_micros")]
    pub vandermonde: Duration,
    #[serde(serialize_with = "as_micros")]
    pub dlog: Duration,
    #[serde(serialize_with = "as_micros")]
    pub assembly: Duration,
    #[serde(serialize_with = "as_micros")]
    pub total: Duration,
}

impl StageTimings {
    fn absorb(&mut self, other: &StageTimings) {
        self.probe += other.probe;
        self.recurrence += other.recurrence;
        self.roots += other.roots;
        self.vandermonde += other.vandermonde;
        self.dlog += other.dlog;
        self.assembly += other.assembly;
    }
}

/// Intermediate values of a run, filled in as far as the run got.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct InterpTrace {
    pub base: Option<McTrace>,
    /// One entry per variable once the shifted runs have happened.
    pub shifted: Vec<Option<McTrace>>,
    /// `ratios[k][i] = v_{i,k} / v_i`, in base-pair order.
    pub ratios: Vec<Vec<Fp>>,
    /// `exponents[k][i] = e_{i,k}`, in base-pair order.
    pub exponents: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InterpReport {
    pub outcome: Outcome,
    /// Evaluations observed by the oracle during this run.
    pub probes: u64,
    pub timings: StageTimings,
    pub config: InterpConfig,
    pub warnings: Vec<String>,
    pub trace: InterpTrace,
}

impl InterpReport {
    pub fn is_success(&self) -> bool {
        matches!(self.outcome, Outcome::Success(_))
    }
}
