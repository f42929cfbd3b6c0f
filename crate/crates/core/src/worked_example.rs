//! A three-variable instance over `F_101`, small enough to follow by hand.
//!
//! `f = 91 y z^2 + 91 x^2 y z + 61 x^2 y^2 z + 61 z^5 + 1` with
//! `alpha = (5, 59, 78)`, `zeta = (34, 29, 89)`, `omega = 34`, `T = D = 5`.
//! The field is far below the size that guarantees success, but these
//! particular choices do succeed.

use crate::field::{Fp, PrimeField};
use crate::interp::McPairs;
use crate::model::{ExponentVector, SparsePolynomial};

pub const P: u64 = 101;
pub const T: usize = 5;
pub const D: u64 = 5;
pub const OMEGA: u64 = 34;
pub const ALPHA: [u64; 3] = [5, 59, 78];
pub const ZETA: [u64; 3] = [34, 29, 89];

/// `(coefficient, [e_x, e_y, e_z])`.
pub const TERMS: [(u64, [u64; 3]); 5] = [
    (91, [0, 1, 2]),
    (91, [2, 1, 1]),
    (61, [2, 2, 1]),
    (61, [0, 0, 5]),
    (1, [0, 0, 0]),
];

/// `f(zeta * alpha^i)` for `i = 0..9`.
pub const PROBES: [u64; 10] = [80, 28, 68, 48, 77, 63, 37, 0, 78, 87];

/// A sequence that is often quoted for this example. It satisfies the same
/// recurrence as [`PROBES`] but is not the probe sequence of `f`.
pub const QUOTED_PROBES: [u64; 10] = [87, 96, 13, 2, 62, 77, 74, 63, 64, 31];

/// Coefficients of the minimal recurrence, constant term first.
pub const LAMBDA: [u64; 6] = [23, 35, 10, 72, 61, 1];
pub const ROOTS: [u64; 5] = [1, 2, 11, 43, 84];

/// Diversified coefficients aligned with [`ROOTS`].
pub const DIVERSIFIED: [u64; 5] = [1, 54, 50, 43, 33];

pub const BASE_PAIRS: [(u64, u64); 5] = [(1, 1), (33, 84), (43, 43), (50, 11), (54, 2)];

/// Pairs of the run with variable `k` shifted by `omega`.
pub const SHIFTED_PAIRS: [[(u64, u64); 5]; 3] = [
    [(1, 1), (33, 84), (43, 16), (50, 91), (54, 2)],
    [(1, 1), (33, 84), (43, 16), (50, 71), (54, 68)],
    [(1, 1), (33, 39), (43, 48), (50, 71), (54, 90)],
];

/// `v_{i,k} / v_i`, one row per variable, in base-pair order.
pub const RATIOS: [[u64; 5]; 3] = [[1, 1, 45, 45, 1], [1, 1, 45, 34, 34], [1, 69, 34, 34, 45]];

/// Exponents `e_{i,k}`, one row per variable, in base-pair order.
pub const EXPONENTS: [[u64; 5]; 3] = [[0, 0, 2, 2, 0], [0, 0, 2, 1, 1], [0, 5, 1, 1, 2]];

/// Original coefficients in base-pair order.
pub const COEFFICIENTS: [u64; 5] = [1, 61, 61, 91, 91];

pub fn field() -> PrimeField {
    PrimeField::new(P).expect("101 is prime")
}

pub fn elems(field: &PrimeField, vals: &[u64]) -> Vec<Fp> {
    vals.iter().map(|&v| field.elem(v)).collect()
}

pub fn pairs(field: &PrimeField, vals: &[(u64, u64)]) -> McPairs {
    McPairs::new(
        vals.iter()
            .map(|&(c, v)| (field.elem(c), field.elem(v)))
            .collect(),
    )
}

pub fn alpha(field: &PrimeField) -> Vec<Fp> {
    elems(field, &ALPHA)
}

pub fn zeta(field: &PrimeField) -> Vec<Fp> {
    elems(field, &ZETA)
}

pub fn polynomial(field: &PrimeField) -> SparsePolynomial {
    let terms = TERMS
        .iter()
        .map(|&(c, e)| (field.elem(c), ExponentVector::new(e.to_vec())));
    SparsePolynomial::from_terms(field, 3, terms).expect("well-formed example")
}
