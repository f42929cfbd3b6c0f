use std::collections::HashSet;

use rand::seq::index;
use rand::Rng;

use crate::field::PrimeField;

use super::{ExponentVector, ModelError, SparsePolynomial};

// Below this support size, sample indices without replacement instead of
// rejection sampling.
const ENUMERATE_LIMIT: u128 = 1 << 20;

/// Random polynomial with exactly `t` terms in `n` variables: distinct
/// monomials with exponents uniform in `[0, degree_bound]` and coefficients
/// uniform in `F_p^*`.
pub fn random_sparse_polynomial<R: Rng + ?Sized>(
    field: &PrimeField,
    n: usize,
    t: usize,
    degree_bound: u64,
    rng: &mut R,
) -> Result<SparsePolynomial, ModelError> {
    let base = degree_bound as u128 + 1;
    let available = (0..n).try_fold(1u128, |acc, _| acc.checked_mul(base));
    if let Some(avail) = available {
        if t as u128 > avail {
            return Err(ModelError::TooManyTerms { t, available: avail });
        }
    }

    let monomials: Vec<ExponentVector> = match available {
        Some(avail) if avail <= ENUMERATE_LIMIT && (t as u128) * 4 >= avail => {
            index::sample(rng, avail as usize, t)
                .into_iter()
                .map(|idx| decode(idx as u128, base, n))
                .collect()
        }
        _ => {
            let mut seen = HashSet::with_capacity(t);
            let mut out = Vec::with_capacity(t);
            while out.len() < t {
                let m = ExponentVector::new((0..n).map(|_| rng.gen_range(0..=degree_bound)).collect());
                if seen.insert(m.clone()) {
                    out.push(m);
                }
            }
            out
        }
    };

    let terms: Vec<_> = monomials
        .into_iter()
        .map(|m| (field.sample_nonzero(rng), m))
        .collect();
    SparsePolynomial::from_terms(field, n, terms)
}

fn decode(mut idx: u128, base: u128, n: usize) -> ExponentVector {
    let mut e = Vec::with_capacity(n);
    for _ in 0..n {
        e.push((idx % base) as u64);
        idx /= base;
    }
    ExponentVector::new(e)
}
