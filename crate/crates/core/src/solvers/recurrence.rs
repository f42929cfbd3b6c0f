use serde::Serialize;

use crate::field::{Fp, PrimeField};

use super::DensePolynomial;

/// Minimal linear recurrence of a sequence.
///
/// `lambda` is monic of degree `t` and annihilates the sequence:
/// `a[j + t] + sum_{k < t} lambda[k] * a[j + k] = 0` for every admissible `j`.
/// For a sum of `t` geometric progressions with distinct nonzero ratios and
/// nonzero weights, the roots of `lambda` are exactly those ratios.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecurrenceResult {
    pub t: usize,
    pub lambda: DensePolynomial,
}

impl RecurrenceResult {
    /// Checks the annihilation identity over the whole sequence.
    pub fn annihilates(&self, field: &PrimeField, seq: &[Fp]) -> bool {
        let lam = self.lambda.coeffs();
        (0..seq.len().saturating_sub(self.t)).all(|j| {
            let s = (0..=self.t).fold(Fp::ZERO, |acc, k| field.add(acc, field.mul(lam[k], seq[j + k])));
            s.is_zero()
        })
    }
}

/// Berlekamp-Massey over `F_p`.
///
/// Returns the shortest recurrence generating `seq`; the all-zero sequence
/// gives `t = 0` and `lambda = 1`.
pub fn berlekamp_massey(field: &PrimeField, seq: &[Fp]) -> RecurrenceResult {
    // Connection polynomial C(x) = 1 + c_1 x + ... + c_L x^L.
    let mut c: Vec<Fp> = vec![Fp::ONE];
    let mut b: Vec<Fp> = vec![Fp::ONE];
    let mut len = 0usize;
    let mut shift = 1usize;
    let mut last_disc = Fp::ONE;

    for n in 0..seq.len() {
        let mut d = seq[n];
        for i in 1..=len.min(c.len() - 1) {
            d = field.add(d, field.mul(c[i], seq[n - i]));
        }
        if d.is_zero() {
            shift += 1;
            continue;
        }
        let coef = field.mul(d, field.inv(last_disc).expect("nonzero discrepancy"));
        let prev = c.clone();
        if c.len() < b.len() + shift {
            c.resize(b.len() + shift, Fp::ZERO);
        }
        for (i, &bi) in b.iter().enumerate() {
            c[i + shift] = field.sub(c[i + shift], field.mul(coef, bi));
        }
        if 2 * len <= n {
            len = n + 1 - len;
            b = prev;
            last_disc = d;
            shift = 1;
        } else {
            shift += 1;
        }
    }

    c.resize(len + 1, Fp::ZERO);
    // Lambda(z) = z^L C(1/z)
    let lambda = DensePolynomial::new(c.into_iter().rev().collect());
    RecurrenceResult { t: len, lambda }
}
