//! Bounded discrete logarithm by interval baby-step/giant-step.

use std::collections::HashMap;

use super::{Fp, PrimeField};

/// Precomputed baby steps for solving `omega^e = y` with `0 <= e <= bound`.
///
/// Building the table costs `ceil(sqrt(bound + 1))` multiplications and each
/// query at most as many giant steps, so one table can serve every exponent
/// lookup of an interpolation run.
#[derive(Debug, Clone)]
pub struct BabyStepTable {
    bound: u64,
    step: u64,
    baby: HashMap<u64, u64>,
    giant: Fp,
}

impl BabyStepTable {
    /// `bound` is clamped to `p - 2`, beyond which exponents are no longer
    /// unique for a generator.
    pub fn new(field: &PrimeField, omega: Fp, bound: u64) -> Self {
        let bound = bound.min(field.modulus().saturating_sub(2));
        let step = isqrt_ceil(bound + 1).max(1);
        let mut baby = HashMap::with_capacity(step as usize);
        let mut cur = Fp::ONE;
        for j in 0..step {
            baby.entry(cur.value()).or_insert(j);
            cur = field.mul(cur, omega);
        }
        // cur = omega^step; its inverse exists whenever omega != 0
        let giant = field.inv(cur).unwrap_or(Fp::ZERO);
        Self {
            bound,
            step,
            baby,
            giant,
        }
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// Returns the least `e <= bound` with `omega^e = target`.
    pub fn solve(&self, field: &PrimeField, target: Fp) -> Option<u64> {
        if target.is_zero() {
            return None;
        }
        let mut gamma = target;
        for i in 0..self.step {
            if let Some(&j) = self.baby.get(&gamma.value()) {
                let e = i * self.step + j;
                return (e <= self.bound).then_some(e);
            }
            gamma = field.mul(gamma, self.giant);
        }
        None
    }
}

/// Solves `omega^e = target` for `e` in `[0, bound]` with `O(sqrt(bound))`
/// field operations. `None` means no such exponent exists.
pub fn bounded_dlog(field: &PrimeField, omega: Fp, target: Fp, bound: u64) -> Option<u64> {
    BabyStepTable::new(field, omega, bound).solve(field, target)
}

fn isqrt_ceil(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.saturating_mul(r) > n {
        r -= 1;
    }
    while r.saturating_mul(r) < n {
        r += 1;
    }
    r
}
