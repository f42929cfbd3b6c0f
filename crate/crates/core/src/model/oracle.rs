use std::sync::atomic::{AtomicU64, Ordering};

use crate::field::{Fp, PrimeField};

use super::SparsePolynomial;

/// Something that maps points of `F_p^n` to `F_p`.
///
/// Implementations must be safe to call from several threads at once.
pub trait BlackBox: Sync {
    fn num_vars(&self) -> usize;
    fn evaluate(&self, point: &[Fp]) -> Fp;
}

/// Black box backed by a stored sparse polynomial.
#[derive(Debug, Clone)]
pub struct PolynomialBlackBox {
    field: PrimeField,
    poly: SparsePolynomial,
}

impl PolynomialBlackBox {
    pub fn new(field: PrimeField, poly: SparsePolynomial) -> Self {
        Self { field, poly }
    }

    pub fn polynomial(&self) -> &SparsePolynomial {
        &self.poly
    }
}

impl BlackBox for PolynomialBlackBox {
    fn num_vars(&self) -> usize {
        self.poly.num_vars()
    }

    fn evaluate(&self, point: &[Fp]) -> Fp {
        self.poly.evaluate(&self.field, point)
    }
}

/// Black box backed by a closure.
pub struct FnBlackBox<F> {
    n: usize,
    f: F,
}

impl<F> FnBlackBox<F>
where
    F: Fn(&[Fp]) -> Fp + Sync,
{
    pub fn new(n: usize, f: F) -> Self {
        Self { n, f }
    }
}

impl<F> BlackBox for FnBlackBox<F>
where
    F: Fn(&[Fp]) -> Fp + Sync,
{
    fn num_vars(&self) -> usize {
        self.n
    }

    fn evaluate(&self, point: &[Fp]) -> Fp {
        (self.f)(point)
    }
}

/// Wraps a black box and counts every evaluation.
///
/// The counter is atomic and only ever increases, so concurrent probing
/// from independent runs is accounted exactly.
pub struct EvaluationOracle<B> {
    inner: B,
    probes: AtomicU64,
}

impl<B: BlackBox> EvaluationOracle<B> {
    pub fn new(inner: B) -> Self {
        Self {
            inner,
            probes: AtomicU64::new(0),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.inner.num_vars()
    }

    pub fn evaluate(&self, point: &[Fp]) -> Fp {
        self.probes.fetch_add(1, Ordering::Relaxed);
        self.inner.evaluate(point)
    }

    pub fn probe_count(&self) -> u64 {
        self.probes.load(Ordering::Relaxed)
    }

    pub fn inner(&self) -> &B {
        &self.inner
    }

    pub fn into_inner(self) -> B {
        self.inner
    }
}
