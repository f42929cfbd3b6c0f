use rand::Rng;
use serde::Serialize;
use web_time::Instant;

use crate::field::{Fp, PrimeField};
use crate::model::{BlackBox, EvaluationOracle};
use crate::solvers::{
    berlekamp_massey, find_distinct_roots, solve_transposed_vandermonde, RecurrenceResult, SolverError,
};

use super::{FailReason, StageTimings};

/// Multiplies the ratio of one variable by an extra factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shift {
    /// Zero-based variable index.
    pub var: usize,
    pub factor: Fp,
}

/// Probes `a_i = f(zeta_1 r_1^i, ..., zeta_n r_n^i)` for `i < 2T`, where
/// `r_j = alpha_j`, except that the shifted variable uses
/// `alpha_k * factor`.
///
/// Points are advanced by one multiplication per coordinate per step.
pub fn probe_sequence<B: BlackBox>(
    oracle: &EvaluationOracle<B>,
    field: &PrimeField,
    alpha: &[Fp],
    zeta: &[Fp],
    shift: Option<Shift>,
    terms_bound: usize,
) -> Vec<Fp> {
    let mut ratio = alpha.to_vec();
    if let Some(s) = shift {
        ratio[s.var] = field.mul(ratio[s.var], s.factor);
    }
    let mut point = zeta.to_vec();
    let len = 2 * terms_bound;
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        out.push(oracle.evaluate(&point));
        if i + 1 < len {
            for (x, &r) in point.iter_mut().zip(&ratio) {
                *x = field.mul(*x, r);
            }
        }
    }
    out
}

/// Pairs `(c~_i, v_i)` sorted by coefficient, then by value.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct McPairs(Vec<(Fp, Fp)>);

impl McPairs {
    pub fn new(mut pairs: Vec<(Fp, Fp)>) -> Self {
        pairs.sort_unstable();
        Self(pairs)
    }

    pub fn pairs(&self) -> &[(Fp, Fp)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficients(&self) -> impl Iterator<Item = Fp> + '_ {
        self.0.iter().map(|p| p.0)
    }

    pub fn values(&self) -> impl Iterator<Item = Fp> + '_ {
        self.0.iter().map(|p| p.1)
    }
}

/// One MC run with its intermediate values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct McTrace {
    pub probes: Vec<Fp>,
    pub recurrence: RecurrenceResult,
    /// Roots of the recurrence in ascending order.
    pub roots: Vec<Fp>,
    /// `coefficients[i]` belongs to `roots[i]`.
    pub coefficients: Vec<Fp>,
    pub pairs: McPairs,
}

/// Runs one MC pass and keeps everything it computed.
#[allow(clippy::too_many_arguments)]
pub fn mc_trace<B: BlackBox, R: Rng + ?Sized>(
    oracle: &EvaluationOracle<B>,
    field: &PrimeField,
    alpha: &[Fp],
    zeta: &[Fp],
    shift: Option<Shift>,
    terms_bound: usize,
    rng: &mut R,
    timings: &mut StageTimings,
) -> Result<McTrace, FailReason> {
    let clock = Instant::now();
    let probes = probe_sequence(oracle, field, alpha, zeta, shift, terms_bound);
    timings.probe += clock.elapsed();

    let clock = Instant::now();
    let recurrence = berlekamp_massey(field, &probes);
    timings.recurrence += clock.elapsed();
    if recurrence.t > terms_bound {
        return Err(FailReason::TermBoundExceeded);
    }

    let clock = Instant::now();
    let roots = find_distinct_roots(field, &recurrence.lambda, rng);
    timings.roots += clock.elapsed();
    let roots = roots.map_err(|e| match e {
        SolverError::SplittingExhausted { .. } => FailReason::SplittingExhausted,
        _ => FailReason::TooFewRoots,
    })?;
    if roots.iter().any(|r| r.is_zero()) {
        return Err(FailReason::ZeroRoot);
    }

    let clock = Instant::now();
    let coefficients = solve_transposed_vandermonde(field, &roots, &probes[..roots.len()]);
    timings.vandermonde += clock.elapsed();
    let coefficients = coefficients.expect("roots are distinct and match the probe count");
    if coefficients.iter().any(|c| c.is_zero()) {
        return Err(FailReason::ZeroCoefficient);
    }

    let pairs = McPairs::new(coefficients.iter().copied().zip(roots.iter().copied()).collect());
    Ok(McTrace {
        probes,
        recurrence,
        roots,
        coefficients,
        pairs,
    })
}

/// MC pairs of the black box along `zeta * alpha^i` (with the optional
/// shift), using `2T` probes.
pub fn mc_pairs<B: BlackBox, R: Rng + ?Sized>(
    oracle: &EvaluationOracle<B>,
    field: &PrimeField,
    alpha: &[Fp],
    zeta: &[Fp],
    shift: Option<Shift>,
    terms_bound: usize,
    rng: &mut R,
) -> Result<McPairs, FailReason> {
    let mut timings = StageTimings::default();
    mc_trace(oracle, field, alpha, zeta, shift, terms_bound, rng, &mut timings).map(|t| t.pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{FnBlackBox, PolynomialBlackBox};
    use crate::worked_example as ex;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn setup() -> (PrimeField, EvaluationOracle<PolynomialBlackBox>) {
        let f = ex::field();
        let g = ex::polynomial(&f);
        (f.clone(), EvaluationOracle::new(PolynomialBlackBox::new(f, g)))
    }

    #[test]
    fn worked_probe_sequence() {
        let (f, oracle) = setup();
        let a = probe_sequence(&oracle, &f, &ex::alpha(&f), &ex::zeta(&f), None, ex::T);
        assert_eq!(a, ex::elems(&f, &ex::PROBES));
        assert_eq!(oracle.probe_count(), 10);
    }

    #[test]
    fn probe_points_match_direct_powers() {
        let f = PrimeField::new(1_000_003).unwrap();
        let seen = std::sync::Mutex::new(Vec::new());
        let oracle = EvaluationOracle::new(FnBlackBox::new(3, |x: &[Fp]| {
            seen.lock().unwrap().push(x.to_vec());
            Fp::ZERO
        }));
        let alpha = ex::elems(&f, &[3, 7, 11]);
        let zeta = ex::elems(&f, &[2, 5, 13]);
        let shift = Shift {
            var: 1,
            factor: f.elem(10),
        };
        probe_sequence(&oracle, &f, &alpha, &zeta, Some(shift), 6);
        let seen = seen.into_inner().unwrap();
        assert_eq!(seen.len(), 12);
        for (i, pt) in seen.iter().enumerate() {
            let i = i as u64;
            let want = vec![
                f.mul(zeta[0], f.pow(alpha[0], i)),
                f.mul(zeta[1], f.pow(f.mul(alpha[1], f.elem(10)), i)),
                f.mul(zeta[2], f.pow(alpha[2], i)),
            ];
            assert_eq!(pt, &want);
        }
    }

    #[test]
    fn worked_base_pairs() {
        let (f, oracle) = setup();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut tm = StageTimings::default();
        let tr = mc_trace(
            &oracle,
            &f,
            &ex::alpha(&f),
            &ex::zeta(&f),
            None,
            ex::T,
            &mut rng,
            &mut tm,
        )
        .unwrap();
        assert_eq!(
            tr.recurrence.lambda,
            crate::solvers::DensePolynomial::from_values(&f, &ex::LAMBDA)
        );
        assert_eq!(tr.roots, ex::elems(&f, &ex::ROOTS));
        assert_eq!(tr.pairs, ex::pairs(&f, &ex::BASE_PAIRS));
    }

    #[test]
    fn worked_shifted_pairs() {
        let (f, oracle) = setup();
        let omega = f.elem(ex::OMEGA);
        for k in 0..3 {
            let mut rng = ChaCha8Rng::seed_from_u64(k as u64);
            let got = mc_pairs(
                &oracle,
                &f,
                &ex::alpha(&f),
                &ex::zeta(&f),
                Some(Shift {
                    var: k,
                    factor: omega,
                }),
                ex::T,
                &mut rng,
            )
            .unwrap();
            assert_eq!(got, ex::pairs(&f, &ex::SHIFTED_PAIRS[k]), "k = {k}");
        }
        assert_eq!(oracle.probe_count(), 30);
    }

    #[test]
    fn pairs_are_the_scaled_terms() {
        // Oracle: c~_i = c_i * zeta^e_i and v_i = alpha^e_i for every term.
        let f = PrimeField::new(1_000_003).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let g = crate::model::random_sparse_polynomial(&f, 2, 6, 30, &mut rng).unwrap();
            let alpha: Vec<Fp> = (0..2).map(|_| f.sample_nonzero(&mut rng)).collect();
            let zeta: Vec<Fp> = (0..2).map(|_| f.sample_nonzero(&mut rng)).collect();
            let mut want: Vec<(Fp, Fp)> = g
                .terms()
                .iter()
                .map(|t| {
                    (
                        f.mul(t.coeff, t.monomial.eval(&f, &zeta)),
                        t.monomial.eval(&f, &alpha),
                    )
                })
                .collect();
            want.sort_unstable();
            let oracle = EvaluationOracle::new(PolynomialBlackBox::new(f.clone(), g));
            match mc_pairs(&oracle, &f, &alpha, &zeta, None, 8, &mut rng) {
                Ok(got) => assert_eq!(got.pairs(), &want[..]),
                // Colliding term values are possible but rare at this size.
                Err(r) => assert_eq!(r, FailReason::TooFewRoots),
            }
        }
    }

    #[test]
    fn zero_polynomial_gives_no_pairs() {
        let f = PrimeField::new(101).unwrap();
        let oracle = EvaluationOracle::new(FnBlackBox::new(1, |_: &[Fp]| Fp::ZERO));
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let got = mc_pairs(&oracle, &f, &[f.elem(3)], &[f.elem(1)], None, 4, &mut rng).unwrap();
        assert!(got.is_empty());
    }

    #[test]
    fn term_bound_exceeded() {
        // 0, 0, 0, 0, 0, 1 has linear complexity 6 > T = 3.
        let f = PrimeField::new(101).unwrap();
        let calls = std::sync::atomic::AtomicUsize::new(0);
        let oracle = EvaluationOracle::new(FnBlackBox::new(1, |_: &[Fp]| {
            let i = calls.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
            if i == 5 {
                Fp::ONE
            } else {
                Fp::ZERO
            }
        }));
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let r = mc_pairs(&oracle, &f, &[f.elem(3)], &[f.elem(1)], None, 3, &mut rng);
        assert_eq!(r, Err(FailReason::TermBoundExceeded));
    }

    #[test]
    fn cancelling_terms_vanish() {
        // x - y along alpha = (2, 2), zeta = (1, 1) is identically zero.
        let f = PrimeField::new(101).unwrap();
        let fld = f.clone();
        let oracle = EvaluationOracle::new(FnBlackBox::new(2, move |x: &[Fp]| fld.sub(x[0], x[1])));
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let one = f.elem(1);
        let got = mc_pairs(
            &oracle,
            &f,
            &[f.elem(2), f.elem(2)],
            &[one, one],
            None,
            2,
            &mut rng,
        )
        .unwrap();
        assert!(got.is_empty());
    }

    #[test]
    fn repeated_root_is_too_few_roots() {
        // a_i = i * 2^i satisfies (z - 2)^2.
        let f = PrimeField::new(101).unwrap();
        let fld = f.clone();
        let oracle = EvaluationOracle::new(FnBlackBox::new(1, move |x: &[Fp]| {
            let i = (0..100).find(|&i| fld.pow(Fp(2), i) == x[0]).unwrap();
            fld.mul(fld.elem(i), x[0])
        }));
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let r = mc_pairs(&oracle, &f, &[f.elem(2)], &[f.elem(1)], None, 3, &mut rng);
        assert_eq!(r, Err(FailReason::TooFewRoots));
    }
}
