use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use web_time::Instant;

use crate::field::{BabyStepTable, Fp, PrimeField};
use crate::model::{is_diverse, BlackBox, EvaluationOracle, ExponentVector, SparsePolynomial};

use super::mc::{mc_trace, McTrace, Shift};
use super::{
    FailReason, Failure, InterpConfig, InterpError, InterpReport, InterpTrace, Outcome, RunId, RunOptions,
    StageTimings,
};

impl InterpConfig {
    /// Draws `alpha`, `zeta` uniformly from `(F_p^*)^n`, a random generator
    /// unless `omega` is given, and a seed for the root-finding randomness.
    pub fn sample<R: Rng + ?Sized>(
        field: &PrimeField,
        n: usize,
        terms_bound: usize,
        degree_bound: u64,
        omega: Option<Fp>,
        rng: &mut R,
    ) -> Self {
        let alpha = (0..n).map(|_| field.sample_nonzero(rng)).collect();
        let zeta = (0..n).map(|_| field.sample_nonzero(rng)).collect();
        let omega = omega.unwrap_or_else(|| field.find_primitive_root(rng));
        Self {
            terms_bound,
            degree_bound,
            omega,
            alpha,
            zeta,
            seed: rng.gen(),
        }
    }
}

/// Interpolates the black box with freshly sampled randomness.
pub fn interpolate<B: BlackBox, R: Rng + ?Sized>(
    oracle: &EvaluationOracle<B>,
    field: &PrimeField,
    terms_bound: usize,
    degree_bound: u64,
    omega: Option<Fp>,
    rng: &mut R,
    options: RunOptions,
) -> Result<InterpReport, InterpError> {
    let config = InterpConfig::sample(field, oracle.num_vars(), terms_bound, degree_bound, omega, rng);
    interpolate_with_config(oracle, field, config, options)
}

fn run_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

type RunResult = (Result<McTrace, FailReason>, StageTimings);

fn shifted_run<B: BlackBox>(
    oracle: &EvaluationOracle<B>,
    field: &PrimeField,
    config: &InterpConfig,
    var: usize,
) -> RunResult {
    let mut timings = StageTimings::default();
    let mut rng = run_rng(config.seed, var as u64 + 1);
    let shift = Shift {
        var,
        factor: config.omega,
    };
    let res = mc_trace(
        oracle,
        field,
        &config.alpha,
        &config.zeta,
        Some(shift),
        config.terms_bound,
        &mut rng,
        &mut timings,
    );
    (res, timings)
}

fn shifted_runs<B: BlackBox>(
    oracle: &EvaluationOracle<B>,
    field: &PrimeField,
    config: &InterpConfig,
    n: usize,
    parallel: bool,
) -> Vec<RunResult> {
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return (0..n)
            .into_par_iter()
            .map(|k| shifted_run(oracle, field, config, k))
            .collect();
    }
    let _ = parallel;
    (0..n).map(|k| shifted_run(oracle, field, config, k)).collect()
}

/// Recovers the polynomial behind `oracle` with the given randomness.
///
/// The base run takes `2T` probes. If its coefficients are pairwise
/// distinct, all `n` shifted runs are performed (`2(n+1)T` probes in
/// total) and their failures are reported in variable order.
pub fn interpolate_with_config<B: BlackBox>(
    oracle: &EvaluationOracle<B>,
    field: &PrimeField,
    config: InterpConfig,
    options: RunOptions,
) -> Result<InterpReport, InterpError> {
    let n = oracle.num_vars();
    let warnings = config.validate(field, n, options.field_size_check)?;
    let started = Instant::now();
    let probes_before = oracle.probe_count();
    let mut timings = StageTimings::default();
    let mut trace = InterpTrace::default();

    let outcome = run(oracle, field, &config, options, &mut timings, &mut trace);

    timings.total = started.elapsed();
    Ok(InterpReport {
        outcome,
        probes: oracle.probe_count() - probes_before,
        timings,
        config,
        warnings,
        trace,
    })
}

fn run<B: BlackBox>(
    oracle: &EvaluationOracle<B>,
    field: &PrimeField,
    config: &InterpConfig,
    options: RunOptions,
    timings: &mut StageTimings,
    trace: &mut InterpTrace,
) -> Outcome {
    let n = oracle.num_vars();
    let fail = |reason, run| Outcome::Fail(Failure { reason, run });

    let mut rng = run_rng(config.seed, 0);
    let base = mc_trace(
        oracle,
        field,
        &config.alpha,
        &config.zeta,
        None,
        config.terms_bound,
        &mut rng,
        timings,
    );
    let base = match base {
        Ok(b) => trace.base.insert(b).clone(),
        Err(reason) => return fail(reason, RunId::Base),
    };
    if !is_diverse(base.pairs.coefficients()) {
        return fail(FailReason::DuplicateCoefficient, RunId::Base);
    }

    let runs = shifted_runs(oracle, field, config, n, options.parallel);
    for (_, t) in &runs {
        timings.absorb(t);
    }
    trace.shifted = runs.iter().map(|(r, _)| r.as_ref().ok().cloned()).collect();

    let clock = Instant::now();
    let table = BabyStepTable::new(field, config.omega, config.degree_bound);
    timings.dlog += clock.elapsed();

    let base_pairs = base.pairs.pairs();
    for (k, (res, _)) in runs.iter().enumerate() {
        let run = RunId::Variable(k);
        let shifted = match res {
            Ok(s) => s,
            Err(reason) => return fail(*reason, run),
        };
        if shifted.pairs.len() != base_pairs.len() {
            return fail(FailReason::TermCountMismatch, run);
        }
        if !shifted.pairs.coefficients().eq(base.pairs.coefficients()) {
            return fail(FailReason::CoefficientMismatch, run);
        }

        let clock = Instant::now();
        let ratios: Vec<Fp> = base_pairs
            .iter()
            .zip(shifted.pairs.values())
            .map(|(&(_, v), w)| field.div(w, v).expect("MC values are nonzero"))
            .collect();
        let exps: Option<Vec<u64>> = ratios.iter().map(|&r| table.solve(field, r)).collect();
        timings.dlog += clock.elapsed();
        trace.ratios.push(ratios);
        match exps {
            Some(e) => trace.exponents.push(e),
            None => return fail(FailReason::DlogOutOfRange, run),
        }
    }

    let clock = Instant::now();
    let terms = base_pairs.iter().enumerate().map(|(i, &(c_tilde, _))| {
        let exps: Vec<u64> = (0..n).map(|k| trace.exponents[k][i]).collect();
        let m = ExponentVector::new(exps);
        let scale = m.eval(field, &config.zeta);
        let c = field.div(c_tilde, scale).expect("zeta entries are nonzero");
        (c, m)
    });
    let poly = SparsePolynomial::from_terms(field, n, terms.collect::<Vec<_>>())
        .expect("exponent rows have length n");
    timings.assembly += clock.elapsed();
    // Distinct roots give distinct exponent vectors, so no terms merged.
    debug_assert_eq!(poly.len(), base_pairs.len());
    Outcome::Success(poly)
}
