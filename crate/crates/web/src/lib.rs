//! Browser demo: the worked example traced stage by stage, one-off random
//! interpolations, and empirical success rate against field size.
//!
//! Every export returns a JSON string; the page in `www/` renders it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use diversify::field::{next_prime, Fp, PrimeField};
use diversify::interp::{
    algorithm_field_bound, interpolate, interpolate_with_config, success_probability_bound, FieldSizeCheck,
    InterpConfig, InterpReport, Outcome, RunId, RunOptions,
};
use diversify::model::{poly_equal, random_sparse_polynomial, EvaluationOracle, PolynomialBlackBox};
use diversify::worked_example as ex;

const OPTIONS: RunOptions = RunOptions {
    field_size_check: FieldSizeCheck::Warn,
    parallel: false,
};

fn values(v: &[Fp]) -> Vec<u64> {
    v.iter().map(|x| x.value()).collect()
}

fn parse_list(s: &str, what: &str) -> Result<Vec<u64>, String> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse()
                .map_err(|_| format!("{what}: `{}` is not a nonnegative integer", tok.trim()))
        })
        .collect()
}

fn outcome_text(report: &InterpReport) -> String {
    match &report.outcome {
        Outcome::Success(_) => "success".into(),
        Outcome::Fail(f) => match f.run {
            RunId::Base => format!("fail: {} in the base run", f.reason),
            RunId::Variable(k) => format!("fail: {} in the run shifted in x{}", f.reason, k + 1),
        },
    }
}

fn bound(n: usize, t: usize, d: u64, q: u64) -> f64 {
    let r = success_probability_bound(n, t, d, q);
    *r.numer() as f64 / *r.denom() as f64
}

/// The worked example over `F_101` with caller-chosen randomness.
pub fn example_trace_value(alpha: &str, zeta: &str, omega: u64) -> Result<Value, String> {
    let f = ex::field();
    let hidden = ex::polynomial(&f);
    let alpha: Vec<Fp> = parse_list(alpha, "alpha")?
        .into_iter()
        .map(|v| f.elem(v))
        .collect();
    let zeta: Vec<Fp> = parse_list(zeta, "zeta")?.into_iter().map(|v| f.elem(v)).collect();
    let config = InterpConfig {
        terms_bound: ex::T,
        degree_bound: ex::D,
        omega: f.elem(omega),
        alpha,
        zeta: zeta.clone(),
        seed: 0,
    };
    let oracle = EvaluationOracle::new(PolynomialBlackBox::new(f.clone(), hidden.clone()));
    let report = interpolate_with_config(&oracle, &f, config, OPTIONS).map_err(|e| e.to_string())?;

    let diversified: Vec<Value> = hidden
        .terms()
        .iter()
        .map(|t| {
            let scale = t.monomial.eval(&f, &zeta);
            json!({
                "monomial": t.monomial.exponents(),
                "c": t.coeff.value(),
                "scale": scale.value(),
                "c_tilde": f.mul(t.coeff, scale).value(),
            })
        })
        .collect();
    let scaled = hidden.scale_variables(&f, &zeta).map_err(|e| e.to_string())?;

    let tr = &report.trace;
    let base = tr.base.as_ref();
    let pairs = |p: &diversify::interp::McPairs| -> Vec<(u64, u64)> {
        p.pairs().iter().map(|&(c, v)| (c.value(), v.value())).collect()
    };
    Ok(json!({
        "p": f.modulus(),
        "hidden": hidden.to_string(),
        "diversified": diversified,
        "diverse": scaled.is_diverse(),
        "warnings": report.warnings,
        "probes": base.map(|b| values(&b.probes)),
        "lambda": base.map(|b| values(b.recurrence.lambda.coeffs())),
        "roots": base.map(|b| values(&b.roots)),
        "base_pairs": base.map(|b| pairs(&b.pairs)),
        "shifted_pairs": tr.shifted.iter().map(|s| s.as_ref().map(|s| pairs(&s.pairs))).collect::<Vec<_>>(),
        "ratios": tr.ratios.iter().map(|r| values(r)).collect::<Vec<_>>(),
        "exponents": tr.exponents,
        "outcome": outcome_text(&report),
        "recovered": report.outcome.polynomial().map(|g| g.to_string()),
        "matches": report.outcome.polynomial().map(|g| poly_equal(g, &hidden)),
        "probe_count": report.probes,
    }))
}

/// A random hidden polynomial, interpolated once.
pub fn interpolate_random_value(
    p: u64,
    n: usize,
    t: usize,
    terms_bound: usize,
    degree_bound: u64,
    seed: u64,
) -> Result<Value, String> {
    let f = PrimeField::new(p).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hidden = random_sparse_polynomial(&f, n, t, degree_bound, &mut rng).map_err(|e| e.to_string())?;
    let oracle = EvaluationOracle::new(PolynomialBlackBox::new(f.clone(), hidden.clone()));
    let report = interpolate(&oracle, &f, terms_bound, degree_bound, None, &mut rng, OPTIONS)
        .map_err(|e| e.to_string())?;
    let tm = &report.timings;
    Ok(json!({
        "hidden": hidden.to_string(),
        "recovered": report.outcome.polynomial().map(|g| g.to_string()),
        "outcome": outcome_text(&report),
        "matches": report.outcome.polynomial().map(|g| poly_equal(g, &hidden)),
        "probes": report.probes,
        "expected_probes": 2 * (n as u64 + 1) * terms_bound as u64,
        "required_p": algorithm_field_bound(n, terms_bound, degree_bound).to_string(),
        "success_bound": bound(n, terms_bound, degree_bound, p),
        "warnings": report.warnings,
        "timings_us": {
            "probe": tm.probe.as_micros() as u64,
            "recurrence": tm.recurrence.as_micros() as u64,
            "roots": tm.roots.as_micros() as u64,
            "vandermonde": tm.vandermonde.as_micros() as u64,
            "dlog": tm.dlog.as_micros() as u64,
            "total": tm.total.as_micros() as u64,
        },
    }))
}

/// Observed success rate at primes near successive powers of two, next to
/// the guaranteed lower bound.
pub fn success_curve_value(
    n: usize,
    terms_bound: usize,
    degree_bound: u64,
    trials: usize,
    seed: u64,
) -> Result<Value, String> {
    if terms_bound == 0 || n == 0 || trials == 0 {
        return Err("n, T and trials must be positive".into());
    }
    let required = algorithm_field_bound(n, terms_bound, degree_bound);
    let lo_bits = 64 - (degree_bound + 2).leading_zeros();
    let hi_bits = (128 - required.leading_zeros() + 3).min(61);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::new();
    for bits in lo_bits..=hi_bits {
        let p = next_prime(1 << bits);
        let f = PrimeField::new(p).map_err(|e| e.to_string())?;
        let mut ok = 0;
        for _ in 0..trials {
            let mut r = ChaCha8Rng::seed_from_u64(rng.gen());
            let hidden = random_sparse_polynomial(&f, n, terms_bound, degree_bound, &mut r)
                .map_err(|e| e.to_string())?;
            let oracle = EvaluationOracle::new(PolynomialBlackBox::new(f.clone(), hidden.clone()));
            let report = interpolate(&oracle, &f, terms_bound, degree_bound, None, &mut r, OPTIONS)
                .map_err(|e| e.to_string())?;
            if report
                .outcome
                .polynomial()
                .is_some_and(|g| poly_equal(g, &hidden))
            {
                ok += 1;
            }
        }
        points.push(json!({
            "p": p,
            "bits": bits,
            "rate": ok as f64 / trials as f64,
            "bound": bound(n, terms_bound, degree_bound, p),
        }));
    }
    Ok(json!({ "required_p": required.to_string(), "points": points }))
}

fn export(v: Result<Value, String>) -> Result<String, JsError> {
    v.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = exampleTrace)]
pub fn example_trace(alpha: &str, zeta: &str, omega: u64) -> Result<String, JsError> {
    export(example_trace_value(alpha, zeta, omega))
}

#[wasm_bindgen(js_name = interpolateRandom)]
pub fn interpolate_random(
    p: u64,
    n: usize,
    t: usize,
    terms_bound: usize,
    degree_bound: u64,
    seed: u64,
) -> Result<String, JsError> {
    export(interpolate_random_value(p, n, t, terms_bound, degree_bound, seed))
}

#[wasm_bindgen(js_name = successCurve)]
pub fn success_curve(
    n: usize,
    terms_bound: usize,
    degree_bound: u64,
    trials: usize,
    seed: u64,
) -> Result<String, JsError> {
    export(success_curve_value(n, terms_bound, degree_bound, trials, seed))
}
