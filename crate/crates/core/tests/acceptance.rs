//! End-to-end acceptance checks. Each test prints one PASS/FAIL line.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Mutex;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use diversify::field::{bounded_dlog, next_prime, Fp, PrimeField};
use diversify::harness::{run_bench, summarize, BenchSpec, Param, TrialOutcome};
use diversify::interp::{
    algorithm_field_bound, interpolate, interpolate_with_config, FieldSizeCheck, InterpConfig, Outcome,
    RunId, RunOptions,
};
use diversify::model::{
    poly_equal, random_sparse_polynomial, EvaluationOracle, ExponentVector, PolynomialBlackBox,
    SparsePolynomial,
};
use diversify::solvers::{berlekamp_massey, find_distinct_roots, solve_transposed_vandermonde};
use diversify::worked_example as ex;

// Timing checks must not share the machine with the other checks.
static SERIAL: Mutex<()> = Mutex::new(());

const Q: u64 = 140_122_640_051;

fn serial() -> std::sync::MutexGuard<'static, ()> {
    SERIAL.lock().unwrap_or_else(|e| e.into_inner())
}

fn verdict(n: u32, name: &str, ok: bool, detail: &str) {
    println!(
        "criterion {n} ({name}): {} {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
}

fn vals(v: &[Fp]) -> Vec<u64> {
    v.iter().map(|x| x.value()).collect()
}

#[test]
fn golden_example() {
    let _g = serial();
    let start = Instant::now();
    let f = ex::field();
    let hidden = ex::polynomial(&f);
    let oracle = EvaluationOracle::new(PolynomialBlackBox::new(f.clone(), hidden.clone()));
    let cfg = InterpConfig {
        terms_bound: 5,
        degree_bound: 5,
        omega: f.elem(34),
        alpha: ex::elems(&f, &[5, 59, 78]),
        zeta: ex::elems(&f, &[34, 29, 89]),
        seed: 0,
    };
    let opts = RunOptions {
        field_size_check: FieldSizeCheck::Warn,
        parallel: false,
    };
    let rep = interpolate_with_config(&oracle, &f, cfg, opts).unwrap();
    let elapsed = start.elapsed();

    let base = rep.trace.base.as_ref().expect("base run completed");
    let pairs: Vec<(u64, u64)> = base
        .pairs
        .pairs()
        .iter()
        .map(|&(c, v)| (c.value(), v.value()))
        .collect();
    let ratios: Vec<Vec<u64>> = rep.trace.ratios.iter().map(|r| vals(r)).collect();
    let coeffs: Vec<u64> = match rep.outcome.polynomial() {
        Some(p) => (0..5)
            .map(|i| {
                let m = ExponentVector::new(rep.trace.exponents.iter().map(|row| row[i]).collect());
                p.terms()
                    .iter()
                    .find(|t| t.monomial == m)
                    .map_or(0, |t| t.coeff.value())
            })
            .collect(),
        None => Vec::new(),
    };

    let checks: Vec<(&str, bool)> = vec![
        ("A", vals(&base.probes) == [87, 96, 13, 2, 62, 77, 74, 63, 64, 31]),
        (
            "Lambda",
            vals(base.recurrence.lambda.coeffs()) == [23, 35, 10, 72, 61, 1],
        ),
        ("roots", vals(&base.roots) == [1, 2, 11, 43, 84]),
        ("pairs", pairs == [(1, 1), (33, 84), (43, 43), (50, 11), (54, 2)]),
        (
            "ratios",
            ratios == [[1, 1, 45, 45, 1], [1, 1, 45, 34, 34], [1, 69, 34, 34, 45]],
        ),
        (
            "exponents",
            rep.trace.exponents == [[0, 0, 2, 2, 0], [0, 0, 2, 1, 1], [0, 5, 1, 1, 2]],
        ),
        ("coefficients", coeffs == [1, 61, 61, 91, 91]),
        (
            "f",
            rep.outcome.polynomial().is_some_and(|p| poly_equal(p, &hidden)),
        ),
        ("runtime", elapsed.as_secs_f64() < 1.0),
    ];
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    let detail = if failed.is_empty() {
        format!("all {} quantities match", checks.len())
    } else {
        format!(
            "mismatched: {} (probe sequence computed as {:?})",
            failed.join(", "),
            vals(&base.probes)
        )
    };
    verdict(1, "golden example", failed.is_empty(), &detail);
    assert!(failed.is_empty(), "{detail}");
}

#[test]
fn probe_count() {
    let _g = serial();
    let field = PrimeField::new(Q).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut successes = 0;
    let mut violations = Vec::new();
    for &n in &[1usize, 3, 8] {
        for &t_bound in &[1usize, 5, 30] {
            for _ in 0..60 {
                let t = rng.gen_range(1..=t_bound);
                let g = random_sparse_polynomial(&field, n, t, 50, &mut rng).unwrap();
                let oracle = EvaluationOracle::new(PolynomialBlackBox::new(field.clone(), g.clone()));
                let rep = interpolate(
                    &oracle,
                    &field,
                    t_bound,
                    50,
                    None,
                    &mut rng,
                    RunOptions::default(),
                )
                .unwrap();
                if rep.outcome.polynomial().is_some_and(|p| poly_equal(p, &g)) {
                    successes += 1;
                    let want = 2 * (n as u64 + 1) * t_bound as u64;
                    if rep.probes != want || oracle.probe_count() != want {
                        violations.push((n, t_bound, rep.probes, oracle.probe_count()));
                    }
                }
            }
        }
    }
    let ok = successes >= 500 && violations.is_empty();
    verdict(
        2,
        "probe count",
        ok,
        &format!(
            "{successes} successful runs, {} probe-count violations",
            violations.len()
        ),
    );
    assert!(ok, "{violations:?}");
}

#[test]
fn success_rate() {
    let _g = serial();
    let start = Instant::now();
    let spec = BenchSpec {
        vary: Param::T,
        values: vec![10],
        n: 3,
        terms_bound: 10,
        terms: None,
        degree_bound: 20,
        q: Q,
        trials: 200,
        seed: 3,
        force: false,
    };
    let recs = run_bench(&spec).unwrap();
    let ok_count = recs.iter().filter(|r| r.outcome == TrialOutcome::Success).count();
    let wrong = recs
        .iter()
        .filter(|r| r.outcome == TrialOutcome::WrongAnswer)
        .count();
    let rate = ok_count as f64 / recs.len() as f64;
    let elapsed = start.elapsed().as_secs_f64();
    let ok = recs.len() == 200 && rate >= 0.75 && wrong == 0 && elapsed < 120.0;
    verdict(
        3,
        "success rate",
        ok,
        &format!("{ok_count}/200 correct, {wrong} wrong answers, {elapsed:.2} s"),
    );
    assert!(ok);
}

#[test]
fn bounded_dlog_exhaustive() {
    let _g = serial();
    let f = PrimeField::new(Q).unwrap();
    let omega = f.elem(2);
    let bound = 1_000_000;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let exps: Vec<u64> = (0..=1000)
        .chain((0..1000).map(|_| rng.gen_range(0..=bound)))
        .collect();
    let bad: Vec<u64> = exps
        .iter()
        .copied()
        .filter(|&e| bounded_dlog(&f, omega, f.pow(omega, e), bound) != Some(e))
        .collect();
    verdict(
        4,
        "bounded dlog",
        bad.is_empty(),
        &format!("{} exponents checked, {} mismatches", exps.len(), bad.len()),
    );
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn kernel_oracles() {
    let _g = serial();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let primes: Vec<u64> = std::iter::successors(Some(2), |&p| Some(next_prime(p + 1)))
        .take_while(|&p| p <= 257)
        .collect();
    let mut failures = Vec::new();
    for case in 0..1000 {
        let p = primes[rng.gen_range(0..primes.len())];
        let f = PrimeField::new(p).unwrap();
        let t = rng.gen_range(1..=8.min(p as usize));
        let mut v = BTreeSet::new();
        while v.len() < t {
            v.insert(f.sample(&mut rng));
        }
        let v: Vec<Fp> = v.into_iter().collect();
        let c: Vec<Fp> = (0..t).map(|_| f.sample_nonzero(&mut rng)).collect();
        let a: Vec<Fp> = (0..2 * t as u64)
            .map(|i| {
                c.iter()
                    .zip(&v)
                    .fold(Fp::ZERO, |s, (&ci, &vi)| f.add(s, f.mul(ci, f.pow(vi, i))))
            })
            .collect();

        let rec = berlekamp_massey(&f, &a);
        if rec.t != t {
            failures.push(format!("case {case}: p={p} degree {} != {t}", rec.t));
            continue;
        }
        let scan: Vec<Fp> = (0..p)
            .map(|x| f.elem(x))
            .filter(|&x| rec.lambda.eval(&f, x).is_zero())
            .collect();
        let roots = find_distinct_roots(&f, &rec.lambda, &mut rng);
        if roots.as_ref() != Ok(&scan) || scan != v {
            failures.push(format!("case {case}: p={p} roots {roots:?} vs scan {scan:?}"));
            continue;
        }
        let sol = solve_transposed_vandermonde(&f, &v, &a[..t]).unwrap();
        let back: Vec<Fp> = (0..t as u64)
            .map(|j| {
                sol.iter()
                    .zip(&v)
                    .fold(Fp::ZERO, |s, (&ci, &vi)| f.add(s, f.mul(ci, f.pow(vi, j))))
            })
            .collect();
        if sol != c || back != a[..t] {
            failures.push(format!("case {case}: p={p} vandermonde mismatch"));
        }
    }
    verdict(
        5,
        "kernel oracles",
        failures.is_empty(),
        &format!("1000 instances, {} mismatches", failures.len()),
    );
    assert!(failures.is_empty(), "{failures:?}");
}

fn mean_ratio_check(means: &[(u64, f64)], limit: f64) -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for w in means.windows(2) {
        let r = w[1].1 / w[0].1;
        ok &= r <= limit;
        parts.push(format!("{}->{}: {r:.2}x", w[0].0, w[1].0));
    }
    (ok, parts.join(", "))
}

#[test]
fn scaling() {
    let _g = serial();
    let start = Instant::now();
    let t_spec = BenchSpec {
        vary: Param::T,
        values: vec![10, 20, 40, 80],
        n: 3,
        terms_bound: 0,
        terms: None,
        degree_bound: 100,
        q: Q,
        trials: 60,
        seed: 6,
        force: false,
    };
    let d_spec = BenchSpec {
        vary: Param::D,
        values: vec![100, 10_000, 1_000_000],
        terms_bound: 10,
        ..t_spec.clone()
    };
    // warm caches and the allocator before timing anything
    run_bench(&BenchSpec {
        trials: 3,
        ..t_spec.clone()
    })
    .unwrap();

    let t_means: Vec<(u64, f64)> = summarize(&run_bench(&t_spec).unwrap())
        .iter()
        .map(|s| (s.terms_bound as u64, s.mean_us_total))
        .collect();
    let d_means: Vec<(u64, f64)> = summarize(&run_bench(&d_spec).unwrap())
        .iter()
        .map(|s| (s.degree_bound, s.mean_us_dlog))
        .collect();
    let (t_ok, t_detail) = mean_ratio_check(&t_means, 3.0);
    let (d_ok, d_detail) = mean_ratio_check(&d_means, 30.0);
    let elapsed = start.elapsed().as_secs_f64();
    let ok = t_ok && d_ok && elapsed < 600.0;
    verdict(
        6,
        "scaling",
        ok,
        &format!("total time when doubling T [{t_detail}]; dlog time when D grows 100x [{d_detail}]"),
    );
    assert!(ok);
}

// Instances built to collide: few distinct coefficients, tiny fields,
// degree bounds close to p, and sometimes more terms than T.
// Resampled until p is below the guaranteed-success bound.
fn crafted_instance(rng: &mut ChaCha8Rng, case: usize) -> (PrimeField, SparsePolynomial, usize, u64) {
    loop {
        let inst = crafted_candidate(rng, case);
        if (inst.0.modulus() as u128) < algorithm_field_bound(inst.1.num_vars(), inst.2, inst.3) {
            return inst;
        }
    }
}

fn crafted_candidate(rng: &mut ChaCha8Rng, case: usize) -> (PrimeField, SparsePolynomial, usize, u64) {
    let p = [5u64, 7, 11, 13, 17, 31, 101][case % 7];
    let f = PrimeField::new(p).unwrap();
    let n = 1 + case % 4;
    let d = rng.gen_range(1..=(p - 2).min(6));
    let support = (d as usize + 1).pow(n as u32);
    let t = rng.gen_range(1..=support.min(8));
    let shared = f.sample_nonzero(rng);
    let mut mons = BTreeSet::new();
    while mons.len() < t {
        mons.insert((0..n).map(|_| rng.gen_range(0..=d)).collect::<Vec<u64>>());
    }
    let terms = mons.into_iter().map(|m| {
        let c = if rng.gen_bool(0.6) {
            shared
        } else {
            f.sample_nonzero(rng)
        };
        (c, ExponentVector::new(m))
    });
    let g = SparsePolynomial::from_terms(&f, n, terms).unwrap();
    let t_bound = if case.is_multiple_of(5) {
        (t / 2).max(1)
    } else {
        t + rng.gen_range(0..3)
    };
    (f, g, t_bound, d)
}

#[test]
fn failure_honesty() {
    let _g = serial();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut crashes = 0;
    let mut violations = Vec::new();
    let (mut fails, mut correct, mut wrong) = (0, 0, 0);
    for case in 0..100 {
        let (f, g, t_bound, d) = crafted_instance(&mut rng, case);
        let n = g.num_vars();
        let seed = rng.gen::<u64>();
        let run = catch_unwind(AssertUnwindSafe(|| {
            let oracle = EvaluationOracle::new(PolynomialBlackBox::new(f.clone(), g.clone()));
            let mut r = ChaCha8Rng::seed_from_u64(seed);
            let opts = RunOptions {
                field_size_check: FieldSizeCheck::Warn,
                parallel: true,
            };
            let rep = interpolate(&oracle, &f, t_bound, d, None, &mut r, opts).unwrap();
            (rep, oracle.probe_count())
        }));
        let Ok((rep, counted)) = run else {
            crashes += 1;
            continue;
        };
        let full = 2 * (n as u64 + 1) * t_bound as u64;
        let expected = match rep.outcome {
            Outcome::Fail(fl) if fl.run == RunId::Base => 2 * t_bound as u64,
            _ => full,
        };
        if rep.probes != counted || counted != expected || rep.warnings.is_empty() {
            violations.push(format!(
                "case {case}: reported {} counted {counted} expected {expected}",
                rep.probes
            ));
        }
        match &rep.outcome {
            Outcome::Fail(_) => fails += 1,
            Outcome::Success(h) => {
                let well_formed = h.num_vars() == n
                    && h.len() <= t_bound
                    && h.max_partial_degree() <= d
                    && h.coefficients().all(|c| !c.is_zero() && c.value() < f.modulus());
                if !well_formed {
                    violations.push(format!("case {case}: malformed output {h}"));
                }
                if poly_equal(h, &g) {
                    correct += 1;
                } else {
                    wrong += 1;
                }
            }
        }
    }
    let ok = crashes == 0 && violations.is_empty();
    verdict(
        7,
        "failure honesty",
        ok,
        &format!(
            "100 runs: {fails} explicit failures, {correct} correct, {wrong} wrong but well-formed, {crashes} crashes, {} probe or format violations",
            violations.len()
        ),
    );
    assert!(ok, "{violations:?}");
}
