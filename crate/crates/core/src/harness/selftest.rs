use std::fmt::Debug;

use crate::field::Fp;
use crate::interp::{interpolate_with_config, probe_sequence, FieldSizeCheck, InterpConfig, RunOptions};
use crate::model::{EvaluationOracle, ExponentVector, PolynomialBlackBox};
use crate::solvers::berlekamp_massey;
use crate::worked_example as ex;

/// One line of the self-test checklist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
}

impl Check {
    // Quantities are compared through their debug rendering.
    fn new(name: impl Into<String>, expected: impl Debug, actual: impl Debug) -> Self {
        Self {
            name: name.into(),
            expected: format!("{expected:?}"),
            actual: format!("{actual:?}"),
        }
    }

    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

fn values(v: &[Fp]) -> Vec<u64> {
    v.iter().map(|x| x.value()).collect()
}

fn pair_values(p: &crate::interp::McPairs) -> Vec<(u64, u64)> {
    p.pairs().iter().map(|&(c, v)| (c.value(), v.value())).collect()
}

/// Replays the worked example with pinned randomness and compares every
/// intermediate quantity.
pub fn selftest() -> Vec<Check> {
    let f = ex::field();
    let g = ex::polynomial(&f);
    let mut checks = Vec::new();

    let oracle = EvaluationOracle::new(PolynomialBlackBox::new(f.clone(), g.clone()));
    let a = probe_sequence(&oracle, &f, &ex::alpha(&f), &ex::zeta(&f), None, ex::T);
    checks.push(Check::new("probe sequence", ex::PROBES.to_vec(), values(&a)));
    let quoted = berlekamp_massey(&f, &ex::elems(&f, &ex::QUOTED_PROBES));
    checks.push(Check::new(
        "recurrence of the quoted sequence",
        ex::LAMBDA.to_vec(),
        values(quoted.lambda.coeffs()),
    ));

    let config = InterpConfig {
        terms_bound: ex::T,
        degree_bound: ex::D,
        omega: f.elem(ex::OMEGA),
        alpha: ex::alpha(&f),
        zeta: ex::zeta(&f),
        seed: 0,
    };
    let options = RunOptions {
        field_size_check: FieldSizeCheck::Warn,
        parallel: false,
    };
    let oracle = EvaluationOracle::new(PolynomialBlackBox::new(f.clone(), g.clone()));
    let report = match interpolate_with_config(&oracle, &f, config, options) {
        Ok(r) => r,
        Err(e) => {
            checks.push(Check::new(
                "interpolation accepted",
                "ok".to_string(),
                e.to_string(),
            ));
            return checks;
        }
    };
    let trace = &report.trace;

    match &trace.base {
        Some(b) => {
            checks.push(Check::new(
                "Lambda",
                ex::LAMBDA.to_vec(),
                values(b.recurrence.lambda.coeffs()),
            ));
            checks.push(Check::new("roots", ex::ROOTS.to_vec(), values(&b.roots)));
            checks.push(Check::new(
                "diversified coefficients",
                ex::DIVERSIFIED.to_vec(),
                values(&b.coefficients),
            ));
            checks.push(Check::new(
                "base pairs",
                ex::BASE_PAIRS.to_vec(),
                pair_values(&b.pairs),
            ));
        }
        None => checks.push(Check::new(
            "base run",
            "pairs".to_string(),
            format!("{:?}", report.outcome),
        )),
    }
    for (k, want) in ex::SHIFTED_PAIRS.iter().enumerate() {
        let got = trace
            .shifted
            .get(k)
            .and_then(|s| s.as_ref())
            .map(|s| pair_values(&s.pairs));
        checks.push(Check::new(
            format!("pairs shifted in x{}", k + 1),
            Some(want.to_vec()),
            got,
        ));
    }
    for (k, want) in ex::RATIOS.iter().enumerate() {
        let got = trace.ratios.get(k).map(|r| values(r));
        checks.push(Check::new(
            format!("ratios for x{}", k + 1),
            Some(want.to_vec()),
            got,
        ));
    }
    for (k, want) in ex::EXPONENTS.iter().enumerate() {
        let got = trace.exponents.get(k).cloned();
        checks.push(Check::new(
            format!("exponents of x{}", k + 1),
            Some(want.to_vec()),
            got,
        ));
    }

    let recovered = report.outcome.polynomial();
    let coeffs: Option<Vec<u64>> = recovered.and_then(|p| {
        (0..ex::COEFFICIENTS.len())
            .map(|i| {
                let m = ExponentVector::new(trace.exponents.iter().map(|row| row[i]).collect());
                p.terms()
                    .iter()
                    .find(|t| t.monomial == m)
                    .map(|t| t.coeff.value())
            })
            .collect()
    });
    checks.push(Check::new(
        "coefficients",
        Some(ex::COEFFICIENTS.to_vec()),
        coeffs,
    ));
    checks.push(Check::new(
        "recovered polynomial",
        Some(g.to_string()),
        recovered.map(|p| p.to_string()),
    ));
    checks.push(Check::new(
        "probe count",
        2 * (3 + 1) * ex::T as u64,
        report.probes,
    ));
    checks
}
