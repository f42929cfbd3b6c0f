use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::field::{FieldError, PrimeField};
use crate::interp::{
    interpolate, FailReason, FieldSizeCheck, InterpConfig, InterpError, Outcome, RunOptions,
};
use crate::model::{poly_equal, random_sparse_polynomial, EvaluationOracle, ModelError, PolynomialBlackBox};

/// The parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Param {
    N,
    T,
    D,
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Param::N => "n",
            Param::T => "T",
            Param::D => "D",
        })
    }
}

impl FromStr for Param {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "n" | "N" => Ok(Param::N),
            "T" | "t" => Ok(Param::T),
            "D" | "d" => Ok(Param::D),
            _ => Err(format!("cannot vary `{s}`; expected n, T or D")),
        }
    }
}

impl Serialize for Param {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchSpec {
    pub vary: Param,
    pub values: Vec<u64>,
    pub n: usize,
    pub terms_bound: usize,
    /// Terms in each hidden instance; `None` means `t = T`.
    pub terms: Option<usize>,
    pub degree_bound: u64,
    pub q: u64,
    pub trials: usize,
    pub seed: u64,
    /// Run below the guaranteed-success field size.
    pub force: bool,
}

impl BenchSpec {
    /// `(n, T, D)` at each sweep point.
    pub fn points(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.values.iter().map(|&v| match self.vary {
            Param::N => (v as usize, self.terms_bound, self.degree_bound),
            Param::T => (self.n, v as usize, self.degree_bound),
            Param::D => (self.n, self.terms_bound, v),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrialOutcome {
    Success,
    WrongAnswer,
    Fail(FailReason),
}

impl fmt::Display for TrialOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TrialOutcome::Success => f.write_str("success"),
            TrialOutcome::WrongAnswer => f.write_str("wrong-answer"),
            TrialOutcome::Fail(r) => write!(f, "fail:{r}"),
        }
    }
}

impl Serialize for TrialOutcome {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One benchmark trial. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BenchRecord {
    pub vary: Param,
    pub n: usize,
    #[serde(rename = "T")]
    pub terms_bound: usize,
    #[serde(rename = "D")]
    pub degree_bound: u64,
    pub q: u64,
    pub trial: usize,
    pub seed: u64,
    pub outcome: TrialOutcome,
    pub probes: u64,
    pub us_probe: u128,
    pub us_bm: u128,
    pub us_roots: u128,
    pub us_vand: u128,
    pub us_dlog: u128,
    pub us_total: u128,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchSummary {
    pub vary: Param,
    pub n: usize,
    #[serde(rename = "T")]
    pub terms_bound: usize,
    #[serde(rename = "D")]
    pub degree_bound: u64,
    pub q: u64,
    pub trials: usize,
    pub successes: usize,
    pub success_rate: f64,
    pub mean_us_total: f64,
    pub sd_us_total: f64,
    pub mean_us_dlog: f64,
    pub sd_us_dlog: f64,
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("n = {n}, T = {t}, D = {d}: {source}")]
    Interp {
        n: usize,
        t: usize,
        d: u64,
        source: InterpError,
    },
}

/// Runs every trial of every sweep point on one thread so that stage
/// timings are not distorted by contention. Records come out ordered by
/// sweep point, then trial.
pub fn run_bench(spec: &BenchSpec) -> Result<Vec<BenchRecord>, BenchError> {
    let field = PrimeField::new(spec.q)?;
    let check = if spec.force {
        FieldSizeCheck::Warn
    } else {
        FieldSizeCheck::Reject
    };
    let options = RunOptions {
        field_size_check: check,
        parallel: false,
    };

    // Reject bad sweep points before spending time on any of them.
    for (n, t, d) in spec.points() {
        let probe = InterpConfig {
            terms_bound: t,
            degree_bound: d,
            omega: field.find_primitive_root(&mut ChaCha8Rng::seed_from_u64(0)),
            alpha: vec![crate::field::Fp::ONE; n],
            zeta: vec![crate::field::Fp::ONE; n],
            seed: 0,
        };
        probe
            .validate(&field, n, check)
            .map_err(|source| BenchError::Interp { n, t, d, source })?;
    }

    // Trials run round-robin over the sweep points so that slow drift in
    // machine speed spreads evenly instead of landing on one point.
    let points: Vec<(usize, usize, u64)> = spec.points().collect();
    let mut masters: Vec<ChaCha8Rng> = (0..points.len())
        .map(|idx| {
            let mut m = ChaCha8Rng::seed_from_u64(spec.seed);
            m.set_stream(idx as u64);
            m
        })
        .collect();
    let mut per_point: Vec<Vec<BenchRecord>> = vec![Vec::with_capacity(spec.trials); points.len()];
    for trial in 0..spec.trials {
        for (idx, &(n, t_bound, d)) in points.iter().enumerate() {
            let seed: u64 = masters[idx].gen();
            let rec = run_trial(spec, &field, options, (n, t_bound, d), trial, seed)?;
            per_point[idx].push(rec);
        }
    }
    Ok(per_point.into_iter().flatten().collect())
}

fn run_trial(
    spec: &BenchSpec,
    field: &PrimeField,
    options: RunOptions,
    (n, t_bound, d): (usize, usize, u64),
    trial: usize,
    seed: u64,
) -> Result<BenchRecord, BenchError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hidden = random_sparse_polynomial(field, n, spec.terms.unwrap_or(t_bound), d, &mut rng)?;
    let oracle = EvaluationOracle::new(PolynomialBlackBox::new(field.clone(), hidden));
    let report = interpolate(&oracle, field, t_bound, d, None, &mut rng, options).map_err(|source| {
        BenchError::Interp {
            n,
            t: t_bound,
            d,
            source,
        }
    })?;
    let outcome = match &report.outcome {
        Outcome::Success(g) if poly_equal(g, oracle.inner().polynomial()) => TrialOutcome::Success,
        Outcome::Success(_) => TrialOutcome::WrongAnswer,
        Outcome::Fail(f) => TrialOutcome::Fail(f.reason),
    };
    let tm = &report.timings;
    Ok(BenchRecord {
        vary: spec.vary,
        n,
        terms_bound: t_bound,
        degree_bound: d,
        q: spec.q,
        trial,
        seed,
        outcome,
        probes: report.probes,
        us_probe: tm.probe.as_micros(),
        us_bm: tm.recurrence.as_micros(),
        us_roots: tm.roots.as_micros(),
        us_vand: tm.vandermonde.as_micros(),
        us_dlog: tm.dlog.as_micros(),
        us_total: tm.total.as_micros(),
    })
}

fn mean_sd(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Per sweep point: success fraction and mean / sample standard deviation
/// of total and dlog-stage time over all trials.
pub fn summarize(records: &[BenchRecord]) -> Vec<BenchSummary> {
    let mut out: Vec<BenchSummary> = Vec::new();
    let key = |r: &BenchRecord| (r.n, r.terms_bound, r.degree_bound);
    let mut start = 0;
    while start < records.len() {
        let k = key(&records[start]);
        let end = start + records[start..].iter().take_while(|r| key(r) == k).count();
        let group = &records[start..end];
        let totals: Vec<f64> = group.iter().map(|r| r.us_total as f64).collect();
        let dlogs: Vec<f64> = group.iter().map(|r| r.us_dlog as f64).collect();
        let successes = group
            .iter()
            .filter(|r| r.outcome == TrialOutcome::Success)
            .count();
        let (mean_us_total, sd_us_total) = mean_sd(&totals);
        let (mean_us_dlog, sd_us_dlog) = mean_sd(&dlogs);
        out.push(BenchSummary {
            vary: group[0].vary,
            n: k.0,
            terms_bound: k.1,
            degree_bound: k.2,
            q: group[0].q,
            trials: group.len(),
            successes,
            success_rate: successes as f64 / group.len() as f64,
            mean_us_total,
            sd_us_total,
            mean_us_dlog,
            sd_us_dlog,
        });
        start = end;
    }
    out
}

fn write_csv<W: Write, T: Serialize>(w: W, rows: &[T]) -> Result<(), csv::Error> {
    let mut wr = csv::Writer::from_writer(w);
    for r in rows {
        wr.serialize(r)?;
    }
    wr.flush()?;
    Ok(())
}

pub fn write_records<W: Write>(w: W, records: &[BenchRecord]) -> Result<(), csv::Error> {
    write_csv(w, records)
}

pub fn write_summary<W: Write>(w: W, summary: &[BenchSummary]) -> Result<(), csv::Error> {
    write_csv(w, summary)
}
