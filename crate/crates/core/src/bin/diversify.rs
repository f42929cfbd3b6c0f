use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use diversify::field::PrimeField;
use diversify::harness::{
    exit, fail_exit_code, generate_instance, run_bench, selftest, summarize, write_records, write_summary,
    BenchSpec, FixedRandomness, Param,
};
use diversify::interp::{
    interpolate, interpolate_with_config, FieldSizeCheck, InterpError, InterpReport, Outcome, RunId,
    RunOptions,
};
use diversify::model::{poly_equal, EvaluationOracle, Instance, PolynomialBlackBox};
use diversify::worked_example;

#[derive(Parser)]
#[command(version, about = "Sparse black-box interpolation over prime fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random instance file.
    Generate(GenerateArgs),
    /// Recover the polynomial behind an instance file.
    Interpolate(InterpolateArgs),
    /// Sweep one of n, T, D and write per-trial timings as CSV.
    Bench(BenchArgs),
    /// Replay the built-in worked example and check every intermediate value.
    Selftest,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long = "p")]
    p: u64,
    #[arg(long = "n")]
    n: usize,
    #[arg(long = "t")]
    t: usize,
    #[arg(long = "D")]
    d: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; standard output if absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InterpolateArgs {
    /// Instance file holding the hidden polynomial.
    #[arg(required_unless_present = "example")]
    instance: Option<PathBuf>,
    /// Use the built-in 3-variable example over F_101 instead of a file.
    #[arg(long, conflicts_with = "instance")]
    example: bool,
    /// Term bound; defaults to the instance's term count.
    #[arg(long = "T")]
    terms_bound: Option<usize>,
    /// Partial degree bound; defaults to the instance's.
    #[arg(long = "D")]
    degree_bound: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run even if p is below the guaranteed-success bound.
    #[arg(long)]
    force: bool,
    /// Print the full report as JSON.
    #[arg(long)]
    json: bool,
    /// Pin alpha, zeta and omega: `a1,...,an;z1,...,zn;omega`.
    #[arg(long, value_name = "SPEC")]
    fixed_randomness: Option<FixedRandomness>,
    /// Also write the recovered polynomial as an instance file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    vary: Param,
    /// Comma-separated values of the varied parameter.
    #[arg(long, value_delimiter = ',', required = true)]
    values: Vec<u64>,
    #[arg(long = "n", default_value_t = 3)]
    n: usize,
    #[arg(long = "T", default_value_t = 10)]
    terms_bound: usize,
    /// Terms per hidden instance; defaults to T.
    #[arg(long = "t")]
    terms: Option<usize>,
    #[arg(long = "D", default_value_t = 100)]
    degree_bound: u64,
    #[arg(long = "p", default_value_t = 140_122_640_051)]
    p: u64,
    #[arg(long, default_value_t = 5)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    force: bool,
    /// Per-trial CSV; the summary goes next to it as `<stem>.summary.csv`.
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Failed {
    code: i32,
    msg: String,
}

type CmdResult = Result<i32, Failed>;

fn usage(msg: impl std::fmt::Display) -> Failed {
    Failed {
        code: exit::USAGE,
        msg: msg.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Generate(a) => cmd_generate(a),
        Command::Interpolate(a) => cmd_interpolate(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Selftest => Ok(cmd_selftest()),
    };
    let code = match res {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            f.code
        }
    };
    ExitCode::from(code as u8)
}

fn cmd_generate(a: GenerateArgs) -> CmdResult {
    let field = PrimeField::new(a.p).map_err(usage)?;
    let inst = generate_instance(&field, a.n, a.t, a.d, a.seed).map_err(usage)?;
    let text = inst.to_text();
    match &a.out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            println!("{} {}", path.display(), inst.poly.len());
        }
        None => print!("{text}"),
    }
    Ok(exit::OK)
}

fn read_instance(path: &Path) -> Result<Instance, Failed> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    text.parse()
        .map_err(|e| usage(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct JsonReport<'a> {
    #[serde(flatten)]
    report: &'a InterpReport,
    matches_hidden: Option<bool>,
}

fn cmd_interpolate(a: InterpolateArgs) -> CmdResult {
    let hidden = match &a.instance {
        Some(path) => read_instance(path)?,
        None => {
            let field = worked_example::field();
            Instance {
                poly: worked_example::polynomial(&field),
                field,
                degree_bound: worked_example::D,
            }
        }
    };
    let field = hidden.field.clone();
    let terms_bound = a.terms_bound.unwrap_or(hidden.poly.len().max(1));
    let degree_bound = a.degree_bound.unwrap_or(hidden.degree_bound);
    let options = RunOptions {
        field_size_check: if a.force {
            FieldSizeCheck::Warn
        } else {
            FieldSizeCheck::Reject
        },
        parallel: true,
    };

    let oracle = EvaluationOracle::new(PolynomialBlackBox::new(field.clone(), hidden.poly.clone()));
    let res = match &a.fixed_randomness {
        Some(fr) => {
            let cfg = fr.config(&field, terms_bound, degree_bound, a.seed);
            interpolate_with_config(&oracle, &field, cfg, options)
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            interpolate(
                &oracle,
                &field,
                terms_bound,
                degree_bound,
                None,
                &mut rng,
                options,
            )
        }
    };
    let report = res.map_err(|e| Failed {
        code: match e {
            InterpError::FieldTooSmall { .. } => exit::FIELD_TOO_SMALL,
            _ => exit::USAGE,
        },
        msg: match e {
            InterpError::FieldTooSmall { .. } => format!("{e} (use --force to run anyway)"),
            _ => e.to_string(),
        },
    })?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }

    let matches = report.outcome.polynomial().map(|g| poly_equal(g, &hidden.poly));
    if a.json {
        let out = JsonReport {
            report: &report,
            matches_hidden: matches,
        };
        println!("{}", serde_json::to_string_pretty(&out).map_err(usage)?);
    } else {
        print_report(&field, &report, matches);
    }

    match &report.outcome {
        Outcome::Success(g) => {
            if let Some(path) = &a.out {
                let rec = Instance {
                    field: field.clone(),
                    degree_bound,
                    poly: g.clone(),
                };
                fs::write(path, rec.to_text()).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            }
            Ok(if matches == Some(true) {
                exit::OK
            } else {
                exit::WRONG_ANSWER
            })
        }
        Outcome::Fail(f) => Ok(fail_exit_code(f.reason)),
    }
}

fn print_report(field: &PrimeField, report: &InterpReport, matches: Option<bool>) {
    let tm = &report.timings;
    match &report.outcome {
        Outcome::Success(_) => println!("outcome: success"),
        Outcome::Fail(f) => {
            let run = match f.run {
                RunId::Base => "base run".to_string(),
                RunId::Variable(k) => format!("run shifted in x{}", k + 1),
            };
            println!("outcome: fail ({}, {run})", f.reason);
        }
    }
    println!("probes: {}", report.probes);
    println!(
        "time_us: probe={} bm={} roots={} vand={} dlog={} assembly={} total={}",
        tm.probe.as_micros(),
        tm.recurrence.as_micros(),
        tm.roots.as_micros(),
        tm.vandermonde.as_micros(),
        tm.dlog.as_micros(),
        tm.assembly.as_micros(),
        tm.total.as_micros()
    );
    if let Some(m) = matches {
        println!("matches_hidden: {m}");
    }
    if let Outcome::Success(g) = &report.outcome {
        println!("polynomial: {g}");
        let inst = Instance {
            field: field.clone(),
            degree_bound: report.config.degree_bound,
            poly: g.clone(),
        };
        print!("{}", inst.to_text());
    }
}

fn summary_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    out.with_file_name(format!("{stem}.summary.csv"))
}

fn cmd_bench(a: BenchArgs) -> CmdResult {
    let spec = BenchSpec {
        vary: a.vary,
        values: a.values,
        n: a.n,
        terms_bound: a.terms_bound,
        terms: a.terms,
        degree_bound: a.degree_bound,
        q: a.p,
        trials: a.trials,
        seed: a.seed,
        force: a.force,
    };
    let records = run_bench(&spec).map_err(usage)?;
    let summary = summarize(&records);
    match &a.out {
        Some(path) => {
            let io = |e: std::io::Error| usage(format!("{}: {e}", path.display()));
            write_records(fs::File::create(path).map_err(io)?, &records).map_err(usage)?;
            let spath = summary_path(path);
            let sfile = fs::File::create(&spath).map_err(|e| usage(format!("{}: {e}", spath.display())))?;
            write_summary(sfile, &summary).map_err(usage)?;
        }
        None => write_records(std::io::stdout().lock(), &records).map_err(usage)?,
    }
    eprintln!(
        "{:>4} {:>5} {:>9} {:>7} {:>8} {:>14} {:>12}",
        "n", "T", "D", "trials", "success", "mean_us_total", "sd_us_total"
    );
    for s in &summary {
        eprintln!(
            "{:>4} {:>5} {:>9} {:>7} {:>8.3} {:>14.1} {:>12.1}",
            s.n, s.terms_bound, s.degree_bound, s.trials, s.success_rate, s.mean_us_total, s.sd_us_total
        );
    }
    Ok(exit::OK)
}

fn cmd_selftest() -> i32 {
    let checks = selftest();
    let mut ok = true;
    for c in &checks {
        if c.passed() {
            println!("[ok]   {}: {}", c.name, c.actual);
        } else {
            ok = false;
            println!("[FAIL] {}: expected {}, got {}", c.name, c.expected, c.actual);
        }
    }
    let passed = checks.iter().filter(|c| c.passed()).count();
    println!("{passed}/{} checks passed", checks.len());
    if ok {
        exit::OK
    } else {
        exit::SELFTEST_FAILED
    }
}
