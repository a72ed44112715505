use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use qtprod::bench::{self, BenchConfig, Format, NAIVE_CAP};
use qtprod::tensor_io;
use qtprod::verify::{self, Suite, VerifyOptions};
use qtprod_core::random::gen_random_tensor;
use qtprod_core::tproduct::{tprod_fast, tprod_naive};

/// Quaternion tensor T-products: benchmarks, verification and tensor files.
#[derive(Parser)]
#[command(name = "qtprod", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Time the fast T-product against the definitional one.
    Bench(BenchArgs),
    /// Run the invariant suites; exits non-zero if any invariant fails.
    Verify(VerifyArgs),
    /// Write a seeded random tensor.
    Gen(GenArgs),
    /// Multiply two tensor files.
    Tprod(TprodArgs),
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated lists; every combination is run.
    #[arg(long, value_delimiter = ',', required = true)]
    m: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    s: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    p: Vec<usize>,
    #[arg(long, default_value_t = 5)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Report path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run the naive path even when 16·m·n·s·p² exceeds --naive-cap.
    #[arg(long)]
    force: bool,
    /// Skip the naive path for tuples over the cap instead of failing.
    #[arg(long)]
    skip_naive: bool,
    #[arg(long, default_value_t = NAIVE_CAP)]
    naive_cap: u64,
    /// Directory for the operand and result tensors of each tuple.
    #[arg(long)]
    dump_dir: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    /// Replaces every upper-bound tolerance.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct TprodArgs {
    a: PathBuf,
    b: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Use the definitional product instead of the fast one.
    #[arg(long)]
    naive: bool,
}

fn bench_cmd(a: BenchArgs) -> Result<ExitCode> {
    let cfg = BenchConfig {
        m: a.m,
        n: a.n,
        s: a.s,
        p: a.p,
        trials: a.trials,
        seed: a.seed,
        naive_cap: a.naive_cap,
        force: a.force,
        skip_naive: a.skip_naive,
        dump_dir: a.dump_dir,
    };
    let records = bench::run_bench(&cfg)?;
    bench::write_report(a.out.as_deref(), &bench::render(&records, a.format))?;
    Ok(ExitCode::SUCCESS)
}

fn verify_cmd(a: VerifyArgs) -> Result<ExitCode> {
    let suite: Suite = a.suite.parse()?;
    if let Some(t) = a.tol {
        if t.is_nan() || t < 0.0 {
            bail!("--tol must be a non-negative number");
        }
    }
    let opts = VerifyOptions {
        seed: a.seed,
        tol: a.tol,
        ..VerifyOptions::default()
    };
    let report = verify::run_verify(suite, &opts);
    for inv in &report.invariants {
        let op = match inv.bound {
            verify::Bound::Upper => "<=",
            verify::Bound::Lower => ">",
        };
        let tag = if inv.passed { "ok  " } else { "FAIL" };
        eprintln!(
            "{tag} [{}] {}: {:e} {op} {:e}",
            inv.suite, inv.name, inv.value, inv.tol
        );
    }
    let json = serde_json::to_string_pretty(&report)?;
    if let Some(path) = &a.report {
        std::fs::write(path, &json).with_context(|| format!("writing {}", path.display()))?;
    }
    if report.passed {
        Ok(ExitCode::SUCCESS)
    } else {
        // machine-readable failure report on stdout
        let failed: Vec<_> = report.failures().collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "suite": report.suite,
                "seed": report.seed,
                "passed": false,
                "failures": failed,
            }))?
        );
        Ok(ExitCode::FAILURE)
    }
}

fn main() -> ExitCode {
    let result = match Cli::parse().cmd {
        Cmd::Bench(a) => bench_cmd(a),
        Cmd::Verify(a) => verify_cmd(a),
        Cmd::Gen(a) => gen_random_tensor(a.m, a.n, a.p, a.seed)
            .map_err(anyhow::Error::from)
            .and_then(|t| Ok(tensor_io::write_tensor(&a.out, &t)?))
            .map(|()| ExitCode::SUCCESS),
        Cmd::Tprod(a) => (|| {
            let x = tensor_io::read_tensor(&a.a)
                .with_context(|| format!("reading {}", a.a.display()))?;
            let y = tensor_io::read_tensor(&a.b)
                .with_context(|| format!("reading {}", a.b.display()))?;
            let c = if a.naive {
                tprod_naive(&x, &y)?
            } else {
                tprod_fast(&x, &y)?
            };
            tensor_io::write_tensor(&a.out, &c)?;
            Ok(ExitCode::SUCCESS)
        })(),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}
