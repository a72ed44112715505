//! Fast vs definitional T-product timing.
//!
//! Each dims tuple gets one untimed warmup of each path and then `trials`
//! timed runs; the reported time is the median. Timing is single-threaded
//! and uses [`Instant`], which is monotonic.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use qtprod_core::random::{gen_random_tensor, GENERATOR_NAME};
use qtprod_core::tproduct::{flops_estimate, tprod_naive, TProdWorkspace};
use qtprod_core::CdTensor3;

use crate::tensor_io;

/// Default cap on `16·m·n·s·p²`, the naive path's real multiplications.
pub const NAIVE_CAP: u64 = 20_000_000_000;

pub const BUILD_ID: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    /// Cartesian product of these lists gives the dims tuples, in order.
    pub m: Vec<usize>,
    pub n: Vec<usize>,
    pub s: Vec<usize>,
    pub p: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub naive_cap: u64,
    /// Run the naive path even above the cap.
    pub force: bool,
    /// Skip the naive path (above the cap only) instead of failing.
    pub skip_naive: bool,
    /// Write the inputs and the fast output of every tuple here.
    pub dump_dir: Option<PathBuf>,
}

impl BenchConfig {
    pub fn single(m: usize, n: usize, s: usize, p: usize) -> Self {
        Self {
            m: vec![m],
            n: vec![n],
            s: vec![s],
            p: vec![p],
            trials: 5,
            seed: 0,
            naive_cap: NAIVE_CAP,
            force: false,
            skip_naive: false,
            dump_dir: None,
        }
    }

    pub fn tuples(&self) -> Vec<(usize, usize, usize, usize)> {
        let mut out = Vec::new();
        for &m in &self.m {
            for &n in &self.n {
                for &s in &self.s {
                    for &p in &self.p {
                        out.push((m, n, s, p));
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRecord {
    pub m: usize,
    pub n: usize,
    pub s: usize,
    pub p: usize,
    pub trials: usize,
    pub seed: u64,
    pub time_fast_s: f64,
    /// `None` when the naive path was skipped.
    pub time_naive_s: Option<f64>,
    pub speedup: Option<f64>,
    pub rel_error: Option<f64>,
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("no dims tuples to run")]
    Empty,
    #[error("trials must be at least 1")]
    ZeroTrials,
    #[error("dims must be at least 1, got ({0}, {1}, {2}, {3})")]
    ZeroDim(usize, usize, usize, usize),
    #[error(
        "naive path at ({m}, {n}, {s}, {p}) needs {mults} real multiplications, over the cap of {cap}; \
         pass --force to run it or --skip-naive to skip it"
    )]
    CapExceeded {
        m: usize,
        n: usize,
        s: usize,
        p: usize,
        mults: u64,
        cap: u64,
    },
    #[error(transparent)]
    Core(#[from] qtprod_core::Error),
    #[error(transparent)]
    TensorIo(#[from] tensor_io::TensorIoError),
    #[error("cannot write {path}: {source}")]
    Output {
        path: PathBuf,
        source: std::io::Error,
    },
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let k = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[k]
    } else {
        0.5 * (xs[k - 1] + xs[k])
    }
}

fn time_runs(trials: usize, mut f: impl FnMut()) -> f64 {
    f();
    let samples = (0..trials)
        .map(|_| {
            let t0 = Instant::now();
            f();
            // a zero reading would break the speedup ratio
            t0.elapsed().as_secs_f64().max(1e-9)
        })
        .collect();
    median(samples)
}

/// Seeds of the two operands of a tuple; a function of the config seed and
/// the dims only, so reordering the tuple lists does not change the data.
pub fn operand_seeds(seed: u64, (m, n, s, p): (usize, usize, usize, usize)) -> (u64, u64) {
    let mut h = seed ^ 0x51_7c_c1_b7_27_22_0a_95;
    for d in [m, n, s, p] {
        h = (h ^ d as u64).wrapping_mul(0x0000_0100_0000_01b3);
        h ^= h >> 29;
    }
    (h, h.rotate_left(32) ^ 0x9e37_79b9_7f4a_7c15)
}

pub fn operands(
    seed: u64,
    dims: (usize, usize, usize, usize),
) -> Result<(CdTensor3, CdTensor3), BenchError> {
    let (m, n, s, p) = dims;
    let (sa, sb) = operand_seeds(seed, dims);
    Ok((
        gen_random_tensor(m, n, p, sa)?,
        gen_random_tensor(n, s, p, sb)?,
    ))
}

fn check(cfg: &BenchConfig) -> Result<Vec<(usize, usize, usize, usize)>, BenchError> {
    if cfg.trials == 0 {
        return Err(BenchError::ZeroTrials);
    }
    let tuples = cfg.tuples();
    if tuples.is_empty() {
        return Err(BenchError::Empty);
    }
    for &(m, n, s, p) in &tuples {
        if m == 0 || n == 0 || s == 0 || p == 0 {
            return Err(BenchError::ZeroDim(m, n, s, p));
        }
        let mults = flops_estimate(m, n, s, p)?.naive_mults;
        if mults > cfg.naive_cap && !cfg.force && !cfg.skip_naive {
            return Err(BenchError::CapExceeded {
                m,
                n,
                s,
                p,
                mults,
                cap: cfg.naive_cap,
            });
        }
    }
    Ok(tuples)
}

pub fn run_one(
    cfg: &BenchConfig,
    dims: (usize, usize, usize, usize),
) -> Result<BenchRecord, BenchError> {
    let (m, n, s, p) = dims;
    let (a, b) = operands(cfg.seed, dims)?;
    let mut ws = TProdWorkspace::new(m, n, s, p)?;
    let mut fast = CdTensor3::zeros(m, s, p);
    let mut status = Ok(());
    let time_fast = time_runs(cfg.trials, || {
        if status.is_ok() {
            status = ws.compute(&a, &b, &mut fast);
        }
    });
    status?;

    let run_naive = cfg.force || flops_estimate(m, n, s, p)?.naive_mults <= cfg.naive_cap;
    let (time_naive, rel_error) = if run_naive {
        let mut naive = Ok(CdTensor3::zeros(m, s, p));
        let t = time_runs(cfg.trials, || naive = tprod_naive(&a, &b));
        (Some(t), Some(fast.relative_error(&naive?)?))
    } else {
        (None, None)
    };

    if let Some(dir) = &cfg.dump_dir {
        let stem = format!("m{m}_n{n}_s{s}_p{p}");
        for (tag, t) in [("a", &a), ("b", &b), ("c", &fast)] {
            let path = dir.join(format!("{stem}_{tag}.qt3"));
            tensor_io::write_tensor(&path, t)?;
        }
    }

    Ok(BenchRecord {
        m,
        n,
        s,
        p,
        trials: cfg.trials,
        seed: cfg.seed,
        time_fast_s: time_fast,
        time_naive_s: time_naive,
        speedup: time_naive.map(|t| t / time_fast),
        rel_error,
    })
}

pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRecord>, BenchError> {
    let tuples = check(cfg)?;
    if let Some(dir) = &cfg.dump_dir {
        std::fs::create_dir_all(dir).map_err(|source| BenchError::Output {
            path: dir.clone(),
            source,
        })?;
    }
    tuples.into_iter().map(|d| run_one(cfg, d)).collect()
}

pub const CSV_HEADER: &str = "m,n,s,p,trials,seed,time_fast_s,time_naive_s,speedup,rel_error";

fn opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:e}")).unwrap_or_default()
}

pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{:e},{},{},{}\n",
            r.m,
            r.n,
            r.s,
            r.p,
            r.trials,
            r.seed,
            r.time_fast_s,
            opt(r.time_naive_s),
            opt(r.speedup),
            opt(r.rel_error),
        ));
    }
    out
}

#[derive(Serialize)]
struct Header<'a> {
    generator: &'a str,
    build: &'a str,
}

#[derive(Serialize)]
struct Report<'a> {
    header: Header<'a>,
    records: &'a [BenchRecord],
}

pub fn to_json(records: &[BenchRecord]) -> String {
    let report = Report {
        header: Header {
            generator: GENERATOR_NAME,
            build: BUILD_ID,
        },
        records,
    };
    serde_json::to_string_pretty(&report).expect("report is plain data")
}

pub fn render(records: &[BenchRecord], format: Format) -> String {
    match format {
        Format::Csv => to_csv(records),
        Format::Json => to_json(records) + "\n",
    }
}

pub fn write_report(path: Option<&Path>, text: &str) -> Result<(), BenchError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| BenchError::Output {
            path: p.to_owned(),
            source,
        }),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|source| BenchError::Output {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}
