//! Timing harness: seeded random-walk workloads, median wall-clock times
//! per (algorithm, size, workers) cell, and log-log scaling fits.

use std::fmt::Write;
use std::time::Instant;

use sha2::{Digest, Sha256};

use crate::io::random_walk;
use crate::profile::{compute, Algorithm, ProfileParams, DEFAULT_SEED};
use crate::{Error, MultiTimeSeries, Result, TimeSeries};

/// Window used when a plan does not set one.
pub const DEFAULT_WINDOW: usize = 128;

#[derive(Clone, Debug, PartialEq)]
pub struct BenchPlan {
    pub sizes: Vec<usize>,
    pub modes: Vec<Algorithm>,
    pub workers: Vec<usize>,
    pub window: usize,
    pub trials: usize,
    pub seed: u64,
    /// Run each cell once, untimed, before the trials.
    pub warm_up: bool,
}

impl BenchPlan {
    pub fn new(sizes: Vec<usize>, modes: Vec<Algorithm>, workers: Vec<usize>, trials: usize) -> Self {
        BenchPlan {
            sizes,
            modes,
            workers,
            window: DEFAULT_WINDOW,
            trials,
            seed: DEFAULT_SEED,
            warm_up: true,
        }
    }

    /// scrimp, stomp and stamp on a 40 000-step walk with 1 and 8 workers,
    /// five trials (scrimp runs single-threaded only).
    pub fn speed_table() -> Self {
        BenchPlan::new(
            vec![40_000],
            vec![Algorithm::Scrimp, Algorithm::Stomp, Algorithm::Stamp],
            vec![1, 8],
            5,
        )
    }

    fn check(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::param("trials must be at least 1"));
        }
        if self.sizes.is_empty() || self.modes.is_empty() || self.workers.is_empty() {
            return Err(Error::param("a bench plan needs at least one size, mode and worker count"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub algorithm: Algorithm,
    pub n: usize,
    pub workers: usize,
    pub median_secs: f64,
    pub times: Vec<f64>,
    pub seed: u64,
    /// SHA-256 of the workload, identical in every trial.
    pub checksum: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Skipped {
    pub algorithm: Algorithm,
    pub n: usize,
    pub workers: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchReport {
    /// Sorted by algorithm name, then workers, then size.
    pub rows: Vec<BenchRow>,
    pub skipped: Vec<Skipped>,
    pub window: usize,
    pub trials: usize,
    pub environment: String,
}

pub fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.is_empty() {
        f64::NAN
    } else if v.len() % 2 == 1 {
        v[m]
    } else {
        (v[m - 1] + v[m]) / 2.0
    }
}

/// Hex SHA-256 of the series as little-endian `f64` bytes.
pub fn workload_checksum(ts: &TimeSeries) -> String {
    let mut h = Sha256::new();
    for v in ts.values() {
        h.update(v.to_le_bytes());
    }
    h.finalize().iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// Least-squares slope of `ln(time)` against `ln(n)`.
pub fn scaling_slope(points: &[(usize, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(n, t)| ((n as f64).ln(), t.ln())).collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// CPU model and available parallelism, best effort.
pub fn environment_note() -> String {
    let cpu = std::fs::read_to_string("/proc/cpuinfo")
        .ok()
        .and_then(|s| {
            s.lines()
                .find(|l| l.starts_with("model name"))
                .and_then(|l| l.split_once(':'))
                .map(|(_, v)| v.trim().to_string())
        })
        .unwrap_or_else(|| "unknown CPU".to_string());
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    format!("{cpu}, {threads} hardware threads, {}-{}", std::env::consts::OS, std::env::consts::ARCH)
}

pub fn run_bench(plan: &BenchPlan) -> Result<BenchReport> {
    run_bench_with(plan, |_| {})
}

/// Like [`run_bench`], calling `on_cell` with a short description before
/// each cell. Cells run one after another.
pub fn run_bench_with(plan: &BenchPlan, mut on_cell: impl FnMut(&str)) -> Result<BenchReport> {
    plan.check()?;
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for &n in &plan.sizes {
        for &algorithm in &plan.modes {
            for &workers in &plan.workers {
                if algorithm == Algorithm::Scrimp && workers > 1 {
                    skipped.push(Skipped {
                        algorithm,
                        n,
                        workers,
                        reason: "scrimp runs single-threaded".to_string(),
                    });
                    continue;
                }
                on_cell(&format!("{algorithm} n={n} workers={workers}"));
                let params = ProfileParams::new(plan.window).workers(workers).seed(plan.seed);
                let run = |ts: &TimeSeries| -> Result<()> {
                    let data = MultiTimeSeries::univariate(ts.clone());
                    compute(algorithm, &data, None, &params, &[], &[]).map(|_| ())
                };
                match bench_cell(plan, n, run) {
                    Ok((times, checksum)) => rows.push(BenchRow {
                        algorithm,
                        n,
                        workers,
                        median_secs: median(&times),
                        times,
                        seed: plan.seed,
                        checksum,
                    }),
                    Err(e @ (Error::Parameter(_) | Error::Unsupported(_))) => skipped.push(Skipped {
                        algorithm,
                        n,
                        workers,
                        reason: e.to_string(),
                    }),
                    Err(e) => return Err(e),
                }
            }
        }
    }
    rows.sort_by(|a, b| {
        (a.algorithm.name(), a.workers, a.n).cmp(&(b.algorithm.name(), b.workers, b.n))
    });
    Ok(BenchReport {
        rows,
        skipped,
        window: plan.window,
        trials: plan.trials,
        environment: environment_note(),
    })
}

fn bench_cell(plan: &BenchPlan, n: usize, run: impl Fn(&TimeSeries) -> Result<()>) -> Result<(Vec<f64>, String)> {
    let ts = random_walk(n, plan.seed)?;
    if plan.warm_up {
        run(&ts)?;
    }
    let checksum = workload_checksum(&ts);
    let mut times = Vec::with_capacity(plan.trials);
    for _ in 0..plan.trials {
        // regenerated per trial so every trial provably sees the same bytes
        let ts = random_walk(n, plan.seed)?;
        if workload_checksum(&ts) != checksum {
            return Err(Error::param("workload changed between trials"));
        }
        let t0 = Instant::now();
        run(&ts)?;
        times.push(t0.elapsed().as_secs_f64());
    }
    Ok((times, checksum))
}

impl BenchReport {
    pub fn row(&self, algorithm: Algorithm, n: usize, workers: usize) -> Option<&BenchRow> {
        self.rows
            .iter()
            .find(|r| r.algorithm == algorithm && r.n == n && r.workers == workers)
    }

    /// Aligned text table: algorithm, size, median time and threads.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:<12}{:>10}{:>12}{:>9}", "Algorithm", "n", "Time*", "Threads");
        let _ = writeln!(out, "{}", "-".repeat(43));
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:<12}{:>10}{:>12.3}{:>9}",
                r.algorithm.name(),
                r.n,
                r.median_secs,
                r.workers
            );
        }
        let _ = writeln!(out, "{}", "-".repeat(43));
        if self.trials == 1 {
            let _ = writeln!(out, "*Single trial, in seconds. Window {}.", self.window);
        } else {
            let _ = writeln!(out, "*Median of {} trials, in seconds. Window {}.", self.trials, self.window);
        }
        for s in &self.skipped {
            let _ = writeln!(out, "skipped {} n={} workers={}: {}", s.algorithm, s.n, s.workers, s.reason);
        }
        let _ = writeln!(out, "{}", self.environment);
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("algorithm,n,workers,median_secs,trials,seed,checksum\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.algorithm.name(),
                r.n,
                r.workers,
                r.median_secs,
                r.times.len(),
                r.seed,
                r.checksum
            );
        }
        out
    }
}
