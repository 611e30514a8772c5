//! The `mprofile` command line.
//!
//! Commands share one JSON archive: `compute` creates it, and `motif`,
//! `discord`, `chain` and `segment` add their result to it (in place unless
//! `--out` is given), so a pipeline is a sequence of commands over one file.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use crate::bench::{run_bench_with, BenchPlan, DEFAULT_WINDOW};
use crate::discovery::{
    find_chains, find_discord, find_motif, find_motif_multi, fluss, parse_fraction, MotifParams, ZoneSpec,
    DEFAULT_EXCLUSION_FACTOR, DEFAULT_MAX_NEIGHBORS,
};
use crate::io::{
    gen_planted, random_walk, read_profile, read_series, write_profile, write_series, Column, Format, Planted,
    ProfileArchive, ReadOptions,
};
use crate::plot::{write_plot, PlotKind};
use crate::profile::{compute, Algorithm, Progress, ProfileParams, DEFAULT_SEED};
use crate::report::summary;
use crate::{Error, MultiTimeSeries, Result};

#[derive(Parser, Debug)]
#[command(name = "mprofile", version, about = "Matrix profile computation and time series mining")]
struct Cli {
    /// 0: print only the archive path; 1: summaries; 2: summaries and a
    /// progress bar on stderr.
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u8).range(0..=2))]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a matrix profile (one input: self-join, two: AB-join).
    Compute(ComputeArgs),
    /// Find motif pairs and their neighbors.
    Motif(MotifArgs),
    /// Find discords (the most isolated windows).
    Discord(DiscordArgs),
    /// Find time series chains.
    Chain(StepArgs),
    /// Semantic segmentation (FLUSS).
    Segment(SegmentArgs),
    /// Print the summary of an archive.
    Summary { archive: PathBuf },
    /// Write plot tables and an SVG.
    Plotdata(PlotArgs),
    /// Time the algorithms on seeded random walks.
    Bench(BenchArgs),
    /// Write a seeded synthetic series as CSV.
    Generate(GenerateArgs),
}

#[derive(Args, Debug)]
struct ComputeArgs {
    /// Data file(s), CSV or TSV; each selected column is one dimension.
    #[arg(required = true, num_args = 1..=2)]
    inputs: Vec<PathBuf>,
    #[arg(long)]
    window_size: usize,
    /// Fraction of the window, e.g. 0.5 or 1/4.
    #[arg(long, default_value = "1/2", value_parser = fraction)]
    exclusion_zone: f64,
    #[arg(long, default_value = "stomp", value_parser = algorithm)]
    mode: Algorithm,
    /// Number of distance profiles (stamp) or diagonals (scrimp) to merge
    /// before stopping; "inf" runs to completion.
    #[arg(long)]
    s_size: Option<String>,
    /// Dimensions every k-dimensional profile must include (mstomp).
    #[arg(long, value_delimiter = ',')]
    must_dim: Vec<usize>,
    /// Dimensions to leave out (mstomp).
    #[arg(long, value_delimiter = ',')]
    exc_dim: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    n_workers: usize,
    /// Embed the input data in the archive (needed by `motif`).
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    keep_data: bool,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Fraction of the window between pre-pass samples (scrimp); 0 disables
    /// the pre-pass.
    #[arg(long, default_value_t = 0.25)]
    pre_scrimp: f64,
    /// Archive path; defaults to the first input with a `.mp.json` extension.
    #[arg(long)]
    out: Option<PathBuf>,
    /// The input has a header line.
    #[arg(long)]
    header: bool,
    /// Columns to read, by zero-based position or header name.
    #[arg(long, value_delimiter = ',')]
    columns: Vec<String>,
    /// Override the delimiter guessed from the file extension.
    #[arg(long, value_parser = ["csv", "tsv"])]
    format: Option<String>,
}

#[derive(Args, Debug)]
struct StepArgs {
    archive: PathBuf,
    /// Write the amended archive here instead of in place.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MotifArgs {
    #[command(flatten)]
    step: StepArgs,
    #[arg(long, default_value_t = 3)]
    n_motifs: usize,
    /// Neighbors qualify below radius times the pair distance.
    #[arg(long, default_value_t = 3.0)]
    radius: f64,
    /// Separation between reported windows: an integer count or a fraction
    /// of the window.
    #[arg(long, default_value = "1/2")]
    exclusion_zone: ZoneSpec,
    #[arg(long, default_value_t = DEFAULT_MAX_NEIGHBORS)]
    max_neighbors: usize,
    /// Row of a multidimensional profile to search (k + 1 dimensions).
    #[arg(long, default_value_t = 0)]
    row: usize,
}

#[derive(Args, Debug)]
struct DiscordArgs {
    #[command(flatten)]
    step: StepArgs,
    #[arg(long, default_value_t = 1)]
    n_discords: usize,
    /// Separation between discords; defaults to the profile's zone.
    #[arg(long)]
    exclusion_zone: Option<usize>,
}

#[derive(Args, Debug)]
struct SegmentArgs {
    #[command(flatten)]
    step: StepArgs,
    #[arg(long, default_value_t = 2)]
    n_segments: usize,
    /// Half-width, in windows, masked around each boundary.
    #[arg(long, default_value_t = DEFAULT_EXCLUSION_FACTOR)]
    exclusion_factor: f64,
}

#[derive(Args, Debug)]
struct PlotArgs {
    archive: PathBuf,
    #[arg(long, default_value = "profile")]
    kind: PlotKind,
    /// Output prefix; defaults to the archive path without extension.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "16384")]
    sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "stamp,stomp", value_parser = algorithm)]
    modes: Vec<Algorithm>,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    workers: Vec<usize>,
    #[arg(long, default_value_t = 5)]
    trials: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_WINDOW)]
    window_size: usize,
    /// The five-row speed table: scrimp, stomp and stamp at n = 40000.
    #[arg(long, conflicts_with_all = ["sizes", "modes", "workers"])]
    table: bool,
    /// Also write the report as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    /// walk, motif, regime, chain or anomaly.
    kind: String,
    #[arg(long, default_value_t = 10_000)]
    n: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Pattern length (motif, chain) or period (anomaly).
    #[arg(long, default_value_t = 100)]
    length: usize,
    #[arg(long)]
    out: PathBuf,
}

fn fraction(s: &str) -> std::result::Result<f64, String> {
    match parse_fraction(s) {
        Some(f) if f.is_finite() && f >= 0.0 => Ok(f),
        _ => Err(format!("'{s}' is not a non-negative fraction")),
    }
}

fn algorithm(s: &str) -> std::result::Result<Algorithm, String> {
    s.parse::<Algorithm>().map_err(|e| e.to_string())
}

fn s_size(s: &str) -> std::result::Result<Option<usize>, String> {
    if s.eq_ignore_ascii_case("inf") {
        return Ok(None);
    }
    s.parse::<usize>()
        .map(Some)
        .map_err(|_| format!("'{s}' is not a count or \"inf\""))
}

/// Entry point of the binary; returns the process exit code.
pub fn main() -> i32 {
    let out = std::io::stdout();
    let err = std::io::stderr();
    run(std::env::args_os(), &mut out.lock(), &mut err.lock())
}

/// Runs the command line `args` (program name first), writing to the given
/// streams. Returns 0 on success, 2 for invalid parameters, 3 when the
/// archive lacks what a step needs, 4 for file and format errors.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
            } else {
                let _ = write!(stdout, "{text}");
            }
            return code;
        }
    };
    match dispatch(cli, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

struct Ctx<'a> {
    verbose: u8,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Ctx<'_> {
    /// Saves the archive and reports it according to the verbosity.
    fn emit(&mut self, archive: &ProfileArchive, path: &Path) -> Result<()> {
        write_profile(archive, path)?;
        if self.verbose == 0 {
            self.out(&format!("{}\n", path.display()))
        } else {
            self.out(&summary(archive))?;
            if self.verbose >= 2 {
                let _ = writeln!(self.stderr, "archive: {}", path.display());
            }
            Ok(())
        }
    }

    fn out(&mut self, text: &str) -> Result<()> {
        self.stdout
            .write_all(text.as_bytes())
            .map_err(|e| Error::io("<stdout>", e))
    }
}

fn dispatch(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let mut ctx = Ctx {
        verbose: cli.verbose,
        stdout,
        stderr,
    };
    match cli.command {
        Command::Compute(args) => cmd_compute(&mut ctx, args),
        Command::Motif(args) => {
            let (mut archive, out) = load(&args.step)?;
            let data = archive.data_a()?;
            let params = MotifParams {
                n_motifs: args.n_motifs,
                radius: args.radius,
                exclusion_zone: args.exclusion_zone,
                max_neighbors: args.max_neighbors,
            };
            let set = match archive.multi_profile() {
                Some(mmp) => find_motif_multi(&mmp, &data, args.row, &params)?,
                None => {
                    if args.row != 0 {
                        return Err(Error::param("--row applies to multidimensional profiles only"));
                    }
                    find_motif(&archive.profile(), &data, &params)?
                }
            };
            archive.results.motif = Some(set);
            ctx.emit(&archive, &out)
        }
        Command::Discord(args) => {
            let (mut archive, out) = load(&args.step)?;
            archive.results.discord = Some(find_discord(&archive.profile(), args.n_discords, args.exclusion_zone)?);
            ctx.emit(&archive, &out)
        }
        Command::Chain(step) => {
            let (mut archive, out) = load(&step)?;
            archive.results.chain = Some(find_chains(&archive.profile())?);
            ctx.emit(&archive, &out)
        }
        Command::Segment(args) => {
            let (mut archive, out) = load(&args.step)?;
            archive.results.fluss = Some(fluss(&archive.profile(), args.n_segments, args.exclusion_factor)?);
            ctx.emit(&archive, &out)
        }
        Command::Summary { archive } => {
            let archive = read_profile(&archive)?;
            ctx.out(&summary(&archive))
        }
        Command::Plotdata(args) => {
            let archive = read_profile(&args.archive)?;
            let prefix = args.out.unwrap_or_else(|| strip_archive_ext(&args.archive));
            let files = write_plot(&archive, args.kind, &prefix)?;
            let mut listing = String::new();
            for p in files.tables.iter().chain([&files.svg]) {
                listing.push_str(&format!("{}\n", p.display()));
            }
            ctx.out(&listing)
        }
        Command::Bench(args) => cmd_bench(&mut ctx, args),
        Command::Generate(args) => cmd_generate(&mut ctx, args),
    }
}

fn load(step: &StepArgs) -> Result<(ProfileArchive, PathBuf)> {
    let archive = read_profile(&step.archive)?;
    Ok((archive, step.out.clone().unwrap_or_else(|| step.archive.clone())))
}

fn strip_archive_ext(path: &Path) -> PathBuf {
    let s = path.to_string_lossy();
    let stem = s.strip_suffix(".mp.json").or_else(|| s.strip_suffix(".json")).unwrap_or(&s);
    PathBuf::from(stem)
}

fn cmd_compute(ctx: &mut Ctx, args: ComputeArgs) -> Result<()> {
    let columns = args.columns.iter().map(|c| c.parse()).collect::<Result<Vec<Column>>>()?;
    let read = |path: &Path| -> Result<MultiTimeSeries> {
        let format = match args.format.as_deref() {
            Some("tsv") => Format::Tsv,
            Some(_) => Format::Csv,
            None => Format::from_path(path),
        };
        let opts = ReadOptions {
            format,
            has_header: args.header,
            columns: columns.clone(),
        };
        Ok(read_series(path, &opts)?.series)
    };
    let a = read(&args.inputs[0])?;
    let b = args.inputs.get(1).map(|p| read(p)).transpose()?;

    let mut params = ProfileParams::new(args.window_size)
        .exclusion_zone(args.exclusion_zone)
        .workers(args.n_workers)
        .seed(args.seed)
        .pre_scrimp(args.pre_scrimp);
    if let Some(s) = args.s_size.as_deref().map(s_size).transpose().map_err(Error::Parameter)?.flatten() {
        params = params.s_size(s);
    }
    let bar = (ctx.verbose >= 2).then(ProgressBar::new);
    if let Some(bar) = &bar {
        params = params.progress(bar.progress());
    }
    let computed = compute(args.mode, &a, b.as_ref(), &params, &args.must_dim, &args.exc_dim);
    if let Some(bar) = bar {
        bar.finish(ctx.stderr);
    }
    let computed = computed?;
    let archive = ProfileArchive::from_computed(&computed, &a, b.as_ref(), args.keep_data);
    let out = args.out.unwrap_or_else(|| args.inputs[0].with_extension("mp.json"));
    ctx.emit(&archive, &out)
}

fn cmd_bench(ctx: &mut Ctx, args: BenchArgs) -> Result<()> {
    let mut plan = if args.table {
        BenchPlan::speed_table()
    } else {
        BenchPlan::new(args.sizes, args.modes, args.workers, args.trials)
    };
    plan.trials = args.trials;
    plan.seed = args.seed;
    plan.window = args.window_size;
    let verbose = ctx.verbose;
    let stderr = &mut *ctx.stderr;
    let report = run_bench_with(&plan, |cell| {
        if verbose >= 2 {
            let _ = writeln!(stderr, "timing {cell}");
        }
    })?;
    if let Some(path) = &args.csv {
        std::fs::write(path, report.to_csv()).map_err(|e| Error::io(path, e))?;
    }
    ctx.out(&report.to_table())
}

fn cmd_generate(ctx: &mut Ctx, args: GenerateArgs) -> Result<()> {
    let len = args.length;
    let series = match args.kind.as_str() {
        "walk" => MultiTimeSeries::univariate(random_walk(args.n, args.seed)?),
        kind => {
            let spec = match kind {
                "motif" => Planted::motif(args.n, len, 2),
                "regime" => Planted::regime_change(args.n, 0.5),
                "chain" => Planted::chain(args.n, len, 6, 0.15),
                "anomaly" => Planted::anomaly(args.n, len, 1),
                other => {
                    return Err(Error::param(format!(
                        "unknown generator '{other}' (expected walk, motif, regime, chain or anomaly)"
                    )))
                }
            };
            let ds = gen_planted(&spec, args.seed)?;
            if ctx.verbose >= 1 {
                if let Some(gt) = &ds.ground_truth {
                    let _ = writeln!(ctx.stderr, "planted at {:?}", gt.positions);
                }
            }
            ds.series
        }
    };
    write_series(&args.out, &series, Format::from_path(&args.out), false)?;
    ctx.out(&format!("{}\n", args.out.display()))
}

/// Text progress bar written straight to the process stderr, since worker
/// threads report into it.
struct ProgressBar {
    last: Arc<AtomicUsize>,
}

impl ProgressBar {
    fn new() -> Self {
        ProgressBar {
            last: Arc::new(AtomicUsize::new(usize::MAX)),
        }
    }

    fn progress(&self) -> Progress {
        let last = Arc::clone(&self.last);
        Progress::new(move |done, total| {
            let pct = (done * 100).checked_div(total).map_or(100, |p| p.min(100));
            if last.swap(pct, Ordering::Relaxed) != pct {
                let filled = pct / 5;
                let line = format!("\r[{}{}] {pct:>3}%", "#".repeat(filled), " ".repeat(20 - filled));
                let _ = std::io::stderr().write_all(line.as_bytes());
            }
        })
    }

    fn finish(self, stderr: &mut dyn Write) {
        if self.last.load(Ordering::Relaxed) != usize::MAX {
            let _ = writeln!(stderr);
        }
    }
}
