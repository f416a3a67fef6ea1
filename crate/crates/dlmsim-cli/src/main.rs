//! Command-line driver: run experiments and sweeps, export per-point
//! statistics as CSV or JSON, and query the exact reference.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use dlmsim::{
    amplitudes, compare, probs_closed_form, run_point, sweep_summary, Config64, ExperimentKind,
    FrequencyRecord64,
};

use output::{write_records, Format, RunManifest};

/// Exit status for invalid flags or configuration values.
const EXIT_USAGE: u8 = 2;
/// Exit status for I/O failures.
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "dlmsim",
    version,
    about = "Event-by-event interferometer simulator with an exact gate-model reference"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment (or a grid of them) and export per-point statistics
    Run(RunArgs),
    /// Alias of `run` for grid scans over alpha and phi
    Sweep(RunArgs),
    /// Print exact reference probabilities, or self-check them on a grid
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Mzi,
    WdcClassical,
    WdcQuantum,
}

impl From<KindArg> for ExperimentKind {
    fn from(kind: KindArg) -> Self {
        match kind {
            KindArg::Mzi => ExperimentKind::Mzi,
            KindArg::WdcClassical => ExperimentKind::WdcClassical,
            KindArg::WdcQuantum => ExperimentKind::WdcQuantum,
        }
    }
}

/// Inclusive grid `start:stop:count`; a count of 1 yields just `start`.
#[derive(Clone, Copy, Debug)]
struct GridSpec {
    start: f64,
    stop: f64,
    count: usize,
}

impl GridSpec {
    fn points(&self, scale: f64) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start * scale];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| (self.start + step * i as f64) * scale)
            .collect()
    }
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected start:stop:count, got `{s}`"));
        }
        let start: f64 = parts[0].parse().map_err(|_| format!("bad start `{}`", parts[0]))?;
        let stop: f64 = parts[1].parse().map_err(|_| format!("bad stop `{}`", parts[1]))?;
        let count: usize = parts[2].parse().map_err(|_| format!("bad count `{}`", parts[2]))?;
        if count == 0 {
            return Err("grid count must be at least 1".into());
        }
        Ok(GridSpec { start, stop, count })
    }
}

#[derive(Args)]
struct RunArgs {
    /// Experiment topology
    #[arg(long, value_enum, default_value = "wdc-quantum")]
    kind: KindArg,
    /// Ancilla/coin angle (closure probability sin^2 alpha)
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    /// Interferometer phase (controlled kinds)
    #[arg(long, default_value_t = 0.0)]
    phi: f64,
    /// Path-0 phase (mzi only)
    #[arg(long, default_value_t = 0.0)]
    phi0: f64,
    /// Path-1 phase (mzi only)
    #[arg(long, default_value_t = 0.0)]
    phi1: f64,
    /// Grid over alpha as start:stop:count (inclusive endpoints)
    #[arg(long)]
    alpha_grid: Option<GridSpec>,
    /// Grid over phi as start:stop:count; for mzi this sweeps the path
    /// difference phi0 - phi1
    #[arg(long)]
    phi_grid: Option<GridSpec>,
    /// Messenger pairs per grid point
    #[arg(long, default_value_t = 10_000)]
    n: u64,
    /// Learning parameter in [0, 1)
    #[arg(long, default_value_t = 0.99)]
    gamma: f64,
    /// Seed for all random streams
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Keep gate memory across sweep points (forces sequential execution)
    #[arg(long)]
    carry_state: bool,
    /// Output file; table goes to stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Interpret all angle flags in degrees
    #[arg(long)]
    degrees: bool,
    /// Worker threads for sweep points
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct OracleArgs {
    /// Ancilla angle
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    /// Interferometer phase
    #[arg(long, default_value_t = 0.0)]
    phi: f64,
    /// Interpret angles in degrees
    #[arg(long)]
    degrees: bool,
    /// Verify the matrix chain against the closed form on a grid
    #[arg(long)]
    check: bool,
    /// Grid resolution per axis for --check
    #[arg(long, default_value_t = 64)]
    grid: usize,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run(args) | Command::Sweep(args) => cmd_run(args),
        Command::Oracle(args) => cmd_oracle(args),
    }
}

fn cmd_run(args: RunArgs) -> ExitCode {
    let scale = if args.degrees {
        std::f64::consts::PI / 180.0
    } else {
        1.0
    };

    let mut base = Config64::new(args.kind.into());
    base.alpha = args.alpha * scale;
    base.phi = args.phi * scale;
    base.phi0 = args.phi0 * scale;
    base.phi1 = args.phi1 * scale;
    base.n_pairs = args.n;
    base.gamma = args.gamma;
    base.seed = args.seed;
    base.carry_state = args.carry_state;
    if let Err(e) = base.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    if args.jobs == 0 {
        eprintln!("error: --jobs must be at least 1");
        return ExitCode::from(EXIT_USAGE);
    }

    let alphas = match &args.alpha_grid {
        Some(grid) => grid.points(scale),
        None => vec![base.alpha],
    };
    let phis = match &args.phi_grid {
        Some(grid) => grid.points(scale),
        None => vec![base.effective_phi()],
    };

    let records = match run_grid(&base, &alphas, &phis, args.jobs) {
        Ok(records) => records,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };

    let manifest = RunManifest::new(&base, args.degrees, args.jobs);
    if let Err(e) = write_records(args.out.as_deref(), args.format, &manifest, &records) {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_IO);
    }

    let summary = sweep_summary(&records).expect("non-empty grids produce records");
    let line = format!(
        "points={} max|f-p|={:.6} rms={:.6}",
        records.len(),
        summary.max_abs_delta,
        summary.rms_delta
    );
    // keep stdout clean for the table when it goes there
    if args.out.is_some() {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
    ExitCode::SUCCESS
}

/// Per-point statistics over the grid, row-major over alphas x phis.
/// Points are independent unless state is carried, so they may be computed
/// on a thread pool; assembly order is fixed by the grid either way.
fn run_grid(
    base: &Config64,
    alphas: &[f64],
    phis: &[f64],
    jobs: usize,
) -> dlmsim::Result<Vec<FrequencyRecord64>> {
    if base.carry_state || jobs == 1 {
        let records = dlmsim::sweep(base, alphas, phis)?;
        return records
            .iter()
            .map(|r| compare(&r.counts, &base.at_point(r.alpha, r.phi)))
            .collect();
    }

    let points: Vec<(f64, f64)> = alphas
        .iter()
        .flat_map(|&a| phis.iter().map(move |&p| (a, p)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    pool.install(|| {
        points
            .par_iter()
            .map(|&(alpha, phi)| {
                let record = run_point(base, alpha, phi)?;
                compare(&record.counts, &base.at_point(alpha, phi))
            })
            .collect()
    })
}

fn cmd_oracle(args: OracleArgs) -> ExitCode {
    let scale = if args.degrees {
        std::f64::consts::PI / 180.0
    } else {
        1.0
    };
    if args.check {
        if args.grid == 0 {
            eprintln!("error: --grid must be at least 1");
            return ExitCode::from(EXIT_USAGE);
        }
        let max = oracle_check(args.grid);
        println!("max discrepancy over {0}x{0} grid: {max:.3e}", args.grid);
        if max < 1e-12 {
            return ExitCode::SUCCESS;
        }
        eprintln!("error: matrix chain disagrees with the closed form");
        return ExitCode::FAILURE;
    }

    let p = probs_closed_form(args.alpha * scale, args.phi * scale).p;
    // (v, u) order: (0,0), (1,0), (0,1), (1,1)
    println!(
        "p = {}, {}, {}, {}",
        round12(p[0][0]),
        round12(p[1][0]),
        round12(p[0][1]),
        round12(p[1][1])
    );
    ExitCode::SUCCESS
}

/// Display rounding for the oracle printout; the exported tables keep full
/// precision.
fn round12(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

/// Largest |amplitude^2 - closed form| over an inclusive grid on [0, 2pi)^2.
fn oracle_check(grid: usize) -> f64 {
    let step = 2.0 * std::f64::consts::PI / grid as f64;
    let mut max: f64 = 0.0;
    for i in 0..grid {
        for j in 0..grid {
            let alpha = i as f64 * step;
            let phi = j as f64 * step;
            let from_chain = amplitudes(alpha, phi).probs().p;
            let closed = probs_closed_form(alpha, phi).p;
            for v in 0..2 {
                for u in 0..2 {
                    max = max.max((from_chain[v][u] - closed[v][u]).abs());
                }
            }
        }
    }
    max
}
