use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use minor_sums::groups::EnumerationCaps;
use minor_sums::RingSpec;
use minor_sums_cli::{eval, parse_rings, suites, CliError, RunOptions, VerificationReport};

#[derive(Parser)]
#[command(name = "minor-sums", version, about = "Exact checks of sums of minor products over signed permutations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Ring to check over: int, rat or mod:<m>. Repeatable; commas allowed.
    #[arg(long = "ring", value_name = "SPEC")]
    rings: Vec<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads for brute-force enumeration.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    /// Report destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Largest permutation degree that may be enumerated.
    #[arg(long, default_value_t = EnumerationCaps::default().perm_degree)]
    cap_perms: usize,
    /// Largest total number of sign bits that may be enumerated.
    #[arg(long, default_value_t = EnumerationCaps::default().sign_bits)]
    cap_signs: usize,
    /// Include per-suite wall time in the report.
    #[arg(long)]
    timings: bool,
}

impl Common {
    fn options(&self) -> RunOptions {
        RunOptions {
            caps: EnumerationCaps { perm_degree: self.cap_perms, sign_bits: self.cap_signs },
            jobs: self.jobs as usize,
            timings: self.timings,
        }
    }

    fn rings(&self, default: &[&str]) -> Result<Vec<RingSpec>, CliError> {
        if self.rings.is_empty() {
            parse_rings(default)
        } else {
            parse_rings(&self.rings)
        }
    }
}

#[derive(Args)]
struct CycleArgs {
    /// Cycle length.
    #[arg(long)]
    d: usize,
    /// Block sizes n_0,...,n_{d-1}.
    #[arg(long, value_delimiter = ',', required = true)]
    dims: Vec<usize>,
    #[arg(long)]
    trials: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Exhaustive sweep of the permutation pair-sum identity.
    VerifyLemma1 {
        #[arg(long)]
        n_max: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Seeded trials of the tuple-product identity on one cycle shape.
    VerifyLemma3 {
        #[command(flatten)]
        cycle: CycleArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Seeded trials of the charpoly-sum identity on one cycle shape.
    VerifyCorollary {
        #[command(flatten)]
        cycle: CycleArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Property suites for the matrix kernels.
    VerifyKernels {
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate one operation on a JSON instance.
    Eval {
        #[arg(long)]
        op: String,
        #[arg(long)]
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

const PAIR_SUM_RINGS: &[&str] = &["int", "mod:5", "mod:2"];
const CYCLE_RINGS: &[&str] = &["int", "mod:7", "mod:2"];
const KERNEL_RINGS: &[&str] = &["int", "rat", "mod:7", "mod:2"];
const TUPLE_TRIALS: usize = 20;
const CHARPOLY_TRIALS: usize = 10;

fn in_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {jobs} workers: {e}")))?;
    Ok(pool.install(f))
}

fn emit(common: &Common, text: &str) -> Result<(), CliError> {
    match &common.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn summarize(report: &VerificationReport) {
    for s in &report.suites {
        let time = s.wall_time_ms.map(|ms| format!(", {ms} ms")).unwrap_or_default();
        eprintln!("{} [{}]: {} instances, {} failed{time}", s.suite, s.ring, s.instances, s.failed);
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let (common, report) = match &cli.command {
        Command::Eval { op, file, common } => {
            let text = std::fs::read_to_string(file)?;
            let opts = common.options();
            let out = in_pool(opts.jobs, || eval::evaluate(op, &text, &opts.caps, opts.jobs))??;
            emit(common, &out.render())?;
            return Ok(0);
        }
        Command::VerifyLemma1 { n_max, common } => {
            let rings = common.rings(PAIR_SUM_RINGS)?;
            let opts = common.options();
            (common, in_pool(opts.jobs, || suites::verify_lemma1(*n_max, &rings, &opts))??)
        }
        Command::VerifyLemma3 { cycle, common } => {
            let rings = common.rings(CYCLE_RINGS)?;
            let opts = common.options();
            let trials = cycle.trials.unwrap_or(TUPLE_TRIALS);
            let report = in_pool(opts.jobs, || {
                suites::verify_lemma3(cycle.d, &cycle.dims, trials, common.seed, &rings, &opts)
            })??;
            (common, report)
        }
        Command::VerifyCorollary { cycle, common } => {
            let rings = common.rings(CYCLE_RINGS)?;
            let opts = common.options();
            let trials = cycle.trials.unwrap_or(CHARPOLY_TRIALS);
            let report = in_pool(opts.jobs, || {
                suites::verify_corollary(cycle.d, &cycle.dims, trials, common.seed, &rings, &opts)
            })??;
            (common, report)
        }
        Command::VerifyKernels { common } => {
            let rings = common.rings(KERNEL_RINGS)?;
            let opts = common.options();
            (common, in_pool(opts.jobs, || suites::verify_kernels(common.seed, &rings, &opts))??)
        }
    };
    emit(common, &report.to_json())?;
    summarize(&report);
    Ok(if report.success() { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
