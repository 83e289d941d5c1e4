use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use indproc::config::{TimeGrid, DEFAULT_SEED};
use indproc::error::{CliError, Result, EXIT_PASS, EXIT_TOLERANCE, EXIT_USAGE};
use indproc::mapjob::{map_targets, MapRequest};
use indproc::report::{read_report, report_path, write_json, write_plotdata, PLOTDATA_FILE};
use indproc::trajectory::write_trajectories;
use indproc::{ExperimentConfig, Overrides, RayonExecutor};
use indproc_core::models::{
    DelayDiffusionModel, DelayDiffusionParams, KacModel, KacParams, PathModel, TwoSubspaceModel,
    TwoSubspaceParams,
};
use indproc_core::rng::SeedSpec;

/// Simulates indicator-driven processes and checks them against their closed
/// forms.
#[derive(Debug, Parser)]
#[command(name = "indproc", version, args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    #[command(flatten)]
    run: RunArgs,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a named experiment from a JSON config (the default command).
    Run(RunArgs),
    /// Turn a report into long-format `series,t,value` CSV.
    Plotdata {
        /// `report.json` or the directory holding it.
        #[arg(long)]
        report: PathBuf,
        /// Output file; defaults to `plotdata.csv` next to the report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Synthesize indicator intensities for complete-group targets.
    Map {
        /// JSON document `{p, horizon, n_paths, master_seed}`.
        #[arg(long)]
        config: PathBuf,
        /// Output JSON file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, env = "INDPROC_THREADS")]
        threads: Option<usize>,
    },
    /// Write sample paths of a model as CSV.
    Simulate(SimulateArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Overrides `master_seed`.
    #[arg(long)]
    seed: Option<u64>,
    /// Overrides `n_paths`.
    #[arg(long)]
    paths: Option<u64>,
    /// Overrides `output_dir`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (0 = all CPUs); never changes the results.
    #[arg(long, env = "INDPROC_THREADS")]
    threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModelArg {
    Kac,
    Delay,
    TwoSubspace,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long, value_enum)]
    model: ModelArg,
    #[arg(long, default_value_t = 1.0)]
    horizon: f64,
    /// Grid points, endpoints included.
    #[arg(long, default_value_t = 101)]
    points: usize,
    /// Number of paths, indexed from 0.
    #[arg(long, default_value_t = 1)]
    paths: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Switching rate λ (or μ₁ for the delay model).
    #[arg(long, default_value_t = 1.0)]
    rate: f64,
    /// Second driver rate of the delay model; a single driver when absent.
    #[arg(long)]
    rate2: Option<f64>,
    /// Kac speed c.
    #[arg(long, default_value_t = 1.0)]
    speed: f64,
    /// Diffusion amplitude b.
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    /// Output CSV; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run_cmd(args: RunArgs) -> Result<u8> {
    let path = args
        .config
        .ok_or_else(|| CliError::config("--config", "a config file is required"))?;
    let cfg = ExperimentConfig::from_path(&path)?;
    let overrides = Overrides {
        seed: args.seed,
        n_paths: args.paths,
        out: args.out,
        threads: args.threads,
    };
    let (report, code) = indproc::run(cfg, &overrides)?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    println!(
        "{}: {} [{}]",
        report.experiment,
        report.summary,
        if report.pass { "PASS" } else { "FAIL" }
    );
    Ok(code)
}

fn plotdata_cmd(report: PathBuf, out: Option<PathBuf>) -> Result<u8> {
    let rep = read_report(&report)?;
    let out = out.unwrap_or_else(|| {
        report_path(&report)
            .parent()
            .map(|d| d.join(PLOTDATA_FILE))
            .unwrap_or_else(|| PLOTDATA_FILE.into())
    });
    write_plotdata(&out, &rep)?;
    Ok(EXIT_PASS)
}

fn map_cmd(config: PathBuf, out: Option<PathBuf>, threads: Option<usize>) -> Result<u8> {
    let req = MapRequest::from_path(&config)?;
    let result = map_targets(&req, &RayonExecutor::new(threads))?;
    match out {
        Some(path) => write_json(&path, &result)?,
        None => {
            let text = serde_json::to_string_pretty(&result).expect("plain data serializes");
            println!("{text}");
        }
    }
    Ok(if result.pass {
        EXIT_PASS
    } else {
        EXIT_TOLERANCE
    })
}

fn simulate_cmd(a: SimulateArgs) -> Result<u8> {
    if a.points < 2 {
        return Err(CliError::config("--points", "need at least 2 grid points"));
    }
    let grid = TimeGrid::linspace(0.0, a.horizon, a.points)
        .times()
        .map_err(|_| CliError::config("--horizon", "must be finite and non-negative"))?;
    let model: Box<dyn PathModel> = match a.model {
        ModelArg::Kac => Box::new(KacModel::new(
            KacParams {
                speed: a.speed,
                rate: a.rate,
            },
            a.horizon,
        )),
        ModelArg::Delay => {
            let params = match a.rate2 {
                Some(r2) => DelayDiffusionParams::product(a.rate, r2, a.b),
                None => DelayDiffusionParams::single(a.rate, a.b),
            };
            Box::new(DelayDiffusionModel::new(params, a.horizon))
        }
        ModelArg::TwoSubspace => Box::new(TwoSubspaceModel::new(
            TwoSubspaceParams {
                b: a.b,
                rate: a.rate,
            },
            a.horizon,
        )),
    };
    model.validate().map_err(|e| match e {
        indproc_core::Error::Parameter { name, reason } => {
            CliError::config(format!("--{name}"), reason)
        }
        other => CliError::config("--model", other.to_string()),
    })?;
    let paths = (0..a.paths)
        .map(|i| model.simulate(&grid, SeedSpec::new(a.seed, i)))
        .collect::<indproc_core::Result<Vec<_>>>()?;
    match a.out {
        Some(path) => {
            let f = File::create(&path).map_err(|e| CliError::io(&path, e))?;
            write_trajectories(BufWriter::new(f), &paths)?;
        }
        None => {
            let stdout = io::stdout();
            write_trajectories(stdout.lock(), &paths)?;
            io::stdout().flush().ok();
        }
    }
    Ok(EXIT_PASS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        None => run_cmd(cli.run),
        Some(Command::Run(args)) => run_cmd(args),
        Some(Command::Plotdata { report, out }) => plotdata_cmd(report, out),
        Some(Command::Map {
            config,
            out,
            threads,
        }) => map_cmd(config, out, threads),
        Some(Command::Simulate(args)) => simulate_cmd(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
