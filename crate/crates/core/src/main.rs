//! Command-line driver: `simulate` one scenario, `batch` a rate/seed
//! sweep, or `pmf` the arrival-count curves.
//!
//! Exit codes: 0 success, 1 validation error, 2 I/O error.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use manet_sim::engine::{self, cell_dirname};
use manet_sim::persist::format_real;
use manet_sim::scenario::{self, parse_config, ModelKind, ScenarioConfig};
use manet_sim::{BoundaryPolicy, RateParam, StepModel};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "manet-sim",
    version,
    about = "Deterministic queueing-mobility simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and write trace, snapshots, and a metrics report.
    Simulate {
        /// Scenario file (`key = value` lines, `#` comments).
        #[arg(long)]
        config: PathBuf,
        /// Override the scenario seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory.
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Sweep arrival rates x seeds off one base scenario.
    Batch {
        /// Base scenario file.
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated arrival rates, e.g. 0.3,0.4,0.5,0.8,0.9.
        #[arg(long)]
        lambdas: String,
        /// Number of consecutive seeds, starting at the scenario seed.
        #[arg(long)]
        seeds: u64,
        /// Output root; each cell gets its own subdirectory.
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Tabulate Poisson arrival-count curves for a rate grid.
    Pmf {
        /// Comma-separated arrival rates.
        #[arg(long)]
        lambdas: String,
        /// Time horizon the counts are taken over.
        #[arg(long)]
        t: f64,
        /// Largest count to tabulate.
        #[arg(long)]
        nmax: u64,
        /// Output file.
        #[arg(long, default_value = "pmf.csv")]
        out: PathBuf,
    },
}

/// Config-key overrides shared by `simulate` and `batch`.
#[derive(Args)]
struct Overrides {
    /// Override `model` (qmm | rwm).
    #[arg(long)]
    model: Option<ModelKind>,
    /// Override `n`.
    #[arg(long)]
    nodes: Option<usize>,
    /// Override `speed`.
    #[arg(long)]
    speed: Option<f64>,
    /// Override `steps`.
    #[arg(long)]
    steps: Option<u64>,
    /// Override `boundary` (reflect | clamp | unbounded).
    #[arg(long)]
    boundary: Option<BoundaryPolicy>,
    /// Override `step_model` (drift | symmetric).
    #[arg(long)]
    step_model: Option<StepModel>,
    /// Override `gated` (true | false).
    #[arg(long)]
    gated: Option<bool>,
}

impl Overrides {
    fn apply(&self, config: &mut ScenarioConfig) {
        if let Some(model) = self.model {
            config.model = model;
        }
        if let Some(n) = self.nodes {
            config.n = n;
        }
        if let Some(speed) = self.speed {
            config.speed = speed;
        }
        if let Some(steps) = self.steps {
            config.steps = steps;
        }
        if let Some(boundary) = self.boundary {
            config.boundary = boundary;
        }
        if let Some(step_model) = self.step_model {
            config.step_model = step_model;
        }
        if let Some(gated) = self.gated {
            config.gated = gated;
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<(), engine::Error> {
    match cli.command {
        Command::Simulate {
            config,
            seed,
            out_dir,
            overrides,
        } => {
            let mut scenario = load_config(&config)?;
            overrides.apply(&mut scenario);
            if let Some(seed) = seed {
                scenario.seed = seed;
            }
            scenario.validate()?;
            let report = engine::run_scenario(&scenario, &out_dir)?;
            println!("wrote {}", out_dir.join("trace.csv").display());
            for (step, _) in &report.per_snapshot {
                println!(
                    "wrote {}",
                    out_dir
                        .join(manet_sim::persist::snapshot_filename(*step))
                        .display()
                );
            }
            println!("wrote {}", out_dir.join("report.txt").display());
            if let Some(mean) = report.mean_in_system {
                println!("mean_in_system = {}", format_real(mean));
            }
            if let Some((chi, tv)) = report.arrival_fit {
                println!("arrival_chi_square = {}", format_real(chi));
                println!("arrival_total_variation = {}", format_real(tv));
            }
            for (step, u) in &report.per_snapshot {
                println!(
                    "snapshot {step}: chi_square = {}",
                    format_real(u.chi_square)
                );
            }
            Ok(())
        }
        Command::Batch {
            config,
            lambdas,
            seeds,
            out_dir,
            overrides,
        } => {
            let mut scenario = load_config(&config)?;
            overrides.apply(&mut scenario);
            scenario.validate()?;
            let lambdas = parse_lambda_list(&lambdas)?;
            if seeds == 0 {
                return Err(engine::Error::EmptyBatch("seed"));
            }
            let seed_list: Vec<u64> = (0..seeds).map(|i| scenario.seed.wrapping_add(i)).collect();
            let cells = engine::run_batch(&scenario, &lambdas, &seed_list, &out_dir)?;
            let mut failed = 0usize;
            for cell in &cells {
                match &cell.outcome {
                    Ok(_) => println!(
                        "lambda={} seed={} ok ({})",
                        format_real(cell.lambda),
                        cell.seed,
                        out_dir.join(cell_dirname(cell.lambda, cell.seed)).display()
                    ),
                    Err(e) => {
                        failed += 1;
                        println!(
                            "lambda={} seed={} FAILED: {e}",
                            format_real(cell.lambda),
                            cell.seed
                        );
                    }
                }
            }
            println!("{} of {} runs succeeded", cells.len() - failed, cells.len());
            if failed > 0 {
                return Err(engine::Error::Config(scenario::Error::InvalidValue {
                    field: "batch",
                    constraint: "one or more cells failed; see summary",
                    value: failed.to_string(),
                }));
            }
            Ok(())
        }
        Command::Pmf {
            lambdas,
            t,
            nmax,
            out,
        } => {
            let lambdas = parse_lambda_list(&lambdas)?;
            engine::emit_pmf_curves(&lambdas, t, nmax, &out)?;
            println!("wrote {}", out.display());
            Ok(())
        }
    }
}

fn load_config(path: &Path) -> Result<ScenarioConfig, engine::Error> {
    let text = manet_sim::persist::read_file(path)?;
    Ok(parse_config(&text)?)
}

fn parse_lambda_list(list: &str) -> Result<Vec<RateParam>, engine::Error> {
    let mut out = Vec::new();
    for part in list.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let value: f64 = part.parse().map_err(|_| {
            engine::Error::Config(scenario::Error::InvalidValue {
                field: "lambdas",
                constraint: "must be a comma-separated list of numbers",
                value: part.to_string(),
            })
        })?;
        out.push(RateParam::new(value).map_err(|_| {
            engine::Error::Config(scenario::Error::InvalidValue {
                field: "lambdas",
                constraint: "rates must be strictly positive",
                value: part.to_string(),
            })
        })?);
    }
    if out.is_empty() {
        return Err(engine::Error::EmptyBatch("lambda"));
    }
    Ok(out)
}
