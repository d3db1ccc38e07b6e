//! Run orchestration: execute a scenario, compute its metrics, persist the
//! artifacts, and sweep parameter grids in batch.

use crate::metrics::{arrival_histogram, compare_to_poisson, uniformity_report, UniformityReport};
use crate::mobility::{run_mobility, Point, Snapshot};
use crate::persist::{
    snapshot_filename, write_pmf_table, write_report, write_snapshot, write_trace,
};
use crate::queueing::mean_number_in_system;
use crate::scenario::ScenarioConfig;
use crate::stochastic::{poisson_curve, RandomStream, RateParam};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Config(#[from] crate::scenario::Error),
    #[error(transparent)]
    Stochastic(#[from] crate::stochastic::Error),
    #[error(transparent)]
    Queueing(#[from] crate::queueing::Error),
    #[error(transparent)]
    Mobility(#[from] crate::mobility::Error),
    #[error(transparent)]
    Metrics(#[from] crate::metrics::Error),
    #[error(transparent)]
    Persist(#[from] crate::persist::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("batch requires at least one {0}")]
    EmptyBatch(&'static str),
}

impl Error {
    /// Process exit code: 2 for I/O failures, 1 for everything else
    /// (validation and domain errors).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } => 2,
            Error::Persist(crate::persist::Error::Io { .. }) => 2,
            Error::Persist(crate::persist::Error::Parse { .. }) => 2,
            _ => 1,
        }
    }
}

/// Everything one scenario run reports: the configuration it ran under,
/// per-snapshot uniformity metrics, and (QMM only) the arrival-law fit and
/// the time-average number in system.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub config: ScenarioConfig,
    pub per_snapshot: Vec<(u64, UniformityReport)>,
    /// (chi_square, total_variation) of arrival counts against the Poisson
    /// law; absent for RWM runs.
    pub arrival_fit: Option<(f64, f64)>,
    /// Time-average number in system; absent for RWM runs.
    pub mean_in_system: Option<f64>,
}

/// Outcome of one batch cell; failures are recorded, not fatal.
#[derive(Debug)]
pub struct BatchCell {
    pub lambda: f64,
    pub seed: u64,
    pub outcome: Result<RunReport, Error>,
}

/// Execute one scenario: run the mobility model, write `trace.csv`, one
/// `snapshot_<step>.csv` per configured step, and `report.txt` under
/// `out_dir`, and return the report.
///
/// Snapshot metrics are computed on positions clipped to the area, so
/// unbounded runs (and QMM placements that start beyond it) still grid
/// cleanly; the files themselves keep the raw positions. The arrival fit
/// uses unit-time windows up to the last arrival.
pub fn run_scenario(config: &ScenarioConfig, out_dir: &Path) -> Result<RunReport, Error> {
    config.validate()?;
    fs::create_dir_all(out_dir).map_err(|source| Error::Io {
        path: out_dir.to_path_buf(),
        source,
    })?;

    let mut stream = RandomStream::new(config.seed);
    let run = run_mobility(config, &mut stream)?;

    write_trace(&run.trace, &out_dir.join("trace.csv"))?;

    let mut per_snapshot = Vec::with_capacity(run.snapshots.len());
    for snapshot in &run.snapshots {
        write_snapshot(snapshot, &out_dir.join(snapshot_filename(snapshot.step)))?;
        let clipped = clip_to_area(snapshot, config);
        let report = uniformity_report(
            &clipped,
            &config.area,
            config.grid.0,
            config.grid.1,
            config.neighbor_radius,
        )?;
        per_snapshot.push((snapshot.step, report));
    }

    let (arrival_fit, mean_in_system) = match &run.schedule {
        Some(schedule) if !schedule.is_empty() => {
            let lambda = config.lambda.expect("qmm validated");
            let last_arrival = *schedule.arrivals().last().expect("nonempty");
            let fit = if last_arrival > 0.0 {
                let hist = arrival_histogram(schedule.arrivals(), 1.0, last_arrival)?;
                let fit = compare_to_poisson(&hist, lambda, 1.0)?;
                Some((fit.chi_square, fit.total_variation))
            } else {
                None
            };
            let last_departure = *schedule.departures().last().expect("nonempty");
            let mean = mean_number_in_system(schedule, last_departure)?;
            (fit, Some(mean))
        }
        _ => (None, None),
    };

    let report = RunReport {
        config: config.clone(),
        per_snapshot,
        arrival_fit,
        mean_in_system,
    };
    write_report(&report, &out_dir.join("report.txt"))?;
    Ok(report)
}

fn clip_to_area(snapshot: &Snapshot, config: &ScenarioConfig) -> Snapshot {
    Snapshot {
        step: snapshot.step,
        positions: snapshot
            .positions
            .iter()
            .map(|&(id, p)| {
                (
                    id,
                    Point {
                        x: p.x.clamp(0.0, config.area.width()),
                        y: p.y.clamp(0.0, config.area.height()),
                    },
                )
            })
            .collect(),
    }
}

/// Run the Cartesian product of arrival rates and seeds off one base
/// configuration, each cell in its own subdirectory of `out_root`.
/// Per-cell failures are flagged in the returned cells and in
/// `batch_summary.txt`, and do not abort the remaining runs.
pub fn run_batch(
    base: &ScenarioConfig,
    lambdas: &[RateParam],
    seeds: &[u64],
    out_root: &Path,
) -> Result<Vec<BatchCell>, Error> {
    if lambdas.is_empty() {
        return Err(Error::EmptyBatch("lambda"));
    }
    if seeds.is_empty() {
        return Err(Error::EmptyBatch("seed"));
    }
    fs::create_dir_all(out_root).map_err(|source| Error::Io {
        path: out_root.to_path_buf(),
        source,
    })?;

    let mut cells = Vec::with_capacity(lambdas.len() * seeds.len());
    for &lambda in lambdas {
        for &seed in seeds {
            let mut config = base.clone();
            config.lambda = Some(lambda);
            config.seed = seed;
            let dir = out_root.join(cell_dirname(lambda.value(), seed));
            let outcome = run_scenario(&config, &dir);
            cells.push(BatchCell {
                lambda: lambda.value(),
                seed,
                outcome,
            });
        }
    }

    let mut summary = String::from("lambda,seed,status\n");
    for cell in &cells {
        let status = match &cell.outcome {
            Ok(_) => "ok".to_string(),
            Err(e) => format!("failed: {e}"),
        };
        let _ = writeln!(
            summary,
            "{},{},{}",
            crate::persist::format_real(cell.lambda),
            cell.seed,
            status
        );
    }
    crate::persist::write_file(&out_root.join("batch_summary.txt"), &summary)?;
    Ok(cells)
}

/// Directory name for one batch cell.
pub fn cell_dirname(lambda: f64, seed: u64) -> String {
    format!(
        "lambda_{}_seed_{}",
        crate::persist::format_real(lambda),
        seed
    )
}

/// Tabulate the Poisson pmf for each rate at horizon `t`, rows
/// n = 0..=n_max: the plot-ready data behind the per-rate arrival curves.
pub fn emit_pmf_curves(
    lambdas: &[RateParam],
    t: f64,
    n_max: u64,
    path: &Path,
) -> Result<(), Error> {
    if lambdas.is_empty() {
        return Err(Error::EmptyBatch("lambda"));
    }
    let mut curves = Vec::with_capacity(lambdas.len());
    for &rate in lambdas {
        curves.push(poisson_curve(rate, t, n_max)?);
    }
    let rates: Vec<f64> = lambdas.iter().map(|r| r.value()).collect();
    write_pmf_table(&rates, &curves, path)?;
    Ok(())
}
