//! Bit-exact artifact serialization.
//!
//! Reals are written with at most 9 significant digits in their shortest
//! round-trip form: the value is rounded to 9 significant digits and then
//! printed with the minimal digits that re-parse to exactly that rounded
//! value. Writing, reading, and re-writing a file reproduces it byte for
//! byte.
//!
//! Formats:
//! - trace: CSV, header `step,id,x,y`, steps ascending, ids ascending
//!   within a step;
//! - snapshot: CSV, header `id,x,y`, filename `snapshot_<step>.csv`;
//! - report: flat `key = value` text echoing the scenario keys followed by
//!   the run metrics, one block per snapshot step;
//! - pmf table: CSV, column `n` plus one `lambda_<rate>` column per rate.

use crate::engine::RunReport;
use crate::metrics::UniformityReport;
use crate::mobility::{Point, Snapshot, Trace, TraceRecord};
use crate::scenario::parse_config;
use crate::stochastic::PmfCurve;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
}

impl Error {
    fn parse(path: &Path, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.to_path_buf(),
            line,
            message: message.into(),
        }
    }
}

/// Round to 9 significant digits, then print the shortest string that
/// parses back to exactly that value.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let quantized: f64 = format!("{x:.8e}").parse().expect("quantized real");
    format!("{quantized}")
}

/// Standard snapshot filename for a step.
pub fn snapshot_filename(step: u64) -> String {
    format!("snapshot_{step}.csv")
}

pub fn write_trace(trace: &Trace, path: &Path) -> Result<(), Error> {
    let mut out = String::from("step,id,x,y\n");
    for r in trace.records() {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.step,
            r.id,
            format_real(r.x),
            format_real(r.y)
        );
    }
    write_file(path, &out)
}

pub fn read_trace(path: &Path) -> Result<Trace, Error> {
    let text = read_file(path)?;
    let mut lines = text.lines().enumerate();
    expect_header(path, lines.next(), "step,id,x,y")?;
    let mut trace = Trace::default();
    for (idx, line) in lines {
        let mut parts = line.split(',');
        let record = (|| {
            Some(TraceRecord {
                step: parts.next()?.parse().ok()?,
                id: parts.next()?.parse().ok()?,
                x: parts.next()?.parse().ok()?,
                y: parts.next()?.parse().ok()?,
            })
        })()
        .filter(|_| parts.next().is_none())
        .ok_or_else(|| Error::parse(path, idx + 1, format!("bad trace row `{line}`")))?;
        trace.push(record);
    }
    Ok(trace)
}

pub fn write_snapshot(snapshot: &Snapshot, path: &Path) -> Result<(), Error> {
    let mut out = String::from("id,x,y\n");
    for &(id, p) in &snapshot.positions {
        let _ = writeln!(out, "{},{},{}", id, format_real(p.x), format_real(p.y));
    }
    write_file(path, &out)
}

/// Read a snapshot back; the step is carried by the filename, so the
/// caller supplies it.
pub fn read_snapshot(path: &Path, step: u64) -> Result<Snapshot, Error> {
    let text = read_file(path)?;
    let mut lines = text.lines().enumerate();
    expect_header(path, lines.next(), "id,x,y")?;
    let mut positions = Vec::new();
    for (idx, line) in lines {
        let mut parts = line.split(',');
        let entry = (|| {
            let id: u64 = parts.next()?.parse().ok()?;
            let x: f64 = parts.next()?.parse().ok()?;
            let y: f64 = parts.next()?.parse().ok()?;
            Some((id, Point { x, y }))
        })()
        .filter(|_| parts.next().is_none())
        .ok_or_else(|| Error::parse(path, idx + 1, format!("bad snapshot row `{line}`")))?;
        positions.push(entry);
    }
    Ok(Snapshot { step, positions })
}

pub fn write_report(report: &RunReport, path: &Path) -> Result<(), Error> {
    write_file(path, &render_report(report))
}

fn render_report(report: &RunReport) -> String {
    let c = &report.config;
    let mut out = String::new();
    let _ = writeln!(out, "model = {}", c.model);
    let _ = writeln!(out, "n = {}", c.n);
    if let Some(lambda) = c.lambda {
        let _ = writeln!(out, "lambda = {}", format_real(lambda.value()));
    }
    if let Some(mu) = c.mu {
        let _ = writeln!(out, "mu = {}", format_real(mu.value()));
    }
    let _ = writeln!(out, "speed = {}", format_real(c.speed));
    let _ = writeln!(out, "steps = {}", c.steps);
    if !c.snapshot_steps.is_empty() {
        let list: Vec<String> = c.snapshot_steps.iter().map(|s| s.to_string()).collect();
        let _ = writeln!(out, "snapshot_steps = {}", list.join(","));
    }
    let _ = writeln!(
        out,
        "area = {}x{}",
        format_real(c.area.width()),
        format_real(c.area.height())
    );
    let _ = writeln!(out, "step_model = {}", c.step_model);
    let _ = writeln!(out, "boundary = {}", c.boundary);
    let _ = writeln!(out, "gated = {}", c.gated);
    let _ = writeln!(out, "time_per_step = {}", format_real(c.time_per_step));
    let _ = writeln!(out, "seed = {}", c.seed);
    let _ = writeln!(out, "grid = {}x{}", c.grid.0, c.grid.1);
    let _ = writeln!(out, "neighbor_radius = {}", format_real(c.neighbor_radius));
    out.push('\n');
    if let Some((chi, tv)) = report.arrival_fit {
        let _ = writeln!(out, "arrival_chi_square = {}", format_real(chi));
        let _ = writeln!(out, "arrival_total_variation = {}", format_real(tv));
    }
    if let Some(mean) = report.mean_in_system {
        let _ = writeln!(out, "mean_in_system = {}", format_real(mean));
    }
    for (step, u) in &report.per_snapshot {
        out.push('\n');
        let _ = writeln!(
            out,
            "snapshot_{step}.chi_square = {}",
            format_real(u.chi_square)
        );
        let _ = writeln!(out, "snapshot_{step}.cells = {}", u.cells);
        let _ = writeln!(
            out,
            "snapshot_{step}.centroid_x = {}",
            format_real(u.centroid.0)
        );
        let _ = writeln!(
            out,
            "snapshot_{step}.centroid_y = {}",
            format_real(u.centroid.1)
        );
        let _ = writeln!(
            out,
            "snapshot_{step}.mean_neighbors = {}",
            format_real(u.mean_neighbors)
        );
    }
    out
}

pub fn read_report(path: &Path) -> Result<RunReport, Error> {
    let text = read_file(path)?;
    let mut config_lines = String::new();
    let mut arrival_chi = None;
    let mut arrival_tv = None;
    let mut mean_in_system = None;
    // step -> partially assembled uniformity report, in file order
    let mut snapshots: Vec<(u64, PartialUniformity)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::parse(
                path,
                idx + 1,
                format!("expected `key = value`, got `{line}`"),
            )
        })?;
        let key = key.trim();
        let value = value.trim();
        let parse_f64 = |v: &str| -> Result<f64, Error> {
            v.parse()
                .map_err(|_| Error::parse(path, idx + 1, format!("bad number `{v}`")))
        };
        match key {
            "arrival_chi_square" => arrival_chi = Some(parse_f64(value)?),
            "arrival_total_variation" => arrival_tv = Some(parse_f64(value)?),
            "mean_in_system" => mean_in_system = Some(parse_f64(value)?),
            _ if key.starts_with("snapshot_") && key.contains('.') => {
                let rest = &key["snapshot_".len()..];
                let (step_s, field) = rest.split_once('.').ok_or_else(|| {
                    Error::parse(path, idx + 1, format!("bad snapshot key `{key}`"))
                })?;
                let step: u64 = step_s.parse().map_err(|_| {
                    Error::parse(path, idx + 1, format!("bad snapshot step `{step_s}`"))
                })?;
                let entry = match snapshots.iter_mut().find(|(s, _)| *s == step) {
                    Some((_, e)) => e,
                    None => {
                        snapshots.push((step, PartialUniformity::default()));
                        &mut snapshots.last_mut().expect("just pushed").1
                    }
                };
                match field {
                    "chi_square" => entry.chi_square = Some(parse_f64(value)?),
                    "cells" => {
                        entry.cells = Some(value.parse().map_err(|_| {
                            Error::parse(path, idx + 1, format!("bad cell count `{value}`"))
                        })?)
                    }
                    "centroid_x" => entry.centroid_x = Some(parse_f64(value)?),
                    "centroid_y" => entry.centroid_y = Some(parse_f64(value)?),
                    "mean_neighbors" => entry.mean_neighbors = Some(parse_f64(value)?),
                    other => {
                        return Err(Error::parse(
                            path,
                            idx + 1,
                            format!("unknown snapshot field `{other}`"),
                        ))
                    }
                }
            }
            _ => {
                config_lines.push_str(line);
                config_lines.push('\n');
            }
        }
    }

    let config = parse_config(&config_lines)
        .map_err(|e| Error::parse(path, 0, format!("embedded scenario invalid: {e}")))?;
    let arrival_fit = match (arrival_chi, arrival_tv) {
        (Some(chi), Some(tv)) => Some((chi, tv)),
        (None, None) => None,
        _ => {
            return Err(Error::parse(
                path,
                0,
                "arrival_chi_square and arrival_total_variation must appear together",
            ))
        }
    };
    let mut per_snapshot = Vec::with_capacity(snapshots.len());
    for (step, partial) in snapshots {
        per_snapshot.push((
            step,
            partial.finish().ok_or_else(|| {
                Error::parse(
                    path,
                    0,
                    format!("incomplete snapshot block for step {step}"),
                )
            })?,
        ));
    }
    Ok(RunReport {
        config,
        per_snapshot,
        arrival_fit,
        mean_in_system,
    })
}

#[derive(Default)]
struct PartialUniformity {
    chi_square: Option<f64>,
    cells: Option<usize>,
    centroid_x: Option<f64>,
    centroid_y: Option<f64>,
    mean_neighbors: Option<f64>,
}

impl PartialUniformity {
    fn finish(self) -> Option<UniformityReport> {
        Some(UniformityReport {
            chi_square: self.chi_square?,
            cells: self.cells?,
            centroid: (self.centroid_x?, self.centroid_y?),
            mean_neighbors: self.mean_neighbors?,
        })
    }
}

/// Write the pmf table: rows n = 0..=n_max, one probability column per
/// rate. All curves must share one length.
pub fn write_pmf_table(lambdas: &[f64], curves: &[PmfCurve], path: &Path) -> Result<(), Error> {
    let mut out = String::from("n");
    for &l in lambdas {
        let _ = write!(out, ",lambda_{}", format_real(l));
    }
    out.push('\n');
    let rows = curves.first().map_or(0, |c| c.len());
    for i in 0..rows {
        let _ = write!(out, "{}", curves[0].entries()[i].0);
        for curve in curves {
            let _ = write!(out, ",{}", format_real(curve.entries()[i].1));
        }
        out.push('\n');
    }
    write_file(path, &out)
}

/// Rates plus rows of (n, per-rate probabilities).
pub type PmfTable = (Vec<f64>, Vec<(u64, Vec<f64>)>);

/// Read a pmf table back as (rates, rows of (n, probabilities)).
pub fn read_pmf_table(path: &Path) -> Result<PmfTable, Error> {
    let text = read_file(path)?;
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::parse(path, 1, "empty pmf table"))?;
    let mut cols = header.split(',');
    if cols.next() != Some("n") {
        return Err(Error::parse(path, 1, format!("bad header `{header}`")));
    }
    let mut lambdas = Vec::new();
    for col in cols {
        let rate = col
            .strip_prefix("lambda_")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::parse(path, 1, format!("bad column `{col}`")))?;
        lambdas.push(rate);
    }
    let mut rows = Vec::new();
    for (idx, line) in lines {
        let mut parts = line.split(',');
        let n: u64 = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::parse(path, idx + 1, format!("bad row `{line}`")))?;
        let mut probs = Vec::with_capacity(lambdas.len());
        for part in parts {
            probs.push(
                part.parse().map_err(|_| {
                    Error::parse(path, idx + 1, format!("bad probability `{part}`"))
                })?,
            );
        }
        if probs.len() != lambdas.len() {
            return Err(Error::parse(path, idx + 1, "column count mismatch"));
        }
        rows.push((n, probs));
    }
    Ok((lambdas, rows))
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), Error> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_file(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn expect_header(path: &Path, line: Option<(usize, &str)>, expected: &str) -> Result<(), Error> {
    match line {
        Some((_, got)) if got == expected => Ok(()),
        Some((idx, got)) => Err(Error::parse(
            path,
            idx + 1,
            format!("expected header `{expected}`, got `{got}`"),
        )),
        None => Err(Error::parse(
            path,
            1,
            format!("missing header `{expected}`"),
        )),
    }
}
