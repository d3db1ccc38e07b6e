//! Scenario configuration: a flat `key = value` document with `#` comments.
//!
//! Keys are exactly the [`ScenarioConfig`] field names. `model` and `n` are
//! mandatory; `lambda` and `mu` become mandatory when `model = qmm`; every
//! other key has a documented default.

use crate::mobility::{Area, BoundaryPolicy, StepModel};
use crate::stochastic::RateParam;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("missing required key `{0}`")]
    MissingKey(&'static str),
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("invalid value for `{field}`: {constraint} (got `{value}`)")]
    InvalidValue {
        field: &'static str,
        constraint: &'static str,
        value: String,
    },
    #[error("line {line}: expected `key = value`, got `{content}`")]
    Malformed { line: usize, content: String },
}

/// Which spatial model a run uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Qmm,
    Rwm,
}

impl FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "qmm" => Ok(ModelKind::Qmm),
            "rwm" => Ok(ModelKind::Rwm),
            other => Err(format!("unknown model `{other}` (expected qmm | rwm)")),
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Qmm => "qmm",
            ModelKind::Rwm => "rwm",
        })
    }
}

/// Full parameterization of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub model: ModelKind,
    pub n: usize,
    /// Arrival rate; required for QMM, ignored by RWM.
    pub lambda: Option<RateParam>,
    /// Service rate; required for QMM, ignored by RWM.
    pub mu: Option<RateParam>,
    /// Per-step displacement scale in meters per step.
    pub speed: f64,
    pub steps: u64,
    /// Sorted, deduplicated step indices to snapshot.
    pub snapshot_steps: Vec<u64>,
    pub area: Area,
    pub step_model: StepModel,
    pub boundary: BoundaryPolicy,
    /// When true, nodes are active only between arrival and departure.
    pub gated: bool,
    pub time_per_step: f64,
    pub seed: u64,
    /// Occupancy grid dimensions (rows, cols) for snapshot metrics.
    pub grid: (usize, usize),
    pub neighbor_radius: f64,
}

impl ScenarioConfig {
    /// Cross-field validation; also used after CLI overrides.
    pub fn validate(&self) -> Result<(), Error> {
        if self.n < 1 {
            return Err(Error::InvalidValue {
                field: "n",
                constraint: "must be at least 1",
                value: self.n.to_string(),
            });
        }
        if !(self.speed >= 0.0 && self.speed.is_finite()) {
            return Err(Error::InvalidValue {
                field: "speed",
                constraint: "must be nonnegative and finite",
                value: self.speed.to_string(),
            });
        }
        if !(self.time_per_step > 0.0 && self.time_per_step.is_finite()) {
            return Err(Error::InvalidValue {
                field: "time_per_step",
                constraint: "must be strictly positive",
                value: self.time_per_step.to_string(),
            });
        }
        if !(self.neighbor_radius >= 0.0 && self.neighbor_radius.is_finite()) {
            return Err(Error::InvalidValue {
                field: "neighbor_radius",
                constraint: "must be nonnegative and finite",
                value: self.neighbor_radius.to_string(),
            });
        }
        if self.grid.0 < 1 || self.grid.1 < 1 {
            return Err(Error::InvalidValue {
                field: "grid",
                constraint: "must have at least one row and one column",
                value: format!("{}x{}", self.grid.0, self.grid.1),
            });
        }
        if let Some(&step) = self.snapshot_steps.iter().find(|&&s| s > self.steps) {
            return Err(Error::InvalidValue {
                field: "snapshot_steps",
                constraint: "listed steps must not exceed `steps`",
                value: step.to_string(),
            });
        }
        if self.model == ModelKind::Qmm {
            if self.lambda.is_none() {
                return Err(Error::MissingKey("lambda"));
            }
            if self.mu.is_none() {
                return Err(Error::MissingKey("mu"));
            }
        }
        Ok(())
    }
}

/// Parse a configuration document. Unknown keys are rejected by name;
/// unspecified keys take the documented defaults (area 300x300, step_model
/// drift, boundary reflect, gated false, grid 10x10, time_per_step
/// 1.0, neighbor_radius 30; speed 0, steps 0, seed 0, no snapshots).
pub fn parse_config(text: &str) -> Result<ScenarioConfig, Error> {
    let mut model = None;
    let mut n = None;
    let mut lambda = None;
    let mut mu = None;
    let mut speed = 0.0;
    let mut steps = 0u64;
    let mut snapshot_steps = Vec::new();
    let mut area = Area::new(300.0, 300.0).expect("default area");
    let mut step_model = StepModel::Drift;
    let mut boundary = BoundaryPolicy::Reflect;
    let mut gated = false;
    let mut time_per_step = 1.0;
    let mut seed = 0u64;
    let mut grid = (10usize, 10usize);
    let mut neighbor_radius = 30.0;

    for (idx, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Malformed {
            line: idx + 1,
            content: line.to_string(),
        })?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "model" => model = Some(parse_enum::<ModelKind>("model", value)?),
            "n" => n = Some(parse_int("n", value, "must be a positive integer")? as usize),
            "lambda" => lambda = Some(parse_rate("lambda", value)?),
            "mu" => mu = Some(parse_rate("mu", value)?),
            "speed" => speed = parse_float("speed", value)?,
            "steps" => steps = parse_int("steps", value, "must be a nonnegative integer")?,
            "snapshot_steps" => {
                snapshot_steps = parse_step_list(value)?;
            }
            "area" => {
                let (w, h) = parse_pair_f64("area", value)?;
                area = Area::new(w, h).map_err(|_| Error::InvalidValue {
                    field: "area",
                    constraint: "dimensions must be strictly positive",
                    value: value.to_string(),
                })?;
            }
            "step_model" => step_model = parse_enum::<StepModel>("step_model", value)?,
            "boundary" => boundary = parse_enum::<BoundaryPolicy>("boundary", value)?,
            "gated" => {
                gated = value.parse().map_err(|_| Error::InvalidValue {
                    field: "gated",
                    constraint: "must be true or false",
                    value: value.to_string(),
                })?;
            }
            "time_per_step" => time_per_step = parse_float("time_per_step", value)?,
            "seed" => seed = parse_int("seed", value, "must be a nonnegative integer")?,
            "grid" => {
                let (r, c) = parse_pair_usize("grid", value)?;
                grid = (r, c);
            }
            "neighbor_radius" => neighbor_radius = parse_float("neighbor_radius", value)?,
            other => return Err(Error::UnknownKey(other.to_string())),
        }
    }

    let config = ScenarioConfig {
        model: model.ok_or(Error::MissingKey("model"))?,
        n: n.ok_or(Error::MissingKey("n"))?,
        lambda,
        mu,
        speed,
        steps,
        snapshot_steps,
        area,
        step_model,
        boundary,
        gated,
        time_per_step,
        seed,
        grid,
        neighbor_radius,
    };
    config.validate()?;
    Ok(config)
}

fn parse_enum<T: FromStr<Err = String>>(field: &'static str, value: &str) -> Result<T, Error> {
    value.parse().map_err(|_: String| Error::InvalidValue {
        field,
        constraint: "not a recognized name",
        value: value.to_string(),
    })
}

fn parse_int(field: &'static str, value: &str, constraint: &'static str) -> Result<u64, Error> {
    value.parse().map_err(|_| Error::InvalidValue {
        field,
        constraint,
        value: value.to_string(),
    })
}

fn parse_float(field: &'static str, value: &str) -> Result<f64, Error> {
    value.parse().map_err(|_| Error::InvalidValue {
        field,
        constraint: "must be a number",
        value: value.to_string(),
    })
}

fn parse_rate(field: &'static str, value: &str) -> Result<RateParam, Error> {
    let v = parse_float(field, value)?;
    RateParam::new(v).map_err(|_| Error::InvalidValue {
        field,
        constraint: "must be strictly positive",
        value: value.to_string(),
    })
}

fn parse_step_list(value: &str) -> Result<Vec<u64>, Error> {
    let mut out = Vec::new();
    for part in value.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        out.push(parse_int(
            "snapshot_steps",
            part,
            "must be a comma-separated list of nonnegative integers",
        )?);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn parse_pair_f64(field: &'static str, value: &str) -> Result<(f64, f64), Error> {
    let (a, b) = value.split_once('x').ok_or(Error::InvalidValue {
        field,
        constraint: "must look like <width>x<height>",
        value: value.to_string(),
    })?;
    Ok((parse_float(field, a.trim())?, parse_float(field, b.trim())?))
}

fn parse_pair_usize(field: &'static str, value: &str) -> Result<(usize, usize), Error> {
    let (a, b) = value.split_once('x').ok_or(Error::InvalidValue {
        field,
        constraint: "must look like <rows>x<cols>",
        value: value.to_string(),
    })?;
    let r = parse_int(field, a.trim(), "must be a positive integer")? as usize;
    let c = parse_int(field, b.trim(), "must be a positive integer")? as usize;
    Ok((r, c))
}
