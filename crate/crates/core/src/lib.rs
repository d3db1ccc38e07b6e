//! Deterministic, seedable simulation toolkit for node arrival patterns:
//! a Poisson-arrival M/M/1 queueing core, two mobility models seeded from
//! it (the queueing mobility model and a random walk), spatial-uniformity
//! statistics over snapshots, and a batch engine with bit-exact artifact
//! serialization.
//!
//! Everything downstream of a scenario seed is reproducible: same config
//! and seed, same bytes on disk.

// negated float comparisons are deliberate: `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod engine;
pub mod metrics;
pub mod mobility;
pub mod persist;
pub mod queueing;
pub mod scenario;
pub mod stochastic;

pub use engine::{run_batch, run_scenario, BatchCell, RunReport};
pub use metrics::{OccupancyGrid, PoissonFit, UniformityReport};
pub use mobility::{
    Area, BoundaryPolicy, MobilityRun, NodeState, Point, Snapshot, StepModel, Trace, TraceRecord,
};
pub use queueing::ArrivalSchedule;
pub use scenario::{parse_config, ModelKind, ScenarioConfig};
pub use stochastic::{PmfCurve, RandomStream, RateParam};
