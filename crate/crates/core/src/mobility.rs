//! The two spatial models and their stepping machinery.
//!
//! The queueing mobility model (QMM) seeds node positions straight from the
//! arrival schedule: node i starts at (arrival time, departure time), which
//! is what produces the initial queue line hugging the 45° diagonal. The
//! random walk model (RWM) seeds nodes uniformly in the unit square at the
//! area's origin corner. Both then displace nodes per step.
//!
//! Step displacement comes in two flavours: the default `Drift` rule adds
//! `s·u` per axis with u uniform in [0, 1), a net drift toward +x,+y;
//! `Symmetric` adds `s·(u − 1/2)`, zero mean. Boundary handling is
//! selectable because no single policy is canonical: `Reflect` folds
//! overshoot back inside, `Clamp` projects onto the wall, `Unbounded`
//! leaves proposals untouched.
//!
//! Draw order within a step is per node (x then y), nodes in id order;
//! inactive nodes consume no draws. RWM placement draws x then y per node
//! in id order. Together with the schedule draws this pins the entire
//! stream layout of a run, which is what makes traces bit-reproducible.

use crate::queueing::{build_schedule, ArrivalSchedule};
use crate::scenario::{ModelKind, ScenarioConfig};
use crate::stochastic::RandomStream;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("area dimensions must be strictly positive, got {width} x {height}")]
    InvalidArea { width: f64, height: f64 },
    #[error("snapshot step {step} exceeds the run's step count {steps}")]
    SnapshotBeyondSteps { step: u64, steps: u64 },
    #[error("model qmm requires a {0} rate")]
    MissingRate(&'static str),
    #[error(transparent)]
    Queueing(#[from] crate::queueing::Error),
}

/// A position in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

/// Rectangular simulation area anchored at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Area {
    width: f64,
    height: f64,
}

impl Area {
    pub fn new(width: f64, height: f64) -> Result<Self, Error> {
        if width > 0.0 && height > 0.0 && width.is_finite() && height.is_finite() {
            Ok(Self { width, height })
        } else {
            Err(Error::InvalidArea { width, height })
        }
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn height(&self) -> f64 {
        self.height
    }
}

/// One mobile node: position plus the queueing times that gate it.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeState {
    pub id: u64,
    pub position: Point,
    pub arrival_time: f64,
    pub departure_time: f64,
    pub active: bool,
}

/// Positions of the active nodes at one named step.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub step: u64,
    pub positions: Vec<(u64, Point)>,
}

/// Per-axis step displacement rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepModel {
    /// `s·u` per component, u uniform in [0, 1): net drift toward +x,+y.
    Drift,
    /// `s·(u − 1/2)` per component: zero-mean displacement.
    Symmetric,
}

impl FromStr for StepModel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "drift" => Ok(StepModel::Drift),
            "symmetric" => Ok(StepModel::Symmetric),
            other => Err(format!(
                "unknown step model `{other}` (expected drift | symmetric)"
            )),
        }
    }
}

impl fmt::Display for StepModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepModel::Drift => "drift",
            StepModel::Symmetric => "symmetric",
        })
    }
}

/// What happens to a proposed position that leaves the area.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryPolicy {
    /// Fold the overshoot back inside; positions stay in-area.
    Reflect,
    /// Project onto the nearest wall; positions stay in-area.
    Clamp,
    /// Never touch a proposal; positions may leave the area.
    Unbounded,
}

impl FromStr for BoundaryPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "reflect" => Ok(BoundaryPolicy::Reflect),
            "clamp" => Ok(BoundaryPolicy::Clamp),
            "unbounded" => Ok(BoundaryPolicy::Unbounded),
            other => Err(format!(
                "unknown boundary policy `{other}` (expected reflect | clamp | unbounded)"
            )),
        }
    }
}

impl fmt::Display for BoundaryPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundaryPolicy::Reflect => "reflect",
            BoundaryPolicy::Clamp => "clamp",
            BoundaryPolicy::Unbounded => "unbounded",
        })
    }
}

/// One row of a trace: where node `id` stood after `step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord {
    pub step: u64,
    pub id: u64,
    pub x: f64,
    pub y: f64,
}

/// Ordered (step, node, position) records for an entire run, steps
/// ascending, ids ascending within a step.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Trace {
    records: Vec<TraceRecord>,
}

impl Trace {
    pub fn records(&self) -> &[TraceRecord] {
        &self.records
    }

    pub fn push(&mut self, record: TraceRecord) {
        self.records.push(record);
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// Everything one mobility run produces. `schedule` is present for QMM
/// runs so downstream metrics need not re-derive it.
#[derive(Debug, Clone)]
pub struct MobilityRun {
    pub trace: Trace,
    pub snapshots: Vec<Snapshot>,
    pub schedule: Option<ArrivalSchedule>,
}

/// QMM initial layout: node i is placed at (arrival, departure). The time
/// schedule literally becomes geometry, one time unit per meter, so every
/// node starts strictly above the diagonal.
pub fn initial_placement_qmm(schedule: &ArrivalSchedule) -> Vec<NodeState> {
    schedule
        .arrivals()
        .iter()
        .zip(schedule.departures())
        .enumerate()
        .map(|(i, (&arrival, &departure))| NodeState {
            id: i as u64,
            position: Point {
                x: arrival,
                y: departure,
            },
            arrival_time: arrival,
            departure_time: departure,
            active: true,
        })
        .collect()
}

/// RWM initial layout: uniform in [0,1) x [0,1), the common-source corner
/// of the area. Draw order: x then y per node, ids ascending.
pub fn initial_placement_rwm(n: usize, stream: &mut RandomStream) -> Vec<NodeState> {
    (0..n)
        .map(|i| {
            let x = stream.next_uniform();
            let y = stream.next_uniform();
            NodeState {
                id: i as u64,
                position: Point { x, y },
                arrival_time: 0.0,
                departure_time: f64::INFINITY,
                active: true,
            }
        })
        .collect()
}

/// Displace every active node per the step model, then confine per axis
/// with the boundary policy. Inactive nodes are untouched and consume no
/// draws.
pub fn mobility_step(
    nodes: &mut [NodeState],
    speed: f64,
    stream: &mut RandomStream,
    model: StepModel,
    boundary: BoundaryPolicy,
    area: &Area,
) {
    for node in nodes.iter_mut() {
        if !node.active {
            continue;
        }
        let dx = displacement(stream.next_uniform(), speed, model);
        let dy = displacement(stream.next_uniform(), speed, model);
        node.position.x = confine(node.position.x + dx, area.width, boundary);
        node.position.y = confine(node.position.y + dy, area.height, boundary);
    }
}

fn displacement(u: f64, speed: f64, model: StepModel) -> f64 {
    match model {
        StepModel::Drift => speed * u,
        StepModel::Symmetric => speed * (u - 0.5),
    }
}

fn confine(proposed: f64, limit: f64, policy: BoundaryPolicy) -> f64 {
    match policy {
        BoundaryPolicy::Unbounded => proposed,
        BoundaryPolicy::Clamp => proposed.clamp(0.0, limit),
        BoundaryPolicy::Reflect => reflect(proposed, limit),
    }
}

// Triangle-wave fold of the real line onto [0, limit]; handles arbitrary
// overshoot, not just a single boundary crossing.
fn reflect(proposed: f64, limit: f64) -> f64 {
    let period = 2.0 * limit;
    let mut m = proposed % period;
    if m < 0.0 {
        m += period;
    }
    if m > limit {
        period - m
    } else {
        m
    }
}

/// Recompute the active flags for a step. Ungated runs keep every node
/// active (all n nodes move at every step); gated runs activate a node
/// exactly while `arrival <= step·time_per_step < departure`.
pub fn set_activity(nodes: &mut [NodeState], step: u64, time_per_step: f64, gated: bool) {
    if !gated {
        for node in nodes.iter_mut() {
            node.active = true;
        }
        return;
    }
    let now = step as f64 * time_per_step;
    for node in nodes.iter_mut() {
        node.active = node.arrival_time <= now && now < node.departure_time;
    }
}

/// Execute a full run: place nodes (QMM schedule or RWM uniform seed),
/// then iterate `mobility_step` for the configured step count. Step 0 of
/// the trace is the initial placement; snapshots are captured at the
/// configured step indices after that step's movement.
///
/// Fully deterministic given (config, stream seed). QMM initial positions
/// are the raw schedule times and may exceed the area until the first
/// confined step.
pub fn run_mobility(
    config: &ScenarioConfig,
    stream: &mut RandomStream,
) -> Result<MobilityRun, Error> {
    for &s in &config.snapshot_steps {
        if s > config.steps {
            return Err(Error::SnapshotBeyondSteps {
                step: s,
                steps: config.steps,
            });
        }
    }
    let (mut nodes, schedule) = match config.model {
        ModelKind::Qmm => {
            let lambda = config.lambda.ok_or(Error::MissingRate("lambda"))?;
            let mu = config.mu.ok_or(Error::MissingRate("mu"))?;
            let schedule = build_schedule(config.n, lambda, mu, stream)?;
            (initial_placement_qmm(&schedule), Some(schedule))
        }
        ModelKind::Rwm => (initial_placement_rwm(config.n, stream), None),
    };

    let mut trace = Trace::default();
    let mut snapshots = Vec::new();
    set_activity(&mut nodes, 0, config.time_per_step, config.gated);
    record_step(&mut trace, 0, &nodes);
    capture_snapshot(&mut snapshots, 0, config, &nodes);
    for step in 1..=config.steps {
        set_activity(&mut nodes, step, config.time_per_step, config.gated);
        mobility_step(
            &mut nodes,
            config.speed,
            stream,
            config.step_model,
            config.boundary,
            &config.area,
        );
        record_step(&mut trace, step, &nodes);
        capture_snapshot(&mut snapshots, step, config, &nodes);
    }
    Ok(MobilityRun {
        trace,
        snapshots,
        schedule,
    })
}

fn record_step(trace: &mut Trace, step: u64, nodes: &[NodeState]) {
    for node in nodes {
        if node.active {
            trace.push(TraceRecord {
                step,
                id: node.id,
                x: node.position.x,
                y: node.position.y,
            });
        }
    }
}

fn capture_snapshot(
    snapshots: &mut Vec<Snapshot>,
    step: u64,
    config: &ScenarioConfig,
    nodes: &[NodeState],
) {
    if config.snapshot_steps.contains(&step) {
        snapshots.push(Snapshot {
            step,
            positions: nodes
                .iter()
                .filter(|n| n.active)
                .map(|n| (n.id, n.position))
                .collect(),
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::queueing::ArrivalSchedule;
    use crate::scenario::parse_config;
    use crate::stochastic::RateParam;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn reflect_always_lands_inside(v in -1e6f64..1e6, limit in 1e-3f64..1e4) {
            let folded = reflect(v, limit);
            prop_assert!((0.0..=limit).contains(&folded), "reflect({v}, {limit}) = {folded}");
        }
    }

    fn hand_schedule() -> ArrivalSchedule {
        ArrivalSchedule::new(
            vec![1.0, 2.0, 3.0],
            vec![1.0, 3.0, 6.0],
            vec![2.0, 2.0, 2.0],
            vec![3.0, 5.0, 8.0],
        )
        .unwrap()
    }

    #[test]
    fn qmm_placement_maps_times_to_coordinates() {
        let nodes = initial_placement_qmm(&hand_schedule());
        let got: Vec<(f64, f64)> = nodes.iter().map(|n| (n.position.x, n.position.y)).collect();
        assert_eq!(got, vec![(1.0, 3.0), (3.0, 5.0), (6.0, 8.0)]);
        assert!(nodes.iter().all(|n| n.active));
        assert_eq!(nodes[2].arrival_time, 6.0);
        assert_eq!(nodes[2].departure_time, 8.0);
    }

    #[test]
    fn qmm_placement_sits_above_the_diagonal() {
        let mut stream = RandomStream::new(4);
        let schedule = crate::queueing::build_schedule(
            500,
            RateParam::new(0.5).unwrap(),
            RateParam::new(1.0).unwrap(),
            &mut stream,
        )
        .unwrap();
        for node in initial_placement_qmm(&schedule) {
            assert!(node.position.y > node.position.x);
        }
    }

    #[test]
    fn qmm_placement_empty_schedule() {
        let empty = ArrivalSchedule::new(vec![], vec![], vec![], vec![]).unwrap();
        assert!(initial_placement_qmm(&empty).is_empty());
    }

    #[test]
    fn rwm_placement_in_unit_square_and_deterministic() {
        let mut a = RandomStream::new(9);
        let mut b = RandomStream::new(9);
        let na = initial_placement_rwm(1000, &mut a);
        let nb = initial_placement_rwm(1000, &mut b);
        assert_eq!(na, nb);
        for node in &na {
            assert!((0.0..1.0).contains(&node.position.x));
            assert!((0.0..1.0).contains(&node.position.y));
            assert_eq!(node.arrival_time, 0.0);
            assert_eq!(node.departure_time, f64::INFINITY);
        }
    }

    #[test]
    fn rwm_centroid_approaches_square_center() {
        let mut stream = RandomStream::new(123);
        let nodes = initial_placement_rwm(100_000, &mut stream);
        let n = nodes.len() as f64;
        let cx: f64 = nodes.iter().map(|p| p.position.x).sum::<f64>() / n;
        let cy: f64 = nodes.iter().map(|p| p.position.y).sum::<f64>() / n;
        assert!((cx - 0.5).abs() < 0.005, "cx = {cx}");
        assert!((cy - 0.5).abs() < 0.005, "cy = {cy}");
    }

    #[test]
    fn displacement_rules() {
        // Forced draws through the update rule.
        assert_eq!(displacement(0.5, 1.0, StepModel::Drift), 0.5);
        assert_eq!(displacement(0.25, 1.0, StepModel::Drift), 0.25);
        assert_eq!(displacement(0.25, 2.0, StepModel::Symmetric), -0.5);
        assert_eq!(displacement(0.75, 2.0, StepModel::Symmetric), 0.5);
    }

    #[test]
    fn displacement_component_ranges() {
        let mut stream = RandomStream::new(17);
        for _ in 0..5000 {
            let u = stream.next_uniform();
            let literal = displacement(u, 1.5, StepModel::Drift);
            assert!((0.0..1.5).contains(&literal));
            let symmetric = displacement(u, 1.5, StepModel::Symmetric);
            assert!((-0.75..0.75).contains(&symmetric));
        }
    }

    #[test]
    fn reflect_folds_overshoot() {
        // 299.8 + 0.5 proposed at a 300 m wall folds to 299.7.
        assert!((reflect(300.3, 300.0) - 299.7).abs() < 1e-12);
        assert_eq!(reflect(150.0, 300.0), 150.0);
        assert!((reflect(-0.25, 300.0) - 0.25).abs() < 1e-12);
        // Multiple folds.
        assert!((reflect(650.0, 300.0) - 50.0).abs() < 1e-12);
        assert!((reflect(-650.0, 300.0) - 50.0).abs() < 1e-12);
    }

    #[test]
    fn confine_policies() {
        assert_eq!(confine(310.0, 300.0, BoundaryPolicy::Unbounded), 310.0);
        assert_eq!(confine(310.0, 300.0, BoundaryPolicy::Clamp), 300.0);
        assert_eq!(confine(-5.0, 300.0, BoundaryPolicy::Clamp), 0.0);
        assert!((confine(310.0, 300.0, BoundaryPolicy::Reflect) - 290.0).abs() < 1e-12);
    }

    #[test]
    fn step_applies_the_drawn_displacements_directly() {
        // From (0, 0) with s = 1, drift rule, unbounded: the new position
        // is exactly the next (x, y) uniform pair.
        let area = Area::new(300.0, 300.0).unwrap();
        let mut stream = RandomStream::new(42);
        let mut expected = stream.clone();
        let mut nodes = vec![NodeState {
            id: 0,
            position: Point { x: 0.0, y: 0.0 },
            arrival_time: 0.0,
            departure_time: f64::INFINITY,
            active: true,
        }];
        mobility_step(
            &mut nodes,
            1.0,
            &mut stream,
            StepModel::Drift,
            BoundaryPolicy::Unbounded,
            &area,
        );
        assert_eq!(nodes[0].position.x, expected.next_uniform());
        assert_eq!(nodes[0].position.y, expected.next_uniform());
    }

    #[test]
    fn zero_speed_leaves_positions_unchanged() {
        let area = Area::new(300.0, 300.0).unwrap();
        let mut stream = RandomStream::new(2);
        let mut nodes = initial_placement_rwm(20, &mut stream);
        let before = nodes.clone();
        mobility_step(
            &mut nodes,
            0.0,
            &mut stream,
            StepModel::Drift,
            BoundaryPolicy::Reflect,
            &area,
        );
        assert_eq!(nodes, before);
    }

    #[test]
    fn inactive_nodes_do_not_move_or_draw() {
        let area = Area::new(10.0, 10.0).unwrap();
        let mut stream = RandomStream::new(6);
        let mut nodes = initial_placement_rwm(4, &mut stream);
        nodes[1].active = false;
        nodes[3].active = false;
        let frozen = (nodes[1].clone(), nodes[3].clone());

        // A parallel stream consuming two draws per *active* node must stay
        // in lockstep with the real step.
        let mut shadow = stream.clone();
        mobility_step(
            &mut nodes,
            1.0,
            &mut stream,
            StepModel::Drift,
            BoundaryPolicy::Unbounded,
            &area,
        );
        for _ in 0..4 {
            shadow.next_uniform();
        }
        assert_eq!(stream.next_u64(), shadow.next_u64());
        assert_eq!(nodes[1], frozen.0);
        assert_eq!(nodes[3], frozen.1);
    }

    #[test]
    fn activity_gating() {
        let mut nodes = vec![NodeState {
            id: 0,
            position: Point { x: 0.0, y: 0.0 },
            arrival_time: 1.0,
            departure_time: 3.0,
            active: false,
        }];
        set_activity(&mut nodes, 5, 1.0, false);
        assert!(nodes[0].active);
        set_activity(&mut nodes, 2, 1.0, true);
        assert!(nodes[0].active, "1 <= 2 < 3 must be active");
        set_activity(&mut nodes, 3, 1.0, true);
        assert!(!nodes[0].active, "3 < 3 fails, node has departed");
        set_activity(&mut nodes, 0, 1.0, true);
        assert!(!nodes[0].active, "not yet arrived");
    }

    fn qmm_config(extra: &str) -> ScenarioConfig {
        parse_config(&format!(
            "model = qmm\nn = 50\nlambda = 0.5\nmu = 1.0\nspeed = 0.5\nsteps = 100\n{extra}"
        ))
        .unwrap()
    }

    #[test]
    fn run_with_zero_steps_holds_only_the_placement() {
        let mut config = qmm_config("");
        config.steps = 0;
        config.snapshot_steps = vec![];
        let mut stream = RandomStream::new(1);
        let run = run_mobility(&config, &mut stream).unwrap();
        assert_eq!(run.trace.len(), 50);
        assert!(run.trace.records().iter().all(|r| r.step == 0));
        assert!(run.snapshots.is_empty());

        config.snapshot_steps = vec![0];
        let mut stream = RandomStream::new(1);
        let run = run_mobility(&config, &mut stream).unwrap();
        assert_eq!(run.snapshots.len(), 1);
        assert_eq!(run.snapshots[0].step, 0);
        assert_eq!(run.snapshots[0].positions.len(), 50);
    }

    #[test]
    fn identical_seed_identical_trace() {
        let config = qmm_config("snapshot_steps = 50,100\n");
        let mut a = RandomStream::new(33);
        let mut b = RandomStream::new(33);
        let ra = run_mobility(&config, &mut a).unwrap();
        let rb = run_mobility(&config, &mut b).unwrap();
        assert_eq!(ra.trace, rb.trace);
        assert_eq!(ra.snapshots, rb.snapshots);
    }

    #[test]
    fn snapshot_beyond_steps_is_rejected() {
        let mut config = qmm_config("");
        config.snapshot_steps = vec![101];
        let mut stream = RandomStream::new(1);
        assert!(matches!(
            run_mobility(&config, &mut stream),
            Err(Error::SnapshotBeyondSteps {
                step: 101,
                steps: 100
            })
        ));
    }

    #[test]
    fn confined_runs_stay_in_area_from_step_one() {
        for boundary in [BoundaryPolicy::Reflect, BoundaryPolicy::Clamp] {
            let mut config = qmm_config("");
            config.boundary = boundary;
            config.speed = 3.0;
            config.step_model = StepModel::Symmetric;
            let mut stream = RandomStream::new(14);
            let run = run_mobility(&config, &mut stream).unwrap();
            for r in run.trace.records().iter().filter(|r| r.step >= 1) {
                assert!((0.0..=300.0).contains(&r.x), "x out of area: {r:?}");
                assert!((0.0..=300.0).contains(&r.y), "y out of area: {r:?}");
            }
        }
    }

    #[test]
    fn qmm_initial_line_correlation() {
        // Arrival span (~ n/lambda = 400) dwarfs the sojourn spread, so the
        // initial cloud hugs the diagonal.
        let config =
            parse_config("model = qmm\nn = 200\nlambda = 0.5\nmu = 1.0\nspeed = 0.5\nsteps = 0\n")
                .unwrap();
        let mut stream = RandomStream::new(0);
        let run = run_mobility(&config, &mut stream).unwrap();
        let xs: Vec<f64> = run.trace.records().iter().map(|r| r.x).collect();
        let ys: Vec<f64> = run.trace.records().iter().map(|r| r.y).collect();
        let n = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / n;
        let my = ys.iter().sum::<f64>() / n;
        let mut cov = 0.0;
        let mut vx = 0.0;
        let mut vy = 0.0;
        for (x, y) in xs.iter().zip(&ys) {
            cov += (x - mx) * (y - my);
            vx += (x - mx) * (x - mx);
            vy += (y - my) * (y - my);
        }
        let r = cov / (vx.sqrt() * vy.sqrt());
        assert!(r > 0.99, "pearson r = {r}");
    }

    #[test]
    fn symmetric_unbounded_centroid_stays_near_start() {
        // Zero-mean steps: after k steps the centroid displacement norm is
        // bounded by 15 * s * sqrt(k / n) / sqrt(12) (three-sigma with wide
        // margin).
        let config = parse_config(
            "model = rwm\nn = 100\nspeed = 0.5\nsteps = 10000\nboundary = unbounded\nstep_model = symmetric\n",
        )
        .unwrap();
        let mut stream = RandomStream::new(21);
        let run = run_mobility(&config, &mut stream).unwrap();
        let records = run.trace.records();
        let n = 100;
        let k = 10_000f64;
        let first: Vec<&TraceRecord> = records.iter().take(n).collect();
        let last: Vec<&TraceRecord> = records.iter().skip(records.len() - n).collect();
        let cx0 = first.iter().map(|r| r.x).sum::<f64>() / n as f64;
        let cy0 = first.iter().map(|r| r.y).sum::<f64>() / n as f64;
        let cx1 = last.iter().map(|r| r.x).sum::<f64>() / n as f64;
        let cy1 = last.iter().map(|r| r.y).sum::<f64>() / n as f64;
        let norm = ((cx1 - cx0).powi(2) + (cy1 - cy0).powi(2)).sqrt();
        let bound = 15.0 * 0.5 * (k / n as f64).sqrt() / 12f64.sqrt();
        assert!(norm < bound, "norm {norm} vs bound {bound}");
    }
}
