//! Single-server FCFS queue schedule: exponential inter-arrivals are
//! cumulated into arrival instants, service times are drawn at the service
//! rate, and departures follow the max-recursion
//! `y(i) = max(x(i) + st(i), y(i-1) + st(i))`.
//!
//! The draw order is fixed and documented: all inter-arrivals first, then
//! all service times, each consumed sequentially from one stream. Derived
//! queue-length and waiting-time processes are pure functions over the
//! finished schedule.

use crate::stochastic::{sample_exponential, RandomStream, RateParam};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("schedule lists must share one length (inter {inter}, arrivals {arrivals}, services {services}, departures {departures})")]
    UnequalLists {
        inter: usize,
        arrivals: usize,
        services: usize,
        departures: usize,
    },
    #[error("arrivals must be strictly increasing (violated at index {0})")]
    NonMonotoneArrivals(usize),
    #[error("departures must be strictly increasing (violated at index {0})")]
    NonMonotoneDepartures(usize),
    #[error("departure {0} precedes its arrival plus service time")]
    EarlyDeparture(usize),
    #[error("inter-arrival times must be strictly positive (index {index}, value {value})")]
    NonPositiveInterArrival { index: usize, value: f64 },
    #[error("arrivals and services differ in length ({arrivals} vs {services})")]
    ArrivalServiceMismatch { arrivals: usize, services: usize },
    #[error("horizon must be strictly positive, got {0}")]
    NonPositiveHorizon(f64),
}

/// Per-node inter-arrival, arrival, service, and departure times of one
/// M/M/1 run. Immutable once built; the queueing backbone of the queueing
/// mobility model.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrivalSchedule {
    inter_arrivals: Vec<f64>,
    arrivals: Vec<f64>,
    services: Vec<f64>,
    departures: Vec<f64>,
}

impl ArrivalSchedule {
    /// Assemble a schedule, checking the structural invariants: equal list
    /// lengths, strictly increasing arrivals and departures, and
    /// `departures[i] >= arrivals[i] + services[i]` for every node.
    pub fn new(
        inter_arrivals: Vec<f64>,
        arrivals: Vec<f64>,
        services: Vec<f64>,
        departures: Vec<f64>,
    ) -> Result<Self, Error> {
        let n = inter_arrivals.len();
        if arrivals.len() != n || services.len() != n || departures.len() != n {
            return Err(Error::UnequalLists {
                inter: n,
                arrivals: arrivals.len(),
                services: services.len(),
                departures: departures.len(),
            });
        }
        for i in 1..n {
            if !(arrivals[i] > arrivals[i - 1]) {
                return Err(Error::NonMonotoneArrivals(i));
            }
            if !(departures[i] > departures[i - 1]) {
                return Err(Error::NonMonotoneDepartures(i));
            }
        }
        for i in 0..n {
            if !(departures[i] >= arrivals[i] + services[i]) {
                return Err(Error::EarlyDeparture(i));
            }
        }
        Ok(Self {
            inter_arrivals,
            arrivals,
            services,
            departures,
        })
    }

    pub fn len(&self) -> usize {
        self.arrivals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrivals.is_empty()
    }

    pub fn inter_arrivals(&self) -> &[f64] {
        &self.inter_arrivals
    }

    pub fn arrivals(&self) -> &[f64] {
        &self.arrivals
    }

    pub fn services(&self) -> &[f64] {
        &self.services
    }

    pub fn departures(&self) -> &[f64] {
        &self.departures
    }
}

/// One sampled point of the queue-length process.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QueueObservation {
    pub time: f64,
    pub count: usize,
}

/// `n` exponential inter-arrival draws at the arrival rate.
pub fn generate_interarrivals(n: usize, rate: RateParam, stream: &mut RandomStream) -> Vec<f64> {
    (0..n).map(|_| sample_exponential(stream, rate)).collect()
}

/// Prefix sums of inter-arrival gaps: `x(i) = x(i-1) + Iat(i)`.
pub fn arrival_times(inter_arrivals: &[f64]) -> Result<Vec<f64>, Error> {
    let mut out = Vec::with_capacity(inter_arrivals.len());
    let mut acc = 0.0;
    for (index, &gap) in inter_arrivals.iter().enumerate() {
        if !(gap > 0.0) {
            return Err(Error::NonPositiveInterArrival { index, value: gap });
        }
        acc += gap;
        out.push(acc);
    }
    Ok(out)
}

/// `n` exponential service-time draws at the service rate.
pub fn generate_service_times(n: usize, rate: RateParam, stream: &mut RandomStream) -> Vec<f64> {
    (0..n).map(|_| sample_exponential(stream, rate)).collect()
}

/// FCFS single-server departure recursion:
/// `y(1) = x(1) + st(1)`, `y(i) = max(x(i) + st(i), y(i-1) + st(i))`.
pub fn departure_times(arrivals: &[f64], services: &[f64]) -> Result<Vec<f64>, Error> {
    if arrivals.len() != services.len() {
        return Err(Error::ArrivalServiceMismatch {
            arrivals: arrivals.len(),
            services: services.len(),
        });
    }
    let mut out = Vec::with_capacity(arrivals.len());
    let mut prev = f64::NEG_INFINITY;
    for (&x, &st) in arrivals.iter().zip(services) {
        let y = (x + st).max(prev + st);
        out.push(y);
        prev = y;
    }
    Ok(out)
}

/// Build a complete schedule: inter-arrivals at λ, cumulate, service times
/// at μ, then the departure recursion, in that draw order.
pub fn build_schedule(
    n: usize,
    lambda: RateParam,
    mu: RateParam,
    stream: &mut RandomStream,
) -> Result<ArrivalSchedule, Error> {
    let inter = generate_interarrivals(n, lambda, stream);
    let arrivals = arrival_times(&inter)?;
    let services = generate_service_times(n, mu, stream);
    let departures = departure_times(&arrivals, &services)?;
    ArrivalSchedule::new(inter, arrivals, services, departures)
}

/// Number of nodes in the system at time `t`: arrivals at or before `t`
/// that have not yet departed.
pub fn number_in_system(schedule: &ArrivalSchedule, t: f64) -> usize {
    let arrived = schedule.arrivals().partition_point(|&x| x <= t);
    let departed = schedule.departures().partition_point(|&y| y <= t);
    arrived - departed
}

pub fn observe(schedule: &ArrivalSchedule, t: f64) -> QueueObservation {
    QueueObservation {
        time: t,
        count: number_in_system(schedule, t),
    }
}

/// Time-average of the number in system over `[0, horizon]`, integrating
/// the piecewise-constant count exactly between event instants (no
/// sampling grid, hence no discretization error).
pub fn mean_number_in_system(schedule: &ArrivalSchedule, horizon: f64) -> Result<f64, Error> {
    if !(horizon > 0.0) {
        return Err(Error::NonPositiveHorizon(horizon));
    }
    let arrivals = schedule.arrivals();
    let departures = schedule.departures();
    let mut area = 0.0;
    let mut count = 0usize;
    let mut t_prev = 0.0;
    let (mut ai, mut di) = (0usize, 0usize);
    loop {
        let next_arrival = arrivals.get(ai).copied().unwrap_or(f64::INFINITY);
        let next_departure = departures.get(di).copied().unwrap_or(f64::INFINITY);
        let t_next = next_arrival.min(next_departure);
        if t_next >= horizon {
            area += count as f64 * (horizon - t_prev);
            break;
        }
        if t_next > t_prev {
            area += count as f64 * (t_next - t_prev);
            t_prev = t_next;
        }
        if next_arrival <= next_departure {
            count += 1;
            ai += 1;
        } else {
            count -= 1;
            di += 1;
        }
    }
    Ok(area / horizon)
}

/// Per-node time in system: departure minus arrival.
pub fn sojourn_times(schedule: &ArrivalSchedule) -> Vec<f64> {
    schedule
        .arrivals()
        .iter()
        .zip(schedule.departures())
        .map(|(&x, &y)| y - x)
        .collect()
}
