//! Shared helpers for the integration suites: an independent event-driven
//! FCFS single-server simulator (the oracle the departure recursion is
//! checked against) and small statistics utilities.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

#[derive(Debug, Clone, Copy, PartialEq)]
enum EventKind {
    // departures sort before arrivals at equal times so a freed server can
    // seat a simultaneous arrival
    Departure(usize),
    Arrival(usize),
}

#[derive(Debug, Clone, Copy)]
struct Event {
    time: f64,
    kind: EventKind,
}

impl PartialEq for Event {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Event {}

impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Event {
    fn cmp(&self, other: &Self) -> Ordering {
        // BinaryHeap is a max-heap; invert for earliest-first
        other
            .time
            .partial_cmp(&self.time)
            .expect("finite times")
            .then_with(|| {
                let rank = |k: EventKind| match k {
                    EventKind::Departure(_) => 0,
                    EventKind::Arrival(_) => 1,
                };
                rank(other.kind).cmp(&rank(self.kind))
            })
    }
}

/// Event-driven FCFS single-server simulation: a priority queue of
/// arrival/departure events, an explicit waiting line, and a busy flag.
/// Deliberately avoids the departure recursion so the two routes are
/// independent.
pub fn event_driven_fcfs_departures(arrivals: &[f64], services: &[f64]) -> Vec<f64> {
    assert_eq!(arrivals.len(), services.len());
    let mut heap: BinaryHeap<Event> = arrivals
        .iter()
        .enumerate()
        .map(|(i, &t)| Event {
            time: t,
            kind: EventKind::Arrival(i),
        })
        .collect();
    let mut waiting: VecDeque<usize> = VecDeque::new();
    let mut busy = false;
    let mut departures = vec![0.0; arrivals.len()];
    while let Some(event) = heap.pop() {
        match event.kind {
            EventKind::Arrival(i) => {
                if busy {
                    waiting.push_back(i);
                } else {
                    busy = true;
                    heap.push(Event {
                        time: event.time + services[i],
                        kind: EventKind::Departure(i),
                    });
                }
            }
            EventKind::Departure(i) => {
                departures[i] = event.time;
                if let Some(j) = waiting.pop_front() {
                    heap.push(Event {
                        time: event.time + services[j],
                        kind: EventKind::Departure(j),
                    });
                } else {
                    busy = false;
                }
            }
        }
    }
    departures
}

/// Two-sided Kolmogorov-Smirnov statistic of a sample against a cdf.
pub fn ks_statistic(samples: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
    samples.sort_by(|a, b| a.partial_cmp(b).expect("finite samples"));
    let n = samples.len() as f64;
    let mut sup = 0.0f64;
    for (i, &x) in samples.iter().enumerate() {
        let f = cdf(x);
        sup = sup.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
    }
    sup
}

/// Pearson correlation coefficient.
pub fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        cov += (x - mx) * (y - my);
        vx += (x - mx) * (x - mx);
        vy += (y - my) * (y - my);
    }
    cov / (vx.sqrt() * vy.sqrt())
}

pub fn median(mut values: Vec<f64>) -> f64 {
    assert!(!values.is_empty());
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid]
    } else {
        0.5 * (values[mid - 1] + values[mid])
    }
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}
