//! Quantified restatements of the qualitative claims: spatial uniformity of
//! a snapshot via a chi-square statistic over an occupancy grid, centroid
//! and neighbor density, and goodness of fit of observed arrival counts
//! against the Poisson law.

use crate::mobility::{Area, Snapshot};
use crate::stochastic::{poisson_pmf, RateParam};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("grid must have at least one row and one column, got {rows} x {cols}")]
    EmptyGrid { rows: usize, cols: usize },
    #[error("position ({x}, {y}) lies outside the {width} x {height} area")]
    OutOfArea {
        x: f64,
        y: f64,
        width: f64,
        height: f64,
    },
    #[error("chi-square needs a grid with at least one point")]
    EmptyCounts,
    #[error("centroid of an empty snapshot is undefined")]
    EmptySnapshot,
    #[error("window must be strictly positive, got {0}")]
    NonPositiveWindow(f64),
    #[error("horizon must be strictly positive, got {0}")]
    NonPositiveHorizon(f64),
    #[error("histogram must be nonempty")]
    EmptyHistogram,
    #[error(transparent)]
    Stochastic(#[from] crate::stochastic::Error),
}

/// Cell-count discretization of a snapshot, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct OccupancyGrid {
    rows: usize,
    cols: usize,
    counts: Vec<u64>,
    total: u64,
}

impl OccupancyGrid {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cells(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count_at(&self, row: usize, col: usize) -> u64 {
        self.counts[row * self.cols + col]
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}

/// Scalar summary of one snapshot's spatial structure.
#[derive(Debug, Clone, PartialEq)]
pub struct UniformityReport {
    pub chi_square: f64,
    pub cells: usize,
    pub centroid: (f64, f64),
    pub mean_neighbors: f64,
}

/// Result of comparing an arrival-count histogram to the Poisson law.
///
/// `degrees_of_freedom` is the pooled category count minus one; any
/// significance test needs it alongside the statistic.
#[derive(Debug, Clone, PartialEq)]
pub struct PoissonFit {
    pub chi_square: f64,
    pub total_variation: f64,
    pub degrees_of_freedom: usize,
}

/// Bin a snapshot into a rows x cols grid over the area. Cells are
/// half-open with the final row and column closed, so points exactly on
/// the far boundary are counted.
pub fn occupancy_grid(
    snapshot: &Snapshot,
    area: &Area,
    rows: usize,
    cols: usize,
) -> Result<OccupancyGrid, Error> {
    if rows == 0 || cols == 0 {
        return Err(Error::EmptyGrid { rows, cols });
    }
    let mut counts = vec![0u64; rows * cols];
    for &(_, p) in &snapshot.positions {
        if !(p.x >= 0.0 && p.x <= area.width() && p.y >= 0.0 && p.y <= area.height()) {
            return Err(Error::OutOfArea {
                x: p.x,
                y: p.y,
                width: area.width(),
                height: area.height(),
            });
        }
        let col = (((p.x / area.width()) * cols as f64) as usize).min(cols - 1);
        let row = (((p.y / area.height()) * rows as f64) as usize).min(rows - 1);
        counts[row * cols + col] += 1;
    }
    let total = counts.iter().sum();
    Ok(OccupancyGrid {
        rows,
        cols,
        counts,
        total,
    })
}

/// Pearson chi-square against the uniform expectation `total / cells`.
/// Zero exactly when every cell holds the same count.
pub fn chi_square_uniformity(grid: &OccupancyGrid) -> Result<f64, Error> {
    if grid.total == 0 {
        return Err(Error::EmptyCounts);
    }
    let expected = grid.total as f64 / grid.cells() as f64;
    Ok(grid
        .counts
        .iter()
        .map(|&o| {
            let d = o as f64 - expected;
            d * d / expected
        })
        .sum())
}

/// Arithmetic mean of the snapshot positions.
pub fn centroid(snapshot: &Snapshot) -> Result<(f64, f64), Error> {
    if snapshot.positions.is_empty() {
        return Err(Error::EmptySnapshot);
    }
    let n = snapshot.positions.len() as f64;
    let (sx, sy) = snapshot
        .positions
        .iter()
        .fold((0.0, 0.0), |(sx, sy), &(_, p)| (sx + p.x, sy + p.y));
    Ok((sx / n, sy / n))
}

/// Average over nodes of the number of other nodes within `radius`
/// (inclusive). Zero for snapshots with fewer than two nodes.
pub fn mean_neighbor_count(snapshot: &Snapshot, radius: f64) -> f64 {
    let pts = &snapshot.positions;
    if pts.is_empty() {
        return 0.0;
    }
    let mut pairs = 0u64;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let dx = pts[i].1.x - pts[j].1.x;
            let dy = pts[i].1.y - pts[j].1.y;
            if (dx * dx + dy * dy).sqrt() <= radius {
                pairs += 1;
            }
        }
    }
    // each qualifying ordered pair contributes once to each endpoint
    2.0 * pairs as f64 / pts.len() as f64
}

/// Count arrivals into windows `[k·window, (k+1)·window)` covering
/// `[0, horizon)`. Arrivals at or beyond the horizon are ignored, so the
/// counts always sum to the number of arrivals before it.
pub fn arrival_histogram(arrivals: &[f64], window: f64, horizon: f64) -> Result<Vec<u64>, Error> {
    if !(window > 0.0) {
        return Err(Error::NonPositiveWindow(window));
    }
    if !(horizon > 0.0) {
        return Err(Error::NonPositiveHorizon(horizon));
    }
    let bins = (horizon / window).ceil() as usize;
    let mut counts = vec![0u64; bins.max(1)];
    for &a in arrivals {
        if a >= 0.0 && a < horizon {
            let k = ((a / window) as usize).min(bins - 1);
            counts[k] += 1;
        }
    }
    Ok(counts)
}

/// Compare the per-window count distribution against the Poisson pmf with
/// mean λ·window.
///
/// Chi-square is computed over pooled categories: the count support plus
/// an open tail, merged inward from both ends until every expected count
/// is at least 5. Total variation is ½ Σ |empirical − theoretical| over
/// the full support (the unobserved tail mass counts in full).
pub fn compare_to_poisson(
    histogram: &[u64],
    rate: RateParam,
    window: f64,
) -> Result<PoissonFit, Error> {
    if histogram.is_empty() {
        return Err(Error::EmptyHistogram);
    }
    if !(window > 0.0) {
        return Err(Error::NonPositiveWindow(window));
    }
    let windows = histogram.len() as f64;
    let max_count = *histogram.iter().max().expect("nonempty") as usize;

    let mut observed = vec![0u64; max_count + 1];
    for &c in histogram {
        observed[c as usize] += 1;
    }
    let mut probs = Vec::with_capacity(max_count + 1);
    for n in 0..=max_count as u64 {
        probs.push(poisson_pmf(n, rate, window)?);
    }
    let tail_prob = (1.0 - probs.iter().sum::<f64>()).max(0.0);

    let covered: f64 = probs.iter().sum();
    let total_variation = 0.5
        * (observed
            .iter()
            .zip(&probs)
            .map(|(&o, &p)| (o as f64 / windows - p).abs())
            .sum::<f64>()
            + tail_prob);
    debug_assert!(covered <= 1.0 + 1e-12);

    // Categories: one per count value, plus the open tail beyond the
    // largest observed count (observed there is zero by construction).
    let mut categories: Vec<(f64, f64)> = observed
        .iter()
        .zip(&probs)
        .map(|(&o, &p)| (o as f64, windows * p))
        .collect();
    categories.push((0.0, windows * tail_prob));

    // Pool from the top, then from the bottom, until expected >= 5.
    while categories.len() > 1 && categories.last().expect("nonempty").1 < 5.0 {
        let (o, e) = categories.pop().expect("nonempty");
        let last = categories.last_mut().expect("nonempty");
        last.0 += o;
        last.1 += e;
    }
    while categories.len() > 1 && categories[0].1 < 5.0 {
        let (o, e) = categories.remove(0);
        categories[0].0 += o;
        categories[0].1 += e;
    }

    let chi_square = categories
        .iter()
        .map(|&(o, e)| {
            let d = o - e;
            d * d / e
        })
        .sum();
    Ok(PoissonFit {
        chi_square,
        total_variation,
        degrees_of_freedom: categories.len() - 1,
    })
}

/// Bundle the per-snapshot metrics into one report.
pub fn uniformity_report(
    snapshot: &Snapshot,
    area: &Area,
    rows: usize,
    cols: usize,
    neighbor_radius: f64,
) -> Result<UniformityReport, Error> {
    let grid = occupancy_grid(snapshot, area, rows, cols)?;
    Ok(UniformityReport {
        chi_square: chi_square_uniformity(&grid)?,
        cells: grid.cells(),
        centroid: centroid(snapshot)?,
        mean_neighbors: mean_neighbor_count(snapshot, neighbor_radius),
    })
}
