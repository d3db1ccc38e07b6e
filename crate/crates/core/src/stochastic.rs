//! Seeded pseudorandom streams and the Poisson / exponential distribution
//! family that drives every sampler in the simulator.
//!
//! All randomness flows through [`RandomStream`], a SplitMix64 generator.
//! SplitMix64 was picked because it is a published, trivially portable
//! algorithm: the same seed yields the same bit-exact sequence on every
//! platform and in every reimplementation, which is what makes traces
//! replayable. Arrival and service rates share one [`RateParam`] type since
//! the exponential sampling formula is identical for both.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("rate must be a strictly positive finite number, got {0}")]
    InvalidRate(f64),
    #[error("time must be strictly positive, got {0}")]
    NonPositiveTime(f64),
    #[error("time must be nonnegative, got {0}")]
    NegativeTime(f64),
}

/// Deterministic 64-bit pseudorandom stream (SplitMix64).
///
/// Two streams initialized with the same seed produce identical output
/// sequences. A stream is single-owner; use distinct seeds (or clones) for
/// concurrent work.
#[derive(Debug, Clone)]
pub struct RandomStream {
    state: u64,
    seed: u64,
}

impl RandomStream {
    pub fn new(seed: u64) -> Self {
        Self { state: seed, seed }
    }

    /// The seed this stream was initialized with.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Next raw 64-bit output of the SplitMix64 sequence.
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw in `[0, 1)` with 53-bit resolution.
    ///
    /// The top 53 bits are used so the result is always strictly below 1
    /// (a full-width division can round up to 1.0).
    pub fn next_uniform(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
        (self.next_u64() >> 11) as f64 * SCALE
    }
}

/// Strictly positive rate in events per unit time.
///
/// Covers both the arrival rate and the service rate; construction rejects
/// zero, negative, and non-finite values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateParam(f64);

impl RateParam {
    pub fn new(value: f64) -> Result<Self, Error> {
        if value > 0.0 && value.is_finite() {
            Ok(Self(value))
        } else {
            Err(Error::InvalidRate(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Poisson probability series `P(n)` for `n = 0..=n_max` at a fixed λ·t.
///
/// Entries are indexed contiguously from n = 0; this is the data series
/// behind the per-arrival-rate distribution curves.
#[derive(Debug, Clone, PartialEq)]
pub struct PmfCurve {
    rate_time_product: f64,
    entries: Vec<(u64, f64)>,
}

impl PmfCurve {
    pub fn rate_time_product(&self) -> f64 {
        self.rate_time_product
    }

    pub fn entries(&self) -> &[(u64, f64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of all entry probabilities.
    pub fn sum(&self) -> f64 {
        self.entries.iter().map(|&(_, p)| p).sum()
    }

    /// Smallest n attaining the maximum probability.
    pub fn argmax(&self) -> Option<u64> {
        let mut best: Option<(u64, f64)> = None;
        for &(n, p) in &self.entries {
            if best.is_none_or(|(_, bp)| p > bp) {
                best = Some((n, p));
            }
        }
        best.map(|(n, _)| n)
    }
}

/// Exponential sample via inverse transform: −(1/λ)·ln(r).
///
/// The uniform u ∈ [0, 1) is remapped to r = 1 − u ∈ (0, 1] so the
/// logarithm never sees 0; r = 1 yields exactly 0.
pub fn sample_exponential(stream: &mut RandomStream, rate: RateParam) -> f64 {
    exponential_from_uniform(stream.next_uniform(), rate)
}

/// The deterministic transform behind [`sample_exponential`], exposed so a
/// forced uniform can be pushed through it.
pub fn exponential_from_uniform(u: f64, rate: RateParam) -> f64 {
    let r = 1.0 - u;
    -r.ln() / rate.value()
}

/// Poisson probability of exactly `n` events in time `t` at the given rate:
/// (λt)ⁿ e^(−λt) / n!.
///
/// Evaluated in log space via log-gamma; the naive factorial form overflows
/// near n ≈ 171 in double precision, this form is good to n = 10⁴ and past.
pub fn poisson_pmf(n: u64, rate: RateParam, t: f64) -> Result<f64, Error> {
    if !(t > 0.0) {
        return Err(Error::NonPositiveTime(t));
    }
    let mean = rate.value() * t;
    if n == 0 {
        return Ok((-mean).exp());
    }
    let n_f = n as f64;
    Ok((n_f * mean.ln() - mean - ln_gamma(n_f + 1.0)).exp())
}

/// The full pmf series for n = 0..=n_max; the plot data for one arrival
/// rate.
pub fn poisson_curve(rate: RateParam, t: f64, n_max: u64) -> Result<PmfCurve, Error> {
    let mut entries = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        entries.push((n, poisson_pmf(n, rate, t)?));
    }
    Ok(PmfCurve {
        rate_time_product: rate.value() * t,
        entries,
    })
}

/// Exponential cumulative distribution 1 − e^(−λt).
pub fn exponential_cdf(t: f64, rate: RateParam) -> Result<f64, Error> {
    if !(t >= 0.0) {
        return Err(Error::NegativeTime(t));
    }
    Ok(-f64::exp_m1(-rate.value() * t))
}

/// Exponential density λ·e^(−λt).
pub fn exponential_pdf(t: f64, rate: RateParam) -> Result<f64, Error> {
    if !(t >= 0.0) {
        return Err(Error::NegativeTime(t));
    }
    Ok(rate.value() * (-rate.value() * t).exp())
}

// Lanczos approximation of ln Γ(x), g = 7, nine coefficients. Relative
// error stays below ~1e-13 for the arguments used here (x >= 1).
fn ln_gamma(x: f64) -> f64 {
    const COEFFS: [f64; 8] = [
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    const BASE: f64 = 0.999_999_999_999_809_9;
    let z = x - 1.0;
    let mut sum = BASE;
    for (i, &c) in COEFFS.iter().enumerate() {
        sum += c / (z + i as f64 + 1.0);
    }
    let t = z + 7.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + sum.ln()
}
