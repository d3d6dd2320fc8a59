//! Monte Carlo estimates of `E J_α(t)` along simulated Wiener paths.
//!
//! Each path carries the whole hierarchy of prefix integrals
//! `J_{α₁…α_k}`, `k = 0..ℓ`, advanced on a uniform grid with the midpoint
//! (trapezoidal) rule
//!
//! ```text
//! J_{α₁…α_k} += ½ (J_{α₁…α_{k−1}}(t_n) + J_{α₁…α_{k−1}}(t_{n+1})) ΔW^{α_k}
//! ```
//!
//! which converges to the Stratonovich integral. This code path shares
//! nothing with the exact modules beyond [`Word`].
//!
//! Path `i` draws its normals from its own ChaCha8 stream (see
//! [`path_rng`]), and per-chunk statistics are merged in chunk order, so a
//! result depends only on the [`SimConfig`], never on the thread count.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::expect::expect_strat_at;
use crate::words::{Driver, Word};
use crate::Limits;

/// Paths per statistics chunk. Fixed so the reduction tree never depends on
/// how work is scheduled.
const CHUNK: u64 = 4096;

/// Wiener increments of one path, keyed by driver, one entry per grid step.
pub type Increments = BTreeMap<Driver, Vec<f64>>;

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub word: Word,
    pub horizon: f64,
    pub steps: usize,
    pub paths: u64,
    pub seed: u64,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.horizon.is_finite() && self.horizon > 0.0) {
            return Err(Error::Config(format!(
                "horizon must be positive and finite, got {}",
                self.horizon
            )));
        }
        if self.steps == 0 {
            return Err(Error::Config("steps must be at least 1".into()));
        }
        if self.paths == 0 {
            return Err(Error::Config("paths must be at least 1".into()));
        }
        Ok(())
    }

    /// Work units: `paths * steps * max(|word|, 1)`.
    pub fn cost(&self) -> u128 {
        self.paths as u128 * self.steps as u128 * self.word.len().max(1) as u128
    }

    pub fn dt(&self) -> f64 {
        self.horizon / self.steps as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    pub mean: f64,
    /// Sample standard deviation over `sqrt(paths)`.
    pub std_error: f64,
    pub paths: u64,
    /// Closed-form `E J_α` at the (exactly converted) horizon.
    pub exact: Option<Rational>,
}

impl SimResult {
    /// `(mean − exact) / std_error`, when both are available and the error
    /// is nonzero.
    pub fn z_score(&self) -> Option<f64> {
        let exact = self.exact.as_ref()?.to_f64();
        (self.std_error > 0.0).then(|| (self.mean - exact) / self.std_error)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    pub budget: u128,
}

impl Default for SimOptions {
    fn default() -> Self {
        SimOptions {
            threads: None,
            budget: Limits::default().sim_budget,
        }
    }
}

/// The random stream of path `path` under `seed`.
///
/// ChaCha8 keyed from `seed`, with the path index as the stream id. Normals
/// are drawn step-major, drivers in ascending index order.
pub fn path_rng(seed: u64, path: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(path);
    rng
}

/// Prefix integrals of one word along one path.
struct Hierarchy<'w> {
    letters: &'w [Driver],
    // slot in the per-step increment array for each letter; None for time
    slots: Vec<Option<usize>>,
    values: Vec<f64>,
}

impl<'w> Hierarchy<'w> {
    fn new(letters: &'w [Driver], drivers: &[Driver]) -> Self {
        let slots = letters
            .iter()
            .map(|a| (*a != 0).then(|| drivers.binary_search(a).expect("driver listed")))
            .collect();
        Hierarchy {
            letters,
            slots,
            values: vec![0.0; letters.len()],
        }
    }

    fn reset(&mut self) {
        self.values.iter_mut().for_each(|v| *v = 0.0);
    }

    /// Advances one grid step given `dw[slot]` for each Wiener driver.
    fn step(&mut self, dt: f64, dw: &[f64]) {
        // J_∅ ≡ 1
        let (mut below_start, mut below_end) = (1.0, 1.0);
        for (k, slot) in self.slots.iter().enumerate() {
            let increment = match slot {
                Some(s) => dw[*s],
                None => dt,
            };
            let start = self.values[k];
            let end = start + 0.5 * (below_start + below_end) * increment;
            self.values[k] = end;
            below_start = start;
            below_end = end;
        }
    }

    fn value(&self) -> f64 {
        self.values.last().copied().unwrap_or(1.0)
    }

    fn len(&self) -> usize {
        self.letters.len()
    }
}

/// `J_word(horizon)` along one path, from explicit increments.
///
/// `increments` must hold `steps` entries for every Wiener letter of `word`;
/// time increments are `horizon / steps`.
pub fn simulate_path_integrals(
    word: &Word,
    horizon: f64,
    steps: usize,
    increments: &Increments,
) -> Result<f64> {
    let drivers = word.wiener_drivers();
    let mut columns = Vec::with_capacity(drivers.len());
    for d in &drivers {
        let col = increments
            .get(d)
            .ok_or_else(|| Error::Config(format!("no increments for driver {d}")))?;
        if col.len() != steps {
            return Err(Error::Config(format!(
                "driver {d} has {} increments, expected {steps}",
                col.len()
            )));
        }
        columns.push(col.as_slice());
    }
    let dt = horizon / steps as f64;
    let mut h = Hierarchy::new(word.letters(), &drivers);
    let mut dw = vec![0.0; drivers.len()];
    for n in 0..steps {
        for (slot, col) in columns.iter().enumerate() {
            dw[slot] = col[n];
        }
        h.step(dt, &dw);
    }
    Ok(h.value())
}

/// Draws the increments path `path` uses under `cfg`.
pub fn path_increments(cfg: &SimConfig, path: u64) -> Increments {
    let drivers = cfg.word.wiener_drivers();
    let sd = cfg.dt().sqrt();
    let mut rng = path_rng(cfg.seed, path);
    let mut cols = vec![Vec::with_capacity(cfg.steps); drivers.len()];
    for _ in 0..cfg.steps {
        for col in cols.iter_mut() {
            let z: f64 = rng.sample(StandardNormal);
            col.push(sd * z);
        }
    }
    drivers.into_iter().zip(cols).collect()
}

struct PathSampler<'c> {
    cfg: &'c SimConfig,
    hierarchy: Hierarchy<'c>,
    dw: Vec<f64>,
    sd: f64,
    dt: f64,
}

impl<'c> PathSampler<'c> {
    fn new(cfg: &'c SimConfig, drivers: &[Driver]) -> Self {
        PathSampler {
            cfg,
            hierarchy: Hierarchy::new(cfg.word.letters(), drivers),
            dw: vec![0.0; drivers.len()],
            sd: cfg.dt().sqrt(),
            dt: cfg.dt(),
        }
    }

    // Same draws and arithmetic as path_increments + simulate_path_integrals,
    // without materializing the increments.
    fn sample(&mut self, path: u64) -> f64 {
        let mut rng = path_rng(self.cfg.seed, path);
        self.hierarchy.reset();
        if self.hierarchy.len() == 0 {
            return 1.0;
        }
        for _ in 0..self.cfg.steps {
            for x in self.dw.iter_mut() {
                let z: f64 = rng.sample(StandardNormal);
                *x = self.sd * z;
            }
            self.hierarchy.step(self.dt, &self.dw);
        }
        self.hierarchy.value()
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        let (na, nb, nf) = (self.n as f64, other.n as f64, n as f64);
        Moments {
            n,
            mean: self.mean + delta * (nb / nf),
            m2: self.m2 + other.m2 + delta * delta * (na * nb / nf),
        }
    }

    fn sample_variance(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            self.m2 / (self.n - 1) as f64
        }
    }
}

fn check(cfg: &SimConfig, opts: &SimOptions) -> Result<()> {
    cfg.validate()?;
    let cost = cfg.cost();
    if cost > opts.budget {
        return Err(Error::Budget {
            cost,
            budget: opts.budget,
        });
    }
    Ok(())
}

fn run<T: Send>(threads: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(job()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
            Ok(pool.install(job))
        }
    }
}

/// Per-path values `J_α(t)` in path order.
pub fn sample_path_values(cfg: &SimConfig, opts: &SimOptions) -> Result<Vec<f64>> {
    check(cfg, opts)?;
    let drivers = cfg.word.wiener_drivers();
    run(opts.threads, || {
        (0..cfg.paths)
            .into_par_iter()
            .map_init(|| PathSampler::new(cfg, &drivers), |s, i| s.sample(i))
            .collect()
    })
}

/// Monte Carlo estimate of `E J_α(t)` with default options.
pub fn estimate_expectation(cfg: &SimConfig) -> Result<SimResult> {
    estimate_expectation_with(cfg, &SimOptions::default())
}

pub fn estimate_expectation_with(cfg: &SimConfig, opts: &SimOptions) -> Result<SimResult> {
    check(cfg, opts)?;
    let drivers = cfg.word.wiener_drivers();
    let chunks = cfg.paths.div_ceil(CHUNK);
    let per_chunk: Vec<Moments> = run(opts.threads, || {
        (0..chunks)
            .into_par_iter()
            .map_init(
                || PathSampler::new(cfg, &drivers),
                |s, c| {
                    let mut m = Moments::default();
                    for i in c * CHUNK..((c + 1) * CHUNK).min(cfg.paths) {
                        m.push(s.sample(i));
                    }
                    m
                },
            )
            .collect()
    })?;
    let total = per_chunk
        .into_iter()
        .fold(Moments::default(), Moments::merge);
    let exact = Rational::from_f64(cfg.horizon).and_then(|t| expect_strat_at(&cfg.word, &t).ok());
    Ok(SimResult {
        mean: total.mean,
        std_error: (total.sample_variance() / total.n as f64).sqrt(),
        paths: total.n,
        exact,
    })
}
