//! Seeded Monte Carlo simulation of the two-axis measurement protocol.
//!
//! Each shot picks the `m` axis with probability `p` (otherwise `l`), draws a
//! `±` outcome with the Born probability `½(1 ± axis·c)`, and relabels it as a
//! joint `(A, B)` outcome. The generator is ChaCha8 seeded from a `u64`.
//!
//! In [`SampleMode::Chunked`] (default) shots are split into fixed-size
//! chunks, each drawing from its own ChaCha stream under the same seed. The
//! counts depend only on the seed and shot count, never on the thread count.
//! [`SampleMode::SingleStream`] draws every shot from stream 0 in order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::entropy::surprisal_term;
use crate::exec::Exec;
use crate::geometry::BlochState;
use crate::measurement::{JointDistribution, JointScheme};
use crate::{Error, Result};

pub const GENERATOR: &str = "ChaCha8Rng (rand_chacha 0.3), seed_from_u64, stream per chunk";

/// Shots per independently seeded chunk.
pub const CHUNK_SHOTS: u64 = 1 << 16;

/// Denominators below this make a sharpness estimate undefined.
const ESTIMATOR_GUARD: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SampleConfig {
    shots: u64,
    seed: u64,
}

impl SampleConfig {
    pub fn new(shots: u64, seed: u64) -> Result<Self> {
        if shots == 0 {
            return Err(Error::InvalidParameter("shots must be at least 1".into()));
        }
        Ok(Self { shots, seed })
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleMode {
    #[default]
    Chunked,
    SingleStream,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalResult {
    /// Counts of `(+,+), (+,−), (−,+), (−,−)`.
    pub counts: [u64; 4],
    pub shots: u64,
    pub seed: u64,
    pub generator: &'static str,
    pub empirical_joint: JointDistribution,
    /// Plug-in (maximum-likelihood) entropy of the empirical distribution.
    pub empirical_entropy: f64,
    /// Binomial standard error `√(p̂(1−p̂)/N)` of each cell frequency.
    pub standard_errors: [f64; 4],
}

impl EmpiricalResult {
    fn from_counts(counts: [u64; 4], config: &SampleConfig) -> Self {
        let n = config.shots as f64;
        let freq = counts.map(|k| k as f64 / n);
        Self {
            counts,
            shots: config.shots,
            seed: config.seed,
            generator: GENERATOR,
            empirical_joint: JointDistribution::from_cells(freq),
            empirical_entropy: freq.iter().copied().map(surprisal_term).sum(),
            standard_errors: freq.map(|p| (p * (1.0 - p) / n).sqrt()),
        }
    }

    /// Empirical `(⟨A_J⟩, ⟨B_J⟩)` with outcomes valued ±1.
    pub fn joint_expectations(&self) -> (f64, f64) {
        let [pp, pm, mp, mm] = self.empirical_joint.cells();
        (pp + pm - mp - mm, pp + mp - pm - mm)
    }
}

/// Per-shot thresholds: measure `m` if `u < p`, then `+` if `v < ½(1 ± axis·c)`.
#[derive(Clone, Copy)]
struct ShotModel {
    p: f64,
    plus_m: f64,
    plus_l: f64,
}

impl ShotModel {
    fn new(scheme: &JointScheme, state: &BlochState) -> Self {
        Self {
            p: scheme.p,
            plus_m: 0.5 * (1.0 + state.expectation(scheme.m)),
            plus_l: 0.5 * (1.0 + state.expectation(scheme.l)),
        }
    }

    fn run<R: Rng>(&self, rng: &mut R, shots: u64) -> [u64; 4] {
        let mut counts = [0u64; 4];
        for _ in 0..shots {
            let along_m = rng.gen::<f64>() < self.p;
            let cell = if along_m {
                // m up → (+,+), m down → (−,−)
                if rng.gen::<f64>() < self.plus_m {
                    0
                } else {
                    3
                }
            } else {
                // l up → (+,−), l down → (−,+)
                if rng.gen::<f64>() < self.plus_l {
                    1
                } else {
                    2
                }
            };
            counts[cell] += 1;
        }
        counts
    }
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Simulates `config.shots` runs of the protocol in the default mode.
pub fn simulate(
    scheme: &JointScheme,
    state: &BlochState,
    config: &SampleConfig,
) -> EmpiricalResult {
    simulate_with(
        scheme,
        state,
        config,
        SampleMode::default(),
        Exec::default(),
    )
}

pub fn simulate_with(
    scheme: &JointScheme,
    state: &BlochState,
    config: &SampleConfig,
    mode: SampleMode,
    exec: Exec,
) -> EmpiricalResult {
    let model = ShotModel::new(scheme, state);
    let counts = match mode {
        SampleMode::SingleStream => model.run(&mut stream_rng(config.seed, 0), config.shots),
        SampleMode::Chunked => {
            let chunks = config.shots.div_ceil(CHUNK_SHOTS);
            let per_chunk = exec.map(chunks as usize, |k| {
                let k = k as u64;
                let shots = CHUNK_SHOTS.min(config.shots - k * CHUNK_SHOTS);
                model.run(&mut stream_rng(config.seed, k), shots)
            });
            per_chunk.iter().fold([0u64; 4], |mut acc, c| {
                for (a, x) in acc.iter_mut().zip(c) {
                    *a += x;
                }
                acc
            })
        }
    };
    EmpiricalResult::from_counts(counts, config)
}

/// Estimated sharpnesses. `None` when the true projection of the state on
/// that axis is too small for the ratio to be defined.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SharpnessEstimate {
    pub alpha_hat: Option<f64>,
    pub beta_hat: Option<f64>,
    /// Standard errors of the two estimates.
    pub alpha_se: Option<f64>,
    pub beta_se: Option<f64>,
}

/// Estimates `(α, β)` from `⟨A_J⟩ / a·c` and `⟨B_J⟩ / b·c` on simulated data.
pub fn estimate_unbiasedness(
    scheme: &JointScheme,
    state: &BlochState,
    config: &SampleConfig,
) -> SharpnessEstimate {
    let result = simulate(scheme, state, config);
    estimate_from(&result, scheme, state)
}

/// Sharpness estimates from an existing simulation.
pub fn estimate_from(
    result: &EmpiricalResult,
    scheme: &JointScheme,
    state: &BlochState,
) -> SharpnessEstimate {
    let (ea, eb) = result.joint_expectations();
    let n = result.shots as f64;
    let ratio = |mean: f64, projection: f64| {
        (projection.abs() >= ESTIMATOR_GUARD).then(|| {
            // Var of a ±1 outcome is 1 − mean².
            let se = ((1.0 - mean * mean).max(0.0) / n).sqrt() / projection.abs();
            (mean / projection, se)
        })
    };
    let a = ratio(ea, state.expectation(scheme.a));
    let b = ratio(eb, state.expectation(scheme.b));
    SharpnessEstimate {
        alpha_hat: a.map(|x| x.0),
        beta_hat: b.map(|x| x.0),
        alpha_se: a.map(|x| x.1),
        beta_se: b.map(|x| x.1),
    }
}

/// Delta-method standard error of the plug-in entropy estimate, in bits:
/// `√((Σ pᵢ (log₂ pᵢ)² − H²) / N)` evaluated at the analytic distribution.
pub fn entropy_standard_error(dist: &JointDistribution, shots: u64) -> f64 {
    let cells = dist.cells();
    let h: f64 = cells.iter().copied().map(surprisal_term).sum();
    let second: f64 = cells
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * p.log2() * p.log2())
        .sum();
    ((second - h * h).max(0.0) / shots as f64).sqrt()
}
