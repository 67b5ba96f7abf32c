//! Photon-statistics Monte Carlo for split detection.
//!
//! Photon arrival positions are drawn from a sampled intensity profile
//! treated as a probability density (piecewise linear, the same model the
//! trapezoid quadrature uses). The uniform variate for sample `i` is read
//! from a counter-based ChaCha12 stream at word position `2i`, so the result
//! depends only on `(seed, i)`: batches are bit-identical whether samples
//! are drawn serially or partitioned across worker threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::detection::{DetectionError, ZERO_POWER_EPS};
use crate::profile::SampledProfile;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Samples per counter chunk when drawing in parallel.
const CHUNK: u64 = 1 << 14;

/// Outcome of one Monte Carlo batch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloResult {
    /// Empirical split signal `(N_right − N_left) / N`.
    pub signal_estimate: f64,
    /// Binomial standard error `2 √(p̂(1−p̂)/N)`; reported as 1 for the
    /// degenerate single-photon batch, where the plug-in estimate collapses.
    pub standard_error: f64,
    pub n_samples: u64,
    pub seed: u64,
}

/// Inverse-CDF sampler over the piecewise-linear density of a profile.
struct ProfileSampler<'a> {
    profile: &'a SampledProfile,
    /// `cumulative[i]` = trapezoid mass of cells left of grid point `i`.
    cumulative: Vec<f64>,
}

impl<'a> ProfileSampler<'a> {
    fn new(profile: &'a SampledProfile) -> Result<Self, DetectionError> {
        let h = profile.grid().spacing();
        let values = profile.values();
        let mut cumulative = Vec::with_capacity(values.len());
        let mut run = 0.0;
        cumulative.push(0.0);
        for window in values.windows(2) {
            run += 0.5 * h * (window[0] + window[1]);
            cumulative.push(run);
        }
        if run < ZERO_POWER_EPS {
            return Err(DetectionError::ZeroPower);
        }
        Ok(Self { profile, cumulative })
    }

    fn total(&self) -> f64 {
        *self.cumulative.last().unwrap()
    }

    /// Position whose CDF value equals `u ∈ [0, 1)`.
    fn position(&self, u: f64) -> f64 {
        let target = u * self.total();
        let cell = self
            .cumulative
            .partition_point(|&mass| mass <= target)
            .saturating_sub(1)
            .min(self.cumulative.len() - 2);
        let h = self.profile.grid().spacing();
        let v0 = self.profile.values()[cell];
        let v1 = self.profile.values()[cell + 1];
        let residual = (target - self.cumulative[cell]) / h;
        // solve v0 t + (v1 − v0) t²/2 = residual for t ∈ [0, 1]
        let slope = v1 - v0;
        let discriminant = (v0 * v0 + 2.0 * slope * residual).max(0.0);
        let denominator = v0 + discriminant.sqrt();
        let t = if denominator > 0.0 {
            (2.0 * residual / denominator).clamp(0.0, 1.0)
        } else {
            0.0 // zero-mass cell: only reachable with residual 0
        };
        self.profile.x(cell) + t * h
    }
}

/// Draws `n_samples` photon positions from the profile and returns the
/// empirical split signal with its binomial standard error. Deterministic
/// for a fixed seed and independent of the sampling schedule.
pub fn monte_carlo_split(
    profile: &SampledProfile,
    n_samples: u64,
    seed: u64,
) -> Result<MonteCarloResult, DetectionError> {
    if n_samples == 0 {
        return Err(DetectionError::InvalidSampleCount);
    }
    let sampler = ProfileSampler::new(profile)?;

    let count_right = |start: u64, len: u64| -> u64 {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let mut right = 0u64;
        rng.set_word_pos(2 * start as u128);
        for _ in 0..len {
            let u: f64 = rng.random();
            if sampler.position(u) >= 0.0 {
                right += 1;
            }
        }
        right
    };

    #[cfg(feature = "parallel")]
    let n_right: u64 = {
        let chunks = n_samples.div_ceil(CHUNK);
        (0..chunks)
            .into_par_iter()
            .map(|chunk| {
                let start = chunk * CHUNK;
                count_right(start, CHUNK.min(n_samples - start))
            })
            .sum()
    };
    #[cfg(not(feature = "parallel"))]
    let n_right: u64 = count_right(0, n_samples);

    let n = n_samples as f64;
    let p_right = n_right as f64 / n;
    let signal_estimate = 2.0 * p_right - 1.0;
    let standard_error = if n_samples == 1 {
        1.0
    } else {
        2.0 * (p_right * (1.0 - p_right) / n).sqrt()
    };
    Ok(MonteCarloResult {
        signal_estimate,
        standard_error,
        n_samples,
        seed,
    })
}
