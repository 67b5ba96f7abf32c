//! Parameter sweeps and preconfigured desk-scale scenarios.
//!
//! Two sweeps drive everything downstream: [`sweep_k`] varies the transverse
//! momentum kick at a fixed phase and records the amplified dark-port
//! centroid against the `−φ/k` law, and [`sweep_phase_snr`] varies the
//! phase-plate drive voltage and records analytic and effective SNR for
//! split or balanced-homodyne detection.
//!
//! Sweep points are independent; with the `parallel` feature they are
//! evaluated on a thread pool with output order fixed by point index, and
//! per-point Monte Carlo seeds are derived as `seed ⊕ index` so results do
//! not depend on the schedule.

use thiserror::Error;

use crate::beam::{BeamError, GaussianBeam, InterferometerSetting};
use crate::detection::{
    mean_position, photon_budget, snr_analytic, split_detect, DetectionError, DetectorModel,
};
use crate::montecarlo::monte_carlo_split;
use crate::optics::{
    dark_node_position, homodyne_signal, inverse_weak_value_shift, split_signal_analytic,
    OpticsError,
};
use crate::profile::{
    sample_bright_profile, sample_dark_profile, GridSpec, SampledProfile,
};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExperimentError {
    #[error("fraction of incident light must lie in (0, 1], got {0}")]
    InvalidFraction(f64),
    #[error("sweep range invalid: {0}")]
    InvalidSweepRange(&'static str),
    #[error("scenario is missing the {0} range required by this sweep")]
    MissingSweepRange(&'static str),
    #[error("noise penalty must be >= 1, got {0}")]
    InvalidNoisePenalty(f64),
    #[error(transparent)]
    Beam(#[from] BeamError),
    #[error(transparent)]
    Optics(#[from] OpticsError),
    #[error(transparent)]
    Detection(#[from] DetectionError),
}

/// Soleil-Babinet compensator calibration: phase per drive volt.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SbcCalibration {
    /// rad/V; 22 µrad/V for the piezo-driven compensator used here.
    pub phase_per_volt: f64,
    /// 1σ calibration uncertainty, rad/V.
    pub uncertainty: f64,
}

impl Default for SbcCalibration {
    fn default() -> Self {
        Self { phase_per_volt: 22e-6, uncertainty: 0.9e-6 }
    }
}

/// Relative phase produced by `volts` on the compensator drive.
pub fn sbc_phase(volts: f64, cal: &SbcCalibration) -> f64 {
    volts * cal.phase_per_volt
}

/// An inclusive linear sweep `[min, max]` with `n >= 2` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRange {
    min: f64,
    max: f64,
    n: usize,
}

impl SweepRange {
    pub fn new(min: f64, max: f64, n: usize) -> Result<Self, ExperimentError> {
        if !min.is_finite() || !max.is_finite() {
            return Err(ExperimentError::InvalidSweepRange("bounds must be finite"));
        }
        if n < 2 {
            return Err(ExperimentError::InvalidSweepRange("need at least 2 points"));
        }
        Ok(Self { min, max, n })
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The i-th sweep value.
    pub fn value(&self, i: usize) -> f64 {
        self.min + (self.max - self.min) * i as f64 / (self.n - 1) as f64
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.value(i)).collect()
    }
}

/// Everything one run needs: beam, working point, detector, grid, timing,
/// Monte Carlo settings and sweep bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub beam: GaussianBeam,
    /// Fixed transverse momentum kick (rad/m) used by single-point
    /// operations and the phase sweep's split method.
    pub k: f64,
    pub detector: DetectorModel,
    pub grid: GridSpec,
    /// Integration time per measurement, seconds.
    pub integration_time: f64,
    /// Monte Carlo samples per sweep point; 0 disables Monte Carlo.
    pub mc_samples: u64,
    /// Single multiplicative SNR penalty (>= 1) modeling excess technical
    /// noise relative to the shot-noise limit.
    pub noise_penalty: f64,
    pub seed: u64,
    pub k_range: Option<SweepRange>,
    /// Drive-voltage sweep bounds for the phase sweep, volts.
    pub drive_range: Option<SweepRange>,
    /// Loop geometry label, metadata only: the 1-D model does not consume it.
    pub geometry: Option<String>,
}

impl ScenarioConfig {
    /// The small rectangular loop: 11 cm × 8 cm, 625 µW effective input at
    /// 795 nm, σ = 775 µm, 300 µs integration, kσ = 0.1 working point.
    pub fn small() -> Self {
        let sigma = 775e-6;
        Self {
            beam: GaussianBeam::new(1.0, sigma, 795e-9, 625e-6).expect("preset is valid"),
            k: 0.1 / sigma,
            detector: DetectorModel::ideal(),
            grid: GridSpec::default_for(sigma),
            integration_time: 300e-6,
            mc_samples: 0,
            noise_penalty: 1.0,
            seed: 0x5a67ac,
            k_range: Some(
                SweepRange::new(0.02 / sigma, 0.3 / sigma, 20).expect("preset is valid"),
            ),
            drive_range: Some(SweepRange::new(0.0, 20.0, 21).expect("preset is valid")),
            geometry: Some("11 cm x 8 cm".into()),
        }
    }

    /// The large rectangular loop: 39 cm × 8 cm, 0.5 mW input.
    pub fn large() -> Self {
        let mut config = Self::small();
        config.beam = GaussianBeam::new(1.0, 775e-6, 795e-9, 0.5e-3).expect("preset is valid");
        config.geometry = Some("39 cm x 8 cm".into());
        config
    }

    fn validate(&self) -> Result<(), ExperimentError> {
        if !self.noise_penalty.is_finite() || self.noise_penalty < 1.0 {
            return Err(ExperimentError::InvalidNoisePenalty(self.noise_penalty));
        }
        Ok(())
    }
}

/// Which detection scheme a phase sweep models.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetectionMethod {
    /// Split detection of the dark port (post-selected light only).
    Split,
    /// Balanced homodyne with the interferometer offset to quadrature
    /// (all the light, both ports).
    Homodyne,
}

impl DetectionMethod {
    pub fn label(&self) -> &'static str {
        match self {
            DetectionMethod::Split => "split",
            DetectionMethod::Homodyne => "homodyne",
        }
    }
}

/// One row of a parameter sweep. Fields that a given sweep or working point
/// does not define are `None` (for example the `−φ/k` columns at `k = 0`,
/// where only the exact path is valid).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    /// The independent variable: `k` (rad/m) for momentum sweeps, drive
    /// voltage (V) for phase sweeps.
    pub variable: f64,
    /// Relative phase at this point, rad.
    pub phi: f64,
    /// Closed-form signal (split or homodyne).
    pub analytic_signal: Option<f64>,
    /// Signal from quadrature detection on exactly propagated fields.
    pub numeric_signal: Option<f64>,
    /// `−φ/k`, meters.
    pub x_mean_analytic: Option<f64>,
    /// Centroid of the exact dark profile, meters.
    pub x_mean_numeric: Option<f64>,
    pub mc_estimate: Option<f64>,
    pub mc_std_error: Option<f64>,
    /// Expected photons on the detector for this point.
    pub n_detected: f64,
    /// Shot-noise-limited SNR.
    pub snr_analytic: f64,
    /// `snr_analytic / noise_penalty`.
    pub snr_effective: f64,
}

fn indexed_records<F>(n: usize, per_point: F) -> Result<Vec<SweepRecord>, ExperimentError>
where
    F: Fn(usize) -> Result<SweepRecord, ExperimentError> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(per_point).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(per_point).collect()
    }
}

/// Momentum sweep at fixed phase: the Fig.-3-style dataset.
///
/// Per point: the exact dark profile is sampled and its centroid and split
/// signal measured numerically; the `−φ/k` law and the analytic split
/// signal are recorded alongside. At `k = 0` the closed-form columns are
/// empty and the exact-path numbers stand alone.
pub fn sweep_k(config: &ScenarioConfig, phi: f64) -> Result<Vec<SweepRecord>, ExperimentError> {
    config.validate()?;
    let range = config.k_range.ok_or(ExperimentError::MissingSweepRange("k"))?;

    indexed_records(range.n(), |i| {
        let k = range.value(i);
        let setting = InterferometerSetting::new(k, phi)?;
        let profile = sample_dark_profile(&config.beam, &setting, config.grid);

        let x_mean_numeric = match mean_position(&profile) {
            Ok(x) => Some(x),
            Err(DetectionError::ZeroPower) => None,
            Err(other) => return Err(other.into()),
        };
        let numeric_signal = match split_detect(&profile) {
            Ok(s) => Some(s),
            Err(DetectionError::ZeroPower) => None,
            Err(other) => return Err(other.into()),
        };
        let (x_mean_analytic, analytic_signal) = if k == 0.0 {
            (None, None)
        } else {
            (
                Some(inverse_weak_value_shift(&setting)?),
                Some(split_signal_analytic(&setting, config.beam.sigma())?),
            )
        };

        let budget = photon_budget(
            &config.beam,
            &setting,
            &config.detector,
            config.integration_time,
            true,
        )?;
        let signal_for_snr = numeric_signal.unwrap_or(0.0);
        let snr = snr_analytic(signal_for_snr, budget.n_detected);

        let mc = if config.mc_samples > 0 && numeric_signal.is_some() {
            Some(monte_carlo_split(
                &profile,
                config.mc_samples,
                config.seed ^ i as u64,
            )?)
        } else {
            None
        };

        Ok(SweepRecord {
            variable: k,
            phi,
            analytic_signal,
            numeric_signal,
            x_mean_analytic,
            x_mean_numeric,
            mc_estimate: mc.map(|m| m.signal_estimate),
            mc_std_error: mc.map(|m| m.standard_error),
            n_detected: budget.n_detected,
            snr_analytic: snr,
            snr_effective: snr / config.noise_penalty,
        })
    })
}

/// Drive-voltage sweep: the Fig.-4-style dataset for one detection method.
///
/// Per voltage the phase is `volts · phase_per_volt`. Split detection sees
/// only the post-selected dark port (photon budget includes the
/// post-selection probability at the scenario's fixed `k`); homodyne sees
/// all the light. The numeric column re-derives the signal from exactly
/// propagated, sampled fields.
pub fn sweep_phase_snr(
    config: &ScenarioConfig,
    cal: &SbcCalibration,
    method: DetectionMethod,
) -> Result<Vec<SweepRecord>, ExperimentError> {
    config.validate()?;
    let range = config
        .drive_range
        .ok_or(ExperimentError::MissingSweepRange("drive voltage"))?;

    indexed_records(range.n(), |i| {
        let volts = range.value(i);
        let phi = sbc_phase(volts, cal);

        let (setting, analytic_signal, numeric_signal, include_postselection, mc) = match method {
            DetectionMethod::Split => {
                let setting = InterferometerSetting::new(config.k, phi)?;
                let analytic = split_signal_analytic(&setting, config.beam.sigma())?;
                let profile = sample_dark_profile(&config.beam, &setting, config.grid);
                let numeric = match split_detect(&profile) {
                    Ok(s) => Some(s),
                    Err(DetectionError::ZeroPower) => None,
                    Err(other) => return Err(other.into()),
                };
                let mc = if config.mc_samples > 0 && numeric.is_some() {
                    Some(monte_carlo_split(
                        &profile,
                        config.mc_samples,
                        config.seed ^ i as u64,
                    )?)
                } else {
                    None
                };
                (setting, analytic, numeric, true, mc)
            }
            DetectionMethod::Homodyne => {
                // balanced at quadrature: offset the relative phase by π/2
                let setting = InterferometerSetting::new(0.0, phi)?;
                let offset = InterferometerSetting::new(0.0, std::f64::consts::FRAC_PI_2 + phi)?;
                let dark = sample_dark_profile(&config.beam, &offset, config.grid);
                let bright = sample_bright_profile(&config.beam, &offset, config.grid);
                let numeric = Some(crate::detection::balanced_detect(&dark, &bright)?);
                (setting, homodyne_signal(phi), numeric, false, None)
            }
        };

        let budget = photon_budget(
            &config.beam,
            &setting,
            &config.detector,
            config.integration_time,
            include_postselection,
        )?;
        let snr = snr_analytic(analytic_signal, budget.n_detected);

        Ok(SweepRecord {
            variable: volts,
            phi,
            analytic_signal: Some(analytic_signal),
            numeric_signal,
            x_mean_analytic: None,
            x_mean_numeric: None,
            mc_estimate: mc.map(|m| m.signal_estimate),
            mc_std_error: mc.map(|m| m.standard_error),
            n_detected: budget.n_detected,
            snr_analytic: snr,
            snr_effective: snr / config.noise_penalty,
        })
    })
}

/// SNR multiplier available by raising the input power until the detector
/// sees the original photon flux: `√(1/fraction_incident)`.
pub fn headroom_factor(fraction_incident: f64) -> Result<f64, ExperimentError> {
    if !fraction_incident.is_finite() || fraction_incident <= 0.0 || fraction_incident > 1.0 {
        return Err(ExperimentError::InvalidFraction(fraction_incident));
    }
    Ok((1.0 / fraction_incident).sqrt())
}

/// The exact dark-port profile with its node location and lobe asymmetry.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoLobeAnalysis {
    pub profile: SampledProfile,
    /// Node of the two-lobe mode, `tan(φ/2)/k`, meters.
    pub node: f64,
    /// Power left of the node divided by power right of it.
    pub asymmetry: f64,
}

/// Samples the exact dark profile and measures the two-lobe geometry.
pub fn two_lobe_profile(
    config: &ScenarioConfig,
    setting: &InterferometerSetting,
) -> Result<TwoLobeAnalysis, ExperimentError> {
    let node = dark_node_position(setting)?;
    let profile = sample_dark_profile(&config.beam, setting, config.grid);
    let left = profile.integrate(profile.grid().x_min(), node)?;
    let right = profile.integrate(node, profile.grid().x_max())?;
    Ok(TwoLobeAnalysis {
        profile,
        node,
        asymmetry: left / right,
    })
}

/// Least-squares slope of `y = s x` (line through the origin).
pub fn fit_slope_through_origin(points: &[(f64, f64)]) -> f64 {
    let sum_xy: f64 = points.iter().map(|&(x, y)| x * y).sum();
    let sum_xx: f64 = points.iter().map(|&(x, _)| x * x).sum();
    sum_xy / sum_xx
}

/// Least-squares coefficients `[c0, c1, c2]` of `y = c0 + c1 x + c2 x²`.
pub fn fit_quadratic(points: &[(f64, f64)]) -> [f64; 3] {
    // normal equations, solved by Gaussian elimination with partial pivoting
    let mut moments = [0.0; 5];
    let mut rhs = [0.0; 3];
    for &(x, y) in points {
        let mut pow = 1.0;
        for (order, moment) in moments.iter_mut().enumerate() {
            *moment += pow;
            if order < 3 {
                rhs[order] += y * pow;
            }
            pow *= x;
        }
    }
    let mut a = [
        [moments[0], moments[1], moments[2], rhs[0]],
        [moments[1], moments[2], moments[3], rhs[1]],
        [moments[2], moments[3], moments[4], rhs[2]],
    ];
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        for row in col + 1..3 {
            let factor = a[row][col] / a[col][col];
            for entry in col..4 {
                a[row][entry] -= factor * a[col][entry];
            }
        }
    }
    let mut coefficients = [0.0; 3];
    for row in (0..3).rev() {
        let mut value = a[row][3];
        for col in row + 1..3 {
            value -= a[row][col] * coefficients[col];
        }
        coefficients[row] = value / a[row][row];
    }
    coefficients
}
