//! Numerical detectors, photon budget and shot-noise-limited SNR.

use thiserror::Error;

use crate::beam::{GaussianBeam, InterferometerSetting};
use crate::constants::photon_energy;
use crate::optics::{postselection_probability, OpticsError};
use crate::profile::SampledProfile;

/// Integrated powers below this threshold (field units² · m) count as "no
/// light on the detector". Distinguishes a truly dark port (k = 0, φ = 0)
/// from numerical noise.
pub const ZERO_POWER_EPS: f64 = 1e-30;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DetectionError {
    #[error("invalid grid: {0}")]
    InvalidGrid(&'static str),
    #[error("intensity value at index {index} is negative or not finite: {value}")]
    InvalidValue { index: usize, value: f64 },
    #[error("integration bounds [{from}, {to}] fall outside the sampled domain")]
    OutOfDomain { from: f64, to: f64 },
    #[error("profiles are sampled on different grids")]
    GridMismatch,
    #[error("total integrated power is below {ZERO_POWER_EPS:e}: no light on the detector")]
    ZeroPower,
    #[error("integration time must be positive, got {0}")]
    InvalidIntegrationTime(f64),
    #[error("detector {name} must lie in [0, 1], got {value}")]
    InvalidEfficiency { name: &'static str, value: f64 },
    #[error("saturation power must be positive, got {0}")]
    InvalidSaturation(f64),
    #[error("sample count must be at least 1")]
    InvalidSampleCount,
    #[error(transparent)]
    Optics(#[from] OpticsError),
}

/// Detector efficiency chain and stray-light offset.
///
/// Efficiencies scale the detected photon number; the junk-light offset adds
/// to the normalized signal. Post-selection, transmissivity and quantum
/// efficiency commute, but are stored separately for reporting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorModel {
    quantum_efficiency: f64,
    transmissivity: f64,
    junk_offset: f64,
    saturation_power: Option<f64>,
}

impl DetectorModel {
    pub fn new(
        quantum_efficiency: f64,
        transmissivity: f64,
        junk_offset: f64,
        saturation_power: Option<f64>,
    ) -> Result<Self, DetectionError> {
        let probability = |name: &'static str, value: f64| {
            if (0.0..=1.0).contains(&value) {
                Ok(value)
            } else {
                Err(DetectionError::InvalidEfficiency { name, value })
            }
        };
        probability("quantum efficiency", quantum_efficiency)?;
        probability("transmissivity", transmissivity)?;
        if let Some(saturation) = saturation_power {
            if !saturation.is_finite() || saturation <= 0.0 {
                return Err(DetectionError::InvalidSaturation(saturation));
            }
        }
        Ok(Self { quantum_efficiency, transmissivity, junk_offset, saturation_power })
    }

    /// Lossless detector with no stray light and no saturation ceiling.
    pub fn ideal() -> Self {
        Self {
            quantum_efficiency: 1.0,
            transmissivity: 1.0,
            junk_offset: 0.0,
            saturation_power: None,
        }
    }

    pub fn quantum_efficiency(&self) -> f64 {
        self.quantum_efficiency
    }

    pub fn transmissivity(&self) -> f64 {
        self.transmissivity
    }

    pub fn junk_offset(&self) -> f64 {
        self.junk_offset
    }

    pub fn saturation_power(&self) -> Option<f64> {
        self.saturation_power
    }
}

impl Default for DetectorModel {
    fn default() -> Self {
        Self::ideal()
    }
}

/// Expected photon numbers for one integration window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotonBudget {
    /// Expected photons entering the interferometer.
    pub n_input: f64,
    /// Expected photons registered by the detector, after post-selection
    /// (when enabled), transmissivity and quantum efficiency.
    pub n_detected: f64,
    /// Integration time in seconds.
    pub integration_time: f64,
    /// True when the optical power striking the detector cell exceeds its
    /// saturation ceiling. A flag, not an error.
    pub saturation_exceeded: bool,
}

/// Split-detection signal: power right of the origin minus power left of it,
/// normalized by the total power on the detector.
pub fn split_detect(profile: &SampledProfile) -> Result<f64, DetectionError> {
    let center = profile.x(profile.center_index());
    debug_assert_eq!(center, 0.0);
    let left = profile.integrate(profile.grid().x_min(), center)?;
    let right = profile.integrate(center, profile.grid().x_max())?;
    let total = left + right;
    if total < ZERO_POWER_EPS {
        return Err(DetectionError::ZeroPower);
    }
    Ok((right - left) / total)
}

/// Intensity-weighted mean position `∫ x I(x) dx / ∫ I(x) dx` in meters.
pub fn mean_position(profile: &SampledProfile) -> Result<f64, DetectionError> {
    let total = profile.total_power();
    if total < ZERO_POWER_EPS {
        return Err(DetectionError::ZeroPower);
    }
    let h = profile.grid().spacing();
    let n = profile.len();
    let weighted = |i: usize| profile.x(i) * profile.values()[i];
    let interior: f64 = (1..n - 1).map(weighted).sum();
    let first_moment = h * (interior + 0.5 * (weighted(0) + weighted(n - 1)));
    Ok(first_moment / total)
}

/// Balanced detection: the two port powers subtracted (dark minus bright)
/// and normalized by their sum.
///
/// With the interferometer balanced (`k = 0`, relative phase offset to
/// `π/2 + φ`) this equals `sin(φ)` up to quadrature rounding; the dark-port
/// power grows with positive `φ` under the sign conventions of
/// [`crate::optics::output_fields`].
pub fn balanced_detect(
    dark: &SampledProfile,
    bright: &SampledProfile,
) -> Result<f64, DetectionError> {
    if dark.grid() != bright.grid() {
        return Err(DetectionError::GridMismatch);
    }
    let dark_power = dark.total_power();
    let bright_power = bright.total_power();
    let total = dark_power + bright_power;
    if total < ZERO_POWER_EPS {
        return Err(DetectionError::ZeroPower);
    }
    Ok((dark_power - bright_power) / total)
}

/// Adds the stray-light offset to a normalized signal. Efficiencies affect
/// photon counts, not the normalized signal, so this is purely additive.
pub fn apply_detector(signal: f64, detector: &DetectorModel) -> f64 {
    signal + detector.junk_offset()
}

/// Expected photon numbers for `integration_time` seconds of the given beam.
///
/// `n_input = P t / (h c / λ)`. With `include_postselection` the detected
/// count is further scaled by the dark-port post-selection probability
/// `|kσ cos(φ/2)|²`. The saturation flag compares the power striking the
/// detector cell (after post-selection and protective optics) against the
/// detector's ceiling.
pub fn photon_budget(
    beam: &GaussianBeam,
    setting: &InterferometerSetting,
    detector: &DetectorModel,
    integration_time: f64,
    include_postselection: bool,
) -> Result<PhotonBudget, DetectionError> {
    if !integration_time.is_finite() || integration_time <= 0.0 {
        return Err(DetectionError::InvalidIntegrationTime(integration_time));
    }
    let n_input = beam.power() * integration_time / photon_energy(beam.wavelength());
    let postselection = if include_postselection {
        postselection_probability(setting, beam.sigma())?
    } else {
        1.0
    };
    let n_detected =
        n_input * postselection * detector.transmissivity() * detector.quantum_efficiency();
    let power_on_cell = beam.power() * postselection * detector.transmissivity();
    let saturation_exceeded = detector
        .saturation_power()
        .is_some_and(|ceiling| power_on_cell > ceiling);
    Ok(PhotonBudget {
        n_input,
        n_detected,
        integration_time,
        saturation_exceeded,
    })
}

/// Shot-noise-limited SNR `|Δ| √N_d` of a normalized signal read with
/// `n_detected` photons.
pub fn snr_analytic(signal: f64, n_detected: f64) -> f64 {
    debug_assert!(n_detected >= 0.0);
    signal.abs() * n_detected.sqrt()
}
