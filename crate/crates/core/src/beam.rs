//! Input beam and interferometer settings.

use std::f64::consts::PI;
use thiserror::Error;

/// Invalid beam or setting parameters.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BeamError {
    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("power must be finite and >= 0, got {0}")]
    NegativePower(f64),
    #[error("relative phase must lie in the open interval (-pi, pi), got {0}")]
    PhaseOutOfRange(f64),
    #[error("transverse momentum must be finite, got {0}")]
    NonFiniteMomentum(f64),
}

/// Collimated single-mode input beam with amplitude profile
/// `E0 exp(-x²/4σ²)`.
///
/// `sigma` is the Gaussian beam radius (the 1/e intensity half-width of the
/// *amplitude* envelope squared uses 2σ²). The beam is assumed collimated
/// through the whole loop: the Rayleigh range is taken to be much longer
/// than the interferometer, so `sigma` never changes during propagation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianBeam {
    amplitude: f64,
    sigma: f64,
    wavelength: f64,
    power: f64,
}

impl GaussianBeam {
    /// Validates `amplitude > 0`, `sigma > 0`, `wavelength > 0`, `power >= 0`.
    pub fn new(amplitude: f64, sigma: f64, wavelength: f64, power: f64) -> Result<Self, BeamError> {
        let positive = |name: &'static str, value: f64| {
            if value.is_finite() && value > 0.0 {
                Ok(value)
            } else {
                Err(BeamError::NonPositive { name, value })
            }
        };
        positive("amplitude", amplitude)?;
        positive("sigma", sigma)?;
        positive("wavelength", wavelength)?;
        if !power.is_finite() || power < 0.0 {
            return Err(BeamError::NegativePower(power));
        }
        Ok(Self { amplitude, sigma, wavelength, power })
    }

    /// Peak field amplitude E0 (arbitrary field units).
    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    /// Gaussian beam radius σ in meters.
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Vacuum wavelength in meters.
    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    /// Optical power in watts.
    pub fn power(&self) -> f64 {
        self.power
    }

    /// Amplitude envelope `exp(-x²/4σ²)` at transverse position `x`.
    pub fn envelope(&self, x: f64) -> f64 {
        (-x * x / (4.0 * self.sigma * self.sigma)).exp()
    }

    /// Maximum input intensity density, `I0 = E0²` (field units squared).
    pub fn peak_intensity(&self) -> f64 {
        self.amplitude * self.amplitude
    }
}

/// One interferometer working point: the transverse momentum kick `k`
/// (rad/m, signed) applied with opposite sign to the two paths, and the
/// relative phase `φ` (rad) between them.
///
/// `φ` is restricted to the open interval (−π, π) so that `tan(φ/2)` stays
/// finite; callers needing fringe wrapping must reduce modulo 2π first.
/// `k = 0` is a valid setting for the exact field formulas; the small-tilt
/// approximations reject it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferometerSetting {
    k: f64,
    phi: f64,
}

impl InterferometerSetting {
    pub fn new(k: f64, phi: f64) -> Result<Self, BeamError> {
        if !k.is_finite() {
            return Err(BeamError::NonFiniteMomentum(k));
        }
        if !phi.is_finite() || phi <= -PI || phi >= PI {
            return Err(BeamError::PhaseOutOfRange(phi));
        }
        Ok(Self { k, phi })
    }

    /// Transverse momentum kick in rad/m.
    pub fn k(&self) -> f64 {
        self.k
    }

    /// Relative phase in rad.
    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Dimensionless tilt parameter `kσ` for a given beam radius.
    pub fn k_sigma(&self, sigma: f64) -> f64 {
        self.k * sigma
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beam_validation() {
        assert!(GaussianBeam::new(1.0, 775e-6, 795e-9, 625e-6).is_ok());
        assert!(matches!(
            GaussianBeam::new(0.0, 1.0, 1.0, 1.0),
            Err(BeamError::NonPositive { name: "amplitude", .. })
        ));
        assert!(GaussianBeam::new(1.0, -1.0, 1.0, 1.0).is_err());
        assert!(GaussianBeam::new(1.0, 1.0, f64::NAN, 1.0).is_err());
        assert!(matches!(
            GaussianBeam::new(1.0, 1.0, 1.0, -0.5),
            Err(BeamError::NegativePower(_))
        ));
        // zero power is legal (dark input)
        assert!(GaussianBeam::new(1.0, 1.0, 1.0, 0.0).is_ok());
    }

    #[test]
    fn phase_domain_is_open() {
        assert!(InterferometerSetting::new(0.0, 0.0).is_ok());
        assert!(InterferometerSetting::new(0.0, 3.1415).is_ok());
        assert!(InterferometerSetting::new(0.0, PI).is_err());
        assert!(InterferometerSetting::new(0.0, -PI).is_err());
        assert!(InterferometerSetting::new(f64::INFINITY, 0.0).is_err());
    }

    #[test]
    fn envelope_values() {
        let beam = GaussianBeam::new(1.0, 1.0, 795e-9, 0.0).unwrap();
        assert_eq!(beam.envelope(0.0), 1.0);
        assert!((beam.envelope(2.0) - (-1.0f64).exp()).abs() < 1e-15);
    }
}
