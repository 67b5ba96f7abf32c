//! Closed-form field propagation and signal formulas.
//!
//! The loop is modeled with 2×2 transfer matrices in the paraxial
//! approximation: a 50/50 beamsplitter `B = (1/√2)[[1, i], [i, 1]]` and a
//! path matrix `M = diag(e^{i(−kx+φ/2)}, e^{−i(−kx+φ/2)})` giving the two
//! counter-propagating paths opposite momentum kicks and a relative phase.
//! The output `B M B E_in` evaluates to
//!
//! ```text
//! dark   = −i E0 exp(−x²/4σ²) sin(kx − φ/2)
//! bright =  i E0 exp(−x²/4σ²) cos(kx − φ/2)
//! ```
//!
//! which is exact for all `k` and `φ`. For a small tilt (`kσ < 1`) the dark
//! port reduces to the two-lobe mode of [`dark_field_approx`], and the
//! dark-port centroid is governed by the inverse weak value, `⟨x⟩ ≈ −φ/k`.

use num_complex::Complex64;
use thiserror::Error;

use crate::beam::{GaussianBeam, InterferometerSetting};

/// SNR penalty of split detection relative to balanced homodyne, `√(2/π)`.
pub const SPLIT_TO_HOMODYNE_SNR_RATIO: f64 = 0.797_884_560_802_865_4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OpticsError {
    /// The small-tilt formulas divide by `kσ`; use the exact
    /// [`output_fields`] path when the interferometer is aligned.
    #[error("k = 0: small-tilt formula undefined, use the exact output fields")]
    ZeroMomentum,
    /// The weak value −2i/φ diverges at φ = 0.
    #[error("phi = 0: weak value undefined")]
    ZeroPhase,
    /// Outside |kσ| ≤ 1 the post-selection formula loses meaning.
    #[error("|k sigma| = {0} exceeds the small-tilt validity domain |k sigma| <= 1")]
    OutOfRegime(f64),
}

/// Complex field amplitudes at one transverse position for the two output
/// ports. `|dark|² + |bright|²` equals the input intensity at that point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PortPair {
    pub dark: Complex64,
    pub bright: Complex64,
}

/// Weak-value summary of a working point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakValueReport {
    /// `A_w ≈ −2i/φ`, the anomalous which-path expectation value.
    pub weak_value: Complex64,
    /// Dark-port centroid `⟨x⟩ ≈ −φ/k` in meters.
    pub inverse_shift: f64,
    /// Post-selection probability `|kσ cos(φ/2)|²`.
    pub postselection: f64,
    /// Set when `|φ| ≥ |kσ|`: the working point is outside the
    /// inverse-weak-value regime `φ ≪ kσ ≪ 1` and the centroid formula
    /// degrades.
    pub regime_warning: bool,
}

/// Input field amplitude `E0 exp(−x²/4σ²)` (purely real).
pub fn input_field(beam: &GaussianBeam, x: f64) -> f64 {
    beam.amplitude() * beam.envelope(x)
}

/// Exact output fields at transverse position `x`; valid for all `k`, `φ`.
pub fn output_fields(beam: &GaussianBeam, setting: &InterferometerSetting, x: f64) -> PortPair {
    let envelope = input_field(beam, x);
    let arg = setting.k() * x - setting.phi() / 2.0;
    PortPair {
        dark: Complex64::new(0.0, -envelope * arg.sin()),
        bright: Complex64::new(0.0, envelope * arg.cos()),
    }
}

/// Balanced homodyne signal `sin(φ)`.
///
/// Convention: the interferometer is balanced by offsetting the relative
/// phase to `π/2 + φ` with `k = 0`, the two port powers are subtracted
/// (dark minus bright) and normalized by total power.
pub fn homodyne_signal(phi: f64) -> f64 {
    phi.sin()
}

/// Small-tilt (`kσ < 1`) dark-port field,
/// `A (x/σ − tan(φ/2)/(kσ)) exp(−x²/4σ²)` with `A = −i E0 kσ cos(φ/2)`.
pub fn dark_field_approx(
    beam: &GaussianBeam,
    setting: &InterferometerSetting,
    x: f64,
) -> Result<Complex64, OpticsError> {
    if setting.k() == 0.0 {
        return Err(OpticsError::ZeroMomentum);
    }
    let sigma = beam.sigma();
    let k_sigma = setting.k_sigma(sigma);
    let amp = beam.amplitude() * k_sigma * (setting.phi() / 2.0).cos();
    let shape = x / sigma - (setting.phi() / 2.0).tan() / k_sigma;
    Ok(Complex64::new(0.0, -amp * shape * beam.envelope(x)))
}

/// Small-tilt dark-port intensity density (the two-lobe profile),
/// `P_ps I0 (x/σ − tan(φ/2)/(kσ))² exp(−x²/2σ²)`.
pub fn dark_intensity(
    beam: &GaussianBeam,
    setting: &InterferometerSetting,
    x: f64,
) -> Result<f64, OpticsError> {
    dark_field_approx(beam, setting, x).map(|field| field.norm_sqr())
}

/// Node of the two-lobe profile, `x = tan(φ/2)/k`.
pub fn dark_node_position(setting: &InterferometerSetting) -> Result<f64, OpticsError> {
    if setting.k() == 0.0 {
        return Err(OpticsError::ZeroMomentum);
    }
    Ok((setting.phi() / 2.0).tan() / setting.k())
}

/// Post-selection probability `|kσ cos(φ/2)|²`: the fraction of input power
/// that exits the dark port in the small-tilt regime.
pub fn postselection_probability(
    setting: &InterferometerSetting,
    sigma: f64,
) -> Result<f64, OpticsError> {
    let k_sigma = setting.k_sigma(sigma);
    if k_sigma.abs() > 1.0 {
        return Err(OpticsError::OutOfRegime(k_sigma.abs()));
    }
    let projected = k_sigma * (setting.phi() / 2.0).cos();
    Ok(projected * projected)
}

/// Weak value of the which-path observable, `A_w ≈ −2i/φ`.
pub fn weak_value(phi: f64) -> Result<Complex64, OpticsError> {
    if phi == 0.0 {
        return Err(OpticsError::ZeroPhase);
    }
    Ok(Complex64::new(0.0, -2.0 / phi))
}

/// Dark-port centroid `⟨x⟩ = −φ/k` in meters (inverse-weak-value shift).
///
/// The formula is the small-`a` limit (`a = tan(φ/2)/(kσ)`) of the exact
/// two-lobe centroid `−2aσ/(1+a²)` and assumes the amplification regime
/// `|φ| < |kσ|`; see [`weak_value_report`] for the regime flag.
pub fn inverse_weak_value_shift(setting: &InterferometerSetting) -> Result<f64, OpticsError> {
    if setting.k() == 0.0 {
        return Err(OpticsError::ZeroMomentum);
    }
    Ok(-setting.phi() / setting.k())
}

/// Normalized split-detection signal `−√(2/π) φ/(kσ)`.
///
/// Equal to `√(2/(πσ²)) ⟨x⟩` with `⟨x⟩` from
/// [`inverse_weak_value_shift`]; odd in both `φ` and `k`.
pub fn split_signal_analytic(
    setting: &InterferometerSetting,
    sigma: f64,
) -> Result<f64, OpticsError> {
    if setting.k() == 0.0 {
        return Err(OpticsError::ZeroMomentum);
    }
    Ok(-SPLIT_TO_HOMODYNE_SNR_RATIO * setting.phi() / setting.k_sigma(sigma))
}

/// Aggregate weak-value quantities for one working point.
pub fn weak_value_report(
    setting: &InterferometerSetting,
    sigma: f64,
) -> Result<WeakValueReport, OpticsError> {
    let weak_value = weak_value(setting.phi())?;
    let inverse_shift = inverse_weak_value_shift(setting)?;
    let postselection = postselection_probability(setting, sigma)?;
    Ok(WeakValueReport {
        weak_value,
        inverse_shift,
        postselection,
        regime_warning: setting.phi().abs() >= setting.k_sigma(sigma).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn beam(amplitude: f64, sigma: f64) -> GaussianBeam {
        GaussianBeam::new(amplitude, sigma, 795e-9, 625e-6).unwrap()
    }

    fn setting(k: f64, phi: f64) -> InterferometerSetting {
        InterferometerSetting::new(k, phi).unwrap()
    }

    #[test]
    fn input_field_values() {
        let unit = beam(1.0, 1.0);
        assert_eq!(input_field(&unit, 0.0), 1.0);
        assert_abs_diff_eq!(input_field(&unit, 2.0), 0.367_879_441_171_442_33, epsilon = 1e-15);

        let desk = beam(2.0, 775e-6);
        assert_abs_diff_eq!(input_field(&desk, 775e-6), 1.557_601_566_142_809_8, epsilon = 1e-14);
    }

    #[test]
    fn aligned_dark_port_is_dark() {
        let b = beam(1.0, 1.0);
        let s = setting(0.0, 0.0);
        for x in [-2.0, -0.3, 0.0, 0.7, 3.0] {
            let ports = output_fields(&b, &s, x);
            assert_eq!(ports.dark.norm_sqr(), 0.0);
            assert_abs_diff_eq!(ports.bright.norm_sqr(), b.envelope(x).powi(2), epsilon = 1e-15);
        }
    }

    #[test]
    fn quadrature_point_splits_power_evenly() {
        let b = beam(1.0, 1.0);
        let s = setting(0.0, std::f64::consts::FRAC_PI_2);
        let ports = output_fields(&b, &s, 0.0);
        assert_abs_diff_eq!(ports.dark.norm_sqr(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(ports.bright.norm_sqr(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn exact_dark_intensity_value() {
        // kσ = 0.1, φ = 0, x = σ: |dark|² = exp(−0.5) sin²(0.1)
        let b = beam(1.0, 1.0);
        let s = setting(0.1, 0.0);
        let ports = output_fields(&b, &s, 1.0);
        assert_abs_diff_eq!(ports.dark.norm_sqr(), 6.045_115_846_141_07e-3, epsilon = 1e-16);
    }

    #[test]
    fn energy_conservation_pointwise() {
        let b = beam(1.3, 0.8);
        for (k, phi, x) in [
            (0.0, 0.0, 0.4),
            (0.3, 0.2, -1.1),
            (1.25, -2.9, 2.2),
            (-0.7, 1.6, 0.0),
        ] {
            let s = setting(k, phi);
            let ports = output_fields(&b, &s, x);
            let input = input_field(&b, x);
            assert_abs_diff_eq!(
                ports.dark.norm_sqr() + ports.bright.norm_sqr(),
                input * input,
                epsilon = 1e-15 * b.peak_intensity()
            );
        }
    }

    #[test]
    fn homodyne_signal_values() {
        assert_eq!(homodyne_signal(0.0), 0.0);
        assert_abs_diff_eq!(homodyne_signal(std::f64::consts::FRAC_PI_2), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(homodyne_signal(1e-3), 9.999_998_333_333_417e-4, epsilon = 1e-18);
    }

    #[test]
    fn approx_dark_field_value_and_node() {
        let b = beam(1.0, 1.0);
        let s = setting(0.1, 0.0);
        let field = dark_field_approx(&b, &s, 1.0).unwrap();
        assert_abs_diff_eq!(field.re, 0.0, epsilon = 1e-18);
        assert_abs_diff_eq!(field.im, -7.788_007_830_714_05e-2, epsilon = 1e-16);

        // the node of the two-lobe profile sits at tan(φ/2)/k
        let tilted = setting(0.1, 0.3);
        let node = dark_node_position(&tilted).unwrap();
        let at_node = dark_field_approx(&b, &tilted, node).unwrap();
        assert_abs_diff_eq!(at_node.norm(), 0.0, epsilon = 1e-16);
    }

    #[test]
    fn approx_dark_intensity_matches_field_square() {
        let b = beam(1.0, 1.0);
        let s = setting(0.1, 0.0);
        assert_abs_diff_eq!(
            dark_intensity(&b, &s, 1.0).unwrap(),
            6.065_306_597_126_334e-3,
            epsilon = 1e-16
        );
        for x in [-2.5, -0.4, 0.0, 1.7] {
            let field = dark_field_approx(&b, &s, x).unwrap();
            assert_abs_diff_eq!(
                dark_intensity(&b, &s, x).unwrap(),
                field.norm_sqr(),
                epsilon = 1e-18
            );
        }
    }

    #[test]
    fn zero_momentum_is_rejected_by_approximations() {
        let b = beam(1.0, 1.0);
        let s = setting(0.0, 0.1);
        assert_eq!(dark_field_approx(&b, &s, 0.3), Err(OpticsError::ZeroMomentum));
        assert_eq!(dark_intensity(&b, &s, 0.3), Err(OpticsError::ZeroMomentum));
        assert_eq!(dark_node_position(&s), Err(OpticsError::ZeroMomentum));
        assert_eq!(inverse_weak_value_shift(&s), Err(OpticsError::ZeroMomentum));
        assert_eq!(split_signal_analytic(&s, 1.0), Err(OpticsError::ZeroMomentum));
    }

    #[test]
    fn postselection_values_and_domain() {
        assert_eq!(postselection_probability(&setting(0.0, 0.3), 1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(
            postselection_probability(&setting(0.1, 0.0), 1.0).unwrap(),
            0.01,
            epsilon = 1e-17
        );
        assert_eq!(
            postselection_probability(&setting(1.5, 0.0), 1.0),
            Err(OpticsError::OutOfRegime(1.5))
        );
    }

    #[test]
    fn weak_value_examples() {
        assert_eq!(weak_value(2.0).unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(weak_value(-2.0).unwrap(), Complex64::new(0.0, 1.0));
        assert_abs_diff_eq!(weak_value(1e-6).unwrap().norm(), 2e6, epsilon = 1e-6);
        assert_eq!(weak_value(0.0), Err(OpticsError::ZeroPhase));
    }

    #[test]
    fn inverse_shift_values() {
        let s = setting(100.0, 440e-6);
        assert_abs_diff_eq!(inverse_weak_value_shift(&s).unwrap(), -4.4e-6, epsilon = 1e-19);
        assert_eq!(inverse_weak_value_shift(&setting(250.0, 0.0)).unwrap(), 0.0);
    }

    #[test]
    fn split_signal_values_and_oddness() {
        // kσ = 0.0775 comes from k = 100 rad/m at σ = 775 µm
        let sigma = 775e-6;
        let s = setting(100.0, 440e-6);
        assert_abs_diff_eq!(
            split_signal_analytic(&s, sigma).unwrap(),
            -4.529_925_248_429_172e-3,
            epsilon = 1e-15
        );
        assert_eq!(split_signal_analytic(&setting(100.0, 0.0), sigma).unwrap(), 0.0);

        let flipped_phi = setting(100.0, -440e-6);
        let flipped_k = setting(-100.0, 440e-6);
        let base = split_signal_analytic(&s, sigma).unwrap();
        assert_abs_diff_eq!(
            split_signal_analytic(&flipped_phi, sigma).unwrap(),
            -base,
            epsilon = 1e-18
        );
        assert_abs_diff_eq!(
            split_signal_analytic(&flipped_k, sigma).unwrap(),
            -base,
            epsilon = 1e-18
        );
    }

    #[test]
    fn report_carries_regime_flag() {
        let sigma = 775e-6;
        let in_regime = weak_value_report(&setting(100.0, 440e-6), sigma).unwrap();
        assert!(!in_regime.regime_warning);
        assert!((in_regime.postselection - 0.0775f64.powi(2)).abs() < 1e-8);

        let out_of_regime = weak_value_report(&setting(100.0, 0.2), sigma).unwrap();
        assert!(out_of_regime.regime_warning);
    }
}
