//! Weak-value-inspired phase amplification in a misaligned Sagnac interferometer.
//!
//! A collimated Gaussian beam enters a Sagnac loop in which the two
//! counter-propagating paths pick up opposite transverse momentum kicks `±k`
//! and a relative phase `φ`. The nominally dark output port then carries a
//! faint two-lobe ("split-Gaussian") mode whose centroid sits at `−φ/k`,
//! amplifying a small phase into a large, easily measured beam displacement.
//!
//! The crate is organized around that measurement chain:
//!
//! * [`beam`] — input beam and interferometer settings
//! * [`optics`] — exact and small-tilt closed-form fields and signals
//! * [`profile`] — sampled transverse profiles and quadrature
//! * [`detection`] — split / balanced / centroid detectors, photon budget, SNR
//! * [`montecarlo`] — seeded, counter-based photon-statistics sampling
//! * [`experiments`] — parameter sweeps, presets and calibration helpers
//! * [`plot`] — minimal static SVG line charts for the sweep outputs
//!
//! All operations are pure functions of their inputs; everything is `Send`
//! and safe to evaluate concurrently.

pub mod beam;
pub mod constants;
pub mod detection;
pub mod experiments;
pub mod montecarlo;
pub mod optics;
pub mod plot;
pub mod profile;

pub use beam::{BeamError, GaussianBeam, InterferometerSetting};
pub use detection::{
    apply_detector, balanced_detect, mean_position, photon_budget, snr_analytic, split_detect,
    DetectionError, DetectorModel, PhotonBudget,
};
pub use experiments::{
    headroom_factor, sbc_phase, sweep_k, sweep_phase_snr, two_lobe_profile, DetectionMethod,
    ExperimentError, SbcCalibration, ScenarioConfig, SweepRange, SweepRecord, TwoLobeAnalysis,
};
pub use montecarlo::{monte_carlo_split, MonteCarloResult};
pub use optics::{
    dark_field_approx, dark_intensity, dark_node_position, homodyne_signal, input_field,
    inverse_weak_value_shift, output_fields, postselection_probability, split_signal_analytic,
    weak_value, weak_value_report, OpticsError, PortPair, WeakValueReport,
};
pub use profile::{
    sample_bright_profile, sample_dark_profile, sample_dark_profile_approx, sample_input_profile,
    GridSpec, SampledProfile,
};
