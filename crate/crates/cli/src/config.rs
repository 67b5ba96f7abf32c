//! Run configuration: flat `key = value` TOML with one section per
//! subsystem. Every key has a default taken from the small-loop preset, so
//! an empty file is a valid configuration. `--set section.key=value`
//! overrides individual keys from the command line.

use std::path::Path;

use serde::{Deserialize, Serialize};

use sagnac_core::{
    DetectorModel, GaussianBeam, GridSpec, InterferometerSetting, SbcCalibration, ScenarioConfig,
    SweepRange,
};

use crate::error::CliError;

const SMALL_SIGMA: f64 = 775e-6;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BeamSection {
    pub amplitude: f64,
    pub sigma_m: f64,
    pub wavelength_m: f64,
    pub power_w: f64,
}

impl Default for BeamSection {
    fn default() -> Self {
        Self {
            amplitude: 1.0,
            sigma_m: SMALL_SIGMA,
            wavelength_m: 795e-9,
            power_w: 625e-6,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InterferometerSection {
    pub k_rad_per_m: f64,
    pub phi_rad: f64,
}

impl Default for InterferometerSection {
    fn default() -> Self {
        // kσ = 0.1 at the preset beam radius
        Self { k_rad_per_m: 0.1 / SMALL_SIGMA, phi_rad: 0.0 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSection {
    pub half_width_sigmas: f64,
    pub n_points: usize,
}

impl Default for GridSection {
    fn default() -> Self {
        Self { half_width_sigmas: 8.0, n_points: 4097 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DetectorSection {
    pub quantum_efficiency: f64,
    pub transmissivity: f64,
    pub junk_offset: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub saturation_power_w: Option<f64>,
}

impl Default for DetectorSection {
    fn default() -> Self {
        Self {
            quantum_efficiency: 1.0,
            transmissivity: 1.0,
            junk_offset: 0.0,
            saturation_power_w: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SbcSection {
    pub phase_rad_per_volt: f64,
    pub uncertainty_rad_per_volt: f64,
}

impl Default for SbcSection {
    fn default() -> Self {
        Self { phase_rad_per_volt: 22e-6, uncertainty_rad_per_volt: 0.9e-6 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    pub k_min_rad_per_m: f64,
    pub k_max_rad_per_m: f64,
    pub k_points: usize,
    pub drive_min_v: f64,
    pub drive_max_v: f64,
    pub drive_points: usize,
}

impl Default for SweepSection {
    fn default() -> Self {
        Self {
            k_min_rad_per_m: 0.02 / SMALL_SIGMA,
            k_max_rad_per_m: 0.3 / SMALL_SIGMA,
            k_points: 20,
            drive_min_v: 0.0,
            drive_max_v: 20.0,
            drive_points: 21,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunSection {
    pub integration_time_s: f64,
    /// Monte Carlo samples per record; 0 disables Monte Carlo columns.
    pub mc_samples: u64,
    /// Independent seeds in a `montecarlo` batch.
    pub mc_seeds: u64,
    /// Excess-noise SNR divisor applied to every record.
    pub noise_penalty: f64,
    /// Per-method overrides for the `snr` command; fall back to
    /// `noise_penalty` when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noise_penalty_split: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noise_penalty_homodyne: Option<f64>,
    pub seed: u64,
    /// Loop geometry label; metadata only.
    pub geometry: String,
}

impl Default for RunSection {
    fn default() -> Self {
        Self {
            integration_time_s: 300e-6,
            mc_samples: 0,
            mc_seeds: 100,
            noise_penalty: 1.0,
            noise_penalty_split: None,
            noise_penalty_homodyne: None,
            seed: 0x5a67ac,
            geometry: "11 cm x 8 cm".into(),
        }
    }
}

/// The full resolved configuration. The `manifest` and `results` tables
/// written into run manifests are accepted and ignored, so a manifest file
/// is itself a valid `--config` input.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub beam: BeamSection,
    pub interferometer: InterferometerSection,
    pub grid: GridSection,
    pub detector: DetectorSection,
    pub sbc: SbcSection,
    pub sweep: SweepSection,
    pub run: RunSection,
    #[serde(skip_serializing)]
    manifest: Option<toml::Table>,
    #[serde(skip_serializing)]
    results: Option<toml::Table>,
}

impl Config {
    /// Loads a config file and applies `--set` overrides.
    pub fn load(path: &Path, overrides: &[String]) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|err| {
            CliError::config(format!("cannot read config file {}: {err}", path.display()))
        })?;
        let mut table: toml::Table = text.parse().map_err(|err| {
            CliError::config(format!("cannot parse {}: {err}", path.display()))
        })?;
        for entry in overrides {
            apply_override(&mut table, entry)?;
        }
        let config: Config = toml::Value::Table(table).try_into().map_err(|err| {
            CliError::config(format!("invalid configuration: {err}"))
        })?;
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<(), CliError> {
        // surface invalid values early with the offending key named
        self.beam_model().map_err(|err| CliError::config(format!("beam: {err}")))?;
        self.detector_model()
            .map_err(|err| CliError::config(format!("detector: {err}")))?;
        self.grid_spec().map_err(|err| CliError::config(format!("grid: {err}")))?;
        self.setting()
            .map_err(|err| CliError::config(format!("interferometer: {err}")))?;
        if self.sbc.phase_rad_per_volt <= 0.0 {
            return Err(CliError::config(
                "sbc.phase_rad_per_volt: must be positive".to_string(),
            ));
        }
        Ok(())
    }

    pub fn beam_model(&self) -> Result<GaussianBeam, sagnac_core::BeamError> {
        GaussianBeam::new(
            self.beam.amplitude,
            self.beam.sigma_m,
            self.beam.wavelength_m,
            self.beam.power_w,
        )
    }

    pub fn setting(&self) -> Result<InterferometerSetting, sagnac_core::BeamError> {
        InterferometerSetting::new(self.interferometer.k_rad_per_m, self.interferometer.phi_rad)
    }

    pub fn detector_model(&self) -> Result<DetectorModel, sagnac_core::DetectionError> {
        DetectorModel::new(
            self.detector.quantum_efficiency,
            self.detector.transmissivity,
            self.detector.junk_offset,
            self.detector.saturation_power_w,
        )
    }

    pub fn grid_spec(&self) -> Result<GridSpec, sagnac_core::DetectionError> {
        GridSpec::new(self.grid.half_width_sigmas * self.beam.sigma_m, self.grid.n_points)
    }

    pub fn sbc_calibration(&self) -> SbcCalibration {
        SbcCalibration {
            phase_per_volt: self.sbc.phase_rad_per_volt,
            uncertainty: self.sbc.uncertainty_rad_per_volt,
        }
    }

    /// Builds the scenario shared by the sweep commands.
    pub fn scenario(&self) -> Result<ScenarioConfig, CliError> {
        let beam = self.beam_model().map_err(|err| CliError::config(format!("beam: {err}")))?;
        let detector = self
            .detector_model()
            .map_err(|err| CliError::config(format!("detector: {err}")))?;
        let grid = self.grid_spec().map_err(|err| CliError::config(format!("grid: {err}")))?;
        let k_range = SweepRange::new(
            self.sweep.k_min_rad_per_m,
            self.sweep.k_max_rad_per_m,
            self.sweep.k_points,
        )
        .map_err(|err| CliError::config(format!("sweep.k_*: {err}")))?;
        let drive_range = SweepRange::new(
            self.sweep.drive_min_v,
            self.sweep.drive_max_v,
            self.sweep.drive_points,
        )
        .map_err(|err| CliError::config(format!("sweep.drive_*: {err}")))?;
        Ok(ScenarioConfig {
            beam,
            k: self.interferometer.k_rad_per_m,
            detector,
            grid,
            integration_time: self.run.integration_time_s,
            mc_samples: self.run.mc_samples,
            noise_penalty: self.run.noise_penalty,
            seed: self.run.seed,
            k_range: Some(k_range),
            drive_range: Some(drive_range),
            geometry: Some(self.run.geometry.clone()),
        })
    }
}

/// Applies one `section.key=value` override to the raw TOML table.
fn apply_override(table: &mut toml::Table, entry: &str) -> Result<(), CliError> {
    let (path, raw_value) = entry.split_once('=').ok_or_else(|| {
        CliError::config(format!("--set expects section.key=value, got `{entry}`"))
    })?;
    let path = path.trim();
    let segments: Vec<&str> = path.split('.').map(str::trim).collect();
    if segments.len() != 2 || segments.iter().any(|segment| segment.is_empty()) {
        return Err(CliError::config(format!(
            "--set key must be section.key, got `{path}`"
        )));
    }
    // parse the value as TOML, falling back to a bare string
    let value = format!("v = {}", raw_value.trim())
        .parse::<toml::Table>()
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(raw_value.trim().to_string()));
    let section = table
        .entry(segments[0].to_string())
        .or_insert_with(|| toml::Value::Table(toml::Table::new()));
    let section = section.as_table_mut().ok_or_else(|| {
        CliError::config(format!("--set {path}: `{}` is not a section", segments[0]))
    })?;
    section.insert(segments[1].to_string(), value);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_config(content: &str) -> tempfile::NamedTempFile {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        file.write_all(content.as_bytes()).unwrap();
        file
    }

    #[test]
    fn empty_config_uses_small_preset() {
        let file = write_config("");
        let config = Config::load(file.path(), &[]).unwrap();
        assert_eq!(config.beam.sigma_m, SMALL_SIGMA);
        assert_eq!(config.run.geometry, "11 cm x 8 cm");
        assert!((config.interferometer.k_rad_per_m * SMALL_SIGMA - 0.1).abs() < 1e-12);
    }

    #[test]
    fn overrides_and_sections() {
        let file = write_config("[beam]\npower_w = 1e-3\n");
        let config = Config::load(
            file.path(),
            &[
                "interferometer.phi_rad=440e-6".to_string(),
                "run.geometry=large loop".to_string(),
            ],
        )
        .unwrap();
        assert_eq!(config.beam.power_w, 1e-3);
        assert_eq!(config.interferometer.phi_rad, 440e-6);
        assert_eq!(config.run.geometry, "large loop");
    }

    #[test]
    fn unknown_key_is_named_in_error() {
        let file = write_config("[beam]\nsigm_m = 1.0\n");
        let err = Config::load(file.path(), &[]).unwrap_err();
        assert!(err.to_string().contains("sigm_m"), "{err}");
    }

    #[test]
    fn invalid_values_are_rejected() {
        let file = write_config("[beam]\nsigma_m = -1.0\n");
        assert!(Config::load(file.path(), &[]).is_err());

        let file = write_config("[grid]\nn_points = 4\n");
        assert!(Config::load(file.path(), &[]).is_err());
    }

    #[test]
    fn bad_set_syntax() {
        let file = write_config("");
        assert!(Config::load(file.path(), &["beam.sigma_m".to_string()]).is_err());
        assert!(Config::load(file.path(), &["sigma_m=1.0".to_string()]).is_err());
    }

    #[test]
    fn manifest_tables_are_tolerated() {
        let file = write_config(
            "[manifest]\ncommand = \"darkport\"\n\n[results]\nnode_m = 1.0\n\n[beam]\npower_w = 5e-4\n",
        );
        let config = Config::load(file.path(), &[]).unwrap();
        assert_eq!(config.beam.power_w, 5e-4);
    }
}
