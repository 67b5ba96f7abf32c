//! Sampled 1-D transverse profiles and quadrature.
//!
//! Profiles live on uniform grids symmetric about `x = 0` with an odd point
//! count, so the split-detector boundary is always a grid point. The default
//! grid spans `[−8σ, 8σ]` with 4097 points: Gaussian tails beyond 8σ are
//! below 1e−14 of the peak, and the odd count pins `x = 0`.

use crate::beam::{GaussianBeam, InterferometerSetting};
use crate::detection::DetectionError;
use crate::optics::{dark_intensity, input_field, output_fields, OpticsError};

/// Default half-width of the sampling domain in units of σ.
pub const DEFAULT_HALF_WIDTH_SIGMAS: f64 = 8.0;

/// Default number of grid points.
pub const DEFAULT_N_POINTS: usize = 4097;

/// A validated uniform sampling grid, symmetric about `x = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    half_width: f64,
    n_points: usize,
}

impl GridSpec {
    /// A grid over `[−half_width, half_width]` with `n_points` samples.
    /// Requires `half_width > 0` and an odd `n_points >= 3`.
    pub fn new(half_width: f64, n_points: usize) -> Result<Self, DetectionError> {
        if !half_width.is_finite() || half_width <= 0.0 {
            return Err(DetectionError::InvalidGrid("half-width must be positive and finite"));
        }
        if n_points < 3 {
            return Err(DetectionError::InvalidGrid("need at least 3 grid points"));
        }
        if n_points % 2 == 0 {
            return Err(DetectionError::InvalidGrid(
                "point count must be odd so x = 0 is a grid point",
            ));
        }
        Ok(Self { half_width, n_points })
    }

    /// The default grid for a beam of radius `sigma`: `[−8σ, 8σ]`, 4097 points.
    pub fn default_for(sigma: f64) -> Self {
        Self {
            half_width: DEFAULT_HALF_WIDTH_SIGMAS * sigma,
            n_points: DEFAULT_N_POINTS,
        }
    }

    pub fn x_min(&self) -> f64 {
        -self.half_width
    }

    pub fn x_max(&self) -> f64 {
        self.half_width
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.n_points - 1) as f64
    }

    /// Position of grid point `i`.
    pub fn x(&self, i: usize) -> f64 {
        debug_assert!(i < self.n_points);
        -self.half_width + self.spacing() * i as f64
    }
}

/// A non-negative intensity profile sampled on a [`GridSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct SampledProfile {
    grid: GridSpec,
    values: Vec<f64>,
}

impl SampledProfile {
    /// Sample `intensity(x)` on every grid point. Values must be finite and
    /// non-negative.
    pub fn from_fn(
        grid: GridSpec,
        mut intensity: impl FnMut(f64) -> f64,
    ) -> Result<Self, DetectionError> {
        let values: Vec<f64> = (0..grid.n_points()).map(|i| intensity(grid.x(i))).collect();
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(DetectionError::InvalidValue { index, value });
            }
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn x(&self, i: usize) -> f64 {
        self.grid.x(i)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Index of the `x = 0` grid point.
    pub fn center_index(&self) -> usize {
        (self.len() - 1) / 2
    }

    /// Trapezoid quadrature of the profile over the full domain
    /// (field units² · m).
    pub fn total_power(&self) -> f64 {
        let h = self.grid.spacing();
        let interior: f64 = self.values[1..self.len() - 1].iter().sum();
        h * (interior + 0.5 * (self.values[0] + self.values[self.len() - 1]))
    }

    /// Trapezoid quadrature over `[from, to]`, which must lie inside the
    /// sampled domain. Partial cells at the ends are handled by linear
    /// interpolation, consistent with the trapezoid density model.
    pub fn integrate(&self, from: f64, to: f64) -> Result<f64, DetectionError> {
        let (x_min, x_max) = (self.grid.x_min(), self.grid.x_max());
        let h = self.grid.spacing();
        // tolerate end points that are a rounding error outside the domain
        let slack = 1e-9 * h;
        if from > to || from < x_min - slack || to > x_max + slack {
            return Err(DetectionError::OutOfDomain { from, to });
        }
        let from = from.clamp(x_min, x_max);
        let to = to.clamp(x_min, x_max);

        let value_at = |x: f64| -> f64 {
            let t = (x - x_min) / h;
            let i = (t.floor() as usize).min(self.len() - 2);
            let frac = t - i as f64;
            self.values[i] * (1.0 - frac) + self.values[i + 1] * frac
        };

        // first and last whole grid points inside [from, to]
        let i0 = ((from - x_min) / h).ceil() as usize;
        let i1 = ((to - x_min) / h).floor() as usize;
        if i0 > i1 || i1 >= self.len() {
            // both bounds inside one cell
            return Ok(0.5 * (value_at(from) + value_at(to)) * (to - from));
        }

        let mut sum = 0.0;
        // partial cell on the left
        let x0 = self.grid.x(i0);
        if x0 > from {
            sum += 0.5 * (value_at(from) + self.values[i0]) * (x0 - from);
        }
        // whole cells
        if i1 > i0 {
            let interior: f64 = self.values[i0 + 1..i1].iter().sum();
            sum += h * (interior + 0.5 * (self.values[i0] + self.values[i1]));
        }
        // partial cell on the right
        let x1 = self.grid.x(i1);
        if to > x1 {
            sum += 0.5 * (self.values[i1] + value_at(to)) * (to - x1);
        }
        Ok(sum)
    }
}

/// Exact dark-port intensity `|dark(x)|²` on the grid; valid for any `k`
/// including zero.
pub fn sample_dark_profile(
    beam: &GaussianBeam,
    setting: &InterferometerSetting,
    grid: GridSpec,
) -> SampledProfile {
    SampledProfile::from_fn(grid, |x| output_fields(beam, setting, x).dark.norm_sqr())
        .expect("exact dark intensity is finite and non-negative")
}

/// Exact bright-port intensity `|bright(x)|²` on the grid.
pub fn sample_bright_profile(
    beam: &GaussianBeam,
    setting: &InterferometerSetting,
    grid: GridSpec,
) -> SampledProfile {
    SampledProfile::from_fn(grid, |x| output_fields(beam, setting, x).bright.norm_sqr())
        .expect("exact bright intensity is finite and non-negative")
}

/// Input-beam intensity `|E0 exp(−x²/4σ²)|²` on the grid.
pub fn sample_input_profile(beam: &GaussianBeam, grid: GridSpec) -> SampledProfile {
    SampledProfile::from_fn(grid, |x| {
        let field = input_field(beam, x);
        field * field
    })
    .expect("input intensity is finite and non-negative")
}

/// Small-tilt two-lobe intensity on the grid; errors when `k = 0`.
pub fn sample_dark_profile_approx(
    beam: &GaussianBeam,
    setting: &InterferometerSetting,
    grid: GridSpec,
) -> Result<SampledProfile, OpticsError> {
    if setting.k() == 0.0 {
        return Err(OpticsError::ZeroMomentum);
    }
    Ok(SampledProfile::from_fn(grid, |x| {
        dark_intensity(beam, setting, x).expect("k != 0 checked above")
    })
    .expect("two-lobe intensity is finite and non-negative"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beam::GaussianBeam;
    use approx::assert_abs_diff_eq;

    const SIGMA: f64 = 775e-6;

    fn beam() -> GaussianBeam {
        GaussianBeam::new(1.0, SIGMA, 795e-9, 625e-6).unwrap()
    }

    #[test]
    fn grid_validation() {
        assert!(GridSpec::new(1.0, 4097).is_ok());
        assert!(matches!(GridSpec::new(0.0, 5), Err(DetectionError::InvalidGrid(_))));
        assert!(GridSpec::new(1.0, 4096).is_err());
        assert!(GridSpec::new(1.0, 1).is_err());
        let grid = GridSpec::default_for(SIGMA);
        assert_eq!(grid.n_points(), 4097);
        assert_abs_diff_eq!(grid.x_max(), 8.0 * SIGMA, epsilon = 1e-18);
        assert_eq!(grid.x((grid.n_points() - 1) / 2), 0.0);
    }

    #[test]
    fn gaussian_total_power_matches_closed_form() {
        // ∫ E0² exp(−x²/2σ²) dx = E0² σ √(2π); truncation beyond 8σ is ~1e−15
        let grid = GridSpec::default_for(SIGMA);
        let profile = sample_input_profile(&beam(), grid);
        let expected = SIGMA * (2.0 * std::f64::consts::PI).sqrt();
        assert!((profile.total_power() - expected).abs() / expected < 1e-10);
    }

    #[test]
    fn two_lobe_total_power_matches_closed_form() {
        // ∫ P_ps (x/σ)² exp(−x²/2σ²) dx = P_ps σ √(2π) for φ = 0
        let setting = InterferometerSetting::new(0.1 / SIGMA, 0.0).unwrap();
        let grid = GridSpec::default_for(SIGMA);
        let profile = sample_dark_profile_approx(&beam(), &setting, grid).unwrap();
        let expected = 0.01 * SIGMA * (2.0 * std::f64::consts::PI).sqrt();
        assert!((profile.total_power() - expected).abs() / expected < 1e-8);
    }

    #[test]
    fn integrate_subinterval_and_domain_checks() {
        let grid = GridSpec::default_for(SIGMA);
        let profile = sample_input_profile(&beam(), grid);

        // halves add up to the total
        let left = profile.integrate(grid.x_min(), 0.0).unwrap();
        let right = profile.integrate(0.0, grid.x_max()).unwrap();
        assert_abs_diff_eq!(
            left + right,
            profile.total_power(),
            epsilon = 1e-14 * profile.total_power()
        );

        // off-grid bounds agree with a shifted-grid quadrature to O(h²)
        let a = 0.3 * SIGMA;
        let b = 2.7 * SIGMA;
        let partial = profile.integrate(a, b).unwrap();
        let erf_like = |x: f64| {
            // dense reference quadrature, independent step
            let n = 200_001;
            let h = x / (n - 1) as f64;
            let mut sum = 0.0;
            for i in 0..n {
                let xi = h * i as f64;
                let v = (-xi * xi / (2.0 * SIGMA * SIGMA)).exp();
                sum += if i == 0 || i == n - 1 { 0.5 * v } else { v };
            }
            sum * h
        };
        let reference = erf_like(b) - erf_like(a);
        // O(h²) trapezoid error with non-vanishing endpoint slopes
        assert!((partial - reference).abs() / reference < 1e-5);

        assert!(matches!(
            profile.integrate(-9.0 * SIGMA, 0.0),
            Err(DetectionError::OutOfDomain { .. })
        ));
        assert!(profile.integrate(1.0 * SIGMA, 0.5 * SIGMA).is_err());
    }

    #[test]
    fn zero_profile_integrates_to_zero() {
        let setting = InterferometerSetting::new(0.0, 0.0).unwrap();
        let profile = sample_dark_profile(&beam(), &setting, GridSpec::default_for(SIGMA));
        assert_eq!(profile.total_power(), 0.0);
    }

    #[test]
    fn dark_profile_shape() {
        // φ = 0: symmetric two lobes with a node at the origin
        let setting = InterferometerSetting::new(0.1 / SIGMA, 0.0).unwrap();
        let profile = sample_dark_profile(&beam(), &setting, GridSpec::default_for(SIGMA));
        let center = profile.center_index();
        assert_eq!(profile.values()[center], 0.0);
        for offset in [1, 10, 500] {
            let left = profile.values()[center - offset];
            let right = profile.values()[center + offset];
            assert_abs_diff_eq!(left, right, epsilon = 1e-15);
            assert!(left > 0.0);
        }

        // φ > 0, k > 0: node moves right, left lobe carries more power
        let tilted = InterferometerSetting::new(0.1 / SIGMA, 440e-6).unwrap();
        let tilted_profile = sample_dark_profile(&beam(), &tilted, GridSpec::default_for(SIGMA));
        let node = (tilted.phi() / 2.0).tan() / tilted.k();
        assert!(node > 0.0);
        let left = tilted_profile.integrate(tilted_profile.grid().x_min(), node).unwrap();
        let right = tilted_profile.integrate(node, tilted_profile.grid().x_max()).unwrap();
        assert!(left > right);
    }

    #[test]
    fn rejects_negative_values() {
        let grid = GridSpec::new(1.0, 5).unwrap();
        let result = SampledProfile::from_fn(grid, |x| x);
        assert!(matches!(result, Err(DetectionError::InvalidValue { .. })));
    }
}
