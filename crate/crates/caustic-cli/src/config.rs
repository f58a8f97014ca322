//! Run configuration: a single JSON file, optionally patched by repeatable
//! `--set key=value` overrides, resolved into core types.

use std::path::Path;

use serde::{Deserialize, Serialize};

use caustic_core::{
    ArrayGeometry, Disk, GridSpec, LinkBudget, Point2, RegionSampling, Scenario, Scheme, WaveSpec,
};

use crate::CliError;

/// Element spacing: either meters or the literal token `"half-wavelength"`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Spacing {
    Meters(f64),
    Token(SpacingToken),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpacingToken {
    #[serde(rename = "half-wavelength")]
    HalfWavelength,
}

impl Spacing {
    pub fn resolve(&self, wave: &WaveSpec) -> f64 {
        match self {
            Spacing::Meters(d) => *d,
            Spacing::Token(SpacingToken::HalfWavelength) => wave.wavelength() / 2.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplingConfig {
    pub rings: usize,
    pub angles: usize,
    pub include_center: bool,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        Self {
            rings: 8,
            angles: 64,
            include_center: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        // Scene covering the array, the disk, and the UE of meter-scale
        // setups at 1 cm x 2 cm resolution.
        Self {
            x_min: -1.1,
            x_max: 1.1,
            y_min: 0.05,
            y_max: 3.65,
            nx: 221,
            ny: 181,
        }
    }
}

fn default_quadratic_a() -> f64 {
    0.5
}

/// The on-disk run configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub carrier_frequency_hz: f64,
    pub num_elements: usize,
    pub element_spacing: Spacing,
    pub ue_position: [f64; 2],
    pub eavesdropper_estimate: [f64; 2],
    pub epsilon_m: f64,
    #[serde(default)]
    pub epsilon_margin_m: f64,
    pub transmit_power_dbm: f64,
    pub noise_power_dbm: f64,
    #[serde(default)]
    pub sampling: SamplingConfig,
    #[serde(default)]
    pub grid: GridConfig,
    pub scheme: String,
    /// Trajectory parameter of the quadratic scheme (`y = (x/a)²`).
    #[serde(default = "default_quadratic_a")]
    pub quadratic_a: f64,
}

/// Core-typed view of a parsed configuration.
#[derive(Debug, Clone)]
pub struct ResolvedConfig {
    pub scenario: Scenario,
    pub sampling: RegionSampling,
    pub grid: GridSpec,
    pub scheme: Scheme,
    pub quadratic_a: f64,
}

impl ScenarioConfig {
    pub fn from_file(path: &Path, overrides: &[String]) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Config(format!("cannot read config {}: {e}", path.display()))
        })?;
        let mut value: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        for entry in overrides {
            apply_override(&mut value, entry)?;
        }
        serde_json::from_value(value).map_err(|e| {
            CliError::Config(format!("{}: {e} (after --set overrides)", path.display()))
        })
    }

    pub fn resolve(&self) -> Result<ResolvedConfig, CliError> {
        let field = |name: &str, e: caustic_core::Error| {
            CliError::Config(format!("field '{name}': {e}"))
        };
        let wave = WaveSpec::from_carrier(self.carrier_frequency_hz)
            .map_err(|e| field("carrier_frequency_hz", e))?;
        let spacing = self.element_spacing.resolve(&wave);
        let array = ArrayGeometry::centered(self.num_elements, spacing)
            .map_err(|e| field("num_elements/element_spacing", e))?;
        let ue = Point2::new(self.ue_position[0], self.ue_position[1]);
        let disk = Disk::new(
            Point2::new(self.eavesdropper_estimate[0], self.eavesdropper_estimate[1]),
            self.epsilon_m,
        )
        .map_err(|e| field("eavesdropper_estimate/epsilon_m", e))?;
        let budget = LinkBudget::from_dbm(self.transmit_power_dbm, self.noise_power_dbm)
            .map_err(|e| field("transmit_power_dbm/noise_power_dbm", e))?;
        let scenario = Scenario::new(wave, array, ue, disk, self.epsilon_margin_m, budget)
            .map_err(|e| field("ue_position/epsilon_margin_m", e))?;
        let sampling = RegionSampling::new(
            self.sampling.rings,
            self.sampling.angles,
            self.sampling.include_center,
        )
        .map_err(|e| field("sampling", e))?;
        let grid = GridSpec::new(
            self.grid.x_min,
            self.grid.x_max,
            self.grid.y_min,
            self.grid.y_max,
            self.grid.nx,
            self.grid.ny,
        )
        .map_err(|e| field("grid", e))?;
        let scheme: Scheme = self
            .scheme
            .parse()
            .map_err(|e: caustic_core::Error| field("scheme", e))?;
        if !(self.quadratic_a != 0.0 && self.quadratic_a.is_finite()) {
            return Err(CliError::Config(
                "field 'quadratic_a': must be nonzero and finite".into(),
            ));
        }
        Ok(ResolvedConfig {
            scenario,
            sampling,
            grid,
            scheme,
            quadratic_a: self.quadratic_a,
        })
    }
}

/// Apply one `key=value` override to the JSON tree. Keys use dot paths
/// (`sampling.rings`); values parse as JSON when possible and as strings
/// otherwise, so `--set scheme=focusing` and `--set ue_position=[1.5,3]`
/// both work.
fn apply_override(root: &mut serde_json::Value, entry: &str) -> Result<(), CliError> {
    let (path, raw) = entry
        .split_once('=')
        .ok_or_else(|| CliError::Config(format!("--set needs key=value, got '{entry}'")))?;
    let value: serde_json::Value = serde_json::from_str(raw)
        .unwrap_or_else(|_| serde_json::Value::String(raw.to_string()));
    let mut node = root;
    let parts: Vec<&str> = path.split('.').collect();
    for (i, part) in parts.iter().enumerate() {
        let last = i + 1 == parts.len();
        if last {
            match node {
                serde_json::Value::Object(map) => {
                    map.insert(part.to_string(), value);
                }
                serde_json::Value::Array(items) => {
                    let idx: usize = part.parse().map_err(|_| {
                        CliError::Config(format!("--set {path}: '{part}' is not an array index"))
                    })?;
                    if idx >= items.len() {
                        return Err(CliError::Config(format!(
                            "--set {path}: index {idx} out of bounds"
                        )));
                    }
                    items[idx] = value;
                }
                _ => {
                    return Err(CliError::Config(format!(
                        "--set {path}: '{part}' does not address an object or array"
                    )))
                }
            }
            return Ok(());
        }
        node = match node {
            serde_json::Value::Object(map) => map
                .entry(part.to_string())
                .or_insert(serde_json::Value::Object(Default::default())),
            serde_json::Value::Array(items) => {
                let idx: usize = part.parse().map_err(|_| {
                    CliError::Config(format!("--set {path}: '{part}' is not an array index"))
                })?;
                items.get_mut(idx).ok_or_else(|| {
                    CliError::Config(format!("--set {path}: index {idx} out of bounds"))
                })?
            }
            _ => {
                return Err(CliError::Config(format!(
                    "--set {path}: '{part}' does not address an object or array"
                )))
            }
        };
    }
    unreachable!("split never yields an empty part list")
}
