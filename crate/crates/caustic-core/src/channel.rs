//! Spherical-wave channel model, array layout, and rate computation.
//!
//! The propagation kernel is `exp(j k r) / r` between two points at distance
//! `r`, with `k = 2π/λ`. The forward-propagated field of a weight vector `f`
//! at a point `p`,
//!
//! ```text
//! g(p) = Σ_m f_m · exp(j k r_m) / r_m
//! ```
//!
//! is the single source of truth for both field maps and rates: the SNR at
//! `p` is `P_T |g(p)|² / σ²`. Under this convention the matched (focusing)
//! weight for a point is `exp(-j k r_m)`, i.e. the focusing phase profile.

use num_complex::Complex64;

use crate::geometry::Point2;
use crate::profiles::Beamformer;
use crate::{Error, Result};

/// Speed of light in vacuum (m/s).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Carrier frequency with its derived wavelength and wavenumber.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSpec {
    carrier_frequency: f64,
    wavelength: f64,
    wavenumber: f64,
}

impl WaveSpec {
    pub fn from_carrier(carrier_frequency_hz: f64) -> Result<Self> {
        if !(carrier_frequency_hz > 0.0) || !carrier_frequency_hz.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "carrier frequency must be positive and finite, got {carrier_frequency_hz}"
            )));
        }
        let wavelength = SPEED_OF_LIGHT / carrier_frequency_hz;
        Ok(Self {
            carrier_frequency: carrier_frequency_hz,
            wavelength,
            wavenumber: 2.0 * std::f64::consts::PI / wavelength,
        })
    }

    pub fn carrier_frequency(&self) -> f64 {
        self.carrier_frequency
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    pub fn wavenumber(&self) -> f64 {
        self.wavenumber
    }
}

/// Uniform linear array along the x-axis, centered on the origin.
///
/// Element `m` sits at `x_m = (m - (M-1)/2) · d`, `y = 0`, so the aperture
/// spans `[-L/2, L/2]` with `L = (M-1) d`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrayGeometry {
    spacing: f64,
    element_x: Vec<f64>,
}

impl ArrayGeometry {
    pub fn centered(num_elements: usize, spacing: f64) -> Result<Self> {
        if num_elements < 2 {
            return Err(Error::InvalidParameter(format!(
                "array needs at least 2 elements, got {num_elements}"
            )));
        }
        if !(spacing > 0.0) || !spacing.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "element spacing must be positive and finite, got {spacing}"
            )));
        }
        let half = (num_elements as f64 - 1.0) / 2.0;
        let element_x = (0..num_elements)
            .map(|m| (m as f64 - half) * spacing)
            .collect();
        Ok(Self { spacing, element_x })
    }

    pub fn num_elements(&self) -> usize {
        self.element_x.len()
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Aperture length `(M-1) d`.
    pub fn aperture(&self) -> f64 {
        self.element_x[self.element_x.len() - 1] - self.element_x[0]
    }

    pub fn element_x(&self) -> &[f64] {
        &self.element_x
    }

    pub fn element_position(&self, m: usize) -> Point2 {
        Point2::new(self.element_x[m], 0.0)
    }
}

/// Per-element complex channel gains toward one receiver.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelVector {
    entries: Vec<Complex64>,
}

impl ChannelVector {
    /// Wrap raw per-element gains (finite, at least one entry).
    pub fn from_entries(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidParameter(
                "channel vector must have at least one entry".into(),
            ));
        }
        if entries.iter().any(|e| !e.re.is_finite() || !e.im.is_finite()) {
            return Err(Error::InvalidParameter(
                "channel vector entries must be finite".into(),
            ));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// Transmit and receiver-noise power in watts, built from dBm figures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    transmit_power: f64,
    noise_power: f64,
}

impl LinkBudget {
    pub fn from_dbm(transmit_dbm: f64, noise_dbm: f64) -> Result<Self> {
        if !transmit_dbm.is_finite() || !noise_dbm.is_finite() {
            return Err(Error::InvalidParameter(
                "power levels must be finite dBm values".into(),
            ));
        }
        Ok(Self {
            transmit_power: 10f64.powf((transmit_dbm - 30.0) / 10.0),
            noise_power: 10f64.powf((noise_dbm - 30.0) / 10.0),
        })
    }

    pub fn transmit_power(&self) -> f64 {
        self.transmit_power
    }

    pub fn noise_power(&self) -> f64 {
        self.noise_power
    }

    /// Transmit SNR scale `P_T / σ²`.
    pub fn gamma(&self) -> f64 {
        self.transmit_power / self.noise_power
    }
}

/// Spherical-wave kernel `exp(j k r) / r` between `tx` and `rx`.
pub fn green(tx: Point2, rx: Point2, wave: &WaveSpec) -> Result<Complex64> {
    let r = tx.distance(&rx);
    if r == 0.0 {
        return Err(Error::CoincidentPoints);
    }
    Ok(Complex64::from_polar(1.0 / r, wave.wavenumber() * r))
}

/// Channel vector from every array element toward `receiver`.
pub fn channel_vector(
    array: &ArrayGeometry,
    receiver: Point2,
    wave: &WaveSpec,
) -> Result<ChannelVector> {
    let entries = array
        .element_x()
        .iter()
        .map(|&x| green(Point2::new(x, 0.0), receiver, wave))
        .collect::<Result<Vec<_>>>()?;
    Ok(ChannelVector { entries })
}

/// Forward-propagated field `g(p) = Σ_m f_m exp(j k r_m) / r_m`.
pub fn received_amplitude(
    f: &Beamformer,
    array: &ArrayGeometry,
    p: Point2,
    wave: &WaveSpec,
) -> Result<Complex64> {
    debug_assert_eq!(f.weights().len(), array.num_elements());
    let mut acc = Complex64::new(0.0, 0.0);
    for (&w, &x) in f.weights().iter().zip(array.element_x()) {
        acc += w * green(Point2::new(x, 0.0), p, wave)?;
    }
    Ok(acc)
}

/// Achievable rate `log2(1 + P_T g² / σ²)` in bits/s/Hz for a received power
/// gain `g_mag2 = |g(p)|²`.
pub fn rate(g_mag2: f64, budget: &LinkBudget) -> f64 {
    (1.0 + budget.transmit_power() * g_mag2 / budget.noise_power()).log2()
}

/// Secrecy rate `max(0, r_ue - r_e)`.
pub fn secrecy_rate(r_ue: f64, r_e: f64) -> f64 {
    (r_ue - r_e).max(0.0)
}
