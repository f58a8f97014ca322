//! Phase-profile synthesis.
//!
//! A phase profile assigns every array element an unwrapped phase; applying
//! it through [`PhaseProfile::to_beamformer`] yields the unit-modulus weights
//! `(1/√M)·exp(jφ_m)`. The local slope of the continuous profile sets the
//! departure direction of the ray leaving the array at that abscissa through
//! `dφ/dx = k·cos(θ)` (generalized Snell's law), which is what all synthesis
//! here is built on:
//!
//! * steering — constant slope `k·cos(θ)`;
//! * focusing — `φ(x) = -k·|target - (x,0)|`, every ray through the target;
//! * quadratic caustic — rays tangent to the parabola `y = (x/a)²`;
//! * circular caustic — rays tangent to the uncertainty disk, closed form
//!   [`caustic_phase`];
//! * piece-wise secure profile — caustic phases on the subarray whose line of
//!   sight to the user crosses the disk, focusing phases on the rest, glued
//!   continuously at the junction.

use num_complex::Complex64;

use crate::channel::{ArrayGeometry, WaveSpec};
use crate::geometry::{segment_intersects_disk, Disk, Point2};
use crate::scenario::Scenario;
use crate::{Error, Result};

/// Which synthesis rule produced an element's phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    Caustic,
    Focusing,
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Label::Caustic => write!(f, "CAUSTIC"),
            Label::Focusing => write!(f, "FOCUSING"),
        }
    }
}

/// Beamforming scheme tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Steering,
    Focusing,
    Quadratic,
    Caustic,
    Proposed,
    Eigen,
}

impl Scheme {
    pub const ALL: [Scheme; 6] = [
        Scheme::Steering,
        Scheme::Focusing,
        Scheme::Quadratic,
        Scheme::Caustic,
        Scheme::Proposed,
        Scheme::Eigen,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Scheme::Steering => "steering",
            Scheme::Focusing => "focusing",
            Scheme::Quadratic => "quadratic",
            Scheme::Caustic => "caustic",
            Scheme::Proposed => "proposed",
            Scheme::Eigen => "eigen",
        }
    }
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "steering" => Ok(Scheme::Steering),
            "focusing" => Ok(Scheme::Focusing),
            "quadratic" => Ok(Scheme::Quadratic),
            "caustic" => Ok(Scheme::Caustic),
            "proposed" => Ok(Scheme::Proposed),
            "eigen" => Ok(Scheme::Eigen),
            other => Err(Error::InvalidParameter(format!(
                "unknown scheme '{other}' (expected steering|focusing|quadratic|caustic|proposed|eigen)"
            ))),
        }
    }
}

/// Per-element unwrapped phases with synthesis labels.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseProfile {
    phases: Vec<f64>,
    labels: Vec<Label>,
}

impl PhaseProfile {
    /// A profile where every element carries the same label.
    pub fn uniform(phases: Vec<f64>, label: Label) -> Self {
        let labels = vec![label; phases.len()];
        Self { phases, labels }
    }

    pub fn new(phases: Vec<f64>, labels: Vec<Label>) -> Self {
        assert_eq!(phases.len(), labels.len());
        Self { phases, labels }
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// Element order reversed (profile of the mirrored scenario).
    pub fn reversed(mut self) -> Self {
        self.phases.reverse();
        self.labels.reverse();
        self
    }

    /// Unit-modulus weights `(1/√M)·exp(jφ_m)`.
    pub fn to_beamformer(&self, scheme: Scheme) -> Beamformer {
        let scale = 1.0 / (self.phases.len() as f64).sqrt();
        let weights = self
            .phases
            .iter()
            .map(|&p| Complex64::from_polar(scale, p))
            .collect();
        Beamformer { weights, scheme }
    }
}

/// Complex weight vector. Unit-modulus per element for phase-only schemes;
/// unit total norm for the eigen benchmark.
#[derive(Debug, Clone, PartialEq)]
pub struct Beamformer {
    weights: Vec<Complex64>,
    scheme: Scheme,
}

impl Beamformer {
    pub fn from_weights(weights: Vec<Complex64>, scheme: Scheme) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidParameter(
                "beamformer must have at least one weight".into(),
            ));
        }
        if weights.iter().any(|w| !w.re.is_finite() || !w.im.is_finite()) {
            return Err(Error::InvalidParameter(
                "beamformer weights must be finite".into(),
            ));
        }
        Ok(Self { weights, scheme })
    }

    pub fn weights(&self) -> &[Complex64] {
        &self.weights
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Split of the array into the caustic run and the focusing rest.
///
/// The caustic set is a single contiguous index run containing an array
/// endpoint (possibly empty, possibly the whole array).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    num_elements: usize,
    /// Inclusive index run of caustic elements.
    caustic_run: Option<(usize, usize)>,
}

impl Partition {
    pub fn num_elements(&self) -> usize {
        self.num_elements
    }

    pub fn is_caustic(&self, m: usize) -> bool {
        match self.caustic_run {
            Some((a, b)) => m >= a && m <= b,
            None => false,
        }
    }

    pub fn caustic_indices(&self) -> Vec<usize> {
        match self.caustic_run {
            Some((a, b)) => (a..=b).collect(),
            None => Vec::new(),
        }
    }

    pub fn focusing_indices(&self) -> Vec<usize> {
        (0..self.num_elements)
            .filter(|&m| !self.is_caustic(m))
            .collect()
    }

    pub fn caustic_len(&self) -> usize {
        match self.caustic_run {
            Some((a, b)) => b - a + 1,
            None => 0,
        }
    }

    pub fn is_pure_focusing(&self) -> bool {
        self.caustic_run.is_none()
    }

    pub fn is_pure_caustic(&self) -> bool {
        self.caustic_len() == self.num_elements
    }

    pub fn anchored_left(&self) -> bool {
        matches!(self.caustic_run, Some((0, _)))
    }

    pub fn anchored_right(&self) -> bool {
        matches!(self.caustic_run, Some((_, b)) if b + 1 == self.num_elements)
    }
}

/// Constant-direction profile `φ(x) = k·cos(θ)·x` for a departure angle
/// `θ ∈ (0, π)`.
pub fn steering_profile(theta: f64, array: &ArrayGeometry, wave: &WaveSpec) -> Result<PhaseProfile> {
    if !(theta > 0.0 && theta < std::f64::consts::PI) {
        return Err(Error::InvalidParameter(format!(
            "steering angle must lie in (0, pi), got {theta}"
        )));
    }
    let slope = wave.wavenumber() * theta.cos();
    let phases = array.element_x().iter().map(|&x| slope * x).collect();
    Ok(PhaseProfile::uniform(phases, Label::Focusing))
}

/// Matched-filter profile `φ(x) = -k·|target - (x,0)|`: every departing ray
/// passes through `target`.
pub fn focusing_profile(
    target: Point2,
    array: &ArrayGeometry,
    wave: &WaveSpec,
) -> Result<PhaseProfile> {
    if !(target.y > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "focus target must lie in the upper half plane, got y = {}",
            target.y
        )));
    }
    let k = wave.wavenumber();
    let phases = array
        .element_x()
        .iter()
        .map(|&x| -k * target.distance(&Point2::new(x, 0.0)))
        .collect();
    Ok(PhaseProfile::uniform(phases, Label::Focusing))
}

/// Profile whose rays are tangent to the parabola `y = (x/a)²`:
/// `φ(x) = (k·a²/4)·asinh(4x/a²)`.
pub fn quadratic_caustic_profile(
    a: f64,
    array: &ArrayGeometry,
    wave: &WaveSpec,
) -> Result<PhaseProfile> {
    if a == 0.0 || !a.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "quadratic trajectory parameter must be nonzero and finite, got {a}"
        )));
    }
    let k = wave.wavenumber();
    let a2 = a * a;
    let phases = array
        .element_x()
        .iter()
        .map(|&x| k * a2 / 4.0 * (4.0 * x / a2).asinh())
        .collect();
    Ok(PhaseProfile::uniform(phases, Label::Caustic))
}

/// Closed-form phase whose induced rays are tangent to `disk`:
///
/// ```text
/// φ(x) = k·( 2·r·atan( (x - x_c + S(x)) / (r + y_c) ) - S(x) ),
/// S(x) = sqrt( (x - x_c)² + y_c² - r² ).
/// ```
///
/// The ray leaving `(x, 0)` with `cos(θ) = φ'(x)/k` passes the disk center at
/// distance exactly `r`, keeping the center on the ray's left; the family's
/// envelope wraps the circle on the side facing larger `x`.
pub fn caustic_phase(x: f64, disk: &Disk, wave: &WaveSpec) -> Result<f64> {
    let c = disk.center();
    let r = disk.radius();
    let w = x - c.x;
    let s2 = w * w + c.y * c.y - r * r;
    if s2 <= 0.0 {
        return Err(Error::InsideShadow);
    }
    let s = s2.sqrt();
    Ok(wave.wavenumber() * (2.0 * r * ((w + s) / (r + c.y)).atan() - s))
}

/// Analytic derivative of [`caustic_phase`] with respect to `x`:
///
/// ```text
/// φ'(x) = k · ( r(r + y_c) - w(w + S) ) / ( w(w + S) + y_c(y_c + r) ),
/// ```
///
/// with `w = x - x_c`. Dividing by the wavenumber gives the departure-ray
/// direction cosine; the identity `y_c·cosθ + w·sinθ = r` (exact by algebra)
/// is what makes every induced ray tangent to the disk.
pub fn caustic_phase_slope(x: f64, disk: &Disk, wave: &WaveSpec) -> Result<f64> {
    let c = disk.center();
    let r = disk.radius();
    let w = x - c.x;
    let s2 = w * w + c.y * c.y - r * r;
    if s2 <= 0.0 {
        return Err(Error::InsideShadow);
    }
    let s = s2.sqrt();
    let a = w * (w + s);
    let b = c.y * (c.y + r);
    Ok(wave.wavenumber() * (r * (r + c.y) - a) / (a + b))
}

/// Departure angle from the array center toward `ue` (the steering scheme's
/// commanded direction).
pub fn steering_angle_toward(ue: Point2) -> f64 {
    ue.y.atan2(ue.x)
}

/// Whole-array circular-caustic profile against the synthesis disk.
///
/// Rays wrap the disk on the side facing the UE; scenarios with the disk on
/// the +x side of the UE are mirrored and reversed like
/// [`piecewise_secure_profile`].
pub fn caustic_profile(scenario: &Scenario) -> Result<PhaseProfile> {
    let sample = |s: &Scenario| -> Result<PhaseProfile> {
        let disk = s.synthesis_disk();
        let phases = s
            .array
            .element_x()
            .iter()
            .map(|&x| caustic_phase(x, &disk, &s.wave))
            .collect::<Result<Vec<_>>>()?;
        Ok(PhaseProfile::uniform(phases, Label::Caustic))
    };
    if scenario.uncertainty.center().x > scenario.ue.x {
        Ok(sample(&scenario.mirrored())?.reversed())
    } else {
        sample(scenario)
    }
}

/// Synthesize the beamformer for any scheme.
///
/// `quadratic_a` is only consulted by [`Scheme::Quadratic`]. The steering
/// scheme aims at the UE direction seen from the array center; the eigen
/// scheme solves the perfect-CSI pencil at the eavesdropper's estimate.
pub fn synthesize(scheme: Scheme, scenario: &Scenario, quadratic_a: f64) -> Result<Beamformer> {
    let profile = match scheme {
        Scheme::Steering => steering_profile(
            steering_angle_toward(scenario.ue),
            &scenario.array,
            &scenario.wave,
        )?,
        Scheme::Focusing => focusing_profile(scenario.ue, &scenario.array, &scenario.wave)?,
        Scheme::Quadratic => quadratic_caustic_profile(quadratic_a, &scenario.array, &scenario.wave)?,
        Scheme::Caustic => caustic_profile(scenario)?,
        Scheme::Proposed => piecewise_secure_profile(scenario)?,
        Scheme::Eigen => {
            let spec = crate::benchmarks::PencilSpec::from_scenario(scenario)?;
            return Ok(crate::benchmarks::optimal_secure_focusing(&spec)?.beamformer);
        }
    };
    Ok(profile.to_beamformer(scheme))
}

/// Partition the array by line of sight: an element joins the focusing set
/// iff the segment from it to the UE misses the (margin-inflated) disk.
///
/// Errors with [`Error::UnsupportedGeometry`] when the UE lies inside the
/// inflated disk, or when the blocked set is neither empty nor a contiguous
/// run containing an array endpoint.
pub fn partition_array(scenario: &Scenario) -> Result<Partition> {
    let disk = scenario.synthesis_disk();
    // Array endpoints sit on y = 0 while the disk keeps center.y > radius,
    // so only the UE can end up inside.
    if disk.contains(&scenario.ue) {
        return Err(Error::UnsupportedGeometry(
            "UE lies inside the (inflated) uncertainty disk".into(),
        ));
    }
    let n = scenario.array.num_elements();
    let mut blocked = Vec::with_capacity(n);
    for m in 0..n {
        let hit = segment_intersects_disk(scenario.array.element_position(m), scenario.ue, &disk)?;
        blocked.push(hit);
    }
    let first = blocked.iter().position(|&b| b);
    let run = match first {
        None => None,
        Some(a) => {
            let b = blocked.iter().rposition(|&x| x).expect("nonempty");
            if blocked[a..=b].iter().any(|&x| !x) {
                return Err(Error::UnsupportedGeometry(
                    "line-of-sight shadow is not a contiguous element run".into(),
                ));
            }
            if a != 0 && b != n - 1 {
                return Err(Error::UnsupportedGeometry(
                    "line-of-sight shadow does not contain an array endpoint".into(),
                ));
            }
            Some((a, b))
        }
    };
    Ok(Partition {
        num_elements: n,
        caustic_run: run,
    })
}

/// The piece-wise secure profile: caustic phases on the shadowed run,
/// focusing phases elsewhere, glued continuously at the junction abscissa
/// (midpoint between the adjacent caustic and focusing elements).
///
/// Scenarios whose shadow is anchored at the +x end are handled by mirroring
/// across the y-axis, synthesizing, and reversing the element order.
pub fn piecewise_secure_profile(scenario: &Scenario) -> Result<PhaseProfile> {
    let partition = partition_array(scenario)?;
    if partition.is_pure_focusing() {
        return focusing_profile(scenario.ue, &scenario.array, &scenario.wave);
    }
    let needs_mirror = if partition.is_pure_caustic() {
        // No junction to orient by; bend rays around the side facing the UE.
        scenario.uncertainty.center().x > scenario.ue.x
    } else {
        partition.anchored_right() && !partition.anchored_left()
    };
    if needs_mirror {
        let mirrored = scenario.mirrored();
        let mpart = partition_array(&mirrored)?;
        return Ok(canonical_piecewise(&mirrored, &mpart)?.reversed());
    }
    canonical_piecewise(scenario, &partition)
}

/// Piece-wise synthesis for a left-anchored (or full) caustic run.
fn canonical_piecewise(scenario: &Scenario, partition: &Partition) -> Result<PhaseProfile> {
    let disk = scenario.synthesis_disk();
    let wave = &scenario.wave;
    let xs = scenario.array.element_x();

    if partition.is_pure_caustic() {
        let phases = xs
            .iter()
            .map(|&x| caustic_phase(x, &disk, wave))
            .collect::<Result<Vec<_>>>()?;
        return Ok(PhaseProfile::uniform(phases, Label::Caustic));
    }
    let (first, last) = match partition.caustic_run {
        Some(run) if run.0 == 0 => run,
        _ => {
            return Err(Error::UnsupportedGeometry(
                "piece-wise synthesis expects a left-anchored caustic run".into(),
            ))
        }
    };
    debug_assert_eq!(first, 0);

    // Continuity constant: both closed forms agree at the junction abscissa.
    let x_junction = 0.5 * (xs[last] + xs[last + 1]);
    let k = wave.wavenumber();
    let focus_dist = |x: f64| scenario.ue.distance(&Point2::new(x, 0.0));
    let constant = caustic_phase(x_junction, &disk, wave)? + k * focus_dist(x_junction);

    let mut phases = Vec::with_capacity(xs.len());
    let mut labels = Vec::with_capacity(xs.len());
    for (m, &x) in xs.iter().enumerate() {
        if m <= last {
            phases.push(caustic_phase(x, &disk, wave)?);
            labels.push(Label::Caustic);
        } else {
            phases.push(-k * focus_dist(x) + constant);
            labels.push(Label::Focusing);
        }
    }
    Ok(PhaseProfile::new(phases, labels))
}
