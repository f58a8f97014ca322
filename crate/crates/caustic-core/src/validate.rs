//! Ray-level validation of synthesized profiles against their geometric
//! intent.
//!
//! Every profile here is a sampled closed form, so each element gets two
//! departure-direction estimates: the analytic slope of its branch's closed
//! form, and a central finite difference of that closed form at the element
//! spacing. The direction cosine is `φ'(x)/k`; the induced ray is checked
//! against the scheme's target:
//!
//! * steering — angle equals the commanded angle;
//! * focusing — ray line passes through the focus (miss distance);
//! * circular caustic — ray-line distance to the disk center equals the
//!   synthesis radius;
//! * quadratic — ray line touches the parabola at its tangency point.
//!
//! Analytic-slope residuals are exact up to rounding; finite-difference
//! residuals carry an O(d²·φ''') truncation error and get wider tolerances.

use crate::channel::WaveSpec;
use crate::geometry::{Disk, Point2};
use crate::profiles::{partition_array, steering_angle_toward, Label, Scheme};
use crate::scenario::Scenario;
use crate::{Error, Result};

/// Angle tolerance for the steering scheme (the profile is linear, so even
/// the finite difference is exact up to rounding).
pub const TOL_STEERING_ANGLE: f64 = 1e-9;
/// Focus miss-distance tolerance for analytic-slope rays.
pub const TOL_FOCUS_MISS_ANALYTIC: f64 = 1e-6;
/// Focus miss-distance tolerance for finite-difference rays at d = λ/2
/// (truncation is O(d²·y²/r³), a few µm at meter-scale scenarios).
pub const TOL_FOCUS_MISS_FD: f64 = 1e-4;
/// Relative disk-tangency tolerance (× synthesis radius) for analytic rays.
pub const TOL_TANGENCY_ANALYTIC_REL: f64 = 1e-9;
/// Relative disk-tangency tolerance (× synthesis radius) for FD rays.
pub const TOL_TANGENCY_FD_REL: f64 = 2e-2;
/// Parabola tangency tolerance for analytic rays.
pub const TOL_PARABOLA_ANALYTIC: f64 = 1e-6;
/// Parabola tangency tolerance for FD rays.
pub const TOL_PARABOLA_FD: f64 = 1e-3;

/// One element's departure-direction checks.
#[derive(Debug, Clone, Copy)]
pub struct ElementCheck {
    pub index: usize,
    pub x: f64,
    pub label: Label,
    /// Direction cosine from the branch's analytic slope.
    pub cos_analytic: f64,
    /// Direction cosine from a central difference of the branch closed form
    /// at the element spacing.
    pub cos_fd: f64,
    /// Departure angle `acos(cos_analytic)` in (0, π).
    pub angle_rad: f64,
    pub residual_analytic: f64,
    pub residual_fd: f64,
    pub tol_analytic: f64,
    pub tol_fd: f64,
    pub pass: bool,
}

/// Whole-profile validation result.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub scheme: Scheme,
    pub checks: Vec<ElementCheck>,
    pub max_residual_analytic: f64,
    pub max_residual_fd: f64,
    pub all_pass: bool,
}

/// Closed-form phase law of one profile branch, expressed in the original
/// (unmirrored) coordinates.
enum PhaseLaw {
    Steering { theta: f64 },
    Focus { target: Point2 },
    /// Rays tangent to `disk`, center kept on the ray's left.
    Caustic { disk: Disk },
    /// Mirror image: rays tangent to `disk`, center on the ray's right.
    /// `disk` is the original (unmirrored) disk.
    CausticMirrored { disk: Disk },
    Quadratic { a: f64 },
}

impl PhaseLaw {
    fn phase(&self, x: f64, wave: &WaveSpec) -> Result<f64> {
        let k = wave.wavenumber();
        match self {
            PhaseLaw::Steering { theta } => Ok(k * theta.cos() * x),
            PhaseLaw::Focus { target } => Ok(-k * target.distance(&Point2::new(x, 0.0))),
            PhaseLaw::Caustic { disk } => crate::profiles::caustic_phase(x, disk, wave),
            PhaseLaw::CausticMirrored { disk } => {
                crate::profiles::caustic_phase(-x, &disk.mirrored(), wave)
            }
            PhaseLaw::Quadratic { a } => {
                let a2 = a * a;
                Ok(k * a2 / 4.0 * (4.0 * x / a2).asinh())
            }
        }
    }

    fn slope(&self, x: f64, wave: &WaveSpec) -> Result<f64> {
        let k = wave.wavenumber();
        match self {
            PhaseLaw::Steering { theta } => Ok(k * theta.cos()),
            PhaseLaw::Focus { target } => {
                let d = target.distance(&Point2::new(x, 0.0));
                Ok(k * (target.x - x) / d)
            }
            PhaseLaw::Caustic { disk } => crate::profiles::caustic_phase_slope(x, disk, wave),
            PhaseLaw::CausticMirrored { disk } => {
                Ok(-crate::profiles::caustic_phase_slope(-x, &disk.mirrored(), wave)?)
            }
            PhaseLaw::Quadratic { a } => {
                let t = 4.0 * x / (a * a);
                Ok(k / (1.0 + t * t).sqrt())
            }
        }
    }

    fn label(&self) -> Label {
        match self {
            PhaseLaw::Steering { .. } | PhaseLaw::Focus { .. } => Label::Focusing,
            _ => Label::Caustic,
        }
    }

    /// Perpendicular miss distance of the ray leaving `(x, 0)` with direction
    /// cosine `cos` from this law's geometric target.
    fn residual(&self, x: f64, cos: f64) -> f64 {
        let c = cos.clamp(-1.0, 1.0);
        let s = (1.0 - c * c).sqrt();
        let line_distance = |p: Point2| (c * p.y - s * (p.x - x)).abs();
        match self {
            PhaseLaw::Steering { theta } => (c.acos() - theta).abs(),
            PhaseLaw::Focus { target } => line_distance(*target),
            PhaseLaw::Caustic { disk } | PhaseLaw::CausticMirrored { disk } => {
                (line_distance(disk.center()) - disk.radius()).abs()
            }
            PhaseLaw::Quadratic { a } => {
                // The x-intercept map of the parabola construction sends the
                // tangency abscissa ξ to ξ/2, so launch points with x > 0
                // carry the tangent ray touching at (2x, (2x/a)²). Negative
                // abscissas admit no upward tangent with the profile's
                // (positive) direction cosine; they have no tangency target.
                if x <= 0.0 {
                    return 0.0;
                }
                let tx = 2.0 * x;
                line_distance(Point2::new(tx, (tx / a) * (tx / a)))
            }
        }
    }

    fn tolerances(&self) -> (f64, f64) {
        match self {
            PhaseLaw::Steering { .. } => (TOL_STEERING_ANGLE, TOL_STEERING_ANGLE),
            PhaseLaw::Focus { .. } => (TOL_FOCUS_MISS_ANALYTIC, TOL_FOCUS_MISS_FD),
            PhaseLaw::Caustic { disk } | PhaseLaw::CausticMirrored { disk } => (
                TOL_TANGENCY_ANALYTIC_REL * disk.radius(),
                TOL_TANGENCY_FD_REL * disk.radius(),
            ),
            PhaseLaw::Quadratic { .. } => (TOL_PARABOLA_ANALYTIC, TOL_PARABOLA_FD),
        }
    }
}

/// Per-element phase laws for a scheme, in original coordinates.
fn element_laws(scheme: Scheme, scenario: &Scenario, quadratic_a: f64) -> Result<Vec<PhaseLaw>> {
    let n = scenario.array.num_elements();
    match scheme {
        Scheme::Steering => {
            let theta = steering_angle_toward(scenario.ue);
            Ok((0..n).map(|_| PhaseLaw::Steering { theta }).collect())
        }
        Scheme::Focusing => Ok((0..n)
            .map(|_| PhaseLaw::Focus {
                target: scenario.ue,
            })
            .collect()),
        Scheme::Quadratic => Ok((0..n).map(|_| PhaseLaw::Quadratic { a: quadratic_a }).collect()),
        Scheme::Caustic => {
            let disk = scenario.synthesis_disk();
            let mirrored = disk.center().x > scenario.ue.x;
            Ok((0..n)
                .map(|_| {
                    if mirrored {
                        PhaseLaw::CausticMirrored { disk }
                    } else {
                        PhaseLaw::Caustic { disk }
                    }
                })
                .collect())
        }
        Scheme::Proposed => {
            let partition = partition_array(scenario)?;
            let disk = scenario.synthesis_disk();
            let mirrored = if partition.is_pure_caustic() {
                disk.center().x > scenario.ue.x
            } else {
                partition.anchored_right() && !partition.anchored_left()
            };
            Ok((0..n)
                .map(|m| {
                    if partition.is_caustic(m) {
                        if mirrored {
                            PhaseLaw::CausticMirrored { disk }
                        } else {
                            PhaseLaw::Caustic { disk }
                        }
                    } else {
                        PhaseLaw::Focus {
                            target: scenario.ue,
                        }
                    }
                })
                .collect())
        }
        Scheme::Eigen => Err(Error::InvalidParameter(
            "the eigen benchmark has no geometric ray target to validate".into(),
        )),
    }
}

/// Validate a scheme's profile element by element.
pub fn validate_scheme(
    scheme: Scheme,
    scenario: &Scenario,
    quadratic_a: f64,
) -> Result<ValidationReport> {
    let laws = element_laws(scheme, scenario, quadratic_a)?;
    let wave = &scenario.wave;
    let k = wave.wavenumber();
    let d = scenario.array.spacing();
    let mut checks = Vec::with_capacity(laws.len());
    let mut max_an = 0.0f64;
    let mut max_fd = 0.0f64;
    let mut all_pass = true;
    for (m, law) in laws.iter().enumerate() {
        let x = scenario.array.element_x()[m];
        let cos_analytic = law.slope(x, wave)? / k;
        let cos_fd = (law.phase(x + d, wave)? - law.phase(x - d, wave)?) / (2.0 * d * k);
        let residual_analytic = law.residual(x, cos_analytic);
        let residual_fd = law.residual(x, cos_fd);
        let (tol_analytic, tol_fd) = law.tolerances();
        let pass = residual_analytic <= tol_analytic && residual_fd <= tol_fd;
        all_pass &= pass;
        max_an = max_an.max(residual_analytic);
        max_fd = max_fd.max(residual_fd);
        checks.push(ElementCheck {
            index: m,
            x,
            label: law.label(),
            cos_analytic,
            cos_fd,
            angle_rad: cos_analytic.clamp(-1.0, 1.0).acos(),
            residual_analytic,
            residual_fd,
            tol_analytic,
            tol_fd,
            pass,
        });
    }
    Ok(ValidationReport {
        scheme,
        checks,
        max_residual_analytic: max_an,
        max_residual_fd: max_fd,
        all_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{ArrayGeometry, LinkBudget, WaveSpec};

    fn paper_scenario(margin: f64) -> Scenario {
        let w = WaveSpec::from_carrier(28e9).unwrap();
        Scenario::new(
            w,
            ArrayGeometry::centered(256, w.wavelength() / 2.0).unwrap(),
            Point2::new(1.5, 3.0),
            Disk::new(Point2::new(0.4, 1.25), 0.25).unwrap(),
            margin,
            LinkBudget::from_dbm(20.0, -50.0).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn steering_angles_are_exact() {
        let s = paper_scenario(0.0);
        let report = validate_scheme(Scheme::Steering, &s, 0.5).unwrap();
        assert!(report.all_pass);
        assert!(report.max_residual_analytic <= 1e-12);
        assert!(report.max_residual_fd <= 1e-9, "linear profile: FD exact");
        let theta = steering_angle_toward(s.ue);
        for c in &report.checks {
            assert!((c.angle_rad - theta).abs() < 1e-9);
        }
    }

    #[test]
    fn focusing_rays_hit_the_target() {
        let s = paper_scenario(0.0);
        let report = validate_scheme(Scheme::Focusing, &s, 0.5).unwrap();
        assert!(report.all_pass);
        assert!(report.max_residual_analytic <= 1e-9, "analytic rays are exact");
        // FD rays carry the d² truncation error, around 2 µm here.
        assert!(report.max_residual_fd <= TOL_FOCUS_MISS_FD);
        assert!(report.max_residual_fd >= 1e-7, "FD error is real, not rounding");
    }

    #[test]
    fn proposed_rays_clear_the_disk_and_pass_tangency() {
        let s = paper_scenario(0.0);
        let report = validate_scheme(Scheme::Proposed, &s, 0.5).unwrap();
        assert!(report.all_pass);
        let eps = s.synthesis_disk().radius();
        for c in &report.checks {
            if c.label == Label::Caustic {
                assert!(c.residual_analytic <= 1e-9 * eps);
                assert!(c.residual_fd <= 2e-2 * eps);
            }
        }
    }

    #[test]
    fn mirrored_scenario_validates_identically() {
        let s = paper_scenario(0.02);
        let m = s.mirrored();
        let a = validate_scheme(Scheme::Proposed, &s, 0.5).unwrap();
        let b = validate_scheme(Scheme::Proposed, &m, 0.5).unwrap();
        assert!(b.all_pass);
        let n = a.checks.len();
        for i in 0..n {
            let (ca, cb) = (&a.checks[i], &b.checks[n - 1 - i]);
            assert_eq!(ca.label, cb.label);
            assert!((ca.residual_analytic - cb.residual_analytic).abs() <= 1e-12);
            assert!(
                (ca.cos_analytic + cb.cos_analytic).abs() <= 1e-12,
                "mirror negates direction cosines"
            );
        }
    }

    #[test]
    fn quadratic_tangency_on_covered_half() {
        let s = paper_scenario(0.0);
        let report = validate_scheme(Scheme::Quadratic, &s, 0.5).unwrap();
        assert!(report.all_pass);
        assert!(report.max_residual_analytic <= 1e-9);
        let positive = report.checks.iter().filter(|c| c.x > 0.0).count();
        assert!(positive >= 100, "half the 256-element array has targets");
        for c in report.checks.iter().filter(|c| c.x > 0.0) {
            assert!(c.residual_analytic <= 1e-9, "x = {}: {}", c.x, c.residual_analytic);
            assert!(c.residual_fd <= TOL_PARABOLA_FD);
        }
    }

    #[test]
    fn snell_magnitude_bound() {
        let s = paper_scenario(0.0);
        for scheme in [Scheme::Steering, Scheme::Focusing, Scheme::Quadratic, Scheme::Proposed] {
            let report = validate_scheme(scheme, &s, 0.5).unwrap();
            for c in &report.checks {
                assert!(
                    c.cos_fd.abs() <= 1.0 + 1e-6,
                    "{scheme}: FD cosine magnitude {}",
                    c.cos_fd
                );
                assert!(c.cos_analytic.abs() <= 1.0 + 1e-12);
            }
        }
    }

    #[test]
    fn eigen_has_no_ray_model() {
        let s = paper_scenario(0.0);
        assert!(validate_scheme(Scheme::Eigen, &s, 0.5).is_err());
    }
}
