//! Perfect-CSI "optimal secure focusing" baseline.
//!
//! With known channels `h` (user) and `h_e` (eavesdropper estimate) and
//! transmit SNR scale `γ = P_T/σ²`, the baseline beamformer is the dominant
//! generalized eigenvector of the pencil
//!
//! ```text
//! ( I + γ h h^H ,  I + γ h_e h_e^H ),
//! ```
//!
//! i.e. the unit-norm `f` maximizing `(1 + γ|h^H f|²) / (1 + γ|h_e^H f|²)`.
//!
//! # Why a 2-D reduction is exact
//!
//! Split any unit-norm `f` into its component inside `span{h, h_e}` and the
//! orthogonal rest. The orthogonal part contributes to neither `|h^H f|` nor
//! `|h_e^H f|`; writing `t = ‖f_span‖² ≤ 1` the quotient becomes
//! `(1 + γ a t)/(1 + γ b t)` for in-span direction-dependent constants
//! `a ≥ b ≥ 0`, which is nondecreasing in `t` whenever `a ≥ b` (and the
//! optimum over directions always has `a ≥ b`, since the span contains a
//! vector orthogonal to `h_e`). Hence `t = 1`: the optimizer lies in the
//! span, and the problem collapses to a 2×2 generalized eigenproblem in an
//! orthonormal basis of `span{h, h_e}`, solved in closed form from the
//! quadratic characteristic polynomial. Total cost is O(M).
//!
//! # Phase convention
//!
//! Rates elsewhere in this crate couple weights to channels through the
//! forward field `g = Σ_m f_m h_m`. The pencil above is therefore formed on
//! the conjugated channel vectors, so that its `|h^H f|` coincides with
//! `|Σ_m f_m h_m|` and the baseline maximizes exactly the quotient that
//! [`generalized_rayleigh_quotient`] reports.

use num_complex::Complex64;

use crate::channel::ChannelVector;
use crate::profiles::{Beamformer, Scheme};
use crate::scenario::Scenario;
use crate::{Error, Result};

/// Relative threshold below which the two channels count as collinear.
const COLLINEARITY_THRESHOLD: f64 = 1e-12;

/// The matrix pencil data: both channels and the transmit SNR scale.
#[derive(Debug, Clone)]
pub struct PencilSpec {
    legitimate: ChannelVector,
    eavesdropper: ChannelVector,
    gamma: f64,
}

impl PencilSpec {
    pub fn new(legitimate: ChannelVector, eavesdropper: ChannelVector, gamma: f64) -> Result<Self> {
        if legitimate.len() != eavesdropper.len() {
            return Err(Error::InvalidParameter(format!(
                "channel vectors must have equal length, got {} and {}",
                legitimate.len(),
                eavesdropper.len()
            )));
        }
        if legitimate.is_empty() {
            return Err(Error::InvalidParameter("channel vectors are empty".into()));
        }
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "gamma must be positive and finite, got {gamma}"
            )));
        }
        if legitimate.norm() == 0.0 || eavesdropper.norm() == 0.0 {
            return Err(Error::InvalidParameter(
                "channel vectors must be nonzero".into(),
            ));
        }
        Ok(Self {
            legitimate,
            eavesdropper,
            gamma,
        })
    }

    /// Build the pencil from a scenario: user channel, channel at the
    /// eavesdropper's estimated position, and `γ = P_T/σ²`.
    pub fn from_scenario(scenario: &Scenario) -> Result<Self> {
        let h = crate::channel::channel_vector(&scenario.array, scenario.ue, &scenario.wave)?;
        let h_e = crate::channel::channel_vector(
            &scenario.array,
            scenario.uncertainty.center(),
            &scenario.wave,
        )?;
        Self::new(h, h_e, scenario.budget.gamma())
    }

    pub fn legitimate(&self) -> &ChannelVector {
        &self.legitimate
    }

    pub fn eavesdropper(&self) -> &ChannelVector {
        &self.eavesdropper
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

/// Result of [`optimal_secure_focusing`].
///
/// `degenerate` is set instead of failing when the two channels are
/// collinear (any in-span beamformer then achieves quotient 1, and the
/// user-matched filter is returned).
#[derive(Debug, Clone)]
pub struct SecureFocusingSolution {
    pub beamformer: Beamformer,
    pub degenerate: bool,
}

/// Forward-field inner product `Σ_m f_m h_m`.
fn forward_coupling(f: &Beamformer, h: &ChannelVector) -> Complex64 {
    f.weights()
        .iter()
        .zip(h.entries())
        .map(|(w, e)| w * e)
        .sum()
}

/// The objective `(1 + γ|Σ f h|²) / (1 + γ|Σ f h_e|²)` at `f`.
pub fn generalized_rayleigh_quotient(f: &Beamformer, spec: &PencilSpec) -> f64 {
    let num = 1.0 + spec.gamma * forward_coupling(f, &spec.legitimate).norm_sqr();
    let den = 1.0 + spec.gamma * forward_coupling(f, &spec.eavesdropper).norm_sqr();
    num / den
}

/// Unit-norm beamformer maximizing the generalized Rayleigh quotient of the
/// identity-plus-rank-one pencil, via the exact 2-D subspace reduction.
///
/// The global phase is fixed so the first entry with non-negligible
/// magnitude is real and positive.
pub fn optimal_secure_focusing(spec: &PencilSpec) -> Result<SecureFocusingSolution> {
    // Work on conjugated channels so Hermitian inner products below couple
    // through the forward field (see module docs).
    let a: Vec<Complex64> = spec.legitimate.entries().iter().map(|e| e.conj()).collect();
    let b: Vec<Complex64> = spec
        .eavesdropper
        .entries()
        .iter()
        .map(|e| e.conj())
        .collect();

    let dot = |x: &[Complex64], y: &[Complex64]| -> Complex64 {
        x.iter().zip(y).map(|(xi, yi)| xi.conj() * yi).sum()
    };
    let norm = |x: &[Complex64]| -> f64 { dot(x, x).re.sqrt() };

    let a_norm = norm(&a);
    let u1: Vec<Complex64> = a.iter().map(|e| e / a_norm).collect();

    // Orthonormalize b against u1 with a collinearity guard.
    let overlap = dot(&u1, &b);
    let mut v: Vec<Complex64> = b
        .iter()
        .zip(&u1)
        .map(|(bi, ui)| bi - overlap * ui)
        .collect();
    let v_norm = norm(&v);
    let b_norm = norm(&b);
    if v_norm <= COLLINEARITY_THRESHOLD * b_norm {
        // Collinear channels: the quotient is 1 on the whole span; return the
        // user-matched filter and flag the degeneracy.
        let beamformer = Beamformer::from_weights(u1, Scheme::Eigen)?;
        return Ok(SecureFocusingSolution {
            beamformer,
            degenerate: true,
        });
    }
    for vi in &mut v {
        *vi /= v_norm;
    }
    let u2 = v;

    // Project the pencil onto span{u1, u2}: with a = ‖a‖·u1 and
    // b = α·u1 + β·u2, the 2x2 blocks are I + γ a2 a2^H and I + γ b2 b2^H.
    let alpha = dot(&u1, &b);
    let beta = dot(&u2, &b); // real positive by construction
    let g = spec.gamma;

    // A2 = I + γ [‖a‖², 0; 0, 0]
    let a11 = 1.0 + g * a_norm * a_norm;
    // B2 = I + γ [|α|², α β̄*; ᾱ β, |β|²] with β real.
    let b11 = Complex64::new(1.0 + g * alpha.norm_sqr(), 0.0);
    let b12 = g * alpha * beta.conj();
    let b21 = b12.conj();
    let b22 = Complex64::new(1.0 + g * beta.norm_sqr(), 0.0);

    // M = B2^{-1} A2 with A2 = diag(a11, 1).
    let det_b = (b11 * b22 - b12 * b21).re;
    let m11 = b22 / det_b * a11;
    let m12 = -b12 / det_b;
    let m21 = -b21 / det_b * a11;
    let m22 = b11 / det_b;

    // Dominant eigenvalue of the 2x2 pencil from the characteristic
    // quadratic λ² - tr(M) λ + det(M); both roots are real positive.
    let tr = (m11 + m22).re;
    let det_m = (m11 * m22 - m12 * m21).re;
    let disc = (tr * tr - 4.0 * det_m).max(0.0).sqrt();
    let lambda = 0.5 * (tr + disc);

    // Eigenvector from (M - λI) c = 0; pick the better-conditioned row.
    let c_a = (m12, Complex64::new(lambda, 0.0) - m11);
    let c_b = (Complex64::new(lambda, 0.0) - m22, m21);
    let (c1, c2) = if c_a.0.norm_sqr() + c_a.1.norm_sqr() >= c_b.0.norm_sqr() + c_b.1.norm_sqr() {
        c_a
    } else {
        c_b
    };
    let c_norm = (c1.norm_sqr() + c2.norm_sqr()).sqrt();
    let (c1, c2) = (c1 / c_norm, c2 / c_norm);

    // Lift back to M dimensions and normalize.
    let mut f: Vec<Complex64> = u1
        .iter()
        .zip(&u2)
        .map(|(u, w)| c1 * u + c2 * w)
        .collect();
    let f_norm = norm(&f);
    for fi in &mut f {
        *fi /= f_norm;
    }

    // Global phase: first non-negligible entry real positive.
    let max_mag = f.iter().map(|w| w.norm()).fold(0.0, f64::max);
    if let Some(first) = f.iter().find(|w| w.norm() > 1e-12 * max_mag) {
        let rot = Complex64::from_polar(1.0, -first.arg());
        for fi in &mut f {
            *fi *= rot;
        }
    }

    Ok(SecureFocusingSolution {
        beamformer: Beamformer::from_weights(f, Scheme::Eigen)?,
        degenerate: false,
    })
}
