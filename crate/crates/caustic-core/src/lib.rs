//! Near-field phase-profile synthesis and physical-layer-security evaluation
//! for extremely large antenna arrays.
//!
//! A linear array on the x-axis radiates into the upper half plane under the
//! spherical-wave (near-field) channel model. The crate synthesizes per-element
//! phase profiles — beam steering, beamfocusing, quadratic caustics, and a
//! piece-wise profile whose caustic subarray bends radiated rays around a
//! circular eavesdropping-uncertainty disk while the remaining elements focus
//! on the legitimate user — and evaluates the resulting legitimate,
//! eavesdropping, and secrecy rates, worst-case robustness over the disk, and
//! spatial field maps.
//!
//! Modules map onto the pipeline:
//!
//! * [`geometry`] — planar primitives: points, the uncertainty disk, tangent
//!   construction, segment/disk intersection.
//! * [`channel`] — spherical-wave Green function, array layout, channel
//!   vectors, rates.
//! * [`profiles`] — phase-profile synthesis and the unit-modulus beamformer.
//! * [`evaluation`] — worst-case/mean rate reports, field maps, region leakage.
//! * [`benchmarks`] — the perfect-CSI secure-focusing baseline (generalized
//!   eigenvector of an identity-plus-rank-one pencil).
//! * [`scenario`] — the bundled physical configuration shared by the above.

pub mod benchmarks;
pub mod channel;
pub mod evaluation;
pub mod geometry;
pub mod profiles;
pub mod scenario;
pub mod validate;

pub use channel::{green, rate, secrecy_rate, ArrayGeometry, ChannelVector, LinkBudget, WaveSpec};
pub use evaluation::{FieldMap, GridSpec, RegionSampling, RobustReport};
pub use geometry::{Disk, Point2, Ray};
pub use profiles::{Beamformer, Label, Partition, PhaseProfile, Scheme};
pub use scenario::Scenario;

/// Errors shared across the crate.
///
/// Geometry degeneracies are reported explicitly rather than papered over;
/// callers decide whether a degenerate configuration is fatal.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// The query point lies inside the disk or on its boundary (the boundary
    /// counts as inside throughout the crate).
    #[error("point lies inside or on the uncertainty disk")]
    PointInsideDisk,
    /// Two points that must be distinct coincide.
    #[error("segment endpoints coincide")]
    DegenerateSegment,
    /// The requested tangent is parallel to the array axis and never meets it.
    #[error("tangent is parallel to the array and has no x-intercept")]
    HorizontalTangent,
    /// The scenario does not admit the piece-wise construction.
    #[error("unsupported geometry: {0}")]
    UnsupportedGeometry(String),
    /// Transmitter and receiver coincide; the spherical-wave kernel is singular.
    #[error("transmit and receive points coincide")]
    CoincidentPoints,
    /// The abscissa lies inside the disk shadow where the caustic phase is
    /// undefined.
    #[error("abscissa lies inside the disk shadow")]
    InsideShadow,
    /// No field-map cell center falls inside the requested disk.
    #[error("no field-map cell center lies inside the disk")]
    EmptyRegion,
    /// A constructor argument violates a type invariant.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
