//! The bundled physical configuration: wave, array, user location, the
//! eavesdropping-uncertainty disk, and the link budget.

use crate::channel::{ArrayGeometry, LinkBudget, WaveSpec};
use crate::geometry::{Disk, Point2};
use crate::{Error, Result};

/// One complete physical setup.
///
/// `uncertainty` is the disk the eavesdropper is believed to be in (estimate
/// plus localization-error radius). `epsilon_margin` optionally inflates that
/// disk for partitioning and caustic synthesis to absorb diffraction leakage
/// at the region edge; evaluation always uses the original disk.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub wave: WaveSpec,
    pub array: ArrayGeometry,
    pub ue: Point2,
    pub uncertainty: Disk,
    pub epsilon_margin: f64,
    pub budget: LinkBudget,
}

impl Scenario {
    pub fn new(
        wave: WaveSpec,
        array: ArrayGeometry,
        ue: Point2,
        uncertainty: Disk,
        epsilon_margin: f64,
        budget: LinkBudget,
    ) -> Result<Self> {
        if !(ue.y > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "UE must lie in the upper half plane, got y = {}",
                ue.y
            )));
        }
        // Fails when the margin is negative or pushes the inflated disk into
        // the array axis.
        uncertainty.inflated(epsilon_margin)?;
        Ok(Self {
            wave,
            array,
            ue,
            uncertainty,
            epsilon_margin,
            budget,
        })
    }

    /// The disk used for partitioning and caustic synthesis (radius inflated
    /// by `epsilon_margin`).
    pub fn synthesis_disk(&self) -> Disk {
        self.uncertainty
            .inflated(self.epsilon_margin)
            .expect("validated at construction")
    }

    /// The scenario reflected across the y-axis. The array is symmetric, so
    /// only the UE and the disk move.
    pub fn mirrored(&self) -> Scenario {
        Scenario {
            wave: self.wave,
            array: self.array.clone(),
            ue: self.ue.mirrored(),
            uncertainty: self.uncertainty.mirrored(),
            epsilon_margin: self.epsilon_margin,
            budget: self.budget,
        }
    }
}
