//! Robust rate evaluation over the uncertainty disk, field-map rendering,
//! and in-region leakage metrics.
//!
//! The worst case over the disk is taken by deterministic dense polar
//! sampling rather than continuous optimization: the sample set is a fixed
//! function of the sampling spec, so results are reproducible bit for bit and
//! refining the grid can only raise the observed worst case.

use crate::channel::{rate, received_amplitude, secrecy_rate};
use crate::geometry::{Disk, Point2};
use crate::profiles::Beamformer;
use crate::scenario::Scenario;
use crate::{Error, Result};

/// Polar sampling of the uncertainty disk: `rings` concentric rings with
/// `angles_per_ring` equispaced points each, outermost ring exactly at the
/// disk radius, plus optionally the center.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionSampling {
    rings: usize,
    angles_per_ring: usize,
    include_center: bool,
}

impl RegionSampling {
    pub fn new(rings: usize, angles_per_ring: usize, include_center: bool) -> Result<Self> {
        if rings < 1 {
            return Err(Error::InvalidParameter("sampling needs >= 1 ring".into()));
        }
        if angles_per_ring < 4 {
            return Err(Error::InvalidParameter(
                "sampling needs >= 4 angles per ring".into(),
            ));
        }
        Ok(Self {
            rings,
            angles_per_ring,
            include_center,
        })
    }

    pub fn rings(&self) -> usize {
        self.rings
    }

    pub fn angles_per_ring(&self) -> usize {
        self.angles_per_ring
    }

    pub fn include_center(&self) -> bool {
        self.include_center
    }

    pub fn num_samples(&self) -> usize {
        self.rings * self.angles_per_ring + usize::from(self.include_center)
    }
}

impl Default for RegionSampling {
    fn default() -> Self {
        Self {
            rings: 8,
            angles_per_ring: 64,
            include_center: true,
        }
    }
}

/// Deterministic polar grid over the disk, ring-major then angle-minor,
/// center appended last when requested.
pub fn sample_region(disk: &Disk, sampling: &RegionSampling) -> Vec<Point2> {
    let c = disk.center();
    let mut pts = Vec::with_capacity(sampling.num_samples());
    for k in 1..=sampling.rings {
        let r = disk.radius() * k as f64 / sampling.rings as f64;
        for j in 0..sampling.angles_per_ring {
            let a = 2.0 * std::f64::consts::PI * j as f64 / sampling.angles_per_ring as f64;
            pts.push(Point2::new(c.x + r * a.cos(), c.y + r * a.sin()));
        }
    }
    if sampling.include_center {
        pts.push(c);
    }
    pts
}

/// Legitimate, eavesdropping, and secrecy rates over the sampled disk.
///
/// `r_e_worst` maximizes the eavesdropping rate over the samples (first in
/// sampling order wins ties); `r_s_mean` averages the per-sample secrecy
/// rates uniformly over the polar grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RobustReport {
    pub r_ue: f64,
    pub r_e_mean: f64,
    pub r_e_worst: f64,
    pub r_s_mean: f64,
    pub r_s_worst: f64,
    pub worst_point: Point2,
}

/// Evaluate `f` against the scenario: legitimate rate at the UE, worst and
/// mean eavesdropping/secrecy rates over the sampled uncertainty disk
/// (always the original disk, never the margin-inflated one).
pub fn robust_report(
    f: &Beamformer,
    scenario: &Scenario,
    sampling: &RegionSampling,
) -> Result<RobustReport> {
    let g_ue = received_amplitude(f, &scenario.array, scenario.ue, &scenario.wave)?;
    let r_ue = rate(g_ue.norm_sqr(), &scenario.budget);

    let samples = sample_region(&scenario.uncertainty, sampling);
    let mut r_e_sum = 0.0;
    let mut r_s_sum = 0.0;
    let mut r_e_worst = f64::NEG_INFINITY;
    let mut worst_point = samples[0];
    for p in &samples {
        let g = received_amplitude(f, &scenario.array, *p, &scenario.wave)?;
        let r_e = rate(g.norm_sqr(), &scenario.budget);
        r_e_sum += r_e;
        r_s_sum += secrecy_rate(r_ue, r_e);
        if r_e > r_e_worst {
            r_e_worst = r_e;
            worst_point = *p;
        }
    }
    let n = samples.len() as f64;
    Ok(RobustReport {
        r_ue,
        r_e_mean: r_e_sum / n,
        r_e_worst,
        r_s_mean: r_s_sum / n,
        r_s_worst: secrecy_rate(r_ue, r_e_worst),
        worst_point,
    })
}

/// Rectangular evaluation grid with inclusive bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
    nx: usize,
    ny: usize,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64, nx: usize, ny: usize) -> Result<Self> {
        if nx < 2 || ny < 2 {
            return Err(Error::InvalidParameter(format!(
                "grid needs nx, ny >= 2, got {nx} x {ny}"
            )));
        }
        if !(x_max > x_min) || !(y_max > y_min) {
            return Err(Error::InvalidParameter(
                "grid bounds must satisfy max > min on both axes".into(),
            ));
        }
        Ok(Self {
            x_min,
            x_max,
            y_min,
            y_max,
            nx,
            ny,
        })
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn x_range(&self) -> (f64, f64) {
        (self.x_min, self.x_max)
    }

    pub fn y_range(&self) -> (f64, f64) {
        (self.y_min, self.y_max)
    }

    pub fn x_coord(&self, i: usize) -> f64 {
        self.x_min + (self.x_max - self.x_min) * i as f64 / (self.nx - 1) as f64
    }

    pub fn y_coord(&self, j: usize) -> f64 {
        self.y_min + (self.y_max - self.y_min) * j as f64 / (self.ny - 1) as f64
    }
}

/// Normalized power map over a rectangular grid.
///
/// `values` hold `|g|²` divided by the grid maximum `peak_power`, stored
/// row-major with y ascending (`values[j * nx + i]` for `(x_i, y_j)`). Cells
/// within 1 µm of an array element are forced to zero and counted in
/// `flagged_cells`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldMap {
    grid: GridSpec,
    values: Vec<f64>,
    peak_power: f64,
    flagged_cells: usize,
}

impl FieldMap {
    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.grid.nx + ix]
    }

    /// Grid maximum of `|g|²` before normalization.
    pub fn peak_power(&self) -> f64 {
        self.peak_power
    }

    pub fn flagged_cells(&self) -> usize {
        self.flagged_cells
    }

    /// Indices of the maximum normalized value (first in row-major order).
    pub fn argmax(&self) -> (usize, usize) {
        let mut best = (0usize, 0usize);
        let mut best_v = f64::NEG_INFINITY;
        for j in 0..self.grid.ny {
            for i in 0..self.grid.nx {
                let v = self.value(i, j);
                if v > best_v {
                    best_v = v;
                    best = (i, j);
                }
            }
        }
        best
    }
}

const ELEMENT_EXCLUSION_RADIUS: f64 = 1e-6;

/// Evaluate the normalized radiation strength `|g|²` of `f` over `grid`.
pub fn field_map(f: &Beamformer, scenario: &Scenario, grid: &GridSpec) -> Result<FieldMap> {
    let mut values = Vec::with_capacity(grid.nx * grid.ny);
    let mut peak = 0.0f64;
    let mut flagged = 0usize;
    for j in 0..grid.ny {
        let y = grid.y_coord(j);
        for i in 0..grid.nx {
            let p = Point2::new(grid.x_coord(i), y);
            let near_element = y.abs() <= ELEMENT_EXCLUSION_RADIUS
                && scenario
                    .array
                    .element_x()
                    .iter()
                    .any(|&ex| p.distance(&Point2::new(ex, 0.0)) <= ELEMENT_EXCLUSION_RADIUS);
            if near_element {
                flagged += 1;
                values.push(0.0);
                continue;
            }
            let g = received_amplitude(f, &scenario.array, p, &scenario.wave)?;
            let power = g.norm_sqr();
            peak = peak.max(power);
            values.push(power);
        }
    }
    if peak > 0.0 {
        for v in &mut values {
            *v /= peak;
        }
    }
    Ok(FieldMap {
        grid: *grid,
        values,
        peak_power: peak,
        flagged_cells: flagged,
    })
}

/// Max and mean leakage in dB over the cells whose centers lie inside the
/// disk, relative to the map's own peak.
///
/// Zero-valued cells contribute `-inf` to the max and are excluded from the
/// mean; if every in-region cell is zero both figures are `-inf`. Errors with
/// [`Error::EmptyRegion`] when no cell center falls inside the disk.
pub fn region_leakage(map: &FieldMap, disk: &Disk) -> Result<(f64, f64)> {
    let grid = map.grid();
    let mut max_db = f64::NEG_INFINITY;
    let mut db_sum = 0.0;
    let mut nonzero = 0usize;
    let mut in_region = 0usize;
    for j in 0..grid.ny() {
        for i in 0..grid.nx() {
            let p = Point2::new(grid.x_coord(i), grid.y_coord(j));
            if !disk.contains(&p) {
                continue;
            }
            in_region += 1;
            let v = map.value(i, j);
            if v > 0.0 {
                let db = 10.0 * v.log10();
                max_db = max_db.max(db);
                db_sum += db;
                nonzero += 1;
            }
        }
    }
    if in_region == 0 {
        return Err(Error::EmptyRegion);
    }
    let mean_db = if nonzero > 0 {
        db_sum / nonzero as f64
    } else {
        f64::NEG_INFINITY
    };
    Ok((max_db, mean_db))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{ArrayGeometry, LinkBudget, WaveSpec};
    use crate::profiles::{focusing_profile, Scheme};

    fn scenario() -> Scenario {
        let w = WaveSpec::from_carrier(28e9).unwrap();
        Scenario::new(
            w,
            ArrayGeometry::centered(64, w.wavelength() / 2.0).unwrap(),
            Point2::new(0.4, 1.2),
            Disk::new(Point2::new(-0.2, 0.8), 0.15).unwrap(),
            0.0,
            LinkBudget::from_dbm(20.0, -50.0).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn sample_region_layout() {
        let disk = Disk::new(Point2::new(0.0, 2.0), 1.0).unwrap();
        let s = RegionSampling::new(1, 4, false).unwrap();
        let pts = sample_region(&disk, &s);
        assert_eq!(pts.len(), 4);
        let expect = [(1.0, 2.0), (0.0, 3.0), (-1.0, 2.0), (0.0, 1.0)];
        for (p, (ex, ey)) in pts.iter().zip(expect) {
            assert!((p.x - ex).abs() < 1e-12 && (p.y - ey).abs() < 1e-12);
        }
        // Default: 8 rings x 64 angles + center.
        let d = RegionSampling::default();
        assert_eq!(d.num_samples(), 513);
        let pts = sample_region(&disk, &d);
        assert_eq!(pts.len(), 513);
        assert_eq!(pts[512], disk.center());
        for p in &pts {
            assert!(disk.center().distance(p) <= disk.radius() + 1e-12);
        }
    }

    #[test]
    fn sampling_validation() {
        assert!(RegionSampling::new(0, 8, true).is_err());
        assert!(RegionSampling::new(1, 3, true).is_err());
        assert!(RegionSampling::new(1, 4, true).is_ok());
    }

    #[test]
    fn single_center_sample_reproduces_point_rate() {
        let s = scenario();
        let f = focusing_profile(s.ue, &s.array, &s.wave)
            .unwrap()
            .to_beamformer(Scheme::Focusing);
        // Sampling collapsed to (almost) the center: a 1-ring grid with a tiny
        // disk would need a different scenario, so instead check that the
        // center sample is included and bounds the worst case from below.
        let tight = RegionSampling::new(1, 4, true).unwrap();
        let report = robust_report(&f, &s, &tight).unwrap();
        let g = crate::channel::received_amplitude(&f, &s.array, s.uncertainty.center(), &s.wave)
            .unwrap();
        let center_rate = crate::channel::rate(g.norm_sqr(), &s.budget);
        assert!(report.r_e_worst >= center_rate - 1e-12);
        assert!(report.r_e_mean <= report.r_e_worst);
        assert!((report.r_s_worst - (report.r_ue - report.r_e_worst).max(0.0)).abs() < 1e-12);
    }

    #[test]
    fn refinement_never_decreases_worst_case() {
        let s = scenario();
        let f = focusing_profile(s.ue, &s.array, &s.wave)
            .unwrap()
            .to_beamformer(Scheme::Focusing);
        let coarse = RegionSampling::new(4, 16, true).unwrap();
        let fine = RegionSampling::new(8, 32, true).unwrap();
        let rc = robust_report(&f, &s, &coarse).unwrap();
        let rf = robust_report(&f, &s, &fine).unwrap();
        assert!(
            rf.r_e_worst >= rc.r_e_worst - 1e-12,
            "doubling rings and angles keeps the old samples"
        );
    }

    #[test]
    fn report_invariant_to_global_phase() {
        let s = scenario();
        let f = focusing_profile(s.ue, &s.array, &s.wave)
            .unwrap()
            .to_beamformer(Scheme::Focusing);
        let rotated = Beamformer::from_weights(
            f.weights()
                .iter()
                .map(|w| w * num_complex::Complex64::from_polar(1.0, 1.234))
                .collect(),
            Scheme::Focusing,
        )
        .unwrap();
        let sampling = RegionSampling::default();
        let a = robust_report(&f, &s, &sampling).unwrap();
        let b = robust_report(&rotated, &s, &sampling).unwrap();
        assert!((a.r_ue - b.r_ue).abs() < 1e-9);
        assert!((a.r_e_worst - b.r_e_worst).abs() < 1e-9);
        assert!((a.r_e_mean - b.r_e_mean).abs() < 1e-9);
    }

    #[test]
    fn field_map_peak_is_at_focus_and_normalized() {
        // Large array, window around the focus: the matched-filter spot wins.
        // (A window hugging the array instead would peak in the near-element
        // 1/r zone, which is physical but not what this test probes.)
        let w = WaveSpec::from_carrier(28e9).unwrap();
        let s = Scenario::new(
            w,
            ArrayGeometry::centered(256, w.wavelength() / 2.0).unwrap(),
            Point2::new(1.5, 3.0),
            Disk::new(Point2::new(0.4, 1.25), 0.25).unwrap(),
            0.0,
            LinkBudget::from_dbm(20.0, -50.0).unwrap(),
        )
        .unwrap();
        let f = focusing_profile(s.ue, &s.array, &s.wave)
            .unwrap()
            .to_beamformer(Scheme::Focusing);
        let grid = GridSpec::new(1.0, 2.0, 2.5, 3.5, 101, 101).unwrap();
        let map = field_map(&f, &s, &grid).unwrap();
        assert!(map.peak_power() > 0.0);
        let max = map.values().iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!((max - 1.0).abs() < 1e-12, "normalized peak is 1");
        // The spatial maximum of a focused aperture sits slightly up-beam of
        // the geometric focus (focal shift; here ~3 cm at +1% intensity), so
        // assert containment in the focal neighborhood rather than the exact
        // cell.
        let (ix, iy) = map.argmax();
        let peak_pos = Point2::new(grid.x_coord(ix), grid.y_coord(iy));
        assert!(
            peak_pos.distance(&s.ue) <= 0.05,
            "peak within the depth of focus of the target; got {peak_pos:?}"
        );
        // And the target cell itself is within 1% of the global max.
        let at_target = map.value(50, 50);
        assert!(at_target >= 0.98, "target cell near the max, got {at_target}");
    }

    #[test]
    fn field_map_global_phase_invariance() {
        let s = scenario();
        let f = focusing_profile(s.ue, &s.array, &s.wave)
            .unwrap()
            .to_beamformer(Scheme::Focusing);
        let rotated = Beamformer::from_weights(
            f.weights()
                .iter()
                .map(|w| w * num_complex::Complex64::from_polar(1.0, -2.0))
                .collect(),
            Scheme::Focusing,
        )
        .unwrap();
        let grid = GridSpec::new(-0.5, 0.5, 0.5, 1.5, 21, 21).unwrap();
        let a = field_map(&f, &s, &grid).unwrap();
        let b = field_map(&rotated, &s, &grid).unwrap();
        for (va, vb) in a.values().iter().zip(b.values()) {
            assert!((va - vb).abs() < 1e-12);
        }
    }

    #[test]
    fn field_map_flags_element_cells() {
        let s = scenario();
        let f = focusing_profile(s.ue, &s.array, &s.wave)
            .unwrap()
            .to_beamformer(Scheme::Focusing);
        // A grid row exactly on y = 0 with a column through element 0.
        let x0 = s.array.element_x()[0];
        let grid = GridSpec::new(x0, x0 + 0.4, 0.0, 0.4, 3, 3).unwrap();
        let map = field_map(&f, &s, &grid).unwrap();
        assert!(map.flagged_cells() >= 1);
        assert_eq!(map.value(0, 0), 0.0);
    }

    #[test]
    fn region_leakage_uniform_and_empty() {
        let s = scenario();
        let f = focusing_profile(s.ue, &s.array, &s.wave)
            .unwrap()
            .to_beamformer(Scheme::Focusing);
        let grid = GridSpec::new(-0.6, 0.2, 0.4, 1.2, 41, 41).unwrap();
        let map = field_map(&f, &s, &grid).unwrap();
        let (max_db, mean_db) = region_leakage(&map, &s.uncertainty).unwrap();
        assert!(max_db <= 0.0 + 1e-12);
        assert!(mean_db <= max_db);

        let far = Disk::new(Point2::new(50.0, 50.0), 0.01).unwrap();
        assert_eq!(region_leakage(&map, &far).unwrap_err(), Error::EmptyRegion);

        // Synthetic uniform map: both figures are 0 dB.
        let uniform = FieldMap {
            grid,
            values: vec![1.0; 41 * 41],
            peak_power: 1.0,
            flagged_cells: 0,
        };
        let (max_db, mean_db) = region_leakage(&uniform, &s.uncertainty).unwrap();
        assert_eq!(max_db, 0.0);
        assert_eq!(mean_db, 0.0);

        // All-zero region: -inf sentinels.
        let zeros = FieldMap {
            grid,
            values: vec![0.0; 41 * 41],
            peak_power: 0.0,
            flagged_cells: 0,
        };
        let (max_db, mean_db) = region_leakage(&zeros, &s.uncertainty).unwrap();
        assert!(max_db == f64::NEG_INFINITY && mean_db == f64::NEG_INFINITY);
    }
}
