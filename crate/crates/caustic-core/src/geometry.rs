//! Planar geometry for the caustic construction: points, the circular
//! uncertainty disk, tangent lines from external points, segment/disk
//! intersection, and the tangent-intercept map onto the array axis.
//!
//! Conventions used everywhere:
//!
//! * lengths in meters, angles in radians, no degree interfaces;
//! * distance exactly equal to the disk radius counts as inside/intersecting
//!   (conservative for the security use case);
//! * rays propagate into the upper half plane, so ray angles lie in (0, π).

use crate::{Error, Result};

/// A point in the xy-plane (meters).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    /// Reflection across the y-axis.
    pub fn mirrored(&self) -> Point2 {
        Point2::new(-self.x, self.y)
    }
}

/// The circular eavesdropping-uncertainty region: all positions within
/// `radius` of `center`.
///
/// The disk must lie strictly in the upper half plane (`center.y > radius`)
/// so that it never touches the array axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    center: Point2,
    radius: f64,
}

impl Disk {
    pub fn new(center: Point2, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "disk radius must be positive and finite, got {radius}"
            )));
        }
        if !(center.y > radius) {
            return Err(Error::InvalidParameter(format!(
                "disk must lie strictly above the array: center.y = {} <= radius = {}",
                center.y, radius
            )));
        }
        Ok(Self { center, radius })
    }

    pub fn center(&self) -> Point2 {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Same center, radius grown by `margin` (>= 0).
    pub fn inflated(&self, margin: f64) -> Result<Disk> {
        if !(margin >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "inflation margin must be >= 0, got {margin}"
            )));
        }
        Disk::new(self.center, self.radius + margin)
    }

    /// Reflection across the y-axis.
    pub fn mirrored(&self) -> Disk {
        Disk {
            center: self.center.mirrored(),
            radius: self.radius,
        }
    }

    /// True iff `p` is at distance <= radius from the center (boundary counts
    /// as inside).
    pub fn contains(&self, p: &Point2) -> bool {
        self.center.distance(p) <= self.radius
    }
}

/// A ray leaving `origin` into the upper half plane at `angle` from the
/// +x axis, `angle` in (0, π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ray {
    pub origin: Point2,
    pub angle: f64,
}

impl Ray {
    pub fn new(origin: Point2, angle: f64) -> Result<Self> {
        if !(angle > 0.0 && angle < std::f64::consts::PI) {
            return Err(Error::InvalidParameter(format!(
                "ray angle must lie in (0, pi), got {angle}"
            )));
        }
        Ok(Self { origin, angle })
    }

    /// Perpendicular distance from `p` to the ray's supporting line.
    pub fn line_distance(&self, p: &Point2) -> f64 {
        let (dx, dy) = (self.angle.cos(), self.angle.sin());
        let (px, py) = (p.x - self.origin.x, p.y - self.origin.y);
        (dx * py - dy * px).abs()
    }
}

/// Both tangent points on `disk` as seen from `external`, ordered by
/// ascending polar angle about the disk center.
///
/// Each returned point `P` satisfies `(P - external) . (P - center) = 0` and
/// `|P - center| = radius`. Errors with [`Error::PointInsideDisk`] when
/// `external` is inside the disk or on its boundary (where the tangents
/// degenerate to the point itself).
pub fn tangent_points(external: Point2, disk: &Disk) -> Result<(Point2, Point2)> {
    let c = disk.center();
    let d = external.distance(&c);
    if d <= disk.radius() {
        return Err(Error::PointInsideDisk);
    }
    // Right triangle external-P-center with the right angle at P: the angle
    // at the center between center->external and center->P is acos(r/d).
    let alpha = (disk.radius() / d).acos();
    let (ux, uy) = ((external.x - c.x) / d, (external.y - c.y) / d);
    let rotate = |a: f64| {
        let (s, co) = a.sin_cos();
        Point2::new(
            c.x + disk.radius() * (co * ux - s * uy),
            c.y + disk.radius() * (s * ux + co * uy),
        )
    };
    let p1 = rotate(alpha);
    let p2 = rotate(-alpha);
    let polar = |p: &Point2| (p.y - c.y).atan2(p.x - c.x);
    if polar(&p1) <= polar(&p2) {
        Ok((p1, p2))
    } else {
        Ok((p2, p1))
    }
}

/// True iff the closed segment [a, b] passes within the disk radius of its
/// center (tangency counts as intersecting).
pub fn segment_intersects_disk(a: Point2, b: Point2, disk: &Disk) -> Result<bool> {
    if a == b {
        return Err(Error::DegenerateSegment);
    }
    let (abx, aby) = (b.x - a.x, b.y - a.y);
    let c = disk.center();
    let t = ((c.x - a.x) * abx + (c.y - a.y) * aby) / (abx * abx + aby * aby);
    let t = t.clamp(0.0, 1.0);
    let closest = Point2::new(a.x + t * abx, a.y + t * aby);
    Ok(closest.distance(&c) <= disk.radius())
}

/// x-intercept of the lower tangent line to `disk` with slope angle `theta`.
///
/// The tangent touches the circle at `(x_c + r sin(theta), y_c - r cos(theta))`
/// and crosses the array axis at
/// `x = x_c + r sin(theta) - (y_c - r cos(theta)) / tan(theta)`.
pub fn tangent_x_intercept(theta: f64, disk: &Disk) -> Result<f64> {
    if !(theta > 0.0 && theta < std::f64::consts::PI) {
        return Err(Error::InvalidParameter(format!(
            "tangent slope angle must lie in (0, pi), got {theta}"
        )));
    }
    let (s, c) = theta.sin_cos();
    if s.abs() < 1e-12 {
        return Err(Error::HorizontalTangent);
    }
    let center = disk.center();
    let r = disk.radius();
    Ok(center.x + r * s - (center.y - r * c) * c / s)
}

/// Angle of the direction `from -> to` in (-π, π].
pub fn slope_angle(from: Point2, to: Point2) -> Result<f64> {
    if from == to {
        return Err(Error::DegenerateSegment);
    }
    Ok((to.y - from.y).atan2(to.x - from.x))
}
