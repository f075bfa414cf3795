//! Planar disk primitives.
//!
//! All predicates treat disks as closed sets and share one absolute
//! [`Tolerance`] applied to (non-squared) distances. Where a comparison can be
//! done on squared quantities it is, so most predicates never take a square
//! root.

use serde::{Deserialize, Serialize};

use crate::Error;

/// Vertex label of a disk inside a [`DiskSet`](crate::DiskSet).
pub type VertexId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    #[inline]
    pub fn dist_sq(self, other: Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    #[inline]
    pub fn dist(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// A cell: closed disk with a vertex label.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub id: VertexId,
    pub center: Point,
    pub radius: f64,
}

impl Disk {
    /// Checked constructor. The radius must be finite and strictly positive
    /// and the center finite.
    pub fn new(id: VertexId, x: f64, y: f64, radius: f64) -> Result<Self, Error> {
        let center = Point::new(x, y);
        if !center.is_finite() {
            return Err(Error::InvalidDisk {
                id,
                reason: "center is not finite".into(),
            });
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidDisk {
                id,
                reason: format!("radius must be finite and > 0, got {radius}"),
            });
        }
        Ok(Disk { id, center, radius })
    }
}

/// Absolute slack added to every distance comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub eps: f64,
}

impl Tolerance {
    pub const DEFAULT_EPS: f64 = 1e-9;

    pub fn new(eps: f64) -> Result<Self, Error> {
        if eps.is_finite() && eps >= 0.0 {
            Ok(Tolerance { eps })
        } else {
            Err(Error::InvalidTolerance(eps))
        }
    }

    pub const fn exact() -> Self {
        Tolerance { eps: 0.0 }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eps: Self::DEFAULT_EPS,
        }
    }
}

/// `dist(a, b) <= a.r + b.r + eps`. Tangent disks intersect.
#[inline]
pub fn disks_intersect(a: &Disk, b: &Disk, tol: Tolerance) -> bool {
    let reach = a.radius + b.radius + tol.eps;
    a.center.dist_sq(b.center) <= reach * reach
}

/// `dist(inner, outer) + inner.r <= outer.r + eps`.
#[inline]
pub fn disk_inside_disk(inner: &Disk, outer: &Disk, tol: Tolerance) -> bool {
    let slack = outer.radius + tol.eps - inner.radius;
    slack >= 0.0 && inner.center.dist_sq(outer.center) <= slack * slack
}

#[inline]
pub fn point_in_disk(p: Point, d: &Disk, tol: Tolerance) -> bool {
    let reach = d.radius + tol.eps;
    p.dist_sq(d.center) <= reach * reach
}

/// Intersection of two circle boundaries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CircleIntersection {
    /// Disjoint, or one circle strictly inside the other.
    Empty,
    /// Tangent within tolerance; a single contact point.
    Tangent(Point),
    Pair(Point, Point),
    /// Same center and radius within tolerance: infinitely many common points.
    Coincident,
}

impl CircleIntersection {
    pub fn points(&self) -> impl Iterator<Item = Point> {
        let (a, b) = match *self {
            CircleIntersection::Tangent(p) => (Some(p), None),
            CircleIntersection::Pair(p, q) => (Some(p), Some(q)),
            CircleIntersection::Empty | CircleIntersection::Coincident => (None, None),
        };
        a.into_iter().chain(b)
    }

    pub fn len(&self) -> usize {
        match self {
            CircleIntersection::Tangent(_) => 1,
            CircleIntersection::Pair(..) => 2,
            _ => 0,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Points where the boundaries of `a` and `b` cross.
///
/// A contact within `tol` (external or internal) yields exactly one point,
/// placed on the line of centers.
pub fn circle_intersection_points(a: &Disk, b: &Disk, tol: Tolerance) -> CircleIntersection {
    let eps = tol.eps;
    let dx = b.center.x - a.center.x;
    let dy = b.center.y - a.center.y;
    let d = dx.hypot(dy);
    let (ra, rb) = (a.radius, b.radius);
    let rdiff = (ra - rb).abs();

    if d <= eps && rdiff <= eps {
        return CircleIntersection::Coincident;
    }
    if d > ra + rb + eps || d < rdiff - eps {
        return CircleIntersection::Empty;
    }

    // Distance from a's center, along the center line, to the chord.
    let along = (ra * ra - rb * rb + d * d) / (2.0 * d);
    let (ux, uy) = (dx / d, dy / d);
    let foot = Point::new(a.center.x + along * ux, a.center.y + along * uy);

    let tangent = (d - (ra + rb)).abs() <= eps || (d - rdiff).abs() <= eps;
    let h_sq = ra * ra - along * along;
    if tangent || h_sq <= 0.0 {
        return CircleIntersection::Tangent(foot);
    }
    let h = h_sq.sqrt();
    CircleIntersection::Pair(
        Point::new(foot.x - h * uy, foot.y + h * ux),
        Point::new(foot.x + h * uy, foot.y - h * ux),
    )
}
