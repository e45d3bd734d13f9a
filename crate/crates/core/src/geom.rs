//! Planar geometry primitives: vectors, poses, polygons and angle helpers.
//!
//! The world is 2D. Headings are yaw angles in radians, counter-clockwise
//! positive, kept in the half-open interval `[-π, π)`.

use std::f64::consts::{PI, TAU};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{domain, Result, SimError};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Unit vector pointing along `angle`.
    pub fn from_angle(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self { x: c, y: s }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Vec2) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Counter-clockwise rotation by `angle` about the origin.
    pub fn rotated(self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self {
            x: c * self.x - s * self.y,
            y: s * self.x + c * self.y,
        }
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x * rhs, self.y * rhs)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Position plus heading (yaw).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Pose {
    pub position: Vec2,
    pub heading: f64,
}

impl Pose {
    /// Builds a pose, wrapping the heading into `[-π, π)`.
    pub fn new(position: Vec2, heading: f64) -> Result<Self> {
        if !position.is_finite() {
            return Err(domain("pose position is not finite"));
        }
        Ok(Self {
            position,
            heading: wrap_angle(heading)?,
        })
    }

    pub fn is_finite(&self) -> bool {
        self.position.is_finite() && self.heading.is_finite()
    }
}

/// Wraps `theta` into `[-π, π)`.
pub fn wrap_angle(theta: f64) -> Result<f64> {
    if !theta.is_finite() {
        return Err(domain(format!("cannot wrap non-finite angle {theta}")));
    }
    if (-PI..PI).contains(&theta) {
        return Ok(theta);
    }
    let mut r = (theta + PI).rem_euclid(TAU) - PI;
    // rem_euclid can round up to exactly TAU for tiny negative inputs.
    if r >= PI {
        r -= TAU;
    }
    if r < -PI {
        r = -PI;
    }
    Ok(r)
}

/// Signed bearing of `point` relative to the observer's heading, positive to
/// the observer's left.
pub fn bearing_to(observer: &Pose, point: Vec2) -> Result<f64> {
    if !observer.is_finite() || !point.is_finite() {
        return Err(domain("bearing_to: non-finite input"));
    }
    let rel = point - observer.position;
    if rel.x == 0.0 && rel.y == 0.0 {
        return Err(domain("bearing_to: point coincides with observer"));
    }
    wrap_angle(rel.y.atan2(rel.x) - observer.heading)
}

/// Simple polygon with counter-clockwise winding.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Vec2>,
}

impl Polygon {
    pub fn new(vertices: Vec<Vec2>) -> Result<Self> {
        let poly = Self { vertices };
        poly.validate()?;
        Ok(poly)
    }

    /// Axis-aligned rectangle centered on the origin.
    pub fn rectangle(width: f64, height: f64) -> Result<Self> {
        let (hw, hh) = (width / 2.0, height / 2.0);
        Self::new(vec![
            Vec2::new(-hw, -hh),
            Vec2::new(hw, -hh),
            Vec2::new(hw, hh),
            Vec2::new(-hw, hh),
        ])
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vec2, Vec2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Shoelace signed area; positive for counter-clockwise winding.
    pub fn signed_area(&self) -> f64 {
        self.edges().map(|(a, b)| a.cross(b)).sum::<f64>() / 2.0
    }

    pub fn centroid(&self) -> Vec2 {
        let area = self.signed_area();
        let (mut cx, mut cy) = (0.0, 0.0);
        for (a, b) in self.edges() {
            let w = a.cross(b);
            cx += (a.x + b.x) * w;
            cy += (a.y + b.y) * w;
        }
        Vec2::new(cx / (6.0 * area), cy / (6.0 * area))
    }

    /// `(min, max)` corners of the bounding box.
    pub fn bounding_box(&self) -> (Vec2, Vec2) {
        let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in &self.vertices {
            lo.x = lo.x.min(v.x);
            lo.y = lo.y.min(v.y);
            hi.x = hi.x.max(v.x);
            hi.y = hi.y.max(v.y);
        }
        (lo, hi)
    }

    pub fn contains(&self, p: Vec2) -> bool {
        let mut inside = false;
        for (a, b) in self.edges() {
            if (a.y > p.y) != (b.y > p.y) {
                let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
                if p.x < x {
                    inside = !inside;
                }
            }
        }
        inside
    }

    fn validate(&self) -> Result<()> {
        let invalid = |reason: &str| SimError::InvalidConfig {
            field: "arena",
            reason: reason.to_string(),
        };
        let n = self.vertices.len();
        if n < 3 {
            return Err(invalid("polygon needs at least 3 vertices"));
        }
        if self.vertices.iter().any(|v| !v.is_finite()) {
            return Err(invalid("polygon vertex is not finite"));
        }
        if self.signed_area() <= 0.0 {
            return Err(invalid("polygon must have counter-clockwise winding"));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                // adjacent edges share a vertex
                if j == i + 1 || (i == 0 && j == n - 1) {
                    continue;
                }
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                let (c, d) = (self.vertices[j], self.vertices[(j + 1) % n]);
                if segments_intersect(a, b, c, d) {
                    return Err(invalid("polygon is self-intersecting"));
                }
            }
        }
        Ok(())
    }
}

fn segments_intersect(a: Vec2, b: Vec2, c: Vec2, d: Vec2) -> bool {
    fn orient(p: Vec2, q: Vec2, r: Vec2) -> f64 {
        (q - p).cross(r - p)
    }
    fn on_segment(p: Vec2, q: Vec2, r: Vec2) -> bool {
        r.x >= p.x.min(q.x) && r.x <= p.x.max(q.x) && r.y >= p.y.min(q.y) && r.y <= p.y.max(q.y)
    }
    let (o1, o2, o3, o4) = (orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b));
    if ((o1 > 0.0 && o2 < 0.0) || (o1 < 0.0 && o2 > 0.0))
        && ((o3 > 0.0 && o4 < 0.0) || (o3 < 0.0 && o4 > 0.0))
    {
        return true;
    }
    (o1 == 0.0 && on_segment(a, b, c))
        || (o2 == 0.0 && on_segment(a, b, d))
        || (o3 == 0.0 && on_segment(c, d, a))
        || (o4 == 0.0 && on_segment(c, d, b))
}

/// Shortest distance from `p` to the segment `[a, b]`.
pub fn point_segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let ab = b - a;
    let len_sq = ab.norm_sq();
    if len_sq == 0.0 {
        return p.distance(a);
    }
    let t = ((p - a).dot(ab) / len_sq).clamp(0.0, 1.0);
    p.distance(a + ab * t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn wrap_angle_examples() {
        assert_eq!(wrap_angle(TAU).unwrap(), 0.0);
        assert_eq!(wrap_angle(PI).unwrap(), -PI);
        assert!((wrap_angle(-1.5 * PI).unwrap() - PI / 2.0).abs() < 1e-15);
        assert_eq!(wrap_angle(-PI).unwrap(), -PI);
        assert!(wrap_angle(f64::NAN).is_err());
        assert!(wrap_angle(f64::INFINITY).is_err());
    }

    #[test]
    fn wrap_angle_tiny_negative_stays_in_range() {
        let r = wrap_angle(-1e-300).unwrap();
        assert!((-PI..PI).contains(&r));
        let r = wrap_angle(PI - 1e-17).unwrap();
        assert!((-PI..PI).contains(&r));
    }

    #[test]
    fn bearing_examples() {
        let origin = Pose::default();
        assert!((bearing_to(&origin, Vec2::new(0.0, 1.0)).unwrap() - PI / 2.0).abs() < 1e-15);
        let north = Pose::new(Vec2::ZERO, PI / 2.0).unwrap();
        assert!(bearing_to(&north, Vec2::new(0.0, 1.0)).unwrap().abs() < 1e-15);
        // atan2(0.14, 1.0) = 0.13909594148207133 (oracle: Python math.atan2)
        let b = bearing_to(&origin, Vec2::new(1.0, 0.14)).unwrap();
        assert!((b - 0.139_095_941_482_071_33).abs() < 1e-4);
        assert!((b.to_degrees() - 7.97).abs() < 0.01);
    }

    #[test]
    fn bearing_coincident_is_error() {
        let origin = Pose::default();
        assert!(matches!(bearing_to(&origin, Vec2::ZERO), Err(SimError::Domain(_))));
    }

    #[test]
    fn polygon_validation() {
        assert!(Polygon::rectangle(10.0, 10.0).is_ok());
        // clockwise
        let cw = vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(1.0, 0.0),
        ];
        assert!(Polygon::new(cw).is_err());
        // bow tie
        let bow = vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 1.0),
        ];
        assert!(Polygon::new(bow).is_err());
        assert!(Polygon::new(vec![Vec2::ZERO, Vec2::new(1.0, 0.0)]).is_err());
    }

    #[test]
    fn polygon_centroid_and_contains() {
        let tri = Polygon::new(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(3.0, 0.0),
            Vec2::new(0.0, 3.0),
        ])
        .unwrap();
        let c = tri.centroid();
        assert!((c.x - 1.0).abs() < 1e-12 && (c.y - 1.0).abs() < 1e-12);
        assert!(tri.contains(Vec2::new(0.5, 0.5)));
        assert!(!tri.contains(Vec2::new(2.0, 2.0)));
        let sq = Polygon::rectangle(4.0, 2.0).unwrap();
        assert_eq!(sq.bounding_box(), (Vec2::new(-2.0, -1.0), Vec2::new(2.0, 1.0)));
        assert_eq!(sq.centroid(), Vec2::ZERO);
    }

    proptest! {
        #[test]
        fn wrap_angle_periodic(theta in -100.0f64..100.0, k in -1_000_000i64..=1_000_000) {
            let a = wrap_angle(theta).unwrap();
            let b = wrap_angle(theta + TAU * k as f64).unwrap();
            prop_assert!((-PI..PI).contains(&a));
            prop_assert!((-PI..PI).contains(&b));
            let diff = wrap_angle(a - b).unwrap().abs();
            prop_assert!(diff < 1e-9, "{} vs {}", a, b);
        }

        #[test]
        fn bearing_rotation_equivariant(
            ox in -5.0f64..5.0, oy in -5.0f64..5.0, heading in -PI..PI,
            px in -5.0f64..5.0, py in -5.0f64..5.0, phi in -PI..PI,
        ) {
            let observer = Pose::new(Vec2::new(ox, oy), heading).unwrap();
            let point = Vec2::new(px, py);
            prop_assume!(point.distance(observer.position) > 1e-6);
            let b0 = bearing_to(&observer, point).unwrap();
            let rotated = Pose::new(observer.position, heading + phi).unwrap();
            let p1 = observer.position + (point - observer.position).rotated(phi);
            let b1 = bearing_to(&rotated, p1).unwrap();
            prop_assert!(wrap_angle(b0 - b1).unwrap().abs() < 1e-9);
        }
    }
}
