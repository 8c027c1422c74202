//! Domain types, exact point-object distances, and the coordinate
//! normalizations (rotations, slope/direction classes) shared by all
//! reporting algorithms.
//!
//! Points are expected to live in the `[-1, 1]` box (the unit disk / ball of
//! the problem statements, padded to its bounding box). Objects may extend
//! anywhere; grids clip to the domain.

pub mod classes;
mod dist;
mod frames;
#[cfg(test)]
mod tests;

pub use classes::{slope_split, DirectionClass, DirectionNet, SlopeClass};
pub use dist::{
    dist_point_circle_2d, dist_point_circle_3d, dist_point_line_2d, dist_point_line_3d,
    dist_point_object_2d, dist_point_object_3d, dist_point_plane_3d, dist_point_sphere_3d,
    power_of_point,
};
pub use frames::{Rot2, Rot3};

use crate::error::ParamError;
use std::ops::{Add, Mul, Neg, Sub};

pub const DOMAIN_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

pub const fn p2(x: f64, y: f64) -> Point2 {
    Point2 { x, y }
}

pub const fn p3(x: f64, y: f64, z: f64) -> Point3 {
    Point3 { x, y, z }
}

impl Point2 {
    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }
    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }
    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
    pub fn in_domain(self) -> bool {
        self.x.abs() <= 1.0 + DOMAIN_TOL && self.y.abs() <= 1.0 + DOMAIN_TOL
    }
}

impl Point3 {
    pub fn dot(self, o: Point3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }
    pub fn cross(self, o: Point3) -> Point3 {
        p3(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }
    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }
    pub fn normalized(self) -> Point3 {
        self * (1.0 / self.norm())
    }
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
    pub fn in_domain(self) -> bool {
        self.x.abs() <= 1.0 + DOMAIN_TOL
            && self.y.abs() <= 1.0 + DOMAIN_TOL
            && self.z.abs() <= 1.0 + DOMAIN_TOL
    }
}

macro_rules! impl_vec_ops {
    ($t:ty, $($f:ident),+) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t { Self { $($f: self.$f + o.$f),+ } }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t { Self { $($f: self.$f - o.$f),+ } }
        }
        impl Mul<f64> for $t {
            type Output = $t;
            fn mul(self, s: f64) -> $t { Self { $($f: self.$f * s),+ } }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t { Self { $($f: -self.$f),+ } }
        }
    };
}
impl_vec_ops!(Point2, x, y);
impl_vec_ops!(Point3, x, y, z);

/// A line in the plane, `y = a x + b`, or the vertical line `x = x0` which
/// the slope form cannot represent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Line2 {
    Slant { a: f64, b: f64 },
    Vertical { x: f64 },
}

impl Line2 {
    /// Line through two distinct points.
    pub fn through(p: Point2, q: Point2) -> Line2 {
        if p.x == q.x {
            Line2::Vertical { x: p.x }
        } else {
            let a = (q.y - p.y) / (q.x - p.x);
            Line2::Slant {
                a,
                b: p.y - a * p.x,
            }
        }
    }

    /// Two points spanning the line, used when transforming it.
    pub fn two_points(self) -> (Point2, Point2) {
        match self {
            Line2::Slant { a, b } => (p2(0.0, b), p2(1.0, a + b)),
            Line2::Vertical { x } => (p2(x, 0.0), p2(x, 1.0)),
        }
    }

    pub fn is_finite(self) -> bool {
        match self {
            Line2::Slant { a, b } => a.is_finite() && b.is_finite(),
            Line2::Vertical { x } => x.is_finite(),
        }
    }
}

/// Plane `z = a x + b y + c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Plane3 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Plane3 {
    pub fn eval(self, x: f64, y: f64) -> f64 {
        self.a * x + self.b * y + self.c
    }
    /// Upward-ish normal `(-a, -b, 1)`, not normalized.
    pub fn normal(self) -> Point3 {
        p3(-self.a, -self.b, 1.0)
    }
    pub fn is_finite(self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite()
    }
}

/// Line in space in two-slope form: `y = a x + b`, `z = c x + d`.
/// Only valid for lines not orthogonal to the x-axis; direction classes
/// rotate every input line into such a frame before this form is built.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line3 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Line3 {
    pub fn point_at(self, x: f64) -> Point3 {
        p3(x, self.a * x + self.b, self.c * x + self.d)
    }
    pub fn dir(self) -> Point3 {
        p3(1.0, self.a, self.c)
    }
    /// Two-slope form of the line through `p` with direction `dir`;
    /// `None` when the line is orthogonal to the x-axis.
    pub fn from_point_dir(pt: Point3, dir: Point3) -> Option<Line3> {
        if dir.x == 0.0 {
            return None;
        }
        let a = dir.y / dir.x;
        let c = dir.z / dir.x;
        Some(Line3 {
            a,
            b: pt.y - a * pt.x,
            c,
            d: pt.z - c * pt.x,
        })
    }
    pub fn is_finite(self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite() && self.d.is_finite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle2 {
    pub center: Point2,
    pub r: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sphere3 {
    pub center: Point3,
    pub r: f64,
}

/// Circle in space: center, radius, and the unit axis normal to its plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle3 {
    pub center: Point3,
    pub r: f64,
    pub axis: Point3,
}

impl Circle3 {
    pub fn new(center: Point3, r: f64, axis: Point3) -> Circle3 {
        Circle3 {
            center,
            r,
            axis: axis.normalized(),
        }
    }
}

/// 2D objects the baselines and the CLI can mix in one input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Object2 {
    Line(Line2),
    Circle(Circle2),
}

/// 3D objects the baselines and the CLI can mix in one input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Object3 {
    Plane(Plane3),
    Line(Line3),
    Sphere(Sphere3),
    Circle(Circle3),
}

pub fn validate_points_2d(points: &[Point2]) -> Result<(), ParamError> {
    for (i, p) in points.iter().enumerate() {
        if !p.is_finite() {
            return Err(ParamError::NonFinite { index: i });
        }
        if !p.in_domain() {
            return Err(ParamError::PointOutOfDomain { index: i });
        }
    }
    Ok(())
}

pub fn validate_points_3d(points: &[Point3]) -> Result<(), ParamError> {
    for (i, p) in points.iter().enumerate() {
        if !p.is_finite() {
            return Err(ParamError::NonFinite { index: i });
        }
        if !p.in_domain() {
            return Err(ParamError::PointOutOfDomain { index: i });
        }
    }
    Ok(())
}

pub fn validate_eps(eps: f64, hi: f64) -> Result<(), ParamError> {
    if !(eps > 0.0 && eps <= hi && eps.is_finite()) {
        return Err(ParamError::Epsilon {
            value: eps,
            lo: 0.0,
            hi,
        });
    }
    Ok(())
}

/// Common radius checks of the congruent-family algorithms: `0 < r <= 1/2`
/// and `eps` at most `r / divisor`.
pub fn validate_radius(r: f64, eps: f64, divisor: f64) -> Result<(), ParamError> {
    if !(r > 0.0 && r <= 0.5 && r.is_finite()) {
        return Err(ParamError::Radius { value: r, hi: 0.5 });
    }
    if eps > r / divisor {
        return Err(ParamError::EpsilonVsRadius {
            eps,
            radius: r,
            divisor,
        });
    }
    Ok(())
}
