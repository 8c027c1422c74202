//! Rigid rotations used to move inputs into the frame each algorithm
//! assumes (nearly horizontal lines, near-vertical plane normals, ...).
//! Rotations are exact isometries, so distances never need rescaling when
//! mapping results back.

use super::{p3, Circle3, Line2, Line3, Plane3, Point2, Point3};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rot2 {
    pub cos: f64,
    pub sin: f64,
}

impl Rot2 {
    pub const IDENTITY: Rot2 = Rot2 { cos: 1.0, sin: 0.0 };

    pub fn from_angle(theta: f64) -> Rot2 {
        Rot2 {
            cos: theta.cos(),
            sin: theta.sin(),
        }
    }

    pub fn apply(self, p: Point2) -> Point2 {
        Point2 {
            x: self.cos * p.x - self.sin * p.y,
            y: self.sin * p.x + self.cos * p.y,
        }
    }

    pub fn inverse(self) -> Rot2 {
        Rot2 {
            cos: self.cos,
            sin: -self.sin,
        }
    }

    pub fn apply_line(self, l: &Line2) -> Line2 {
        let (p, q) = l.two_points();
        Line2::through(self.apply(p), self.apply(q))
    }
}

/// Row-major 3x3 rotation matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rot3(pub [[f64; 3]; 3]);

impl Rot3 {
    pub const IDENTITY: Rot3 = Rot3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    pub fn apply(self, p: Point3) -> Point3 {
        let m = self.0;
        p3(
            m[0][0] * p.x + m[0][1] * p.y + m[0][2] * p.z,
            m[1][0] * p.x + m[1][1] * p.y + m[1][2] * p.z,
            m[2][0] * p.x + m[2][1] * p.y + m[2][2] * p.z,
        )
    }

    pub fn transpose(self) -> Rot3 {
        let m = self.0;
        Rot3([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    pub fn from_axis_angle(axis: Point3, angle: f64) -> Rot3 {
        let u = axis.normalized();
        let (s, c) = angle.sin_cos();
        let t = 1.0 - c;
        Rot3([
            [
                c + u.x * u.x * t,
                u.x * u.y * t - u.z * s,
                u.x * u.z * t + u.y * s,
            ],
            [
                u.y * u.x * t + u.z * s,
                c + u.y * u.y * t,
                u.y * u.z * t - u.x * s,
            ],
            [
                u.z * u.x * t - u.y * s,
                u.z * u.y * t + u.x * s,
                c + u.z * u.z * t,
            ],
        ])
    }

    /// Minimal rotation taking unit vector `from` onto unit vector `to`.
    pub fn between(from: Point3, to: Point3) -> Rot3 {
        let axis = from.cross(to);
        let axis_norm = axis.norm();
        let cos = from.dot(to).clamp(-1.0, 1.0);
        if axis_norm < 1e-14 {
            if cos > 0.0 {
                return Rot3::IDENTITY;
            }
            // Antipodal: rotate half a turn about any axis orthogonal to `from`.
            let helper = if from.x.abs() < 0.9 {
                p3(1.0, 0.0, 0.0)
            } else {
                p3(0.0, 1.0, 0.0)
            };
            let ortho = from.cross(helper).normalized();
            return Rot3::from_axis_angle(ortho, std::f64::consts::PI);
        }
        Rot3::from_axis_angle(axis * (1.0 / axis_norm), axis_norm.atan2(cos))
    }

    /// Rotation about the z-axis by `theta`.
    pub fn about_z(theta: f64) -> Rot3 {
        let (s, c) = theta.sin_cos();
        Rot3([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    }

    /// Rebuilds a plane `z = ax + by + c` after rotation. Valid only when the
    /// rotated normal keeps a nonzero z-component, which direction classes
    /// guarantee.
    pub fn apply_plane(self, pl: &Plane3) -> Plane3 {
        let n = self.apply(pl.normal());
        debug_assert!(n.z.abs() > 1e-9, "rotated plane became vertical");
        let pt = self.apply(p3(0.0, 0.0, pl.c));
        let a = -n.x / n.z;
        let b = -n.y / n.z;
        Plane3 {
            a,
            b,
            c: pt.z - a * pt.x - b * pt.y,
        }
    }

    /// Rebuilds a two-slope line after rotation; the rotated direction must
    /// keep a nonzero x-component.
    pub fn apply_line(self, l: &Line3) -> Line3 {
        let pt = self.apply(l.point_at(0.0));
        let dir = self.apply(l.dir());
        debug_assert!(dir.x.abs() > 1e-9, "rotated line became orthogonal to x");
        Line3::from_point_dir(pt, dir).expect("direction-class frame keeps dir.x nonzero")
    }

    pub fn apply_circle(self, c: &Circle3) -> Circle3 {
        Circle3 {
            center: self.apply(c.center),
            r: c.r,
            axis: self.apply(c.axis),
        }
    }
}
