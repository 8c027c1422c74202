//! Exact Euclidean point-object distances, each object treated as a point
//! set (so the distance to a circle is to the curve, not the disk).

use super::{Circle2, Circle3, Line2, Line3, Object2, Object3, Plane3, Point2, Point3, Sphere3};

pub fn dist_point_line_2d(p: Point2, l: &Line2) -> f64 {
    match *l {
        Line2::Slant { a, b } => (a * p.x - p.y + b).abs() / (a * a + 1.0).sqrt(),
        Line2::Vertical { x } => (p.x - x).abs(),
    }
}

pub fn dist_point_circle_2d(p: Point2, c: &Circle2) -> f64 {
    ((p - c.center).norm() - c.r).abs()
}

/// Power of a point with respect to a circle: `|pq|^2 - r^2`. Tracks the
/// distance up to a factor in `[2r, 2r + dist]`, which makes it a cheap
/// surrogate once the distance is below `r`.
pub fn power_of_point(p: Point2, c: &Circle2) -> f64 {
    (p - c.center).norm_sq() - c.r * c.r
}

pub fn dist_point_plane_3d(p: Point3, pl: &Plane3) -> f64 {
    (pl.a * p.x + pl.b * p.y - p.z + pl.c).abs() / (pl.a * pl.a + pl.b * pl.b + 1.0).sqrt()
}

pub fn dist_point_line_3d(p: Point3, l: &Line3) -> f64 {
    let q = l.point_at(0.0);
    let d = l.dir();
    (p - q).cross(d).norm() / d.norm()
}

pub fn dist_point_sphere_3d(p: Point3, s: &Sphere3) -> f64 {
    ((p - s.center).norm() - s.r).abs()
}

pub fn dist_point_circle_3d(p: Point3, c: &Circle3) -> f64 {
    let w = p - c.center;
    let axial = w.dot(c.axis);
    let radial = (w - c.axis * axial).norm();
    let dr = radial - c.r;
    (dr * dr + axial * axial).sqrt()
}

pub fn dist_point_object_2d(p: Point2, o: &Object2) -> f64 {
    match o {
        Object2::Line(l) => dist_point_line_2d(p, l),
        Object2::Circle(c) => dist_point_circle_2d(p, c),
    }
}

pub fn dist_point_object_3d(p: Point3, o: &Object3) -> f64 {
    match o {
        Object3::Plane(pl) => dist_point_plane_3d(p, pl),
        Object3::Line(l) => dist_point_line_3d(p, l),
        Object3::Sphere(s) => dist_point_sphere_3d(p, s),
        Object3::Circle(c) => dist_point_circle_3d(p, c),
    }
}
