//! Seeded random instance generators used by the benchmark CLI, the tests
//! and the benches. Everything is deterministic for a fixed seed.

use crate::geom::{p3, Circle2, Circle3, Line2, Line3, Plane3, Point2, Point3, Rot3};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn point_2d(rng: &mut ChaCha8Rng) -> Point2 {
    Point2 {
        x: rng.gen_range(-1.0..1.0),
        y: rng.gen_range(-1.0..1.0),
    }
}

pub fn point_3d(rng: &mut ChaCha8Rng) -> Point3 {
    p3(
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
    )
}

pub fn points_2d(n: usize, rng: &mut ChaCha8Rng) -> Vec<Point2> {
    (0..n).map(|_| point_2d(rng)).collect()
}

pub fn points_3d(n: usize, rng: &mut ChaCha8Rng) -> Vec<Point3> {
    (0..n).map(|_| point_3d(rng)).collect()
}

/// Lines through two random points of the domain square, so every line
/// crosses it.
pub fn lines_2d(n: usize, rng: &mut ChaCha8Rng) -> Vec<Line2> {
    (0..n)
        .map(|_| loop {
            let (p, q) = (point_2d(rng), point_2d(rng));
            if (p - q).norm() > 1e-6 {
                return Line2::through(p, q);
            }
        })
        .collect()
}

/// Planes through a random interior point with a random (z-representable)
/// unit normal.
pub fn planes_3d(n: usize, rng: &mut ChaCha8Rng) -> Vec<Plane3> {
    (0..n)
        .map(|_| loop {
            let nrm = unit_vec_3d(rng);
            if nrm.z.abs() < 0.05 {
                continue;
            }
            let pt = point_3d(rng) * 0.9;
            let a = -nrm.x / nrm.z;
            let b = -nrm.y / nrm.z;
            return Plane3 {
                a,
                b,
                c: pt.z - a * pt.x - b * pt.y,
            };
        })
        .collect()
}

/// Lines through two random points of the domain cube (x-representable).
pub fn lines_3d(n: usize, rng: &mut ChaCha8Rng) -> Vec<Line3> {
    (0..n)
        .map(|_| loop {
            let (p, q) = (point_3d(rng), point_3d(rng));
            let d = q - p;
            if d.norm() > 1e-3 && d.x.abs() / d.norm() >= 0.05 {
                return Line3::from_point_dir(p, d).unwrap();
            }
        })
        .collect()
}

/// Circles with uniformly random centers and radii in `[r_lo, r_hi]`.
pub fn circles_2d(n: usize, r_lo: f64, r_hi: f64, rng: &mut ChaCha8Rng) -> Vec<Circle2> {
    (0..n)
        .map(|_| Circle2 {
            center: point_2d(rng),
            r: if r_lo < r_hi {
                rng.gen_range(r_lo..r_hi)
            } else {
                r_lo
            },
        })
        .collect()
}

/// Congruent circles in space with random axes, centered well inside the
/// domain so they cross the unit ball.
pub fn circles_3d(n: usize, r: f64, rng: &mut ChaCha8Rng) -> Vec<Circle3> {
    (0..n)
        .map(|_| Circle3 {
            center: p3(
                rng.gen_range(-0.7..0.7),
                rng.gen_range(-0.7..0.7),
                rng.gen_range(-0.7..0.7),
            ),
            r,
            axis: unit_vec_3d(rng),
        })
        .collect()
}

pub fn unit_vec_3d(rng: &mut ChaCha8Rng) -> Point3 {
    loop {
        let v = p3(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let n = v.norm();
        if n > 1e-3 && n <= 1.0 {
            return v * (1.0 / n);
        }
    }
}

pub fn rotation_3d(rng: &mut ChaCha8Rng) -> Rot3 {
    let axis = unit_vec_3d(rng);
    let angle = rng.gen_range(0.0..std::f64::consts::TAU);
    Rot3::from_axis_angle(axis, angle)
}

/// A random rigid placement of the triangle with sides (u, v, w), each
/// vertex then perturbed by up to `wobble` per axis. Returns [a, b, c]
/// with |ab| = u, |ac| = v, |bc| = w before perturbation.
pub fn placed_triangle(u: f64, v: f64, w: f64, wobble: f64, rng: &mut ChaCha8Rng) -> [Point3; 3] {
    let (z, h) = crate::triangles::triangle_geometry(u, v, w).expect("valid sides");
    let rot = rotation_3d(rng);
    let shift = p3(
        rng.gen_range(-0.5..0.5),
        rng.gen_range(-0.5..0.5),
        rng.gen_range(-0.5..0.5),
    );
    let base = [p3(0.0, 0.0, 0.0), p3(u, 0.0, 0.0), p3(z, h, 0.0)];
    base.map(|p| {
        let placed = rot.apply(p) + shift;
        let jitter = p3(
            rng.gen_range(-1.0..1.0) * wobble,
            rng.gen_range(-1.0..1.0) * wobble,
            rng.gen_range(-1.0..1.0) * wobble,
        );
        placed + jitter
    })
}
