//! Nearly congruent pairs in space: all (p, q) with |pq| within `eps` of a
//! common r, i.e. incidences between P and congruent spheres centered at Q.
//!
//! The spherical shell of radii `r -+ eps` around a center is covered by
//! O(1/eps) caps of half-angle `sqrt(eps)/2`; in the frame where a cap's
//! direction is +z its shell portion fits in a box of `sqrt(eps) x
//! sqrt(eps) x 3 eps`. Per direction, a grid of box translates buckets P
//! and each q probes the (at most eight, generically) cells its translated
//! box overlaps. Any candidate then lies in the 3x-scaled box, hence within
//! a small r-dependent multiple of eps of the sphere.

use crate::error::ParamError;
use crate::exec;
use crate::geom::{self, DirectionNet, Point3, Rot3};
use crate::metrics::RunMetrics;
use crate::pairs::{self, Emit, Mode, Report};
use crate::planar::sparse::{axis_touch, PointBuckets3};
use std::time::Instant;

/// Directions covering the unit sphere with caps of half-angle
/// `sqrt(eps)/2`, built by the latitude-band construction.
pub fn build_cap_directions(eps: f64) -> Result<DirectionNet, ParamError> {
    if !(eps > 0.0 && eps <= 0.25) {
        return Err(ParamError::Epsilon {
            value: eps,
            lo: 0.0,
            hi: 0.25,
        });
    }
    Ok(DirectionNet::bands(eps.sqrt() / 2.0, false))
}

/// The enclosing box of one shell cap in its rotated frame (+z is the cap
/// direction): `|x|, |y| <= half_xy`, `z in [z_lo, r + eps]`.
#[derive(Debug, Clone, Copy)]
pub struct CapBox {
    pub half_xy: f64,
    pub z_lo: f64,
    pub z_hi: f64,
}

pub fn cap_box(r: f64, eps: f64, half_angle: f64) -> CapBox {
    CapBox {
        half_xy: (r + eps) * half_angle.sin(),
        z_lo: (r - eps) * half_angle.cos(),
        z_hi: r + eps,
    }
}

pub fn report(
    p: &[Point3],
    q: &[Point3],
    r: f64,
    eps: f64,
    mode: Mode,
) -> Result<Report, ParamError> {
    let started = Instant::now();
    geom::validate_eps(eps, 0.25)?;
    geom::validate_radius(r, eps, 10.0)?;
    geom::validate_points_3d(p)?;
    geom::validate_points_3d(q)?;
    if p.is_empty() || q.is_empty() {
        return Ok(Report::default());
    }
    let net = build_cap_directions(eps)?;
    let cap = cap_box(r, eps, net.half_angle);
    let cell = [2.0 * cap.half_xy, 2.0 * cap.half_xy, cap.z_hi - cap.z_lo];

    let per_dir = exec::map_range(net.dirs.len(), |di| {
        let rot = Rot3::between(net.dirs[di], geom::p3(0.0, 0.0, 1.0));
        let pts: Vec<(u32, [f64; 3])> = p
            .iter()
            .enumerate()
            .map(|(i, &pt)| {
                let v = rot.apply(pt);
                (i as u32, [v.x, v.y, v.z])
            })
            .collect();
        let buckets = PointBuckets3::build(&pts, cell);
        let mut emits: Vec<Emit> = Vec::new();
        let mut cells = 0u64;
        for (qi, &qp) in q.iter().enumerate() {
            let v = rot.apply(qp);
            let (x0, x1) = axis_touch(v.x - cap.half_xy, v.x + cap.half_xy, cell[0]);
            let (y0, y1) = axis_touch(v.y - cap.half_xy, v.y + cap.half_xy, cell[1]);
            let (z0, z1) = axis_touch(v.z + cap.z_lo, v.z + cap.z_hi, cell[2]);
            for cx in x0..=x1 {
                for cy in y0..=y1 {
                    for cz in z0..=z1 {
                        cells += 1;
                        for &pi in buckets.get([cx, cy, cz]) {
                            emits.push((pi, qi as u32, di as u64));
                        }
                    }
                }
            }
        }
        (emits, cells)
    });

    let mut metrics = RunMetrics::default();
    let mut emits = Vec::new();
    for (e, c) in per_dir {
        emits.extend(e);
        metrics.cells_visited += c;
    }
    metrics.elapsed = started.elapsed();
    let dist = |pi: u32, qi: u32| ((p[pi as usize] - q[qi as usize]).norm() - r).abs();
    Ok(pairs::finalize(emits, eps, mode, metrics, dist))
}
