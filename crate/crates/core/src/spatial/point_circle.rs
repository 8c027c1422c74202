//! Approximate incidences between points and congruent circles in space.
//!
//! Pipeline: circles are classed by axis direction (half-angle pi/12 net)
//! and each class rotated so its axes are near +-z. The eps-thickened
//! reference circle splits into ~pi/sqrt(eps) wedge sectors; each sector,
//! in a frame rotated so its chord is parallel to the x-axis, is enclosed
//! by a cylinder of radius 1.5 eps whose axis is nearly x-parallel. Space
//! is cut into x-slabs of the chord width; within a slab the cylinder axes
//! behave like full lines, so each slab runs the 3D point-line engine at
//! tolerance 1.5 eps. Candidates are finally checked against the exact
//! circle distance.

use crate::error::ParamError;
use crate::exec;
use crate::geom::{self, Circle3, DirectionNet, Line3, Point3, Rot3};
use crate::metrics::RunMetrics;
use crate::pairs::{self, Emit, Mode, Report};
use crate::planar::sparse::{axis_key, axis_touch, cell_map, CellMap};
use crate::spatial::point_line;
use std::f64::consts::PI;
use std::time::Instant;

/// Half-angle of the axis-direction classes.
pub const AXIS_CLASS_HALF_ANGLE: f64 = PI / 12.0;

/// Enclosing-cylinder radius factor: every sector of the eps-thickened
/// circle fits in a cylinder of radius 1.5 eps.
pub const CYLINDER_RADIUS_FACTOR: f64 = 1.5;

/// Reference geometry of one torus sector for radius `r`, tolerance `eps`.
#[derive(Debug, Clone, Copy)]
pub struct SectorFrame {
    pub n_sectors: usize,
    /// Central angle of one sector.
    pub theta: f64,
    /// Chord length of the arc = slab width.
    pub chord: f64,
    /// Cylinder axis half-length.
    pub half_len: f64,
    /// Radial coordinate of the axis midpoint in the sector frame.
    pub axis_rho: f64,
    /// Cylinder radius (1.5 eps).
    pub radius: f64,
}

pub fn sector_frame(r: f64, eps: f64) -> SectorFrame {
    let n_sectors = (PI / eps.sqrt()).ceil() as usize;
    let theta = 2.0 * PI / n_sectors as f64;
    let half = theta * 0.5;
    // Exact enclosing radius: the cross-section is the eps-stadium of the
    // arc's radial trace, whose farthest point from the axis midpoint sits
    // at eps + (r + eps)(1 - cos(theta/2))/2. Always below 1.5 eps.
    let radius = (eps + 0.5 * (r + eps) * (1.0 - half.cos())) * (1.0 + 1e-12);
    debug_assert!(radius <= CYLINDER_RADIUS_FACTOR * eps);
    SectorFrame {
        n_sectors,
        theta,
        chord: 2.0 * r * half.sin(),
        half_len: (r + eps) * half.sin(),
        axis_rho: 0.5 * ((r - eps) * half.cos() + r + eps),
        radius,
    }
}

pub fn report(
    points: &[Point3],
    circles: &[Circle3],
    r: f64,
    eps: f64,
    mode: Mode,
) -> Result<Report, ParamError> {
    report_with_divisor(points, circles, r, eps, mode, 10.0)
}

/// The sector bounds (chord <= sqrt(eps), cylinder radius <= 1.5 eps) only
/// need r <= 1/2, so internal callers (the triangle matcher's apex stage)
/// may run with eps up to r/4.
pub(crate) fn report_with_divisor(
    points: &[Point3],
    circles: &[Circle3],
    r: f64,
    eps: f64,
    mode: Mode,
    divisor: f64,
) -> Result<Report, ParamError> {
    let started = Instant::now();
    geom::validate_eps(eps, 0.25)?;
    geom::validate_radius(r, eps, divisor)?;
    geom::validate_points_3d(points)?;
    for (i, c) in circles.iter().enumerate() {
        if !(c.center.is_finite() && c.axis.is_finite() && c.r.is_finite()) {
            return Err(ParamError::NonFinite { index: i });
        }
        if (c.r - r).abs() > 1e-9 {
            return Err(ParamError::MixedRadii {
                index: i,
                found: c.r,
                expected: r,
            });
        }
    }
    if points.is_empty() || circles.is_empty() {
        return Ok(Report::default());
    }

    let net = DirectionNet::bands(AXIS_CLASS_HALF_ANGLE, true);
    let frame = sector_frame(r, eps);
    let eps_inner = frame.radius;
    let target = geom::p3(0.0, 0.0, 1.0);
    let classes = geom::classes::direction_partition(
        &net,
        target,
        circles,
        |c| c.axis,
        |rot, c| rot.apply_circle(c),
    );

    let per_class: Vec<Result<(Vec<Emit>, u64), ParamError>> =
        exec::map_range(classes.len(), |ci| {
            let class = &classes[ci];
            let class_pts: Vec<Point3> = points.iter().map(|&p| class.rotation.apply(p)).collect();
            let mut emits: Vec<Emit> = Vec::new();
            let mut cells = 0u64;
            for sector in 0..frame.n_sectors {
                let mid = (sector as f64 + 0.5) * frame.theta;
                // Rotate about z so the sector chord is x-parallel; the arc
                // bisector then points along -y.
                let rot = Rot3::about_z(-(mid + 0.5 * PI));
                let tag = ((ci as u64) << 40) | ((sector as u64) << 20);
                let sec_pts: Vec<(u32, Point3)> = class_pts
                    .iter()
                    .enumerate()
                    .map(|(i, &p)| (i as u32, rot.apply(p)))
                    .collect();
                // Slab buckets for the points.
                let mut slabs: CellMap<i64, Vec<u32>> = cell_map();
                for &(i, p) in &sec_pts {
                    slabs.entry(axis_key(p.x, frame.chord)).or_default().push(i);
                }
                // Cylinder axes of this sector, registered with the slabs
                // their x-extent touches.
                let mut slab_lines: CellMap<i64, Vec<(u32, Line3)>> = cell_map();
                for &(circ_id, ref c) in &class.members {
                    let c = rot.apply_circle(c);
                    let axis = if c.axis.z < 0.0 { -c.axis } else { c.axis };
                    let tilt = Rot3::between(geom::p3(0.0, 0.0, 1.0), axis);
                    let mid_pt = c.center + tilt.apply(geom::p3(0.0, -frame.axis_rho, 0.0));
                    let dir = tilt.apply(geom::p3(1.0, 0.0, 0.0));
                    let line = Line3::from_point_dir(mid_pt, dir)
                        .expect("axis-class frame keeps cylinder axes near x");
                    let reach = frame.half_len * dir.x.abs() + frame.radius;
                    let (s0, s1) = axis_touch(mid_pt.x - reach, mid_pt.x + reach, frame.chord);
                    for s in s0..=s1 {
                        slab_lines.entry(s).or_default().push((circ_id, line));
                    }
                }
                let mut slab_ids: Vec<i64> = slab_lines.keys().copied().collect();
                slab_ids.sort_unstable();
                for s in slab_ids {
                    let Some(pts) = slabs.get(&s) else { continue };
                    let pts: Vec<(u32, Point3)> =
                        pts.iter().map(|&i| sec_pts[i as usize]).collect();
                    let lines = &slab_lines[&s];
                    let (e, c) = point_line::engine_normalized(&pts, lines, eps_inner, tag)?;
                    emits.extend(e);
                    cells += c;
                }
            }
            Ok((emits, cells))
        });

    let mut metrics = RunMetrics::default();
    let mut emits = Vec::new();
    for res in per_class {
        let (e, c) = res?;
        emits.extend(e);
        metrics.cells_visited += c;
    }
    metrics.elapsed = started.elapsed();
    let dist =
        |pi: u32, ci: u32| geom::dist_point_circle_3d(points[pi as usize], &circles[ci as usize]);
    Ok(pairs::finalize(emits, eps, mode, metrics, dist))
}
