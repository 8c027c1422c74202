//! Nearly congruent pairs in the plane: all (p, q) with |pq| within `eps`
//! of a common r. Equivalent to approximate incidences between the points
//! of P and congruent circles of radius r centered at the points of Q.
//!
//! Two interchangeable methods:
//! * [`sector_report`]: cover the reference annulus by sectors of central
//!   angle about sqrt(eps); in a frame rotated per sector its enclosing
//!   rectangle is axis-aligned of size <= sqrt(eps) x 3 eps, and a grid of
//!   rectangle translates reports the containments directly.
//! * [`dual_report`]: a coarse primal grid, then per cell a polar grid
//!   about the cell center (annulus sectors of radial extent 2 eps) over
//!   the dualized problem, where distances between circle centers and
//!   circles around points are the same pair distances.

use crate::error::ParamError;
use crate::exec;
use crate::geom::{self, Point2, Rot2};
use crate::metrics::RunMetrics;
use crate::pairs::{self, Emit, Mode, Report};
use crate::plan::{plan_deltas, PlanStrategy, ProblemProfile};
use crate::planar::sparse::{axis_key, axis_touch, cell_map, CellMap, PointBuckets2};
use std::f64::consts::{PI, SQRT_2};
use std::time::Instant;

/// Geometry of one canonical annulus sector in its rotated frame: the arc's
/// bisector points along +y and the enclosing rectangle is axis-aligned.
#[derive(Debug, Clone, Copy)]
pub struct SectorRect {
    /// Full x-extent (long side, parallel to the chord).
    pub width: f64,
    /// y-range (short side, radial).
    pub y_lo: f64,
    pub y_hi: f64,
}

/// Arc count and the enclosing rectangle for radius `r`, tolerance `eps`.
pub fn sector_layout(r: f64, eps: f64) -> (usize, SectorRect) {
    let n_arcs = (2.0 * PI / eps.sqrt()).ceil() as usize;
    let half = PI / n_arcs as f64; // half the central angle
    let rect = SectorRect {
        width: 2.0 * (r + eps) * half.sin(),
        y_lo: (r - eps) * half.cos(),
        y_hi: r + eps,
    };
    (n_arcs, rect)
}

/// Sector method. Every pair with |pq| in [r-eps, r+eps] is reported and
/// every candidate satisfies |pq| in [r-5eps, r+5eps].
pub fn sector_report(
    p: &[Point2],
    q: &[Point2],
    r: f64,
    eps: f64,
    mode: Mode,
) -> Result<Report, ParamError> {
    let started = Instant::now();
    validate(p, q, r, eps, 10.0)?;
    let mut metrics = RunMetrics::default();
    if p.is_empty() || q.is_empty() {
        return Ok(Report::default());
    }
    let (n_arcs, rect) = sector_layout(r, eps);
    let cell = [rect.width, rect.y_hi - rect.y_lo];

    let per_arc = exec::map_range(n_arcs, |arc| {
        let theta = (arc as f64 + 0.5) * 2.0 * PI / n_arcs as f64;
        // Send the arc bisector to +y.
        let rot = Rot2::from_angle(std::f64::consts::FRAC_PI_2 - theta);
        let pts: Vec<(u32, [f64; 2])> = p
            .iter()
            .enumerate()
            .map(|(i, &pt)| {
                let v = rot.apply(pt);
                (i as u32, [v.x, v.y])
            })
            .collect();
        let buckets = PointBuckets2::build(&pts, cell);
        let mut emits: Vec<Emit> = Vec::new();
        let mut cells = 0u64;
        for (qi, &qp) in q.iter().enumerate() {
            let v = rot.apply(qp);
            let (cx0, cx1) = axis_touch(v.x - rect.width * 0.5, v.x + rect.width * 0.5, cell[0]);
            let (cy0, cy1) = axis_touch(v.y + rect.y_lo, v.y + rect.y_hi, cell[1]);
            for cxi in cx0..=cx1 {
                for cyi in cy0..=cy1 {
                    cells += 1;
                    for &pi in buckets.get([cxi, cyi]) {
                        emits.push((pi, qi as u32, arc as u64));
                    }
                }
            }
        }
        (emits, cells)
    });

    let mut emits = Vec::new();
    for (e, c) in per_arc {
        emits.extend(e);
        metrics.cells_visited += c;
    }
    metrics.elapsed = started.elapsed();
    let dist = |pi: u32, qi: u32| ((p[pi as usize] - q[qi as usize]).norm() - r).abs();
    Ok(pairs::finalize(emits, eps, mode, metrics, dist))
}

/// Duality method. Same completeness; candidates lie within a measured
/// small multiple of eps of the annulus.
pub fn dual_report(
    p: &[Point2],
    q: &[Point2],
    r: f64,
    eps: f64,
    mode: Mode,
) -> Result<Report, ParamError> {
    let started = Instant::now();
    validate(p, q, r, eps, 15.0)?;
    if p.is_empty() || q.is_empty() {
        return Ok(Report::default());
    }
    let plan = plan_deltas(p.len(), q.len(), eps, ProblemProfile::CongruentDual2 { r })?;
    // The relation is symmetric; run with the smaller side as "points".
    let (side_a, side_b, flip) = if plan.swapped {
        (q, p, true)
    } else {
        (p, q, false)
    };

    let (emits, cells) = match plan.strategy {
        PlanStrategy::DualOnly => annulus_probe(side_a, side_b, r, eps, flip),
        PlanStrategy::PrimalDual => polar_dual(side_a, side_b, r, eps, plan.d1, plan.d2, flip),
        _ => unreachable!("congruent planner yields primal-dual or skip-primal"),
    };
    let mut metrics = RunMetrics::default();
    metrics.cells_visited = cells;
    metrics.elapsed = started.elapsed();
    let dist = |pi: u32, qi: u32| ((p[pi as usize] - q[qi as usize]).norm() - r).abs();
    Ok(pairs::finalize(emits, eps, mode, metrics, dist))
}

fn validate(p: &[Point2], q: &[Point2], r: f64, eps: f64, divisor: f64) -> Result<(), ParamError> {
    geom::validate_eps(eps, 0.5)?;
    geom::validate_radius(r, eps, divisor)?;
    geom::validate_points_2d(p)?;
    geom::validate_points_2d(q)
}

/// Skip-primal regime (few points, many centers): bucket the centers on a
/// plain eps-grid and walk each circle around a point through the cells it
/// crosses plus their 8-neighborhoods.
fn annulus_probe(
    pts: &[Point2],
    centers: &[Point2],
    r: f64,
    eps: f64,
    flip: bool,
) -> (Vec<Emit>, u64) {
    let cell = [eps, eps];
    let indexed: Vec<(u32, [f64; 2])> = centers
        .iter()
        .enumerate()
        .map(|(i, c)| (i as u32, [c.x, c.y]))
        .collect();
    let buckets = PointBuckets2::build(&indexed, cell);
    let results = exec::map_range(pts.len(), |pi| {
        let mut emits: Vec<Emit> = Vec::new();
        let mut cells = 0u64;
        let mut probed: Vec<[i64; 2]> = Vec::new();
        let c = pts[pi];
        for (col, r0, r1) in
            crate::planar::sparse::circle_touch_spans([c.x, c.y], r, eps, i64::MIN, i64::MAX)
        {
            for row in r0..=r1 {
                probed.push([col, row]);
            }
        }
        // Expand by the 8-neighborhood and dedup before probing.
        let mut all: Vec<[i64; 2]> = Vec::with_capacity(probed.len() * 9);
        for cellk in probed {
            for dx in -1..=1 {
                for dy in -1..=1 {
                    all.push([cellk[0] + dx, cellk[1] + dy]);
                }
            }
        }
        all.sort_unstable();
        all.dedup();
        for key in all {
            cells += 1;
            for &qi in buckets.get(key) {
                emits.push(if flip {
                    (qi, pi as u32, 0)
                } else {
                    (pi as u32, qi, 0)
                });
            }
        }
        (emits, cells)
    });
    let mut emits = Vec::new();
    let mut cells = 0u64;
    for (e, c) in results {
        emits.extend(e);
        cells += c;
    }
    (emits, cells)
}

/// Radial range of one circle branch over a polar-angle interval about a
/// grid center. `w` is the circle center relative to the pole, `r` its
/// radius. Branches `w.e +- sqrt(r^2 - (w x e)^2)` are monotone between the
/// diameter angles and (when the pole is outside) the tangent angles, so
/// per-column extrema sit at those critical angles or the endpoints.
pub(crate) fn polar_branch_range(w: Point2, r: f64, t0: f64, t1: f64) -> Option<(f64, f64)> {
    let dist = w.norm();
    let w_ang = w.y.atan2(w.x);
    let mut crit = vec![t0, t1];
    let push_wrapped = |t: f64, crit: &mut Vec<f64>| {
        for k in [-1.0, 0.0, 1.0] {
            let tt = t + 2.0 * PI * k;
            if t0 <= tt && tt <= t1 {
                crit.push(tt);
            }
        }
    };
    push_wrapped(w_ang, &mut crit);
    push_wrapped(w_ang + PI, &mut crit);
    if dist > r {
        let half = (r / dist).asin();
        push_wrapped(w_ang - half, &mut crit);
        push_wrapped(w_ang + half, &mut crit);
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let branches: &[f64] = if dist > r { &[1.0, -1.0] } else { &[1.0] };
    for &sign in branches {
        for &t in &crit {
            let e = Point2 {
                x: t.cos(),
                y: t.sin(),
            };
            let disc = r * r - w.cross(e) * w.cross(e);
            if disc < 0.0 {
                continue;
            }
            let rho = w.dot(e) + sign * disc.sqrt();
            if rho >= 0.0 {
                lo = lo.min(rho);
                hi = hi.max(rho);
            }
        }
    }
    (lo <= hi).then_some((lo, hi))
}

/// Primal grid of cell `d1`, then per cell a polar grid about the cell
/// center: theta columns of width 2 pi d2 (cyclic), radial rows of extent
/// sqrt(2) d1 d2 = 2 eps. Centers are located; circles around the cell's
/// points are walked through their crossings and probe one radial row each
/// way.
fn polar_dual(
    pts: &[Point2],
    centers: &[Point2],
    r: f64,
    eps: f64,
    d1: f64,
    d2: f64,
    flip: bool,
) -> (Vec<Emit>, u64) {
    let indexed: Vec<(u32, [f64; 2])> = pts
        .iter()
        .enumerate()
        .map(|(i, p)| (i as u32, [p.x, p.y]))
        .collect();
    let buckets = PointBuckets2::build(&indexed, [d1, d1]);

    // Register each center's circle with the primal cells it crosses.
    let mut subs: CellMap<[i64; 2], Vec<u32>> = cell_map();
    let mut primal_cells = 0u64;
    for (qi, c) in centers.iter().enumerate() {
        for (col, r0, r1) in crate::planar::sparse::circle_touch_spans(
            [c.x, c.y],
            r,
            d1,
            buckets.col_lo - 1,
            buckets.col_hi + 1,
        ) {
            primal_cells += (r1 - r0 + 1) as u64;
            for row in r0..=r1 {
                let e = subs.entry([col, row]).or_default();
                if e.last() != Some(&(qi as u32)) {
                    e.push(qi as u32);
                }
            }
        }
    }
    let mut sub_list: Vec<([i64; 2], Vec<u32>)> = subs.into_iter().collect();
    sub_list.sort_unstable_by_key(|(c, _)| *c);

    let rho_cell = SQRT_2 * d1 * d2;
    debug_assert!((rho_cell - 2.0 * eps).abs() <= 1e-12 * eps.max(1.0));
    let n_theta = ((1.0 / d2).ceil() as i64).max(1);
    let theta_cell = 2.0 * PI / n_theta as f64;

    let results = exec::map_range(sub_list.len(), |si| {
        let (cell, center_idxs) = &sub_list[si];
        let tag = si as u64;
        let mut out = (Vec::new(), 0u64);
        let mut pts_here: Vec<u32> = Vec::new();
        for dx in -1..=1 {
            for dy in -1..=1 {
                pts_here.extend_from_slice(buckets.get([cell[0] + dx, cell[1] + dy]));
            }
        }
        if pts_here.is_empty() {
            return out;
        }
        let o = Point2 {
            x: (cell[0] as f64 + 0.5) * d1,
            y: (cell[1] as f64 + 0.5) * d1,
        };
        // Bucket the centers by (radial row, theta column) about o.
        let mut polar: CellMap<[i64; 2], Vec<u32>> = cell_map();
        for &qi in center_idxs {
            let w = centers[qi as usize] - o;
            let rho = w.norm();
            let theta = w.y.atan2(w.x).rem_euclid(2.0 * PI);
            let ti = ((theta / theta_cell).floor() as i64).clamp(0, n_theta - 1);
            polar
                .entry([axis_key(rho, rho_cell), ti])
                .or_default()
                .push(qi);
        }
        for &pi in &pts_here {
            let w = pts[pi as usize] - o;
            for tc in 0..n_theta {
                let t0 = tc as f64 * theta_cell;
                let Some((lo, hi)) = polar_branch_range(w, r, t0, t0 + theta_cell) else {
                    continue;
                };
                let (r0, r1) = axis_touch(lo, hi, rho_cell);
                out.1 += (r1 - r0 + 3) as u64;
                for row in (r0 - 1)..=(r1 + 1) {
                    for &qi in polar.get(&[row, tc]).map(Vec::as_slice).unwrap_or(&[]) {
                        out.0.push(if flip { (qi, pi, tag) } else { (pi, qi, tag) });
                    }
                }
            }
        }
        out
    });

    let mut emits = Vec::new();
    let mut cells = primal_cells;
    for (e, c) in results {
        emits.extend(e);
        cells += c;
    }
    (emits, cells)
}
