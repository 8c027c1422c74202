//! Approximate incidences between points and circles of arbitrary radii in
//! a declared band `[r_lo, r_hi]`.
//!
//! Varying radii break the plain center duality, so the dual stage works
//! with the power of a point, `pow(p, c) = |pq|^2 - r^2`, which tracks the
//! distance within a factor of `[2 r_lo, 3 r_hi]` for near pairs. Lifting
//! to the paraboloid turns circles into planes whose vertical distance to a
//! lifted point is exactly `|pow|`; shearing by the lifted image of the
//! cell center keeps all coordinates cell-sized. Each primal cell then runs
//! a 3D grid over `(q - o, pow(o, c))` with vertical cells of `3 r_hi eps`,
//! which captures every `|pow| <= 3 r_hi eps` pair, a superset of the true
//! eps-pairs.

use crate::error::ParamError;
use crate::exec;
use crate::geom::{self, Circle2, Point2};
use crate::metrics::RunMetrics;
use crate::pairs::{self, Emit, Mode, Report};
use crate::plan::{plan_deltas, PlanStrategy, ProblemProfile};
use crate::planar::sparse::{
    axis_key, axis_touch, cell_map, circle_touch_spans, CellMap, PointBuckets2,
};
use std::time::Instant;

pub fn report(
    points: &[Point2],
    circles: &[Circle2],
    eps: f64,
    r_lo: f64,
    r_hi: f64,
    mode: Mode,
) -> Result<Report, ParamError> {
    let started = Instant::now();
    geom::validate_eps(eps, 0.5)?;
    if !(eps <= r_lo && r_lo <= 0.5 && 0.5 <= r_hi && r_hi.is_finite()) {
        return Err(ParamError::RadiusBand { lo: r_lo, hi: r_hi });
    }
    geom::validate_points_2d(points)?;
    for (i, c) in circles.iter().enumerate() {
        if !(c.center.is_finite() && c.r.is_finite()) {
            return Err(ParamError::NonFinite { index: i });
        }
        if c.r < r_lo - 1e-12 || c.r > r_hi + 1e-12 {
            return Err(ParamError::RadiusOutsideBand {
                index: i,
                found: c.r,
                lo: r_lo,
                hi: r_hi,
            });
        }
    }
    if points.is_empty() || circles.is_empty() {
        return Ok(Report::default());
    }

    let plan = plan_deltas(
        points.len(),
        circles.len(),
        eps,
        ProblemProfile::CirclePower { r_lo },
    )?;
    let (emits, cells) = match plan.strategy {
        PlanStrategy::PrimalOnly => probe_only(points, circles, eps),
        PlanStrategy::DualOnly => {
            // Primal cells would swallow whole circles: one lifted
            // subproblem over the full data.
            let all_pts: Vec<u32> = (0..points.len() as u32).collect();
            let all_circ: Vec<u32> = (0..circles.len() as u32).collect();
            lifted_subproblem(
                points,
                circles,
                &all_pts,
                &all_circ,
                Point2::default(),
                eps,
                r_hi,
                plan.d2,
                0,
            )
        }
        PlanStrategy::PrimalDual => two_stage(points, circles, eps, r_hi, plan.d1, plan.d2),
        PlanStrategy::Empty => unreachable!(),
    };
    let mut metrics = RunMetrics::default();
    metrics.cells_visited = cells;
    metrics.elapsed = started.elapsed();
    let dist =
        |pi: u32, ci: u32| geom::dist_point_circle_2d(points[pi as usize], &circles[ci as usize]);
    Ok(pairs::finalize(emits, eps, mode, metrics, dist))
}

/// Naive layout for the circle-scarce regime: eps-grid over the points,
/// each circle probes the cells it crosses plus their 8-neighborhoods.
fn probe_only(points: &[Point2], circles: &[Circle2], eps: f64) -> (Vec<Emit>, u64) {
    let indexed: Vec<(u32, [f64; 2])> = points
        .iter()
        .enumerate()
        .map(|(i, p)| (i as u32, [p.x, p.y]))
        .collect();
    let buckets = PointBuckets2::build(&indexed, [eps, eps]);
    let results = exec::map_range(circles.len(), |ci| {
        let c = circles[ci];
        let mut probed: Vec<[i64; 2]> = Vec::new();
        for (col, r0, r1) in circle_touch_spans(
            [c.center.x, c.center.y],
            c.r,
            eps,
            buckets.col_lo - 1,
            buckets.col_hi + 1,
        ) {
            for row in r0..=r1 {
                for dx in -1..=1 {
                    for dy in -1..=1 {
                        probed.push([col + dx, row + dy]);
                    }
                }
            }
        }
        probed.sort_unstable();
        probed.dedup();
        let mut emits: Vec<Emit> = Vec::new();
        for key in &probed {
            for &pi in buckets.get(*key) {
                emits.push((pi, ci as u32, 0));
            }
        }
        (emits, probed.len() as u64)
    });
    collect(results)
}

/// Two-stage scheme: primal grid of cell `d1`, circles registered with the
/// cells they cross, and each occupied cell solved by the lifted dual.
fn two_stage(
    points: &[Point2],
    circles: &[Circle2],
    eps: f64,
    r_hi: f64,
    d1: f64,
    d2: f64,
) -> (Vec<Emit>, u64) {
    let indexed: Vec<(u32, [f64; 2])> = points
        .iter()
        .enumerate()
        .map(|(i, p)| (i as u32, [p.x, p.y]))
        .collect();
    let buckets = PointBuckets2::build(&indexed, [d1, d1]);
    let mut subs: CellMap<[i64; 2], Vec<u32>> = cell_map();
    let mut primal_cells = 0u64;
    for (ci, c) in circles.iter().enumerate() {
        for (col, r0, r1) in circle_touch_spans(
            [c.center.x, c.center.y],
            c.r,
            d1,
            buckets.col_lo - 1,
            buckets.col_hi + 1,
        ) {
            primal_cells += (r1 - r0 + 1) as u64;
            for row in r0..=r1 {
                subs.entry([col, row]).or_default().push(ci as u32);
            }
        }
    }
    let mut sub_list: Vec<([i64; 2], Vec<u32>)> = subs.into_iter().collect();
    sub_list.sort_unstable_by_key(|(c, _)| *c);

    let results = exec::map_range(sub_list.len(), |si| {
        let (cell, circ_idxs) = &sub_list[si];
        let mut pts_here: Vec<u32> = Vec::new();
        for dx in -1..=1 {
            for dy in -1..=1 {
                pts_here.extend_from_slice(buckets.get([cell[0] + dx, cell[1] + dy]));
            }
        }
        if pts_here.is_empty() {
            return (Vec::new(), 0);
        }
        let o = Point2 {
            x: (cell[0] as f64 + 0.5) * d1,
            y: (cell[1] as f64 + 0.5) * d1,
        };
        lifted_subproblem(
            points, circles, &pts_here, circ_idxs, o, eps, r_hi, d2, si as u64,
        )
    });
    let (emits, cells) = collect(results);
    (emits, cells + primal_cells)
}

/// One lifted dual subproblem about center `o`: circles become 3D points
/// `(q - o, pow(o, c))`, points become planes `f_p(u) = 2(p-o).u - |p-o|^2`
/// with `pow(p, c) = z'(c) - f_p(u_c)`. A grid with vertical cells of
/// `3 r_hi eps` reports pairs whose plane passes within one cell of the
/// circle's bucket.
#[allow(clippy::too_many_arguments)]
fn lifted_subproblem(
    points: &[Point2],
    circles: &[Circle2],
    pts: &[u32],
    circ: &[u32],
    o: Point2,
    eps: f64,
    r_hi: f64,
    d2: f64,
    tag: u64,
) -> (Vec<Emit>, u64) {
    // Horizontal cells split the dual-point square (side ~ 2 r_hi) into
    // 1/d2 strips; the vertical cell is pinned by the capture bound
    // |pow| <= 3 r_hi eps for every true pair.
    let mut spread: f64 = 0.0;
    for &ci in circ {
        let u = circles[ci as usize].center - o;
        spread = spread.max(u.x.abs()).max(u.y.abs());
    }
    let xy_cell = 2.0 * (r_hi + spread.max(eps)) * d2;
    let z_cell = 3.0 * r_hi * eps;

    let mut bucketsz: CellMap<[i64; 3], Vec<u32>> = cell_map();
    let mut lo = [i64::MAX; 2];
    let mut hi = [i64::MIN; 2];
    for &ci in circ {
        let c = &circles[ci as usize];
        let u = c.center - o;
        let zp = u.norm_sq() - c.r * c.r;
        let key = [
            axis_key(u.x, xy_cell),
            axis_key(u.y, xy_cell),
            axis_key(zp, z_cell),
        ];
        lo[0] = lo[0].min(key[0]);
        hi[0] = hi[0].max(key[0]);
        lo[1] = lo[1].min(key[1]);
        hi[1] = hi[1].max(key[1]);
        bucketsz.entry(key).or_default().push(ci);
    }
    let mut columns: Vec<[i64; 2]> = Vec::new();
    for kx in lo[0]..=hi[0] {
        for ky in lo[1]..=hi[1] {
            columns.push([kx, ky]);
        }
    }

    let mut emits: Vec<Emit> = Vec::new();
    let mut cells = 0u64;
    for &pi in pts {
        let d = points[pi as usize] - o;
        let (sx, sy) = (2.0 * d.x, 2.0 * d.y);
        let icept = -d.norm_sq();
        for &[cx, cy] in &columns {
            let x0 = cx as f64 * xy_cell;
            let y0 = cy as f64 * xy_cell;
            let (mut zl, mut zh) = (f64::INFINITY, f64::NEG_INFINITY);
            for (x, y) in [
                (x0, y0),
                (x0 + xy_cell, y0),
                (x0, y0 + xy_cell),
                (x0 + xy_cell, y0 + xy_cell),
            ] {
                let z = sx * x + sy * y + icept;
                zl = zl.min(z);
                zh = zh.max(z);
            }
            let (r0, r1) = axis_touch(zl, zh, z_cell);
            cells += (r1 - r0 + 3) as u64;
            for rz in (r0 - 1)..=(r1 + 1) {
                for &ci in bucketsz
                    .get(&[cx, cy, rz])
                    .map(Vec::as_slice)
                    .unwrap_or(&[])
                {
                    emits.push((pi, ci, tag));
                }
            }
        }
    }
    (emits, cells)
}

fn collect(results: Vec<(Vec<Emit>, u64)>) -> (Vec<Emit>, u64) {
    let mut emits = Vec::new();
    let mut cells = 0u64;
    for (e, c) in results {
        emits.extend(e);
        cells += c;
    }
    (emits, cells)
}
