//! Approximate incidences between points and lines in space, via a
//! four-dimensional duality.
//!
//! In a frame where every line makes an angle of at most pi/4 with the
//! x-axis (`y = a x + b`, `z = c x + d`, `a^2 + c^2 <= 1`), the distance
//! from p to the line is tracked within sqrt(2) by the distance to the
//! line's point on p's vertical plane `x = p.x`. A primal grid of cubes
//! `d1` pairs each line-crossed cube with the points in the surrounding
//! 3x3 block of the same x-range; per cube, lines dualize to points
//! `(a, b_loc, c, d_loc)` on a product grid of `2 d2` slope cells and
//! `3 d1 d2` intercept cells, and each point's dual 2-plane
//! `{a xi + b = eta, c xi + d = zeta}` probes one intercept cell each way.
//! With `d1 d2 = eps, d2 <= 1/sqrt(2)` this captures all true pairs while
//! every candidate stays within `8 sqrt(2) eps`.

use crate::error::ParamError;
use crate::exec;
use crate::geom::{self, classes::direction_partition, DirectionNet, Line3, Point3};
use crate::metrics::RunMetrics;
use crate::pairs::{self, Emit, Mode, Report};
use crate::plan::{plan_deltas, PlanStrategy, ProblemProfile};
use crate::planar::sparse::{axis_key, axis_touch, cell_map, CellMap, PointBuckets3};
use std::time::Instant;

pub fn report(
    points: &[Point3],
    lines: &[Line3],
    eps: f64,
    mode: Mode,
) -> Result<Report, ParamError> {
    let started = Instant::now();
    geom::validate_eps(eps, 0.5)?;
    geom::validate_points_3d(points)?;
    for (i, l) in lines.iter().enumerate() {
        if !l.is_finite() {
            return Err(ParamError::NonFinite { index: i });
        }
    }
    if points.is_empty() || lines.is_empty() {
        return Ok(Report::default());
    }

    let net = DirectionNet::thirteen();
    let target = geom::p3(1.0, 0.0, 0.0);
    let classes = direction_partition(&net, target, lines, |l| l.dir(), |rot, l| rot.apply_line(l));
    let mut metrics = RunMetrics::default();
    let mut emits: Vec<Emit> = Vec::new();
    for (ci, class) in classes.into_iter().enumerate() {
        let rot_pts: Vec<(u32, Point3)> = points
            .iter()
            .enumerate()
            .map(|(i, &p)| (i as u32, class.rotation.apply(p)))
            .collect();
        let (e, cells) = engine_normalized(&rot_pts, &class.members, eps, (ci as u64) << 56)?;
        emits.extend(e);
        metrics.cells_visited += cells;
    }
    metrics.elapsed = started.elapsed();
    let dist = |p: u32, o: u32| geom::dist_point_line_3d(points[p as usize], &lines[o as usize]);
    Ok(pairs::finalize(emits, eps, mode, metrics, dist))
}

/// Engine for inputs already in a legal frame (`a^2 + c^2 <= 1`); also the
/// per-slab workhorse of the congruent-circles algorithm.
pub(crate) fn engine_normalized(
    points: &[(u32, Point3)],
    lines: &[(u32, Line3)],
    eps: f64,
    tag_base: u64,
) -> Result<(Vec<Emit>, u64), ParamError> {
    if points.is_empty() || lines.is_empty() {
        return Ok((Vec::new(), 0));
    }
    let plan = plan_deltas(points.len(), lines.len(), eps, ProblemProfile::PointLine3)?;
    Ok(match plan.strategy {
        PlanStrategy::Empty => (Vec::new(), 0),
        PlanStrategy::PrimalDual => primal_dual(points, lines, eps, plan.d1, plan.d2, tag_base),
        PlanStrategy::PrimalOnly => single_grid(points, lines, eps, plan.d1, tag_base),
        PlanStrategy::DualOnly => dual_only(points, lines, eps, plan.d2, tag_base),
    })
}

fn primal_dual(
    points: &[(u32, Point3)],
    lines: &[(u32, Line3)],
    eps: f64,
    d1: f64,
    d2: f64,
    tag_base: u64,
) -> (Vec<Emit>, u64) {
    debug_assert!((d1 * d2 - eps).abs() <= 1e-12 * eps.max(1.0));
    let indexed: Vec<(u32, [f64; 3])> = points
        .iter()
        .enumerate()
        .map(|(i, &(_, p))| (i as u32, [p.x, p.y, p.z]))
        .collect();
    let buckets = PointBuckets3::build(&indexed, [d1, d1, d1]);

    // Register lines with the cubes they cross, over point x-slabs only.
    let mut subs: CellMap<[i64; 3], Vec<u32>> = cell_map();
    let mut primal_cells = 0u64;
    for (li, &(_, l)) in lines.iter().enumerate() {
        for sx in buckets.lo[0]..=buckets.hi[0] {
            let x0 = sx as f64 * d1;
            let pa = l.point_at(x0);
            let pb = l.point_at(x0 + d1);
            let (y0, y1) = axis_touch(pa.y.min(pb.y), pa.y.max(pb.y), d1);
            let (z0, z1) = axis_touch(pa.z.min(pb.z), pa.z.max(pb.z), d1);
            for cy in y0..=y1 {
                for cz in z0..=z1 {
                    if segment_meets_cell((pa.y, pa.z), (pb.y, pb.z), cy, cz, d1) {
                        primal_cells += 1;
                        subs.entry([sx, cy, cz]).or_default().push(li as u32);
                    }
                }
            }
        }
    }
    let mut sub_list: Vec<([i64; 3], Vec<u32>)> = subs.into_iter().collect();
    sub_list.sort_unstable_by_key(|(c, _)| *c);

    let slope_cell = 2.0 * d2;
    let icept_cell = 3.0 * d1 * d2;
    let results = exec::map_range(sub_list.len(), |si| {
        let (cell, line_idxs) = &sub_list[si];
        let tag = tag_base | si as u64;
        let mut out = (Vec::new(), 0u64);
        let mut pts_here: Vec<u32> = Vec::new();
        for dy in -1..=1 {
            for dz in -1..=1 {
                pts_here.extend_from_slice(buckets.get([cell[0], cell[1] + dy, cell[2] + dz]));
            }
        }
        if pts_here.is_empty() {
            return out;
        }
        let corner = [
            cell[0] as f64 * d1,
            cell[1] as f64 * d1,
            cell[2] as f64 * d1,
        ];
        let mut dual: CellMap<[i64; 4], Vec<u32>> = cell_map();
        let mut lo = [i64::MAX; 2];
        let mut hi = [i64::MIN; 2];
        for &li in line_idxs {
            let l = lines[li as usize].1;
            let b_loc = l.a * corner[0] + l.b - corner[1];
            let d_loc = l.c * corner[0] + l.d - corner[2];
            let key = [
                axis_key(l.a, slope_cell),
                axis_key(l.c, slope_cell),
                axis_key(b_loc, icept_cell),
                axis_key(d_loc, icept_cell),
            ];
            lo[0] = lo[0].min(key[0]);
            hi[0] = hi[0].max(key[0]);
            lo[1] = lo[1].min(key[1]);
            hi[1] = hi[1].max(key[1]);
            dual.entry(key).or_default().push(li);
        }
        // Full slope-cell sweep per dual 2-plane: the O(1/d2^2) work model.
        let mut slope_cells: Vec<[i64; 2]> = Vec::new();
        for ka in lo[0]..=hi[0] {
            for kc in lo[1]..=hi[1] {
                slope_cells.push([ka, kc]);
            }
        }
        for &pi in &pts_here {
            let p = points[pi as usize].1;
            let (xi, eta, zeta) = (p.x - corner[0], p.y - corner[1], p.z - corner[2]);
            for &[ka, kc] in &slope_cells {
                let a0 = ka as f64 * slope_cell;
                let a1 = a0 + slope_cell;
                let (b0, b1) = (eta - a0 * xi, eta - a1 * xi);
                let (bl, bh) = axis_touch(b0.min(b1), b0.max(b1), icept_cell);
                let c0 = kc as f64 * slope_cell;
                let c1 = c0 + slope_cell;
                let (dd0, dd1) = (zeta - c0 * xi, zeta - c1 * xi);
                let (dl, dh) = axis_touch(dd0.min(dd1), dd0.max(dd1), icept_cell);
                out.1 += ((bh - bl + 3) * (dh - dl + 3)) as u64;
                for kb in (bl - 1)..=(bh + 1) {
                    for kd in (dl - 1)..=(dh + 1) {
                        for &li in dual
                            .get(&[ka, kc, kb, kd])
                            .map(Vec::as_slice)
                            .unwrap_or(&[])
                        {
                            out.0
                                .push((points[pi as usize].0, lines[li as usize].0, tag));
                        }
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

fn segment_meets_cell(a: (f64, f64), b: (f64, f64), cy: i64, cz: i64, cell: f64) -> bool {
    let (mut t0, mut t1) = (0.0f64, 1.0f64);
    let d = (b.0 - a.0, b.1 - a.1);
    for (p, q) in [
        (-d.0, a.0 - cy as f64 * cell),
        (d.0, (cy + 1) as f64 * cell - a.0),
        (-d.1, a.1 - cz as f64 * cell),
        (d.1, (cz + 1) as f64 * cell - a.1),
    ] {
        if p.abs() < 1e-300 {
            if q < 0.0 {
                return false;
            }
            continue;
        }
        let r = q / p;
        if p < 0.0 {
            t0 = t0.max(r);
        } else {
            t1 = t1.min(r);
        }
    }
    t0 <= t1
}

/// Primal-only fallback: cubes of side eps; each line pairs with the points
/// within two cells of its crossings in the same x-slab.
fn single_grid(
    points: &[(u32, Point3)],
    lines: &[(u32, Line3)],
    eps: f64,
    cell: f64,
    tag_base: u64,
) -> (Vec<Emit>, u64) {
    let indexed: Vec<(u32, [f64; 3])> = points
        .iter()
        .enumerate()
        .map(|(i, &(_, p))| (i as u32, [p.x, p.y, p.z]))
        .collect();
    let buckets = PointBuckets3::build(&indexed, [cell, cell, cell]);
    let k = ((std::f64::consts::SQRT_2 * eps) / cell).ceil() as i64;
    let results = exec::map_range(lines.len(), |li| {
        let l = lines[li].1;
        let mut out = (Vec::new(), 0u64);
        for sx in buckets.lo[0]..=buckets.hi[0] {
            let x0 = sx as f64 * cell;
            let pa = l.point_at(x0);
            let pb = l.point_at(x0 + cell);
            let (y0, y1) = axis_touch(pa.y.min(pb.y), pa.y.max(pb.y), cell);
            let (z0, z1) = axis_touch(pa.z.min(pb.z), pa.z.max(pb.z), cell);
            out.1 += ((y1 - y0 + 1 + 2 * k) * (z1 - z0 + 1 + 2 * k)) as u64;
            for cy in (y0 - k)..=(y1 + k) {
                for cz in (z0 - k)..=(z1 + k) {
                    for &pi in buckets.get([sx, cy, cz]) {
                        out.0.push((points[pi as usize].0, lines[li].0, tag_base));
                    }
                }
            }
        }
        out
    });
    let mut emits = Vec::new();
    let mut cells = 0u64;
    for (e, c) in results {
        emits.extend(e);
        cells += c;
    }
    (emits, cells)
}

/// Dual-only fallback: one 4D grid over all dual line points, probed by
/// every point's dual 2-plane.
fn dual_only(
    points: &[(u32, Point3)],
    lines: &[(u32, Line3)],
    eps: f64,
    d2: f64,
    tag_base: u64,
) -> (Vec<Emit>, u64) {
    debug_assert!((d2 - eps).abs() <= 1e-12 * eps.max(1.0));
    let slope_cell = 2.0 * d2;
    let icept_cell = 3.0 * d2; // no primal cube: intercept spreads are O(1) here
    let mut dual: CellMap<[i64; 4], Vec<u32>> = cell_map();
    let mut lo = [i64::MAX; 2];
    let mut hi = [i64::MIN; 2];
    for (li, &(_, l)) in lines.iter().enumerate() {
        let key = [
            axis_key(l.a, slope_cell),
            axis_key(l.c, slope_cell),
            axis_key(l.b, icept_cell),
            axis_key(l.d, icept_cell),
        ];
        lo[0] = lo[0].min(key[0]);
        hi[0] = hi[0].max(key[0]);
        lo[1] = lo[1].min(key[1]);
        hi[1] = hi[1].max(key[1]);
        dual.entry(key).or_default().push(li as u32);
    }
    let mut slope_cells: Vec<[i64; 2]> = Vec::new();
    for ka in lo[0]..=hi[0] {
        for kc in lo[1]..=hi[1] {
            slope_cells.push([ka, kc]);
        }
    }
    let results = exec::map_range(points.len(), |pi| {
        let p = points[pi].1;
        let mut out = (Vec::new(), 0u64);
        for &[ka, kc] in &slope_cells {
            let a0 = ka as f64 * slope_cell;
            let a1 = a0 + slope_cell;
            let (b0, b1) = (p.y - a0 * p.x, p.y - a1 * p.x);
            let (bl, bh) = axis_touch(b0.min(b1), b0.max(b1), icept_cell);
            let c0 = kc as f64 * slope_cell;
            let c1 = c0 + slope_cell;
            let (dd0, dd1) = (p.z - c0 * p.x, p.z - c1 * p.x);
            let (dl, dh) = axis_touch(dd0.min(dd1), dd0.max(dd1), icept_cell);
            out.1 += ((bh - bl + 3) * (dh - dl + 3)) as u64;
            for kb in (bl - 1)..=(bh + 1) {
                for kd in (dl - 1)..=(dh + 1) {
                    for &li in dual
                        .get(&[ka, kc, kb, kd])
                        .map(Vec::as_slice)
                        .unwrap_or(&[])
                    {
                        out.0.push((points[pi].0, lines[li as usize].0, tag_base));
                    }
                }
            }
        }
        out
    });
    let mut emits = Vec::new();
    let mut cells = 0u64;
    for (e, c) in results {
        emits.extend(e);
        cells += c;
    }
    (emits, cells)
}
