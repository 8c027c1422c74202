//! Approximate incidences between points and planes in space: the direct
//! 3D analogue of the planar point-line scheme.
//!
//! Direction classes rotate every plane normal to within pi/4 of +z, so the
//! vertical distance tracks the true distance within sqrt(2) and the slopes
//! satisfy `a^2 + b^2 <= 1`. A primal grid of cubes `d1` feeds per-cell dual
//! subproblems over `(a, b, -c_local)` with cells `2 d2 x 2 d2 x 2 d1 d2`;
//! dual planes of points probe one vertical cell each way. With
//! `d1 d2 = eps`, pairs at distance `<= eps` are always captured and every
//! candidate stays within `6 eps` vertically.

use crate::error::ParamError;
use crate::exec;
use crate::geom::{self, classes::direction_partition, DirectionNet, Plane3, Point3};
use crate::metrics::RunMetrics;
use crate::pairs::{self, Emit, Mode, Report};
use crate::plan::{plan_deltas, PlanStrategy, ProblemProfile};
use crate::planar::sparse::{axis_key, axis_touch, cell_map, CellMap, PointBuckets3};
use std::time::Instant;

pub fn report(
    points: &[Point3],
    planes: &[Plane3],
    eps: f64,
    mode: Mode,
) -> Result<Report, ParamError> {
    let started = Instant::now();
    geom::validate_eps(eps, 0.5)?;
    geom::validate_points_3d(points)?;
    for (i, pl) in planes.iter().enumerate() {
        if !pl.is_finite() {
            return Err(ParamError::NonFinite { index: i });
        }
    }
    let mut metrics = RunMetrics::default();
    let mut emits: Vec<Emit> = Vec::new();
    if points.is_empty() || planes.is_empty() {
        return Ok(Report::default());
    }

    let net = DirectionNet::thirteen();
    let target = geom::p3(0.0, 0.0, 1.0);
    let classes = direction_partition(
        &net,
        target,
        planes,
        |pl| pl.normal(),
        |rot, pl| rot.apply_plane(pl),
    );
    for (ci, class) in classes.into_iter().enumerate() {
        let tag_base = (ci as u64) << 56;
        let rot_pts: Vec<[f64; 3]> = points
            .iter()
            .map(|&p| {
                let q = class.rotation.apply(p);
                [q.x, q.y, q.z]
            })
            .collect();
        let pt_ids: Vec<u32> = (0..points.len() as u32).collect();
        let mut coeffs: Vec<(f64, f64, f64)> = Vec::with_capacity(class.members.len());
        let mut plane_ids: Vec<u32> = Vec::with_capacity(class.members.len());
        for (id, pl) in &class.members {
            debug_assert!(pl.a * pl.a + pl.b * pl.b <= 1.0 + 1e-9);
            coeffs.push((pl.a, pl.b, pl.c));
            plane_ids.push(*id);
        }

        let plan = plan_deltas(points.len(), coeffs.len(), eps, ProblemProfile::PointPlane3)?;
        let (e, cells) = match plan.strategy {
            PlanStrategy::Empty => continue,
            PlanStrategy::PrimalDual => {
                if !plan.swapped {
                    primal_dual(
                        &rot_pts, &pt_ids, &coeffs, &plane_ids, plan.d1, plan.d2, false, tag_base,
                    )
                } else {
                    let (dp, dl) = dualize(&rot_pts, &coeffs);
                    primal_dual(
                        &dp, &plane_ids, &dl, &pt_ids, plan.d1, plan.d2, true, tag_base,
                    )
                }
            }
            PlanStrategy::PrimalOnly => single_grid(
                &rot_pts, &pt_ids, &coeffs, &plane_ids, plan.d1, eps, false, tag_base,
            ),
            PlanStrategy::DualOnly => {
                let (dp, dl) = dualize(&rot_pts, &coeffs);
                single_grid(&dp, &plane_ids, &dl, &pt_ids, plan.d2, eps, true, tag_base)
            }
        };
        emits.extend(e);
        metrics.cells_visited += cells;
    }
    metrics.elapsed = started.elapsed();
    let dist = |p: u32, o: u32| geom::dist_point_plane_3d(points[p as usize], &planes[o as usize]);
    Ok(pairs::finalize(emits, eps, mode, metrics, dist))
}

/// Vertical-distance-preserving duality for the role-swapped runs:
/// plane `z = a x + b y + c` -> point `(a, b, -c)`, point `(x, y, z)` ->
/// plane `Z = x A + y B - z`.
fn dualize(pts: &[[f64; 3]], planes: &[(f64, f64, f64)]) -> (Vec<[f64; 3]>, Vec<(f64, f64, f64)>) {
    let dp = planes.iter().map(|&(a, b, c)| [a, b, -c]).collect();
    let dl = pts.iter().map(|&[x, y, z]| (x, y, -z)).collect();
    (dp, dl)
}

#[allow(clippy::too_many_arguments)]
fn primal_dual(
    pts: &[[f64; 3]],
    pt_ids: &[u32],
    planes: &[(f64, f64, f64)],
    plane_ids: &[u32],
    d1: f64,
    d2: f64,
    flip: bool,
    tag_base: u64,
) -> (Vec<Emit>, u64) {
    let indexed: Vec<(u32, [f64; 3])> = pts
        .iter()
        .enumerate()
        .map(|(i, &p)| (i as u32, p))
        .collect();
    let buckets = PointBuckets3::build(&indexed, [d1, d1, d1]);

    let mut subs: CellMap<[i64; 3], Vec<u32>> = cell_map();
    let mut primal_cells = 0u64;
    for (li, &(a, b, c)) in planes.iter().enumerate() {
        for cx in buckets.lo[0]..=buckets.hi[0] {
            let x0 = cx as f64 * d1;
            for cy in buckets.lo[1]..=buckets.hi[1] {
                let y0 = cy as f64 * d1;
                let (mut zl, mut zh) = (f64::INFINITY, f64::NEG_INFINITY);
                for (x, y) in [(x0, y0), (x0 + d1, y0), (x0, y0 + d1), (x0 + d1, y0 + d1)] {
                    let z = a * x + b * y + c;
                    zl = zl.min(z);
                    zh = zh.max(z);
                }
                let (r0, r1) = axis_touch(zl, zh, d1);
                primal_cells += (r1 - r0 + 1) as u64;
                for cz in r0..=r1 {
                    subs.entry([cx, cy, cz]).or_default().push(li as u32);
                }
            }
        }
    }
    let mut sub_list: Vec<([i64; 3], Vec<u32>)> = subs.into_iter().collect();
    sub_list.sort_unstable_by_key(|(c, _)| *c);

    let dual_cell = [2.0 * d2, 2.0 * d2, 2.0 * d1 * d2];
    let results = exec::map_range(sub_list.len(), |si| {
        let (cell, plane_idxs) = &sub_list[si];
        let tag = tag_base | si as u64;
        let mut out = (Vec::new(), 0u64);
        let mut pts_here: Vec<u32> = Vec::new();
        for dz in -1..=1 {
            pts_here.extend_from_slice(buckets.get([cell[0], cell[1], cell[2] + dz]));
        }
        if pts_here.is_empty() {
            return out;
        }
        let o = [
            (cell[0] as f64 + 0.5) * d1,
            (cell[1] as f64 + 0.5) * d1,
            (cell[2] as f64 + 0.5) * d1,
        ];
        let mut dual: CellMap<[i64; 3], Vec<u32>> = cell_map();
        let mut lo = [i64::MAX; 2];
        let mut hi = [i64::MIN; 2];
        for &li in plane_idxs {
            let (a, b, c) = planes[li as usize];
            let c_loc = a * o[0] + b * o[1] + c - o[2];
            let key = [
                axis_key(a, dual_cell[0]),
                axis_key(b, dual_cell[1]),
                axis_key(-c_loc, dual_cell[2]),
            ];
            for ax in 0..2 {
                lo[ax] = lo[ax].min(key[ax]);
                hi[ax] = hi[ax].max(key[ax]);
            }
            dual.entry(key).or_default().push(li);
        }
        // Sweep the full dual rectangle per dual plane, not just occupied
        // columns, so the probe counter matches the two-stage work model.
        let mut columns: Vec<[i64; 2]> = Vec::new();
        for ka in lo[0]..=hi[0] {
            for kb in lo[1]..=hi[1] {
                columns.push([ka, kb]);
            }
        }
        for &pi in &pts_here {
            let [px, py, pz] = pts[pi as usize];
            let (sa, sb) = (px - o[0], py - o[1]);
            let icept = -(pz - o[2]);
            for &[ka, kb] in &columns {
                let a0 = ka as f64 * dual_cell[0];
                let b0 = kb as f64 * dual_cell[1];
                let (mut zl, mut zh) = (f64::INFINITY, f64::NEG_INFINITY);
                for (a, b) in [
                    (a0, b0),
                    (a0 + dual_cell[0], b0),
                    (a0, b0 + dual_cell[1]),
                    (a0 + dual_cell[0], b0 + dual_cell[1]),
                ] {
                    let z = sa * a + sb * b + icept;
                    zl = zl.min(z);
                    zh = zh.max(z);
                }
                let (r0, r1) = axis_touch(zl, zh, dual_cell[2]);
                out.1 += (r1 - r0 + 3) as u64;
                for rz in (r0 - 1)..=(r1 + 1) {
                    for &li in dual.get(&[ka, kb, rz]).map(Vec::as_slice).unwrap_or(&[]) {
                        let (p, o_) = (pt_ids[pi as usize], plane_ids[li as usize]);
                        out.0.push(if flip { (o_, p, tag) } else { (p, o_, tag) });
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

/// One-grid fallback; also the engine behind the dualized naive baseline.
#[allow(clippy::too_many_arguments)]
pub(crate) fn single_grid(
    pts: &[[f64; 3]],
    pt_ids: &[u32],
    planes: &[(f64, f64, f64)],
    plane_ids: &[u32],
    cell: f64,
    eps: f64,
    flip: bool,
    tag_base: u64,
) -> (Vec<Emit>, u64) {
    let indexed: Vec<(u32, [f64; 3])> = pts
        .iter()
        .enumerate()
        .map(|(i, &p)| (i as u32, p))
        .collect();
    let buckets = PointBuckets3::build(&indexed, [cell, cell, cell]);
    let k = ((std::f64::consts::SQRT_2 * eps) / cell).ceil() as i64;
    let results = exec::map_range(planes.len(), |li| {
        let (a, b, c) = planes[li];
        let mut out = (Vec::new(), 0u64);
        for cx in buckets.lo[0]..=buckets.hi[0] {
            let x0 = cx as f64 * cell;
            for cy in buckets.lo[1]..=buckets.hi[1] {
                let y0 = cy as f64 * cell;
                let (mut zl, mut zh) = (f64::INFINITY, f64::NEG_INFINITY);
                for (x, y) in [
                    (x0, y0),
                    (x0 + cell, y0),
                    (x0, y0 + cell),
                    (x0 + cell, y0 + cell),
                ] {
                    let z = a * x + b * y + c;
                    zl = zl.min(z);
                    zh = zh.max(z);
                }
                let (r0, r1) = axis_touch(zl, zh, cell);
                out.1 += (r1 - r0 + 1) as u64 + 2 * k as u64;
                for cz in (r0 - k)..=(r1 + k) {
                    for &pi in buckets.get([cx, cy, cz]) {
                        let (p, o) = (pt_ids[pi as usize], plane_ids[li]);
                        out.0.push(if flip {
                            (o, p, tag_base)
                        } else {
                            (p, o, tag_base)
                        });
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
