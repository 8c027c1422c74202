//! Approximate incidences between points and lines in the plane.
//!
//! Pipeline, per slope class: a coarse primal grid of cells `d1` buckets the
//! points and registers every line with the cells it crosses; each occupied
//! cell then dualizes its local subproblem (point (x, y) -> line
//! `Y = x X - y`, line `y = a x + b` -> point `(a, -b_local)`) and a second
//! grid of `2 d2 x 2 d1 d2` cells over the dual rectangle reports the pairs
//! whose duals land in the same or vertically adjacent cells. Duality
//! preserves vertical distance, so with `d1 d2 = eps` every pair at
//! distance `<= eps` is emitted while every emitted pair stays within
//! `5 eps` vertically.
//!
//! When the sides are lopsided the planner degenerates to a single grid on
//! the cheaper side (primal-only / dual-only), mirroring the naive scheme.

use crate::error::ParamError;
use crate::exec;
use crate::geom::{self, slope_split, Line2, Point2};
use crate::metrics::RunMetrics;
use crate::pairs::{self, BipartiteCover, Emit, Mode, Report};
use crate::plan::{plan_deltas, PlanStrategy, ProblemProfile};
use crate::planar::sparse::{axis_touch, cell_map, CellMap, DualBuckets2, PointBuckets2};
use std::time::Instant;

/// Report point-line pairs at distance `<= eps` (plus bounded-distortion
/// extras in candidate mode).
pub fn report(
    points: &[Point2],
    lines: &[Line2],
    eps: f64,
    mode: Mode,
) -> Result<Report, ParamError> {
    let started = Instant::now();
    let (emits, _, mut metrics) = engine(points, lines, eps, false)?;
    let dist = |p: u32, o: u32| geom::dist_point_line_2d(points[p as usize], &lines[o as usize]);
    metrics.elapsed = started.elapsed();
    Ok(pairs::finalize(emits, eps, mode, metrics, dist))
}

/// Compact output: complete bipartite blocks whose expansion is exactly the
/// candidate multiset of [`report`].
pub fn bipartite_cover(
    points: &[Point2],
    lines: &[Line2],
    eps: f64,
) -> Result<BipartiteCover, ParamError> {
    let started = Instant::now();
    let (_, blocks, mut metrics) = engine(points, lines, eps, true)?;
    let blocks = blocks.unwrap_or_default();
    let mut expanded: Vec<(u32, u32)> = Vec::new();
    for (ps, os) in &blocks {
        for &p in ps {
            for &o in os {
                expanded.push((p, o));
            }
        }
    }
    metrics.candidates_raw = expanded.len() as u64;
    expanded.sort_unstable();
    expanded.dedup();
    metrics.candidates = expanded.len() as u64;
    metrics.elapsed = started.elapsed();
    Ok(BipartiteCover { blocks, metrics })
}

type Block = (Vec<u32>, Vec<u32>);

fn engine(
    points: &[Point2],
    lines: &[Line2],
    eps: f64,
    collect_blocks: bool,
) -> Result<(Vec<Emit>, Option<Vec<Block>>, RunMetrics), ParamError> {
    geom::validate_eps(eps, 0.5)?;
    geom::validate_points_2d(points)?;
    for (i, l) in lines.iter().enumerate() {
        if !l.is_finite() {
            return Err(ParamError::NonFinite { index: i });
        }
    }
    let mut metrics = RunMetrics::default();
    let mut emits = Vec::new();
    let mut blocks = collect_blocks.then(Vec::new);
    if points.is_empty() || lines.is_empty() {
        return Ok((emits, blocks, metrics));
    }

    for (class_idx, class) in slope_split(lines).into_iter().enumerate() {
        if class.lines.is_empty() {
            continue;
        }
        let tag_base = (class_idx as u64) << 56;
        let rot_pts: Vec<[f64; 2]> = points
            .iter()
            .map(|&p| {
                let q = class.rotation.apply(p);
                [q.x, q.y]
            })
            .collect();
        let pt_ids: Vec<u32> = (0..points.len() as u32).collect();
        let mut slants: Vec<(f64, f64)> = Vec::with_capacity(class.lines.len());
        let mut line_ids: Vec<u32> = Vec::with_capacity(class.lines.len());
        for (id, l) in &class.lines {
            match *l {
                Line2::Slant { a, b } => {
                    debug_assert!(a.abs() <= 1.0 + 1e-9);
                    slants.push((a, b));
                    line_ids.push(*id);
                }
                Line2::Vertical { .. } => unreachable!("slope classes remove vertical lines"),
            }
        }

        let plan = plan_deltas(points.len(), slants.len(), eps, ProblemProfile::PointLine2)?;
        let out = match plan.strategy {
            PlanStrategy::Empty => continue,
            PlanStrategy::PrimalDual => {
                if !plan.swapped {
                    primal_dual(
                        &rot_pts,
                        &pt_ids,
                        &slants,
                        &line_ids,
                        plan.d1,
                        plan.d2,
                        false,
                        collect_blocks,
                        tag_base,
                    )
                } else {
                    let (dual_pts, dual_lines) = dualize(&rot_pts, &slants);
                    primal_dual(
                        &dual_pts,
                        &line_ids,
                        &dual_lines,
                        &pt_ids,
                        plan.d1,
                        plan.d2,
                        true,
                        collect_blocks,
                        tag_base,
                    )
                }
            }
            PlanStrategy::PrimalOnly => single_grid(
                &rot_pts,
                &pt_ids,
                &slants,
                &line_ids,
                plan.d1,
                eps,
                false,
                collect_blocks,
                tag_base,
            ),
            PlanStrategy::DualOnly => {
                let (dual_pts, dual_lines) = dualize(&rot_pts, &slants);
                single_grid(
                    &dual_pts,
                    &line_ids,
                    &dual_lines,
                    &pt_ids,
                    plan.d2,
                    eps,
                    true,
                    collect_blocks,
                    tag_base,
                )
            }
        };
        emits.extend(out.0);
        if let (Some(all), Some(cls)) = (blocks.as_mut(), out.1) {
            all.extend(cls);
        }
        metrics.cells_visited += out.2;
    }
    Ok((emits, blocks, metrics))
}

/// Global duality for the role-swapped runs: lines become points
/// `(a, -b)`, points become lines `Y = x X - y`. Vertical distance is
/// preserved, which is all the grid arguments use.
fn dualize(pts: &[[f64; 2]], slants: &[(f64, f64)]) -> (Vec<[f64; 2]>, Vec<(f64, f64)>) {
    let dual_pts = slants.iter().map(|&(a, b)| [a, -b]).collect();
    let dual_lines = pts.iter().map(|&[x, y]| (x, -y)).collect();
    (dual_pts, dual_lines)
}

/// Rows a point may sit away from a cell its line crosses and still form an
/// `eps`-pair: ceil(sqrt(2) eps / cell). The primal-dual plan guarantees 1.
fn capture_rows(eps: f64, cell: f64) -> i64 {
    ((std::f64::consts::SQRT_2 * eps) / cell).ceil() as i64
}

#[allow(clippy::too_many_arguments)]
fn primal_dual(
    pts: &[[f64; 2]],
    pt_ids: &[u32],
    lines: &[(f64, f64)],
    line_ids: &[u32],
    d1: f64,
    d2: f64,
    flip: bool,
    collect_blocks: bool,
    tag_base: u64,
) -> (Vec<Emit>, Option<Vec<Block>>, u64) {
    let indexed: Vec<(u32, [f64; 2])> = pts
        .iter()
        .enumerate()
        .map(|(i, &p)| (i as u32, p))
        .collect();
    let buckets = PointBuckets2::build(&indexed, [d1, d1]);
    // The planner keeps d1 >= sqrt(2) * d1 * d2, so one row each way suffices.
    debug_assert!(d2 <= std::f64::consts::FRAC_1_SQRT_2 + 1e-12);
    let k_rows = 1i64;

    // Register each line with the cells it crosses, over point columns only.
    let mut subs: CellMap<[i64; 2], Vec<u32>> = cell_map();
    let mut primal_cells = 0u64;
    for (li, &(a, b)) in lines.iter().enumerate() {
        for col in buckets.col_lo..=buckets.col_hi {
            let x0 = col as f64 * d1;
            let y0 = a * x0 + b;
            let y1 = a * (x0 + d1) + b;
            let (rl, rh) = axis_touch(y0.min(y1), y0.max(y1), d1);
            primal_cells += (rh - rl + 1) as u64;
            for r in rl..=rh {
                subs.entry([col, r]).or_default().push(li as u32);
            }
        }
    }
    let mut sub_list: Vec<([i64; 2], Vec<u32>)> = subs.into_iter().collect();
    sub_list.sort_unstable_by_key(|(c, _)| *c);

    let results = exec::map_range(sub_list.len(), |si| {
        let (cell, line_idxs) = &sub_list[si];
        let tag = tag_base | si as u64;
        let mut pts_here: Vec<u32> = Vec::new();
        for dy in -k_rows..=k_rows {
            pts_here.extend_from_slice(buckets.get([cell[0], cell[1] + dy]));
        }
        let mut out = (Vec::new(), Vec::new(), 0u64);
        if pts_here.is_empty() {
            return out;
        }
        let ox = (cell[0] as f64 + 0.5) * d1;
        let oy = (cell[1] as f64 + 0.5) * d1;
        let dual_cell = [2.0 * d2, 2.0 * d1 * d2];
        let duals: Vec<(u32, [f64; 2])> = line_idxs
            .iter()
            .map(|&li| {
                let (a, b) = lines[li as usize];
                (li, [a, -(a * ox + b - oy)])
            })
            .collect();
        let dual = DualBuckets2::build(&duals, dual_cell);
        let mut probed: CellMap<[i64; 2], Vec<u32>> = cell_map();
        for &pi in &pts_here {
            let [px, py] = pts[pi as usize];
            let (slope, icept) = (px - ox, -(py - oy));
            for col in dual.col_lo..=dual.col_hi {
                let x0 = col as f64 * dual_cell[0];
                let y0 = slope * x0 + icept;
                let y1 = slope * (x0 + dual_cell[0]) + icept;
                let (rl, rh) = axis_touch(y0.min(y1), y0.max(y1), dual_cell[1]);
                out.2 += (rh - rl + 3) as u64;
                for r in (rl - 1)..=(rh + 1) {
                    let hit = dual.get([col, r]);
                    if hit.is_empty() {
                        continue;
                    }
                    if collect_blocks {
                        probed.entry([col, r]).or_default().push(pi);
                    } else {
                        for &li in hit {
                            let (p, o) = (pt_ids[pi as usize], line_ids[li as usize]);
                            out.0.push(if flip { (o, p, tag) } else { (p, o, tag) });
                        }
                    }
                }
            }
        }
        if collect_blocks {
            let mut cells: Vec<[i64; 2]> = probed.keys().copied().collect();
            cells.sort_unstable();
            for c in cells {
                let ps = &probed[&c];
                let ls = dual.get(c);
                let (side_p, side_o): (Vec<u32>, Vec<u32>) = if flip {
                    (
                        ls.iter().map(|&li| line_ids[li as usize]).collect(),
                        ps.iter().map(|&pi| pt_ids[pi as usize]).collect(),
                    )
                } else {
                    (
                        ps.iter().map(|&pi| pt_ids[pi as usize]).collect(),
                        ls.iter().map(|&li| line_ids[li as usize]).collect(),
                    )
                };
                out.1.push((side_p, side_o));
            }
        }
        out
    });

    let mut emits = Vec::new();
    let mut blocks = collect_blocks.then(Vec::new);
    let mut cells = primal_cells;
    for (e, b, c) in results {
        emits.extend(e);
        if let Some(bl) = blocks.as_mut() {
            bl.extend(b);
        }
        cells += c;
    }
    (emits, blocks, cells)
}

/// Degenerate one-grid layout (the naive scheme): bucket the points at cell
/// size `cell` and pair each line with the points within `capture_rows(eps,
/// cell)` rows of the cells it crosses. Also drives the dualized naive
/// baseline.
#[allow(clippy::too_many_arguments)]
pub(crate) fn single_grid(
    pts: &[[f64; 2]],
    pt_ids: &[u32],
    lines: &[(f64, f64)],
    line_ids: &[u32],
    cell: f64,
    eps: f64,
    flip: bool,
    collect_blocks: bool,
    tag_base: u64,
) -> (Vec<Emit>, Option<Vec<Block>>, u64) {
    let indexed: Vec<(u32, [f64; 2])> = pts
        .iter()
        .enumerate()
        .map(|(i, &p)| (i as u32, p))
        .collect();
    let buckets = PointBuckets2::build(&indexed, [cell, cell]);
    let k = capture_rows(eps, cell).max(1);
    let results = exec::map_range(lines.len(), |li| {
        let (a, b) = lines[li];
        let mut out = (Vec::new(), Vec::new(), 0u64);
        for col in buckets.col_lo..=buckets.col_hi {
            let x0 = col as f64 * cell;
            let y0 = a * x0 + b;
            let y1 = a * (x0 + cell) + b;
            let (rl, rh) = axis_touch(y0.min(y1), y0.max(y1), cell);
            out.2 += (rh - rl + 1) as u64 + 2 * k as u64;
            for r in (rl - k)..=(rh + k) {
                let hit = buckets.get([col, r]);
                if hit.is_empty() {
                    continue;
                }
                if collect_blocks {
                    out.1.push(([col, r], li as u32));
                }
                for &pi in hit {
                    let (p, o) = (pt_ids[pi as usize], line_ids[li]);
                    out.0.push(if flip {
                        (o, p, tag_base)
                    } else {
                        (p, o, tag_base)
                    });
                }
            }
        }
        out
    });
    let mut emits = Vec::new();
    let mut cells = 0u64;
    let mut probed: CellMap<[i64; 2], Vec<u32>> = cell_map();
    for (e, b, c) in results {
        emits.extend(e);
        cells += c;
        for (cellkey, li) in b {
            probed.entry(cellkey).or_default().push(li);
        }
    }
    let blocks = collect_blocks.then(|| {
        let mut keys: Vec<[i64; 2]> = probed.keys().copied().collect();
        keys.sort_unstable();
        let mut out = Vec::new();
        for key in keys {
            let ls = &probed[&key];
            let ps = buckets.get(key);
            if ps.is_empty() {
                continue;
            }
            let (side_p, side_o): (Vec<u32>, Vec<u32>) = if flip {
                (
                    ls.iter().map(|&li| line_ids[li as usize]).collect(),
                    ps.iter().map(|&pi| pt_ids[pi as usize]).collect(),
                )
            } else {
                (
                    ps.iter().map(|&pi| pt_ids[pi as usize]).collect(),
                    ls.iter().map(|&li| line_ids[li as usize]).collect(),
                )
            };
            out.push((side_p, side_o));
        }
        out
    });
    (emits, blocks, cells)
}
