//! The naive one-grid baselines and the exhaustive brute-force oracles that
//! serve as ground truth in every acceptance test.
//!
//! The naive scheme buckets the points on a grid of cell size eps and, for
//! each object, inspects the cells the object crosses plus all their
//! neighbors. The duality variant plays the same game on the dualized
//! instance when the object side is the larger one. Oracles run exact
//! distance scans with independently coded distance routines and refuse
//! workloads past a fixed budget.

use crate::error::{BudgetError, ParamError};
use crate::exec;
use crate::geom::{
    self, Circle2, Circle3, Line2, Line3, Object2, Object3, Plane3, Point2, Point3, Sphere3,
};
use crate::grid::{self, UniformGrid};
use crate::metrics::RunMetrics;
use crate::pairs::{self, Emit, Mode, Report};
use std::time::Instant;

pub const PAIR_BUDGET: u128 = 10_000_000;
pub const TRIPLE_BUDGET: u128 = 30_000_000;

#[derive(Debug, Clone, Default)]
pub struct OracleResult {
    /// Sorted (point index, object index) pairs at distance <= threshold.
    pub pairs: Vec<(u32, u32)>,
    pub count: u64,
    pub elapsed: std::time::Duration,
}

// Deliberately independent reformulations of the distance functions; the
// oracles must not share a code path with the library geometry they check.
pub fn oracle_dist_2d(p: Point2, o: &Object2) -> f64 {
    match o {
        Object2::Line(l) => {
            let (p0, p1) = l.two_points();
            let d = p1 - p0;
            (p - p0).cross(d).abs() / d.norm()
        }
        Object2::Circle(c) => {
            let dx = p.x - c.center.x;
            let dy = p.y - c.center.y;
            (dx.hypot(dy) - c.r).abs()
        }
    }
}

pub fn oracle_dist_3d(p: Point3, o: &Object3) -> f64 {
    match o {
        Object3::Plane(pl) => {
            let n = pl.normal();
            let p0 = geom::p3(0.0, 0.0, pl.c);
            ((p - p0).dot(n) / n.norm()).abs()
        }
        Object3::Line(l) => {
            let q0 = l.point_at(0.0);
            let dir = l.dir();
            let t = (p - q0).dot(dir) / dir.norm_sq();
            (p - q0 - dir * t).norm()
        }
        Object3::Sphere(s) => {
            let w = p - s.center;
            (w.x.hypot(w.y).hypot(w.z) - s.r).abs()
        }
        Object3::Circle(c) => {
            let w = p - c.center;
            let axial = w.dot(c.axis);
            let in_plane = w - c.axis * axial;
            let len = in_plane.norm();
            if len < 1e-300 {
                (c.r * c.r + axial * axial).sqrt()
            } else {
                let nearest = c.center + in_plane * (c.r / len);
                (p - nearest).norm()
            }
        }
    }
}

pub fn brute_pairs_2d(
    points: &[Point2],
    objects: &[Object2],
    threshold: f64,
) -> Result<OracleResult, BudgetError> {
    let work = points.len() as u128 * objects.len() as u128;
    if work > PAIR_BUDGET {
        return Err(BudgetError {
            work,
            budget: PAIR_BUDGET,
        });
    }
    let started = Instant::now();
    let mut out = Vec::new();
    for (pi, &p) in points.iter().enumerate() {
        for (oi, o) in objects.iter().enumerate() {
            if oracle_dist_2d(p, o) <= threshold {
                out.push((pi as u32, oi as u32));
            }
        }
    }
    Ok(OracleResult {
        count: out.len() as u64,
        pairs: out,
        elapsed: started.elapsed(),
    })
}

pub fn brute_pairs_3d(
    points: &[Point3],
    objects: &[Object3],
    threshold: f64,
) -> Result<OracleResult, BudgetError> {
    let work = points.len() as u128 * objects.len() as u128;
    if work > PAIR_BUDGET {
        return Err(BudgetError {
            work,
            budget: PAIR_BUDGET,
        });
    }
    let started = Instant::now();
    let mut out = Vec::new();
    for (pi, &p) in points.iter().enumerate() {
        for (oi, o) in objects.iter().enumerate() {
            if oracle_dist_3d(p, o) <= threshold {
                out.push((pi as u32, oi as u32));
            }
        }
    }
    Ok(OracleResult {
        count: out.len() as u64,
        pairs: out,
        elapsed: started.elapsed(),
    })
}

#[derive(Debug, Clone, Default)]
pub struct OracleTriples {
    /// Ordered triples (p, q, o): |pq| ~ u, |po| ~ v, |qo| ~ w.
    pub triples: Vec<(u32, u32, u32)>,
    pub count: u64,
    pub elapsed: std::time::Duration,
}

pub fn brute_triples(
    points: &[Point3],
    u: f64,
    v: f64,
    w: f64,
    eps: f64,
) -> Result<OracleTriples, BudgetError> {
    let n = points.len() as u128;
    if n * n * n > TRIPLE_BUDGET {
        return Err(BudgetError {
            work: n * n * n,
            budget: TRIPLE_BUDGET,
        });
    }
    let started = Instant::now();
    let n = points.len();
    let mut dist = vec![0.0f64; n * n];
    for i in 0..n {
        for j in 0..n {
            dist[i * n + j] = (points[i] - points[j]).norm();
        }
    }
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || (dist[i * n + j] - u).abs() > eps {
                continue;
            }
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                if (dist[i * n + k] - v).abs() <= eps && (dist[j * n + k] - w).abs() <= eps {
                    out.push((i as u32, j as u32, k as u32));
                }
            }
        }
    }
    Ok(OracleTriples {
        count: out.len() as u64,
        triples: out,
        elapsed: started.elapsed(),
    })
}

/// Per-column runs of the probe set (crossed cells plus the one-ring
/// neighborhood), merged exactly. Keeps the probe-cell counter faithful to
/// the naive scheme without materializing millions of keys.
fn probe_runs(
    mut crossed: Vec<([i64; 2], i64)>, // (column key, row); 2D columns use [col, 0]
    col_spread: i64,                   // 0 in 2D, 1 in 3D
) -> Vec<([i64; 2], Vec<(i64, i64)>)> {
    crossed.sort_unstable();
    crossed.dedup();
    // Group the crossed cells into per-column row runs.
    let mut runs: Vec<([i64; 2], i64, i64)> = Vec::new();
    for (col, row) in crossed {
        match runs.last_mut() {
            Some((c, _, hi)) if *c == col && row == *hi + 1 => *hi = row,
            _ => runs.push((col, row, row)),
        }
    }
    // Expand by one cell in every direction and merge per target column.
    let mut targets: crate::planar::sparse::CellMap<[i64; 2], Vec<(i64, i64)>> =
        crate::planar::sparse::cell_map();
    for (col, lo, hi) in runs {
        for dx in -1..=1 {
            for dy in -col_spread..=col_spread {
                targets
                    .entry([col[0] + dx, col[1] + dy])
                    .or_default()
                    .push((lo - 1, hi + 1));
            }
        }
    }
    let mut out: Vec<([i64; 2], Vec<(i64, i64)>)> = Vec::with_capacity(targets.len());
    for (col, mut ivals) in targets {
        ivals.sort_unstable();
        let mut merged: Vec<(i64, i64)> = Vec::with_capacity(ivals.len());
        for iv in ivals {
            match merged.last_mut() {
                Some(last) if iv.0 <= last.1 + 1 => last.1 = last.1.max(iv.1),
                _ => merged.push(iv),
            }
        }
        out.push((col, merged));
    }
    out
}

fn run_cells(runs: &[([i64; 2], Vec<(i64, i64)>)]) -> u64 {
    runs.iter()
        .flat_map(|(_, rs)| rs.iter())
        .map(|&(lo, hi)| (hi - lo + 1) as u64)
        .sum()
}

/// Occupied cells of a column, sorted by row, for run lookups.
type ColumnIndex = crate::planar::sparse::CellMap<[i64; 2], Vec<(i64, Vec<u32>)>>;

fn emit_runs(
    index: &ColumnIndex,
    runs: &[([i64; 2], Vec<(i64, i64)>)],
    oi: u32,
    emits: &mut Vec<Emit>,
) {
    for (col, rs) in runs {
        let Some(cells) = index.get(col) else {
            continue;
        };
        for &(lo, hi) in rs {
            let start = cells.partition_point(|&(row, _)| row < lo);
            for (row, pts) in &cells[start..] {
                if *row > hi {
                    break;
                }
                emits.extend(pts.iter().map(|&pi| (pi, oi, 0u64)));
            }
        }
    }
}

fn column_index(entries: impl Iterator<Item = ([i64; 2], i64, Vec<u32>)>) -> ColumnIndex {
    let mut index: ColumnIndex = crate::planar::sparse::cell_map();
    for (col, row, pts) in entries {
        index.entry(col).or_default().push((row, pts));
    }
    for cells in index.values_mut() {
        cells.sort_unstable_by_key(|(row, _)| *row);
    }
    index
}

/// Naive grid baseline in the plane: eps-cells over the domain box, each
/// object probes its crossed cells and their 8-neighborhoods. Complete for
/// distance <= eps; line candidates stay within 2 sqrt(2) eps.
pub fn naive_2d(
    points: &[Point2],
    objects: &[Object2],
    eps: f64,
    mode: Mode,
) -> Result<Report, ParamError> {
    let started = Instant::now();
    geom::validate_eps(eps, 0.5)?;
    geom::validate_points_2d(points)?;
    if points.is_empty() || objects.is_empty() {
        return Ok(Report::default());
    }
    let pad = 2.0 * eps;
    let g = UniformGrid::<2>::new([-1.0 - pad, -1.0 - pad], [1.0 + pad, 1.0 + pad], [eps, eps]);
    let mut buckets: crate::planar::sparse::CellMap<[i64; 2], Vec<u32>> =
        crate::planar::sparse::cell_map();
    for (i, &p) in points.iter().enumerate() {
        let key = g.locate([p.x, p.y]).expect("validated point in domain");
        buckets.entry(key).or_default().push(i as u32);
    }
    let index = column_index(buckets.into_iter().map(|(k, v)| ([k[0], 0], k[1], v)));
    let results = exec::map_range(objects.len(), |oi| {
        let crossed: Vec<([i64; 2], i64)> = match &objects[oi] {
            Object2::Line(l) => grid::cells_crossed_by_line_2d(l, &g)
                .into_iter()
                .map(|c| ([c[0], 0], c[1]))
                .collect(),
            Object2::Circle(c) => grid::circle_column_spans(c, &g)
                .into_iter()
                .flat_map(|s| (s.row_lo..=s.row_hi).map(move |r| ([s.col, 0], r)))
                .collect(),
        };
        let runs = probe_runs(crossed, 0);
        let mut emits: Vec<Emit> = Vec::new();
        emit_runs(&index, &runs, oi as u32, &mut emits);
        (emits, run_cells(&runs))
    });
    let mut emits = Vec::new();
    let mut metrics = RunMetrics::default();
    for (e, c) in results {
        emits.extend(e);
        metrics.cells_visited += c;
    }
    metrics.elapsed = started.elapsed();
    let dist =
        |p: u32, o: u32| geom::dist_point_object_2d(points[p as usize], &objects[o as usize]);
    Ok(pairs::finalize(emits, eps, mode, metrics, dist))
}

/// Naive grid baseline in space: eps-cells, crossed cells plus their
/// 26-neighborhoods.
pub fn naive_3d(
    points: &[Point3],
    objects: &[Object3],
    eps: f64,
    mode: Mode,
) -> Result<Report, ParamError> {
    let started = Instant::now();
    geom::validate_eps(eps, 0.5)?;
    geom::validate_points_3d(points)?;
    if points.is_empty() || objects.is_empty() {
        return Ok(Report::default());
    }
    let pad = 2.0 * eps;
    let g = UniformGrid::<3>::new(
        [-1.0 - pad, -1.0 - pad, -1.0 - pad],
        [1.0 + pad, 1.0 + pad, 1.0 + pad],
        [eps, eps, eps],
    );
    let mut buckets: crate::planar::sparse::CellMap<[i64; 3], Vec<u32>> =
        crate::planar::sparse::cell_map();
    for (i, &p) in points.iter().enumerate() {
        let key = g
            .locate([p.x, p.y, p.z])
            .expect("validated point in domain");
        buckets.entry(key).or_default().push(i as u32);
    }
    let index = column_index(buckets.into_iter().map(|(k, v)| ([k[0], k[1]], k[2], v)));
    let results = exec::map_range(objects.len(), |oi| {
        let crossed3 = match &objects[oi] {
            Object3::Plane(pl) => plane_cells_any(pl, &g),
            Object3::Line(l) => line3_cells_any(l, &g),
            Object3::Sphere(s) => sphere_cells(s, &g),
            Object3::Circle(c) => circle3_cells_superset(c, &g),
        };
        let crossed: Vec<([i64; 2], i64)> =
            crossed3.into_iter().map(|c| ([c[0], c[1]], c[2])).collect();
        let runs = probe_runs(crossed, 1);
        let mut emits: Vec<Emit> = Vec::new();
        emit_runs(&index, &runs, oi as u32, &mut emits);
        (emits, run_cells(&runs))
    });
    let mut emits = Vec::new();
    let mut metrics = RunMetrics::default();
    for (e, c) in results {
        emits.extend(e);
        metrics.cells_visited += c;
    }
    metrics.elapsed = started.elapsed();
    let dist =
        |p: u32, o: u32| geom::dist_point_object_3d(points[p as usize], &objects[o as usize]);
    Ok(pairs::finalize(emits, eps, mode, metrics, dist))
}

/// Naive baseline with duality: when the object side is larger, run the
/// naive grid in the dual plane (or with the roles of the two point sets
/// swapped, for congruent circles/spheres). Supports 2D lines, congruent
/// 2D circles, 3D planes and congruent 3D spheres.
pub fn naive_duality_2d(
    points: &[Point2],
    objects: &[Object2],
    eps: f64,
    mode: Mode,
) -> Result<Report, ParamError> {
    let all_lines = objects.iter().all(|o| matches!(o, Object2::Line(_)));
    if all_lines {
        if points.len() > objects.len() || objects.is_empty() {
            return naive_2d(points, objects, eps, mode);
        }
        return dual_naive_lines_2d(points, objects, eps, mode);
    }
    let circles: Option<Vec<Circle2>> = objects
        .iter()
        .map(|o| match o {
            Object2::Circle(c) => Some(*c),
            _ => None,
        })
        .collect();
    let Some(circles) = circles else {
        return Err(ParamError::UnsupportedKind);
    };
    let r = circles.first().map(|c| c.r).unwrap_or(0.0);
    if circles.iter().any(|c| (c.r - r).abs() > 1e-9) {
        return Err(ParamError::UnsupportedKind);
    }
    if points.len() >= circles.len() {
        return naive_2d(points, objects, eps, mode);
    }
    // Role swap: probe congruent circles around the original points against
    // the centers.
    let centers: Vec<Point2> = circles.iter().map(|c| c.center).collect();
    let swapped: Vec<Object2> = points
        .iter()
        .map(|&p| Object2::Circle(Circle2 { center: p, r }))
        .collect();
    let mut rep = naive_2d(&centers, &swapped, eps, mode)?;
    for pr in &mut rep.pairs {
        std::mem::swap(&mut pr.point, &mut pr.object);
    }
    rep.pairs.sort_unstable_by_key(|p| (p.point, p.object));
    Ok(rep)
}

fn dual_naive_lines_2d(
    points: &[Point2],
    objects: &[Object2],
    eps: f64,
    mode: Mode,
) -> Result<Report, ParamError> {
    let started = Instant::now();
    geom::validate_eps(eps, 0.5)?;
    geom::validate_points_2d(points)?;
    let lines: Vec<Line2> = objects
        .iter()
        .map(|o| match o {
            Object2::Line(l) => *l,
            _ => unreachable!(),
        })
        .collect();
    let mut metrics = RunMetrics::default();
    let mut emits: Vec<Emit> = Vec::new();
    let cell = std::f64::consts::SQRT_2 * eps;
    for (ci, class) in geom::slope_split(&lines).into_iter().enumerate() {
        if class.lines.is_empty() {
            continue;
        }
        let mut dual_pts: Vec<[f64; 2]> = Vec::with_capacity(class.lines.len());
        let mut line_ids: Vec<u32> = Vec::with_capacity(class.lines.len());
        for (id, l) in &class.lines {
            match *l {
                Line2::Slant { a, b } => {
                    dual_pts.push([a, -b]);
                    line_ids.push(*id);
                }
                Line2::Vertical { .. } => unreachable!(),
            }
        }
        let dual_lines: Vec<(f64, f64)> = points
            .iter()
            .map(|&p| {
                let q = class.rotation.apply(p);
                (q.x, -q.y)
            })
            .collect();
        let pt_ids: Vec<u32> = (0..points.len() as u32).collect();
        let (e, _, cells) = crate::planar::point_line::single_grid(
            &dual_pts,
            &line_ids,
            &dual_lines,
            &pt_ids,
            cell,
            eps,
            true,
            false,
            (ci as u64) << 56,
        );
        emits.extend(e);
        metrics.cells_visited += cells;
    }
    metrics.elapsed = started.elapsed();
    let dist =
        |p: u32, o: u32| geom::dist_point_object_2d(points[p as usize], &objects[o as usize]);
    Ok(pairs::finalize(emits, eps, mode, metrics, dist))
}

pub fn naive_duality_3d(
    points: &[Point3],
    objects: &[Object3],
    eps: f64,
    mode: Mode,
) -> Result<Report, ParamError> {
    let all_planes = objects.iter().all(|o| matches!(o, Object3::Plane(_)));
    if all_planes {
        if points.len() > objects.len() || objects.is_empty() {
            return naive_3d(points, objects, eps, mode);
        }
        return dual_naive_planes_3d(points, objects, eps, mode);
    }
    let spheres: Option<Vec<Sphere3>> = objects
        .iter()
        .map(|o| match o {
            Object3::Sphere(s) => Some(*s),
            _ => None,
        })
        .collect();
    let Some(spheres) = spheres else {
        return Err(ParamError::UnsupportedKind);
    };
    let r = spheres.first().map(|s| s.r).unwrap_or(0.0);
    if spheres.iter().any(|s| (s.r - r).abs() > 1e-9) {
        return Err(ParamError::UnsupportedKind);
    }
    if points.len() >= spheres.len() {
        return naive_3d(points, objects, eps, mode);
    }
    let centers: Vec<Point3> = spheres.iter().map(|s| s.center).collect();
    let swapped: Vec<Object3> = points
        .iter()
        .map(|&p| Object3::Sphere(Sphere3 { center: p, r }))
        .collect();
    let mut rep = naive_3d(&centers, &swapped, eps, mode)?;
    for pr in &mut rep.pairs {
        std::mem::swap(&mut pr.point, &mut pr.object);
    }
    rep.pairs.sort_unstable_by_key(|p| (p.point, p.object));
    Ok(rep)
}

fn dual_naive_planes_3d(
    points: &[Point3],
    objects: &[Object3],
    eps: f64,
    mode: Mode,
) -> Result<Report, ParamError> {
    let started = Instant::now();
    geom::validate_eps(eps, 0.5)?;
    geom::validate_points_3d(points)?;
    let planes: Vec<Plane3> = objects
        .iter()
        .map(|o| match o {
            Object3::Plane(p) => *p,
            _ => unreachable!(),
        })
        .collect();
    let net = geom::DirectionNet::thirteen();
    let classes = geom::classes::direction_partition(
        &net,
        geom::p3(0.0, 0.0, 1.0),
        &planes,
        |pl| pl.normal(),
        |rot, pl| rot.apply_plane(pl),
    );
    let mut metrics = RunMetrics::default();
    let mut emits: Vec<Emit> = Vec::new();
    let cell = std::f64::consts::SQRT_2 * eps;
    for (ci, class) in classes.into_iter().enumerate() {
        let mut dual_pts: Vec<[f64; 3]> = Vec::with_capacity(class.members.len());
        let mut plane_ids: Vec<u32> = Vec::with_capacity(class.members.len());
        for (id, pl) in &class.members {
            dual_pts.push([pl.a, pl.b, -pl.c]);
            plane_ids.push(*id);
        }
        let dual_planes: Vec<(f64, f64, f64)> = points
            .iter()
            .map(|&p| {
                let q = class.rotation.apply(p);
                (q.x, q.y, -q.z)
            })
            .collect();
        let pt_ids: Vec<u32> = (0..points.len() as u32).collect();
        let (e, cells) = crate::spatial::point_plane::single_grid(
            &dual_pts,
            &plane_ids,
            &dual_planes,
            &pt_ids,
            cell,
            eps,
            true,
            (ci as u64) << 56,
        );
        emits.extend(e);
        metrics.cells_visited += cells;
    }
    metrics.elapsed = started.elapsed();
    let dist =
        |p: u32, o: u32| geom::dist_point_object_3d(points[p as usize], &objects[o as usize]);
    Ok(pairs::finalize(emits, eps, mode, metrics, dist))
}

/// Cells crossed by an arbitrary plane: enumerate over the pair of axes on
/// which the plane is flattest so per-column spans stay short.
fn plane_cells_any(pl: &Plane3, g: &UniformGrid<3>) -> Vec<[i64; 3]> {
    if pl.a.abs().max(pl.b.abs()) <= 1.0 {
        return grid::plane_column_spans(pl, g)
            .into_iter()
            .flat_map(|(c, lo, hi)| (lo..=hi).map(move |z| [c[0], c[1], z]))
            .collect();
    }
    let mut out = Vec::new();
    if pl.a.abs() >= pl.b.abs() {
        // x = (z - b y - c) / a over (y, z) columns.
        for cy in 0..g.counts[1] {
            let y0 = g.origin[1] + cy as f64 * g.cell[1];
            for cz in 0..g.counts[2] {
                let z0 = g.origin[2] + cz as f64 * g.cell[2];
                let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
                for (y, z) in [
                    (y0, z0),
                    (y0 + g.cell[1], z0),
                    (y0, z0 + g.cell[2]),
                    (y0 + g.cell[1], z0 + g.cell[2]),
                ] {
                    let x = (z - pl.b * y - pl.c) / pl.a;
                    lo = lo.min(x);
                    hi = hi.max(x);
                }
                let range = g.touch_range(0, lo, hi);
                if let Some((rl, rh)) = g.clamp_range(0, range) {
                    out.extend((rl..=rh).map(|cx| [cx, cy, cz]));
                }
            }
        }
    } else {
        for cx in 0..g.counts[0] {
            let x0 = g.origin[0] + cx as f64 * g.cell[0];
            for cz in 0..g.counts[2] {
                let z0 = g.origin[2] + cz as f64 * g.cell[2];
                let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
                for (x, z) in [
                    (x0, z0),
                    (x0 + g.cell[0], z0),
                    (x0, z0 + g.cell[2]),
                    (x0 + g.cell[0], z0 + g.cell[2]),
                ] {
                    let y = (z - pl.a * x - pl.c) / pl.b;
                    lo = lo.min(y);
                    hi = hi.max(y);
                }
                let range = g.touch_range(1, lo, hi);
                if let Some((rl, rh)) = g.clamp_range(1, range) {
                    out.extend((rl..=rh).map(|cy| [cx, cy, cz]));
                }
            }
        }
    }
    out
}

/// Cells crossed by an arbitrary 3D line: parametrize by its dominant axis.
fn line3_cells_any(l: &Line3, g: &UniformGrid<3>) -> Vec<[i64; 3]> {
    let dir = l.dir();
    let ax = [dir.x.abs(), dir.y.abs(), dir.z.abs()];
    let dominant = (0..3).max_by(|&i, &j| ax[i].total_cmp(&ax[j])).unwrap();
    if dominant == 0 {
        return grid::line3_cells(l, g);
    }
    let p0 = l.point_at(0.0);
    let mut out = Vec::new();
    let d = [dir.x, dir.y, dir.z];
    let o = [p0.x, p0.y, p0.z];
    let (u, v) = match dominant {
        1 => (0usize, 2usize),
        _ => (0usize, 1usize),
    };
    for slab in 0..g.counts[dominant] {
        let t0 = (g.origin[dominant] + slab as f64 * g.cell[dominant] - o[dominant]) / d[dominant];
        let t1 =
            (g.origin[dominant] + (slab + 1) as f64 * g.cell[dominant] - o[dominant]) / d[dominant];
        let at = |t: f64, a: usize| o[a] + d[a] * t;
        let (ua, ub) = (at(t0, u), at(t1, u));
        let (va, vb) = (at(t0, v), at(t1, v));
        let ru = g.touch_range(u, ua.min(ub), ua.max(ub));
        let rv = g.touch_range(v, va.min(vb), va.max(vb));
        let (Some((ul, uh)), Some((vl, vh))) = (g.clamp_range(u, ru), g.clamp_range(v, rv)) else {
            continue;
        };
        for cu in ul..=uh {
            for cv in vl..=vh {
                let mut key = [0i64; 3];
                key[dominant] = slab;
                key[u] = cu;
                key[v] = cv;
                out.push(key);
            }
        }
    }
    out
}

/// Cells crossed by a sphere surface: per (x, y) column the crossed rows
/// form at most two bands around the poles of the column.
fn sphere_cells(s: &Sphere3, g: &UniformGrid<3>) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    let (cx, cy, cz, r) = (s.center.x, s.center.y, s.center.z, s.r);
    let rx = g.touch_range(0, cx - r, cx + r);
    let ry = g.touch_range(1, cy - r, cy + r);
    let (Some((x0, x1)), Some((y0, y1))) = (g.clamp_range(0, rx), g.clamp_range(1, ry)) else {
        return out;
    };
    for ix in x0..=x1 {
        let (xl, xh) = (
            g.origin[0] + ix as f64 * g.cell[0],
            g.origin[0] + (ix + 1) as f64 * g.cell[0],
        );
        let dx_min = if cx < xl {
            xl - cx
        } else if cx > xh {
            cx - xh
        } else {
            0.0
        };
        let dx_max = (cx - xl).abs().max((cx - xh).abs());
        for iy in y0..=y1 {
            let (yl, yh) = (
                g.origin[1] + iy as f64 * g.cell[1],
                g.origin[1] + (iy + 1) as f64 * g.cell[1],
            );
            let dy_min = if cy < yl {
                yl - cy
            } else if cy > yh {
                cy - yh
            } else {
                0.0
            };
            let dy_max = (cy - yl).abs().max((cy - yh).abs());
            let dxy_min_sq = dx_min * dx_min + dy_min * dy_min;
            let dxy_max_sq = dx_max * dx_max + dy_max * dy_max;
            if dxy_min_sq > r * r {
                continue;
            }
            let s_hi = (r * r - dxy_min_sq).sqrt();
            let s_lo = (r * r - dxy_max_sq).max(0.0).sqrt();
            // Crossed rows: z-intervals within s_hi of cz but not strictly
            // inside (cz - s_lo, cz + s_lo).
            let outer = g.touch_range(2, cz - s_hi, cz + s_hi);
            let Some((zl, zh)) = g.clamp_range(2, outer) else {
                continue;
            };
            let inner_lo = ((cz - s_lo - g.origin[2]) / g.cell[2]).floor() as i64 + 1;
            let inner_hi = ((cz + s_lo - g.origin[2]) / g.cell[2]).ceil() as i64 - 1;
            for iz in zl..=zh {
                if iz >= inner_lo && iz <= inner_hi {
                    continue;
                }
                out.push([ix, iy, iz]);
            }
        }
    }
    out
}

/// Certified superset of the cells crossed by a space circle: cells of a
/// dense arc sampling (step below one cell) expanded by one ring.
fn circle3_cells_superset(c: &Circle3, g: &UniformGrid<3>) -> Vec<[i64; 3]> {
    let cell_min = g.cell[0].min(g.cell[1]).min(g.cell[2]);
    let steps = ((2.0 * std::f64::consts::PI * c.r) / (0.9 * cell_min))
        .ceil()
        .max(8.0) as usize;
    let helper = if c.axis.x.abs() < 0.9 {
        geom::p3(1.0, 0.0, 0.0)
    } else {
        geom::p3(0.0, 1.0, 0.0)
    };
    let u = c.axis.cross(helper).normalized();
    let v = c.axis.cross(u);
    let mut sampled: Vec<[i64; 3]> = Vec::with_capacity(steps);
    for k in 0..steps {
        let t = 2.0 * std::f64::consts::PI * k as f64 / steps as f64;
        let p = c.center + u * (c.r * t.cos()) + v * (c.r * t.sin());
        let key = [
            ((p.x - g.origin[0]) / g.cell[0]).floor() as i64,
            ((p.y - g.origin[1]) / g.cell[1]).floor() as i64,
            ((p.z - g.origin[2]) / g.cell[2]).floor() as i64,
        ];
        sampled.push(key);
    }
    sampled.sort_unstable();
    sampled.dedup();
    let mut out = Vec::with_capacity(sampled.len() * 27);
    for k in sampled {
        for dx in -1..=1 {
            for dy in -1..=1 {
                for dz in -1..=1 {
                    let key = [k[0] + dx, k[1] + dy, k[2] + dz];
                    if g.in_bounds(key) {
                        out.push(key);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}
