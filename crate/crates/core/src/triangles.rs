//! Reporting all point triples in a 3D set that span a triangle nearly
//! congruent to a fat reference triangle.
//!
//! Stage 1 finds the ordered pairs (p, q) with |pq| within eps of the
//! longest side u (congruent-pairs engine, pruned exactly). Stage 2 places,
//! per surviving pair, the circle of all positions the apex could take if
//! the triangle were exact: radius h (the height), centered on pq at the
//! foot offset z, axis along pq. All those circles are congruent, so one
//! congruent-circles run with a gradient-derived tube tolerance reports
//! every candidate apex. Stage 3 re-checks the three side deviations
//! exactly and attaches them.

use crate::error::ParamError;
use crate::exec;
use crate::geom::{self, Circle3, Point3};
use crate::metrics::RunMetrics;
use crate::pairs::Mode;
use crate::spatial::{congruent, point_circle};
use std::time::Instant;

/// Foot offset and height of the triangle with sides `u = |ab|`,
/// `v = |ac|`, `w = |bc|`: the apex projects onto ab at distance `z` from
/// a, at height `h`. Satisfies `z^2 + h^2 = v^2` and `(u-z)^2 + h^2 = w^2`.
pub fn triangle_geometry(u: f64, v: f64, w: f64) -> Result<(f64, f64), ParamError> {
    let degenerate = ParamError::DegenerateTriangle { u, v, w };
    if !(u > 0.0 && v > 0.0 && w > 0.0 && u.is_finite() && v.is_finite() && w.is_finite()) {
        return Err(degenerate);
    }
    if u + v <= w || u + w <= v || v + w <= u {
        return Err(degenerate);
    }
    let z = (u * u + v * v - w * w) / (2.0 * u);
    let tau = 0.5 * (u + v + w);
    let area = (tau * (tau - u) * (tau - v) * (tau - w)).sqrt();
    Ok((z, 2.0 * area / u))
}

/// L1 norms of the gradients of z(u, v, w) and h(u, v, w); they bound how
/// far the apex circle can drift when the sides are perturbed by eps each.
fn geometry_gradients(u: f64, v: f64, w: f64) -> ((f64, f64), (f64, f64, f64, f64, f64, f64)) {
    let (z, h) = triangle_geometry(u, v, w).expect("validated");
    let dz_du = (u * u - v * v + w * w) / (2.0 * u * u);
    let dz_dv = v / u;
    let dz_dw = -w / u;
    let dh_du = -z / h * dz_du;
    let dh_dv = (v - z * dz_dv) / h;
    let dh_dw = -z * dz_dw / h;
    let grad_z = dz_du.abs() + dz_dv.abs() + dz_dw.abs();
    let grad_h = dh_du.abs() + dh_dv.abs() + dh_dw.abs();
    ((grad_z, grad_h), (dz_du, dz_dv, dz_dw, dh_du, dh_dv, dh_dw))
}

/// Validated query: reference sides (u the longest), tolerance, and the
/// fatness floor (beta for the longest side, s for the height).
#[derive(Debug, Clone, Copy)]
pub struct TriangleQuery {
    pub u: f64,
    pub v: f64,
    pub w: f64,
    pub eps: f64,
    pub beta: f64,
    pub s: f64,
    pub z: f64,
    pub h: f64,
    /// Tube tolerance for the apex circle: delta * eps.
    pub tube_eps: f64,
    pub delta: f64,
}

impl TriangleQuery {
    pub fn new(u: f64, v: f64, w: f64, eps: f64, beta: f64, s: f64) -> Result<Self, ParamError> {
        let (z, h) = triangle_geometry(u, v, w)?;
        if u < v || u < w {
            return Err(ParamError::TriangleFatness {
                reason: "u must be the longest side",
            });
        }
        if !(beta <= u && u <= 0.5) {
            return Err(ParamError::TriangleFatness {
                reason: "require beta <= u <= 1/2",
            });
        }
        if h < s {
            return Err(ParamError::TriangleFatness {
                reason: "height below the fatness floor s",
            });
        }
        geom::validate_eps(eps, 0.5)?;
        if eps > beta.min(s) / 20.0 {
            return Err(ParamError::TriangleFatness {
                reason: "require eps <= min(beta, s)/20",
            });
        }
        let ((grad_z, grad_h), _) = geometry_gradients(u, v, w);
        // Doubled for the second-order slack of the eps-perturbed sides.
        let delta = 2.0 * (grad_z * grad_z + grad_h * grad_h).sqrt();
        let tube_eps = delta * eps;
        if tube_eps > h / 4.0 {
            return Err(ParamError::TriangleFatness {
                reason: "tube tolerance too large for the apex circle",
            });
        }
        Ok(TriangleQuery {
            u,
            v,
            w,
            eps,
            beta,
            s,
            z,
            h,
            tube_eps,
            delta,
        })
    }
}

/// The apex circle of an ordered pair: radius h, centered on the segment pq
/// at distance z from p, axis along pq.
pub fn apex_circle(p: Point3, q: Point3, query: &TriangleQuery) -> Result<Circle3, ParamError> {
    let d = q - p;
    let len = d.norm();
    if len == 0.0 {
        return Err(ParamError::CoincidentPoints);
    }
    let axis = d * (1.0 / len);
    Ok(Circle3 {
        center: p + axis * query.z,
        r: query.h,
        axis,
    })
}

/// One reported triple (ordered: p matches the first vertex of the longest
/// side, q the second, o the apex) with its three exact side deviations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleMatch {
    pub p: u32,
    pub q: u32,
    pub o: u32,
    /// | |pq| - u |, | |po| - v |, | |qo| - w |.
    pub dev: [f64; 3],
}

#[derive(Debug, Clone, Default)]
pub struct TriangleReport {
    pub matches: Vec<TriangleMatch>,
    pub metrics: RunMetrics,
}

impl TriangleReport {
    /// Triples satisfying all three deviations <= eps.
    pub fn filtered(&self, eps: f64) -> Vec<TriangleMatch> {
        self.matches
            .iter()
            .copied()
            .filter(|m| m.dev.iter().all(|&d| d <= eps))
            .collect()
    }
}

/// Report every candidate triple with its deviations; all triples whose
/// three deviations are within eps are guaranteed present.
pub fn report(points: &[Point3], query: &TriangleQuery) -> Result<TriangleReport, ParamError> {
    let started = Instant::now();
    geom::validate_points_3d(points)?;
    let mut metrics = RunMetrics::default();
    if points.len() < 3 {
        return Ok(TriangleReport::default());
    }

    // Stage 1: ordered pairs with | |pq| - u | <= eps, pruned exactly.
    let stage1 = congruent::report(points, points, query.u, query.eps, Mode::Filtered)?;
    metrics.cells_visited += stage1.metrics.cells_visited;
    let pairs: Vec<(u32, u32)> = stage1
        .pairs
        .iter()
        .filter(|pr| pr.point != pr.object)
        .map(|pr| (pr.point, pr.object))
        .collect();
    if pairs.is_empty() {
        metrics.elapsed = started.elapsed();
        return Ok(TriangleReport {
            matches: Vec::new(),
            metrics,
        });
    }

    // Stage 2: all apex circles are congruent (radius h); one run finds
    // every point within the tube tolerance of some circle.
    let circles: Vec<Circle3> = pairs
        .iter()
        .map(|&(pi, qi)| apex_circle(points[pi as usize], points[qi as usize], query))
        .collect::<Result<_, _>>()?;
    let stage2 = point_circle::report_with_divisor(
        points,
        &circles,
        query.h,
        query.tube_eps,
        Mode::Candidates,
        4.0,
    )?;
    metrics.cells_visited += stage2.metrics.cells_visited;
    // Raw emissions of the triple-producing stage; stage 1 duplication is
    // the congruent-pairs engine's own affair.
    metrics.candidates_raw = stage2.metrics.candidates_raw;

    // Stage 3: exact side deviations.
    let matches: Vec<TriangleMatch> = exec::map_collect(&stage2.pairs, |cand| {
        let (pi, qi) = pairs[cand.object as usize];
        let oi = cand.point;
        if oi == pi || oi == qi {
            return None;
        }
        let (p, q, o) = (
            points[pi as usize],
            points[qi as usize],
            points[oi as usize],
        );
        Some(TriangleMatch {
            p: pi,
            q: qi,
            o: oi,
            dev: [
                ((p - q).norm() - query.u).abs(),
                ((p - o).norm() - query.v).abs(),
                ((q - o).norm() - query.w).abs(),
            ],
        })
    })
    .into_iter()
    .flatten()
    .collect();

    let mut matches = matches;
    matches.sort_unstable_by_key(|m| (m.p, m.q, m.o));
    matches.dedup_by_key(|m| (m.p, m.q, m.o));
    metrics.candidates = matches.len() as u64;
    metrics.filtered = matches
        .iter()
        .filter(|m| m.dev.iter().all(|&d| d <= query.eps))
        .count() as u64;
    let mut max_ratio: f64 = 1.0;
    for m in &matches {
        for d in m.dev {
            max_ratio = max_ratio.max(d / query.eps);
        }
    }
    metrics.max_distortion = max_ratio;
    metrics.elapsed = started.elapsed();
    Ok(TriangleReport { matches, metrics })
}
