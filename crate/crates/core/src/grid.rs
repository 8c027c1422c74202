//! Uniform grids over axis-aligned boxes in 2, 3 and 4 dimensions, plus the
//! cell-crossing enumerators for lines, planes and circles that every primal
//! and dual stage is built from.
//!
//! Crossing uses closed-cell semantics: an object touching a shared cell
//! boundary is charged to both cells. Completeness arguments then survive
//! floating-point ties at the cost of a few extra candidates. Point location
//! is half-open with a clamp at the domain maximum, so every point has
//! exactly one home cell.

use crate::geom::{Circle2, Line2, Plane3, Point2};

/// Cells cover `[lo, hi]` with per-axis extents `cell`; counts are rounded
/// up, so the gridded box may be slightly larger than the domain, never
/// smaller.
#[derive(Debug, Clone)]
pub struct UniformGrid<const D: usize> {
    pub origin: [f64; D],
    pub cell: [f64; D],
    pub counts: [i64; D],
}

pub const LOCATE_TOL: f64 = 1e-9;

impl<const D: usize> UniformGrid<D> {
    pub fn new(lo: [f64; D], hi: [f64; D], cell: [f64; D]) -> Self {
        let mut counts = [1i64; D];
        for a in 0..D {
            assert!(cell[a] > 0.0, "cell extent must be positive");
            let span = hi[a] - lo[a];
            counts[a] = ((span / cell[a]).ceil() as i64).max(1);
        }
        UniformGrid {
            origin: lo,
            cell,
            counts,
        }
    }

    pub fn n_cells(&self) -> i64 {
        self.counts.iter().product()
    }

    /// Home cell of a point: half-open intervals, points on a shared
    /// boundary belong to the higher cell, the domain maximum clamps into
    /// the last cell. `None` when the point is outside beyond tolerance.
    pub fn locate(&self, p: [f64; D]) -> Option<[i64; D]> {
        let mut key = [0i64; D];
        for a in 0..D {
            let t = (p[a] - self.origin[a]) / self.cell[a];
            if t < -LOCATE_TOL / self.cell[a] {
                return None;
            }
            let mut k = t.floor() as i64;
            if k >= self.counts[a] {
                let hi = self.origin[a] + self.cell[a] * self.counts[a] as f64;
                if p[a] > hi + LOCATE_TOL {
                    return None;
                }
                k = self.counts[a] - 1;
            }
            key[a] = k.max(0);
        }
        Some(key)
    }

    /// Inclusive range of cells whose closed interval on `axis` meets the
    /// closed value interval `[lo, hi]`. Unclamped: callers probing sparse
    /// buckets may use out-of-domain indices directly, `clamp_range`
    /// restricts to the grid.
    pub fn touch_range(&self, axis: usize, lo: f64, hi: f64) -> (i64, i64) {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        let tl = (lo - self.origin[axis]) / self.cell[axis];
        let th = (hi - self.origin[axis]) / self.cell[axis];
        let mut kl = tl.floor() as i64;
        if tl == kl as f64 {
            kl -= 1; // boundary value also touches the cell below
        }
        (kl, th.floor() as i64)
    }

    pub fn clamp_range(&self, axis: usize, range: (i64, i64)) -> Option<(i64, i64)> {
        let lo = range.0.max(0);
        let hi = range.1.min(self.counts[axis] - 1);
        (lo <= hi).then_some((lo, hi))
    }

    pub fn cell_bounds(&self, key: [i64; D]) -> ([f64; D], [f64; D]) {
        let mut lo = [0.0; D];
        let mut hi = [0.0; D];
        for a in 0..D {
            lo[a] = self.origin[a] + key[a] as f64 * self.cell[a];
            hi[a] = lo[a] + self.cell[a];
        }
        (lo, hi)
    }

    pub fn cell_center(&self, key: [i64; D]) -> [f64; D] {
        let (lo, hi) = self.cell_bounds(key);
        std::array::from_fn(|a| 0.5 * (lo[a] + hi[a]))
    }

    pub fn in_bounds(&self, key: [i64; D]) -> bool {
        (0..D).all(|a| key[a] >= 0 && key[a] < self.counts[a])
    }

    /// Existing cells adjacent to `key` along exactly the masked axes
    /// (every nonzero offset combination over those axes).
    pub fn neighbors(&self, key: [i64; D], axes_mask: [bool; D]) -> Vec<[i64; D]> {
        let mut out = Vec::new();
        let axes: Vec<usize> = (0..D).filter(|&a| axes_mask[a]).collect();
        if axes.is_empty() {
            return out;
        }
        // Odometer over {-1, 0, 1}^axes.
        let mut offsets = vec![-1i64; axes.len()];
        loop {
            if offsets.iter().any(|&o| o != 0) {
                let mut k = key;
                for (i, &a) in axes.iter().enumerate() {
                    k[a] += offsets[i];
                }
                if self.in_bounds(k) {
                    out.push(k);
                }
            }
            let mut i = 0;
            loop {
                offsets[i] += 1;
                if offsets[i] > 1 {
                    offsets[i] = -1;
                    i += 1;
                    if i == offsets.len() {
                        return out;
                    }
                } else {
                    break;
                }
            }
        }
    }
}

/// Touched rows of one grid column: cells `(col, row_lo..=row_hi)`, clamped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColumnSpan {
    pub col: i64,
    pub row_lo: i64,
    pub row_hi: i64,
}

impl ColumnSpan {
    pub fn len(&self) -> u64 {
        (self.row_hi - self.row_lo + 1) as u64
    }
}

/// Cells of a 2D grid whose closed square the line `y = a x + b` meets,
/// one span per x-column. Requires `|a| <= 1` in grid units, which keeps
/// every span short and the total below `2 * counts_x + 2`.
pub fn line_column_spans(a: f64, b: f64, grid: &UniformGrid<2>) -> Vec<ColumnSpan> {
    debug_assert!(
        a.abs() <= 1.0 + 1e-9,
        "line too steep for column enumeration"
    );
    let mut spans = Vec::with_capacity(grid.counts[0] as usize);
    for col in 0..grid.counts[0] {
        let x0 = grid.origin[0] + col as f64 * grid.cell[0];
        let x1 = x0 + grid.cell[0];
        let y0 = a * x0 + b;
        let y1 = a * x1 + b;
        let range = grid.touch_range(1, y0.min(y1), y0.max(y1));
        if let Some((lo, hi)) = grid.clamp_range(1, range) {
            spans.push(ColumnSpan {
                col,
                row_lo: lo,
                row_hi: hi,
            });
        }
    }
    spans
}

/// Cells crossed by an arbitrary 2D line; steep lines are enumerated by
/// rows instead of columns.
pub fn cells_crossed_by_line_2d(line: &Line2, grid: &UniformGrid<2>) -> Vec<[i64; 2]> {
    match *line {
        Line2::Slant { a, b } if a.abs() <= 1.0 => line_column_spans(a, b, grid)
            .into_iter()
            .flat_map(|s| (s.row_lo..=s.row_hi).map(move |r| [s.col, r]))
            .collect(),
        Line2::Slant { a, b } => {
            // x = (y - b) / a over each y-row.
            let mut out = Vec::new();
            for row in 0..grid.counts[1] {
                let y0 = grid.origin[1] + row as f64 * grid.cell[1];
                let y1 = y0 + grid.cell[1];
                let xa = (y0 - b) / a;
                let xb = (y1 - b) / a;
                let range = grid.touch_range(0, xa.min(xb), xa.max(xb));
                if let Some((lo, hi)) = grid.clamp_range(0, range) {
                    out.extend((lo..=hi).map(|c| [c, row]));
                }
            }
            out
        }
        Line2::Vertical { x } => {
            let range = grid.touch_range(0, x, x);
            match grid.clamp_range(0, range) {
                Some((lo, hi)) => (lo..=hi)
                    .flat_map(|c| (0..grid.counts[1]).map(move |r| [c, r]))
                    .collect(),
                None => Vec::new(),
            }
        }
    }
}

/// Cells of a 3D grid whose closed cube the plane `z = a x + b y + c`
/// meets, as a z-span per (x, y) column. Requires `a^2 + b^2 <= 1`.
pub fn plane_column_spans(pl: &Plane3, grid: &UniformGrid<3>) -> Vec<([i64; 2], i64, i64)> {
    let mut out = Vec::new();
    for cx in 0..grid.counts[0] {
        let x0 = grid.origin[0] + cx as f64 * grid.cell[0];
        let x1 = x0 + grid.cell[0];
        for cy in 0..grid.counts[1] {
            let y0 = grid.origin[1] + cy as f64 * grid.cell[1];
            let y1 = y0 + grid.cell[1];
            // Linear in x and y, so extrema sit at the corners.
            let (mut zl, mut zh) = (f64::INFINITY, f64::NEG_INFINITY);
            for (x, y) in [(x0, y0), (x0, y1), (x1, y0), (x1, y1)] {
                let z = pl.eval(x, y);
                zl = zl.min(z);
                zh = zh.max(z);
            }
            let range = grid.touch_range(2, zl, zh);
            if let Some((lo, hi)) = grid.clamp_range(2, range) {
                out.push(([cx, cy], lo, hi));
            }
        }
    }
    out
}

/// Cells whose closed cube a 3D line meets, via per-x-slab segment clipping.
/// The line's angle with the x-axis must be at most pi/4 (two-slope form).
pub fn line3_cells(l: &crate::geom::Line3, grid: &UniformGrid<3>) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    for cx in 0..grid.counts[0] {
        let x0 = grid.origin[0] + cx as f64 * grid.cell[0];
        let x1 = x0 + grid.cell[0];
        let (pa, pb) = (l.point_at(x0), l.point_at(x1));
        let ry = grid.touch_range(1, pa.y.min(pb.y), pa.y.max(pb.y));
        let rz = grid.touch_range(2, pa.z.min(pb.z), pa.z.max(pb.z));
        let (Some((ylo, yhi)), Some((zlo, zhi))) =
            (grid.clamp_range(1, ry), grid.clamp_range(2, rz))
        else {
            continue;
        };
        for cy in ylo..=yhi {
            for cz in zlo..=zhi {
                // The (y, z) candidate box may overshoot at a corner: keep
                // only cells the segment really meets (closed, with the
                // locate tolerance).
                if segment_meets_box_2d(
                    (pa.y, pa.z),
                    (pb.y, pb.z),
                    grid.origin[1] + cy as f64 * grid.cell[1],
                    grid.origin[1] + (cy + 1) as f64 * grid.cell[1],
                    grid.origin[2] + cz as f64 * grid.cell[2],
                    grid.origin[2] + (cz + 1) as f64 * grid.cell[2],
                ) {
                    out.push([cx, cy, cz]);
                }
            }
        }
    }
    out
}

fn segment_meets_box_2d(
    a: (f64, f64),
    b: (f64, f64),
    ylo: f64,
    yhi: f64,
    zlo: f64,
    zhi: f64,
) -> bool {
    // Liang-Barsky on the closed box.
    let (mut t0, mut t1) = (0.0f64, 1.0f64);
    let d = (b.0 - a.0, b.1 - a.1);
    for (p, q) in [
        (-d.0, a.0 - ylo),
        (d.0, yhi - a.0),
        (-d.1, a.1 - zlo),
        (d.1, zhi - a.1),
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

/// Cells whose closed square the circle (curve) meets, as up to two spans
/// per x-column (upper and lower arc branch).
pub fn circle_column_spans(c: &Circle2, grid: &UniformGrid<2>) -> Vec<ColumnSpan> {
    let mut out = Vec::new();
    let (cx, cy, r) = (c.center.x, c.center.y, c.r);
    let col_range = grid.touch_range(0, cx - r, cx + r);
    let Some((col_lo, col_hi)) = grid.clamp_range(0, col_range) else {
        return out;
    };
    for col in col_lo..=col_hi {
        let x0 = (grid.origin[0] + col as f64 * grid.cell[0]).max(cx - r);
        let x1 = (grid.origin[0] + (col + 1) as f64 * grid.cell[0]).min(cx + r);
        if x0 > x1 {
            continue;
        }
        let h0 = (r * r - (x0 - cx) * (x0 - cx)).max(0.0).sqrt();
        let h1 = (r * r - (x1 - cx) * (x1 - cx)).max(0.0).sqrt();
        // Upper branch over [x0, x1]; its extremum is at the apex x = cx.
        let apex_inside = x0 <= cx && cx <= x1;
        let hi_max = if apex_inside { r } else { h0.max(h1) };
        let upper = (cy + h0.min(h1), cy + hi_max);
        let lower = (cy - hi_max, cy - h0.min(h1));
        let mut push = |lo: f64, hi: f64| {
            let range = grid.touch_range(1, lo, hi);
            if let Some((rlo, rhi)) = grid.clamp_range(1, range) {
                out.push(ColumnSpan {
                    col,
                    row_lo: rlo,
                    row_hi: rhi,
                });
            }
        };
        if lower.1 < upper.0 {
            push(upper.0, upper.1);
            push(lower.0, lower.1);
        } else {
            // Branches meet at the apex: one merged span.
            push(lower.0, upper.1);
        }
    }
    out
}

/// Polar grid over an annulus `rho in [rho_lo, rho_hi]` about `center`,
/// with cyclic theta columns. Used by the dual stage of the congruent-pairs
/// algorithm, where each cell is an annulus sector.
#[derive(Debug, Clone)]
pub struct PolarGrid {
    pub center: Point2,
    pub rho_lo: f64,
    pub rho_hi: f64,
    pub n_rho: i64,
    pub n_theta: i64,
    pub rho_cell: f64,
    pub theta_cell: f64,
}

impl PolarGrid {
    pub fn new(center: Point2, rho_lo: f64, rho_hi: f64, rho_cell: f64, theta_cell: f64) -> Self {
        let n_rho = (((rho_hi - rho_lo) / rho_cell).ceil() as i64).max(1);
        let n_theta = ((2.0 * std::f64::consts::PI / theta_cell).ceil() as i64).max(1);
        let theta_cell = 2.0 * std::f64::consts::PI / n_theta as f64;
        PolarGrid {
            center,
            rho_lo,
            rho_hi,
            n_rho,
            n_theta,
            rho_cell,
            theta_cell,
        }
    }

    pub fn locate(&self, q: Point2) -> Option<(i64, i64)> {
        let w = q - self.center;
        let rho = w.norm();
        if rho < self.rho_lo - LOCATE_TOL
            || rho > self.rho_lo + self.rho_cell * self.n_rho as f64 + LOCATE_TOL
        {
            return None;
        }
        let ri = (((rho - self.rho_lo) / self.rho_cell).floor() as i64).clamp(0, self.n_rho - 1);
        let theta = w.y.atan2(w.x).rem_euclid(2.0 * std::f64::consts::PI);
        let ti = ((theta / self.theta_cell).floor() as i64).clamp(0, self.n_theta - 1);
        Some((ri, ti))
    }

    pub fn wrap_theta(&self, t: i64) -> i64 {
        t.rem_euclid(self.n_theta)
    }

    /// Rho-spans of the polar cells met by a circle of radius `r` centered
    /// at `p`, one entry per touched theta column: `(theta_col, rho_lo_cell,
    /// rho_hi_cell)`, rho range clamped, theta wrapped.
    ///
    /// In polar coordinates about the grid center the circle splits into at
    /// most two radial branches `w.e(theta) +- sqrt(r^2 - (w x e)^2)`; each
    /// branch is monotone between the tangent angles and the diameter
    /// through `p`, so per-column extrema sit at column endpoints or at one
    /// of those critical angles.
    pub fn circle_crossings(&self, p: Point2, r: f64) -> Vec<(i64, i64, i64)> {
        use std::f64::consts::PI;
        let w = p - self.center;
        let dist = w.norm();
        let mut out = Vec::new();
        let eval = |theta: f64, sign: f64| -> Option<f64> {
            let e = Point2 {
                x: theta.cos(),
                y: theta.sin(),
            };
            let along = w.dot(e);
            let disc = r * r - w.cross(e) * w.cross(e);
            if disc < 0.0 {
                return None;
            }
            let rho = along + sign * disc.sqrt();
            (rho >= 0.0).then_some(rho)
        };
        let w_ang = w.y.atan2(w.x);
        // Tangent angles exist only when the grid center lies outside the circle.
        let tangents: Vec<f64> = if dist > r {
            let half = (r / dist).asin();
            vec![w_ang - half, w_ang + half]
        } else {
            Vec::new()
        };
        for col in 0..self.n_theta {
            let t0 = col as f64 * self.theta_cell;
            let t1 = t0 + self.theta_cell;
            let mut crit = vec![t0, t1];
            for base in [w_ang, w_ang + PI] {
                for k in [-1.0, 0.0, 1.0] {
                    let t = base + 2.0 * PI * k;
                    if t0 <= t && t <= t1 {
                        crit.push(t);
                    }
                }
            }
            for &t in &tangents {
                for k in [-1.0, 0.0, 1.0] {
                    let tt = t + 2.0 * PI * k;
                    if t0 <= tt && tt <= t1 {
                        crit.push(tt);
                    }
                }
            }
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for sign in [1.0, -1.0] {
                for &t in &crit {
                    if let Some(rho) = eval(t, sign) {
                        lo = lo.min(rho);
                        hi = hi.max(rho);
                    }
                }
                if dist <= r {
                    break; // inner branch is negative when center is inside
                }
            }
            if lo > hi {
                continue;
            }
            let tl = ((lo - self.rho_lo) / self.rho_cell).floor() as i64;
            let tl = if (lo - self.rho_lo) / self.rho_cell == tl as f64 {
                tl - 1
            } else {
                tl
            };
            let th = ((hi - self.rho_lo) / self.rho_cell).floor() as i64;
            let (tl, th) = (tl.max(0), th.min(self.n_rho - 1));
            if tl <= th {
                out.push((col, tl, th));
            }
        }
        out
    }
}

/// Product grid over the 4D box of dual line coordinates `(a, b, c, d)`:
/// a 2D grid on the slope pair `(a, c)` times a 2D grid on the intercept
/// pair `(b, d)`.
#[derive(Debug, Clone)]
pub struct Grid4 {
    pub slopes: UniformGrid<2>,
    pub intercepts: UniformGrid<2>,
}

impl Grid4 {
    pub fn locate(&self, a: f64, b: f64, c: f64, d: f64) -> Option<[i64; 4]> {
        let s = self.slopes.locate([a, c])?;
        let t = self.intercepts.locate([b, d])?;
        Some([s[0], s[1], t[0], t[1]])
    }

    /// Cells met by the dual surface of a primal point `(xi, eta, zeta)`,
    /// the 2-plane `{(a, b, c, d) : a xi + b = eta, c xi + d = zeta}`.
    /// For each slope cell the two intercepts range over intervals, so the
    /// crossing set is a small intercept box per slope cell:
    /// `(ia, ic, ib_lo..=ib_hi, id_lo..=id_hi)`, unclamped in (b, d).
    pub fn dual_plane_crossings(
        &self,
        xi: f64,
        eta: f64,
        zeta: f64,
    ) -> Vec<([i64; 2], (i64, i64), (i64, i64))> {
        let g = &self.slopes;
        let mut out = Vec::with_capacity((g.counts[0] * g.counts[1]) as usize);
        for ia in 0..g.counts[0] {
            let a0 = g.origin[0] + ia as f64 * g.cell[0];
            let a1 = a0 + g.cell[0];
            let (b0, b1) = (eta - a0 * xi, eta - a1 * xi);
            let br = self.intercepts.touch_range(0, b0.min(b1), b0.max(b1));
            for ic in 0..g.counts[1] {
                let c0 = g.origin[1] + ic as f64 * g.cell[1];
                let c1 = c0 + g.cell[1];
                let (d0, d1) = (zeta - c0 * xi, zeta - c1 * xi);
                let dr = self.intercepts.touch_range(1, d0.min(d1), d0.max(d1));
                out.push(([ia, ic], br, dr));
            }
        }
        out
    }
}
