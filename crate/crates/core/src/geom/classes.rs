//! Slope and direction classes.
//!
//! Vertical-distance arguments only work for objects that are nearly
//! horizontal (2D lines), have near-vertical normals (planes), or make a
//! small angle with a distinguished axis (3D lines, circle axes). Inputs are
//! partitioned into a constant number of classes, each rotated into its own
//! legal frame, and the per-class outputs are merged.

use super::{p3, Line2, Point3, Rot2};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

/// One of the two rotated subproblems for 2D lines: lines with nonnegative
/// slope (vertical included) rotated by -45 degrees, lines with negative
/// slope rotated by +45 degrees. Either way every member ends up with
/// `|slope| <= 1`.
pub struct SlopeClass {
    pub rotation: Rot2,
    /// (original index, rotated line) for every member.
    pub lines: Vec<(u32, Line2)>,
}

pub fn slope_split(lines: &[Line2]) -> [SlopeClass; 2] {
    let rot_pos = Rot2::from_angle(-FRAC_PI_4);
    let rot_neg = Rot2::from_angle(FRAC_PI_4);
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (i, l) in lines.iter().enumerate() {
        let nonnegative = match *l {
            Line2::Slant { a, .. } => a >= 0.0,
            Line2::Vertical { .. } => true,
        };
        if nonnegative {
            pos.push((i as u32, rot_pos.apply_line(l)));
        } else {
            neg.push((i as u32, rot_neg.apply_line(l)));
        }
    }
    [
        SlopeClass {
            rotation: rot_pos,
            lines: pos,
        },
        SlopeClass {
            rotation: rot_neg,
            lines: neg,
        },
    ]
}

/// A set of unit directions covering the sphere: every unit vector lies
/// within `half_angle` of some member (up to sign when `unoriented`).
#[derive(Debug, Clone)]
pub struct DirectionNet {
    pub dirs: Vec<Point3>,
    pub half_angle: f64,
    pub unoriented: bool,
}

impl DirectionNet {
    /// The 13 unoriented directions {axes, face diagonals, cube diagonals}.
    /// Max angular gap is below 28 degrees, comfortably within pi/4.
    pub fn thirteen() -> DirectionNet {
        let f = std::f64::consts::FRAC_1_SQRT_2;
        let g = 1.0 / 3.0f64.sqrt();
        let dirs = vec![
            p3(1.0, 0.0, 0.0),
            p3(0.0, 1.0, 0.0),
            p3(0.0, 0.0, 1.0),
            p3(f, f, 0.0),
            p3(f, -f, 0.0),
            p3(f, 0.0, f),
            p3(f, 0.0, -f),
            p3(0.0, f, f),
            p3(0.0, f, -f),
            p3(g, g, g),
            p3(g, g, -g),
            p3(g, -g, g),
            p3(g, -g, -g),
        ];
        DirectionNet {
            dirs,
            half_angle: FRAC_PI_4,
            unoriented: true,
        }
    }

    /// Latitude-band net with a prescribed coverage half-angle. Bands of
    /// angular height `step` are packed with equally spaced azimuths at the
    /// same arc spacing, so the worst offset is `step/sqrt(2) <= half_angle`.
    /// `unoriented` nets cover only the upper hemisphere and assign by |dot|.
    pub fn bands(half_angle: f64, unoriented: bool) -> DirectionNet {
        let step = half_angle * std::f64::consts::SQRT_2 * 0.96;
        let polar_span = if unoriented { FRAC_PI_2 } else { PI };
        let n_bands = (polar_span / step).ceil() as usize;
        let band_h = polar_span / n_bands as f64;
        let mut dirs = Vec::new();
        for band in 0..n_bands {
            let phi = (band as f64 + 0.5) * band_h;
            let ring = 2.0 * PI * phi.sin();
            let n_az = ((ring / step).ceil() as usize).max(1);
            // Stagger alternate bands by half a cell.
            let offset = if band % 2 == 0 { 0.0 } else { PI / n_az as f64 };
            for k in 0..n_az {
                let lam = offset + 2.0 * PI * k as f64 / n_az as f64;
                dirs.push(p3(phi.sin() * lam.cos(), phi.sin() * lam.sin(), phi.cos()));
            }
        }
        DirectionNet {
            dirs,
            half_angle,
            unoriented,
        }
    }

    /// Index of the nearest net direction.
    pub fn assign(&self, v: Point3) -> usize {
        let u = v.normalized();
        let mut best = 0;
        let mut best_dot = f64::NEG_INFINITY;
        for (i, d) in self.dirs.iter().enumerate() {
            let dot = if self.unoriented {
                u.dot(*d).abs()
            } else {
                u.dot(*d)
            };
            if dot > best_dot {
                best_dot = dot;
                best = i;
            }
        }
        best
    }

    /// Angle from `v` to the nearest net direction.
    pub fn gap(&self, v: Point3) -> f64 {
        let u = v.normalized();
        let mut best: f64 = -1.0;
        for d in &self.dirs {
            let dot = if self.unoriented {
                u.dot(*d).abs()
            } else {
                u.dot(*d)
            };
            best = best.max(dot);
        }
        best.clamp(-1.0, 1.0).acos()
    }
}

/// Members of one direction class, already rotated so the class direction is
/// the requested target axis.
pub struct DirectionClass<T> {
    pub rotation: super::Rot3,
    pub members: Vec<(u32, T)>,
}

/// Partition arbitrary objects by a representative direction and rotate each
/// class so its net direction lands on `target`.
pub fn direction_partition<T, D, R>(
    net: &DirectionNet,
    target: Point3,
    items: &[T],
    dir_of: D,
    rotate: R,
) -> Vec<DirectionClass<T>>
where
    T: Clone,
    D: Fn(&T) -> Point3,
    R: Fn(&super::Rot3, &T) -> T,
{
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); net.dirs.len()];
    for (i, item) in items.iter().enumerate() {
        buckets[net.assign(dir_of(item))].push(i as u32);
    }
    let mut classes = Vec::new();
    for (class, members) in buckets.into_iter().enumerate() {
        if members.is_empty() {
            continue;
        }
        let rot = super::Rot3::between(net.dirs[class], target);
        let members = members
            .into_iter()
            .map(|i| {
                let item = &items[i as usize];
                // Unoriented classes may hold members pointing either way;
                // the frame only guarantees a small angle up to sign.
                (i, rotate(&rot, item))
            })
            .collect();
        classes.push(DirectionClass {
            rotation: rot,
            members,
        });
    }
    classes
}
