//! Sparse, origin-anchored bucket grids shared by the reporting pipelines.
//! Only occupied cells are stored; probe keys are raw floor indices, so no
//! clamping can ever drop a boundary candidate.

use std::collections::HashMap;
use std::hash::{BuildHasherDefault, Hasher};

/// Multiply-xor hasher for small integer cell keys; the default SipHash is
/// needlessly slow on the probe-heavy dual stages.
#[derive(Default)]
pub struct FastHasher(u64);

impl Hasher for FastHasher {
    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0 ^ b as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        }
    }
    fn write_i64(&mut self, v: i64) {
        self.0 = (self.0 ^ v as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    }
    fn write_u64(&mut self, v: u64) {
        self.0 = (self.0 ^ v).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    }
    fn finish(&self) -> u64 {
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

pub type CellMap<K, V> = HashMap<K, V, BuildHasherDefault<FastHasher>>;

pub fn cell_map<K, V>() -> CellMap<K, V> {
    CellMap::default()
}

/// Floor index of `v` on a 0-anchored axis of extent `cell`.
pub fn axis_key(v: f64, cell: f64) -> i64 {
    (v / cell).floor() as i64
}

/// Inclusive index range of cells whose closed interval meets `[lo, hi]`
/// on a 0-anchored axis (a value sitting exactly on a boundary touches the
/// cell below as well).
pub fn axis_touch(lo: f64, hi: f64, cell: f64) -> (i64, i64) {
    let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let tl = lo / cell;
    let mut kl = tl.floor() as i64;
    if tl == kl as f64 {
        kl -= 1;
    }
    (kl, (hi / cell).floor() as i64)
}

/// Point buckets on a sparse 2D grid.
pub struct PointBuckets2 {
    pub map: CellMap<[i64; 2], Vec<u32>>,
    pub col_lo: i64,
    pub col_hi: i64,
}

impl PointBuckets2 {
    pub fn build(points: &[(u32, [f64; 2])], cell: [f64; 2]) -> Self {
        let mut map = cell_map();
        let (mut col_lo, mut col_hi) = (i64::MAX, i64::MIN);
        for &(id, p) in points {
            let key = [axis_key(p[0], cell[0]), axis_key(p[1], cell[1])];
            col_lo = col_lo.min(key[0]);
            col_hi = col_hi.max(key[0]);
            map.entry(key).or_insert_with(Vec::new).push(id);
        }
        PointBuckets2 {
            map,
            col_lo,
            col_hi,
        }
    }

    pub fn get(&self, key: [i64; 2]) -> &[u32] {
        self.map.get(&key).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// Point buckets on a sparse 3D grid.
pub struct PointBuckets3 {
    pub map: CellMap<[i64; 3], Vec<u32>>,
    pub lo: [i64; 3],
    pub hi: [i64; 3],
}

impl PointBuckets3 {
    pub fn build(points: &[(u32, [f64; 3])], cell: [f64; 3]) -> Self {
        let mut map = cell_map();
        let mut lo = [i64::MAX; 3];
        let mut hi = [i64::MIN; 3];
        for &(id, p) in points {
            let key = std::array::from_fn(|a| axis_key(p[a], cell[a]));
            for a in 0..3 {
                lo[a] = lo[a].min(key[a]);
                hi[a] = hi[a].max(key[a]);
            }
            map.entry(key).or_insert_with(Vec::new).push(id);
        }
        PointBuckets3 { map, lo, hi }
    }

    pub fn get(&self, key: [i64; 3]) -> &[u32] {
        self.map.get(&key).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// Row spans of the cells a circle (curve) touches on a 0-anchored square
/// grid, restricted to `[col_lo, col_hi]`: up to two spans per column (the
/// two arc branches), entries `(col, row_lo, row_hi)`.
pub fn circle_touch_spans(
    center: [f64; 2],
    r: f64,
    cell: f64,
    col_lo: i64,
    col_hi: i64,
) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    let (lo, hi) = axis_touch(center[0] - r, center[0] + r, cell);
    for col in lo.max(col_lo)..=hi.min(col_hi) {
        let x0 = (col as f64 * cell).max(center[0] - r);
        let x1 = ((col + 1) as f64 * cell).min(center[0] + r);
        if x0 > x1 {
            continue;
        }
        let h0 = (r * r - (x0 - center[0]) * (x0 - center[0]))
            .max(0.0)
            .sqrt();
        let h1 = (r * r - (x1 - center[0]) * (x1 - center[0]))
            .max(0.0)
            .sqrt();
        let apex = x0 <= center[0] && center[0] <= x1;
        let hi_h = if apex { r } else { h0.max(h1) };
        let lo_h = h0.min(h1);
        let upper = axis_touch(center[1] + lo_h, center[1] + hi_h, cell);
        let lower = axis_touch(center[1] - hi_h, center[1] - lo_h, cell);
        if lower.1 >= upper.0 {
            out.push((col, lower.0, upper.1));
        } else {
            out.push((col, upper.0, upper.1));
            out.push((col, lower.0, lower.1));
        }
    }
    out
}

/// Dual-stage bucket grid in 2D: dual points bucketed by cell. Dual lines
/// sweep the full column range (one pass over the dual rectangle per
/// dual line), so the probe counter scales as the
/// two-stage overhead bound and not with occupancy.
pub struct DualBuckets2 {
    pub map: CellMap<[i64; 2], Vec<u32>>,
    pub col_lo: i64,
    pub col_hi: i64,
}

impl DualBuckets2 {
    pub fn build(duals: &[(u32, [f64; 2])], cell: [f64; 2]) -> Self {
        let mut map = cell_map();
        let (mut col_lo, mut col_hi) = (i64::MAX, i64::MIN);
        for &(id, p) in duals {
            let key = [axis_key(p[0], cell[0]), axis_key(p[1], cell[1])];
            col_lo = col_lo.min(key[0]);
            col_hi = col_hi.max(key[0]);
            map.entry(key).or_insert_with(Vec::new).push(id);
        }
        DualBuckets2 {
            map,
            col_lo,
            col_hi,
        }
    }

    pub fn get(&self, key: [i64; 2]) -> &[u32] {
        self.map.get(&key).map(Vec::as_slice).unwrap_or(&[])
    }
}
