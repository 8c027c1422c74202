//! Candidate pair bookkeeping: deduplication, exact-distance filtering, and
//! the compact bipartite-cover output form.

use crate::exec;
use crate::metrics::RunMetrics;

/// One reported (point, object) pair. The distance is always recomputed
/// from the original coordinates, never inherited from grid reasoning.
/// `tag` identifies the subproblem that first emitted the pair
/// (its meaning is algorithm-specific: primal cell, arc, direction, ...).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IncidencePair {
    pub point: u32,
    pub object: u32,
    pub distance: f64,
    pub tag: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Deduplicated raw grid candidates with exact distances.
    Candidates,
    /// Exactly the pairs at distance <= eps.
    Filtered,
    /// |Filtered| without materializing the pair list.
    Count,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub pairs: Vec<IncidencePair>,
    pub count: u64,
    pub metrics: RunMetrics,
}

/// Raw emissions from the grid stages: (point index, object index, tag).
pub(crate) type Emit = (u32, u32, u64);

/// Sort, dedupe (keeping the smallest tag), attach exact distances, filter
/// per mode. Deterministic final order: (point, object).
pub(crate) fn finalize(
    mut emits: Vec<Emit>,
    eps: f64,
    mode: Mode,
    mut metrics: RunMetrics,
    dist: impl Fn(u32, u32) -> f64 + Sync,
) -> Report {
    metrics.candidates_raw += emits.len() as u64;
    exec::sort(&mut emits);
    emits.dedup_by_key(|e| (e.0, e.1));
    metrics.candidates += emits.len() as u64;

    let pairs: Vec<IncidencePair> = exec::map_collect(&emits, |&(p, o, tag)| IncidencePair {
        point: p,
        object: o,
        distance: dist(p, o),
        tag,
    });
    let mut max_ratio: f64 = 1.0;
    if eps > 0.0 {
        for pr in &pairs {
            max_ratio = max_ratio.max(pr.distance / eps);
        }
    }
    metrics.max_distortion = metrics.max_distortion.max(max_ratio);

    let filtered_count = pairs.iter().filter(|p| p.distance <= eps).count() as u64;
    metrics.filtered += filtered_count;
    match mode {
        Mode::Candidates => {
            let count = pairs.len() as u64;
            Report {
                pairs,
                count,
                metrics,
            }
        }
        Mode::Filtered => {
            let pairs: Vec<_> = pairs.into_iter().filter(|p| p.distance <= eps).collect();
            Report {
                count: pairs.len() as u64,
                pairs,
                metrics,
            }
        }
        Mode::Count => Report {
            pairs: Vec::new(),
            count: filtered_count,
            metrics,
        },
    }
}

/// Compact output form: complete bipartite blocks (points x objects) whose
/// union of products is exactly the candidate multiset.
#[derive(Debug, Clone, Default)]
pub struct BipartiteCover {
    pub blocks: Vec<(Vec<u32>, Vec<u32>)>,
    pub metrics: RunMetrics,
}

impl BipartiteCover {
    pub fn n_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn expanded_size(&self) -> u64 {
        self.blocks
            .iter()
            .map(|(p, o)| (p.len() * o.len()) as u64)
            .sum()
    }

    /// Every (point, object) pair of every block, sorted with multiplicity.
    pub fn expand_multiset(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.expanded_size() as usize);
        for (ps, os) in &self.blocks {
            for &p in ps {
                for &o in os {
                    out.push((p, o));
                }
            }
        }
        out.sort_unstable();
        out
    }
}
