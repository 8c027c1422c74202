use std::time::Duration;

/// Work counters reported with every run. Wall-clock time is informational;
/// the machine-independent performance signal is `cells_visited`, which
/// counts every (object, grid cell) crossing or probe event across all
/// primal and dual stages. Point bucketing is linear input work and is not
/// counted.
#[derive(Debug, Clone, Default)]
pub struct RunMetrics {
    pub cells_visited: u64,
    /// Pair emissions before deduplication.
    pub candidates_raw: u64,
    /// Distinct candidate pairs.
    pub candidates: u64,
    /// Distinct pairs passing the exact distance test.
    pub filtered: u64,
    /// Largest exact distance among candidates divided by eps, floored at 1.
    pub max_distortion: f64,
    pub elapsed: Duration,
}

impl RunMetrics {
    pub fn absorb(&mut self, other: &RunMetrics) {
        self.cells_visited += other.cells_visited;
        self.candidates_raw += other.candidates_raw;
        self.candidates += other.candidates;
        self.filtered += other.filtered;
        self.max_distortion = self.max_distortion.max(other.max_distortion);
        self.elapsed += other.elapsed;
    }

    /// Raw emissions per distinct candidate (1.0 when nothing was emitted).
    pub fn dup_factor(&self) -> f64 {
        if self.candidates == 0 {
            1.0
        } else {
            self.candidates_raw as f64 / self.candidates as f64
        }
    }
}
