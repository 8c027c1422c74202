use thiserror::Error;

/// Rejected input parameters. Every public reporting routine validates its
/// arguments before touching any geometry.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("epsilon {value} outside ({lo}, {hi}]")]
    Epsilon { value: f64, lo: f64, hi: f64 },
    #[error("radius {value} outside (0, {hi}]")]
    Radius { value: f64, hi: f64 },
    #[error("epsilon {eps} too large for radius {radius}: require eps <= radius/{divisor}")]
    EpsilonVsRadius { eps: f64, radius: f64, divisor: f64 },
    #[error("radius band [{lo}, {hi}] must satisfy eps <= lo <= 1/2 <= hi")]
    RadiusBand { lo: f64, hi: f64 },
    #[error("circle {index} has radius {found}, expected the common radius {expected}")]
    MixedRadii {
        index: usize,
        found: f64,
        expected: f64,
    },
    #[error("circle {index} has radius {found} outside the declared band [{lo}, {hi}]")]
    RadiusOutsideBand {
        index: usize,
        found: f64,
        lo: f64,
        hi: f64,
    },
    #[error("point {index} lies outside the [-1,1] domain box")]
    PointOutOfDomain { index: usize },
    #[error("non-finite coordinate in input {index}")]
    NonFinite { index: usize },
    #[error("sides u={u} v={v} w={w} do not form a (strict) triangle")]
    DegenerateTriangle { u: f64, v: f64, w: f64 },
    #[error("triangle query violates the fatness contract: {reason}")]
    TriangleFatness { reason: &'static str },
    #[error("coincident pair endpoints")]
    CoincidentPoints,
    #[error("object kind not supported by this algorithm")]
    UnsupportedKind,
}

/// The brute-force oracles refuse workloads past a fixed budget so a typo in
/// a benchmark config cannot silently schedule an hour-long scan.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("oracle budget exceeded: requires {work} elementary checks, budget {budget}")]
pub struct BudgetError {
    pub work: u128,
    pub budget: u128,
}
