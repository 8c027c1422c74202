//! Output-sensitive reporting of approximate incidences between points and
//! geometric objects (lines, planes, circles, spheres) in 2D and 3D.
//!
//! An incidence at tolerance `eps` is a (point, object) pair at Euclidean
//! distance at most `eps`. Every algorithm in this crate reports *all* such
//! pairs and may report extra pairs, each guaranteed to lie within a small
//! multiple of `eps` of its object. Raw grid candidates are always re-checked
//! against exact distances, so callers can ask for the exact filtered set,
//! the candidate set, or just a count.
//!
//! The fast paths combine a coarse uniform grid in primal space with a second
//! coarse grid in a per-cell dual space, which beats the naive
//! one-fine-grid scheme (also provided, in [`baseline`]) whenever the input
//! is large and the tolerance small.
//!
//! With the default `parallel` feature, independent subproblems (grid cells,
//! arc/cap orientations, sectors) run on rayon; results are merged by sorting
//! so output is deterministic either way.

pub mod baseline;
pub mod error;
mod exec;
pub mod gen;
pub mod geom;
pub mod grid;
pub mod metrics;
pub mod pairs;
pub mod plan;
pub mod planar;
pub mod spatial;
pub mod triangles;

pub use error::{BudgetError, ParamError};
pub use metrics::RunMetrics;
pub use pairs::{IncidencePair, Mode, Report};
