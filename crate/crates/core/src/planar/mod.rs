//! The four planar reporting algorithms: point-line, congruent pairs by
//! annulus sectors, congruent pairs by polar duality, and arbitrary circles
//! by power-of-a-point lifting.

pub mod circles;
pub mod congruent;
pub mod point_line;

pub(crate) mod sparse;
