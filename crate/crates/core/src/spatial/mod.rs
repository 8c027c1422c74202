//! The four spatial reporting algorithms: point-plane, congruent pairs via
//! cap directions, point-line via a four-dimensional duality, and
//! point-congruent-circle via torus sectors and slabs.

pub mod congruent;
pub mod point_circle;
pub mod point_line;
pub mod point_plane;
