//! Coordinates and curve topology on the pillowcase orbifold, the character
//! variety of the 2-torus.
//!
//! A point is a pair of holonomy angles `(α, β)` modulo `(α, β) ~ (−α, −β)`
//! and `2π` translations, stored in the canonical fundamental domain
//! `[0, π] × [0, 2π)`.

mod error;
pub mod export;
mod gluing;
mod involution;
mod point;
mod polyline;

pub use error::PillowcaseError;
pub use gluing::{transform_by_matrix, GluingMatrix};
pub use involution::{apply_involution, is_prime, Involution};
pub use point::{canonicalize, wrap_pi, PillowcasePoint, ANGLE_TOL, P, Q, TWO_PI};
pub use polyline::{
    essential_class, polyline_intersections, segment_intersections, segment_lpi_crossings, Intersection,
    PillowcasePolyline, Segment,
};
