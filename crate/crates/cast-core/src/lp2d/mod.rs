//! Low-dimensional linear feasibility and half-plane intersection.
//!
//! Two engines over the same constraint type:
//!
//! * [`feasible_point`] - randomized incremental feasibility in expected
//!   linear time, returning either an exact feasible point or an
//!   infeasibility witness of at most three constraints.
//! * [`intersect_halfplanes`] / [`intersect_sorted_halfplanes`] - the exact
//!   intersection of closed half-planes as an explicit
//!   [`ConvexRegion`](crate::direction_space::ConvexRegion),
//!   including every degenerate shape the intersection can take. The sorted
//!   variant runs in a linear number of primitive operations when the
//!   constraints arrive ordered by boundary angle.

mod feasibility;
mod intersect;

pub use feasibility::{feasible_point, Feasibility, LpError};
pub use intersect::{angle_cmp, intersect_halfplanes, intersect_sorted_halfplanes, NotSorted};
