//! Single-part mold castability analysis for polyhedra.
//!
//! Given a closed polyhedral solid, this crate decides whether the solid can
//! be cast in a one-piece mold and removed by a single translation. It reports
//! every facet that can serve as the mold opening ("top facet") together with
//! one pull-out direction (`all_fsd`) or the full convex cone of pull-out
//! directions (`all_fad`). For convex input a linear-time path is available
//! (`convex_all_fad`).
//!
//! All geometric decisions are made in exact rational arithmetic; floating
//! point appears only in reporting (rotation matrices, plot data).

pub mod casting;
pub mod direction_space;
pub mod fixtures;
pub mod kernel;
pub mod lp2d;
pub mod mesh;
pub mod oracle;
pub mod report;
mod rng;

pub use casting::{all_fad, all_fsd, convex_all_fad, covering_set, single_fad, single_fsd};
pub use casting::{CastError, CastResult, CoveringSet};
pub use direction_space::{ConvexRegion, DirectionCone, HalfPlane, Point2};
pub use kernel::{Basis, Scalar, Vec3};
pub use mesh::{Facet, MeshError, Polyhedron};
