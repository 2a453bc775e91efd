//! Floating-point checks of the symplectic and toy-model formulas, and the
//! link diagrams whose region counts feed the category models.
//!
//! Coordinates on `M = C^3` are `(x_1, y_1, x_2, y_2, x_3, y_3)`. The torus
//! `K` and the disk `D` are parametrized by [`AngleTriple`]s with `θ3 = -θ1 - θ2`.

pub mod angles;
pub mod config;
pub mod double_points;
pub mod forms;
pub mod link;
pub mod numeric;
pub mod polyline;
pub mod skeleton;
pub mod suite;
pub mod surface;
pub mod toy;
pub mod voxel;

pub use angles::AngleTriple;
pub use config::GeomConfig;
pub use double_points::{double_point_report, DoublePoint, DoublePointReport};
pub use link::{link_point, stereographic, trefoil_polyline};
pub use polyline::{polyline_crossings, region_count_2d, CrossingReport, Polyline2, RegionCount};
pub use suite::{verify_geometry, Check, GeometryReport};
pub use skeleton::{fiber_primitive_defect, lagrangian_defect, SkeletonPoint};
pub use surface::{jacobian_rank_profile, JacobianProfile, ParamDomain, SurfaceMap};
pub use toy::{toy_property_defects, ToyDefects};
pub use voxel::{count_link_components, link_regions_3d, LinkRegions, VoxelGrid};

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("degenerate skeleton point (r <= 0)")]
    DegeneratePoint,
    #[error("direction has a nonzero dx component")]
    NotFiberDirection,
    #[error("parameter outside the domain of the map")]
    OutsideDomain,
    #[error("no root: all cosines nearly vanish")]
    NoRoot,
    #[error("point is the projection center")]
    AtCenter,
    #[error("root finding failed: {0}")]
    RootFindFailure(String),
    #[error("two crossings closer than tolerance; resolution too low")]
    DegenerateCrossing,
    #[error("region counts unstable under refinement: {coarse:?} vs {fine:?}")]
    ResolutionTooLow {
        /// `(total, bounded)` at the base resolution.
        coarse: (usize, usize),
        /// `(total, bounded)` at double resolution.
        fine: (usize, usize),
    },
    #[error("degenerate polyline: {0}")]
    DegeneratePolyline(String),
}
