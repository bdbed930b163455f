//! The planar subalgebra `Q` of the `(ℓ,ε)`-cabled spin planar algebra
//! generated by a `{0,ℓ}`-biunitary, computed level by level.

pub mod cabling;
pub mod closure;
pub mod group;
pub mod level;
pub mod membership;
pub mod staircase;

pub use cabling::CablingData;
pub use closure::{extract_partner_y, reconstruct_from_partner, verify_planar_closure, ClosureReport};
pub use group::GroupTable;
pub use level::{
    check_resources, construct, q_level, BuildOptions, DimensionReport, LevelSummary, PlanarSubalgebra, QLevelResult,
    DEFAULT_KERNEL_TOLERANCE, DEFAULT_ROW_CAP,
};
pub use membership::MembershipOperator;
pub use staircase::Staircase;
