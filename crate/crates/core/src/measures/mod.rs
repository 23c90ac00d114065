//! Scalar measurements on surface data: circle lengths and their convexity
//! in `t = ln r`, level curves and their lengths, slab areas, total
//! curvature, and the closed-form catenoid comparisons.

mod area;
mod catenoid;
mod length;
mod level;

pub use area::{slab_area, total_curvature, RADIAL_TOL};
pub use catenoid::{
    catenoid_level_length, catenoid_slab_area, coth_fixed_point, marginally_stable_waist, CatenoidParams,
};
pub use length::{
    circle_length, circle_length_closed, circle_length_dd, circle_length_dd_fd, convexity_report, length_profile,
    CircleLengthProfile, ConvexityReport, DefectRange, ProfileSample, FD_STEP,
};
pub use level::{level_radius, trace_level, waist_height, Crossing, LevelCurve, LevelNode, MERGE_TOL};
