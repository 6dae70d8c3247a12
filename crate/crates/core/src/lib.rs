//! Covering radii of the 2-transitive permutation groups of Lie rank one.

pub mod actions;
pub mod bounds;
pub mod field;
pub mod geometry;
pub mod linalg;
pub mod perm;
pub mod report;
