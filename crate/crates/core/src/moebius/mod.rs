//! Moebius transformations and generalized disks of the Riemann sphere.

mod disk;
mod matrix;
pub mod predicates;

pub use disk::{
    conjugate_matrix_by_j, conjugate_region_by_j, mobius_disk, mobius_point, negate_point, negate_region,
    region_symmetric_about_origin, ExtPoint, GenDisk, Openness, Region,
};
pub use matrix::{apply_word, make_generators, Generators, IntervalMatrix2, Matrix2};
pub use predicates::{disk_in_region, region_subset, regions_disjoint, SignPolicy};
