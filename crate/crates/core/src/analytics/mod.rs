//! Hull types, hull 2-dimension counts, codes sharing a hull, and the
//! average hull 2-dimension.

mod average;
mod bitset;
mod counting;
mod fibers;
mod types;

pub use average::{
    average_dim2, check_bounds, expectation_checks, BoundsReport, Expectations, Rational,
};
pub use counting::{count_by_dim2, DimCountTable};
pub use fibers::{
    codes_with_hull, codes_with_profile, HullProfile, PairExponents, SelfRecExponents,
};
pub use types::{
    flatten, hull_dim2_set, hull_type_set, hull_type_set_by_profiles, TypeProfile, TypeSet,
};
