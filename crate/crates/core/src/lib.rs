//! Exact construction, enumeration and certification of Tverberg partitions.
//!
//! A Tverberg partition of `X ⊂ Q^d` splits the points into `r` disjoint blocks
//! whose convex hulls share a point. This crate builds the point sets of
//! [`construction`], on which every Tverberg partition is forced to have
//! prescribed block sizes and the origin as its only Tverberg point, and checks
//! those properties against a brute-force oracle that solves one exact linear
//! program per set partition.
//!
//! All arithmetic is over arbitrary-precision rationals. With the default
//! `parallel` feature the brute-force loops run on rayon's thread pool; results
//! are sorted afterwards so output never depends on the worker count.

pub mod closed_form;
pub mod construction;
pub mod error;
pub mod hull;
pub mod lp;
pub mod par;
pub mod partition;
pub mod rational;
pub mod shift;
pub mod sierksma;
pub mod tverberg;
pub mod verify;

pub use closed_form::{closed_form_partitions, incidence_profile, BijectionTuple, IncidenceProfile};
pub use construction::{
    build_multiset_point_set, build_point_set, perturb, tverberg_number, validate_parts, ConstructionSpec, Label,
    PointSet, Violation,
};
pub use error::{Error, Result};
pub use hull::{hull_membership, hulls_common_point, CommonPoint, Membership, Point};
pub use lp::{optimize_linear, solve_feasibility, Direction, Feasibility, FeasibilitySystem, LinearOptimum};
pub use par::Execution;
pub use partition::{enumerate_set_partitions, Partition, DEFAULT_CAP};
pub use rational::Rational;
pub use shift::{caratheodory_shift, ShiftOutcome};
pub use sierksma::{sierksma_report, SierksmaReport};
pub use tverberg::{brute_force_tverberg_partitions, is_tverberg, tverberg_point_set_bounds, TverbergCertificate};
pub use verify::{verify_point_set, verify_theorem1, Clause, Report};
