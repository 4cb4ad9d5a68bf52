//! Exact-arithmetic analysis of set functions over small finite ground sets.
//!
//! A [`SetFunction`] is stored as a dense table of `2^n` rationals indexed by
//! subset bitmasks. On top of that table the crate provides:
//!
//! * submodularity, monotonicity and modularity predicates with witnesses,
//! * alternating sums and the (weak) `k`-alternating hierarchy ([`alternating`]),
//! * the coverage basis `phi_A` and coefficient transforms ([`coverage`]),
//! * upper/lower bounding charges and duals ([`charges`]),
//! * an exact rational simplex and optimal monotonic decompositions ([`lp`]),
//! * weighted (hyper)graph cut functions, max-cut and triangle/clique LPs ([`graphs`]).
//!
//! No floating point is used anywhere.

pub mod alternating;
pub mod charges;
pub mod coverage;
mod error;
pub mod graphs;
pub mod lp;
pub mod rational;
mod set;
mod setfn;

pub use crate::error::{Error, Result};
pub use crate::rational::Rational;
pub use crate::set::{GroundSet, Partition, SubsetMask, MAX_GROUND_SIZE};
pub use crate::setfn::{LocalWitness, SetFunction, StepWitness};
