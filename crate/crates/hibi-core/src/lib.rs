//! Finite distributive lattices, their Hibi relations, and exact smoothness
//! checks for the associated lattice varieties.
//!
//! A finite distributive lattice is represented by the poset of its proper
//! join-irreducible elements; lattice elements are the order ideals of that
//! poset, join is union, and meet is intersection. On top of that
//! representation the crate provides:
//!
//! * enumeration of the diamond sublattices and the binomial generators of
//!   the Hibi ideal,
//! * an exact (arbitrary precision, no floating point) Jacobian rank test
//!   deciding smoothness of the lattice variety at every coordinate point,
//! * an independent toric oracle based on vertex cones of the order polytope,
//! * structural classification (tree lattices, honest lattices, products of
//!   chains) together with pruning and the bijection/counting lemmas that
//!   drive the smoothness results,
//! * a verification harness that sweeps exhaustive and randomized lattice
//!   families and re-checks every claim on each member.

pub mod classify;
pub mod diamonds;
pub mod error;
pub mod exact;
pub mod export;
pub mod harness;
pub mod lattice;
pub mod polytope;
pub mod poset;
pub mod smooth;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::Error;
pub use lattice::Lattice;
pub use poset::{OrderIdeal, Poset, PosetSpec};

/// Convenient result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
