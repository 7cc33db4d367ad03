//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by lattice construction, classification, and verification.
#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate element `{name}`")]
    DuplicateElement { name: String },

    #[error("cover relation creates a cycle through `{lo}` <= `{hi}`")]
    CycleDetected { lo: String, hi: String },

    #[error("cover `{lo}` < `{hi}` is implied by the other covers")]
    RedundantCover { lo: String, hi: String },

    #[error("unknown element `{name}`")]
    UnknownElement { name: String },

    #[error("poset has no unique minimum")]
    NoUniqueMinimum,

    #[error("poset has {count} elements, more than the supported maximum of {max}")]
    TooManyElements { count: usize, max: usize },

    #[error("size limit exceeded: {detail}")]
    SizeLimitExceeded { detail: String },

    #[error("chain factor must be at least 1, got {factor}")]
    InvalidChainFactor { factor: usize },

    #[error("not a lattice: elements `{x}` and `{y}` have no {bound}")]
    NotALattice { x: String, y: String, bound: String },

    #[error(
        "not distributive: ({x} v {y}) ^ {z} != ({x} ^ {z}) v ({y} ^ {z})"
    )]
    NotDistributive { x: String, y: String, z: String },

    #[error("lattice is not a product of chains")]
    NotSquare,

    #[error("`{name}` is not a maximal proper join-irreducible")]
    NotMaximalJoinIrreducible { name: String },

    #[error("join-irreducible `{name}` has no unique predecessor in the join-irreducible poset")]
    NoUniquePredecessor { name: String },

    #[error("coordinate point value must be nonzero")]
    ZeroCoordinateValue,

    #[error(
        "internal consistency failure: rank {rank} exceeds codimension {codim} at point `{point}`"
    )]
    RankExceedsCodim { point: String, rank: usize, codim: usize },

    #[error("smoothness oracles disagree at `{point}`: jacobian says {jacobian_smooth}, polytope says {polytope_smooth}")]
    OracleDisagreement { point: String, jacobian_smooth: bool, polytope_smooth: bool },

    #[error("edge criteria disagree on vertex pair ({u}, {v})")]
    CriterionMismatch { u: String, v: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
