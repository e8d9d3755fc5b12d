//! Finite permutation groups materialized under an order cap.

mod abelian;
mod algo;
mod construct;
pub mod corpus;
mod group;
mod perm;
mod quotient;

use thiserror::Error;

pub use abelian::AbelianType;
pub use algo::{MinGenerators, MinimalNormal, SimpleFactor};
pub use construct::{
    direct_power, direct_product, heisenberg, heisenberg_product, semidirect, semidirect_by_conjugation,
    Semidirect,
};
pub use group::{PermGroup, DEFAULT_CAP};
pub use perm::Perm;
pub use quotient::QuotientGroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group order exceeds the cap {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("search bound exceeded: {0}")]
    CapExceeded(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("not a subgroup")]
    NotSubgroup,
    #[error("action does not define a homomorphism into Aut(H)")]
    ActionNotHomomorphic,
    #[error("orders must be powers of a single prime: {0}")]
    NotPGroup(String),
    #[error("invalid permutation: {0}")]
    InvalidPerm(String),
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
