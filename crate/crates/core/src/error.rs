use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not unimodular (det = {det})")]
    NotUnimodular { det: BigInt },

    #[error("linear system is singular")]
    Singular,

    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),

    #[error("polytope is unbounded: {0}")]
    Unbounded(String),

    #[error("polytope is empty")]
    Empty,

    #[error("polytope is not simple: vertex {vertex} lies on facets {facets:?}")]
    NotSimple { vertex: String, facets: Vec<usize> },

    #[error("facet {facet} is redundant (it does not support a face of codimension one)")]
    RedundantFacet { facet: usize },

    #[error("polytope is not Delzant: vertex {vertex} has det {det}")]
    NotDelzant { vertex: String, det: BigInt },

    #[error("vector {u:?} is not generic: pairing with weight at vertex {vertex} vanishes")]
    NotGeneric { u: Vec<i64>, vertex: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid partition: {0}")]
    Partition(String),

    #[error("parity error: {0}")]
    Parity(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}
