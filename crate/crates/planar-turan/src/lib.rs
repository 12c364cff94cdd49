//! Extremal planar graphs avoiding quasi-double stars.
//!
//! A quasi-double star `W(h, k)` is the tree obtained from a path on three
//! vertices by attaching `h` leaves to one endpoint and `k` to the other.
//! This crate constructs dense planar `W(h, k)`-free graphs, evaluates the
//! associated edge-count bounds exactly, computes the precise maximum for
//! small vertex counts by isomorph-free exhaustive search, and property-tests
//! the structural facts that drive the bounds. Graphs interchange as graph6;
//! results ship as self-verifying JSON certificates.
//!
//! The search and suite internals are data-parallel via rayon when the
//! default `parallel` feature is on; disabling it yields an equivalent
//! sequential build.

pub mod bitset;
pub mod canon;
pub mod certificate;
pub mod constructions;
pub mod enumerate;
pub mod graph;
pub mod graph6;
pub mod lemmas;
pub mod oracle;
pub mod patterns;
pub mod planarity;
pub mod search;

pub use canon::{canonical_form, canonical_labeling, CanonicalForm};
pub use certificate::{Certificate, Provenance};
pub use constructions::{
    best_witness, block_union_witness, bounds_for, icosa_union_witness, BoundSpec,
};
pub use graph::{DegreeCensus, Graph, GraphBuilder};
pub use patterns::{
    contains_subgraph_oracle, contains_w, contains_w_witness, is_free, CaterpillarSpec,
    PatternSpec,
};
pub use planarity::{euler_filter, icosahedron, is_planar, maximal_planar, EulerVerdict};
pub use search::{exact_ex, Engine, SearchOptions, SearchResult};

/// Exact rational used for all bound arithmetic.
pub type Rational = num_rational::Rational64;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {vertex} not allowed")]
    SelfLoop { vertex: usize },

    #[error("disjoint union of an empty list")]
    EmptyUnion,

    #[error("need at least {needed} vertices, got {got}")]
    TooFewVertices { needed: usize, got: usize },

    #[error("graph on {got} vertices exceeds the supported maximum {max}")]
    GraphTooLarge { got: usize, max: usize },

    #[error("pattern on {got} vertices exceeds the oracle maximum {max}")]
    PatternTooLarge { got: usize, max: usize },

    #[error("pattern W({h},{k}) outside the supported range 1 <= h <= 2 <= k <= 5")]
    UnsupportedPattern { h: usize, k: usize },

    #[error("vertex count {n} is not divisible by the block size {block}")]
    DivisibilityViolated { n: usize, block: usize },

    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6Parse { offset: usize, reason: String },

    #[error("certificate invalid: {reason}")]
    CertificateInvalid { reason: String },

    #[error("instance generation failed: {reason}")]
    GenerationFailed { reason: String },

    #[error("inconsistent parameters: {reason}")]
    InconsistentParams { reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
