//! Exact GIT chamber decompositions for crepant partial resolutions of ADE
//! surface singularities.
//!
//! The pipeline: a [`knitting::Configuration`] of retained curves is mutated
//! one summand at a time; each exchange sequence comes from knitting on the
//! AR quiver ([`knitting::knit`]), each mutation is tracked back to the
//! original stability space ([`mutation::mutate`]), and the breadth-first
//! closure of all mutations yields every chamber
//! ([`chambers::enumerate_chambers`]). The root hyperplane arrangement
//! restricted to the retained coordinates ([`arrangement`]) is an
//! independent check on the result.

pub mod arrangement;
pub mod chambers;
pub mod cli;
pub mod dynkin;
pub mod error;
pub mod knitting;
pub mod linalg;
pub mod mutation;
pub mod rational;

pub use arrangement::{count_regions, restricted_walls, sign_vectors, RestrictedArrangement};
pub use chambers::{enumerate_chambers, Bounds, Chamber, ChamberStructure};
pub use dynkin::{induced_dual_graph, positive_roots, DynkinDiagram, DynkinType, Family, RootVector, Vertex};
pub use error::{Error, ErrorKind, Result};
pub use knitting::{knit, knit_trace, Configuration, ExchangeData, KnitTrace};
pub use linalg::{Covector, IntMatrix};
pub use mutation::{mutate, nu_beta, nu_theta, pairing, DimensionVector, MutationState, StabilityVector};
