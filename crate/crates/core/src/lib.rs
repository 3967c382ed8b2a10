//! Tools for bounding the bipartization distance `D₂` of triangle-free graphs.
//!
//! The crate is split into four layers:
//!
//! * [`graphs`]: a bit-matrix graph kernel with graph6 I/O, canonical labeling,
//!   enumeration up to isomorphism and an exact `D₂` oracle.
//! * [`cuts`]: randomized bipartitions rooted at a fixed induced subgraph, with
//!   exact expected-removal accounting, sampling and derandomization.
//! * [`flags`]: flag expressions generated from rooted cuts, SDP assembly, SDPA
//!   output and exact certificate checking.
//! * [`bounds`]: closed-form bounds, min-degree peeling and C₅ blow-up analysis.

pub mod bounds;
pub mod cuts;
pub mod error;
pub mod flags;
pub mod graphs;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Q;
