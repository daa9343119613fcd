//! Exact combinatorics for the branching laws of the diagonal Lie algebras
//! `sl(n^∞)`, `sp(n^∞)` and `so(n^∞)`: branching matrices, their quivers,
//! `K_0` data of the associated Bratteli diagrams, and point modules.

pub mod branching;
pub mod characters;
pub mod dimension;
pub mod error;
pub mod golden;
pub mod ktheory;
pub mod lr;
pub mod partitions;
pub mod points;
pub mod quiver;

pub use error::{Error, Result};
pub use partitions::{Partition, PartitionPair};
