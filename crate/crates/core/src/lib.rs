//! Degree sequences of 3-uniform hypergraphs.
//!
//! Constructive realization of dense sequences through hinge flips and
//! critical hypergraphs, the threshold function bounding the guaranteed
//! interval, the embedding reduction for relaxed classes, an exhaustive
//! oracle for small instances and non-graphic certificates for large t.

pub mod asymptotic;
pub mod binom;
pub mod critical;
pub mod error;
pub mod exact;
pub mod hingeflip;
pub mod hypergraph;
pub mod io;
pub mod oracle;
pub mod partition;
pub mod realize;
pub mod reduction;
pub mod sequence;
pub mod threshold;

pub use error::{Error, Result};
pub use hypergraph::{Edge, Hypergraph3, Vertex};
pub use sequence::DegreeSequence;
