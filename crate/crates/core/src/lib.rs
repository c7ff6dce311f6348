//! Recovering the hidden positions of a uniform random point set in a square,
//! up to the square's symmetries, from either its geometric graph or the
//! distance orderings seen from every vertex.
//!
//! The two pipelines are [`graph_reconstruct::reconstruct_from_graph`] and
//! [`order_reconstruct::reconstruct_from_orders`]. Instances are sampled
//! and serialized by [`instance`]; [`harness`] scores reconstructions and
//! runs seeded batches of trials.

pub mod geometry;
pub mod graph_reconstruct;
pub mod harness;
pub mod instance;
pub mod order_reconstruct;
pub mod placement;

pub use geometry::{Point, SquareDomain, SquareSymmetry};
pub use instance::{Embedding, GeometricGraph, OrderingOracle};
pub use placement::{PlacementCase, ReconstructError, ReconstructionResult, VertexPlacement};
