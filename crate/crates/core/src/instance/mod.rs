//! Hidden embeddings, the geometric graphs and ordering oracles built from
//! them, and their on-disk text formats.

mod embedding;
mod graph;
pub mod io;
mod ordering;

pub use embedding::{sample_embedding, Embedding};
pub use graph::{build_graph, GeometricGraph};
pub use ordering::{build_ordering_oracle, OrderingOracle};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("need at least {min} vertices, got {n}")]
    TooFewVertices { n: usize, min: usize },
    #[error("expected {expected} points, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("vertex {vertex}: point ({x}, {y}) is not a finite point of the square")]
    PointOutside { vertex: usize, x: f64, y: f64 },
    #[error("invalid edge ({0}, {1})")]
    BadEdge(usize, usize),
    #[error("ordering of vertex {vertex} is not a permutation starting at itself")]
    BadOrdering { vertex: usize },
    #[error("threshold distance must be positive and finite, got {0}")]
    BadThreshold(f64),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
