//! Double traces of graphs, the strong and `d`-stable ones among them, and
//! their correspondence with 1-face embeddings on (non)orientable surfaces.
//!
//! The central objects are:
//!
//! - [`Graph`]: a simple connected graph with stable vertex and edge ids.
//! - [`Embedding`]: a rotation system plus an edge signature, with face tracing.
//! - [`DoubleTrace`]: a closed walk covering every edge twice, with its vertex
//!   figures, repetitions and edge directions.
//!
//! Constructions live in [`synthesis`]; every one of them either returns a
//! verified object or a structured reason why none exists.

pub mod budget;
pub mod embedding;
pub mod fixtures;
pub mod graph;
pub mod synthesis;
pub mod trace;
pub mod walk;

pub use budget::{Budget, BudgetExceeded, Resource};
pub use embedding::{embedding_from_walks, Embedding, EmbeddingError, FacialWalk, Sign, SurfaceDescriptor};
pub use graph::{parse_graph, EdgeId, Graph, GraphError, SpanningTree, Vertex};
pub use trace::{
    parse_trace, validate_double_trace, DoubleTrace, EdgeTag, Stability, TraceError, TraceReport, VertexFigure,
};
pub use synthesis::{ConstructionCertificate, Convention, EnumerationOptions, EnumerationResult, SynthesisError};
pub use walk::Step;
