//! Conversion of multi-resolution connectivity networks into
//! single-resolution ones, plus the network metrics used to compare them.
//!
//! A multi-resolution network reports edges both at leaves and at internal
//! vertices of an accompanying hierarchy. [`resolution`] offers three ways
//! to move all connectivity onto leaves of an output hierarchy:
//!
//! - [`resolution::inherit`]: every descendant leaf inherits the
//!   connectivity of its ancestors.
//! - [`resolution::disinherit`]: connectivity-bearing ancestors absorb their
//!   descendants, which are pruned from the hierarchy.
//! - [`resolution::kron_sampling`]: each input edge is represented by one
//!   leaf-level edge, chosen using effective resistances of the Kron-reduced
//!   graph and inherited report counts.
//!
//! [`metrics`] computes summary statistics, centralities and a degree
//! distribution fit for any [`Graph`].

pub mod error;
pub mod graph;
pub mod metrics;
pub mod resolution;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{
    anchor, classify, load_dataset, load_graph, load_hierarchy, write_edge_list, write_hierarchy,
    Edge, Graph, GraphBuilder, Hierarchy, VertexClassification, VertexId, VertexTable,
};
pub use spectral::UndirectedGraph;
pub use metrics::{
    centrality_suite, degree_fit, metrics_report, top_k, CentralityMetric, CentralityOptions,
    CentralityTable, DegreeFit, MetricsReport,
};
pub use resolution::{KronSamplingOptions, Method, ResolutionResult};
