//! Primitive ideal spaces of graph algebras, computed from the graph.
//!
//! A [`Graph`] has finitely many vertices and edge multiplicities that are
//! finite or countably infinite. From it the crate derives maximal tails,
//! breaking vertices, the lattice of gauge-invariant ideals, the primitive
//! ideal space and the closure operator of its hull-kernel topology.

pub mod cardinality;
pub mod circle;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod ideals;
pub mod parse;
pub mod report;
pub mod subsets;
pub mod tails;
pub mod topology;
pub mod vertex_set;

pub use cardinality::Cardinality;
pub use circle::{CirclePoint, CircleSet};
pub use error::{Error, Result};
pub use graph::{Edge, Graph, Loop, VertexId};
pub use ideals::{GaugeInvariantIdeal, PrimIdeal, PrimSpace};
pub use parse::{parse_graph, to_text, GraphJson};
pub use report::Report;
pub use tails::{MaximalTail, TailData, TailKind};
pub use topology::{PrimSubset, TauOrder};
pub use vertex_set::{Vertex, VertexSet};
