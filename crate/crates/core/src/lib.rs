//! Matching covered graphs: perfect-matching predicates, equivalence
//! classes of mutually dependent edges, tight and separating cuts, the
//! brick and brace decomposition, splicing, and a generator for graphs
//! with high connectivity and a large equivalence class.

pub mod canon;
pub mod cuts;
pub mod dependence;
pub mod error;
pub mod generators;
pub mod graph;
pub mod matching;
pub mod splicing;
pub mod structure;

pub use canon::{canonical_form, CanonicalForm};
pub use cuts::{classify, tight_cut_decomposition, Classification, DecompositionResult};
pub use dependence::{equivalence_partition, EquivalencePartition};
pub use error::{Error, Result};
pub use generators::{named_graph, NamedGraph};
pub use graph::{Bipartition, Contraction, Cut, Edge, EdgeId, MultiGraph, VertexId};
pub use matching::{Matching, PmOracle};
pub use splicing::{splice, SpliceSpec};
