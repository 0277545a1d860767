//! Monoidal width for cospans of undirected graphs.
//!
//! Graphs and their colimits live in [`graph`]; [`cospan`] builds the
//! category of cospans with discrete boundaries; [`term`] holds monoidal
//! decomposition trees; [`decomp`] the classic and recursive tree, path and
//! branch decompositions; [`translate`] moves between the two worlds with
//! checked width bounds; [`oracle`] computes exact widths by exhaustive search.
//!
//! Tree and path width follow the no-minus-one convention: a single edge has
//! tree width 2.

pub mod error;
pub mod cospan;
pub mod decomp;
pub mod graph;
pub mod oracle;
pub mod term;
pub mod translate;

pub use cospan::{cospan_iso_eq, Cospan};
pub use error::{Error, Result};
pub use graph::{Ends, FiniteMap, Graph, GraphMorphism, SourcedGraph, VertexId, EdgeId, VertexSet, EdgeSet};
