//! Hypergraph Steiner trees and orientations.
//!
//! Exact solvers for the Steiner hypertree problem with a fixed terminal set
//! and for rooted Steiner orientations, a checker for well-balanced
//! orientations, and the SAT reductions showing the related problems hard,
//! each with brute-force oracles for cross-validation at small scale.

pub mod connectivity;
pub mod error;
pub mod format;
pub mod gen;
pub mod hypercore;
pub mod orient;
pub mod reductions;
pub mod satkit;
pub mod steiner;

pub use error::{Error, Result};
pub use hypercore::{
    digraph_expansion, incidence_graph, orient, trim, underlying_hypergraph, Dyperedge, Dypergraph, Graph,
    Hypergraph, LabelledTree, Orientation, TrimChoice, VertexId, VertexNames,
};
pub use satkit::{Assignment, CnfFormula, Literal};
pub use steiner::ShtCertificate;
