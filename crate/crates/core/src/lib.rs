//! Balanced bipartite digraphs: degree conditions on dominating pairs,
//! perfect matchings and cycle factors, exact Hamiltonicity, the catalog of
//! extremal non-Hamiltonian digraphs, and exhaustive or randomized
//! verification sweeps.
//!
//! ```
//! use bbdigraph::{catalog, ham};
//!
//! let h3 = catalog::build_exception(catalog::ExceptionName::H3);
//! assert!(h3.is_strong());
//! assert!(ham::is_hamiltonian(&h3).unwrap().is_none());
//! ```

pub mod catalog;
pub mod cli;
pub mod conditions;
pub mod digraph;
pub mod error;
pub mod factors;
pub mod format;
pub mod ham;
pub mod search;

pub use digraph::{BalancedBipartiteDigraph, Direction, PairKind, Side, VertexPair, VertexRef};
pub use error::{Error, Result};
