//! Minimum-length clearing schedules for a single unit-speed searcher with
//! limited visibility hunting an arbitrarily fast, invisible target on a graph.
//!
//! The main entry point is [`info::solve`], which searches the graph of
//! information states (searcher position plus the dirty/clear status of every
//! component the searcher cannot see). [`naive`] is a brute-force solver over
//! full vertex-level contamination states, used as a correctness oracle and
//! for multi-searcher or finite-speed variants.

pub mod error;
pub mod generators;
pub mod graph_core;
pub mod info;
pub mod naive;
pub mod visibility;

pub use error::{Error, Result};
pub use graph_core::{BoolMatrix, ContaminationVector, Graph, Vertex};
pub use visibility::{build_visibility, VisibilitySpec};
