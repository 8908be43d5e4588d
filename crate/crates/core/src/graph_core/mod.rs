//! Graphs, boolean matrices and the contamination algebra shared by the solvers.

mod contamination;
mod graph;
mod matrix;

pub use contamination::{modified_adjacency, propagate, row_star, ContaminationVector, MoveModel};
pub use graph::{Graph, Vertex};
pub use matrix::{star_multiply, BoolMatrix};
