//! Single-searcher search over information states.

mod decompose;
mod dot;
mod graph;
mod schedule;
mod solve;
mod space;
mod state;

pub use decompose::{decompose, transition, Decomposition};
pub use dot::export_dot;
pub use graph::{Arc, InfoGraph, StateId, INITIAL};
pub use schedule::{replay, Schedule, TraceStep};
pub use solve::{
    build_info_graph, solve, solve_dfs, solve_dfs_in, solve_in, Mode, Solution, SolveOptions, DEFAULT_MAX_STATES,
};
pub use space::InfoSpace;
pub use state::{CompBits, InfoState};
