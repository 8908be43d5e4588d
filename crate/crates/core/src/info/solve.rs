use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use super::graph::{InfoGraph, StateId, INITIAL};
use super::schedule::Schedule;
use super::space::InfoSpace;
use super::state::InfoState;
use crate::error::{Error, Result};
use crate::graph_core::{BoolMatrix, Graph, MoveModel, Vertex};

pub const DEFAULT_MAX_STATES: usize = 1 << 24;

/// How the information graph is materialized.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Only states reachable from `(λ,(1))`, expanded as the search reaches them.
    #[default]
    Lazy,
    /// Every `(v, c)` up front.
    Eager,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lazy" => Ok(Mode::Lazy),
            "eager" => Ok(Mode::Eager),
            _ => Err(Error::InvalidArgument(format!(
                "unknown mode `{s}` (expected lazy or eager)"
            ))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Lazy => "lazy",
            Mode::Eager => "eager",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub mode: Mode,
    pub model: MoveModel,
    pub timeout: Option<Duration>,
    pub max_states: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            mode: Mode::Lazy,
            model: MoveModel::default(),
            timeout: None,
            max_states: DEFAULT_MAX_STATES,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub schedule: Schedule,
    pub states_expanded: usize,
    /// States materialized in the information graph, `(λ,(1))` included.
    pub states_discovered: usize,
}

struct Clock {
    deadline: Option<Instant>,
    ticks: usize,
}

impl Clock {
    fn new(timeout: Option<Duration>) -> Self {
        Clock {
            deadline: timeout.map(|t| Instant::now() + t),
            ticks: 0,
        }
    }

    fn check(&mut self, states_expanded: usize) -> Result<()> {
        self.ticks += 1;
        if self.ticks % 1024 == 1 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    return Err(Error::Timeout { states_expanded });
                }
            }
        }
        Ok(())
    }
}

/// Information graph for `g`: lazy graphs start with only `(λ,(1))`.
pub fn build_info_graph(g: &Graph, b: &BoolMatrix, opts: &SolveOptions) -> Result<InfoGraph> {
    let space = InfoSpace::new(g, b, opts.model)?;
    match opts.mode {
        Mode::Lazy => Ok(InfoGraph::lazy(space, opts.max_states)),
        Mode::Eager => InfoGraph::eager(space, opts.max_states),
    }
}

fn path_to(ig: &InfoGraph, parent: &[Option<(StateId, Vertex)>], goal: StateId) -> Schedule {
    let mut rev = Vec::new();
    let mut at = goal;
    while let Some((prev, mv)) = parent[at as usize] {
        rev.push(mv);
        at = prev;
    }
    debug_assert_eq!(at, INITIAL);
    let placement = rev.pop().expect("goal is never the initial state");
    rev.reverse();
    debug_assert!(ig.state(goal).is_clear());
    Schedule::cleared(placement, rev)
}

/// Minimum-cost clearing schedule for a single searcher.
///
/// Dijkstra from `(λ,(1))`. Among frontier entries of equal cost the
/// lexicographically smallest state is expanded first, so the returned
/// schedule is reproducible.
pub fn solve(g: &Graph, b: &BoolMatrix, opts: &SolveOptions) -> Result<Solution> {
    let mut ig = build_info_graph(g, b, opts)?;
    solve_in(&mut ig, opts.timeout)
}

/// Dijkstra over an already constructed information graph; lazy graphs are
/// extended as needed.
pub fn solve_in(ig: &mut InfoGraph, timeout: Option<Duration>) -> Result<Solution> {
    let mut clock = Clock::new(timeout);
    let mut dist: Vec<Option<usize>> = vec![None; ig.len()];
    let mut parent: Vec<Option<(StateId, Vertex)>> = vec![None; ig.len()];
    let mut done: Vec<bool> = vec![false; ig.len()];
    let mut heap = BinaryHeap::new();
    dist[INITIAL as usize] = Some(0);
    heap.push(Reverse((0usize, InfoState::initial(), INITIAL)));
    let mut expanded = 0usize;

    while let Some(Reverse((d, state, id))) = heap.pop() {
        if done[id as usize] {
            continue;
        }
        done[id as usize] = true;
        if state.is_clear() {
            return Ok(Solution {
                schedule: path_to(ig, &parent, id),
                states_expanded: expanded,
                states_discovered: ig.len(),
            });
        }
        clock.check(expanded)?;
        expanded += 1;
        let arcs = ig.expand(id)?.to_vec();
        if ig.len() > dist.len() {
            dist.resize(ig.len(), None);
            parent.resize(ig.len(), None);
            done.resize(ig.len(), false);
        }
        for arc in arcs {
            if arc.target == id {
                continue;
            }
            let nd = d + arc.cost as usize;
            let t = arc.target as usize;
            if done[t] {
                continue;
            }
            let better = match dist[t] {
                None => true,
                Some(old) => nd < old,
            };
            if better {
                dist[t] = Some(nd);
                parent[t] = Some((id, arc.mv));
                heap.push(Reverse((nd, ig.state(arc.target).clone(), arc.target)));
            }
        }
    }

    Ok(Solution {
        schedule: Schedule::unclearable(),
        states_expanded: expanded,
        states_discovered: ig.len(),
    })
}

/// Some clearing schedule, not necessarily the shortest, found by depth-first
/// search from `(λ,(1))` with moves tried in ascending vertex order.
pub fn solve_dfs(g: &Graph, b: &BoolMatrix, opts: &SolveOptions) -> Result<Solution> {
    let mut ig = build_info_graph(g, b, opts)?;
    solve_dfs_in(&mut ig, opts.timeout)
}

pub fn solve_dfs_in(ig: &mut InfoGraph, timeout: Option<Duration>) -> Result<Solution> {
    let mut clock = Clock::new(timeout);
    let mut visited: HashSet<StateId> = HashSet::new();
    visited.insert(INITIAL);
    // (state, index of the next arc to try, move that led here)
    let mut stack: Vec<(StateId, usize, Option<Vertex>)> = vec![(INITIAL, 0, None)];
    let mut expanded = 0usize;

    while let Some(&mut (id, ref mut next, _)) = stack.last_mut() {
        if *next == 0 {
            clock.check(expanded)?;
            expanded += 1;
        }
        let k = *next;
        *next += 1;
        let arc = ig.expand(id)?.get(k).copied();
        let Some(arc) = arc else {
            stack.pop();
            continue;
        };
        if !visited.insert(arc.target) {
            continue;
        }
        stack.push((arc.target, 0, Some(arc.mv)));
        if ig.state(arc.target).is_clear() {
            let mut moves: Vec<Vertex> = stack.iter().filter_map(|e| e.2).collect();
            let placement = moves.remove(0);
            return Ok(Solution {
                schedule: Schedule::cleared(placement, moves),
                states_expanded: expanded,
                states_discovered: ig.len(),
            });
        }
    }

    Ok(Solution {
        schedule: Schedule::unclearable(),
        states_expanded: expanded,
        states_discovered: ig.len(),
    })
}
