//! Brute-force solver over full states: every searcher position paired with
//! the complete vertex-level contamination vector.
//!
//! Contamination is propagated literally with star-products over the
//! modified adjacency matrix (see [`propagate`]), so this module shares
//! nothing with [`crate::info`] beyond the graph algebra and serves as its
//! oracle. Unlike the information-state solver it handles several searchers
//! and a finite target speed, at the price of `n^K * 2^n + 1` states.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph_core::{propagate, BoolMatrix, ContaminationVector, Graph, MoveModel, Vertex};

pub const DEFAULT_MAX_STATES: usize = 1 << 24;

/// Target speed in edges per time step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Speed {
    Infinite,
    Finite(usize),
}

impl Speed {
    /// Number of star-multiplications per step; unbounded speed saturates at `n`.
    pub fn steps(self, n: usize) -> usize {
        match self {
            Speed::Infinite => n,
            Speed::Finite(s) => s.min(n),
        }
    }
}

impl FromStr for Speed {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "inf" {
            return Ok(Speed::Infinite);
        }
        match s.parse::<usize>() {
            Ok(v) if v >= 1 => Ok(Speed::Finite(v)),
            _ => Err(Error::InvalidArgument(format!(
                "speed must be `inf` or a positive integer, got {s:?}"
            ))),
        }
    }
}

impl fmt::Display for Speed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Speed::Infinite => f.write_str("inf"),
            Speed::Finite(s) => write!(f, "{s}"),
        }
    }
}

/// `positions == None` is the pre-placement state, whose dirty vector is all ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FullState {
    pub positions: Option<Vec<Vertex>>,
    pub dirty: ContaminationVector,
}

impl FullState {
    pub fn initial(n: usize) -> Self {
        FullState {
            positions: None,
            dirty: ContaminationVector::all_dirty(n),
        }
    }

    pub fn is_clear(&self) -> bool {
        self.dirty.is_clear()
    }
}

/// `|Z| = n^K * 2^n + 1`.
pub fn state_space_size(n: usize, searchers: usize) -> u128 {
    (n as u128).pow(searchers as u32) * (1u128 << n) + 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dynamics {
    pub speed: Speed,
    pub model: MoveModel,
}

impl Default for Dynamics {
    fn default() -> Self {
        Dynamics {
            speed: Speed::Infinite,
            model: MoveModel::default(),
        }
    }
}

impl Dynamics {
    pub fn new(speed: Speed, model: MoveModel) -> Self {
        Dynamics { speed, model }
    }
}

/// One time step: the searchers move to `control` and the target spreads
/// according to `dynamics`.
pub fn evolve(
    g: &Graph,
    b: &BoolMatrix,
    state: &FullState,
    control: &[Vertex],
    dynamics: Dynamics,
) -> Result<FullState> {
    for &u in control {
        g.check_vertex(u)?;
    }
    if let Some(xs) = &state.positions {
        if xs.len() != control.len() {
            return Err(Error::InvalidArgument(format!(
                "{} searchers but {} moves",
                xs.len(),
                control.len()
            )));
        }
        for (k, (&x, &u)) in xs.iter().zip(control).enumerate() {
            if x != u && !g.is_adjacent(x, u) {
                return Err(Error::IllegalMove {
                    searcher: k + 1,
                    from: x,
                    to: u,
                });
            }
        }
    }
    let steps = dynamics.speed.steps(g.n());
    let dirty = propagate(g, b, &state.dirty, control, steps, dynamics.model)?;
    Ok(FullState {
        positions: Some(control.to_vec()),
        dirty,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NaiveSolution {
    pub clearable: bool,
    pub cost: Option<usize>,
    pub placement: Option<Vec<Vertex>>,
    pub moves: Vec<Vec<Vertex>>,
    #[serde(skip)]
    pub states_discovered: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NaiveConfig {
    pub searchers: usize,
    pub dynamics: Dynamics,
    pub max_states: usize,
}

impl Default for NaiveConfig {
    fn default() -> Self {
        NaiveConfig {
            searchers: 1,
            dynamics: Dynamics::default(),
            max_states: DEFAULT_MAX_STATES,
        }
    }
}

/// Dijkstra from `[λ, 1..1]` to the nearest all-clear state. Placement is
/// free, every later step costs one. Among equal-cost entries the smallest
/// state (positions, then dirty bits) is settled first.
pub fn solve_naive(g: &Graph, b: &BoolMatrix, config: &NaiveConfig) -> Result<NaiveSolution> {
    let NaiveConfig {
        searchers,
        dynamics,
        max_states,
    } = *config;
    if searchers == 0 {
        return Err(Error::InvalidArgument("need at least one searcher".into()));
    }
    let n = g.n();
    let start = FullState::initial(n);
    let mut dist: HashMap<FullState, usize> = HashMap::from([(start.clone(), 0)]);
    let mut parent: HashMap<FullState, (FullState, Vec<Vertex>)> = HashMap::new();
    let mut settled: HashSet<FullState> = HashSet::new();
    let mut heap = BinaryHeap::from([Reverse((0usize, start))]);

    let all: Vec<Vertex> = g.vertices().collect();
    let neighborhoods: Vec<Vec<Vertex>> = g.vertices().map(|v| g.closed_neighborhood(v)).collect();

    while let Some(Reverse((cost, state))) = heap.pop() {
        if !settled.insert(state.clone()) {
            continue;
        }
        if state.is_clear() {
            let discovered = dist.len();
            return Ok(reconstruct(&parent, state, cost, discovered));
        }
        let (choices, step_cost): (Vec<&[Vertex]>, usize) = match &state.positions {
            None => (vec![&all[..]; searchers], 0),
            Some(xs) => (xs.iter().map(|x| &neighborhoods[x.index()][..]).collect(), 1),
        };
        for control in tuples(&choices) {
            let next = evolve(g, b, &state, &control, dynamics)?;
            let next_cost = cost + step_cost;
            if dist.get(&next).is_some_and(|&d| d <= next_cost) {
                continue;
            }
            dist.insert(next.clone(), next_cost);
            if dist.len() > max_states {
                return Err(Error::StateLimit {
                    states: dist.len() as u128,
                    cap: max_states,
                    hint: "",
                });
            }
            parent.insert(next.clone(), (state.clone(), control));
            heap.push(Reverse((next_cost, next)));
        }
    }
    Ok(NaiveSolution {
        clearable: false,
        cost: None,
        placement: None,
        moves: Vec::new(),
        states_discovered: dist.len(),
    })
}

fn reconstruct(
    parent: &HashMap<FullState, (FullState, Vec<Vertex>)>,
    goal: FullState,
    cost: usize,
    states_discovered: usize,
) -> NaiveSolution {
    let mut controls = Vec::new();
    let mut cur = goal;
    while let Some((prev, control)) = parent.get(&cur) {
        controls.push(control.clone());
        cur = prev.clone();
    }
    controls.reverse();
    let mut it = controls.into_iter();
    let placement = it.next();
    NaiveSolution {
        clearable: true,
        cost: Some(cost),
        placement,
        moves: it.collect(),
        states_discovered,
    }
}

/// Cartesian product in lexicographic order.
fn tuples(choices: &[&[Vertex]]) -> Vec<Vec<Vertex>> {
    let mut out = vec![Vec::with_capacity(choices.len())];
    for options in choices {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |&v| {
                    let mut t = prefix.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

/// Replays a schedule from `[λ, 1..1]`, returning the state after placement
/// and after each move. Fails on the first illegal move.
pub fn replay_naive(
    g: &Graph,
    b: &BoolMatrix,
    dynamics: Dynamics,
    placement: &[Vertex],
    moves: &[Vec<Vertex>],
) -> Result<Vec<FullState>> {
    let mut states = Vec::with_capacity(moves.len() + 1);
    let mut cur = evolve(g, b, &FullState::initial(g.n()), placement, dynamics)?;
    states.push(cur.clone());
    for control in moves {
        cur = evolve(g, b, &cur, control, dynamics)?;
        states.push(cur.clone());
    }
    Ok(states)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::visibility::{build_visibility, VisibilitySpec};

    fn tree7() -> Graph {
        Graph::new(7, [(1, 2), (1, 3), (2, 4), (2, 5), (3, 6), (3, 7)]).unwrap()
    }

    fn path(n: u32) -> Graph {
        Graph::new(n as usize, (1..n).map(|i| (i, i + 1))).unwrap()
    }

    fn grid2x2() -> Graph {
        Graph::new(4, [(1, 2), (1, 3), (2, 4), (3, 4)]).unwrap()
    }

    fn range(g: &Graph, l: u32) -> BoolMatrix {
        build_visibility(g, &VisibilitySpec::Range(l)).unwrap()
    }

    fn v(ids: &[u32]) -> Vec<Vertex> {
        ids.iter().map(|&i| Vertex(i)).collect()
    }

    fn cfg(searchers: usize, speed: Speed, model: MoveModel) -> NaiveConfig {
        NaiveConfig {
            searchers,
            dynamics: Dynamics::new(speed, model),
            max_states: DEFAULT_MAX_STATES,
        }
    }

    fn solve1(g: &Graph, l: u32) -> NaiveSolution {
        solve_naive(g, &range(g, l), &NaiveConfig::default()).unwrap()
    }

    #[test]
    fn tree_walk_matches_published_dirty_sets() {
        let g = tree7();
        let b = range(&g, 1);
        for model in [MoveModel::Concurrent, MoveModel::Sequential] {
            let dy = Dynamics::new(Speed::Finite(7), model);
            let s1 = evolve(&g, &b, &FullState::initial(7), &v(&[1]), dy).unwrap();
            assert_eq!(s1.dirty.dirty_vertices(), v(&[4, 5, 6, 7]));
            let s2 = evolve(&g, &b, &s1, &v(&[2]), dy).unwrap();
            assert_eq!(s2.dirty.dirty_vertices(), v(&[3, 6, 7]));
            let s3 = evolve(&g, &b, &s2, &v(&[1]), dy).unwrap();
            assert_eq!(s3.dirty.dirty_vertices(), v(&[6, 7]));
            let s4 = evolve(&g, &b, &s3, &v(&[3]), dy).unwrap();
            assert!(s4.is_clear());
        }
    }

    #[test]
    fn clear_state_is_absorbing() {
        let g = tree7();
        let b = range(&g, 1);
        let clear = FullState {
            positions: Some(v(&[2])),
            dirty: ContaminationVector::all_clear(7),
        };
        for u in g.closed_neighborhood(Vertex(2)) {
            for model in [MoveModel::Concurrent, MoveModel::Sequential] {
                let next = evolve(&g, &b, &clear, &[u], Dynamics::new(Speed::Infinite, model)).unwrap();
                assert!(next.is_clear());
            }
        }
    }

    #[test]
    fn illegal_move_names_the_searcher() {
        let g = tree7();
        let b = range(&g, 1);
        let s = FullState {
            positions: Some(v(&[1, 4])),
            dirty: ContaminationVector::all_dirty(7),
        };
        match evolve(&g, &b, &s, &v(&[2, 7]), Dynamics::default()) {
            Err(Error::IllegalMove { searcher, from, to }) => {
                assert_eq!((searcher, from, to), (2, Vertex(4), Vertex(7)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn finite_speed_spreads_slowly() {
        let g = path(6);
        let b = range(&g, 0);
        let s = FullState {
            positions: Some(v(&[1])),
            dirty: ContaminationVector::from_dirty(6, &v(&[6])),
        };
        let slow = evolve(
            &g,
            &b,
            &s,
            &v(&[1]),
            Dynamics::new(Speed::Finite(1), MoveModel::Sequential),
        )
        .unwrap();
        assert_eq!(slow.dirty.dirty_vertices(), v(&[5, 6]));
        let fast = evolve(
            &g,
            &b,
            &s,
            &v(&[1]),
            Dynamics::new(Speed::Infinite, MoveModel::Sequential),
        )
        .unwrap();
        assert_eq!(fast.dirty.dirty_vertices(), v(&[2, 3, 4, 5, 6]));
    }

    #[test]
    fn path_of_five_costs_two() {
        let g = path(5);
        let sol = solve1(&g, 1);
        assert_eq!(sol.cost, Some(2));
        let trail = replay_naive(
            &g,
            &range(&g, 1),
            Dynamics::default(),
            &sol.placement.unwrap(),
            &sol.moves,
        )
        .unwrap();
        assert!(trail.last().unwrap().is_clear());
    }

    #[test]
    fn complete_graph_costs_nothing() {
        let g = Graph::new(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        let sol = solve1(&g, 1);
        assert_eq!(sol.cost, Some(0));
        assert_eq!(sol.placement, Some(v(&[1])));
        assert!(sol.moves.is_empty());
    }

    #[test]
    fn tree7_costs_two() {
        let g = tree7();
        let sol = solve1(&g, 1);
        assert_eq!(sol.cost, Some(2));
        assert_eq!(sol.placement, Some(v(&[3])));
        assert_eq!(sol.moves, vec![v(&[1]), v(&[2])]);
        assert!((sol.states_discovered as u128) <= state_space_size(7, 1));
    }

    #[test]
    fn square_needs_concurrent_moves_to_be_unclearable() {
        let g = grid2x2();
        let b = range(&g, 1);
        assert!(!solve1(&g, 1).clearable);
        let seq = solve_naive(&g, &b, &cfg(1, Speed::Infinite, MoveModel::Sequential)).unwrap();
        assert_eq!(seq.cost, Some(1));
        // a second searcher fixes it
        let two = solve_naive(&g, &b, &cfg(2, Speed::Infinite, MoveModel::Concurrent)).unwrap();
        assert_eq!(two.cost, Some(0));
    }

    #[test]
    fn blind_searchers_on_a_triangle() {
        let g = Graph::new(3, [(1, 2), (2, 3), (1, 3)]).unwrap();
        let b = range(&g, 0);
        for k in 1..=2 {
            assert!(
                !solve_naive(&g, &b, &cfg(k, Speed::Infinite, MoveModel::Concurrent))
                    .unwrap()
                    .clearable
            );
        }
        let three = solve_naive(&g, &b, &cfg(3, Speed::Infinite, MoveModel::Concurrent)).unwrap();
        assert_eq!(three.cost, Some(0));
        // if the target only moves after the searchers, two can trap it
        let two = solve_naive(&g, &b, &cfg(2, Speed::Infinite, MoveModel::Sequential)).unwrap();
        assert_eq!(two.cost, Some(1));
    }

    #[test]
    fn blind_sweep_of_a_path() {
        let g = path(4);
        let b = range(&g, 0);
        for speed in [Speed::Finite(1), Speed::Infinite] {
            let sol = solve_naive(&g, &b, &cfg(1, speed, MoveModel::Sequential)).unwrap();
            assert_eq!(sol.cost, Some(3));
            let dy = Dynamics::new(speed, MoveModel::Sequential);
            let trail = replay_naive(&g, &b, dy, &sol.placement.unwrap(), &sol.moves).unwrap();
            assert!(trail.last().unwrap().is_clear());
        }
    }

    #[test]
    fn slower_target_is_never_harder() {
        let graphs = [
            path(6),
            tree7(),
            grid2x2(),
            Graph::new(5, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]).unwrap(),
        ];
        for g in &graphs {
            for l in 0..=1 {
                let b = range(g, l);
                let mut prev: Option<usize> = Some(0);
                for s in 1..=g.n() {
                    let sol = solve_naive(g, &b, &cfg(1, Speed::Finite(s), MoveModel::Concurrent)).unwrap();
                    let ok = match (prev, sol.cost) {
                        (Some(p), Some(c)) => c >= p,
                        (None, c) => c.is_none(),
                        (Some(_), None) => true,
                    };
                    assert!(ok, "speed {s} cost {:?} after {prev:?}", sol.cost);
                    prev = sol.cost;
                }
            }
        }
    }

    #[test]
    fn state_cap_is_reported() {
        let g = path(8);
        let config = NaiveConfig {
            max_states: 10,
            dynamics: Dynamics::new(Speed::Infinite, MoveModel::Sequential),
            ..Default::default()
        };
        let err = solve_naive(&g, &range(&g, 0), &config).unwrap_err();
        assert!(matches!(err, Error::StateLimit { cap: 10, .. }));
    }

    #[test]
    fn state_space_sizes() {
        assert_eq!(state_space_size(7, 1), 897);
        assert_eq!(state_space_size(10, 1), 10_241);
        assert_eq!(state_space_size(12, 1), 49_153);
        assert_eq!(state_space_size(20, 1), 20_971_521);
    }

    #[test]
    fn speed_parsing() {
        assert_eq!("inf".parse::<Speed>().unwrap(), Speed::Infinite);
        assert_eq!("3".parse::<Speed>().unwrap(), Speed::Finite(3));
        assert!("0".parse::<Speed>().is_err());
        assert_eq!(Speed::Finite(99).steps(5), 5);
    }
}
