use super::decompose::{check_visibility, decompose, spread_seeds, Decomposition};
use super::state::{CompBits, InfoState};
use crate::error::{Error, Result};
use crate::graph_core::{BoolMatrix, Graph, MoveModel, Vertex};

/// For one searcher move `x -> to`: which components at `x` feed each
/// component at `to`. A new component is dirty iff any feeding component is.
#[derive(Clone, Debug)]
struct MoveTable {
    to: Vertex,
    feeders: Vec<CompBits>,
}

/// Precomputed decompositions and per-move transfer tables, so that a
/// transition is a handful of word-wide ANDs instead of vertex-set work.
#[derive(Clone, Debug)]
pub struct InfoSpace {
    graph: Graph,
    model: MoveModel,
    decomps: Vec<Decomposition>,
    tables: Vec<Vec<MoveTable>>,
}

impl InfoSpace {
    pub fn new(g: &Graph, b: &BoolMatrix, model: MoveModel) -> Result<Self> {
        check_visibility(g, b)?;
        let decomps = g.vertices().map(|v| decompose(g, b, v)).collect::<Result<Vec<_>>>()?;
        let spread: Vec<Vec<_>> = decomps
            .iter()
            .map(|d| d.component_masks.iter().map(|c| spread_seeds(g, c, model)).collect())
            .collect();
        let tables = g
            .vertices()
            .map(|x| {
                let from = &spread[x.index()];
                g.closed_neighborhood(x)
                    .into_iter()
                    .map(|to| {
                        let feeders = decomps[to.index()]
                            .component_masks
                            .iter()
                            .map(|target| {
                                let mut bits = CompBits::zeros(from.len());
                                for (k, seeds) in from.iter().enumerate() {
                                    if !target.is_disjoint(seeds) {
                                        bits.set(k, true);
                                    }
                                }
                                bits
                            })
                            .collect();
                        MoveTable { to, feeders }
                    })
                    .collect()
            })
            .collect();
        Ok(InfoSpace {
            graph: g.clone(),
            model,
            decomps,
            tables,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn model(&self) -> MoveModel {
        self.model
    }

    pub fn decomposition(&self, v: Vertex) -> &Decomposition {
        &self.decomps[v.index()]
    }

    pub fn component_count(&self, v: Vertex) -> usize {
        self.decomps[v.index()].component_count()
    }

    /// `sum_i 2^{m_i}`: the number of non-initial states an exhaustive
    /// construction enumerates. Saturates at `u128::MAX`.
    pub fn full_state_count(&self) -> u128 {
        self.decomps
            .iter()
            .map(|d| {
                let m = d.component_count();
                if m >= 128 {
                    u128::MAX
                } else {
                    1u128 << m
                }
            })
            .fold(0u128, u128::saturating_add)
    }

    /// State reached by placing the searcher at `v`: every component dirty.
    pub fn placement(&self, v: Vertex) -> InfoState {
        InfoState {
            position: Some(v),
            dirty: CompBits::ones(self.component_count(v)),
        }
    }

    fn apply(table: &MoveTable, dirty: &CompBits) -> InfoState {
        let mut bits = CompBits::zeros(table.feeders.len());
        for (m, feeders) in table.feeders.iter().enumerate() {
            if feeders.intersects(dirty) {
                bits.set(m, true);
            }
        }
        InfoState {
            position: Some(table.to),
            dirty: bits,
        }
    }

    /// All outgoing transitions as `(move, next state, cost)`, in ascending
    /// move order. Placements cost 0; moves, including staying put, cost 1.
    pub fn successors(&self, state: &InfoState) -> Vec<(Vertex, InfoState, u32)> {
        match state.position {
            None => self.graph.vertices().map(|v| (v, self.placement(v), 0)).collect(),
            Some(x) => self.tables[x.index()]
                .iter()
                .map(|t| (t.to, Self::apply(t, &state.dirty), 1))
                .collect(),
        }
    }

    /// Single checked transition.
    pub fn step(&self, state: &InfoState, mv: Vertex) -> Result<InfoState> {
        self.graph.check_vertex(mv)?;
        match state.position {
            None => Ok(self.placement(mv)),
            Some(x) => {
                let tables = &self.tables[x.index()];
                let table = tables
                    .binary_search_by_key(&mv, |t| t.to)
                    .map(|i| &tables[i])
                    .map_err(|_| Error::IllegalMove {
                        searcher: 1,
                        from: x,
                        to: mv,
                    })?;
                if state.dirty.len() != self.component_count(x) {
                    return Err(Error::InvalidArgument(format!(
                        "state {state} does not match the {} components at {x}",
                        self.component_count(x)
                    )));
                }
                Ok(Self::apply(table, &state.dirty))
            }
        }
    }

    /// Every state with the searcher at `v`, in lexicographic order.
    pub(crate) fn states_at(&self, v: Vertex) -> impl Iterator<Item = InfoState> {
        let m = self.component_count(v);
        (0..1u64 << m).map(move |code| InfoState {
            position: Some(v),
            dirty: CompBits::from_code(m, code),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::info::decompose::transition;
    use crate::visibility::{build_visibility, VisibilitySpec};

    fn tree7() -> Graph {
        Graph::new(7, [(1, 2), (1, 3), (2, 4), (2, 5), (3, 6), (3, 7)]).unwrap()
    }

    #[test]
    fn tree_has_thirty_six_states() {
        let g = tree7();
        let b = build_visibility(&g, &VisibilitySpec::Range(1)).unwrap();
        let space = InfoSpace::new(&g, &b, MoveModel::Concurrent).unwrap();
        assert_eq!(space.full_state_count(), 36);
        let counts: Vec<usize> = g.vertices().map(|v| space.component_count(v)).collect();
        assert_eq!(counts, [4, 1, 1, 2, 2, 2, 2]);
    }

    #[test]
    fn table_transitions_match_reference_on_every_state() {
        let g = tree7();
        for l in 0..=2 {
            let b = build_visibility(&g, &VisibilitySpec::Range(l)).unwrap();
            for model in [MoveModel::Concurrent, MoveModel::Sequential] {
                let space = InfoSpace::new(&g, &b, model).unwrap();
                for x in g.vertices() {
                    for s in space.states_at(x) {
                        for (mv, next, cost) in space.successors(&s) {
                            assert_eq!(cost, 1);
                            assert_eq!(next, transition(&g, &b, &s, mv, model).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn step_checks_legality() {
        let g = tree7();
        let b = build_visibility(&g, &VisibilitySpec::Range(1)).unwrap();
        let space = InfoSpace::new(&g, &b, MoveModel::Concurrent).unwrap();
        let s = space.placement(Vertex(1));
        assert!(matches!(space.step(&s, Vertex(7)), Err(Error::IllegalMove { .. })));
        assert_eq!(space.step(&s, Vertex(2)).unwrap(), InfoState::new(Vertex(2), &[true]));
        assert_eq!(
            space.step(&InfoState::initial(), Vertex(7)).unwrap(),
            space.placement(Vertex(7))
        );
    }
}
