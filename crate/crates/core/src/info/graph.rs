use std::collections::HashMap;

use super::space::InfoSpace;
use super::state::InfoState;
use crate::error::{Error, Result};
use crate::graph_core::Vertex;

pub type StateId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub target: StateId,
    pub mv: Vertex,
    pub cost: u32,
}

/// Information graph: interned states plus the arcs of every expanded state.
///
/// Built either exhaustively ([`InfoGraph::eager`]) or on demand starting from
/// the initial state ([`InfoGraph::lazy`]). The initial state always has id 0.
#[derive(Clone, Debug)]
pub struct InfoGraph {
    space: InfoSpace,
    states: Vec<InfoState>,
    index: HashMap<InfoState, StateId>,
    arcs: Vec<Option<Vec<Arc>>>,
    max_states: usize,
}

pub const INITIAL: StateId = 0;

impl InfoGraph {
    pub fn lazy(space: InfoSpace, max_states: usize) -> Self {
        let mut g = InfoGraph {
            space,
            states: Vec::new(),
            index: HashMap::new(),
            arcs: Vec::new(),
            max_states,
        };
        g.intern(InfoState::initial());
        g
    }

    /// Enumerates `(λ,(1))` and every `(v, c)` with `c` ranging over all
    /// `2^{m_v}` component vectors, then expands all of them.
    pub fn eager(space: InfoSpace, max_states: usize) -> Result<Self> {
        let total = space.full_state_count();
        if total >= max_states as u128 {
            return Err(Error::StateLimit {
                states: total.saturating_add(1),
                cap: max_states,
                hint: "; use the lazy solver",
            });
        }
        let mut g = Self::lazy(space, max_states);
        let vertices: Vec<Vertex> = g.space.graph().vertices().collect();
        for v in vertices {
            let states: Vec<InfoState> = g.space.states_at(v).collect();
            for s in states {
                g.intern(s);
            }
        }
        for id in 0..g.states.len() as StateId {
            g.expand(id)?;
        }
        Ok(g)
    }

    fn intern(&mut self, state: InfoState) -> StateId {
        if let Some(&id) = self.index.get(&state) {
            return id;
        }
        let id = self.states.len() as StateId;
        self.index.insert(state.clone(), id);
        self.states.push(state);
        self.arcs.push(None);
        id
    }

    /// Materializes the outgoing arcs of `id` (and any new target states).
    pub fn expand(&mut self, id: StateId) -> Result<&[Arc]> {
        if self.arcs[id as usize].is_none() {
            let succ = self.space.successors(&self.states[id as usize]);
            let mut arcs = Vec::with_capacity(succ.len());
            for (mv, next, cost) in succ {
                let target = self.intern(next);
                arcs.push(Arc { target, mv, cost });
            }
            if self.states.len() > self.max_states {
                return Err(Error::StateLimit {
                    states: self.states.len() as u128,
                    cap: self.max_states,
                    hint: "",
                });
            }
            self.arcs[id as usize] = Some(arcs);
        }
        Ok(self.arcs[id as usize].as_deref().unwrap())
    }

    /// Expands every state reachable from `(λ,(1))`.
    pub fn explore(&mut self) -> Result<()> {
        let mut id = 0;
        while (id as usize) < self.states.len() {
            self.expand(id)?;
            id += 1;
        }
        Ok(())
    }

    pub fn space(&self) -> &InfoSpace {
        &self.space
    }

    pub fn state(&self, id: StateId) -> &InfoState {
        &self.states[id as usize]
    }

    pub fn id_of(&self, state: &InfoState) -> Option<StateId> {
        self.index.get(state).copied()
    }

    pub fn arcs(&self, id: StateId) -> Option<&[Arc]> {
        self.arcs[id as usize].as_deref()
    }

    /// Number of states, including the initial one.
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Number of states excluding `(λ,(1))`.
    pub fn non_initial_len(&self) -> usize {
        self.states.len() - 1
    }

    pub fn expanded_count(&self) -> usize {
        self.arcs.iter().filter(|a| a.is_some()).count()
    }

    pub fn states(&self) -> impl Iterator<Item = (StateId, &InfoState)> {
        self.states.iter().enumerate().map(|(i, s)| (i as StateId, s))
    }
}
