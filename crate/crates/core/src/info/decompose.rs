use fixedbitset::FixedBitSet;

use super::state::{CompBits, InfoState};
use crate::error::{Error, Result};
use crate::graph_core::{BoolMatrix, Graph, MoveModel, Vertex};

/// The visible set of a searcher position and the connected components of
/// everything else, ordered by smallest vertex id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub position: Vertex,
    pub visible: Vec<Vertex>,
    pub components: Vec<Vec<Vertex>>,
    pub(crate) component_masks: Vec<FixedBitSet>,
}

impl Decomposition {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Vertex-level dirty set described by `dirty` at this position.
    pub(crate) fn dirty_mask(&self, dirty: &CompBits, n: usize) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(n);
        for (m, mask) in self.component_masks.iter().enumerate() {
            if dirty.get(m) {
                out.union_with(mask);
            }
        }
        out
    }
}

pub(crate) fn check_visibility(g: &Graph, b: &BoolMatrix) -> Result<()> {
    if b.rows() != g.n() || b.cols() != g.n() {
        return Err(Error::Dimension(format!(
            "visibility matrix is {}x{}, graph has {} vertices",
            b.rows(),
            b.cols(),
            g.n()
        )));
    }
    Ok(())
}

pub fn decompose(g: &Graph, b: &BoolMatrix, position: Vertex) -> Result<Decomposition> {
    g.check_vertex(position)?;
    check_visibility(g, b)?;
    let n = g.n();
    let row = b.row(position.index());
    let mut hidden = FixedBitSet::with_capacity(n);
    let mut visible = Vec::new();
    for (y, &seen) in row.iter().enumerate() {
        if seen {
            visible.push(Vertex::from_index(y));
        } else {
            hidden.insert(y);
        }
    }
    let component_masks = g.component_masks(&hidden);
    let components = component_masks
        .iter()
        .map(|m| m.ones().map(Vertex::from_index).collect())
        .collect();
    Ok(Decomposition {
        position,
        visible,
        components,
        component_masks,
    })
}

/// Vertices the target may occupy right after the searcher's step, before
/// anything is cleared by the new view.
pub(crate) fn spread_seeds(g: &Graph, dirty: &FixedBitSet, model: MoveModel) -> FixedBitSet {
    match model {
        MoveModel::Sequential => dirty.clone(),
        MoveModel::Concurrent => {
            let mut out = dirty.clone();
            for v in dirty.ones() {
                for &w in g.neighbors(v) {
                    out.insert(w);
                }
            }
            out
        }
    }
}

/// Information-state transition computed directly on vertex sets.
///
/// The dirty vertices of `state` spread according to `model`; a component
/// at the new position is dirty iff it receives any of them (the target is
/// unboundedly fast, so one dirty vertex taints its whole component).
pub fn transition(g: &Graph, b: &BoolMatrix, state: &InfoState, mv: Vertex, model: MoveModel) -> Result<InfoState> {
    g.check_vertex(mv)?;
    let n = g.n();
    let old_dirty = match state.position {
        None => {
            let mut all = FixedBitSet::with_capacity(n);
            all.insert_range(..);
            all
        }
        Some(x) => {
            g.check_vertex(x)?;
            if x != mv && !g.is_adjacent(x, mv) {
                return Err(Error::IllegalMove {
                    searcher: 1,
                    from: x,
                    to: mv,
                });
            }
            let here = decompose(g, b, x)?;
            if here.component_count() != state.dirty.len() {
                return Err(Error::InvalidArgument(format!(
                    "state {state} has {} component bits, position {x} has {} components",
                    state.dirty.len(),
                    here.component_count()
                )));
            }
            here.dirty_mask(&state.dirty, n)
        }
    };
    let seeds = spread_seeds(g, &old_dirty, model);
    let next = decompose(g, b, mv)?;
    let bits: Vec<bool> = next.component_masks.iter().map(|c| !c.is_disjoint(&seeds)).collect();
    Ok(InfoState::new(mv, &bits))
}
