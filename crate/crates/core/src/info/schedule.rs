use serde::{Deserialize, Serialize};

use super::space::InfoSpace;
use super::state::InfoState;
use crate::error::{Error, Result};
use crate::graph_core::Vertex;

/// One row of a schedule trace: where the searcher stands, the invisible
/// components there, and which of them are dirty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub pos: Vertex,
    pub components: Vec<Vec<Vertex>>,
    pub dirty: Vec<u8>,
}

/// Clearing schedule, or the verdict that none exists.
///
/// `cost` counts moves after the free placement and is `null` in JSON when
/// the graph cannot be cleared.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    pub clearable: bool,
    pub cost: Option<usize>,
    pub placement: Option<Vertex>,
    pub moves: Vec<Vertex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceStep>>,
}

impl Schedule {
    pub fn unclearable() -> Self {
        Schedule {
            clearable: false,
            cost: None,
            placement: None,
            moves: Vec::new(),
            trace: None,
        }
    }

    pub fn cleared(placement: Vertex, moves: Vec<Vertex>) -> Self {
        Schedule {
            clearable: true,
            cost: Some(moves.len()),
            placement: Some(placement),
            moves,
            trace: None,
        }
    }

    /// Replays the schedule in `space` and attaches the resulting trace.
    pub fn with_trace(mut self, space: &InfoSpace) -> Result<Self> {
        if let Some(p) = self.placement {
            let states = replay(space, p, &self.moves)?;
            let trace = states
                .iter()
                .map(|s| {
                    let pos = s.position.expect("replayed states are placed");
                    TraceStep {
                        pos,
                        components: space.decomposition(pos).components.clone(),
                        dirty: s.dirty.to_u8s(),
                    }
                })
                .collect();
            self.trace = Some(trace);
        }
        Ok(self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("schedule serializes")
    }

    /// Checks that the schedule is legal and actually ends all-clear.
    pub fn verify(&self, space: &InfoSpace) -> Result<()> {
        if !self.clearable {
            return Ok(());
        }
        let placement = self
            .placement
            .ok_or_else(|| Error::InvalidArgument("clearable schedule without placement".into()))?;
        if self.cost != Some(self.moves.len()) {
            return Err(Error::InvalidArgument(format!(
                "cost {:?} does not match {} moves",
                self.cost,
                self.moves.len()
            )));
        }
        let states = replay(space, placement, &self.moves)?;
        let last = states.last().expect("replay includes the placement");
        if !last.is_clear() {
            return Err(Error::InvalidArgument(format!(
                "schedule ends in {last}, not all-clear"
            )));
        }
        Ok(())
    }
}

/// States visited after placing at `placement` and applying `moves`; the
/// first entry is the post-placement state.
pub fn replay(space: &InfoSpace, placement: Vertex, moves: &[Vertex]) -> Result<Vec<InfoState>> {
    let mut state = space.step(&InfoState::initial(), placement)?;
    let mut out = Vec::with_capacity(moves.len() + 1);
    out.push(state.clone());
    for &mv in moves {
        state = space.step(&state, mv)?;
        out.push(state.clone());
    }
    Ok(out)
}
