use std::fmt;
use std::str::FromStr;

use super::graph::{Graph, Vertex};
use super::matrix::BoolMatrix;
use crate::error::{Error, Result};

/// Vertex-level dirty set `d`: entry `i` is true iff vertex `i + 1` may hold the target.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ContaminationVector(Vec<bool>);

impl ContaminationVector {
    pub fn all_dirty(n: usize) -> Self {
        ContaminationVector(vec![true; n])
    }

    pub fn all_clear(n: usize) -> Self {
        ContaminationVector(vec![false; n])
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        ContaminationVector(bits)
    }

    pub fn from_dirty(n: usize, dirty: &[Vertex]) -> Self {
        let mut bits = vec![false; n];
        for v in dirty {
            bits[v.index()] = true;
        }
        ContaminationVector(bits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn is_dirty(&self, v: Vertex) -> bool {
        self.0[v.index()]
    }

    pub fn is_clear(&self) -> bool {
        !self.0.iter().any(|&b| b)
    }

    pub fn dirty_vertices(&self) -> Vec<Vertex> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| Vertex::from_index(i))
            .collect()
    }

    fn as_row(&self) -> BoolMatrix {
        BoolMatrix::from_rows(vec![self.0.clone()]).expect("non-empty vector")
    }
}

/// `d * M * ... * M` with `steps` factors of `M`.
pub fn row_star(d: &ContaminationVector, m: &BoolMatrix, steps: usize) -> Result<ContaminationVector> {
    if steps == 0 {
        return Err(Error::InvalidArgument("step count must be at least 1".into()));
    }
    if !m.is_square() || m.rows() != d.len() {
        return Err(Error::Dimension(format!(
            "vector of length {} against {}x{} matrix",
            d.len(),
            m.rows(),
            m.cols()
        )));
    }
    let mut row = d.as_row();
    for _ in 0..steps {
        row = row.star(m)?;
    }
    Ok(ContaminationVector(row.row(0).to_vec()))
}

/// Adjacency of the subgraph the target can roam without being seen from
/// any of `positions`. Rows and columns of visible vertices are zeroed and
/// every invisible vertex carries a self-loop, so an isolated dirty vertex
/// stays dirty under star-multiplication.
pub fn modified_adjacency(g: &Graph, b: &BoolMatrix, positions: &[Vertex]) -> Result<BoolMatrix> {
    let n = g.n();
    if positions.is_empty() {
        return Err(Error::InvalidArgument("at least one searcher position required".into()));
    }
    if b.rows() != n || b.cols() != n {
        return Err(Error::Dimension(format!(
            "visibility matrix is {}x{}, graph has {n} vertices",
            b.rows(),
            b.cols()
        )));
    }
    let mut visible = vec![false; n];
    for &p in positions {
        g.check_vertex(p)?;
        for (y, seen) in visible.iter_mut().enumerate() {
            *seen |= b.get(p.index(), y);
        }
    }
    let mut out = BoolMatrix::zeros(n, n);
    for x in (0..n).filter(|&x| !visible[x]) {
        out.set(x, x, true);
        for &y in g.neighbors(x) {
            if !visible[y] {
                out.set(x, y, true);
            }
        }
    }
    Ok(out)
}

/// How the target moves relative to a searcher step.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MoveModel {
    /// The target takes one edge step at the same time as the searchers,
    /// unobserved, and then keeps moving through whatever the searchers
    /// cannot see from their new positions.
    #[default]
    Concurrent,
    /// The searchers move first; the target then moves only through
    /// vertices invisible from the new positions.
    Sequential,
}

impl FromStr for MoveModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "concurrent" => Ok(MoveModel::Concurrent),
            "sequential" => Ok(MoveModel::Sequential),
            other => Err(Error::InvalidArgument(format!(
                "move model must be `concurrent` or `sequential`, got {other:?}"
            ))),
        }
    }
}

impl fmt::Display for MoveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveModel::Concurrent => "concurrent",
            MoveModel::Sequential => "sequential",
        })
    }
}

/// Dirty set after the searchers step to `positions` and the target makes
/// `steps` hops, written as star-products:
///
/// * sequential: `d * Ā^steps`
/// * concurrent: `d * (A + I) * diag(invisible) * Ā^(steps - 1)`
pub fn propagate(
    g: &Graph,
    b: &BoolMatrix,
    d: &ContaminationVector,
    positions: &[Vertex],
    steps: usize,
    model: MoveModel,
) -> Result<ContaminationVector> {
    let a_bar = modified_adjacency(g, b, positions)?;
    match model {
        MoveModel::Sequential => row_star(d, &a_bar, steps),
        MoveModel::Concurrent => {
            if steps == 0 {
                return Err(Error::InvalidArgument("step count must be at least 1".into()));
            }
            let n = g.n();
            let mut hop = g.adjacency_matrix();
            let mut mask = BoolMatrix::zeros(n, n);
            for i in 0..n {
                hop.set(i, i, true);
                mask.set(i, i, a_bar.get(i, i));
            }
            let moved = row_star(d, &hop, 1)?;
            let arrived = row_star(&moved, &mask, 1)?;
            if steps == 1 {
                Ok(arrived)
            } else {
                row_star(&arrived, &a_bar, steps - 1)
            }
        }
    }
}
