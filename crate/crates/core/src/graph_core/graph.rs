use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::matrix::BoolMatrix;
use crate::error::{Error, Result};

/// A vertex id. Ids are 1-based everywhere outside this crate's internals;
/// [`Vertex::index`] gives the 0-based slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vertex(pub u32);

impl Vertex {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }

    #[inline]
    pub fn from_index(index: usize) -> Self {
        Vertex(index as u32 + 1)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Simple undirected graph on vertices `1..=n`, optionally embedded in the plane.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    coords: Option<Vec<[f64; 2]>>,
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    n: usize,
    edges: Vec<[u32; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coords: Option<Vec<[f64; 2]>>,
}

impl Graph {
    /// Builds a graph from 1-based edge pairs. Duplicate edges are merged;
    /// self-loops and out-of-range endpoints are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        if n == 0 {
            return Err(Error::InvalidGraph("graph must have at least one vertex".into()));
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v == 0 || v as usize > n {
                    return Err(Error::InvalidVertex { vertex: v, n });
                }
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            let (x, y) = (a.min(b) as usize - 1, a.max(b) as usize - 1);
            set.insert((x, y));
        }
        let mut adj = vec![Vec::new(); n];
        for &(x, y) in &set {
            adj[x].push(y);
            adj[y].push(x);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            adj,
            edges: set.into_iter().collect(),
            coords: None,
        })
    }

    pub fn with_coords(mut self, coords: Vec<[f64; 2]>) -> Result<Self> {
        if coords.len() != self.n {
            return Err(Error::InvalidGraph(format!(
                "expected {} coordinates, got {}",
                self.n,
                coords.len()
            )));
        }
        if coords.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::InvalidGraph("coordinates must be finite".into()));
        }
        self.coords = Some(coords);
        Ok(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(text)?;
        let g = Graph::new(file.n, file.edges.iter().map(|e| (e[0], e[1])))?;
        match file.coords {
            Some(c) => g.with_coords(c),
            None => Ok(g),
        }
    }

    /// Canonical JSON: edges sorted by (min, max) endpoint.
    pub fn to_json(&self) -> String {
        let file = GraphFile {
            n: self.n,
            edges: self.edges().map(|(a, b)| [a.0, b.0]).collect(),
            coords: self.coords.clone(),
        };
        serde_json::to_string(&file).expect("graph serializes")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        (0..self.n).map(Vertex::from_index)
    }

    /// Edges as `(smaller, larger)` pairs in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.edges
            .iter()
            .map(|&(x, y)| (Vertex::from_index(x), Vertex::from_index(y)))
    }

    pub fn coords(&self) -> Option<&[[f64; 2]]> {
        self.coords.as_deref()
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v.0 == 0 || v.0 as usize > self.n {
            Err(Error::InvalidVertex { vertex: v.0, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Sorted 0-based neighbor indices of `index`.
    #[inline]
    pub fn neighbors(&self, index: usize) -> &[usize] {
        &self.adj[index]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v.index()].len()
    }

    pub fn is_adjacent(&self, a: Vertex, b: Vertex) -> bool {
        self.adj[a.index()].binary_search(&b.index()).is_ok()
    }

    /// `N[v]` in ascending order: `v` together with its neighbors.
    pub fn closed_neighborhood(&self, v: Vertex) -> Vec<Vertex> {
        let i = v.index();
        let mut out: Vec<Vertex> = self.adj[i].iter().map(|&j| Vertex::from_index(j)).collect();
        let at = out.partition_point(|w| w.index() < i);
        out.insert(at, v);
        out
    }

    pub fn adjacency_matrix(&self) -> BoolMatrix {
        let mut a = BoolMatrix::zeros(self.n, self.n);
        for &(x, y) in &self.edges {
            a.set(x, y, true);
            a.set(y, x, true);
        }
        a
    }

    /// Hop distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.distances_from(0).iter().all(Option::is_some)
    }

    /// Connected components of the subgraph induced by `keep`, ordered by
    /// smallest member; each component lists its vertices ascending.
    pub fn connected_components(&self, keep: &[Vertex]) -> Result<Vec<Vec<Vertex>>> {
        let mut mask = FixedBitSet::with_capacity(self.n);
        for &v in keep {
            self.check_vertex(v)?;
            mask.insert(v.index());
        }
        Ok(self
            .component_masks(&mask)
            .into_iter()
            .map(|c| c.ones().map(Vertex::from_index).collect())
            .collect())
    }

    /// Bitset form of [`Graph::connected_components`].
    pub(crate) fn component_masks(&self, keep: &FixedBitSet) -> Vec<FixedBitSet> {
        let mut seen = FixedBitSet::with_capacity(self.n);
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for start in keep.ones() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = FixedBitSet::with_capacity(self.n);
            seen.insert(start);
            stack.push(start);
            while let Some(u) = stack.pop() {
                comp.insert(u);
                for &w in &self.adj[u] {
                    if keep.contains(w) && !seen.contains(w) {
                        seen.insert(w);
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }
}
