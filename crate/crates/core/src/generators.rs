//! Seeded instance families: paths, complete binary trees, grids, random
//! trees and grids with randomly deleted edges.
//!
//! Random families use xoshiro256** seeded through
//! `SeedableRng::seed_from_u64`. Draws never go through platform-dependent
//! float or distribution code:
//!
//! * an integer in `0..k` is `(x * k) >> 64` for the next raw output `x`;
//! * a probability draw is `(x >> 11) * 2^-53`, compared with `< p`.
//!
//! So a `(family, parameters, seed)` triple fixes the graph on every platform.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

use crate::error::{Error, Result};
use crate::graph_core::Graph;

fn rng(seed: u64) -> Xoshiro256StarStar {
    Xoshiro256StarStar::seed_from_u64(seed)
}

fn below(rng: &mut impl RngCore, k: u64) -> u64 {
    ((rng.next_u64() as u128 * k as u128) >> 64) as u64
}

fn unit(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Vertices `1..=n` joined in a line.
pub fn path(n: usize) -> Result<Graph> {
    Graph::new(n, (1..n as u32).map(|i| (i, i + 1)))
}

/// Level-order numbering: root 1, children of `i` are `2i` and `2i + 1`.
pub fn complete_binary_tree(depth: u32) -> Result<Graph> {
    if depth > 24 {
        return Err(Error::InvalidArgument(format!("tree depth {depth} is too large")));
    }
    let n = (1u32 << (depth + 1)) - 1;
    Graph::new(n as usize, (2..=n).map(|c| (c / 2, c)))
}

/// `rows x cols` four-neighbour grid, numbered row-major from 1. Vertex
/// `(r, c)` (both 1-based) sits at coordinates `(c - 1, r - 1)`.
pub fn grid(rows: usize, cols: usize) -> Result<Graph> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidArgument(format!("grid {rows}x{cols} has no vertices")));
    }
    let id = |r: usize, c: usize| (r * cols + c + 1) as u32;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    let coords = (0..rows)
        .flat_map(|r| (0..cols).map(move |c| [c as f64, r as f64]))
        .collect();
    Graph::new(rows * cols, edges)?.with_coords(coords)
}

/// Random tree grown from a root with two children.
///
/// Vertices are processed in breadth-first order (ids are handed out in the
/// same order). Each non-root vertex above `max_depth` draws its number of
/// children once, uniformly from {0, 1, 2}; vertices at `max_depth` get none.
pub fn random_tree(max_depth: u32, seed: u64) -> Result<Graph> {
    if max_depth == 0 {
        return Err(Error::InvalidArgument("random tree needs max depth >= 1".into()));
    }
    let mut rng = rng(seed);
    let mut edges = vec![(1u32, 2u32), (1, 3)];
    let mut next = 4u32;
    let mut queue: VecDeque<(u32, u32)> = VecDeque::from([(2, 1), (3, 1)]);
    while let Some((v, depth)) = queue.pop_front() {
        if depth >= max_depth {
            continue;
        }
        for _ in 0..below(&mut rng, 3) {
            edges.push((v, next));
            queue.push_back((next, depth + 1));
            next += 1;
        }
    }
    Graph::new((next - 1) as usize, edges)
}

fn connected_without(n: usize, edges: &[(usize, usize)], removed: &FixedBitSet, skip: usize) -> bool {
    let mut seen = FixedBitSet::with_capacity(n);
    let mut stack = vec![0usize];
    seen.insert(0);
    while let Some(v) = stack.pop() {
        for (k, &(a, b)) in edges.iter().enumerate() {
            if k == skip || removed.contains(k) {
                continue;
            }
            let w = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if !seen.put(w) {
                stack.push(w);
            }
        }
    }
    seen.count_ones(..) == n
}

/// Full grid with edges removed at random.
///
/// Edges are visited in ascending `(min vertex, max vertex)` order. An edge
/// whose removal would disconnect the graph is kept without consuming a
/// random draw; any other edge is removed with probability `p`.
pub fn deleted_grid(rows: usize, cols: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!(
            "deletion probability {p} is outside [0, 1]"
        )));
    }
    let full = grid(rows, cols)?;
    let mut rng = rng(seed);
    let edges: Vec<(usize, usize)> = full.edges().map(|(a, b)| (a.index(), b.index())).collect();
    let mut removed = FixedBitSet::with_capacity(edges.len());
    for k in 0..edges.len() {
        if connected_without(full.n(), &edges, &removed, k) && unit(&mut rng) < p {
            removed.insert(k);
        }
    }
    let kept = edges
        .iter()
        .enumerate()
        .filter(|(k, _)| !removed.contains(*k))
        .map(|(_, &(a, b))| (a as u32 + 1, b as u32 + 1));
    Graph::new(rows * cols, kept)?.with_coords(full.coords().unwrap().to_vec())
}
