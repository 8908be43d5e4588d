#![allow(dead_code)]

use pursuit_core::generators;
use pursuit_core::info::{solve, InfoSpace, Mode, Schedule, SolveOptions};
use pursuit_core::{build_visibility, BoolMatrix, Graph, VisibilitySpec};
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

pub fn range(g: &Graph, l: u32) -> BoolMatrix {
    build_visibility(g, &VisibilitySpec::Range(l)).unwrap()
}

/// Random spanning tree plus each remaining pair with probability 1/4.
pub fn random_connected(n: usize, seed: u64) -> Graph {
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 2..=n as u32 {
        let parent = 1 + (rng.next_u64() % (v as u64 - 1)) as u32;
        edges.push((parent, v));
    }
    for a in 1..=n as u32 {
        for b in a + 1..=n as u32 {
            if rng.next_u64() % 4 == 0 {
                edges.push((a, b));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Every generator instance with at most seven vertices.
pub fn small_family_instances() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 1..=7 {
        out.push((format!("path{n}"), generators::path(n).unwrap()));
    }
    for d in 0..=2 {
        out.push((format!("tree{d}"), generators::complete_binary_tree(d).unwrap()));
    }
    for r in 1..=7 {
        for c in 1..=7 {
            if r * c <= 7 {
                out.push((format!("grid{r}x{c}"), generators::grid(r, c).unwrap()));
            }
        }
    }
    for seed in 0..40 {
        let g = generators::random_tree(2, seed).unwrap();
        if g.n() <= 7 {
            out.push((format!("rtree{seed}"), g));
        }
    }
    for seed in 0..10 {
        out.push((
            format!("dgrid2x3s{seed}"),
            generators::deleted_grid(2, 3, 0.5, seed).unwrap(),
        ));
    }
    out
}

pub fn optimal(g: &Graph, b: &BoolMatrix, mode: Mode) -> Schedule {
    let opts = SolveOptions {
        mode,
        ..Default::default()
    };
    solve(g, b, &opts).unwrap().schedule
}

pub fn space(g: &Graph, b: &BoolMatrix) -> InfoSpace {
    InfoSpace::new(g, b, Default::default()).unwrap()
}
