use std::fmt::Write;

use super::graph::{InfoGraph, StateId};

/// Renders the materialized part of an information graph as a DOT digraph.
///
/// Nodes appear in state-id order and arcs in expansion order, so identical
/// graphs give identical text. Clear states are drawn as double circles;
/// arcs are labelled `move/cost`.
pub fn export_dot(ig: &InfoGraph) -> String {
    let mut out = String::new();
    out.push_str("digraph info {\n");
    out.push_str("  node [shape=ellipse];\n");
    for (id, s) in ig.states() {
        let shape = if s.is_clear() { ", shape=doublecircle" } else { "" };
        writeln!(out, "  s{id} [label=\"{s}\"{shape}];").unwrap();
    }
    for id in 0..ig.len() as StateId {
        if let Some(arcs) = ig.arcs(id) {
            for a in arcs {
                writeln!(out, "  s{id} -> s{} [label=\"{}/{}\"];", a.target, a.mv, a.cost).unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}
