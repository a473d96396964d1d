//! Bipartite-graph picture of an antichain in Graphviz DOT.

use std::fmt::Write;

use crate::grid_poset::{order_ideal, Antichain};

/// One node per variable, one edge `x_a -- y_b` per element of the order
/// ideal, antichain edges in bold. With `antichain_only` only the bold edges
/// are drawn.
pub fn render_dot(antichain: &Antichain, antichain_only: bool) -> String {
    let shape = antichain.shape();
    let mut out = String::new();
    let _ = writeln!(out, "graph antichain {{");
    let _ = writeln!(out, "  rankdir=TB;");
    let _ = writeln!(out, "  node [shape=circle];");
    let x_nodes: Vec<String> = (1..=shape.m()).map(|a| format!("x{a}")).collect();
    let y_nodes: Vec<String> = (1..=shape.n()).map(|b| format!("y{b}")).collect();
    for nodes in [&x_nodes, &y_nodes] {
        if !nodes.is_empty() {
            let _ = writeln!(out, "  {{ rank=same; {}; }}", nodes.join("; "));
        }
    }
    let order = order_ideal(antichain);
    for &(a, b) in order.members() {
        let bold = antichain.points().contains(&(a, b));
        if bold {
            let _ = writeln!(out, "  x{a} -- y{b} [style=bold];");
        } else if !antichain_only {
            let _ = writeln!(out, "  x{a} -- y{b};");
        }
    }
    out.push_str("}\n");
    out
}
