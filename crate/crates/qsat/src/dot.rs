//! Graphviz output. Color-1 vertices get a doubled border.

use std::fmt::Write;

use qsat_core::dag::{Color, ColoredDag};
use qsat_core::realize::Realization;
use qsat_core::stallings::SubgroupGraph;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\"").replace('\n', "\\n"))
}

/// Covering relations of the order: `u < v` with nothing strictly between.
pub fn hasse_edges(d: &ColoredDag) -> Vec<(usize, usize)> {
    let reach = d.reachability();
    let n = d.len();
    let mut out = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && reach[u][v] && !(0..n).any(|w| w != u && w != v && reach[u][w] && reach[w][v]) {
                out.push((u, v));
            }
        }
    }
    out
}

fn vertex_line(out: &mut String, d: &ColoredDag, v: usize, label: &str) {
    let border = if d.color(v) == Color::One { ", peripheries=2" } else { "" };
    writeln!(out, "  {} [label={}{border}];", quote(d.id(v)), quote(label)).unwrap();
}

pub fn dag_dot(d: &ColoredDag) -> String {
    let mut out = String::from("digraph dag {\n  rankdir=BT;\n  node [shape=ellipse];\n");
    for v in 0..d.len() {
        vertex_line(&mut out, d, v, d.id(v));
    }
    for (u, v) in hasse_edges(d) {
        writeln!(out, "  {} -> {};", quote(d.id(u)), quote(d.id(v))).unwrap();
    }
    out.push_str("}\n");
    out
}

/// The realized lattice, each vertex annotated with its quotient.
pub fn realization_dot(r: &Realization) -> String {
    let d = r.dag();
    let mut out =
        format!("digraph lattice {{\n  label={};\n  rankdir=BT;\n  node [shape=box];\n", quote(&format!("F{}", r.ambient_rank())));
    for v in 0..d.len() {
        vertex_line(&mut out, d, v, &format!("{}\nF/N = {}", d.id(v), r.quotient(v).expr()));
    }
    for (u, v) in hasse_edges(d) {
        writeln!(out, "  {} -> {};", quote(d.id(u)), quote(d.id(v))).unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn stallings_dot(g: &SubgroupGraph) -> String {
    let mut out = String::from("digraph stallings {\n  node [shape=circle];\n");
    writeln!(out, "  {} [peripheries=2];", g.base()).unwrap();
    for v in 0..g.vertex_count() {
        if v != g.base() {
            writeln!(out, "  {v};").unwrap();
        }
    }
    for e in g.edges() {
        writeln!(out, "  {} -> {} [label=\"x{}\"];", e.source, e.target, e.label).unwrap();
    }
    out.push_str("}\n");
    out
}
