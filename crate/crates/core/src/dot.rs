//! Graphviz export for Hasse diagrams, contexts and relations.
//!
//! Idempotent elements are filled, `≤` covers are solid, `α` is dashed and
//! `β` is dotted. DOT has no dash-dot line style, so `E`-blocks are drawn
//! as rounded dashed clusters instead.

use std::fmt::Write;

use crate::algebra::FiniteAlgebra;
use crate::relation::{BinRel, PointSet};
use crate::representation::RepContext;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram of the lattice reduct, bottom at the bottom.
pub fn algebra_to_dot(alg: &FiniteAlgebra, title: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(title)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=circle, fontsize=11];").unwrap();
    writeln!(out, "  edge [arrowhead=none];").unwrap();
    for a in 0..alg.size() {
        let idempotent = alg.mult(a, a) == a;
        let style = if idempotent { ", style=filled, fillcolor=black, fontcolor=white" } else { "" };
        let mut label = alg.name(a);
        if a == alg.one() {
            label.push_str(" (1)");
        }
        if alg.zero() == Some(a) && alg.zero() != Some(alg.one()) {
            label.push_str(" (0)");
        }
        writeln!(out, "  n{a} [label={}{style}];", quote(&label)).unwrap();
    }
    for (a, b) in alg.covers() {
        writeln!(out, "  n{a} -> n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram of a point set.
pub fn poset_to_dot(points: &PointSet, title: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(title)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=point, width=0.1, xlabel=\"\"];").unwrap();
    writeln!(out, "  edge [arrowhead=none];").unwrap();
    for p in 0..points.size() {
        writeln!(out, "  p{p} [xlabel=\"{p}\"];").unwrap();
    }
    for (x, y) in points.covers() {
        writeln!(out, "  p{x} -> p{y};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// The context `(X, ≤, E, α, β)`: covers solid, non-identity arcs of `α`
/// dashed and of `β` dotted, one cluster per `E`-block.
pub fn context_to_dot(ctx: &RepContext, title: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(title)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  compound=true;").unwrap();
    writeln!(out, "  node [shape=circle, width=0.25, fontsize=10];").unwrap();
    for (b, block) in ctx.blocks().iter().enumerate() {
        writeln!(out, "  subgraph cluster_e{b} {{").unwrap();
        writeln!(out, "    style=\"rounded,dashed\";").unwrap();
        writeln!(out, "    label=\"[{}]\";", block[0]).unwrap();
        for p in block {
            writeln!(out, "    p{p} [label=\"{p}\"];").unwrap();
        }
        out.push_str("  }\n");
    }
    for (x, y) in ctx.points().covers() {
        writeln!(out, "  p{x} -> p{y} [arrowhead=none];").unwrap();
    }
    // Involutions are drawn once per orbit, with arrows at both ends.
    let maps = [(ctx.alpha(), "dashed", "α"), (ctx.beta(), "dotted", "β")];
    for (f, style, name) in maps {
        let involution = (0..f.len()).all(|x| f[f[x]] == x);
        for (x, &y) in f.iter().enumerate() {
            if x == y || (involution && y < x) {
                continue;
            }
            let dir = if involution { "both" } else { "forward" };
            writeln!(out, "  p{x} -> p{y} [style={style}, dir={dir}, constraint=false, tooltip=\"{name}\"];").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// A single relation as a directed graph on the points of its context.
pub fn relation_to_dot(r: &BinRel, title: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(title)).unwrap();
    writeln!(out, "  node [shape=circle, width=0.25, fontsize=10];").unwrap();
    for p in 0..r.size() {
        writeln!(out, "  p{p} [label=\"{p}\"];").unwrap();
    }
    for (x, y) in r.pairs() {
        writeln!(out, "  p{x} -> p{y};").unwrap();
    }
    out.push_str("}\n");
    out
}
