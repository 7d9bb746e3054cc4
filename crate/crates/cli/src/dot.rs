//! Graphviz export of posets (Hasse diagrams) and circuit DAGs.

use latcc::circuit::{Annotation, CircuitDag, Wire};
use latcc::order::{BoundedPoset, Poset};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn poset(p: &Poset) -> String {
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for id in p.ids() {
        out.push_str(&format!("  {};\n", quote(id)));
    }
    for &(a, b) in p.covers() {
        out.push_str(&format!("  {} -> {};\n", quote(p.id(a)), quote(p.id(b))));
    }
    out.push_str("}\n");
    out
}

pub fn annotation(p: &BoundedPoset, alphabet: &[String], a: &Annotation) -> String {
    match a {
        Annotation::Const(e) => p.id(*e).to_owned(),
        Annotation::Input { var, map } => {
            let parts: Vec<String> = alphabet.iter().zip(map).map(|(s, &e)| format!("{s}:{}", p.id(e))).collect();
            format!("x{var}[{}]", parts.join(","))
        }
    }
}

fn node(w: Wire) -> (String, Option<&'static str>) {
    match w {
        Wire::Input(l) => (format!("in{l}"), None),
        Wire::And(g) => (format!("g{g}"), Some("meet")),
        Wire::Or(g) => (format!("g{g}"), Some("join")),
    }
}

pub fn dag(d: &CircuitDag) -> String {
    let mut out = String::from("digraph circuit {\n  rankdir=LR;\n");
    for (l, a) in d.inputs.iter().enumerate() {
        out.push_str(&format!("  in{l} [shape=box, label={}];\n", quote(&annotation(&d.poset, &d.alphabet, a))));
    }
    for (g, gate) in d.gates.iter().enumerate() {
        out.push_str(&format!("  g{g} [shape=circle];\n"));
        for w in [gate.left, gate.right] {
            let (src, label) = node(w);
            match label {
                Some(l) => out.push_str(&format!("  {src} -> g{g} [label={l}];\n")),
                None => out.push_str(&format!("  {src} -> g{g};\n")),
            }
        }
    }
    let (src, label) = node(d.output);
    out.push_str("  out [shape=doublecircle];\n");
    match label {
        Some(l) => out.push_str(&format!("  {src} -> out [label={l}];\n")),
        None => out.push_str(&format!("  {src} -> out;\n")),
    }
    out.push_str("}\n");
    out
}
