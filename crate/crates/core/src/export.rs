//! DOT and JSON renderings of Hubbard trees.

use std::fmt::Write;

use serde::Serialize;

use crate::charpoint::{Chain, CharPoint};
use crate::itinerary::Itinerary;
use crate::seq::Seq;
use crate::tree::MarkedTree;

/// Graphviz source: critical orbit filled, branch points double circled.
pub fn to_dot(t: &MarkedTree) -> String {
    let mut out = String::new();
    writeln!(out, "graph hubbard {{").unwrap();
    writeln!(out, "  label=\"{}\";", t.nu()).unwrap();
    writeln!(out, "  node [shape=circle, fontname=monospace];").unwrap();
    for (i, v) in t.vertices().iter().enumerate() {
        let mut attrs = vec![format!("label=\"{}\"", label(t, i))];
        if v.on_critical_orbit {
            attrs.push("style=filled".into());
            attrs.push("fillcolor=lightblue".into());
        }
        if v.is_branch {
            attrs.push("shape=doublecircle".into());
        }
        writeln!(out, "  v{i} [{}];", attrs.join(", ")).unwrap();
    }
    for (a, b) in t.edges() {
        writeln!(out, "  v{a} -- v{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

fn label(t: &MarkedTree, v: usize) -> String {
    let it = t.itinerary(v).to_string();
    match t.critical_orbit().iter().position(|&x| x == v) {
        Some(k) => format!("c{k}\\n{it}"),
        None => it,
    }
}

#[derive(Debug, Serialize)]
pub struct VertexJson<'a> {
    pub itinerary: &'a Itinerary,
    pub flags: Vec<&'static str>,
    pub degree: usize,
}

#[derive(Debug, Serialize)]
pub struct TreeJson<'a> {
    pub nu: &'a Seq,
    pub vertices: Vec<VertexJson<'a>>,
    pub edges: Vec<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub characteristic_chain: Option<&'a [CharPoint]>,
}

pub fn tree_json<'a>(t: &'a MarkedTree, chain: Option<&'a Chain>) -> TreeJson<'a> {
    let vertices = t
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut flags = Vec::new();
            if i == t.c0() {
                flags.push("critical_point");
            }
            if v.on_critical_orbit {
                flags.push("critical_orbit");
            }
            if v.is_branch {
                flags.push("branch");
            }
            if v.is_endpoint {
                flags.push("endpoint");
            }
            VertexJson { itinerary: &v.itinerary, flags, degree: v.degree }
        })
        .collect();
    TreeJson {
        nu: t.nu(),
        vertices,
        edges: t.edges().into_iter().map(|(a, b)| [a, b]).collect(),
        characteristic_chain: chain.map(|c| c.points.as_slice()),
    }
}

pub fn to_json(t: &MarkedTree, chain: Option<&Chain>) -> String {
    serde_json::to_string_pretty(&tree_json(t, chain)).expect("tree serializes")
}
