//! Text, DOT and JSON renderings of a normal-form DAG.

use hopoly_core::dagnf::{var_name, Node, NormalDag, RootExpr};
use hopoly_core::Poly1;
use num_traits::Zero;
use serde::Serialize;
use std::fmt::Write;

fn label_text(p: &Poly1) -> String {
    p.display_with(var_name).to_string()
}

fn node_name(u: usize) -> String {
    match u {
        0 => "1".into(),
        1 => "N".into(),
        u => format!("Y{u}"),
    }
}

pub fn text(dag: &NormalDag, roots: &[RootExpr]) -> String {
    let mut out = String::new();
    for u in dag.lam_nodes() {
        if let Ok(Node::Lam { label, .. }) = dag.node(u) {
            let h = dag.height(u).unwrap_or(0);
            writeln!(out, "{} = L({})  [height {h}]", node_name(u), label_text(label)).unwrap();
        }
    }
    for (i, r) in roots.iter().enumerate() {
        writeln!(out, "root {i}: {}", label_text(&r.label)).unwrap();
    }
    out
}

pub fn dot(dag: &NormalDag, roots: &[RootExpr]) -> String {
    let mut out = String::from("digraph normal_form {\n");
    for (u, node) in dag.nodes().iter().enumerate() {
        match node {
            Node::Leaf1 => writeln!(out, "  n{u} [shape=plaintext, label=\"1\"];"),
            Node::LeafN => writeln!(out, "  n{u} [shape=plaintext, label=\"N\"];"),
            Node::Lam { label, .. } => writeln!(out, "  n{u} [shape=box, label=\"Λ({})\"];", label_text(label)),
        }
        .unwrap();
    }
    for (u, node) in dag.nodes().iter().enumerate() {
        if let Node::Lam { children, .. } = node {
            for c in children {
                writeln!(out, "  n{c} -> n{u} [dir=back];").unwrap();
            }
        }
    }
    for (i, r) in roots.iter().enumerate() {
        writeln!(out, "  r{i} [shape=ellipse, label=\"{}\"];", label_text(&r.label)).unwrap();
        let mut children: Vec<usize> = r.label.variables().into_iter().map(|v| v.0 as usize).collect();
        if !r.label.constant_term().is_zero() {
            children.insert(0, 0);
        }
        for c in children {
            writeln!(out, "  n{c} -> r{i} [dir=back];").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct JsonNode {
    id: usize,
    kind: &'static str,
    label: String,
    children: Vec<usize>,
}

#[derive(Serialize)]
struct JsonRoot {
    label: String,
}

#[derive(Serialize)]
struct JsonDag {
    nodes: Vec<JsonNode>,
    roots: Vec<JsonRoot>,
}

pub fn json(dag: &NormalDag, roots: &[RootExpr]) -> String {
    let nodes = dag
        .nodes()
        .iter()
        .enumerate()
        .map(|(id, node)| match node {
            Node::Leaf1 => JsonNode { id, kind: "one", label: "1".into(), children: vec![] },
            Node::LeafN => JsonNode { id, kind: "n", label: "N".into(), children: vec![] },
            Node::Lam { label, children } => JsonNode { id, kind: "lam", label: label_text(label), children: children.clone() },
        })
        .collect();
    let roots = roots.iter().map(|r| JsonRoot { label: label_text(&r.label) }).collect();
    serde_json::to_string_pretty(&JsonDag { nodes, roots }).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use hopoly_core::dagnf::nf_build;
    use hopoly_core::syntax::parse_poly2;

    #[test]
    fn renderings() {
        let (dag, root) = nf_build(&parse_poly2("L(N+1) + L(1+N)").unwrap());
        let roots = [root];
        assert_eq!(text(&dag, &roots), "Y2 = L(N + 1)  [height 1]\nroot 0: 2*Y2\n");
        let d = dot(&dag, &roots);
        assert!(d.contains("n2 [shape=box, label=\"Λ(N + 1)\"]"));
        assert!(d.contains("n0 -> n2") && d.contains("n1 -> n2") && d.contains("n2 -> r0"));
        let v: serde_json::Value = serde_json::from_str(&json(&dag, &roots)).unwrap();
        assert_eq!(v["nodes"][2]["label"], "N + 1");
        assert_eq!(v["nodes"][2]["children"], serde_json::json!([0, 1]));
        assert_eq!(v["roots"][0]["label"], "2*Y2");
    }
}
