//! JSON shape for skeletons and derivation trees:
//!
//! ```json
//! { "root": 0,
//!   "nodes": [
//!     { "id": 0, "kind": "clause", "clause": 2, "text": "h(X) :- q(X), p(X).",
//!       "bindings": { "X": "[]" }, "children": [1, 2] },
//!     { "id": 2, "kind": "bottom", "children": [] } ] }
//! ```
//!
//! Nodes are numbered in preorder. `bindings` is omitted for skeletons.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{DerivationTree, Instance, SkLabel, Skeleton, Tree};
use crate::parser::{parse_clause, parse_term};
use crate::syntax::{Ident, Signature, Subst, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Clause,
    Bottom,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeJson {
    pub id: usize,
    pub kind: NodeKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clause: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bindings: Option<BTreeMap<String, String>>,
    pub children: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub root: usize,
    pub nodes: Vec<NodeJson>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeJsonError(pub String);

impl fmt::Display for TreeJsonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "malformed tree: {}", self.0)
    }
}

impl std::error::Error for TreeJsonError {}

fn flatten<L>(t: &Tree<L>, label: &dyn Fn(&L) -> NodeJson, nodes: &mut Vec<NodeJson>) -> usize {
    let id = nodes.len();
    match t {
        Tree::Bottom => {
            nodes.push(NodeJson {
                id,
                kind: NodeKind::Bottom,
                clause: None,
                text: None,
                bindings: None,
                children: Vec::new(),
            });
        }
        Tree::Node(l, children) => {
            let mut node = label(l);
            node.id = id;
            nodes.push(node);
            let ids: Vec<usize> = children.iter().map(|c| flatten(c, label, nodes)).collect();
            nodes[id].children = ids;
        }
    }
    id
}

fn unflatten<L>(
    doc: &TreeJson,
    id: usize,
    label: &dyn Fn(&NodeJson) -> Result<L, TreeJsonError>,
    depth: usize,
) -> Result<Tree<L>, TreeJsonError> {
    if depth > doc.nodes.len() {
        return Err(TreeJsonError("cycle in children".into()));
    }
    let node = doc
        .nodes
        .iter()
        .find(|n| n.id == id)
        .ok_or_else(|| TreeJsonError(format!("no node with id {id}")))?;
    match node.kind {
        NodeKind::Bottom => Ok(Tree::Bottom),
        NodeKind::Clause => {
            let l = label(node)?;
            let children = node
                .children
                .iter()
                .map(|&c| unflatten(doc, c, label, depth + 1))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Tree::Node(l, children))
        }
    }
}

fn clause_node(index: usize, text: String, bindings: Option<BTreeMap<String, String>>) -> NodeJson {
    NodeJson {
        id: 0,
        kind: NodeKind::Clause,
        clause: Some(index),
        text: Some(text),
        bindings,
        children: Vec::new(),
    }
}

fn sk_label(node: &NodeJson, sig: &Signature) -> Result<SkLabel, TreeJsonError> {
    let index = node
        .clause
        .ok_or_else(|| TreeJsonError(format!("node {} has no clause index", node.id)))?;
    let text = node
        .text
        .as_deref()
        .ok_or_else(|| TreeJsonError(format!("node {} has no text", node.id)))?;
    let clause = parse_clause(text, sig).map_err(|d| TreeJsonError(format!("node {}: {d}", node.id)))?;
    Ok(SkLabel { index, clause })
}

pub fn skeleton_to_json(s: &Skeleton) -> TreeJson {
    let mut nodes = Vec::new();
    let root = flatten(
        s,
        &|l: &SkLabel| clause_node(l.index, l.clause.to_string(), None),
        &mut nodes,
    );
    TreeJson { root, nodes }
}

pub fn skeleton_from_json(doc: &TreeJson, sig: &Signature) -> Result<Skeleton, TreeJsonError> {
    unflatten(doc, doc.root, &|n| sk_label(n, sig), 0)
}

pub fn derivation_tree_to_json(t: &DerivationTree) -> TreeJson {
    let mut nodes = Vec::new();
    let root = flatten(
        t,
        &|l: &Instance| {
            let bindings = l.theta.iter().map(|(v, t)| (v.to_string(), t.to_string())).collect();
            clause_node(l.index, l.clause.to_string(), Some(bindings))
        },
        &mut nodes,
    );
    TreeJson { root, nodes }
}

pub fn derivation_tree_from_json(doc: &TreeJson, sig: &Signature) -> Result<DerivationTree, TreeJsonError> {
    unflatten(
        doc,
        doc.root,
        &|n| {
            let base = sk_label(n, sig)?;
            let mut theta = Subst::new();
            for (v, t) in n.bindings.iter().flatten() {
                let term = parse_term(t, sig).map_err(|d| TreeJsonError(format!("node {}: {d}", n.id)))?;
                theta.insert(Var(Ident::parse(v)), term);
            }
            Ok(Instance {
                index: base.index,
                clause: base.clause,
                theta,
            })
        },
        0,
    )
}
