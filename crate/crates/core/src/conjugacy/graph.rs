//! The conjugation graph around an element: shift steps down to the
//! minimal length, and tight steps among equal-length elements.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use super::{conj_min_ids, sort_ids, spherical_subsets, tight_neighbors_ids, TightId};
use crate::engine::ElemId;
use crate::error::Result;
use crate::system::CoxeterSystem;
use crate::word::{Element, GenSubset, Generator};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum EdgeKind {
    /// Length-decreasing shift.
    Shift(Generator),
    /// Equal-length shift.
    Tight1(Generator),
    /// Strong conjugation by `x ∈ W_I`.
    Tight2 { subset: GenSubset, x: Element },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    pub kind: EdgeKind,
}

/// Nodes are sorted in shortlex order; edges are sorted by endpoints, then
/// kind. Between two nodes there is at most one edge of each kind, carrying
/// the least witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjGraph {
    pub nodes: Vec<Element>,
    pub edges: Vec<GraphEdge>,
}

/// The shift closure of `w` together with the minimal set of its class.
pub fn tight_graph(sys: &CoxeterSystem, w: &Element) -> Result<ConjGraph> {
    let mut e = sys.locked();
    let id = sys.id_of(&mut e, w)?;
    let (sc, _, o_min) = conj_min_ids(sys, &mut e, id)?;
    let nodes = sort_ids(&mut e, sc.order.iter().copied().chain(o_min.iter().copied()))?;
    let index: HashMap<ElemId, usize> = nodes.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let subsets = spherical_subsets(sys)?;
    // (from, to, class) -> least kind; class 0 = shift, 1 = tight1, 2 = tight2.
    let mut best: BTreeMap<(usize, usize, u8), EdgeKind> = BTreeMap::new();
    let mut offer = |key: (usize, usize, u8), kind: EdgeKind| {
        best.entry(key)
            .and_modify(|k| {
                if kind < *k {
                    *k = kind.clone();
                }
            })
            .or_insert(kind);
    };
    for (a, &x) in nodes.iter().enumerate() {
        for s in sys.generators() {
            let y = e.conj_gen(x, s)?;
            if let Some(&b) = index.get(&y) {
                if b != a && e.len(y) < e.len(x) {
                    offer((a, b, 0), EdgeKind::Shift(s));
                }
            }
        }
        for (k, y) in tight_neighbors_ids(sys, &mut e, x, &subsets)? {
            let Some(&b) = index.get(&y) else { continue };
            if b == a {
                continue;
            }
            match k {
                TightId::Shift(s) => offer((a, b, 1), EdgeKind::Tight1(s)),
                TightId::Parabolic(subset, xi) => {
                    let x = sys.element_of(&mut e, xi)?;
                    offer((a, b, 2), EdgeKind::Tight2 { subset, x })
                }
            }
        }
    }
    let edges = best
        .into_iter()
        .map(|((from, to, _), kind)| GraphEdge { from, to, kind })
        .collect();
    Ok(ConjGraph {
        nodes: super::to_elements(sys, &mut e, &nodes)?,
        edges,
    })
}

impl ConjGraph {
    pub fn edge_label(sys: &CoxeterSystem, kind: &EdgeKind) -> String {
        match kind {
            EdgeKind::Shift(s) => format!("shift:{}", sys.label(*s)),
            EdgeKind::Tight1(s) => format!("tight1:{}", sys.label(*s)),
            EdgeKind::Tight2 { subset, x } => {
                format!("tight2:{},{}", sys.format_subset(*subset), node_label(sys, x))
            }
        }
    }

    /// Graphviz rendering; byte-stable for a given graph.
    pub fn to_dot(&self, sys: &CoxeterSystem) -> String {
        let mut out = String::from("digraph conj {\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", node_label(sys, n));
        }
        for edge in &self.edges {
            let _ = writeln!(
                out,
                "  n{} -> n{} [label=\"{}\"];",
                edge.from,
                edge.to,
                Self::edge_label(sys, &edge.kind)
            );
        }
        out.push_str("}\n");
        out
    }
}

fn node_label(sys: &CoxeterSystem, e: &Element) -> String {
    if e.is_identity() {
        "1".to_owned()
    } else {
        sys.format_element(e)
    }
}
