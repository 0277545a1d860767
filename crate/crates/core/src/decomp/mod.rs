//! Tree, path and branch decompositions, in the classic shape-and-labelling
//! form and in the recursive form where every node carries a subgraph.
//!
//! Widths use the no-minus-one convention: the width of a tree or path
//! decomposition is its largest bag.

mod convert;
mod recursive;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{domain, precondition, Result};
use crate::graph::{fmt_set, EdgeId, Graph, VertexId, VertexSet};

pub(crate) use convert::split_sourced;
pub use convert::{
    branch_from_recursive, branch_to_recursive, path_from_recursive, path_to_recursive, tree_from_recursive,
    tree_to_recursive,
};
pub use recursive::{boundary_global, RecBranchDec, RecPathDec, RecTreeDec, SubtreePath};

/// First clause a decomposition fails, with a human readable detail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub clause: String,
    pub detail: String,
}

impl Violation {
    pub(crate) fn new(clause: impl Into<String>, detail: impl Into<String>) -> Self {
        Violation { clause: clause.into(), detail: detail.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.clause, self.detail)
    }
}

pub type Validation = std::result::Result<(), Violation>;

fn check(ok: bool, clause: &str, detail: impl FnOnce() -> String) -> Validation {
    if ok {
        Ok(())
    } else {
        Err(Violation::new(clause, detail()))
    }
}

/// A tree `shape` whose vertices carry bags of graph vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDec {
    pub shape: Graph,
    pub bags: BTreeMap<VertexId, VertexSet>,
}

impl TreeDec {
    pub fn new(shape: Graph, bags: BTreeMap<VertexId, VertexSet>) -> Self {
        TreeDec { shape, bags }
    }

    /// One bag holding every vertex.
    pub fn trivial(g: &Graph) -> Self {
        TreeDec { shape: Graph::discrete([0]), bags: BTreeMap::from([(0, g.vertices().clone())]) }
    }

    pub fn validate(&self, g: &Graph) -> Validation {
        check(self.shape.is_tree(), "shape", || "the shape is not a tree".into())?;
        check(self.bags.keys().copied().collect::<VertexSet>() == *self.shape.vertices(), "shape", || {
            "bags are not indexed by the shape vertices".into()
        })?;
        for (n, bag) in &self.bags {
            check(bag.is_subset(g.vertices()), "shape", || format!("bag {n} has vertices outside the graph"))?;
        }
        let covered: VertexSet = self.bags.values().flatten().copied().collect();
        check(covered == *g.vertices(), "clause 1 (vertex cover)", || {
            format!("uncovered vertices {}", fmt_set(&g.vertices().difference(&covered).copied().collect()))
        })?;
        for (e, ends) in g.edges() {
            let vs: VertexSet = ends.vertices().collect();
            check(self.bags.values().any(|b| vs.is_subset(b)), "clause 2 (edge cover)", || {
                format!("no bag contains both ends of edge {e}")
            })?;
        }
        // a vertex's bags must span a connected subtree
        for &v in g.vertices() {
            let holding: VertexSet = self.bags.iter().filter(|(_, b)| b.contains(&v)).map(|(&n, _)| n).collect();
            let sub = self.shape.induced(&holding).expect("bag keys are shape vertices");
            check(sub.components().len() <= 1, "clause 3 (connectivity)", || {
                format!("the bags containing vertex {v} are not connected in the shape")
            })?;
        }
        Ok(())
    }

    pub fn is_valid(&self, g: &Graph) -> bool {
        self.validate(g).is_ok()
    }

    /// Largest bag.
    pub fn width(&self) -> usize {
        self.bags.values().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn checked_width(&self, g: &Graph) -> Result<usize> {
        self.validate(g).map_err(|v| precondition(v.to_string()))?;
        Ok(self.width())
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph tree_dec {\n");
        for (n, bag) in &self.bags {
            let _ = writeln!(out, "  t{n} [label=\"{}\"];", fmt_set(bag));
        }
        for (_, ends) in self.shape.edges() {
            let _ = writeln!(out, "  t{} -- t{};", ends.first(), ends.second());
        }
        out.push_str("}\n");
        out
    }
}

/// A sequence of bags glued in a line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathDec {
    pub bags: Vec<VertexSet>,
}

impl PathDec {
    pub fn new(bags: Vec<VertexSet>) -> Self {
        PathDec { bags }
    }

    pub fn validate(&self, g: &Graph) -> Validation {
        for (i, bag) in self.bags.iter().enumerate() {
            check(bag.is_subset(g.vertices()), "shape", || format!("bag {i} has vertices outside the graph"))?;
        }
        let covered: VertexSet = self.bags.iter().flatten().copied().collect();
        check(covered == *g.vertices(), "clause 1 (vertex cover)", || {
            format!("uncovered vertices {}", fmt_set(&g.vertices().difference(&covered).copied().collect()))
        })?;
        for (e, ends) in g.edges() {
            let vs: VertexSet = ends.vertices().collect();
            check(self.bags.iter().any(|b| vs.is_subset(b)), "clause 2 (edge cover)", || {
                format!("no bag contains both ends of edge {e}")
            })?;
        }
        for &v in g.vertices() {
            let idx: Vec<usize> = (0..self.bags.len()).filter(|&i| self.bags[i].contains(&v)).collect();
            let contiguous = idx.windows(2).all(|w| w[1] == w[0] + 1);
            check(contiguous, "clause 3 (connectivity)", || format!("vertex {v} appears in non-consecutive bags"))?;
        }
        Ok(())
    }

    pub fn is_valid(&self, g: &Graph) -> bool {
        self.validate(g).is_ok()
    }

    pub fn width(&self) -> usize {
        self.bags.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn checked_width(&self, g: &Graph) -> Result<usize> {
        self.validate(g).map_err(|v| precondition(v.to_string()))?;
        Ok(self.width())
    }

    /// The same decomposition as a tree whose shape is a path.
    pub fn to_tree_dec(&self) -> TreeDec {
        let n = self.bags.len() as VertexId;
        let edges: Vec<(VertexId, VertexId)> = (1..n).map(|i| (i - 1, i)).collect();
        let shape = Graph::from_edges(n, &edges);
        TreeDec { shape, bags: self.bags.iter().cloned().enumerate().map(|(i, b)| (i as VertexId, b)).collect() }
    }

    pub fn to_dot(&self) -> String {
        self.to_tree_dec().to_dot().replacen("tree_dec", "path_dec", 1)
    }
}

/// A subcubic tree whose leaves are in bijection with the graph edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchDec {
    pub shape: Graph,
    pub leaf_map: BTreeMap<VertexId, EdgeId>,
}

impl BranchDec {
    pub fn new(shape: Graph, leaf_map: BTreeMap<VertexId, EdgeId>) -> Self {
        BranchDec { shape, leaf_map }
    }

    pub fn validate(&self, g: &Graph) -> Validation {
        check(self.shape.is_subcubic_tree(), "shape", || "the shape is not a subcubic tree".into())?;
        let leaves = self.shape.leaves();
        check(self.leaf_map.keys().copied().collect::<VertexSet>() == leaves, "leaf map", || {
            "the leaf map is not defined exactly on the leaves".into()
        })?;
        let image: BTreeSet<EdgeId> = self.leaf_map.values().copied().collect();
        check(image.len() == self.leaf_map.len(), "leaf map", || "two leaves carry the same edge".into())?;
        check(image == g.edge_ids(), "leaf map", || "the leaves do not carry exactly the graph edges".into())?;
        Ok(())
    }

    pub fn is_valid(&self, g: &Graph) -> bool {
        self.validate(g).is_ok()
    }

    /// Graph edges carried by the leaves on `root`'s side once tree edge `cut` is removed.
    fn side_edges(&self, cut: EdgeId, root: VertexId) -> BTreeSet<EdgeId> {
        let mut seen = VertexSet::from([root]);
        let mut stack = vec![root];
        while let Some(n) = stack.pop() {
            for (e, ends) in self.shape.edges() {
                if e == cut || !ends.contains(n) {
                    continue;
                }
                let m = if ends.first() == n { ends.second() } else { ends.first() };
                if seen.insert(m) {
                    stack.push(m);
                }
            }
        }
        seen.iter().filter_map(|n| self.leaf_map.get(n)).copied().collect()
    }

    /// `{A_e, B_e}`: graph edges on either side of tree edge `e`.
    pub fn split(&self, e: EdgeId) -> Result<(BTreeSet<EdgeId>, BTreeSet<EdgeId>)> {
        let ends = self.shape.ends(e).map_err(|_| domain(format!("{e} is not an edge of the shape")))?;
        Ok((self.side_edges(e, ends.first()), self.side_edges(e, ends.second())))
    }

    /// Number of vertices shared by the two sides of tree edge `e`.
    pub fn edge_order(&self, g: &Graph, e: EdgeId) -> Result<usize> {
        let (a, b) = self.split(e)?;
        let va = g.ends_of_edge_set(&a)?;
        let vb = g.ends_of_edge_set(&b)?;
        Ok(va.intersection(&vb).count())
    }

    /// Maximum edge order; 0 for shapes without edges.
    pub fn width(&self, g: &Graph) -> Result<usize> {
        let mut best = 0;
        for e in self.shape.edge_ids() {
            best = best.max(self.edge_order(g, e)?);
        }
        Ok(best)
    }

    pub fn checked_width(&self, g: &Graph) -> Result<usize> {
        self.validate(g).map_err(|v| precondition(v.to_string()))?;
        self.width(g)
    }

    pub fn to_dot(&self, g: &Graph) -> String {
        let mut out = String::from("graph branch_dec {\n");
        for &n in self.shape.vertices() {
            match self.leaf_map.get(&n).and_then(|e| g.ends(*e).ok().map(|ends| (e, ends))) {
                Some((e, ends)) => {
                    let _ = writeln!(out, "  b{n} [label=\"e{e}:{}-{}\"];", ends.first(), ends.second());
                }
                None => {
                    let _ = writeln!(out, "  b{n} [label=\"\", shape=point];");
                }
            }
        }
        for (e, ends) in self.shape.edges() {
            let order = self.edge_order(g, e).unwrap_or(0);
            let _ = writeln!(out, "  b{} -- b{} [label=\"{order}\"];", ends.first(), ends.second());
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests;
