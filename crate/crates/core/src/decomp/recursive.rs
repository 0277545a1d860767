//! Recursive decompositions. Every non-empty node stores the sourced subgraph
//! it decomposes, so validity is checked locally against the parent.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{check, Validation, Violation};
use crate::error::{domain, Result};
use crate::graph::{fmt_set, EdgeSet, SourcedGraph, VertexSet};

/// Child indices from the root: `[]` is the root, `[0, 1]` the right child of the left child.
pub type SubtreePath = Vec<usize>;

fn at(path: &str, i: usize) -> String {
    format!("{path}.{i}")
}

fn located(path: &str, v: Violation) -> Violation {
    Violation { clause: v.clause, detail: format!("at {path}: {}", v.detail) }
}

fn edge_set(g: &SourcedGraph) -> EdgeSet {
    g.graph.edge_ids()
}

fn is_subgraph(sub: &SourcedGraph, of: &SourcedGraph) -> bool {
    sub.graph.is_subgraph_of(&of.graph)
}

fn empty_graph() -> SourcedGraph {
    SourcedGraph::default()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "lowercase")]
pub enum RecTreeDec {
    Empty,
    Node { graph: SourcedGraph, bag: VertexSet, left: Box<RecTreeDec>, right: Box<RecTreeDec> },
}

impl RecTreeDec {
    pub fn node(graph: SourcedGraph, left: RecTreeDec, bag: VertexSet, right: RecTreeDec) -> Self {
        RecTreeDec::Node { graph, bag, left: Box::new(left), right: Box::new(right) }
    }

    /// The graph decomposed by this subtree; empty for `Empty`.
    pub fn graph(&self) -> SourcedGraph {
        match self {
            RecTreeDec::Empty => empty_graph(),
            RecTreeDec::Node { graph, .. } => graph.clone(),
        }
    }

    /// Root bag, empty for `Empty`.
    pub fn label(&self) -> VertexSet {
        match self {
            RecTreeDec::Empty => VertexSet::new(),
            RecTreeDec::Node { bag, .. } => bag.clone(),
        }
    }

    pub fn width(&self) -> usize {
        match self {
            RecTreeDec::Empty => 0,
            RecTreeDec::Node { bag, left, right, .. } => bag.len().max(left.width()).max(right.width()),
        }
    }

    pub fn validate(&self, gamma: &SourcedGraph) -> Validation {
        self.validate_at(gamma, "root")
    }

    pub fn is_valid(&self, gamma: &SourcedGraph) -> bool {
        self.validate(gamma).is_ok()
    }

    fn validate_at(&self, gamma: &SourcedGraph, path: &str) -> Validation {
        let (graph, bag, left, right) = match self {
            RecTreeDec::Empty => {
                return check(gamma.is_empty(), "empty", || format!("at {path}: empty decomposition of a non-empty graph"))
            }
            RecTreeDec::Node { graph, bag, left, right } => (graph, bag, left, right),
        };
        check(graph == gamma, "label", || format!("at {path}: stored graph differs from the decomposed one"))?;
        let v = gamma.vertices();
        let (g1, g2) = (left.graph(), right.graph());
        let fail = |clause: &str, detail: String| Err(located(path, Violation::new(clause, detail)));
        if !bag.is_subset(v) {
            return fail("bag", "bag has vertices outside the graph".into());
        }
        if !is_subgraph(&g1, gamma) || !is_subgraph(&g2, gamma) {
            return fail("subgraph", "a child graph is not a subgraph".into());
        }
        if !gamma.sources.is_subset(bag) {
            return fail("(i) sources in bag", format!("sources {} not in bag {}", fmt_set(&gamma.sources), fmt_set(bag)));
        }
        let (v1, v2) = (g1.vertices(), g2.vertices());
        let all: VertexSet = bag.iter().chain(v1).chain(v2).copied().collect();
        if all != *v {
            return fail("(ii) vertex cover", "bag and children do not cover the vertices".into());
        }
        for (i, gi) in [&g1, &g2].into_iter().enumerate() {
            let want: VertexSet = gi.vertices().intersection(bag).copied().collect();
            if gi.sources != want {
                return fail("(iii) child sources", format!("child {i} sources {} should be {}", fmt_set(&gi.sources), fmt_set(&want)));
            }
        }
        if !v1.intersection(v2).all(|x| bag.contains(x)) {
            return fail("(iv) separation", "children share a vertex outside the bag".into());
        }
        let (e1, e2) = (edge_set(&g1), edge_set(&g2));
        if e1.intersection(&e2).next().is_some() {
            return fail("(v) disjoint edges", "children share an edge".into());
        }
        for (e, ends) in gamma.graph.edges() {
            if !e1.contains(&e) && !e2.contains(&e) && !ends.within(bag) {
                return fail("(vi) remaining edges", format!("edge {e} is in neither child and leaves the bag"));
            }
        }
        left.validate_at(&g1, &at(path, 0))?;
        right.validate_at(&g2, &at(path, 1))
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph rec_tree_dec {\n");
        let mut next = 0;
        self.dot_into(&mut out, &mut next);
        out.push_str("}\n");
        out
    }

    fn dot_into(&self, out: &mut String, next: &mut usize) -> usize {
        let id = *next;
        *next += 1;
        match self {
            RecTreeDec::Empty => {
                let _ = writeln!(out, "  n{id} [label=\"()\", shape=plaintext];");
            }
            RecTreeDec::Node { bag, left, right, .. } => {
                let _ = writeln!(out, "  n{id} [label=\"{}\"];", fmt_set(bag));
                for child in [left, right] {
                    let c = child.dot_into(out, next);
                    let _ = writeln!(out, "  n{id} -> n{c};");
                }
            }
        }
        id
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "lowercase")]
pub enum RecPathDec {
    Empty,
    Cons { graph: SourcedGraph, bag: VertexSet, tail: Box<RecPathDec> },
}

impl RecPathDec {
    pub fn cons(graph: SourcedGraph, bag: VertexSet, tail: RecPathDec) -> Self {
        RecPathDec::Cons { graph, bag, tail: Box::new(tail) }
    }

    pub fn graph(&self) -> SourcedGraph {
        match self {
            RecPathDec::Empty => empty_graph(),
            RecPathDec::Cons { graph, .. } => graph.clone(),
        }
    }

    pub fn label(&self) -> VertexSet {
        match self {
            RecPathDec::Empty => VertexSet::new(),
            RecPathDec::Cons { bag, .. } => bag.clone(),
        }
    }

    pub fn bags(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        let mut cur = self;
        while let RecPathDec::Cons { bag, tail, .. } = cur {
            out.push(bag.clone());
            cur = tail;
        }
        out
    }

    pub fn width(&self) -> usize {
        self.bags().iter().map(VertexSet::len).max().unwrap_or(0)
    }

    pub fn validate(&self, gamma: &SourcedGraph) -> Validation {
        let mut gamma = gamma.clone();
        let mut cur = self;
        let mut path = String::from("root");
        loop {
            let (graph, bag, tail) = match cur {
                RecPathDec::Empty => {
                    return check(gamma.is_empty(), "empty", || {
                        format!("at {path}: empty decomposition of a non-empty graph")
                    })
                }
                RecPathDec::Cons { graph, bag, tail } => (graph, bag, tail),
            };
            let fail = |clause: &str, detail: String| Err(located(&path, Violation::new(clause, detail)));
            if *graph != gamma {
                return fail("label", "stored graph differs from the decomposed one".into());
            }
            let g1 = tail.graph();
            if !bag.is_subset(gamma.vertices()) {
                return fail("bag", "bag has vertices outside the graph".into());
            }
            if !is_subgraph(&g1, &gamma) {
                return fail("subgraph", "the tail graph is not a subgraph".into());
            }
            if !gamma.sources.is_subset(bag) {
                return fail("(i) sources in bag", format!("sources {} not in bag {}", fmt_set(&gamma.sources), fmt_set(bag)));
            }
            let all: VertexSet = bag.union(g1.vertices()).copied().collect();
            if all != *gamma.vertices() {
                return fail("(ii) vertex cover", "bag and tail do not cover the vertices".into());
            }
            let want: VertexSet = bag.intersection(g1.vertices()).copied().collect();
            if g1.sources != want {
                return fail("(iii) tail sources", format!("tail sources {} should be {}", fmt_set(&g1.sources), fmt_set(&want)));
            }
            let e1 = edge_set(&g1);
            for (e, ends) in gamma.graph.edges() {
                if !e1.contains(&e) && !ends.within(bag) {
                    return fail("(iv) remaining edges", format!("edge {e} is not in the tail and leaves the bag"));
                }
            }
            gamma = g1;
            cur = tail;
            path.push_str(".0");
        }
    }

    pub fn is_valid(&self, gamma: &SourcedGraph) -> bool {
        self.validate(gamma).is_ok()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph rec_path_dec {\n");
        let bags = self.bags();
        for (i, b) in bags.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", fmt_set(b));
        }
        let _ = writeln!(out, "  n{} [label=\"()\", shape=plaintext];", bags.len());
        for i in 0..bags.len() {
            let _ = writeln!(out, "  n{i} -> n{};", i + 1);
        }
        out.push_str("}\n");
        out
    }
}

/// `Empty` decomposes an edgeless graph, which may still have vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "lowercase")]
pub enum RecBranchDec {
    Empty { graph: SourcedGraph },
    Leaf { graph: SourcedGraph },
    Node { graph: SourcedGraph, left: Box<RecBranchDec>, right: Box<RecBranchDec> },
}

impl RecBranchDec {
    pub fn node(left: RecBranchDec, graph: SourcedGraph, right: RecBranchDec) -> Self {
        RecBranchDec::Node { graph, left: Box::new(left), right: Box::new(right) }
    }

    pub fn graph(&self) -> &SourcedGraph {
        match self {
            RecBranchDec::Empty { graph } | RecBranchDec::Leaf { graph } | RecBranchDec::Node { graph, .. } => graph,
        }
    }

    pub fn children(&self) -> Option<(&RecBranchDec, &RecBranchDec)> {
        match self {
            RecBranchDec::Node { left, right, .. } => Some((left, right)),
            _ => None,
        }
    }

    /// Largest boundary over the non-empty subtrees.
    pub fn width(&self) -> usize {
        match self {
            RecBranchDec::Empty { .. } => 0,
            RecBranchDec::Leaf { graph } => graph.sources.len(),
            RecBranchDec::Node { graph, left, right } => graph.sources.len().max(left.width()).max(right.width()),
        }
    }

    pub fn subtree(&self, path: &[usize]) -> Result<&RecBranchDec> {
        let mut cur = self;
        for &i in path {
            cur = match (cur.children(), i) {
                (Some((l, _)), 0) => l,
                (Some((_, r)), 1) => r,
                _ => return Err(domain(format!("{path:?} is not a subtree"))),
            };
        }
        Ok(cur)
    }

    /// Every subtree path, in preorder.
    pub fn subtree_paths(&self) -> Vec<SubtreePath> {
        let mut out = vec![Vec::new()];
        if let Some((l, r)) = self.children() {
            for (i, c) in [l, r].into_iter().enumerate() {
                for mut p in c.subtree_paths() {
                    p.insert(0, i);
                    out.push(p);
                }
            }
        }
        out
    }

    pub fn validate(&self, gamma: &SourcedGraph) -> Validation {
        self.validate_at(gamma, "root")
    }

    pub fn is_valid(&self, gamma: &SourcedGraph) -> bool {
        self.validate(gamma).is_ok()
    }

    fn validate_at(&self, gamma: &SourcedGraph, path: &str) -> Validation {
        let fail = |clause: &str, detail: String| Err(located(path, Violation::new(clause, detail)));
        if self.graph() != gamma {
            return fail("label", "stored graph differs from the decomposed one".into());
        }
        let m = gamma.graph.num_edges();
        let (left, right) = match self {
            RecBranchDec::Empty { .. } if m == 0 => return Ok(()),
            RecBranchDec::Empty { .. } => return fail("empty", format!("empty decomposition of a graph with {m} edges")),
            RecBranchDec::Leaf { .. } if m == 1 => return Ok(()),
            RecBranchDec::Leaf { .. } => return fail("leaf", format!("leaf carrying {m} edges")),
            RecBranchDec::Node { left, right, .. } => (left, right),
        };
        let (g1, g2) = (left.graph(), right.graph());
        if !is_subgraph(g1, gamma) || !is_subgraph(g2, gamma) {
            return fail("subgraph", "a child graph is not a subgraph".into());
        }
        let (e1, e2) = (edge_set(g1), edge_set(g2));
        let union: EdgeSet = e1.union(&e2).copied().collect();
        if e1.intersection(&e2).next().is_some() || union != gamma.graph.edge_ids() {
            return fail("(i) edge partition", "child edges do not partition the edges".into());
        }
        let (v1, v2) = (g1.vertices(), g2.vertices());
        if v1.union(v2).copied().collect::<VertexSet>() != *gamma.vertices() {
            return fail("(ii) vertex cover", "children do not cover the vertices".into());
        }
        let shared: VertexSet = v1.intersection(v2).copied().collect();
        for (i, gi) in [g1, g2].into_iter().enumerate() {
            let mut want = shared.clone();
            want.extend(gamma.sources.intersection(gi.vertices()));
            if gi.sources != want {
                return fail("(iii) child boundary", format!("child {i} boundary {} should be {}", fmt_set(&gi.sources), fmt_set(&want)));
            }
        }
        left.validate_at(g1, &at(path, 0))?;
        right.validate_at(g2, &at(path, 1))
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph rec_branch_dec {\n");
        let mut next = 0;
        self.dot_into(&mut out, &mut next);
        out.push_str("}\n");
        out
    }

    fn dot_into(&self, out: &mut String, next: &mut usize) -> usize {
        let id = *next;
        *next += 1;
        let g = self.graph();
        let edges: Vec<String> = g.graph.edges().map(|(e, _)| format!("e{e}")).collect();
        let _ = writeln!(out, "  n{id} [label=\"{} | ∂{}\"];", edges.join(" "), fmt_set(&g.sources));
        if let Some((l, r)) = self.children() {
            for c in [l, r] {
                let c = c.dot_into(out, next);
                let _ = writeln!(out, "  n{id} -> n{c};");
            }
        }
        id
    }
}

/// Computes the boundary of the subtree at `path` from the whole tree:
/// its vertices that are sources of the root or belong to a disjoint subtree.
pub fn boundary_global(t: &RecBranchDec, path: &[usize]) -> Result<VertexSet> {
    let t0 = t.subtree(path)?;
    let mut outside = t.graph().sources.clone();
    for p in t.subtree_paths() {
        let related = p.starts_with(path) || path.starts_with(&p);
        if !related {
            outside.extend(t.subtree(&p)?.graph().vertices());
        }
    }
    Ok(t0.graph().vertices().intersection(&outside).copied().collect())
}
