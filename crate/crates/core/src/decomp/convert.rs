//! Width-preserving maps between classic and recursive decompositions.

use std::collections::BTreeMap;

use super::{BranchDec, PathDec, RecBranchDec, RecPathDec, RecTreeDec, TreeDec};
use crate::error::{precondition, Result};
use crate::graph::{EdgeId, EdgeSet, Graph, SourcedGraph, VertexId, VertexSet};

struct RootedBags {
    bag: VertexSet,
    children: Vec<RootedBags>,
}

impl RootedBags {
    fn from_shape(td: &TreeDec, root: VertexId, parent: Option<VertexId>) -> Self {
        let children = td
            .shape
            .neighbours(root)
            .into_iter()
            .filter(|&n| Some(n) != parent)
            .map(|n| RootedBags::from_shape(td, n, Some(root)))
            .collect();
        RootedBags { bag: td.bags[&root].clone(), children }
    }

    fn covered(&self) -> VertexSet {
        let mut out = self.bag.clone();
        for c in &self.children {
            out.extend(c.covered());
        }
        out
    }
}

fn sub(gamma: &SourcedGraph, vs: VertexSet, es: EdgeSet, sources: VertexSet) -> SourcedGraph {
    let graph = gamma.graph.subgraph(&vs, &es).expect("edges lie inside the chosen vertices");
    SourcedGraph { graph, sources }
}

/// Roots `(Y,t)` at `root` (by default the first vertex whose bag holds the
/// sources) and splits off the first child subtree; the remaining children
/// are chained under a fresh bag of the vertices they share with the root.
pub fn tree_to_recursive(td: &TreeDec, gamma: &SourcedGraph, root: Option<VertexId>) -> Result<RecTreeDec> {
    td.validate(&gamma.graph).map_err(|v| precondition(format!("not a tree decomposition: {v}")))?;
    if td.shape.vertices().is_empty() {
        return Ok(RecTreeDec::Empty);
    }
    let root = match root {
        Some(r) => {
            let bag = td.bags.get(&r).ok_or_else(|| precondition(format!("{r} is not a shape vertex")))?;
            if !gamma.sources.is_subset(bag) {
                return Err(precondition(format!("the bag at {r} does not contain the sources")));
            }
            r
        }
        None => *td
            .bags
            .iter()
            .find(|(_, b)| gamma.sources.is_subset(b))
            .ok_or_else(|| precondition("no bag contains the sources"))?
            .0,
    };
    Ok(rooted_to_recursive(RootedBags::from_shape(td, root, None), gamma))
}

fn rooted_to_recursive(node: RootedBags, gamma: &SourcedGraph) -> RecTreeDec {
    if gamma.is_empty() {
        return RecTreeDec::Empty;
    }
    let RootedBags { bag, mut children } = node;
    if children.is_empty() {
        return RecTreeDec::node(gamma.clone(), RecTreeDec::Empty, bag, RecTreeDec::Empty);
    }
    let rest: Vec<RootedBags> = children.split_off(1);
    let first = children.pop().expect("one child");

    let v1 = first.covered();
    let e1 = gamma.graph.edges_within(&v1);
    let x1 = v1.intersection(&bag).copied().collect();
    let t1 = rooted_to_recursive(first, &sub(gamma, v1, e1.clone(), x1));

    let t2 = if rest.is_empty() {
        RecTreeDec::Empty
    } else {
        let v2: VertexSet = rest.iter().flat_map(RootedBags::covered).collect();
        let e2: EdgeSet = gamma.graph.edges_within(&v2).difference(&e1).copied().collect();
        let x2: VertexSet = v2.intersection(&bag).copied().collect();
        let next = if rest.len() == 1 {
            rest.into_iter().next().expect("one child")
        } else {
            RootedBags { bag: x2.clone(), children: rest }
        };
        rooted_to_recursive(next, &sub(gamma, v2, e2, x2))
    };
    RecTreeDec::node(gamma.clone(), t1, bag, t2)
}

/// Forgets the subgraphs; each node becomes a shape vertex, numbered in preorder.
pub fn tree_from_recursive(t: &RecTreeDec) -> TreeDec {
    let mut shape = Graph::new();
    let mut bags = BTreeMap::new();
    fn go(t: &RecTreeDec, shape: &mut Graph, bags: &mut BTreeMap<VertexId, VertexSet>) -> Option<VertexId> {
        let RecTreeDec::Node { bag, left, right, .. } = t else { return None };
        let id = bags.len() as VertexId;
        shape.add_vertex(id);
        bags.insert(id, bag.clone());
        for child in [left, right] {
            if let Some(c) = go(child, shape, bags) {
                let e = shape.num_edges() as EdgeId;
                shape.add_edge(e, id, c).expect("fresh vertices");
            }
        }
        Some(id)
    }
    go(t, &mut shape, &mut bags);
    TreeDec { shape, bags }
}

/// Peels the first bag; the tail decomposes the subgraph induced by the remaining bags.
pub fn path_to_recursive(pd: &PathDec, gamma: &SourcedGraph) -> Result<RecPathDec> {
    pd.validate(&gamma.graph).map_err(|v| precondition(format!("not a path decomposition: {v}")))?;
    if let Some(first) = pd.bags.first() {
        if !gamma.sources.is_subset(first) {
            return Err(precondition("the first bag does not contain the sources"));
        }
    }
    let mut graphs = Vec::with_capacity(pd.bags.len());
    let mut cur = gamma.clone();
    for i in 0..pd.bags.len() {
        if cur.is_empty() {
            break;
        }
        let rest: VertexSet = pd.bags[i + 1..].iter().flatten().copied().collect();
        let es = cur.graph.edges_within(&rest);
        let sources = pd.bags[i].intersection(&rest).copied().collect();
        let next = sub(&cur, rest, es, sources);
        graphs.push(std::mem::replace(&mut cur, next));
    }
    let mut out = RecPathDec::Empty;
    for (i, g) in graphs.into_iter().enumerate().rev() {
        out = RecPathDec::cons(g, pd.bags[i].clone(), out);
    }
    Ok(out)
}

pub fn path_from_recursive(t: &RecPathDec) -> PathDec {
    PathDec { bags: t.bags() }
}

/// The binary tree underlying `t`, with empty subtrees pruned and the
/// resulting one-child nodes spliced out.
pub fn branch_from_recursive(t: &RecBranchDec) -> BranchDec {
    let mut shape = Graph::new();
    let mut leaf_map = BTreeMap::new();
    fn go(t: &RecBranchDec, shape: &mut Graph, leaf_map: &mut BTreeMap<VertexId, EdgeId>) -> Option<VertexId> {
        match t {
            RecBranchDec::Empty { .. } => None,
            RecBranchDec::Leaf { graph } => {
                let id = shape.num_vertices() as VertexId;
                shape.add_vertex(id);
                let e = graph.graph.edge_ids().into_iter().next().expect("a leaf carries one edge");
                leaf_map.insert(id, e);
                Some(id)
            }
            RecBranchDec::Node { left, right, .. } => {
                let l = go(left, shape, leaf_map);
                let r = go(right, shape, leaf_map);
                match (l, r) {
                    (Some(a), Some(b)) => {
                        let id = shape.num_vertices() as VertexId;
                        shape.add_vertex(id);
                        for c in [a, b] {
                            let e = shape.num_edges() as EdgeId;
                            shape.add_edge(e, id, c).expect("fresh vertices");
                        }
                        Some(id)
                    }
                    (one, None) | (None, one) => one,
                }
            }
        }
    }
    go(t, &mut shape, &mut leaf_map);
    BranchDec { shape, leaf_map }
}

/// Splits `Γ` along an edge partition: `V1 = ends(E1)`, isolated vertices go right.
pub(crate) fn split_sourced(gamma: &SourcedGraph, e1: EdgeSet, e2: EdgeSet) -> (SourcedGraph, SourcedGraph) {
    let g = &gamma.graph;
    let v1 = g.ends_of_edge_set(&e1).expect("edges of the graph");
    let mut v2 = g.ends_of_edge_set(&e2).expect("edges of the graph");
    v2.extend(g.vertices().difference(&v1));
    let shared: VertexSet = v1.intersection(&v2).copied().collect();
    let boundary = |vi: &VertexSet| -> VertexSet {
        shared.iter().chain(gamma.sources.intersection(vi)).copied().collect()
    };
    let (x1, x2) = (boundary(&v1), boundary(&v2));
    (sub(gamma, v1, e1, x1), sub(gamma, v2, e2, x2))
}

/// Splits at the tree edge that best balances the leaves (lowest id on ties),
/// then descends from each end as a rooted binary tree.
pub fn branch_to_recursive(bd: &BranchDec, gamma: &SourcedGraph) -> Result<RecBranchDec> {
    bd.validate(&gamma.graph).map_err(|v| precondition(format!("not a branch decomposition: {v}")))?;
    match gamma.graph.num_edges() {
        0 => return Ok(RecBranchDec::Empty { graph: gamma.clone() }),
        1 => return Ok(RecBranchDec::Leaf { graph: gamma.clone() }),
        _ => {}
    }
    let mut best: Option<(usize, EdgeId)> = None;
    for e in bd.shape.edge_ids() {
        let (a, b) = bd.split(e)?;
        let imbalance = a.len().abs_diff(b.len());
        if best.map_or(true, |(i, _)| imbalance < i) {
            best = Some((imbalance, e));
        }
    }
    let (_, top) = best.expect("two or more leaves give a tree edge");
    let ends = bd.shape.ends(top)?;
    let (a, b) = (ends.first(), ends.second());
    let (e1, e2) = bd.split(top)?;
    let (g1, g2) = split_sourced(gamma, e1, e2);
    Ok(RecBranchDec::node(descend(bd, a, b, g1), gamma.clone(), descend(bd, b, a, g2)))
}

fn descend(bd: &BranchDec, u: VertexId, parent: VertexId, gamma: SourcedGraph) -> RecBranchDec {
    match gamma.graph.num_edges() {
        0 => return RecBranchDec::Empty { graph: gamma },
        1 => return RecBranchDec::Leaf { graph: gamma },
        _ => {}
    }
    let children: Vec<VertexId> = bd.shape.neighbours(u).into_iter().filter(|&n| n != parent).collect();
    let tree_edge = |c: VertexId| -> EdgeId {
        bd.shape.edges().find(|(_, ends)| ends.contains(u) && ends.contains(c)).map(|(e, _)| e).expect("tree edge")
    };
    match children[..] {
        [c] => descend(bd, c, u, gamma),
        [c1, c2] => {
            let e1 = bd.side_edges(tree_edge(c1), c1);
            let e2 = bd.side_edges(tree_edge(c2), c2);
            let (g1, g2) = split_sourced(&gamma, e1, e2);
            RecBranchDec::node(descend(bd, c1, u, g1), gamma, descend(bd, c2, u, g2))
        }
        _ => unreachable!("a subtree with several edges has an internal root of degree at most three"),
    }
}
