//! Translations between graph decompositions and monoidal decompositions of
//! cospans of graphs. Every translation checks its width bound on exit and
//! reports a violation as a postcondition error.

mod branch;
mod copy;
mod path;
mod theorems;
mod tree;

use std::collections::BTreeMap;

use crate::cospan::Cospan;
use crate::decomp::{RecPathDec, RecTreeDec};
use crate::error::{precondition, Error, Result};
use crate::graph::{FiniteMap, Graph, GraphMorphism, SourcedGraph, VertexId, VertexSet};

pub use branch::{b_to_mdec, b_to_mdec_term, m_to_bdec};
pub use copy::{copy_mdec, gamma_cospan};
pub use path::{m_to_pdec, p_to_mdec};
pub use theorems::{check_theorems, check_theorems_with_budget, Check, SandwichReport, TheoremReport, DEFAULT_SEARCH_BUDGET};
pub use tree::{m_to_tdec, t_to_mdec};

pub(crate) fn postcondition(msg: impl Into<String>) -> Error {
    Error::Postcondition(msg.into())
}

/// Pairs `v < w` in the domain of `f` with the same image.
fn identified_pairs(f: &BTreeMap<VertexId, VertexId>) -> Vec<(VertexId, VertexId)> {
    let mut fibres: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for (&v, &w) in f {
        fibres.entry(w).or_default().push(v);
    }
    let mut out = Vec::new();
    for vs in fibres.values() {
        for (i, &v) in vs.iter().enumerate() {
            out.extend(vs[i + 1..].iter().map(|&w| (v, w)));
        }
    }
    out
}

/// The two pushout maps of a composite, each cut down onto its image.
#[derive(Clone, Debug)]
pub struct EpiWitness {
    pub alpha1: GraphMorphism,
    pub alpha2: GraphMorphism,
}

/// Builds the witness for `g1 ; g2` and checks that each map only identifies
/// vertices hit by the shared boundary.
pub fn epis_from_composition(g1: &Cospan, g2: &Cospan) -> Result<EpiWitness> {
    let (_, colim) = g1.compose_with_colimit(g2)?;
    let alpha1 = colim.left.onto_image();
    let alpha2 = colim.right.onto_image();
    for (alpha, boundary, side) in [(&alpha1, g1.right_image(), 1), (&alpha2, g2.left_image(), 2)] {
        if let Some((v, w)) = identified_pairs(&alpha.vmap).into_iter().find(|(v, w)| {
            !boundary.contains(v) || !boundary.contains(w)
        }) {
            return Err(postcondition(format!("map {side} identifies {v} and {w} outside the shared boundary")));
        }
    }
    Ok(EpiWitness { alpha1, alpha2 })
}

/// A vertex map `φ : W -> V` out of the apex of `⟨A -> H <- B⟩` that only
/// identifies boundary vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueMap {
    pub map: FiniteMap,
}

impl GlueMap {
    pub fn new(map: FiniteMap, h: &Cospan) -> Result<Self> {
        if &map.domain() != h.apex().vertices() {
            return Err(precondition("the glue map is not defined on exactly the apex vertices"));
        }
        let boundary: VertexSet = h.left_image().union(&h.right_image()).copied().collect();
        if let Some((v, w)) = identified_pairs(map.table())
            .into_iter()
            .find(|(v, w)| !boundary.contains(v) || !boundary.contains(w))
        {
            return Err(precondition(format!("glueing property fails: {v} and {w} are identified but not both boundary")));
        }
        Ok(GlueMap { map })
    }

    pub fn identity(h: &Cospan) -> Self {
        GlueMap { map: FiniteMap::identity(h.apex().vertices()) }
    }

    /// The same map on edges too: the image graph keeps the edge names of `H`.
    fn morphism(&self, h: &Graph) -> Result<GraphMorphism> {
        let mut image = Graph::discrete(self.map.image());
        for (e, ends) in h.edges() {
            image.add_edge(e, self.map.apply(ends.first())?, self.map.apply(ends.second())?)?;
        }
        let emap = h.edge_ids().into_iter().map(|e| (e, e)).collect();
        GraphMorphism::new(h.clone(), image, self.map.table().clone(), emap)
    }
}

/// `α(Γ)`: the image subgraph with the image of the sources.
fn image_sourced(alpha: &GraphMorphism, gamma: &SourcedGraph) -> Result<SourcedGraph> {
    let vs = alpha.map_vertices(gamma.graph.vertices())?;
    let es = alpha.map_edges(&gamma.graph.edge_ids())?;
    let graph = alpha.codomain.subgraph(&vs, &es)?;
    Ok(SourcedGraph { graph, sources: alpha.map_vertices(&gamma.sources)? })
}

fn check_pushable(alpha: &GraphMorphism, root: &Graph, bags: &[VertexSet]) -> Result<()> {
    if &alpha.domain != root {
        return Err(precondition("the map is not defined on the decomposed graph"));
    }
    let images: VertexSet = alpha.emap.values().copied().collect();
    if images.len() != alpha.emap.len() {
        return Err(precondition("the map identifies edges"));
    }
    for (v, w) in identified_pairs(&alpha.vmap) {
        if !bags.iter().any(|b| b.contains(&v) && b.contains(&w)) {
            return Err(precondition(format!("{v} and {w} are identified but share no bag")));
        }
    }
    Ok(())
}

fn tree_bags(t: &RecTreeDec, out: &mut Vec<VertexSet>) {
    if let RecTreeDec::Node { bag, left, right, .. } = t {
        out.push(bag.clone());
        tree_bags(left, out);
        tree_bags(right, out);
    }
}

/// Pushes every bag and subgraph of `t` through `α`.
///
/// `α` must be defined on the graph of `t`, be injective on edges, and only
/// identify vertices that share a bag.
pub fn epi_to_dec_tree(alpha: &GraphMorphism, t: &RecTreeDec) -> Result<RecTreeDec> {
    let RecTreeDec::Node { graph, .. } = t else { return Ok(RecTreeDec::Empty) };
    let mut bags = Vec::new();
    tree_bags(t, &mut bags);
    check_pushable(alpha, &graph.graph, &bags)?;
    let out = push_tree(alpha, t)?;
    let target = image_sourced(alpha, graph)?;
    out.validate(&target).map_err(|v| postcondition(format!("pushed tree decomposition is invalid: {v}")))?;
    if out.width() > t.width() {
        return Err(postcondition(format!("pushing raised the width from {} to {}", t.width(), out.width())));
    }
    Ok(out)
}

fn push_tree(alpha: &GraphMorphism, t: &RecTreeDec) -> Result<RecTreeDec> {
    match t {
        RecTreeDec::Empty => Ok(RecTreeDec::Empty),
        RecTreeDec::Node { graph, bag, left, right } => Ok(RecTreeDec::node(
            image_sourced(alpha, graph)?,
            push_tree(alpha, left)?,
            alpha.map_vertices(bag)?,
            push_tree(alpha, right)?,
        )),
    }
}

/// The path analogue of [`epi_to_dec_tree`].
pub fn epi_to_dec_path(alpha: &GraphMorphism, t: &RecPathDec) -> Result<RecPathDec> {
    let RecPathDec::Cons { graph, .. } = t else { return Ok(RecPathDec::Empty) };
    check_pushable(alpha, &graph.graph, &t.bags())?;
    let out = push_path(alpha, t)?;
    let target = image_sourced(alpha, graph)?;
    out.validate(&target).map_err(|v| postcondition(format!("pushed path decomposition is invalid: {v}")))?;
    if out.width() > t.width() {
        return Err(postcondition(format!("pushing raised the width from {} to {}", t.width(), out.width())));
    }
    Ok(out)
}

fn push_path(alpha: &GraphMorphism, t: &RecPathDec) -> Result<RecPathDec> {
    match t {
        RecPathDec::Empty => Ok(RecPathDec::Empty),
        RecPathDec::Cons { graph, bag, tail } => {
            Ok(RecPathDec::cons(image_sourced(alpha, graph)?, alpha.map_vertices(bag)?, push_path(alpha, tail)?))
        }
    }
}

/// `⟨order -> G <- ∅⟩` as a cospan.
fn sourced_cospan(g: &Graph, order: &[VertexId]) -> Result<Cospan> {
    Cospan::sourced(g.clone(), order)
}

fn ascending(s: &VertexSet) -> Vec<VertexId> {
    s.iter().copied().collect()
}

fn expect_iso(term: &Cospan, want: &Cospan, what: &str) -> Result<()> {
    if crate::cospan::cospan_iso_eq(term, want) {
        Ok(())
    } else {
        Err(postcondition(format!("{what} does not evaluate to the input cospan")))
    }
}

#[cfg(test)]
mod tests;
