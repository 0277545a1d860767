use std::collections::BTreeMap;

use super::{EdgeId, EdgeSet, Graph, VertexId, VertexSet};
use crate::error::{domain, Error, Result};

/// A pair of maps on vertices and edges commuting with `ends`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMorphism {
    pub domain: Graph,
    pub codomain: Graph,
    pub vmap: BTreeMap<VertexId, VertexId>,
    pub emap: BTreeMap<EdgeId, EdgeId>,
}

impl GraphMorphism {
    pub fn new(
        domain: Graph,
        codomain: Graph,
        vmap: BTreeMap<VertexId, VertexId>,
        emap: BTreeMap<EdgeId, EdgeId>,
    ) -> Result<Self> {
        for &v in domain.vertices() {
            let w = *vmap.get(&v).ok_or(Error::UnknownVertex(v))?;
            if !codomain.has_vertex(w) {
                return Err(Error::UnknownVertex(w));
            }
        }
        for (e, ends) in domain.edges() {
            let f = *emap.get(&e).ok_or(Error::UnknownEdge(e))?;
            let target = codomain.ends(f)?;
            if ends.map(|v| vmap[&v]) != target {
                return Err(crate::error::domain(format!("edge {e} breaks naturality")));
            }
        }
        Ok(GraphMorphism { domain, codomain, vmap, emap })
    }

    pub fn identity(g: &Graph) -> Self {
        GraphMorphism {
            domain: g.clone(),
            codomain: g.clone(),
            vmap: g.vertices().iter().map(|&v| (v, v)).collect(),
            emap: g.edge_ids().into_iter().map(|e| (e, e)).collect(),
        }
    }

    pub fn vertex(&self, v: VertexId) -> Result<VertexId> {
        self.vmap.get(&v).copied().ok_or(Error::UnknownVertex(v))
    }

    pub fn edge(&self, e: EdgeId) -> Result<EdgeId> {
        self.emap.get(&e).copied().ok_or(Error::UnknownEdge(e))
    }

    pub fn map_vertices<'a>(&self, vs: impl IntoIterator<Item = &'a VertexId>) -> Result<VertexSet> {
        vs.into_iter().map(|&v| self.vertex(v)).collect()
    }

    pub fn map_edges<'a>(&self, es: impl IntoIterator<Item = &'a EdgeId>) -> Result<EdgeSet> {
        es.into_iter().map(|&e| self.edge(e)).collect()
    }

    pub fn then(&self, next: &GraphMorphism) -> Result<GraphMorphism> {
        let vmap = self.vmap.iter().map(|(&v, &w)| Ok((v, next.vertex(w)?))).collect::<Result<_>>()?;
        let emap = self.emap.iter().map(|(&e, &f)| Ok((e, next.edge(f)?))).collect::<Result<_>>()?;
        Ok(GraphMorphism { domain: self.domain.clone(), codomain: next.codomain.clone(), vmap, emap })
    }

    pub fn is_epimorphism(&self) -> bool {
        let vim: VertexSet = self.vmap.values().copied().collect();
        let eim: EdgeSet = self.emap.values().copied().collect();
        &vim == self.codomain.vertices() && eim == self.codomain.edge_ids()
    }

    pub fn is_injective(&self) -> bool {
        let vim: VertexSet = self.vmap.values().copied().collect();
        let eim: EdgeSet = self.emap.values().copied().collect();
        vim.len() == self.vmap.len() && eim.len() == self.emap.len()
    }

    /// The same maps with the codomain cut down to the image subgraph.
    pub fn onto_image(&self) -> GraphMorphism {
        let vs: VertexSet = self.vmap.values().copied().collect();
        let es: EdgeSet = self.emap.values().copied().collect();
        let codomain = self.codomain.subgraph(&vs, &es).expect("image of a morphism is a subgraph");
        GraphMorphism { codomain, ..self.clone() }
    }

    /// Restriction to a subgraph of the domain, onto its image.
    pub fn restrict(&self, sub: &Graph) -> Result<GraphMorphism> {
        if !sub.is_subgraph_of(&self.domain) {
            return Err(domain("restriction to a graph that is not a subgraph of the domain"));
        }
        let vmap = sub.vertices().iter().map(|&v| (v, self.vmap[&v])).collect();
        let emap = sub.edge_ids().into_iter().map(|e| (e, self.emap[&e])).collect();
        let m = GraphMorphism { domain: sub.clone(), codomain: self.codomain.clone(), vmap, emap };
        Ok(m.onto_image())
    }
}
