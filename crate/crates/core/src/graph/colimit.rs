use std::collections::BTreeMap;

use super::{Ends, FiniteMap, Graph, GraphMorphism, VertexId};
use crate::error::{domain, Result};

/// Union-find over `0..n` whose representative is always the class minimum.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra < rb {
            self.parent[rb] = ra;
        } else if rb < ra {
            self.parent[ra] = rb;
        }
    }
}

/// A colimit apex with its two coprojections.
#[derive(Clone, Debug)]
pub struct Colimit {
    pub graph: Graph,
    pub left: GraphMorphism,
    pub right: GraphMorphism,
}

pub fn graph_coproduct(g1: &Graph, g2: &Graph) -> Colimit {
    let empty = FiniteMap::new(BTreeMap::new(), g1.vertices().clone()).expect("empty map");
    let empty2 = FiniteMap::new(BTreeMap::new(), g2.vertices().clone()).expect("empty map");
    graph_pushout(g1, g2, &empty, &empty2).expect("coproduct has no glueing constraints")
}

/// Pushout of `g1 <- y -> g2` along the vertex legs `l1`, `l2`.
///
/// Vertices of `g1` come first, then those of `g2`; classes are named by their
/// minimum member and renumbered to `0..k` in that order. Edges are `E1` then `E2`.
pub fn graph_pushout(g1: &Graph, g2: &Graph, l1: &FiniteMap, l2: &FiniteMap) -> Result<Colimit> {
    if l1.domain() != l2.domain() {
        return Err(domain("pushout legs have different domains"));
    }
    if l1.codomain() != g1.vertices() || l2.codomain() != g2.vertices() {
        return Err(domain("pushout legs must land in the vertex sets of the two graphs"));
    }
    let n1 = g1.num_vertices();
    let idx1: BTreeMap<VertexId, usize> = g1.vertices().iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let idx2: BTreeMap<VertexId, usize> =
        g2.vertices().iter().enumerate().map(|(i, &v)| (v, n1 + i)).collect();
    let mut uf = UnionFind::new(n1 + g2.num_vertices());
    for y in l1.domain() {
        uf.union(idx1[&l1.apply(y)?], idx2[&l2.apply(y)?]);
    }
    let mut names: BTreeMap<usize, VertexId> = BTreeMap::new();
    for i in 0..n1 + g2.num_vertices() {
        let r = uf.find(i);
        let next = names.len() as VertexId;
        names.entry(r).or_insert(next);
    }
    let mut class = |i: usize| names[&uf.find(i)];
    let vmap1: BTreeMap<VertexId, VertexId> = idx1.iter().map(|(&v, &i)| (v, class(i))).collect();
    let vmap2: BTreeMap<VertexId, VertexId> = idx2.iter().map(|(&v, &i)| (v, class(i))).collect();

    let mut graph = Graph::discrete(vmap1.values().chain(vmap2.values()).copied());
    let mut edges = BTreeMap::new();
    let mut emap1 = BTreeMap::new();
    let mut emap2 = BTreeMap::new();
    for (e, ends) in g1.edges() {
        let id = edges.len() as u32;
        edges.insert(id, ends.map(|v| vmap1[&v]));
        emap1.insert(e, id);
    }
    for (e, ends) in g2.edges() {
        let id = edges.len() as u32;
        edges.insert(id, ends.map(|v| vmap2[&v]));
        emap2.insert(e, id);
    }
    for (id, Ends(u, v)) in edges {
        graph.add_edge(id, u, v)?;
    }
    let left = GraphMorphism { domain: g1.clone(), codomain: graph.clone(), vmap: vmap1, emap: emap1 };
    let right = GraphMorphism { domain: g2.clone(), codomain: graph.clone(), vmap: vmap2, emap: emap2 };
    Ok(Colimit { graph, left, right })
}
