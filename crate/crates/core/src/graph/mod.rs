//! Finite undirected multigraphs with self-loops, graphs with sources, and
//! the maps and colimits between them.

mod colimit;
mod iso;
mod map;
mod morphism;
pub mod text;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

pub use colimit::{graph_coproduct, graph_pushout, Colimit, UnionFind};
pub use iso::{find_isomorphism, graph_isomorphic};
pub use map::{image_intersection, image_union, FiniteMap};
pub use morphism::GraphMorphism;

pub type VertexId = u32;
pub type EdgeId = u32;
pub type VertexSet = BTreeSet<VertexId>;
pub type EdgeSet = BTreeSet<EdgeId>;

/// Endpoints of an edge, stored sorted. A self-loop has both ends equal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ends(VertexId, VertexId);

impl Ends {
    pub fn new(u: VertexId, v: VertexId) -> Self {
        if u <= v {
            Ends(u, v)
        } else {
            Ends(v, u)
        }
    }

    pub fn is_loop(self) -> bool {
        self.0 == self.1
    }

    pub fn first(self) -> VertexId {
        self.0
    }

    pub fn second(self) -> VertexId {
        self.1
    }

    pub fn contains(self, v: VertexId) -> bool {
        self.0 == v || self.1 == v
    }

    /// The one or two distinct endpoints.
    pub fn vertices(self) -> impl Iterator<Item = VertexId> {
        let second = if self.is_loop() { None } else { Some(self.1) };
        std::iter::once(self.0).chain(second)
    }

    pub fn map(self, mut f: impl FnMut(VertexId) -> VertexId) -> Ends {
        Ends::new(f(self.0), f(self.1))
    }

    pub fn within(self, vs: &VertexSet) -> bool {
        vs.contains(&self.0) && vs.contains(&self.1)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    vertices: VertexSet,
    edges: BTreeMap<EdgeId, Ends>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn discrete(vs: impl IntoIterator<Item = VertexId>) -> Self {
        Graph { vertices: vs.into_iter().collect(), edges: BTreeMap::new() }
    }

    /// Graph on `0..n` with edges numbered by position.
    pub fn from_edges(n: u32, es: &[(VertexId, VertexId)]) -> Self {
        let mut g = Graph::discrete(0..n);
        for (i, &(u, v)) in es.iter().enumerate() {
            g.vertices.insert(u);
            g.vertices.insert(v);
            g.edges.insert(i as EdgeId, Ends::new(u, v));
        }
        g
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.vertices.insert(v);
    }

    pub fn add_edge(&mut self, e: EdgeId, u: VertexId, v: VertexId) -> Result<()> {
        for x in [u, v] {
            if !self.vertices.contains(&x) {
                return Err(Error::UnknownVertex(x));
            }
        }
        if self.edges.contains_key(&e) {
            return Err(domain(format!("duplicate edge id {e}")));
        }
        self.edges.insert(e, Ends::new(u, v));
        Ok(())
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, Ends)> + '_ {
        self.edges.iter().map(|(&e, &ends)| (e, ends))
    }

    pub fn edge_ids(&self) -> EdgeSet {
        self.edges.keys().copied().collect()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        self.edges.contains_key(&e)
    }

    pub fn ends(&self, e: EdgeId) -> Result<Ends> {
        self.edges.get(&e).copied().ok_or(Error::UnknownEdge(e))
    }

    pub fn ends_of_edge_set<'a>(&self, es: impl IntoIterator<Item = &'a EdgeId>) -> Result<VertexSet> {
        let mut out = VertexSet::new();
        for &e in es {
            out.extend(self.ends(e)?.vertices());
        }
        Ok(out)
    }

    /// Edges whose ends all lie in `vs`.
    pub fn edges_within(&self, vs: &VertexSet) -> EdgeSet {
        self.edges().filter(|(_, ends)| ends.within(vs)).map(|(e, _)| e).collect()
    }

    /// Vertices not incident to any edge.
    pub fn isolated_vertices(&self) -> VertexSet {
        let touched = self.ends_of_edge_set(self.edges.keys()).unwrap_or_default();
        self.vertices.difference(&touched).copied().collect()
    }

    /// The subgraph on `vs` and `es`; every edge in `es` must have its ends in `vs`.
    pub fn subgraph(&self, vs: &VertexSet, es: &EdgeSet) -> Result<Graph> {
        if let Some(v) = vs.iter().find(|v| !self.vertices.contains(v)) {
            return Err(Error::UnknownVertex(*v));
        }
        let mut edges = BTreeMap::new();
        for &e in es {
            let ends = self.ends(e)?;
            if !ends.within(vs) {
                return Err(domain(format!("edge {e} leaves the vertex set of the subgraph")));
            }
            edges.insert(e, ends);
        }
        Ok(Graph { vertices: vs.clone(), edges })
    }

    pub fn induced(&self, vs: &VertexSet) -> Result<Graph> {
        self.subgraph(vs, &self.edges_within(vs))
    }

    /// Same ids, and every edge carries the same ends as in `other`.
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.vertices.is_subset(&other.vertices)
            && self.edges.iter().all(|(e, ends)| other.edges.get(e) == Some(ends))
    }

    /// Distinct neighbours, excluding `v` itself for loops.
    pub fn neighbours(&self, v: VertexId) -> VertexSet {
        let mut out = VertexSet::new();
        for (_, ends) in self.edges() {
            if ends.is_loop() {
                continue;
            }
            if ends.0 == v {
                out.insert(ends.1);
            } else if ends.1 == v {
                out.insert(ends.0);
            }
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        let ids: Vec<VertexId> = self.vertices.iter().copied().collect();
        let index: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut uf = UnionFind::new(ids.len());
        for (_, ends) in self.edges() {
            uf.union(index[&ends.0], index[&ends.1]);
        }
        let mut classes: BTreeMap<usize, VertexSet> = BTreeMap::new();
        for (i, &v) in ids.iter().enumerate() {
            classes.entry(uf.find(i)).or_default().insert(v);
        }
        classes.into_values().collect()
    }

    /// Acyclic: no loops, no parallel edges, no cycles.
    pub fn is_forest(&self) -> bool {
        let ids: Vec<VertexId> = self.vertices.iter().copied().collect();
        let index: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut uf = UnionFind::new(ids.len());
        for (_, ends) in self.edges() {
            let (a, b) = (uf.find(index[&ends.0]), uf.find(index[&ends.1]));
            if a == b {
                return false;
            }
            uf.union(a, b);
        }
        true
    }

    pub fn is_tree(&self) -> bool {
        self.is_forest() && self.components().len() <= 1
    }

    pub fn is_subcubic_tree(&self) -> bool {
        self.is_tree() && self.vertices.iter().all(|&v| self.neighbours(v).len() <= 3)
    }

    /// Tree vertices with at most one neighbour. A one-vertex tree is its own leaf.
    pub fn leaves(&self) -> VertexSet {
        self.vertices.iter().copied().filter(|&v| self.neighbours(v).len() <= 1).collect()
    }

    /// Vertices on the unique path between `a` and `b` in a tree, endpoints included.
    pub fn tree_path(&self, a: VertexId, b: VertexId) -> Option<Vec<VertexId>> {
        let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        let mut stack = vec![a];
        parent.insert(a, a);
        while let Some(v) = stack.pop() {
            if v == b {
                break;
            }
            for w in self.neighbours(v) {
                if let std::collections::btree_map::Entry::Vacant(slot) = parent.entry(w) {
                    slot.insert(v);
                    stack.push(w);
                }
            }
        }
        if !parent.contains_key(&b) {
            return None;
        }
        let mut path = vec![b];
        let mut cur = b;
        while cur != a {
            cur = parent[&cur];
            path.push(cur);
        }
        path.reverse();
        Some(path)
    }

    /// Order-preserving renumbering of vertices and edges to `0..n`, `0..m`.
    pub fn renumbered(&self) -> (Graph, BTreeMap<VertexId, VertexId>, BTreeMap<EdgeId, EdgeId>) {
        let vmap: BTreeMap<VertexId, VertexId> =
            self.vertices.iter().enumerate().map(|(i, &v)| (v, i as VertexId)).collect();
        let emap: BTreeMap<EdgeId, EdgeId> =
            self.edges.keys().enumerate().map(|(i, &e)| (e, i as EdgeId)).collect();
        let g = Graph {
            vertices: vmap.values().copied().collect(),
            edges: self.edges.iter().map(|(e, ends)| (emap[e], ends.map(|v| vmap[&v]))).collect(),
        };
        (g, vmap, emap)
    }

    /// Number of edges between `u` and `v` (loops when equal).
    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> usize {
        let key = Ends::new(u, v);
        self.edges.values().filter(|&&ends| ends == key).count()
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}} E{{")?;
        for (i, (e, ends)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}:{}-{}", ends.0, ends.1)?;
        }
        write!(f, "}}")
    }
}

/// JSON form `{v:[..], e:[[u,v],..]}`; `eid` lists edge ids when they are not `0..m`.
#[derive(Serialize, Deserialize)]
struct GraphJson {
    v: Vec<VertexId>,
    e: Vec<[VertexId; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eid: Option<Vec<EdgeId>>,
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        let contiguous = g.edges.keys().enumerate().all(|(i, &e)| i as EdgeId == e);
        GraphJson {
            v: g.vertices.iter().copied().collect(),
            e: g.edges.values().map(|ends| [ends.0, ends.1]).collect(),
            eid: (!contiguous).then(|| g.edges.keys().copied().collect()),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Self> {
        let ids: Vec<EdgeId> = match j.eid {
            Some(ids) if ids.len() != j.e.len() => {
                return Err(domain("eid and e have different lengths"));
            }
            Some(ids) => ids,
            None => (0..j.e.len() as EdgeId).collect(),
        };
        let mut g = Graph::discrete(j.v);
        for (e, [u, v]) in ids.into_iter().zip(j.e) {
            g.add_edge(e, u, v)?;
        }
        Ok(g)
    }
}

/// A graph together with a set of source vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SourcedGraph {
    pub graph: Graph,
    pub sources: VertexSet,
}

impl SourcedGraph {
    pub fn new(graph: Graph, sources: VertexSet) -> Result<Self> {
        if let Some(&v) = sources.iter().find(|v| !graph.has_vertex(**v)) {
            return Err(Error::UnknownVertex(v));
        }
        Ok(SourcedGraph { graph, sources })
    }

    pub fn unsourced(graph: Graph) -> Self {
        SourcedGraph { graph, sources: VertexSet::new() }
    }

    pub fn vertices(&self) -> &VertexSet {
        self.graph.vertices()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }
}

pub(crate) fn fmt_set(s: &VertexSet) -> String {
    let items: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)])
    }

    #[test]
    fn ends_of_edges() {
        let g = k3();
        assert_eq!(g.ends_of_edge_set(&[0]).unwrap(), VertexSet::from([0, 1]));
        assert_eq!(g.ends_of_edge_set(&[]).unwrap(), VertexSet::new());
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(p3.ends_of_edge_set(&[0, 1]).unwrap(), VertexSet::from([0, 1, 2]));
        assert_eq!(g.ends_of_edge_set(&[7]), Err(Error::UnknownEdge(7)));
    }

    #[test]
    fn subcubic_trees() {
        assert!(Graph::discrete([0]).is_subcubic_tree());
        assert!(Graph::new().is_subcubic_tree());
        let star4 = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert!(!star4.is_subcubic_tree());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 2)]).is_subcubic_tree());
        assert!(!k3().is_subcubic_tree());
        assert!(!Graph::from_edges(1, &[(0, 0)]).is_tree());
        assert!(!Graph::from_edges(2, &[(0, 1), (0, 1)]).is_tree());
        assert!(!Graph::discrete([0, 1]).is_tree());
    }

    #[test]
    fn leaves_and_paths() {
        let p = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(p.leaves(), VertexSet::from([0, 3]));
        assert_eq!(p.tree_path(0, 3).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(p.tree_path(2, 2).unwrap(), vec![2]);
        assert_eq!(Graph::discrete([5]).leaves(), VertexSet::from([5]));
    }

    #[test]
    fn json_round_trip() {
        let mut g = k3();
        g.add_vertex(9);
        g.add_edge(4, 9, 9).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"v":[0,1,2,9],"e":[[0,1],[1,2],[0,2],[9,9]],"eid":[0,1,2,4]}"#);
        let back: Graph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Graph>(r#"{"v":[0],"e":[[0,1]]}"#).is_err());
    }

    #[test]
    fn components_and_induced() {
        let g = Graph::from_edges(5, &[(0, 1), (2, 3)]);
        assert_eq!(g.components().len(), 3);
        let h = k3().induced(&VertexSet::from([0, 1])).unwrap();
        assert_eq!(h.num_edges(), 1);
        assert!(h.is_subgraph_of(&k3()));
        assert_eq!(g.isolated_vertices(), VertexSet::from([4]));
    }
}
