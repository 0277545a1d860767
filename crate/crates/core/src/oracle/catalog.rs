//! Simple graphs up to isomorphism, kept as the smallest adjacency mask over
//! all vertex relabellings.

use crate::graph::{Graph, VertexId};

/// Every simple graph with `1..=max_v` vertices and at most `max_e` edges,
/// one per isomorphism class, ordered by vertex count, then edge count, then mask.
#[derive(Clone, Debug)]
pub struct GraphCatalog {
    pub graphs: Vec<Graph>,
}

impl GraphCatalog {
    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Graph> {
        self.graphs.iter()
    }
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// For each permutation, where each pair index goes.
fn pair_images(n: usize) -> Vec<Vec<usize>> {
    let ps = pairs(n);
    let index = |a: usize, b: usize| ps.iter().position(|&p| p == (a.min(b), a.max(b))).expect("a pair");
    permutations(n).iter().map(|perm| ps.iter().map(|&(i, j)| index(perm[i], perm[j])).collect()).collect()
}

fn relabel(mask: u32, image: &[usize]) -> u32 {
    image.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).fold(0, |acc, (_, &to)| acc | 1 << to)
}

fn to_graph(n: usize, mask: u32) -> Graph {
    let es: Vec<(VertexId, VertexId)> = pairs(n)
        .into_iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, (i, j))| (i as VertexId, j as VertexId))
        .collect();
    Graph::from_edges(n as u32, &es)
}

pub fn enumerate_graphs(max_v: usize, max_e: usize) -> GraphCatalog {
    assert!(max_v <= 6, "the catalog is limited to six vertices");
    let mut graphs = Vec::new();
    for n in 1..=max_v {
        let images = pair_images(n);
        let slots = n * (n - 1) / 2;
        let mut reps: Vec<u32> = (0..1u32 << slots)
            .filter(|&mask| mask.count_ones() as usize <= max_e)
            .filter(|&mask| images.iter().all(|img| relabel(mask, img) >= mask))
            .collect();
        reps.sort_by_key(|&m| (m.count_ones(), m));
        graphs.extend(reps.into_iter().map(|m| to_graph(n, m)));
    }
    GraphCatalog { graphs }
}

/// Isomorphism-invariant name for a small multigraph with loops: the
/// lexicographically least sorted edge list over all relabellings.
pub fn canonical_key(g: &Graph) -> String {
    let ids: Vec<VertexId> = g.vertices().iter().copied().collect();
    let n = ids.len();
    let idx = |v: VertexId| ids.binary_search(&v).expect("vertex of the graph");
    let edges: Vec<(usize, usize)> = g.edges().map(|(_, e)| (idx(e.first()), idx(e.second()))).collect();
    let best = permutations(n)
        .into_iter()
        .map(|perm| {
            let mut es: Vec<(usize, usize)> =
                edges.iter().map(|&(a, b)| (perm[a].min(perm[b]), perm[a].max(perm[b]))).collect();
            es.sort_unstable();
            es
        })
        .min()
        .unwrap_or_default();
    let body: Vec<String> = best.iter().map(|(a, b)| format!("{a}-{b}")).collect();
    format!("{n}:{}", body.join(","))
}
