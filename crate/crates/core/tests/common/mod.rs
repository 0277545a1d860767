#![allow(dead_code)]

use mwd_core::{Cospan, Graph, VertexId, VertexSet};
use rand::Rng;

/// Every simple graph on vertex set `0..n` for `n` in `1..=max_v`, labelled.
pub fn labelled_graphs(max_v: u32) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=max_v {
        let pairs: Vec<(u32, u32)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        for mask in 0u32..1 << pairs.len() {
            let es: Vec<(u32, u32)> = (0..pairs.len()).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
            out.push(Graph::from_edges(n, &es));
        }
    }
    out
}

/// Loops and parallel edges allowed.
pub fn random_multigraph(rng: &mut impl Rng, max_v: u32, max_e: usize) -> Graph {
    let n = rng.gen_range(1..=max_v);
    let m = rng.gen_range(0..=max_e);
    let es: Vec<(u32, u32)> = (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
    Graph::from_edges(n, &es)
}

pub fn random_subset(rng: &mut impl Rng, vs: &VertexSet) -> VertexSet {
    vs.iter().copied().filter(|_| rng.gen_bool(0.3)).collect()
}

pub fn subsets(vs: &VertexSet) -> Vec<VertexSet> {
    let items: Vec<VertexId> = vs.iter().copied().collect();
    (0u32..1 << items.len())
        .map(|m| (0..items.len()).filter(|i| m >> i & 1 == 1).map(|i| items[i]).collect())
        .collect()
}

pub fn random_cospan(rng: &mut impl Rng, dom: usize, cod: usize) -> Cospan {
    let g = random_multigraph(rng, 4, 3);
    let n = g.num_vertices() as u32;
    let left = (0..dom).map(|_| rng.gen_range(0..n)).collect();
    let right = (0..cod).map(|_| rng.gen_range(0..n)).collect();
    Cospan::new(g, left, right).unwrap()
}
