//! Lists of recursive decompositions for exhaustive tests, capped at `limit`.
//!
//! Tree and path decompositions range over the same normal form as the
//! oracles: a bag, and the components outside it grouped into children that
//! take exactly their neighbourhood in the bag as sources.

use super::{bits, submasks, Dense};
use crate::decomp::{split_sourced, RecBranchDec, RecPathDec, RecTreeDec};
use crate::graph::{EdgeSet, SourcedGraph};

fn restrict(gamma: &SourcedGraph, dense: &Dense, vs: u32, sources: u32, skip: &EdgeSet) -> SourcedGraph {
    let vset = dense.vertex_set(vs);
    let es: EdgeSet = gamma.graph.edges_within(&vset).difference(skip).copied().collect();
    SourcedGraph {
        graph: gamma.graph.subgraph(&vset, &es).expect("edges within the chosen vertices"),
        sources: dense.vertex_set(sources),
    }
}

pub fn all_rec_tree_decs(gamma: &SourcedGraph, limit: usize) -> Vec<RecTreeDec> {
    let dense = Dense::new(&gamma.graph);
    trees(gamma, &dense, dense.full(), dense.mask(&gamma.sources), limit)
}

fn trees(gamma: &SourcedGraph, dense: &Dense, u: u32, x: u32, limit: usize) -> Vec<RecTreeDec> {
    if u == 0 {
        return vec![RecTreeDec::Empty];
    }
    let mut out =
        vec![RecTreeDec::node(gamma.clone(), RecTreeDec::Empty, dense.vertex_set(u), RecTreeDec::Empty)];
    for extra in submasks(u & !x) {
        let bag = x | extra;
        if bag == u {
            continue;
        }
        let comps = dense.components(u & !bag);
        let (head, tail) = comps.split_first().expect("some vertex outside the bag");
        for pick in 0..1u32 << tail.len() {
            let k1 = head | bits(pick).fold(0, |a, i| a | tail[i]);
            let k2 = (u & !bag) & !k1;
            let x1 = dense.neighbours(k1) & bag;
            let x2 = if k2 == 0 { 0 } else { dense.neighbours(k2) & bag };
            if (k1 | x1) == u && x1 == x || (k2 | x2) == u && x2 == x {
                continue;
            }
            let g1 = restrict(gamma, dense, k1 | x1, x1, &EdgeSet::new());
            let firsts = trees(&g1, dense, k1 | x1, x1, limit);
            let seconds = if k2 == 0 {
                vec![RecTreeDec::Empty]
            } else {
                let g2 = restrict(gamma, dense, k2 | x2, x2, &g1.graph.edge_ids());
                trees(&g2, dense, k2 | x2, x2, limit)
            };
            for a in &firsts {
                for b in &seconds {
                    if out.len() >= limit {
                        return out;
                    }
                    out.push(RecTreeDec::node(gamma.clone(), a.clone(), dense.vertex_set(bag), b.clone()));
                }
            }
        }
    }
    out
}

pub fn all_rec_path_decs(gamma: &SourcedGraph, limit: usize) -> Vec<RecPathDec> {
    let dense = Dense::new(&gamma.graph);
    paths(gamma, &dense, dense.full(), dense.mask(&gamma.sources), limit)
}

fn paths(gamma: &SourcedGraph, dense: &Dense, u: u32, x: u32, limit: usize) -> Vec<RecPathDec> {
    if u == 0 {
        return vec![RecPathDec::Empty];
    }
    let mut out = vec![RecPathDec::cons(gamma.clone(), dense.vertex_set(u), RecPathDec::Empty)];
    for extra in submasks(u & !x) {
        let bag = x | extra;
        if bag == u {
            continue;
        }
        let rest = u & !bag;
        let xs = dense.neighbours(rest) & bag;
        if (rest | xs) == u && xs == x {
            continue;
        }
        let sub = restrict(gamma, dense, rest | xs, xs, &EdgeSet::new());
        for tail in paths(&sub, dense, rest | xs, xs, limit) {
            if out.len() >= limit {
                return out;
            }
            out.push(RecPathDec::cons(gamma.clone(), dense.vertex_set(bag), tail));
        }
    }
    out
}

/// Every way to split the edges recursively into two non-empty halves, up to
/// swapping the halves; isolated vertices always go right.
pub fn all_rec_branch_decs(gamma: &SourcedGraph, limit: usize) -> Vec<RecBranchDec> {
    let edges: Vec<u32> = gamma.graph.edge_ids().into_iter().collect();
    match edges.len() {
        0 => return vec![RecBranchDec::Empty { graph: gamma.clone() }],
        1 => return vec![RecBranchDec::Leaf { graph: gamma.clone() }],
        _ => {}
    }
    let m = edges.len();
    let full = ((1u64 << m) - 1) as u32;
    let mut out = Vec::new();
    for part in submasks(full & !1) {
        let s1 = part | 1;
        if s1 == full {
            continue;
        }
        let pick = |mask: u32| -> EdgeSet { bits(mask).map(|i| edges[i]).collect() };
        let (g1, g2) = split_sourced(gamma, pick(s1), pick(full & !s1));
        let firsts = all_rec_branch_decs(&g1, limit);
        let seconds = all_rec_branch_decs(&g2, limit);
        for a in &firsts {
            for b in &seconds {
                if out.len() >= limit {
                    return out;
                }
                out.push(RecBranchDec::node(a.clone(), gamma.clone(), b.clone()));
            }
        }
    }
    out
}
