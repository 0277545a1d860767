use std::collections::BTreeMap;

use super::{EdgeId, Graph, GraphMorphism, VertexId};

struct Dense {
    ids: Vec<VertexId>,
    index: BTreeMap<VertexId, usize>,
    mult: Vec<Vec<usize>>,
    key: Vec<(usize, usize)>,
}

impl Dense {
    fn new(g: &Graph) -> Self {
        let ids: Vec<VertexId> = g.vertices().iter().copied().collect();
        let index: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = ids.len();
        let mut mult = vec![vec![0; n]; n];
        for (_, ends) in g.edges() {
            let (a, b) = (index[&ends.first()], index[&ends.second()]);
            mult[a][b] += 1;
            if a != b {
                mult[b][a] += 1;
            }
        }
        let key = (0..n)
            .map(|i| {
                let degree: usize = (0..n).filter(|&j| j != i).map(|j| mult[i][j]).sum();
                (degree, mult[i][i])
            })
            .collect();
        Dense { ids, index, mult, key }
    }
}

/// An isomorphism `g1 -> g2` extending the given vertex pairs, if one exists.
pub fn find_isomorphism(g1: &Graph, g2: &Graph, fixed: &[(VertexId, VertexId)]) -> Option<GraphMorphism> {
    if g1.num_vertices() != g2.num_vertices() || g1.num_edges() != g2.num_edges() {
        return None;
    }
    let (d1, d2) = (Dense::new(g1), Dense::new(g2));
    let mut k1 = d1.key.clone();
    let mut k2 = d2.key.clone();
    k1.sort_unstable();
    k2.sort_unstable();
    if k1 != k2 {
        return None;
    }
    let n = d1.ids.len();
    let mut assign: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    for &(a, b) in fixed {
        let (i, j) = (*d1.index.get(&a)?, *d2.index.get(&b)?);
        match assign[i] {
            Some(k) if k != j => return None,
            Some(_) => {}
            None => {
                if used[j] {
                    return None;
                }
                assign[i] = Some(j);
                used[j] = true;
            }
        }
    }
    let preset: Vec<usize> = (0..n).filter(|&i| assign[i].is_some()).collect();
    for &i in &preset {
        if !consistent(&d1, &d2, &assign, i, assign[i].unwrap()) {
            return None;
        }
    }
    // most constrained first: high degree vertices, in id order
    let mut order: Vec<usize> = (0..n).filter(|&i| assign[i].is_none()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(d1.key[i].0));
    if !backtrack(&d1, &d2, &order, 0, &mut assign, &mut used) {
        return None;
    }
    let vmap: BTreeMap<VertexId, VertexId> =
        (0..n).map(|i| (d1.ids[i], d2.ids[assign[i].unwrap()])).collect();
    // match parallel edges in id order
    let mut buckets: BTreeMap<super::Ends, Vec<EdgeId>> = BTreeMap::new();
    for (e, ends) in g2.edges() {
        buckets.entry(ends).or_default().push(e);
    }
    let mut emap = BTreeMap::new();
    for (e, ends) in g1.edges() {
        let bucket = buckets.get_mut(&ends.map(|v| vmap[&v]))?;
        emap.insert(e, bucket.remove(0));
    }
    Some(GraphMorphism { domain: g1.clone(), codomain: g2.clone(), vmap, emap })
}

fn consistent(d1: &Dense, d2: &Dense, assign: &[Option<usize>], i: usize, j: usize) -> bool {
    if d1.key[i] != d2.key[j] {
        return false;
    }
    assign
        .iter()
        .enumerate()
        .filter_map(|(k, a)| a.map(|b| (k, b)))
        .all(|(k, b)| d1.mult[i][k] == d2.mult[j][b])
}

fn backtrack(
    d1: &Dense,
    d2: &Dense,
    order: &[usize],
    pos: usize,
    assign: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
) -> bool {
    if pos == order.len() {
        return true;
    }
    let i = order[pos];
    for j in 0..d2.ids.len() {
        if used[j] || !consistent(d1, d2, assign, i, j) {
            continue;
        }
        assign[i] = Some(j);
        used[j] = true;
        if backtrack(d1, d2, order, pos + 1, assign, used) {
            return true;
        }
        assign[i] = None;
        used[j] = false;
    }
    false
}

pub fn graph_isomorphic(g1: &Graph, g2: &Graph) -> Option<GraphMorphism> {
    find_isomorphism(g1, g2, &[])
}
