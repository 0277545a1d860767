//! Exact tree, path and branch width of small graphs by exhaustive search,
//! plus the small-graph catalog and independent cross-checks.

mod cache;
mod catalog;
mod enumerate;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::decomp::{
    path_from_recursive, tree_from_recursive, BranchDec, PathDec, RecPathDec, RecTreeDec, TreeDec,
};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet, Graph, SourcedGraph, VertexId, VertexSet};

pub use cache::WidthCache;
pub use catalog::{canonical_key, enumerate_graphs, GraphCatalog};
pub use enumerate::{all_rec_branch_decs, all_rec_path_decs, all_rec_tree_decs};

pub const DEFAULT_MAX_VERTICES: usize = 8;
pub const DEFAULT_MAX_EDGES: usize = 7;

/// Exact widths of one graph, paper convention (no `-1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Widths {
    pub tw: usize,
    pub pw: usize,
    pub bw: usize,
}

pub fn exact_widths(g: &Graph) -> Result<Widths> {
    exact_widths_with_limit(g, DEFAULT_MAX_EDGES)
}

/// As [`exact_widths`] with a different edge limit for the branch width search.
pub fn exact_widths_with_limit(g: &Graph, max_edges: usize) -> Result<Widths> {
    Ok(Widths {
        tw: exact_treewidth(g)?.0,
        pw: exact_pathwidth(g)?.0,
        bw: exact_branchwidth_with_limit(g, max_edges)?.0,
    })
}

/// Vertices renumbered `0..n` with neighbourhood bitmasks; loops and
/// parallel edges do not matter for tree or path width.
pub(crate) struct Dense {
    pub ids: Vec<VertexId>,
    pub adj: Vec<u32>,
}

impl Dense {
    pub fn new(g: &Graph) -> Self {
        let ids: Vec<VertexId> = g.vertices().iter().copied().collect();
        let index = |v: VertexId| ids.binary_search(&v).expect("vertex of the graph");
        let mut adj = vec![0u32; ids.len()];
        for (_, ends) in g.edges() {
            let (a, b) = (index(ends.first()), index(ends.second()));
            if a != b {
                adj[a] |= 1 << b;
                adj[b] |= 1 << a;
            }
        }
        Dense { ids, adj }
    }

    pub fn full(&self) -> u32 {
        ((1u64 << self.ids.len()) - 1) as u32
    }

    pub fn neighbours(&self, set: u32) -> u32 {
        bits(set).fold(0, |acc, i| acc | self.adj[i]) & !set
    }

    /// Connected components of the subgraph induced by `set`.
    pub fn components(&self, set: u32) -> Vec<u32> {
        let mut left = set;
        let mut out = Vec::new();
        while left != 0 {
            let mut comp = left & left.wrapping_neg();
            loop {
                let grown = comp | (self.neighbours(comp) & set);
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            out.push(comp);
            left &= !comp;
        }
        out
    }

    pub fn vertex_set(&self, mask: u32) -> VertexSet {
        bits(mask).map(|i| self.ids[i]).collect()
    }

    pub fn mask(&self, vs: &VertexSet) -> u32 {
        vs.iter().map(|v| 1u32 << self.ids.binary_search(v).expect("vertex of the graph")).fold(0, |a, b| a | b)
    }
}

pub(crate) fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask >> i & 1 == 1)
}

/// Every submask of `mask`, including 0 and `mask`.
pub(crate) fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

fn too_large(what: &str, n: usize, limit: usize) -> Error {
    Error::TooLarge(format!("{n} {what} exceeds the oracle limit of {limit}"))
}

/// How a subproblem `(U, X)` is best split: `bag` plus the two groups of
/// components hanging off it (path problems use only the first group).
#[derive(Clone, Copy)]
struct Choice {
    width: usize,
    bag: u32,
    first: u32,
    second: u32,
}

/// Minimum over recursive tree decompositions of `(G[U], X)`.
struct TreeSearch<'a> {
    dense: &'a Dense,
    memo: HashMap<(u32, u32), Choice>,
}

impl TreeSearch<'_> {
    fn solve(&mut self, u: u32, x: u32) -> usize {
        if u == 0 {
            return 0;
        }
        if let Some(c) = self.memo.get(&(u, x)) {
            return c.width;
        }
        let mut best = Choice { width: u.count_ones() as usize, bag: u, first: 0, second: 0 };
        for extra in submasks(u & !x) {
            let bag = x | extra;
            if bag == u || bag.count_ones() as usize >= best.width {
                continue;
            }
            let comps = self.dense.components(u & !bag);
            let (head, tail) = comps.split_first().expect("some vertex outside the bag");
            for pick in 0..1u32 << tail.len() {
                let k1 = head | bits(pick).fold(0, |a, i| a | tail[i]);
                let k2 = (u & !bag) & !k1;
                let mut width = bag.count_ones() as usize;
                for k in [k1, k2] {
                    if k == 0 {
                        continue;
                    }
                    let xs = self.dense.neighbours(k) & bag;
                    if (k | xs) == u && xs == x {
                        width = usize::MAX;
                        break;
                    }
                    width = width.max(self.solve(k | xs, xs));
                    if width >= best.width {
                        break;
                    }
                }
                if width < best.width {
                    best = Choice { width, bag, first: k1, second: k2 };
                }
            }
        }
        self.memo.insert((u, x), best);
        best.width
    }

    fn witness(&mut self, gamma: &SourcedGraph, u: u32, x: u32) -> RecTreeDec {
        if u == 0 {
            return RecTreeDec::Empty;
        }
        self.solve(u, x);
        let c = self.memo[&(u, x)];
        let mut used = EdgeSet::new();
        let mut child = |k: u32, this: &mut Self| {
            if k == 0 {
                return RecTreeDec::Empty;
            }
            let xs = this.dense.neighbours(k) & c.bag;
            let vs = this.dense.vertex_set(k | xs);
            let es: EdgeSet = gamma.graph.edges_within(&vs).difference(&used).copied().collect();
            used.extend(es.iter().copied());
            let sub = SourcedGraph {
                graph: gamma.graph.subgraph(&vs, &es).expect("edges within the chosen vertices"),
                sources: this.dense.vertex_set(xs),
            };
            this.witness(&sub, k | xs, xs)
        };
        let left = child(c.first, self);
        let right = child(c.second, self);
        RecTreeDec::node(gamma.clone(), left, self.dense.vertex_set(c.bag), right)
    }
}

/// Optimal recursive tree decomposition of `Γ`.
pub fn optimal_rec_tree_dec(gamma: &SourcedGraph) -> Result<RecTreeDec> {
    let n = gamma.graph.num_vertices();
    if n > DEFAULT_MAX_VERTICES {
        return Err(too_large("vertices", n, DEFAULT_MAX_VERTICES));
    }
    let dense = Dense::new(&gamma.graph);
    let mut search = TreeSearch { dense: &dense, memo: HashMap::new() };
    let x = dense.mask(&gamma.sources);
    Ok(search.witness(gamma, dense.full(), x))
}

/// `tw(G)` with a witness, searching recursive tree decompositions.
pub fn exact_treewidth(g: &Graph) -> Result<(usize, TreeDec)> {
    let t = optimal_rec_tree_dec(&SourcedGraph::unsourced(g.clone()))?;
    let td = tree_from_recursive(&t);
    Ok((td.width(), td))
}

struct PathSearch<'a> {
    dense: &'a Dense,
    memo: HashMap<(u32, u32), Choice>,
}

impl PathSearch<'_> {
    fn solve(&mut self, u: u32, x: u32) -> usize {
        if u == 0 {
            return 0;
        }
        if let Some(c) = self.memo.get(&(u, x)) {
            return c.width;
        }
        let mut best = Choice { width: u.count_ones() as usize, bag: u, first: 0, second: 0 };
        for extra in submasks(u & !x) {
            let bag = x | extra;
            if bag == u || bag.count_ones() as usize >= best.width {
                continue;
            }
            let rest = u & !bag;
            let xs = self.dense.neighbours(rest) & bag;
            if (rest | xs) == u && xs == x {
                continue;
            }
            let width = (bag.count_ones() as usize).max(self.solve(rest | xs, xs));
            if width < best.width {
                best = Choice { width, bag, first: rest, second: 0 };
            }
        }
        self.memo.insert((u, x), best);
        best.width
    }

    fn witness(&mut self, gamma: &SourcedGraph, u: u32, x: u32) -> RecPathDec {
        if u == 0 {
            return RecPathDec::Empty;
        }
        self.solve(u, x);
        let c = self.memo[&(u, x)];
        let tail = if c.first == 0 {
            RecPathDec::Empty
        } else {
            let xs = self.dense.neighbours(c.first) & c.bag;
            let vs = self.dense.vertex_set(c.first | xs);
            let es = gamma.graph.edges_within(&vs);
            let sub = SourcedGraph {
                graph: gamma.graph.subgraph(&vs, &es).expect("edges within the chosen vertices"),
                sources: self.dense.vertex_set(xs),
            };
            self.witness(&sub, c.first | xs, xs)
        };
        RecPathDec::cons(gamma.clone(), self.dense.vertex_set(c.bag), tail)
    }
}

pub fn optimal_rec_path_dec(gamma: &SourcedGraph) -> Result<RecPathDec> {
    let n = gamma.graph.num_vertices();
    if n > DEFAULT_MAX_VERTICES {
        return Err(too_large("vertices", n, DEFAULT_MAX_VERTICES));
    }
    let dense = Dense::new(&gamma.graph);
    let mut search = PathSearch { dense: &dense, memo: HashMap::new() };
    let x = dense.mask(&gamma.sources);
    Ok(search.witness(gamma, dense.full(), x))
}

/// `pw(G)` with a witness, searching recursive path decompositions.
pub fn exact_pathwidth(g: &Graph) -> Result<(usize, PathDec)> {
    let t = optimal_rec_path_dec(&SourcedGraph::unsourced(g.clone()))?;
    let pd = path_from_recursive(&t);
    Ok((pd.width(), pd))
}

/// Edges renumbered `0..m` with their end sets.
struct EdgeMasks {
    ids: Vec<EdgeId>,
    ends: Vec<VertexSet>,
}

impl EdgeMasks {
    fn new(g: &Graph) -> Self {
        let (ids, ends) = g.edges().map(|(e, ends)| (e, ends.vertices().collect())).unzip();
        EdgeMasks { ids, ends }
    }

    fn ends_of(&self, mask: u32) -> VertexSet {
        bits(mask).flat_map(|i| self.ends[i].iter().copied()).collect()
    }

    fn order(&self, mask: u32, full: u32) -> usize {
        self.ends_of(mask).intersection(&self.ends_of(full & !mask)).count()
    }
}

struct BranchSearch<'a> {
    edges: &'a EdgeMasks,
    full: u32,
    memo: HashMap<u32, (usize, u32)>,
}

impl BranchSearch<'_> {
    /// Best rooted subtree over the edges in `s`, counting the edge above it.
    fn solve(&mut self, s: u32) -> usize {
        if let Some(&(w, _)) = self.memo.get(&s) {
            return w;
        }
        let own = self.edges.order(s, self.full);
        let mut best = (usize::MAX, 0);
        if s.count_ones() == 1 {
            best = (own, 0);
        } else {
            let low = s & s.wrapping_neg();
            for part in submasks(s & !low) {
                let s1 = part | low;
                if s1 == s {
                    continue;
                }
                let w = own.max(self.solve(s1)).max(self.solve(s & !s1));
                if w < best.0 {
                    best = (w, s1);
                }
            }
        }
        self.memo.insert(s, best);
        best.0
    }

    /// Adds the subtree for `s` to `bd` and returns its root.
    fn build(&self, s: u32, bd: &mut BranchDec) -> VertexId {
        let id = bd.shape.num_vertices() as VertexId;
        bd.shape.add_vertex(id);
        if s.count_ones() == 1 {
            bd.leaf_map.insert(id, self.edges.ids[s.trailing_zeros() as usize]);
            return id;
        }
        let s1 = self.memo[&s].1;
        for part in [s1, s & !s1] {
            let c = self.build(part, bd);
            let e = bd.shape.num_edges() as EdgeId;
            bd.shape.add_edge(e, id, c).expect("fresh vertices");
        }
        id
    }
}

/// `bw(G)` with a witness, by dynamic programming over edge bipartitions.
pub fn exact_branchwidth(g: &Graph) -> Result<(usize, BranchDec)> {
    exact_branchwidth_with_limit(g, DEFAULT_MAX_EDGES)
}

pub fn exact_branchwidth_with_limit(g: &Graph, max_edges: usize) -> Result<(usize, BranchDec)> {
    let m = g.num_edges();
    if m > max_edges.min(31) {
        return Err(too_large("edges", m, max_edges));
    }
    let edges = EdgeMasks::new(g);
    let mut bd = BranchDec::new(Graph::new(), Default::default());
    if m <= 1 {
        if m == 1 {
            bd.shape.add_vertex(0);
            bd.leaf_map.insert(0, edges.ids[0]);
        }
        return Ok((0, bd));
    }
    let full = ((1u64 << m) - 1) as u32;
    let mut search = BranchSearch { edges: &edges, full, memo: HashMap::new() };
    let mut best = (usize::MAX, 0);
    for part in submasks(full & !1) {
        let s1 = part | 1;
        if s1 == full {
            continue;
        }
        let w = search.solve(s1).max(search.solve(full & !s1));
        if w < best.0 {
            best = (w, s1);
        }
    }
    let a = search.build(best.1, &mut bd);
    let b = search.build(full & !best.1, &mut bd);
    let e = bd.shape.num_edges() as EdgeId;
    bd.shape.add_edge(e, a, b).expect("fresh vertices");
    Ok((best.0, bd))
}

/// Classic tree width plus one, from the best elimination ordering.
pub fn treewidth_by_elimination(g: &Graph) -> usize {
    let dense = Dense::new(g);
    let n = dense.ids.len();
    if n == 0 {
        return 0;
    }
    // best[S] = cheapest way to eliminate the set S first
    let mut best = vec![usize::MAX; 1 << n];
    best[0] = 0;
    for s in 0..1u32 << n {
        if best[s as usize] == usize::MAX {
            continue;
        }
        for v in bits(dense.full() & !s) {
            // neighbours of v reachable through eliminated vertices
            let mut reach = 1u32 << v;
            loop {
                let grown = reach | (dense.neighbours(reach & (s | 1 << v)) & (s | 1 << v)) | (1 << v);
                if grown == reach {
                    break;
                }
                reach = grown;
            }
            let degree = (dense.neighbours(reach) & !s).count_ones() as usize;
            let t = s | 1 << v;
            best[t as usize] = best[t as usize].min(best[s as usize].max(degree));
        }
    }
    best[dense.full() as usize] + 1
}

/// Vertex separation number plus one, over all vertex orderings.
pub fn pathwidth_by_vertex_separation(g: &Graph) -> usize {
    let dense = Dense::new(g);
    let n = dense.ids.len();
    if n == 0 {
        return 0;
    }
    let mut best = vec![usize::MAX; 1 << n];
    best[0] = 0;
    for s in 0..1u32 << n {
        if best[s as usize] == usize::MAX {
            continue;
        }
        for v in bits(dense.full() & !s) {
            let t = s | 1 << v;
            let boundary = bits(t).filter(|&u| dense.adj[u] & !t != 0).count();
            best[t as usize] = best[t as usize].min(best[s as usize].max(boundary));
        }
    }
    best[dense.full() as usize] + 1
}

/// Branch width by trying every full binary tree over the edges.
pub fn branchwidth_brute_force(g: &Graph) -> usize {
    let m = g.num_edges();
    if m <= 1 {
        return 0;
    }
    let edges = EdgeMasks::new(g);
    let full = ((1u64 << m) - 1) as u32;
    // trees as edge lists over nodes; leaves 0..m, inner nodes above
    let mut best = usize::MAX;
    let mut stack: Vec<(Vec<(usize, usize)>, usize, usize)> = Vec::new();
    if m == 2 {
        stack.push((vec![(0, 1)], 2, 2));
    } else {
        stack.push((vec![(0, m), (1, m), (2, m)], 3, m + 1));
    }
    while let Some((tree, placed, next_inner)) = stack.pop() {
        if placed == m {
            let width = tree
                .iter()
                .map(|&(a, b)| {
                    let side = leaves_beyond(&tree, a, b, m);
                    edges.order(side, full)
                })
                .max()
                .unwrap_or(0);
            best = best.min(width);
            continue;
        }
        for i in 0..tree.len() {
            let (a, b) = tree[i];
            let mut t = tree.clone();
            t[i] = (a, next_inner);
            t.push((next_inner, b));
            t.push((placed, next_inner));
            stack.push((t, placed + 1, next_inner + 1));
        }
    }
    best
}

/// Leaf labels on `b`'s side of the tree edge `a - b`.
fn leaves_beyond(tree: &[(usize, usize)], a: usize, b: usize, m: usize) -> u32 {
    let mut seen = vec![a, b];
    let mut stack = vec![b];
    let mut out = 0u32;
    while let Some(n) = stack.pop() {
        if n < m {
            out |= 1 << n;
        }
        for &(x, y) in tree {
            let other = if x == n { y } else if y == n { x } else { continue };
            if !seen.contains(&other) {
                seen.push(other);
                stack.push(other);
            }
        }
    }
    out
}

/// `max{bw, 2} <= tw <= max{⌊3·bw/2⌋, 2}`: the classic inequality on
/// `tw_classic + 1`, which is exactly the width used here. Holds on graphs
/// with at least one edge between distinct vertices.
pub fn footnote_inequality_holds(w: &Widths) -> bool {
    w.bw.max(2) <= w.tw && w.tw <= (3 * w.bw / 2).max(2)
}
