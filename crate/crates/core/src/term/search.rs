//! Bounded search for narrow decompositions of a cospan.
//!
//! States are sub-cospans of the input: a set of apex vertices and edges with
//! two boundary lists. From a state we try the state itself as a leaf, a
//! tensor split along its connected components, and a composition split along
//! an edge bipartition whose cut is the set of shared vertices. Both halves of
//! a composition are strictly smaller, so the search terminates. The result is
//! an upper bound on monoidal width, exact only where a sandwich pins it.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::DecompTree;
use crate::cospan::{cospan_iso_eq, Cospan};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet, VertexId, VertexSet};

pub const MAX_SEARCH_VERTICES: usize = 16;
pub const MAX_SEARCH_EDGES: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    Any,
    RightTree,
    Path,
}

impl Shape {
    pub fn admits(self, t: &DecompTree<Cospan>) -> bool {
        match self {
            Shape::Any => true,
            Shape::RightTree => t.is_right_tree(),
            Shape::Path => t.is_path(),
        }
    }
}

impl std::str::FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "any" => Ok(Shape::Any),
            "right-tree" => Ok(Shape::RightTree),
            "path" => Ok(Shape::Path),
            other => Err(Error::Domain(format!("unknown shape `{other}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub term: DecompTree<Cospan>,
    pub width: usize,
    /// The budget ran out and some states fell back to a leaf.
    pub bound_only: bool,
    pub states: usize,
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct State {
    vs: u32,
    es: u64,
    a: Vec<u8>,
    b: Vec<u8>,
}

impl State {
    fn size(&self) -> u32 {
        self.vs.count_ones() + self.es.count_ones()
    }
}

#[derive(Clone)]
enum Move {
    Leaf,
    Compose(State, State),
    Tensor { first: State, second: State, perm_in: Option<Vec<usize>>, perm_out: Option<Vec<usize>> },
}

#[derive(Clone)]
struct Best {
    width: usize,
    nodes: usize,
    how: Move,
}

struct Search<'a> {
    g: &'a Cospan,
    vids: Vec<VertexId>,
    eids: Vec<EdgeId>,
    ends: Vec<(usize, usize)>,
    shape: Shape,
    budget: usize,
    memo: HashMap<State, Best>,
    bound_only: bool,
}

fn bits32(m: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| m >> i & 1 == 1)
}

fn bits64(m: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| m >> i & 1 == 1)
}

/// Every submask of `m`, including 0 and `m`.
fn submasks(m: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(m);
    std::iter::from_fn(move || {
        let cur = next?;
        next = (cur != 0).then(|| (cur - 1) & m);
        Some(cur)
    })
}

fn mask_of(list: &[u8]) -> u32 {
    list.iter().fold(0, |m, &v| m | 1 << v)
}

impl<'a> Search<'a> {
    fn new(g: &'a Cospan, shape: Shape, budget: usize) -> Result<Self> {
        let apex = g.apex();
        if apex.num_vertices() > MAX_SEARCH_VERTICES || apex.num_edges() > MAX_SEARCH_EDGES {
            return Err(Error::TooLarge(format!(
                "search handles at most {MAX_SEARCH_VERTICES} vertices and {MAX_SEARCH_EDGES} edges"
            )));
        }
        let vids: Vec<VertexId> = apex.vertices().iter().copied().collect();
        let idx = |v: VertexId| vids.binary_search(&v).expect("vertex of the apex");
        let eids: Vec<EdgeId> = apex.edge_ids().into_iter().collect();
        let ends = apex.edges().map(|(_, e)| (idx(e.first()), idx(e.second()))).collect();
        Ok(Search { g, vids, eids, ends, shape, budget, memo: HashMap::new(), bound_only: false })
    }

    fn root(&self) -> State {
        let idx = |v: &VertexId| self.vids.binary_search(v).expect("leg lands in the apex") as u8;
        State {
            vs: ((1u64 << self.vids.len()) - 1) as u32,
            es: if self.eids.is_empty() { 0 } else { u64::MAX >> (64 - self.eids.len()) },
            a: self.g.left_leg().iter().map(idx).collect(),
            b: self.g.right_leg().iter().map(idx).collect(),
        }
    }

    fn ends_mask(&self, es: u64) -> u32 {
        bits64(es).fold(0, |m, e| m | 1 << self.ends[e].0 | 1 << self.ends[e].1)
    }

    fn components(&self, s: &State) -> Vec<u32> {
        let mut comps: Vec<u32> = Vec::new();
        let mut left = s.vs;
        while left != 0 {
            let mut comp = 1u32 << left.trailing_zeros();
            loop {
                let grown = bits64(s.es)
                    .filter(|&e| comp & (1 << self.ends[e].0 | 1 << self.ends[e].1) != 0)
                    .fold(comp, |m, e| m | 1 << self.ends[e].0 | 1 << self.ends[e].1);
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            comps.push(comp);
            left &= !comp;
        }
        comps
    }

    fn solve(&mut self, s: &State) -> Best {
        if let Some(b) = self.memo.get(s) {
            return b.clone();
        }
        let mut best = Best { width: s.vs.count_ones() as usize, nodes: 1, how: Move::Leaf };
        if self.memo.len() >= self.budget {
            self.bound_only = true;
            return best;
        }
        // reserve the slot so the budget counts this state
        self.memo.insert(s.clone(), best.clone());
        if self.shape != Shape::Path {
            self.try_tensors(s, &mut best);
        }
        self.try_compositions(s, &mut best);
        self.memo.insert(s.clone(), best.clone());
        best
    }

    fn consider(best: &mut Best, width: usize, nodes: usize, how: impl FnOnce() -> Move) {
        if (width, nodes) < (best.width, best.nodes) {
            *best = Best { width, nodes, how: how() };
        }
    }

    fn try_tensors(&mut self, s: &State, best: &mut Best) {
        let comps = self.components(s);
        if comps.len() < 2 {
            return;
        }
        let (head, tail) = comps.split_first().expect("two components");
        for pick in 0..(1u32 << tail.len()) - 1 {
            let v1 = bits32(pick).fold(*head, |m, i| m | tail[i]);
            let v2 = s.vs & !v1;
            let split = |list: &[u8]| -> (Vec<usize>, Vec<u8>, Vec<u8>) {
                let (mut order, mut l1, mut l2) = (Vec::new(), Vec::new(), Vec::new());
                for (i, &v) in list.iter().enumerate().filter(|(_, &v)| v1 >> v & 1 == 1) {
                    order.push(i);
                    l1.push(v);
                }
                for (i, &v) in list.iter().enumerate().filter(|(_, &v)| v1 >> v & 1 == 0) {
                    order.push(i);
                    l2.push(v);
                }
                (order, l1, l2)
            };
            let (order_a, a1, a2) = split(&s.a);
            let (order_b, b1, b2) = split(&s.b);
            let sorted = |o: &[usize]| o.windows(2).all(|w| w[0] < w[1]);
            let perm_in = (!sorted(&order_a)).then_some(order_a);
            let perm_out = (!sorted(&order_b)).then(|| {
                let mut inv = vec![0; order_b.len()];
                for (k, &j) in order_b.iter().enumerate() {
                    inv[j] = k;
                }
                inv
            });
            if perm_out.is_some() && self.shape == Shape::RightTree {
                continue;
            }
            let mut floor = 0;
            let mut extra = 0;
            if perm_in.is_some() {
                floor = floor.max(s.a.len());
                extra += 2;
            }
            if perm_out.is_some() {
                floor = floor.max(s.b.len());
                extra += 2;
            }
            if floor >= best.width {
                continue;
            }
            let es1 = bits64(s.es).filter(|&e| v1 >> self.ends[e].0 & 1 == 1).fold(0u64, |m, e| m | 1 << e);
            let first = State { vs: v1, es: es1, a: a1, b: b1 };
            let second = State { vs: v2, es: s.es & !es1, a: a2, b: b2 };
            let r1 = self.solve(&first);
            let r2 = self.solve(&second);
            let width = floor.max(r1.width).max(r2.width);
            Self::consider(best, width, 1 + r1.nodes + r2.nodes + extra, || Move::Tensor {
                first,
                second,
                perm_in,
                perm_out,
            });
        }
    }

    fn try_compositions(&mut self, s: &State, best: &mut Best) {
        let leaf_left = self.shape != Shape::Any;
        let (ma, mb) = (mask_of(&s.a), mask_of(&s.b));
        let es: Vec<usize> = bits64(s.es).collect();
        for pick in 0..1u64 << es.len() {
            let e1 = es.iter().enumerate().filter(|(i, _)| pick >> i & 1 == 1).fold(0u64, |m, (_, &e)| m | 1 << e);
            let e2 = s.es & !e1;
            let forced1 = self.ends_mask(e1) | ma;
            let forced2 = self.ends_mask(e2) | mb;
            let free = s.vs & !(forced1 | forced2);
            for to_left in submasks(free) {
                let v1 = forced1 | to_left;
                let v2 = forced2 | (free & !to_left);
                let cut_mask = v1 & v2;
                let cut = cut_mask.count_ones() as usize;
                if cut >= best.width || leaf_left && v1.count_ones() as usize >= best.width {
                    continue;
                }
                let cut_list: Vec<u8> = bits32(cut_mask).map(|v| v as u8).collect();
                let first = State { vs: v1, es: e1, a: s.a.clone(), b: cut_list.clone() };
                let second = State { vs: v2, es: e2, a: cut_list, b: s.b.clone() };
                if first.size() >= s.size() || second.size() >= s.size() {
                    continue;
                }
                let r1 = if leaf_left {
                    Best { width: v1.count_ones() as usize, nodes: 1, how: Move::Leaf }
                } else {
                    self.solve(&first)
                };
                if r1.width >= best.width {
                    continue;
                }
                let r2 = self.solve(&second);
                let width = cut.max(r1.width).max(r2.width);
                Self::consider(best, width, 1 + r1.nodes + r2.nodes, || Move::Compose(first, second));
            }
        }
    }

    fn cospan(&self, s: &State) -> Cospan {
        let vset: VertexSet = bits32(s.vs).map(|i| self.vids[i]).collect();
        let eset: EdgeSet = bits64(s.es).map(|i| self.eids[i]).collect();
        let apex = self.g.apex().subgraph(&vset, &eset).expect("state is a subgraph");
        let leg = |l: &[u8]| l.iter().map(|&v| self.vids[v as usize]).collect();
        Cospan::new(apex, leg(&s.a), leg(&s.b)).expect("legs inside the state")
    }

    fn build(&self, s: &State, leaf_only: bool) -> DecompTree<Cospan> {
        let how = if leaf_only { Move::Leaf } else { self.memo.get(s).map_or(Move::Leaf, |b| b.how.clone()) };
        match how {
            Move::Leaf => DecompTree::Leaf(self.cospan(s)),
            Move::Compose(first, second) => {
                DecompTree::compose(self.build(&first, self.shape != Shape::Any), self.build(&second, false))
            }
            Move::Tensor { first, second, perm_in, perm_out } => {
                let mut t = DecompTree::tensor(self.build(&first, false), self.build(&second, false));
                if let Some(p) = perm_out {
                    t = DecompTree::compose(t, DecompTree::Leaf(Cospan::permutation(&p).expect("a permutation")));
                }
                if let Some(p) = perm_in {
                    t = DecompTree::compose(DecompTree::Leaf(Cospan::permutation(&p).expect("a permutation")), t);
                }
                t
            }
        }
    }
}

fn better(a: &DecompTree<Cospan>, b: &DecompTree<Cospan>) -> bool {
    let key = |t: &DecompTree<Cospan>| (t.width_unchecked(), t.node_count());
    match key(a).cmp(&key(b)) {
        std::cmp::Ordering::Equal => a.canonical_string() < b.canonical_string(),
        o => o.is_lt(),
    }
}

/// Narrowest decomposition of `g` of the given shape found within `budget`
/// expanded states.
pub fn bounded_mwd_search(g: &Cospan, shape: Shape, budget: usize) -> Result<SearchResult> {
    bounded_mwd_search_seeded(g, shape, budget, &[])
}

/// As [`bounded_mwd_search`], also considering the given candidate terms,
/// which must evaluate to `g` and have the requested shape.
pub fn bounded_mwd_search_seeded(
    g: &Cospan,
    shape: Shape,
    budget: usize,
    seeds: &[DecompTree<Cospan>],
) -> Result<SearchResult> {
    let mut search = Search::new(g, shape, budget.max(1))?;
    let root = search.root();
    search.solve(&root);
    let mut term = search.build(&root, false);
    for seed in seeds {
        if !shape.admits(seed) {
            return Err(Error::Precondition("seed term has the wrong shape".into()));
        }
        if !cospan_iso_eq(&seed.evaluate()?, g) {
            return Err(Error::Precondition("seed term does not evaluate to the input".into()));
        }
        if better(seed, &term) {
            term = seed.clone();
        }
    }
    let width = term.width()?;
    if !cospan_iso_eq(&term.evaluate()?, g) {
        return Err(Error::Postcondition("search result does not evaluate to the input".into()));
    }
    if width > g.weight() || !shape.admits(&term) {
        return Err(Error::Postcondition(format!("search result of width {width} exceeds the leaf")));
    }
    Ok(SearchResult { term, width, bound_only: search.bound_only, states: search.memo.len() })
}
