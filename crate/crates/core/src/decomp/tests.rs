use std::collections::BTreeMap;

use super::*;
use crate::graph::SourcedGraph;

fn set(vs: &[VertexId]) -> VertexSet {
    vs.iter().copied().collect()
}

fn k3() -> Graph {
    Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)])
}

/// Two triangles sharing vertex 2.
fn bowtie() -> Graph {
    Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
}

fn path_shape(n: u32) -> Graph {
    let es: Vec<(u32, u32)> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &es)
}

fn tree_dec(shape: Graph, bags: &[&[VertexId]]) -> TreeDec {
    TreeDec::new(shape, bags.iter().enumerate().map(|(i, b)| (i as VertexId, set(b))).collect())
}

fn star_branch(m: u32) -> BranchDec {
    // centre m, leaves 0..m carrying edges 0..m
    let es: Vec<(u32, u32)> = (0..m).map(|i| (m, i)).collect();
    BranchDec::new(Graph::from_edges(m + 1, &es), (0..m).map(|i| (i, i)).collect())
}

#[test]
fn bowtie_tree_dec() {
    let td = tree_dec(path_shape(2), &[&[0, 1, 2], &[2, 3, 4]]);
    assert!(td.is_valid(&bowtie()));
    assert_eq!(td.width(), 3);
}

#[test]
fn missing_edge_cover() {
    let td = tree_dec(path_shape(2), &[&[0, 1], &[1, 2]]);
    let v = td.validate(&k3()).unwrap_err();
    assert!(v.clause.starts_with("clause 2"), "{v}");
    assert!(matches!(td.checked_width(&k3()), Err(crate::Error::Precondition(_))));
}

#[test]
fn broken_connectivity() {
    let g = Graph::from_edges(3, &[(0, 1), (1, 2)]);
    let pd = PathDec::new(vec![set(&[0, 1]), set(&[1, 2]), set(&[0])]);
    assert!(pd.validate(&g).unwrap_err().clause.starts_with("clause 3"));
    let uncovered = PathDec::new(vec![set(&[0, 1])]);
    assert!(uncovered.validate(&g).unwrap_err().clause.starts_with("clause 1"));
}

#[test]
fn path_dec_width_three() {
    // a 2 x 3 grid: 0-1-2 over 3-4-5
    let g = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)]);
    let pd = PathDec::new(vec![set(&[0, 1, 3]), set(&[1, 3, 4]), set(&[1, 2, 4]), set(&[2, 4, 5])]);
    assert_eq!(pd.checked_width(&g).unwrap(), 3);
    let rec = path_to_recursive(&pd, &SourcedGraph::unsourced(g.clone())).unwrap();
    assert_eq!(rec.width(), 3);
}

#[test]
fn empty_widths() {
    assert_eq!(RecTreeDec::Empty.width(), 0);
    assert_eq!(RecPathDec::Empty.width(), 0);
    assert_eq!(RecBranchDec::Empty { graph: SourcedGraph::default() }.width(), 0);
    assert!(RecTreeDec::Empty.is_valid(&SourcedGraph::default()));
    assert!(!RecTreeDec::Empty.is_valid(&SourcedGraph::unsourced(Graph::discrete([0]))));
    let empty = Graph::new();
    assert_eq!(TreeDec::new(Graph::new(), BTreeMap::new()).checked_width(&empty).unwrap(), 0);
}

#[test]
fn k3_widths() {
    assert_eq!(TreeDec::trivial(&k3()).checked_width(&k3()).unwrap(), 3);
    let bd = star_branch(3);
    assert_eq!(bd.checked_width(&k3()).unwrap(), 2);
    for e in bd.shape.edge_ids() {
        assert_eq!(bd.edge_order(&k3(), e).unwrap(), 2);
    }
    assert!(bd.edge_order(&k3(), 9).is_err());
}

#[test]
fn p3_two_leaves() {
    let g = Graph::from_edges(3, &[(0, 1), (1, 2)]);
    let bd = BranchDec::new(path_shape(2), BTreeMap::from([(0, 0), (1, 1)]));
    assert_eq!(bd.edge_order(&g, 0).unwrap(), 1);
}

#[test]
fn pendant_order_on_a_path() {
    // P5 with a caterpillar shape: the middle edge separates {e0,e1} from {e2,e3}
    let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
    let shape = Graph::from_edges(6, &[(0, 4), (1, 4), (4, 5), (5, 2), (5, 3)]);
    let bd = BranchDec::new(shape, BTreeMap::from([(0, 0), (1, 1), (2, 2), (3, 3)]));
    assert_eq!(bd.edge_order(&g, 2).unwrap(), 1);
    // a pendant inner edge shares both ends with the rest
    assert_eq!(bd.checked_width(&g).unwrap(), 2);
}

#[test]
fn branch_dec_rejections() {
    let bd = star_branch(3);
    let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]);
    assert_eq!(bd.validate(&p3).unwrap_err().clause, "leaf map");
    let k4_star = star_branch(4);
    let g4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
    assert_eq!(k4_star.validate(&g4).unwrap_err().clause, "shape");
}

#[test]
fn single_bag_is_a_leaf_node() {
    let gamma = SourcedGraph::new(k3(), set(&[0])).unwrap();
    let rec = tree_to_recursive(&TreeDec::trivial(&k3()), &gamma, None).unwrap();
    assert_eq!(rec, RecTreeDec::node(gamma.clone(), RecTreeDec::Empty, set(&[0, 1, 2]), RecTreeDec::Empty));
    let pd = PathDec::new(vec![set(&[0, 1, 2])]);
    let rp = path_to_recursive(&pd, &gamma).unwrap();
    assert_eq!(rp, RecPathDec::cons(gamma, set(&[0, 1, 2]), RecPathDec::Empty));
}

#[test]
fn three_node_tree_dec() {
    // path a-b-c-d with bags {a,b} {b,c} {c,d}; root at the middle
    let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
    let td = tree_dec(Graph::from_edges(3, &[(1, 0), (1, 2)]), &[&[0, 1], &[1, 2], &[2, 3]]);
    let gamma = SourcedGraph::new(g.clone(), set(&[1])).unwrap();
    let rec = tree_to_recursive(&td, &gamma, Some(1)).unwrap();
    rec.validate(&gamma).unwrap();
    let RecTreeDec::Node { bag, left, right, .. } = &rec else { panic!() };
    assert_eq!(*bag, set(&[1, 2]));
    assert_eq!(left.label(), set(&[0, 1]));
    assert_eq!(left.graph().sources, set(&[1]));
    assert_eq!(right.label(), set(&[2, 3]));
    assert_eq!(right.graph().sources, set(&[2]));
    assert_eq!(rec.width(), 2);
    assert!(matches!(tree_to_recursive(&td, &SourcedGraph::new(g, set(&[0, 3])).unwrap(), None), Err(crate::Error::Precondition(_))));
}

#[test]
fn chain_of_siblings() {
    // star K1,3 with centre 0; four bags, root has three children
    let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
    let td = tree_dec(Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]), &[&[0], &[0, 1], &[0, 2], &[0, 3]]);
    let gamma = SourcedGraph::unsourced(g);
    let rec = tree_to_recursive(&td, &gamma, Some(0)).unwrap();
    rec.validate(&gamma).unwrap();
    assert_eq!(rec.width(), 2);
    let back = tree_from_recursive(&rec);
    back.validate(&gamma.graph).unwrap();
    assert_eq!(back.width(), 2);
}

#[test]
fn recursive_clause_diagnostics() {
    let g = Graph::from_edges(3, &[(0, 1), (1, 2)]);
    let gamma = SourcedGraph::unsourced(g.clone());
    let leaf = |vs: &[VertexId], es: &[EdgeId], xs: &[VertexId]| {
        let sg = SourcedGraph::new(g.subgraph(&set(vs), &es.iter().copied().collect()).unwrap(), set(xs)).unwrap();
        RecTreeDec::node(sg, RecTreeDec::Empty, set(vs), RecTreeDec::Empty)
    };
    let good = RecTreeDec::node(gamma.clone(), leaf(&[0, 1], &[0], &[1]), set(&[1]), leaf(&[1, 2], &[1], &[1]));
    good.validate(&gamma).unwrap();
    let bad_sources = RecTreeDec::node(gamma.clone(), leaf(&[0, 1], &[0], &[]), set(&[1]), leaf(&[1, 2], &[1], &[1]));
    assert!(bad_sources.validate(&gamma).unwrap_err().clause.starts_with("(iii)"));
    let shared = RecTreeDec::node(gamma.clone(), leaf(&[0, 1], &[0], &[]), set(&[]), leaf(&[1, 2], &[1], &[]));
    assert!(shared.validate(&gamma).unwrap_err().clause.starts_with("(iv)"));
    let dropped = RecTreeDec::node(gamma.clone(), leaf(&[0, 1], &[], &[1]), set(&[1]), leaf(&[1, 2], &[1], &[1]));
    assert!(dropped.validate(&gamma).unwrap_err().clause.starts_with("(vi)"));
    let sourced = SourcedGraph::new(g.clone(), set(&[0])).unwrap();
    let mut relabel = good.clone();
    if let RecTreeDec::Node { graph, .. } = &mut relabel {
        *graph = sourced.clone();
    }
    assert!(relabel.validate(&sourced).unwrap_err().clause.starts_with("(i)"));
}

#[test]
fn branch_round_trip_k3() {
    let gamma = SourcedGraph::unsourced(k3());
    let rec = branch_to_recursive(&star_branch(3), &gamma).unwrap();
    rec.validate(&gamma).unwrap();
    assert_eq!(rec.width(), 2);
    let back = branch_from_recursive(&rec);
    back.validate(&k3()).unwrap();
    assert!(back.width(&k3()).unwrap() <= rec.width());
}

#[test]
fn single_edge_branch() {
    let g = Graph::from_edges(2, &[(0, 1)]);
    let gamma = SourcedGraph::new(g.clone(), set(&[0])).unwrap();
    let bd = BranchDec::new(Graph::discrete([0]), BTreeMap::from([(0, 0)]));
    assert_eq!(bd.checked_width(&g).unwrap(), 0);
    let rec = branch_to_recursive(&bd, &gamma).unwrap();
    assert_eq!(rec, RecBranchDec::Leaf { graph: gamma.clone() });
    assert_eq!(rec.width(), 1);
    assert_eq!(branch_from_recursive(&rec), bd);
}

#[test]
fn boundary_global_examples() {
    let gamma = SourcedGraph::new(k3(), set(&[0])).unwrap();
    let rec = branch_to_recursive(&star_branch(3), &gamma).unwrap();
    assert_eq!(boundary_global(&rec, &[]).unwrap(), set(&[0]));
    for p in rec.subtree_paths() {
        let sub = rec.subtree(&p).unwrap();
        assert_eq!(boundary_global(&rec, &p).unwrap(), sub.graph().sources, "{p:?}");
        if let RecBranchDec::Leaf { graph } = sub {
            assert_eq!(graph.sources, *graph.vertices(), "a K3 leaf shares both ends");
        }
    }
    assert!(boundary_global(&rec, &[0, 0, 0, 0]).is_err());
}

#[test]
fn json_and_dot() {
    let td = tree_dec(path_shape(2), &[&[0, 1, 2], &[2, 3, 4]]);
    let s = serde_json::to_string(&td).unwrap();
    assert_eq!(serde_json::from_str::<TreeDec>(&s).unwrap(), td);
    assert!(td.to_dot().contains("t0 -- t1"));
    let gamma = SourcedGraph::unsourced(k3());
    let rec = branch_to_recursive(&star_branch(3), &gamma).unwrap();
    let s = serde_json::to_string(&rec).unwrap();
    assert!(s.starts_with(r#"{"node":"node""#), "{s}");
    assert_eq!(serde_json::from_str::<RecBranchDec>(&s).unwrap(), rec);
    assert!(rec.to_dot().starts_with("digraph"));
    let rt = tree_to_recursive(&TreeDec::trivial(&k3()), &gamma, None).unwrap();
    assert_eq!(serde_json::from_str::<RecTreeDec>(&serde_json::to_string(&rt).unwrap()).unwrap(), rt);
}

// ---- exhaustive checks on small graphs ----

fn small_graphs() -> Vec<Graph> {
    let pairs: Vec<(u32, u32)> = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let mut out = Vec::new();
    for n in 1..=4u32 {
        let avail: Vec<(u32, u32)> = pairs.iter().copied().filter(|&(a, b)| a < n && b < n).collect();
        for mask in 0u32..1 << avail.len() {
            // every third 4-vertex graph keeps the run short
            if n == 4 && mask % 3 != 0 {
                continue;
            }
            let es: Vec<(u32, u32)> = (0..avail.len()).filter(|i| mask >> i & 1 == 1).map(|i| avail[i]).collect();
            out.push(Graph::from_edges(n, &es));
        }
    }
    out
}

fn subsets(n: u32) -> Vec<VertexSet> {
    (0u32..1 << n).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

fn oracle_tree_valid(td: &TreeDec, g: &Graph) -> bool {
    let nodes: Vec<VertexId> = td.shape.vertices().iter().copied().collect();
    let cover = nodes.iter().flat_map(|n| td.bags[n].iter().copied()).collect::<VertexSet>() == *g.vertices();
    let edges = g.edges().all(|(_, ends)| nodes.iter().any(|n| ends.within(&td.bags[n])));
    let glue = nodes.iter().all(|&i| {
        nodes.iter().all(|&k| {
            let path = td.shape.tree_path(i, k).unwrap();
            let both: VertexSet = td.bags[&i].intersection(&td.bags[&k]).copied().collect();
            path.iter().all(|j| both.is_subset(&td.bags[j]))
        })
    });
    cover && edges && glue
}

fn oracle_path_valid(pd: &PathDec, g: &Graph) -> bool {
    let r = pd.bags.len();
    let cover = pd.bags.iter().flatten().copied().collect::<VertexSet>() == *g.vertices();
    let edges = g.edges().all(|(_, ends)| pd.bags.iter().any(|b| ends.within(b)));
    let glue = (0..r).all(|i| {
        (i..r).all(|k| {
            (i..=k).all(|j| pd.bags[i].intersection(&pd.bags[k]).all(|v| pd.bags[j].contains(v)))
        })
    });
    cover && edges && glue
}

fn shapes() -> Vec<Graph> {
    vec![Graph::discrete([0]), path_shape(2), path_shape(3)]
}

#[test]
fn tree_validator_and_round_trip_exhaustive() {
    for g in small_graphs() {
        let n = g.num_vertices() as u32;
        let subs = subsets(n);
        for shape in shapes() {
            let k = shape.num_vertices();
            let total = subs.len().pow(k as u32);
            for code in 0..total {
                let mut c = code;
                let mut bags = BTreeMap::new();
                for i in 0..k {
                    bags.insert(i as VertexId, subs[c % subs.len()].clone());
                    c /= subs.len();
                }
                let td = TreeDec::new(shape.clone(), bags);
                let valid = td.is_valid(&g);
                assert_eq!(valid, oracle_tree_valid(&td, &g), "{td:?} on {g}");
                if !valid {
                    continue;
                }
                // sources: the whole first bag
                let gamma = SourcedGraph::new(g.clone(), td.bags[&0].clone()).unwrap();
                let rec = tree_to_recursive(&td, &gamma, Some(0)).unwrap();
                rec.validate(&gamma).unwrap_or_else(|v| panic!("{v} for {td:?} on {g}"));
                assert_eq!(rec.width(), td.width());
                let back = tree_from_recursive(&rec);
                back.validate(&g).unwrap();
                assert_eq!(back.width(), rec.width());
                assert!(gamma.sources.is_subset(&rec.label()));
            }
        }
    }
}

#[test]
fn path_validator_and_round_trip_exhaustive() {
    for g in small_graphs() {
        let n = g.num_vertices() as u32;
        let subs = subsets(n);
        for len in 1..=3u32 {
            for code in 0..subs.len().pow(len) {
                let mut c = code;
                let bags: Vec<VertexSet> = (0..len)
                    .map(|_| {
                        let b = subs[c % subs.len()].clone();
                        c /= subs.len();
                        b
                    })
                    .collect();
                let pd = PathDec::new(bags);
                let valid = pd.is_valid(&g);
                assert_eq!(valid, oracle_path_valid(&pd, &g), "{pd:?} on {g}");
                if !valid {
                    continue;
                }
                let gamma = SourcedGraph::new(g.clone(), pd.bags[0].clone()).unwrap();
                let rec = path_to_recursive(&pd, &gamma).unwrap();
                rec.validate(&gamma).unwrap_or_else(|v| panic!("{v} for {pd:?} on {g}"));
                assert_eq!(rec.width(), pd.width());
                let back = path_from_recursive(&rec);
                back.validate(&g).unwrap();
                assert_eq!(back.width(), rec.width());
            }
        }
    }
}

fn permutations(items: &[u32]) -> Vec<Vec<u32>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Subcubic shapes with `m` leaves, leaves numbered `0..m`.
fn branch_shapes(m: u32) -> Vec<Graph> {
    match m {
        1 => vec![Graph::discrete([0])],
        2 => vec![Graph::from_edges(2, &[(0, 1)]), Graph::from_edges(3, &[(0, 2), (2, 1)])],
        3 => vec![Graph::from_edges(4, &[(3, 0), (3, 1), (3, 2)]), Graph::from_edges(5, &[(3, 0), (3, 1), (3, 4), (4, 2)])],
        4 => vec![Graph::from_edges(6, &[(4, 0), (4, 1), (4, 5), (5, 2), (5, 3)])],
        5 => vec![Graph::from_edges(8, &[(5, 0), (5, 1), (5, 6), (6, 2), (6, 7), (7, 3), (7, 4)])],
        _ => vec![],
    }
}

#[test]
fn branch_conversions_exhaustive() {
    let graphs = [
        k3(),
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]),
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]),
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]),
        Graph::from_edges(4, &[(0, 1), (1, 2)]),
        Graph::from_edges(3, &[(0, 1), (0, 1), (1, 1), (1, 2)]),
        Graph::from_edges(2, &[(0, 1)]),
    ];
    for g in graphs {
        let m = g.num_edges() as u32;
        let vs: Vec<VertexId> = g.vertices().iter().copied().collect();
        let source_choices = [VertexSet::new(), set(&vs[..1]), set(&vs[vs.len() - 2..])];
        for shape in branch_shapes(m) {
            for perm in permutations(&(0..m).collect::<Vec<_>>()) {
                let bd = BranchDec::new(shape.clone(), (0..m).map(|i| (i, perm[i as usize])).collect());
                bd.validate(&g).unwrap();
                let w = bd.width(&g).unwrap();
                for xs in &source_choices {
                    let gamma = SourcedGraph::new(g.clone(), xs.clone()).unwrap();
                    let rec = branch_to_recursive(&bd, &gamma).unwrap();
                    rec.validate(&gamma).unwrap_or_else(|v| panic!("{v}"));
                    assert!(rec.width() <= w + xs.len(), "{} > {} + {}", rec.width(), w, xs.len());
                    let back = branch_from_recursive(&rec);
                    back.validate(&g).unwrap();
                    assert!(back.width(&g).unwrap() <= rec.width());
                    for p in rec.subtree_paths() {
                        assert_eq!(boundary_global(&rec, &p).unwrap(), rec.subtree(&p).unwrap().graph().sources);
                    }
                }
            }
        }
    }
}

#[test]
fn edgeless_branch() {
    let g = Graph::discrete([0, 1]);
    let gamma = SourcedGraph::new(g.clone(), set(&[1])).unwrap();
    let bd = BranchDec::new(Graph::new(), BTreeMap::new());
    assert_eq!(bd.checked_width(&g).unwrap(), 0);
    let rec = branch_to_recursive(&bd, &gamma).unwrap();
    assert_eq!(rec, RecBranchDec::Empty { graph: gamma });
    assert_eq!(rec.width(), 0);
    assert_eq!(branch_from_recursive(&rec), bd);
}
