use crate::cospan::Cospan;
use crate::decomp::RecBranchDec;
use crate::error::{precondition, Result};
use crate::graph::{Colimit, EdgeSet, Graph, GraphMorphism, SourcedGraph, VertexId, VertexSet};
use crate::term::DecompTree;

use super::{ascending, copy_mdec, expect_iso, image_sourced, postcondition, sourced_cospan, GlueMap};

/// A monoidal decomposition of `⟨X -> G <- ∅⟩`, sources ascending, checked
/// against the bound `wd(T) + 1`.
pub fn b_to_mdec(t: &RecBranchDec, gamma: &SourcedGraph) -> Result<DecompTree<Cospan>> {
    let d = b_to_mdec_term(t, gamma)?;
    let (got, bound) = (d.width()?, t.width() + 1);
    if got > bound {
        return Err(postcondition(format!("b_to_mdec gave width {got}, bound {bound}")));
    }
    Ok(d)
}

/// The construction behind [`b_to_mdec`], checked for correctness but not
/// for width. Its width is at most `max{wd(T) + 1, 2}`: a leaf whose only
/// edge joins two vertices always weighs 2.
pub fn b_to_mdec_term(t: &RecBranchDec, gamma: &SourcedGraph) -> Result<DecompTree<Cospan>> {
    t.validate(gamma).map_err(|v| precondition(format!("not a recursive branch decomposition: {v}")))?;
    let order = ascending(&gamma.sources);
    let d = b_to_mdec_ordered(t, &order)?;
    expect_iso(&d.evaluate()?, &sourced_cospan(&gamma.graph, &order)?, "b_to_mdec")?;
    Ok(d)
}

fn vertex_atom(v: VertexId, source: bool) -> DecompTree<Cospan> {
    let left = if source { vec![v] } else { Vec::new() };
    DecompTree::leaf(Cospan::new(Graph::discrete([v]), left, Vec::new()).expect("v is in the apex"))
}

/// Wires listed in `order` rearranged into `target`; `None` when nothing moves.
fn reorder(order: &[VertexId], target: &[VertexId]) -> Option<DecompTree<Cospan>> {
    if order == target {
        return None;
    }
    let perm: Vec<usize> = target.iter().map(|v| order.iter().position(|w| w == v).expect("same wires")).collect();
    Some(DecompTree::leaf(Cospan::permutation(&perm).expect("a rearrangement")))
}

fn after_reorder(order: &[VertexId], target: &[VertexId], d: DecompTree<Cospan>) -> DecompTree<Cospan> {
    match reorder(order, target) {
        Some(p) => DecompTree::compose(p, d),
        None => d,
    }
}

fn b_to_mdec_ordered(t: &RecBranchDec, order: &[VertexId]) -> Result<DecompTree<Cospan>> {
    match t {
        RecBranchDec::Empty { graph } => {
            let vs = graph.graph.vertices();
            if vs.is_empty() {
                return Ok(DecompTree::leaf(Cospan::identity(0)));
            }
            let parts = order
                .iter()
                .map(|&v| vertex_atom(v, true))
                .chain(vs.iter().filter(|v| !graph.sources.contains(v)).map(|&v| vertex_atom(v, false)))
                .collect();
            Ok(DecompTree::tensor_all(parts))
        }
        RecBranchDec::Leaf { graph } => {
            let (e, ends) = graph.graph.edges().next().expect("a leaf carries one edge");
            let on_edge: VertexSet = ends.vertices().collect();
            let mut apex = Graph::discrete(on_edge.iter().copied());
            apex.add_edge(e, ends.first(), ends.second())?;
            let edge_sources: Vec<VertexId> = order.iter().copied().filter(|v| on_edge.contains(v)).collect();
            let other_sources: Vec<VertexId> = order.iter().copied().filter(|v| !on_edge.contains(v)).collect();
            let mut parts = vec![DecompTree::leaf(Cospan::new(apex, edge_sources.clone(), Vec::new())?)];
            parts.extend(other_sources.iter().map(|&v| vertex_atom(v, true)));
            let sources = &graph.sources;
            parts.extend(
                graph.graph.vertices().iter().filter(|v| !on_edge.contains(v) && !sources.contains(v)).map(|&v| vertex_atom(v, false)),
            );
            let target: Vec<VertexId> = edge_sources.into_iter().chain(other_sources).collect();
            Ok(after_reorder(order, &target, DecompTree::tensor_all(parts)))
        }
        RecBranchDec::Node { graph, left, right } => {
            let (v1, v2) = (left.graph().vertices(), right.graph().vertices());
            let x = &graph.sources;
            let q: Vec<VertexId> = v1.intersection(v2).copied().collect();
            let p: Vec<VertexId> = x.iter().copied().filter(|v| v1.contains(v) && !v2.contains(v)).collect();
            let qx: Vec<VertexId> = q.iter().copied().filter(|v| x.contains(v)).collect();
            let r: Vec<VertexId> = x.iter().copied().filter(|v| v2.contains(v) && !v1.contains(v)).collect();

            let pq: Vec<VertexId> = p.iter().chain(&q).copied().collect();
            let qr: Vec<VertexId> = q.iter().chain(&r).copied().collect();
            // P ⊗ Qx -> P ⊗ Q: the shared vertices that are not sources appear here
            let opened = Cospan::new(Graph::discrete(pq.iter().copied()), p.iter().chain(&qx).copied().collect(), pq.clone())?;
            let first = copy_mdec(&b_to_mdec_ordered(left, &pq)?, p.len(), &vec![1; q.len()], 0)?;
            let first = DecompTree::compose(DecompTree::leaf(opened), first);
            let first = if r.is_empty() {
                first
            } else {
                DecompTree::tensor(first, DecompTree::leaf(Cospan::identity(r.len())))
            };
            let body = DecompTree::compose(first, b_to_mdec_ordered(right, &qr)?);
            let target: Vec<VertexId> = p.iter().chain(&qx).chain(&r).copied().collect();
            Ok(after_reorder(order, &target, body))
        }
    }
}

/// A decomposition tree with every node evaluated, plus the colimit that
/// built each inner node.
enum Evaluated {
    Leaf(Cospan),
    Node(Cospan, Colimit, Box<Evaluated>, Box<Evaluated>),
}

impl Evaluated {
    fn build(d: &DecompTree<Cospan>) -> Result<Self> {
        Ok(match d {
            DecompTree::Leaf(c) => Evaluated::Leaf(c.clone()),
            DecompTree::Tensor(l, r) => {
                let (l, r) = (Evaluated::build(l)?, Evaluated::build(r)?);
                let (c, colim) = l.value().tensor_with_colimit(r.value());
                Evaluated::Node(c, colim, Box::new(l), Box::new(r))
            }
            DecompTree::Compose(l, _, r) => {
                let (l, r) = (Evaluated::build(l)?, Evaluated::build(r)?);
                let (c, colim) = l.value().compose_with_colimit(r.value())?;
                Evaluated::Node(c, colim, Box::new(l), Box::new(r))
            }
        })
    }

    fn value(&self) -> &Cospan {
        match self {
            Evaluated::Leaf(c) | Evaluated::Node(c, ..) => c,
        }
    }
}

/// A recursive branch decomposition of `(φ(H), φ(im ∂A ∪ im ∂B))` from a
/// decomposition of `h = ⟨A -> H <- B⟩`, of width at most
/// `2·max{wd(d), |A|, |B|}`.
pub fn m_to_bdec(d: &DecompTree<Cospan>, phi: &GlueMap) -> Result<(SourcedGraph, RecBranchDec)> {
    d.typecheck()?;
    let ev = Evaluated::build(d)?;
    let h = ev.value();
    // re-check the glueing property against this particular h
    let phi = GlueMap::new(phi.map.clone(), h)?;
    let phi = phi.morphism(h.apex())?;
    let t = m_to_bdec_rec(&ev, &phi)?;
    let gamma = t.graph().clone();
    t.validate(&gamma).map_err(|v| postcondition(format!("m_to_bdec output is invalid: {v}")))?;
    let bound = 2 * d.width_unchecked().max(h.dom()).max(h.cod());
    if t.width() > bound {
        return Err(postcondition(format!("m_to_bdec gave width {}, bound {bound}", t.width())));
    }
    Ok((gamma, t))
}

fn boundary_image(c: &Cospan, phi: &GraphMorphism) -> Result<VertexSet> {
    phi.map_vertices(&c.left_image().union(&c.right_image()).copied().collect::<VertexSet>())
}

fn m_to_bdec_rec(ev: &Evaluated, phi: &GraphMorphism) -> Result<RecBranchDec> {
    let c = ev.value();
    let mut gamma = image_sourced(phi, &SourcedGraph::unsourced(c.apex().clone()))?;
    gamma.sources = boundary_image(c, phi)?;
    match ev {
        Evaluated::Leaf(_) => Ok(comb(gamma)),
        Evaluated::Node(_, colim, l, r) => {
            let left = m_to_bdec_rec(l, &colim.left.then(phi)?)?;
            let right = m_to_bdec_rec(r, &colim.right.then(phi)?)?;
            Ok(RecBranchDec::node(left, gamma, right))
        }
    }
}

/// Any branch decomposition will do inside a leaf; peel edges off the top in
/// descending order so the tree leans left.
fn comb(gamma: SourcedGraph) -> RecBranchDec {
    let edges = gamma.graph.edge_ids();
    match edges.len() {
        0 => return RecBranchDec::Empty { graph: gamma },
        1 => return RecBranchDec::Leaf { graph: gamma },
        _ => {}
    }
    let last = *edges.iter().next_back().expect("several edges");
    let e1: EdgeSet = edges.iter().copied().filter(|&e| e != last).collect();
    let (g1, g2) = crate::decomp::split_sourced(&gamma, e1, EdgeSet::from([last]));
    RecBranchDec::node(comb(g1), gamma, comb(g2))
}
