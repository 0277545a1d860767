use crate::cospan::Cospan;
use crate::decomp::RecTreeDec;
use crate::error::{precondition, Result};
use crate::graph::{EdgeSet, SourcedGraph, VertexId, VertexSet};
use crate::term::DecompTree;

use super::{ascending, epi_to_dec_tree, expect_iso, postcondition, sourced_cospan};

/// A right-tree monoidal decomposition of `⟨X -> G <- ∅⟩` (sources listed in
/// ascending order) of width at most `2·wd(T)`.
pub fn t_to_mdec(t: &RecTreeDec, gamma: &SourcedGraph) -> Result<DecompTree<Cospan>> {
    t.validate(gamma).map_err(|v| precondition(format!("not a recursive tree decomposition: {v}")))?;
    let order = ascending(&gamma.sources);
    let d = t_to_mdec_ordered(t, &order)?;
    expect_iso(&d.evaluate()?, &sourced_cospan(&gamma.graph, &order)?, "t_to_mdec")?;
    let (got, bound) = (d.width()?, 2 * t.width());
    if got > bound || !d.is_right_tree() {
        return Err(postcondition(format!("t_to_mdec gave width {got}, bound {bound}")));
    }
    Ok(d)
}

fn t_to_mdec_ordered(t: &RecTreeDec, order: &[VertexId]) -> Result<DecompTree<Cospan>> {
    let RecTreeDec::Node { graph, bag, left, right } = t else {
        return Ok(DecompTree::leaf(Cospan::identity(0)));
    };
    let (g1, g2) = (left.graph(), right.graph());
    let (x1, x2) = (&g1.sources, &g2.sources);
    let p: Vec<VertexId> = x1.difference(x2).copied().collect();
    let q: Vec<VertexId> = x1.intersection(x2).copied().collect();
    let r: Vec<VertexId> = x2.difference(x1).copied().collect();

    let inner: EdgeSet = g1.graph.edge_ids().union(&g2.graph.edge_ids()).copied().collect();
    let own: EdgeSet = graph.graph.edge_ids().difference(&inner).copied().collect();
    let apex = graph.graph.subgraph(bag, &own)?;
    let right_leg: Vec<VertexId> = p.iter().chain(&q).chain(&r).copied().collect();
    let h = DecompTree::leaf(Cospan::new(apex, order.to_vec(), right_leg)?);

    let pq: Vec<VertexId> = p.iter().chain(&q).copied().collect();
    let qr: Vec<VertexId> = q.iter().chain(&r).copied().collect();
    let rest = match (&**left, &**right) {
        (RecTreeDec::Empty, RecTreeDec::Empty) => return Ok(h),
        (_, RecTreeDec::Empty) => t_to_mdec_ordered(left, &pq)?,
        (RecTreeDec::Empty, _) => t_to_mdec_ordered(right, &qr)?,
        _ => {
            // id_P ⊗ cp_Q ⊗ id_R
            let b = Cospan::identity(p.len()).tensor(&Cospan::copy(q.len())).tensor(&Cospan::identity(r.len()));
            let both = DecompTree::tensor(t_to_mdec_ordered(left, &pq)?, t_to_mdec_ordered(right, &qr)?);
            DecompTree::compose(DecompTree::leaf(b), both)
        }
    };
    Ok(DecompTree::compose(h, rest))
}

/// A recursive tree decomposition of `(G, im ∂)` from a right-tree monoidal
/// decomposition of `⟨X -> G <- ∅⟩`, of width at most `max{wd(d), |im ∂|}`.
pub fn m_to_tdec(d: &DecompTree<Cospan>) -> Result<(Cospan, RecTreeDec)> {
    d.typecheck()?;
    if !d.is_right_tree() {
        return Err(precondition("m_to_tdec needs a right-tree decomposition"));
    }
    if d.cod() != 0 {
        return Err(precondition("m_to_tdec needs an empty right boundary"));
    }
    let (g, t) = m_to_tdec_rec(d)?;
    let gamma = SourcedGraph { graph: g.apex().clone(), sources: g.left_image() };
    t.validate(&gamma).map_err(|v| postcondition(format!("m_to_tdec output is invalid: {v}")))?;
    let bound = d.width_unchecked().max(gamma.sources.len());
    if t.width() > bound {
        return Err(postcondition(format!("m_to_tdec gave width {}, bound {bound}", t.width())));
    }
    Ok((g, t))
}

fn m_to_tdec_rec(d: &DecompTree<Cospan>) -> Result<(Cospan, RecTreeDec)> {
    match d {
        DecompTree::Leaf(g) => {
            if g.apex().is_empty() {
                return Ok((g.clone(), RecTreeDec::Empty));
            }
            let gamma = SourcedGraph { graph: g.apex().clone(), sources: g.left_image() };
            let bag = g.apex().vertices().clone();
            Ok((g.clone(), RecTreeDec::node(gamma, RecTreeDec::Empty, bag, RecTreeDec::Empty)))
        }
        DecompTree::Tensor(l, r) => {
            let (c1, t1) = m_to_tdec_rec(l)?;
            let (c2, t2) = m_to_tdec_rec(r)?;
            let (g, colim) = c1.tensor_with_colimit(&c2);
            let t1 = epi_to_dec_tree(&colim.left.onto_image(), &t1)?;
            let t2 = epi_to_dec_tree(&colim.right.onto_image(), &t2)?;
            Ok((g.clone(), node_or_empty(&g, t1, g.left_image(), t2)))
        }
        DecompTree::Compose(l, _, r) => {
            let DecompTree::Leaf(h1) = &**l else {
                return Err(precondition("m_to_tdec needs a right-tree decomposition"));
            };
            let (c2, t2) = m_to_tdec_rec(r)?;
            let (g, colim) = h1.compose_with_colimit(&c2)?;
            let alpha1 = colim.left.onto_image();
            let v1 = alpha1.codomain.vertices().clone();
            let v2: VertexSet = colim.right.vmap.values().copied().collect();
            let bag: VertexSet = g.left_image().union(&v1.intersection(&v2).copied().collect()).copied().collect();
            let first = if alpha1.codomain.is_empty() {
                RecTreeDec::Empty
            } else {
                let g1 = SourcedGraph { graph: alpha1.codomain.clone(), sources: v1.intersection(&bag).copied().collect() };
                RecTreeDec::node(g1, RecTreeDec::Empty, v1, RecTreeDec::Empty)
            };
            let second = epi_to_dec_tree(&colim.right.onto_image(), &t2)?;
            Ok((g.clone(), node_or_empty(&g, first, bag, second)))
        }
    }
}

fn node_or_empty(g: &Cospan, left: RecTreeDec, bag: VertexSet, right: RecTreeDec) -> RecTreeDec {
    if g.apex().is_empty() {
        return RecTreeDec::Empty;
    }
    let gamma = SourcedGraph { graph: g.apex().clone(), sources: g.left_image() };
    RecTreeDec::node(gamma, left, bag, right)
}
