use crate::cospan::Cospan;
use crate::decomp::RecPathDec;
use crate::error::{precondition, Result};
use crate::graph::{SourcedGraph, VertexId};
use crate::term::DecompTree;

use super::{ascending, epi_to_dec_path, expect_iso, postcondition, sourced_cospan};

/// A composition-only decomposition of `⟨X -> G <- ∅⟩` whose width is exactly `wd(T)`.
pub fn p_to_mdec(t: &RecPathDec, gamma: &SourcedGraph) -> Result<DecompTree<Cospan>> {
    t.validate(gamma).map_err(|v| precondition(format!("not a recursive path decomposition: {v}")))?;
    let order = ascending(&gamma.sources);
    let d = p_to_mdec_ordered(t, &order)?;
    expect_iso(&d.evaluate()?, &sourced_cospan(&gamma.graph, &order)?, "p_to_mdec")?;
    let got = d.width()?;
    if got != t.width() || !d.is_path() {
        return Err(postcondition(format!("p_to_mdec gave width {got}, expected {}", t.width())));
    }
    Ok(d)
}

fn p_to_mdec_ordered(t: &RecPathDec, order: &[VertexId]) -> Result<DecompTree<Cospan>> {
    let RecPathDec::Cons { graph, bag, tail } = t else {
        return Ok(DecompTree::leaf(Cospan::identity(0)));
    };
    let next = tail.graph();
    let own = graph.graph.edge_ids().difference(&next.graph.edge_ids()).copied().collect();
    let apex = graph.graph.subgraph(bag, &own)?;
    let handoff = ascending(&next.sources);
    let leaf = DecompTree::leaf(Cospan::new(apex, order.to_vec(), handoff.clone())?);
    match &**tail {
        RecPathDec::Empty => Ok(leaf),
        _ => Ok(DecompTree::compose(leaf, p_to_mdec_ordered(tail, &handoff)?)),
    }
}

/// A recursive path decomposition of `(G, im ∂)` from a composition-only
/// decomposition of `⟨X -> G <- ∅⟩`, of width at most `wd(d)`.
pub fn m_to_pdec(d: &DecompTree<Cospan>) -> Result<(Cospan, RecPathDec)> {
    d.typecheck()?;
    let atoms = d.path_atoms().ok_or_else(|| precondition("m_to_pdec needs a composition-only decomposition"))?;
    if d.cod() != 0 {
        return Err(precondition("m_to_pdec needs an empty right boundary"));
    }
    let (g, t) = m_to_pdec_atoms(&atoms)?;
    let gamma = SourcedGraph { graph: g.apex().clone(), sources: g.left_image() };
    t.validate(&gamma).map_err(|v| postcondition(format!("m_to_pdec output is invalid: {v}")))?;
    if t.width() > d.width_unchecked() {
        return Err(postcondition(format!("m_to_pdec gave width {}, bound {}", t.width(), d.width_unchecked())));
    }
    Ok((g, t))
}

/// Reads the atoms as a right comb `a1 ; (a2 ; (…))`.
fn m_to_pdec_atoms(atoms: &[&Cospan]) -> Result<(Cospan, RecPathDec)> {
    let (first, rest) = atoms.split_first().expect("a term has at least one leaf");
    let gamma_of = |g: &Cospan| SourcedGraph { graph: g.apex().clone(), sources: g.left_image() };
    if rest.is_empty() {
        let g = (*first).clone();
        if g.apex().is_empty() {
            return Ok((g, RecPathDec::Empty));
        }
        let bag = g.apex().vertices().clone();
        return Ok((g.clone(), RecPathDec::cons(gamma_of(&g), bag, RecPathDec::Empty)));
    }
    let (h, tail) = m_to_pdec_atoms(rest)?;
    let (g, colim) = first.compose_with_colimit(&h)?;
    if g.apex().is_empty() {
        return Ok((g, RecPathDec::Empty));
    }
    let bag = colim.left.vmap.values().copied().collect();
    let tail = epi_to_dec_path(&colim.right.onto_image(), &tail)?;
    Ok((g.clone(), RecPathDec::cons(gamma_of(&g), bag, tail)))
}
