//! Mechanical check of the three width correspondences on one graph.
//!
//! For each of tree, path and branch width: translate an optimal graph
//! decomposition into a term, search for a narrower term of the matching
//! shape seeded with it, then translate the best term back and compare every
//! width against the exact oracle value.

use serde::Serialize;
use serde_json::Value;

use super::{b_to_mdec_term, m_to_bdec, m_to_pdec, m_to_tdec, p_to_mdec, t_to_mdec, GlueMap};
use crate::cospan::Cospan;
use crate::decomp::branch_to_recursive;
use crate::error::Result;
use crate::graph::{Graph, SourcedGraph};
use crate::oracle::{exact_branchwidth, exact_widths, optimal_rec_path_dec, optimal_rec_tree_dec, Widths};
use crate::term::{bounded_mwd_search_seeded, DecompTree, SearchResult, Shape};

pub const DEFAULT_SEARCH_BUDGET: usize = 50_000;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub claim: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SandwichReport {
    pub theorem: String,
    /// Bounds on the monoidal width implied by the exact graph width.
    pub lower: usize,
    pub upper: usize,
    /// Width of the term translated from an optimal graph decomposition.
    pub translated: Option<usize>,
    /// Width of the best term found, translated terms included.
    pub searched: Option<usize>,
    /// Width of the graph decomposition recovered from the best term.
    pub certified: Option<usize>,
    pub bound_only: bool,
    pub checks: Vec<Check>,
    pub errors: Vec<String>,
    pub pass: bool,
    pub witness_term: Option<Value>,
    pub witness_decomposition: Option<Value>,
}

impl SandwichReport {
    fn new(theorem: &str, lower: usize, upper: usize) -> Self {
        SandwichReport {
            theorem: theorem.into(),
            lower,
            upper,
            translated: None,
            searched: None,
            certified: None,
            bound_only: false,
            checks: Vec::new(),
            errors: Vec::new(),
            pass: false,
            witness_term: None,
            witness_decomposition: None,
        }
    }

    fn check(&mut self, claim: String, holds: bool) {
        self.checks.push(Check { claim, holds });
    }

    fn finish(mut self, outcome: Result<()>) -> Self {
        if let Err(e) = outcome {
            self.errors.push(e.to_string());
        }
        self.pass = self.errors.is_empty() && self.checks.iter().all(|c| c.holds);
        self
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self.checks.iter().filter(|c| !c.holds).map(|c| c.claim.clone()).collect();
        out.extend(self.errors.iter().cloned());
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub graph: Graph,
    pub widths: Widths,
    pub tree: SandwichReport,
    pub path: SandwichReport,
    pub branch: SandwichReport,
    pub pass: bool,
}

fn json<T: Serialize>(x: &T) -> Option<Value> {
    serde_json::to_value(x).ok()
}

fn closed(g: &Graph) -> Cospan {
    Cospan::new(g.clone(), Vec::new(), Vec::new()).expect("no legs")
}

fn search(g: &Graph, shape: Shape, budget: usize, seed: &DecompTree<Cospan>) -> Result<SearchResult> {
    bounded_mwd_search_seeded(&closed(g), shape, budget, std::slice::from_ref(seed))
}

fn tree_sandwich(g: &Graph, tw: usize, budget: usize) -> SandwichReport {
    let mut r = SandwichReport::new("tree", tw, 2 * tw);
    let outcome = (|| {
        let gamma = SourcedGraph::unsourced(g.clone());
        let d = t_to_mdec(&optimal_rec_tree_dec(&gamma)?, &gamma)?;
        let w = d.width()?;
        r.translated = Some(w);
        r.check(format!("tw {tw} <= t_to_mdec width {w} <= 2*tw"), tw <= w && w <= 2 * tw);
        let best = search(g, Shape::RightTree, budget, &d)?;
        r.searched = Some(best.width);
        r.bound_only = best.bound_only;
        r.witness_term = json(&best.term);
        let (_, t) = m_to_tdec(&best.term)?;
        let c = t.width();
        r.certified = Some(c);
        r.witness_decomposition = json(&t);
        r.check(format!("tw {tw} <= m_to_tdec width {c} <= searched {}", best.width), tw <= c && c <= best.width);
        Ok(())
    })();
    r.finish(outcome)
}

fn path_sandwich(g: &Graph, pw: usize, budget: usize) -> SandwichReport {
    let mut r = SandwichReport::new("path", pw, pw);
    let outcome = (|| {
        let gamma = SourcedGraph::unsourced(g.clone());
        let d = p_to_mdec(&optimal_rec_path_dec(&gamma)?, &gamma)?;
        let w = d.width()?;
        r.translated = Some(w);
        r.check(format!("p_to_mdec width {w} = pw {pw}"), w == pw);
        let best = search(g, Shape::Path, budget, &d)?;
        r.searched = Some(best.width);
        r.bound_only = best.bound_only;
        r.witness_term = json(&best.term);
        r.check(format!("searched path width {} = pw {pw}", best.width), best.width == pw);
        let (_, t) = m_to_pdec(&best.term)?;
        let c = t.width();
        r.certified = Some(c);
        r.witness_decomposition = json(&t);
        r.check(format!("pw {pw} <= m_to_pdec width {c} <= searched {}", best.width), pw <= c && c <= best.width);
        Ok(())
    })();
    r.finish(outcome)
}

fn branch_sandwich(g: &Graph, bw: usize, budget: usize) -> SandwichReport {
    let mut r = SandwichReport::new("branch", bw.div_ceil(2), bw + 1);
    let outcome = (|| {
        let gamma = SourcedGraph::unsourced(g.clone());
        let (_, bd) = exact_branchwidth(g)?;
        let d = b_to_mdec_term(&branch_to_recursive(&bd, &gamma)?, &gamma)?;
        let w = d.width()?;
        r.translated = Some(w);
        r.check(format!("b_to_mdec width {w} <= bw+1 = {}", bw + 1), w <= bw + 1);
        let best = search(g, Shape::Any, budget, &d)?;
        r.searched = Some(best.width);
        r.bound_only = best.bound_only;
        r.witness_term = json(&best.term);
        r.check(format!("bw {bw} <= 2*searched {}", best.width), bw <= 2 * best.width);
        let phi = GlueMap::identity(&best.term.evaluate()?);
        let (_, t) = m_to_bdec(&best.term, &phi)?;
        let c = t.width();
        r.certified = Some(c);
        r.witness_decomposition = json(&t);
        r.check(
            format!("bw {bw} <= m_to_bdec width {c} <= 2*searched {}", best.width),
            bw <= c && c <= 2 * best.width,
        );
        Ok(())
    })();
    r.finish(outcome)
}

pub fn check_theorems(g: &Graph) -> Result<TheoremReport> {
    check_theorems_with_budget(g, DEFAULT_SEARCH_BUDGET)
}

/// Runs the three sandwiches; only an oracle refusing the graph is an error,
/// every other failure lands in the report.
pub fn check_theorems_with_budget(g: &Graph, budget: usize) -> Result<TheoremReport> {
    let widths = exact_widths(g)?;
    let (tree, (path, branch)) = rayon::join(
        || tree_sandwich(g, widths.tw, budget),
        || rayon::join(|| path_sandwich(g, widths.pw, budget), || branch_sandwich(g, widths.bw, budget)),
    );
    let pass = tree.pass && path.pass && branch.pass;
    Ok(TheoremReport { graph: g.clone(), widths, tree, path, branch, pass })
}
