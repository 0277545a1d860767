//! Cospans `X -> G <- Y` of graphs with discrete, ordered boundaries.
//!
//! A boundary of size `n` is the list of positions `0..n`; each leg is stored
//! as the list of apex vertices the positions land on. Composition glues apexes
//! by pushout, tensor takes the coproduct. Equality is always up to
//! [`cospan_iso_eq`].

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{type_error, Error, Result};
use crate::graph::{
    find_isomorphism, graph_coproduct, graph_pushout, Colimit, FiniteMap, Graph, VertexId, VertexSet,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CospanJson", into = "CospanJson")]
pub struct Cospan {
    apex: Graph,
    left: Vec<VertexId>,
    right: Vec<VertexId>,
}

impl Cospan {
    pub fn new(apex: Graph, left: Vec<VertexId>, right: Vec<VertexId>) -> Result<Self> {
        if let Some(&v) = left.iter().chain(&right).find(|v| !apex.has_vertex(**v)) {
            return Err(Error::UnknownVertex(v));
        }
        Ok(Cospan { apex, left, right })
    }

    /// `⟨order -> G <- ∅⟩`, the cospan of a graph whose sources are listed in `order`.
    pub fn sourced(apex: Graph, order: &[VertexId]) -> Result<Self> {
        Cospan::new(apex, order.to_vec(), Vec::new())
    }

    pub fn apex(&self) -> &Graph {
        &self.apex
    }

    pub fn left_leg(&self) -> &[VertexId] {
        &self.left
    }

    pub fn right_leg(&self) -> &[VertexId] {
        &self.right
    }

    pub fn dom(&self) -> usize {
        self.left.len()
    }

    pub fn cod(&self) -> usize {
        self.right.len()
    }

    pub fn left_image(&self) -> VertexSet {
        self.left.iter().copied().collect()
    }

    pub fn right_image(&self) -> VertexSet {
        self.right.iter().copied().collect()
    }

    /// Number of apex vertices.
    pub fn weight(&self) -> usize {
        self.apex.num_vertices()
    }

    pub fn left_map(&self) -> FiniteMap {
        FiniteMap::from_positions(&self.left, self.apex.vertices().clone()).expect("legs land in the apex")
    }

    pub fn right_map(&self) -> FiniteMap {
        FiniteMap::from_positions(&self.right, self.apex.vertices().clone()).expect("legs land in the apex")
    }

    /// Composite together with the pushout it was built from.
    pub fn compose_with_colimit(&self, next: &Cospan) -> Result<(Cospan, Colimit)> {
        if self.cod() != next.dom() {
            return Err(type_error(format!("cannot compose: codomain {} vs domain {}", self.cod(), next.dom())));
        }
        let p = graph_pushout(&self.apex, &next.apex, &self.right_map(), &next.left_map())?;
        let left = self.left.iter().map(|v| p.left.vmap[v]).collect();
        let right = next.right.iter().map(|v| p.right.vmap[v]).collect();
        Ok((Cospan { apex: p.graph.clone(), left, right }, p))
    }

    pub fn compose(&self, next: &Cospan) -> Result<Cospan> {
        Ok(self.compose_with_colimit(next)?.0)
    }

    pub fn tensor_with_colimit(&self, other: &Cospan) -> (Cospan, Colimit) {
        let c = graph_coproduct(&self.apex, &other.apex);
        let left = self.left.iter().map(|v| c.left.vmap[v]).chain(other.left.iter().map(|v| c.right.vmap[v])).collect();
        let right =
            self.right.iter().map(|v| c.left.vmap[v]).chain(other.right.iter().map(|v| c.right.vmap[v])).collect();
        (Cospan { apex: c.graph.clone(), left, right }, c)
    }

    pub fn tensor(&self, other: &Cospan) -> Cospan {
        self.tensor_with_colimit(other).0
    }

    pub fn identity(n: usize) -> Cospan {
        let ids: Vec<VertexId> = (0..n as VertexId).collect();
        Cospan { apex: Graph::discrete(ids.clone()), left: ids.clone(), right: ids }
    }

    /// `σ_{n,m} : n + m -> m + n`: the left leg swaps the blocks, the right leg is the identity.
    pub fn swap(n: usize, m: usize) -> Cospan {
        let (n32, m32) = (n as VertexId, m as VertexId);
        let left = (0..n32).map(|i| m32 + i).chain(0..m32).collect();
        Cospan { apex: Graph::discrete(0..n32 + m32), left, right: (0..n32 + m32).collect() }
    }

    /// Wire permutation: right position `j` carries left position `perm[j]`.
    pub fn permutation(perm: &[usize]) -> Result<Cospan> {
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(type_error(format!("{perm:?} is not a permutation")));
            }
        }
        let n = perm.len() as VertexId;
        Ok(Cospan {
            apex: Graph::discrete(0..n),
            left: (0..n).collect(),
            right: perm.iter().map(|&p| p as VertexId).collect(),
        })
    }

    /// `cp_n : n -> n + n`.
    pub fn copy(n: usize) -> Cospan {
        let ids: Vec<VertexId> = (0..n as VertexId).collect();
        let right = ids.iter().chain(&ids).copied().collect();
        Cospan { apex: Graph::discrete(ids.clone()), left: ids, right }
    }

    /// `merge_n : n + n -> n`, mirror of copy.
    pub fn merge(n: usize) -> Cospan {
        Cospan::copy(n).mirror()
    }

    /// `del_n : n -> 0`.
    pub fn delete(n: usize) -> Cospan {
        let ids: Vec<VertexId> = (0..n as VertexId).collect();
        Cospan { apex: Graph::discrete(ids.clone()), left: ids, right: Vec::new() }
    }

    /// `create_n : 0 -> n`, mirror of delete.
    pub fn create(n: usize) -> Cospan {
        Cospan::delete(n).mirror()
    }

    /// `1 -> (u -e- v) <- 1`.
    pub fn edge() -> Cospan {
        Cospan { apex: Graph::from_edges(2, &[(0, 1)]), left: vec![0], right: vec![1] }
    }

    /// Exchange the two legs.
    pub fn mirror(&self) -> Cospan {
        Cospan { apex: self.apex.clone(), left: self.right.clone(), right: self.left.clone() }
    }

    /// Order-preserving renumbering of the apex.
    pub fn normalized(&self) -> Cospan {
        let (apex, vmap, _) = self.apex.renumbered();
        Cospan {
            apex,
            left: self.left.iter().map(|v| vmap[v]).collect(),
            right: self.right.iter().map(|v| vmap[v]).collect(),
        }
    }
}

/// Apexes are isomorphic by a map commuting with both legs.
pub fn cospan_iso_eq(a: &Cospan, b: &Cospan) -> bool {
    if a.dom() != b.dom() || a.cod() != b.cod() {
        return false;
    }
    let fixed: Vec<(VertexId, VertexId)> =
        a.left.iter().zip(&b.left).chain(a.right.iter().zip(&b.right)).map(|(&x, &y)| (x, y)).collect();
    find_isomorphism(&a.apex, &b.apex, &fixed).is_some()
}

pub fn boundary_weight(n: usize) -> usize {
    n
}

impl fmt::Display for Cospan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -> {} <- {:?}", self.left, self.apex, self.right)
    }
}

#[derive(Serialize, Deserialize)]
struct CospanJson {
    left: Vec<u32>,
    right: Vec<u32>,
    apex: Graph,
    #[serde(rename = "legL")]
    leg_l: BTreeMap<u32, VertexId>,
    #[serde(rename = "legR")]
    leg_r: BTreeMap<u32, VertexId>,
}

impl From<Cospan> for CospanJson {
    fn from(c: Cospan) -> Self {
        let positions = |n: usize| (0..n as u32).collect::<Vec<_>>();
        CospanJson {
            left: positions(c.dom()),
            right: positions(c.cod()),
            leg_l: c.left.iter().enumerate().map(|(i, &v)| (i as u32, v)).collect(),
            leg_r: c.right.iter().enumerate().map(|(i, &v)| (i as u32, v)).collect(),
            apex: c.apex,
        }
    }
}

impl TryFrom<CospanJson> for Cospan {
    type Error = Error;

    fn try_from(j: CospanJson) -> Result<Self> {
        let leg = |ids: &[u32], table: &BTreeMap<u32, VertexId>| -> Result<Vec<VertexId>> {
            if table.len() != ids.len() {
                return Err(crate::error::domain("leg is not total on its boundary"));
            }
            ids.iter()
                .map(|i| table.get(i).copied().ok_or_else(|| crate::error::domain(format!("leg misses boundary point {i}"))))
                .collect()
        };
        let left = leg(&j.left, &j.leg_l)?;
        let right = leg(&j.right, &j.leg_r)?;
        Cospan::new(j.apex, left, right)
    }
}

#[cfg(test)]
mod tests;
