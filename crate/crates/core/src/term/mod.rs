//! Monoidal decomposition trees.
//!
//! A tree is a leaf holding an atom, a tensor node, or a composition node cut
//! along a boundary of some number of wires. Objects are natural numbers
//! (wire counts) weighted by their size, so a cut along `n` wires costs `n`.

mod examples;
mod search;

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::cospan::Cospan;
use crate::error::{domain, type_error, Result};

pub use examples::{example_2_2, example_signature, h_balanced, h_naive};
pub use search::{bounded_mwd_search, bounded_mwd_search_seeded, SearchResult, Shape, MAX_SEARCH_EDGES, MAX_SEARCH_VERTICES};

/// Something with a typed boundary and a weight.
pub trait Atom {
    fn dom(&self) -> usize;
    fn cod(&self) -> usize;
    fn weight(&self) -> usize;
}

/// Atoms that provide the structure used by the copy lemma.
pub trait CopyAtoms: Atom + Sized {
    fn identity(n: usize) -> Self;
    fn copy(n: usize) -> Self;
    fn swap(n: usize, m: usize) -> Self;
}

impl Atom for Cospan {
    fn dom(&self) -> usize {
        Cospan::dom(self)
    }
    fn cod(&self) -> usize {
        Cospan::cod(self)
    }
    fn weight(&self) -> usize {
        Cospan::weight(self)
    }
}

impl CopyAtoms for Cospan {
    fn identity(n: usize) -> Self {
        Cospan::identity(n)
    }
    fn copy(n: usize) -> Self {
        Cospan::copy(n)
    }
    fn swap(n: usize, m: usize) -> Self {
        Cospan::swap(n, m)
    }
}

/// A named atom from a [`Signature`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Sym {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
    pub weight: usize,
}

impl Atom for Sym {
    fn dom(&self) -> usize {
        self.dom
    }
    fn cod(&self) -> usize {
        self.cod
    }
    fn weight(&self) -> usize {
        self.weight
    }
}

/// Structural atoms weighted as in an abstract prop: `w(cp_n) = 2n`.
impl CopyAtoms for Sym {
    fn identity(n: usize) -> Self {
        Sym { name: format!("id{n}"), dom: n, cod: n, weight: n }
    }
    fn copy(n: usize) -> Self {
        Sym { name: format!("cp{n}"), dom: n, cod: 2 * n, weight: 2 * n }
    }
    fn swap(n: usize, m: usize) -> Self {
        Sym { name: format!("sw{n},{m}"), dom: n + m, cod: n + m, weight: n + m }
    }
}

/// Table of declared atoms.
#[derive(Clone, Debug, Default)]
pub struct Signature {
    atoms: BTreeMap<String, Sym>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare(&mut self, name: &str, dom: usize, cod: usize, weight: usize) -> &mut Self {
        self.atoms.insert(name.to_string(), Sym { name: name.to_string(), dom, cod, weight });
        self
    }

    pub fn atom(&self, name: &str) -> Result<Sym> {
        self.atoms.get(name).cloned().ok_or_else(|| domain(format!("undeclared atom `{name}`")))
    }

    pub fn leaf(&self, name: &str) -> Result<DecompTree<Sym>> {
        Ok(DecompTree::Leaf(self.atom(name)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(
    into = "TermJson<A>",
    try_from = "TermJson<A>",
    bound(serialize = "A: Serialize + Clone", deserialize = "A: DeserializeOwned")
)]
pub enum DecompTree<A> {
    Leaf(A),
    Tensor(Box<DecompTree<A>>, Box<DecompTree<A>>),
    Compose(Box<DecompTree<A>>, usize, Box<DecompTree<A>>),
}

impl<A: Atom> DecompTree<A> {
    pub fn leaf(a: A) -> Self {
        DecompTree::Leaf(a)
    }

    pub fn tensor(l: Self, r: Self) -> Self {
        DecompTree::Tensor(Box::new(l), Box::new(r))
    }

    /// Composition cut along the codomain of `l`.
    pub fn compose(l: Self, r: Self) -> Self {
        let cut = l.cod();
        DecompTree::Compose(Box::new(l), cut, Box::new(r))
    }

    /// Right-nested tensor of a non-empty list.
    pub fn tensor_all(mut parts: Vec<Self>) -> Self {
        let mut acc = parts.pop().expect("tensor_all needs at least one part");
        while let Some(p) = parts.pop() {
            acc = Self::tensor(p, acc);
        }
        acc
    }

    /// Domain read off the leftmost leaves, without checking types.
    pub fn dom(&self) -> usize {
        match self {
            DecompTree::Leaf(a) => a.dom(),
            DecompTree::Tensor(l, r) => l.dom() + r.dom(),
            DecompTree::Compose(l, _, _) => l.dom(),
        }
    }

    pub fn cod(&self) -> usize {
        match self {
            DecompTree::Leaf(a) => a.cod(),
            DecompTree::Tensor(l, r) => l.cod() + r.cod(),
            DecompTree::Compose(_, _, r) => r.cod(),
        }
    }

    /// Checks boundary typing and returns `(dom, cod)`.
    pub fn typecheck(&self) -> Result<(usize, usize)> {
        self.typecheck_at("root")
    }

    fn typecheck_at(&self, path: &str) -> Result<(usize, usize)> {
        match self {
            DecompTree::Leaf(a) => Ok((a.dom(), a.cod())),
            DecompTree::Tensor(l, r) => {
                let (a, b) = l.typecheck_at(&format!("{path}.0"))?;
                let (c, d) = r.typecheck_at(&format!("{path}.1"))?;
                Ok((a + c, b + d))
            }
            DecompTree::Compose(l, cut, r) => {
                let (a, b) = l.typecheck_at(&format!("{path}.0"))?;
                let (c, d) = r.typecheck_at(&format!("{path}.1"))?;
                if b != *cut || c != *cut {
                    return Err(type_error(format!("at {path}: composing {b} -> |{cut}| -> {c}")));
                }
                Ok((a, d))
            }
        }
    }

    /// Recursive width: leaves cost their weight, compositions their cut.
    pub fn width(&self) -> Result<usize> {
        self.typecheck()?;
        Ok(self.width_unchecked())
    }

    pub fn width_unchecked(&self) -> usize {
        match self {
            DecompTree::Leaf(a) => a.weight(),
            DecompTree::Tensor(l, r) => l.width_unchecked().max(r.width_unchecked()),
            DecompTree::Compose(l, cut, r) => l.width_unchecked().max(*cut).max(r.width_unchecked()),
        }
    }

    /// Width as the maximum node label, tensor nodes labelled 0.
    pub fn max_node_weight(&self) -> usize {
        let mut stack = vec![self];
        let mut best = 0;
        while let Some(t) = stack.pop() {
            match t {
                DecompTree::Leaf(a) => best = best.max(a.weight()),
                DecompTree::Tensor(l, r) => stack.extend([&**l, &**r]),
                DecompTree::Compose(l, cut, r) => {
                    best = best.max(*cut);
                    stack.extend([&**l, &**r]);
                }
            }
        }
        best
    }

    /// Every composition has a leaf on its left.
    pub fn is_right_tree(&self) -> bool {
        match self {
            DecompTree::Leaf(_) => true,
            DecompTree::Tensor(l, r) => l.is_right_tree() && r.is_right_tree(),
            DecompTree::Compose(l, _, r) => matches!(**l, DecompTree::Leaf(_)) && r.is_right_tree(),
        }
    }

    /// Every composition has a leaf on its right.
    pub fn is_left_tree(&self) -> bool {
        match self {
            DecompTree::Leaf(_) => true,
            DecompTree::Tensor(l, r) => l.is_left_tree() && r.is_left_tree(),
            DecompTree::Compose(l, _, r) => matches!(**r, DecompTree::Leaf(_)) && l.is_left_tree(),
        }
    }

    /// No tensor nodes.
    pub fn is_path(&self) -> bool {
        match self {
            DecompTree::Leaf(_) => true,
            DecompTree::Tensor(..) => false,
            DecompTree::Compose(l, _, r) => l.is_path() && r.is_path(),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            DecompTree::Leaf(_) => 1,
            DecompTree::Tensor(l, r) | DecompTree::Compose(l, _, r) => 1 + l.node_count() + r.node_count(),
        }
    }

    pub fn leaves(&self) -> Vec<&A> {
        match self {
            DecompTree::Leaf(a) => vec![a],
            DecompTree::Tensor(l, r) | DecompTree::Compose(l, _, r) => {
                let mut v = l.leaves();
                v.extend(r.leaves());
                v
            }
        }
    }

    pub fn map_atoms<B: Atom>(&self, f: &mut impl FnMut(&A) -> B) -> DecompTree<B> {
        match self {
            DecompTree::Leaf(a) => DecompTree::Leaf(f(a)),
            DecompTree::Tensor(l, r) => DecompTree::tensor(l.map_atoms(f), r.map_atoms(f)),
            DecompTree::Compose(l, cut, r) => {
                DecompTree::Compose(Box::new(l.map_atoms(f)), *cut, Box::new(r.map_atoms(f)))
            }
        }
    }

    /// Leaves show `dom -> cod (weight)`, compositions their cut.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph decomp_tree {\n");
        let mut next = 0;
        self.dot_into(&mut out, &mut next);
        out.push_str("}\n");
        out
    }

    fn dot_into(&self, out: &mut String, next: &mut usize) -> usize {
        let id = *next;
        *next += 1;
        let (label, kids) = match self {
            DecompTree::Leaf(a) => (format!("{} -> {} ({})", a.dom(), a.cod(), a.weight()), vec![]),
            DecompTree::Tensor(l, r) => ("⊗".to_string(), vec![&**l, &**r]),
            DecompTree::Compose(l, cut, r) => (format!(";{cut}"), vec![&**l, &**r]),
        };
        out.push_str(&format!("  n{id} [label=\"{label}\"];\n"));
        for k in kids {
            let child = k.dot_into(out, next);
            out.push_str(&format!("  n{id} -> n{child};\n"));
        }
        id
    }

    /// Atoms of a composition-only tree, left to right.
    pub fn path_atoms(&self) -> Option<Vec<&A>> {
        self.is_path().then(|| self.leaves())
    }
}

impl DecompTree<Cospan> {
    /// Folds the tree back into a single cospan.
    pub fn evaluate(&self) -> Result<Cospan> {
        self.evaluate_at("root")
    }

    fn evaluate_at(&self, path: &str) -> Result<Cospan> {
        match self {
            DecompTree::Leaf(c) => Ok(c.clone()),
            DecompTree::Tensor(l, r) => {
                Ok(l.evaluate_at(&format!("{path}.0"))?.tensor(&r.evaluate_at(&format!("{path}.1"))?))
            }
            DecompTree::Compose(l, cut, r) => {
                let a = l.evaluate_at(&format!("{path}.0"))?;
                let b = r.evaluate_at(&format!("{path}.1"))?;
                if a.cod() != *cut || b.dom() != *cut {
                    return Err(type_error(format!("at {path}: composing {} -> |{cut}| -> {}", a.cod(), b.dom())));
                }
                a.compose(&b).map_err(|e| type_error(format!("at {path}: {e}")))
            }
        }
    }

    /// Deterministic serialization used for tie-breaking and golden tests.
    pub fn canonical_string(&self) -> String {
        serde_json::to_string(self).expect("terms serialize")
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson<A> {
    op: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    atom: Option<A>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cut: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    children: Option<Vec<TermJson<A>>>,
}

impl<A> From<DecompTree<A>> for TermJson<A> {
    fn from(t: DecompTree<A>) -> Self {
        match t {
            DecompTree::Leaf(a) => TermJson { op: "leaf".into(), atom: Some(a), cut: None, children: None },
            DecompTree::Tensor(l, r) => TermJson {
                op: "tensor".into(),
                atom: None,
                cut: None,
                children: Some(vec![(*l).into(), (*r).into()]),
            },
            DecompTree::Compose(l, cut, r) => TermJson {
                op: "compose".into(),
                atom: None,
                cut: Some(cut),
                children: Some(vec![(*l).into(), (*r).into()]),
            },
        }
    }
}

impl<A> TryFrom<TermJson<A>> for DecompTree<A> {
    type Error = crate::Error;

    fn try_from(j: TermJson<A>) -> Result<Self> {
        let pair = |children: Option<Vec<TermJson<A>>>| -> Result<(Box<Self>, Box<Self>)> {
            let mut cs = children.ok_or_else(|| domain("node without children"))?;
            if cs.len() != 2 {
                return Err(domain("nodes have exactly two children"));
            }
            let r = cs.pop().unwrap();
            let l = cs.pop().unwrap();
            Ok((Box::new(l.try_into()?), Box::new(r.try_into()?)))
        };
        match j.op.as_str() {
            "leaf" => Ok(DecompTree::Leaf(j.atom.ok_or_else(|| domain("leaf without atom"))?)),
            "tensor" => {
                let (l, r) = pair(j.children)?;
                Ok(DecompTree::Tensor(l, r))
            }
            "compose" => {
                let cut = j.cut.ok_or_else(|| domain("compose without cut"))?;
                let (l, r) = pair(j.children)?;
                Ok(DecompTree::Compose(l, cut, r))
            }
            other => Err(domain(format!("unknown op `{other}`"))),
        }
    }
}
