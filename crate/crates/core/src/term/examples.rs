//! The running example: `f : 1 -> 2` and `g : 2 -> 1`, both of weight 2, and
//! the family `h_0 = f ; g`, `h_{n+1} = f ; (h_n ⊗ h_n) ; g`.

use super::{DecompTree, Signature, Sym};

pub fn example_signature() -> Signature {
    let mut sig = Signature::new();
    sig.declare("f", 1, 2, 2).declare("g", 2, 1, 2);
    sig
}

fn f() -> DecompTree<Sym> {
    example_signature().leaf("f").unwrap()
}

fn g() -> DecompTree<Sym> {
    example_signature().leaf("g").unwrap()
}

fn h0() -> DecompTree<Sym> {
    DecompTree::compose(f(), g())
}

/// `f ;₂ (((f ;₂ g) ⊗ (f ;₂ g)) ;₂ g)`.
pub fn example_2_2() -> DecompTree<Sym> {
    DecompTree::compose(f(), DecompTree::compose(DecompTree::tensor(h0(), h0()), g()))
}

/// Follows the recursive definition of `h_n`; every cut is two wires.
pub fn h_balanced(n: u32) -> DecompTree<Sym> {
    if n == 0 {
        return h0();
    }
    let inner = h_balanced(n - 1);
    DecompTree::compose(f(), DecompTree::compose(DecompTree::tensor(inner.clone(), inner), g()))
}

/// Cuts `h_n` first along the `2^n` wires feeding the innermost copies of `h_0`:
/// a tree of `f`s, then the layer of `h_0`s, then a tree of `g`s.
pub fn h_naive(n: u32) -> DecompTree<Sym> {
    if n == 0 {
        return h0();
    }
    let layer = DecompTree::tensor_all((0..1usize << n).map(|_| h0()).collect());
    DecompTree::compose(fan_out(n), DecompTree::compose(layer, fan_in(n)))
}

fn fan_out(n: u32) -> DecompTree<Sym> {
    if n == 1 {
        return f();
    }
    let sub = fan_out(n - 1);
    DecompTree::compose(f(), DecompTree::tensor(sub.clone(), sub))
}

fn fan_in(n: u32) -> DecompTree<Sym> {
    if n == 1 {
        return g();
    }
    let sub = fan_in(n - 1);
    DecompTree::compose(DecompTree::tensor(sub.clone(), sub), g())
}
