use crate::cospan::Cospan;
use crate::error::{type_error, Result};
use crate::term::{CopyAtoms, DecompTree};

use super::postcondition;

fn tensor_id<A: CopyAtoms>(n: usize, t: DecompTree<A>) -> DecompTree<A> {
    if n == 0 {
        t
    } else {
        DecompTree::tensor(DecompTree::leaf(A::identity(n)), t)
    }
}

fn id_tensor<A: CopyAtoms>(t: DecompTree<A>, n: usize) -> DecompTree<A> {
    if n == 0 {
        t
    } else {
        DecompTree::tensor(t, DecompTree::leaf(A::identity(n)))
    }
}

/// From a decomposition of `f : Y ⊗ X1 ⊗ … ⊗ Xn ⊗ Z -> W`, one of
/// `γ(f) : Y ⊗ X1 ⊗ … ⊗ Xn ⊗ Z -> W ⊗ X1 ⊗ … ⊗ Xn`, which also outputs a copy
/// of every `Xi`. Width at most `max{wd(d), Y + Z + (n+1)·max Xi}`.
pub fn copy_mdec<A: CopyAtoms + Clone>(d: &DecompTree<A>, y: usize, xs: &[usize], z: usize) -> Result<DecompTree<A>> {
    let (dom, _) = d.typecheck()?;
    let total: usize = xs.iter().sum();
    if dom != y + total + z {
        return Err(type_error(format!("copy_mdec: domain {dom} is not {y} + {total} + {z}")));
    }
    let out = copy_term(d.clone(), y, xs, z);
    let bound = d.width_unchecked().max(y + z + (xs.len() + 1) * xs.iter().copied().max().unwrap_or(0));
    let got = out.width()?;
    if got > bound {
        return Err(postcondition(format!("copy_mdec width {got} exceeds {bound}")));
    }
    Ok(out)
}

fn copy_term<A: CopyAtoms + Clone>(d: DecompTree<A>, y: usize, xs: &[usize], z: usize) -> DecompTree<A> {
    let Some((&xn, rest)) = xs.split_last() else { return d };
    let before = y + rest.iter().sum::<usize>();
    // Xn ⊗ Z  ->  Xn ⊗ Xn ⊗ Z  ->  Xn ⊗ Z ⊗ Xn
    let dup = id_tensor(DecompTree::leaf(A::copy(xn)), z);
    let block = if z == 0 {
        dup
    } else {
        DecompTree::compose(dup, tensor_id(xn, DecompTree::leaf(A::swap(xn, z))))
    };
    let block = tensor_id(before, block);
    let inner = id_tensor(copy_term(d, y, rest, xn + z), xn);
    DecompTree::compose(block, inner)
}

/// `γ(f)` computed directly on a cospan: the copied wires become extra
/// outputs landing where the corresponding inputs land.
pub fn gamma_cospan(f: &Cospan, y: usize, xs: &[usize]) -> Result<Cospan> {
    let total: usize = xs.iter().sum();
    if f.dom() < y + total {
        return Err(type_error(format!("gamma: domain {} is smaller than {y} + {total}", f.dom())));
    }
    let mut right = f.right_leg().to_vec();
    right.extend_from_slice(&f.left_leg()[y..y + total]);
    Cospan::new(f.apex().clone(), f.left_leg().to_vec(), right)
}
