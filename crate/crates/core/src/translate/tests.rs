use super::*;
use crate::cospan::cospan_iso_eq;
use crate::decomp::{branch_to_recursive, path_to_recursive, tree_to_recursive, BranchDec, PathDec, RecBranchDec, TreeDec};
use crate::graph::{Graph, SourcedGraph};
use crate::term::{DecompTree, Sym};

fn k3() -> Graph {
    Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)])
}

fn p3() -> Graph {
    Graph::from_edges(3, &[(0, 1), (1, 2)])
}

fn bowtie() -> Graph {
    Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
}

fn vs(v: &[u32]) -> VertexSet {
    v.iter().copied().collect()
}

fn bowtie_tree() -> TreeDec {
    TreeDec::new(Graph::from_edges(2, &[(0, 1)]), [(0, vs(&[0, 1, 2])), (1, vs(&[2, 3, 4]))].into())
}

/// A star with one leaf per edge of a three-edge graph.
fn star_branch() -> BranchDec {
    BranchDec::new(Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]), [(1, 0), (2, 1), (3, 2)].into())
}

fn whole(g: &Graph) -> Cospan {
    Cospan::sourced(g.clone(), &[]).unwrap()
}

#[test]
fn epis_of_edge_then_edge_are_injective() {
    let w = epis_from_composition(&Cospan::edge(), &Cospan::edge()).unwrap();
    assert!(w.alpha1.is_injective() && w.alpha2.is_injective());
    assert!(w.alpha1.is_epimorphism() && w.alpha2.is_epimorphism());
}

#[test]
fn epis_of_copy_then_merge_identify_boundary_hits() {
    // 1 -> {a} <- 2 followed by 2 -> {x, y} <- 1, glued so that x = y = a
    let spread = Cospan::new(Graph::discrete([0, 1]), vec![0, 1], vec![0]).unwrap();
    let w = epis_from_composition(&Cospan::copy(1), &spread).unwrap();
    assert!(w.alpha1.is_injective());
    assert_eq!(w.alpha2.vmap[&0], w.alpha2.vmap[&1]);
    assert_eq!(w.alpha2.codomain.num_vertices(), 1);
}

#[test]
fn epis_with_disjoint_boundary_images() {
    let g1 = Cospan::new(Graph::from_edges(3, &[(0, 1), (1, 2)]), vec![0], vec![2]).unwrap();
    let w = epis_from_composition(&g1, &Cospan::identity(1)).unwrap();
    assert!(w.alpha1.is_injective());
}

#[test]
fn epis_reject_mismatched_boundaries() {
    assert!(matches!(epis_from_composition(&Cospan::copy(1), &Cospan::edge()), Err(Error::Type(_))));
}

#[test]
fn pushing_along_identity_changes_nothing() {
    let g = bowtie();
    let gamma = SourcedGraph::unsourced(g.clone());
    let t = tree_to_recursive(&bowtie_tree(), &gamma, None).unwrap();
    assert_eq!(epi_to_dec_tree(&GraphMorphism::identity(&g), &t).unwrap(), t);
    let pt = path_to_recursive(&PathDec::new(vec![vs(&[0, 1, 2]), vs(&[2, 3, 4])]), &gamma).unwrap();
    assert_eq!(epi_to_dec_path(&GraphMorphism::identity(&g), &pt).unwrap(), pt);
}

/// Quotient of `g` identifying `w` with `v`, keeping edge names.
fn collapse(g: &Graph, v: u32, w: u32) -> GraphMorphism {
    let vmap: BTreeMap<u32, u32> = g.vertices().iter().map(|&x| (x, if x == w { v } else { x })).collect();
    let mut h = Graph::discrete(vmap.values().copied());
    for (e, ends) in g.edges() {
        h.add_edge(e, vmap[&ends.first()], vmap[&ends.second()]).unwrap();
    }
    let emap = g.edge_ids().into_iter().map(|e| (e, e)).collect();
    GraphMorphism::new(g.clone(), h, vmap, emap).unwrap()
}

#[test]
fn collapsing_inside_a_bag_keeps_the_width_down() {
    let g = bowtie();
    let t = tree_to_recursive(&bowtie_tree(), &SourcedGraph::unsourced(g.clone()), None).unwrap();
    let pushed = epi_to_dec_tree(&collapse(&g, 3, 4), &t).unwrap();
    assert!(pushed.width() <= t.width());
    assert_eq!(pushed.width(), 3);
}

#[test]
fn collapsing_across_bags_names_the_pair() {
    let g = bowtie();
    let t = tree_to_recursive(&bowtie_tree(), &SourcedGraph::unsourced(g.clone()), None).unwrap();
    let err = epi_to_dec_tree(&collapse(&g, 0, 4), &t).unwrap_err();
    assert!(err.to_string().contains("0 and 4"), "{err}");
}

#[test]
fn copy_mdec_leaves_n_zero_alone() {
    let d = DecompTree::leaf(Cospan::edge());
    assert_eq!(copy_mdec(&d, 1, &[], 0).unwrap(), d);
}

#[test]
fn copying_single_wires_stays_within_n_plus_one() {
    for n in 1..=5 {
        let d = DecompTree::leaf(Cospan::identity(n));
        let out = copy_mdec(&d, 0, &vec![1; n], 0).unwrap();
        assert!(out.width().unwrap() <= n + 1, "n = {n}: {}", out.width().unwrap());
        assert!(cospan_iso_eq(&out.evaluate().unwrap(), &Cospan::copy(n)));
        let sym = DecompTree::leaf(<Sym as crate::term::CopyAtoms>::identity(n));
        let out = copy_mdec(&sym, 0, &vec![1; n], 0).unwrap();
        assert_eq!(out.typecheck().unwrap(), (n, 2 * n));
    }
}

#[test]
fn copying_around_a_weight_three_atom() {
    // f : 1 + 1 + 1 + 1 -> 1 with apex a path on three vertices
    let f = Cospan::new(p3(), vec![0, 1, 1, 2], vec![2]).unwrap();
    let d = DecompTree::leaf(f.clone());
    let out = copy_mdec(&d, 1, &[1, 1], 1).unwrap();
    assert!(out.width().unwrap() <= 3.max(1 + 1 + 3));
    assert!(cospan_iso_eq(&out.evaluate().unwrap(), &gamma_cospan(&f, 1, &[1, 1]).unwrap()));

    let mut sig = crate::term::Signature::new();
    sig.declare("f", 4, 1, 3);
    let sym = copy_mdec(&sig.leaf("f").unwrap(), 1, &[1, 1], 1).unwrap();
    assert_eq!(sym.typecheck().unwrap(), (4, 3));
    assert!(sym.width().unwrap() <= 5);
}

#[test]
fn copy_mdec_checks_the_domain() {
    let d = DecompTree::leaf(Cospan::identity(2));
    assert!(matches!(copy_mdec(&d, 0, &[1], 0), Err(Error::Type(_))));
}

#[test]
fn single_bag_gives_a_single_leaf() {
    let g = k3();
    let gamma = SourcedGraph::unsourced(g.clone());
    let t = tree_to_recursive(&TreeDec::trivial(&g), &gamma, None).unwrap();
    let d = t_to_mdec(&t, &gamma).unwrap();
    assert!(matches!(d, DecompTree::Leaf(_)));
    assert_eq!(d.width().unwrap(), 3);
}

#[test]
fn tree_translations_on_the_bowtie() {
    let g = bowtie();
    for x in [vec![], vec![2], vec![0, 4]] {
        let gamma = SourcedGraph::new(g.clone(), vs(&x)).unwrap();
        let Ok(t) = tree_to_recursive(&bowtie_tree(), &gamma, None) else {
            continue;
        };
        let d = t_to_mdec(&t, &gamma).unwrap();
        assert!(d.is_right_tree());
        assert!(d.width().unwrap() <= 2 * t.width());
        let (c, back) = m_to_tdec(&d).unwrap();
        assert!(cospan_iso_eq(&c, &Cospan::sourced(g.clone(), &x).unwrap()));
        assert!(back.width() <= d.width().unwrap().max(x.len()));
    }
}

#[test]
fn m_to_tdec_rejects_other_shapes() {
    let d = DecompTree::compose(
        DecompTree::tensor(DecompTree::leaf(Cospan::identity(1)), DecompTree::leaf(Cospan::identity(1))),
        DecompTree::leaf(Cospan::delete(2)),
    );
    assert!(matches!(m_to_tdec(&d), Err(Error::Precondition(_))));
    let open = DecompTree::leaf(Cospan::edge());
    assert!(matches!(m_to_tdec(&open), Err(Error::Precondition(_))));
}

#[test]
fn m_to_tdec_of_a_tensor_splits_at_the_boundary() {
    let a = Cospan::sourced(p3(), &[0]).unwrap();
    let d = DecompTree::tensor(DecompTree::leaf(a.clone()), DecompTree::leaf(a));
    let (c, t) = m_to_tdec(&d).unwrap();
    assert_eq!(c.apex().num_vertices(), 6);
    let RecTreeDec::Node { bag, .. } = &t else { panic!("expected a node") };
    assert_eq!(bag, &c.left_image());
    assert_eq!(t.width(), 3);
}

#[test]
fn path_translations_on_p3() {
    let g = p3();
    let gamma = SourcedGraph::unsourced(g.clone());
    let t = path_to_recursive(&PathDec::new(vec![vs(&[0, 1]), vs(&[1, 2])]), &gamma).unwrap();
    let d = p_to_mdec(&t, &gamma).unwrap();
    assert!(d.is_path());
    assert_eq!(d.leaves().len(), 2);
    assert_eq!(d.width().unwrap(), 2);
    let (_, back) = m_to_pdec(&d).unwrap();
    assert_eq!(back.width(), 2);
    assert!(m_to_pdec(&DecompTree::tensor(d.clone(), d)).is_err());
}

#[test]
fn single_bag_path_gives_a_leaf() {
    let g = k3();
    let gamma = SourcedGraph::unsourced(g.clone());
    let t = path_to_recursive(&PathDec::new(vec![g.vertices().clone()]), &gamma).unwrap();
    let d = p_to_mdec(&t, &gamma).unwrap();
    assert!(matches!(d, DecompTree::Leaf(_)));
    assert_eq!(d.width().unwrap(), 3);
}

#[test]
fn branch_translation_on_k3() {
    let g = k3();
    let gamma = SourcedGraph::unsourced(g.clone());
    let t = branch_to_recursive(&star_branch(), &gamma).unwrap();
    assert_eq!(t.width(), 2);
    let d = b_to_mdec(&t, &gamma).unwrap();
    assert!(d.width().unwrap() <= 3);
    let (img, back) = m_to_bdec(&d, &GlueMap::identity(&d.evaluate().unwrap())).unwrap();
    assert_eq!(img.graph.num_edges(), 3);
    assert!(back.width() <= 2 * d.width().unwrap());
}

#[test]
fn branch_translation_with_sources() {
    let g = bowtie();
    let gamma = SourcedGraph::new(g.clone(), vs(&[0, 4])).unwrap();
    let shape = Graph::from_edges(10, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6), (5, 7), (5, 8), (6, 9)]);
    let leaf_map = [(3, 0), (4, 1), (7, 2), (8, 3), (9, 4)].into_iter().collect();
    // tree shape needs exactly six leaves; add the last edge under vertex 6
    let mut shape = shape;
    shape.add_vertex(10);
    shape.add_edge(9, 6, 10).unwrap();
    let mut leaf_map: BTreeMap<u32, u32> = leaf_map;
    leaf_map.insert(10, 5);
    let bd = BranchDec::new(shape, leaf_map);
    let t = branch_to_recursive(&bd, &gamma).unwrap();
    let d = b_to_mdec_term(&t, &gamma).unwrap();
    assert!(d.width().unwrap() <= (t.width() + 1).max(2));
    assert!(cospan_iso_eq(&d.evaluate().unwrap(), &Cospan::sourced(g, &[0, 4]).unwrap()));
}

#[test]
fn a_lone_edge_weighs_two() {
    // the edge atom has two vertices, one more than wd(T) + 1 allows
    let g = Graph::from_edges(2, &[(0, 1)]);
    let gamma = SourcedGraph::unsourced(g);
    let t = RecBranchDec::Leaf { graph: gamma.clone() };
    assert_eq!(t.width(), 0);
    assert_eq!(b_to_mdec_term(&t, &gamma).unwrap().width().unwrap(), 2);
    assert!(matches!(b_to_mdec(&t, &gamma), Err(Error::Postcondition(_))));
}

#[test]
fn edgeless_graphs_become_vertex_atoms() {
    let gamma = SourcedGraph::new(Graph::discrete([0, 1, 2]), vs(&[2, 0])).unwrap();
    let t = RecBranchDec::Empty { graph: gamma.clone() };
    let d = b_to_mdec(&t, &gamma).unwrap();
    assert_eq!(d.width().unwrap(), 1);
}

#[test]
fn m_to_bdec_leaf_cases() {
    let bare = DecompTree::leaf(Cospan::identity(2));
    let (_, t) = m_to_bdec(&bare, &GlueMap::identity(&Cospan::identity(2))).unwrap();
    assert!(matches!(t, RecBranchDec::Empty { .. }));
    assert_eq!(t.width(), 0);

    let e = Cospan::edge();
    let (_, t) = m_to_bdec(&DecompTree::leaf(e.clone()), &GlueMap::identity(&e)).unwrap();
    assert!(matches!(t, RecBranchDec::Leaf { .. }));
    assert!(t.width() <= 2);

    let whole_k3 = whole(&k3());
    let (_, t) = m_to_bdec(&DecompTree::leaf(whole_k3.clone()), &GlueMap::identity(&whole_k3)).unwrap();
    assert_eq!(crate::decomp::branch_from_recursive(&t).leaf_map.len(), 3);
}

#[test]
fn m_to_bdec_along_a_boundary_glue() {
    // glue the two ends of an open edge into a loop
    let e = Cospan::edge();
    let map = FiniteMap::new([(0, 0), (1, 0)].into(), vs(&[0])).unwrap();
    let (img, t) = m_to_bdec(&DecompTree::leaf(e.clone()), &GlueMap::new(map, &e).unwrap()).unwrap();
    assert_eq!(img.graph.num_vertices(), 1);
    assert!(matches!(t, RecBranchDec::Leaf { .. }));
}

#[test]
fn glue_maps_must_respect_the_boundary() {
    let c = Cospan::sourced(p3(), &[0]).unwrap();
    let map = FiniteMap::new([(0, 0), (1, 1), (2, 1)].into(), vs(&[0, 1])).unwrap();
    let err = GlueMap::new(map, &c).unwrap_err();
    assert!(err.to_string().contains("1 and 2"), "{err}");
}

#[test]
fn theorems_on_k3() {
    let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
    let r = check_theorems(&k3).unwrap();
    assert_eq!((r.widths.tw, r.widths.pw, r.widths.bw), (3, 3, 2));
    assert_eq!((r.tree.lower, r.tree.upper), (3, 6));
    assert_eq!((r.branch.lower, r.branch.upper), (1, 3));
    assert_eq!(r.path.searched, Some(3));
    assert!(r.pass, "{:?}", serde_json::to_string(&r).unwrap());
}

#[test]
fn theorems_on_small_graphs() {
    let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]);
    assert!(check_theorems(&p3).unwrap().pass);
    let empty = check_theorems(&Graph::new()).unwrap();
    assert_eq!((empty.widths.tw, empty.widths.pw, empty.widths.bw), (0, 0, 0));
    assert!(empty.pass);
    // a lone edge has branch width 0 but every decomposition has a leaf holding both ends
    let edge = check_theorems(&Graph::from_edges(2, &[(0, 1)])).unwrap();
    assert_eq!(edge.path.searched, Some(2));
    assert!(edge.tree.pass && edge.path.pass);
    assert!(!edge.branch.pass);
    assert_eq!(edge.branch.searched, Some(2));
    assert!(edge.branch.failures().iter().any(|f| f.contains("bw+1")));
}
