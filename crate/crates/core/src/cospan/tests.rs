use proptest::prelude::*;

use super::*;

fn arb_cospan(dom: usize, cod: usize) -> impl Strategy<Value = Cospan> {
    (1u32..=4).prop_flat_map(move |n| {
        (
            proptest::collection::vec((0..n, 0..n), 0..4),
            proptest::collection::vec(0..n, dom),
            proptest::collection::vec(0..n, cod),
        )
            .prop_map(move |(es, l, r)| Cospan::new(Graph::from_edges(n, &es), l, r).unwrap())
    })
}

fn p3_cospan() -> Cospan {
    Cospan::new(Graph::from_edges(3, &[(0, 1), (1, 2)]), vec![0], vec![2]).unwrap()
}

#[test]
fn edge_then_edge_is_a_path() {
    let c = Cospan::edge().compose(&Cospan::edge()).unwrap();
    assert!(cospan_iso_eq(&c, &p3_cospan()));
    assert_eq!(c.weight(), 3);
}

#[test]
fn copy_then_merge_is_one_vertex() {
    let c = Cospan::copy(1).compose(&Cospan::merge(1)).unwrap();
    assert!(cospan_iso_eq(&c, &Cospan::identity(1)));
    assert_eq!(c.weight(), 1);
}

#[test]
fn tensor_counts() {
    let c = Cospan::edge().tensor(&Cospan::edge());
    assert_eq!((c.apex().num_vertices(), c.apex().num_edges()), (4, 2));
    let d = Cospan::copy(1).tensor(&Cospan::delete(1));
    assert_eq!((d.weight(), d.dom(), d.cod()), (2, 2, 2));
    assert!(cospan_iso_eq(&p3_cospan().tensor(&Cospan::identity(0)), &p3_cospan()));
}

#[test]
fn generators() {
    let cp = Cospan::copy(1);
    assert_eq!((cp.weight(), cp.dom(), cp.cod()), (1, 1, 2));
    assert_eq!(cp.right_leg()[0], cp.right_leg()[1]);
    let s = Cospan::swap(2, 1);
    assert_eq!(s.apex().num_edges(), 0);
    assert_eq!(s.weight(), 3);
    assert!(cospan_iso_eq(&Cospan::create(0), &Cospan::identity(0)));
    assert_eq!(Cospan::edge().weight(), 2);
    assert_eq!(Cospan::identity(0).weight(), 0);
    assert_eq!(Cospan::copy(3).weight(), 3);
    assert_eq!(boundary_weight(4), 4);
}

#[test]
fn iso_eq_cases() {
    let e = Cospan::edge();
    let renamed = Cospan::new(
        {
            let mut g = Graph::discrete([5, 9]);
            g.add_edge(3, 9, 5).unwrap();
            g
        },
        vec![9],
        vec![5],
    )
    .unwrap();
    assert!(cospan_iso_eq(&e, &renamed));
    assert!(cospan_iso_eq(&e, &e.mirror()));
    assert!(!cospan_iso_eq(&Cospan::copy(1), &Cospan::merge(1)));
    assert!(!cospan_iso_eq(&Cospan::swap(1, 1), &Cospan::identity(2)));
    assert!(cospan_iso_eq(&Cospan::swap(1, 1).compose(&Cospan::swap(1, 1)).unwrap(), &Cospan::identity(2)));
}

#[test]
fn boundary_mismatch() {
    assert!(matches!(Cospan::edge().compose(&Cospan::copy(2)), Err(Error::Type(_))));
}

#[test]
fn permutation_matches_swap() {
    let p = Cospan::permutation(&[1, 0]).unwrap();
    assert!(cospan_iso_eq(&p, &Cospan::swap(1, 1)));
    assert!(Cospan::permutation(&[0, 0]).is_err());
}

#[test]
fn coherent_copying_small() {
    for (n, m) in [(1, 1), (2, 1), (1, 2), (0, 2)] {
        let lhs = Cospan::copy(n + m);
        let rhs = Cospan::copy(n)
            .tensor(&Cospan::copy(m))
            .compose(&Cospan::identity(n).tensor(&Cospan::swap(n, m)).tensor(&Cospan::identity(m)))
            .unwrap();
        assert!(cospan_iso_eq(&lhs, &rhs), "n={n} m={m}");
    }
}

#[test]
fn json_form() {
    let s = serde_json::to_string(&Cospan::edge()).unwrap();
    assert_eq!(s, r#"{"left":[0],"right":[0],"apex":{"v":[0,1],"e":[[0,1]]},"legL":{"0":0},"legR":{"0":1}}"#);
    let back: Cospan = serde_json::from_str(&s).unwrap();
    assert_eq!(back, Cospan::edge());
    assert!(serde_json::from_str::<Cospan>(r#"{"left":[0],"right":[],"apex":{"v":[0],"e":[]},"legL":{},"legR":{}}"#).is_err());
}

proptest! {
    #[test]
    fn associativity(a in arb_cospan(1, 2), b in arb_cospan(2, 1), c in arb_cospan(1, 2)) {
        let l = a.compose(&b).unwrap().compose(&c).unwrap();
        let r = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert!(cospan_iso_eq(&l, &r));
    }

    #[test]
    fn units(a in arb_cospan(2, 1)) {
        prop_assert!(cospan_iso_eq(&Cospan::identity(2).compose(&a).unwrap(), &a));
        prop_assert!(cospan_iso_eq(&a.compose(&Cospan::identity(1)).unwrap(), &a));
        prop_assert!(cospan_iso_eq(&a.tensor(&Cospan::identity(0)), &a));
    }

    #[test]
    fn interchange(f in arb_cospan(1, 1), f2 in arb_cospan(1, 2), g in arb_cospan(1, 2), g2 in arb_cospan(2, 0)) {
        let l = f.tensor(&f2).compose(&g.tensor(&g2)).unwrap();
        let r = f.compose(&g).unwrap().tensor(&f2.compose(&g2).unwrap());
        prop_assert!(cospan_iso_eq(&l, &r));
    }

    #[test]
    fn tensor_weight_adds(a in arb_cospan(1, 1), b in arb_cospan(0, 2)) {
        prop_assert_eq!(a.tensor(&b).weight(), a.weight() + b.weight());
    }

    #[test]
    fn json_round_trip(a in arb_cospan(2, 1)) {
        let back: Cospan = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        prop_assert_eq!(back, a);
    }
}
