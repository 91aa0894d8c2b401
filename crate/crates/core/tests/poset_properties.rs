mod support;

use meetjoin_core::poset::{
    build_poset, cover_graph, is_a_set, is_chain, is_meet_closed, is_vee_tree_set, is_wedge_tree_set,
    join_closure, meet_closure, tree_characterizations, FinitePoset, Subset,
};
use meetjoin_core::Error;
use proptest::prelude::*;
use support::*;

fn assert_partial_order(p: &FinitePoset) {
    let n = p.len();
    for i in 0..n {
        assert!(p.leq(i, i));
        for j in 0..n {
            if p.leq(i, j) {
                assert!(i <= j, "indexing is not a linear extension");
                if i != j {
                    assert!(!p.leq(j, i));
                }
                for k in 0..n {
                    if p.leq(j, k) {
                        assert!(p.leq(i, k));
                    }
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn built_posets_are_indexed_partial_orders(
        n in 1usize..10,
        pairs in proptest::collection::vec((0usize..10, 0usize..10), 0..30),
    ) {
        // orient every pair from smaller to larger name so no cycle exists,
        // then scramble names through a fixed permutation
        let relation: Vec<(usize, usize)> = pairs
            .into_iter()
            .filter(|&(a, b)| a < n && b < n && a != b)
            .map(|(a, b)| (a.min(b), a.max(b)))
            .map(|(a, b)| ((a * 7 + 3) % n, (b * 7 + 3) % n))
            .collect();
        match build_poset(n, &relation, None) {
            Ok(p) => {
                assert_partial_order(&p);
                for &(a, b) in &relation {
                    let (ia, ib) = (p.position_of_source(a).unwrap(), p.position_of_source(b).unwrap());
                    prop_assert!(p.leq(ia, ib));
                }
            }
            // the scrambling can map distinct pairs onto a cycle only when 7 and n share a factor
            Err(Error::Cycle { .. }) => prop_assert_eq!(n % 7, 0),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}

#[test]
fn random_lattices_are_indexed_partial_orders() {
    let mut rng = rng(1);
    for _ in 0..300 {
        assert_partial_order(&random_lattice(&mut rng, 9));
        assert_partial_order(&random_poset(&mut rng, 8, 0.3));
    }
}

#[test]
fn closure_is_idempotent_and_minimal() {
    let mut rng = rng(2);
    for _ in 0..400 {
        let p = random_lattice(&mut rng, 9);
        let s = random_subset(&mut rng, &p, 4);
        for c in [meet_closure(&s).unwrap(), join_closure(&s).unwrap()] {
            let closed = Subset::sorted(&p, c.ambient.clone()).unwrap();
            let again = meetjoin_core::poset::closure(&closed, c.kind).unwrap();
            assert_eq!(again.ambient, c.ambient);
            assert!(c.is_closed(&p).unwrap());
            // dropping an added element breaks closedness
            for &extra in c.ambient.iter().filter(|a| !s.contains(**a)) {
                let fewer: Vec<usize> = c.ambient.iter().copied().filter(|&a| a != extra).collect();
                let t = Subset::sorted(&p, fewer).unwrap();
                assert!(!meetjoin_core::poset::is_closed(&t, c.kind).unwrap());
            }
        }
    }
}

#[test]
fn tree_characterizations_agree_on_closures() {
    let mut rng = rng(3);
    let mut trees = 0;
    for _ in 0..1500 {
        let p = random_lattice(&mut rng, 9);
        let s = random_subset(&mut rng, &p, 5);
        // both calls fail loudly on disagreement
        trees += is_wedge_tree_set(&s).unwrap() as usize;
        is_vee_tree_set(&s).unwrap();
    }
    assert!(trees > 100, "generator produced too few tree sets ({trees})");
}

#[test]
fn a_sets_are_wedge_tree_sets() {
    let mut rng = rng(4);
    let mut a_sets = 0;
    for _ in 0..1500 {
        let p = random_lattice(&mut rng, 9);
        let s = random_subset(&mut rng, &p, 5);
        if is_a_set(&s).unwrap() {
            a_sets += 1;
            assert!(is_wedge_tree_set(&s).unwrap());
        }
    }
    assert!(a_sets > 100);
}

#[test]
fn stored_tree_pair() {
    let (p, s) = tree_not_a_set();
    let s = Subset::from_labels(&p, &s).unwrap();
    assert!(is_wedge_tree_set(&s).unwrap());
    assert!(!is_a_set(&s).unwrap());
    assert_eq!(meet_closure(&s).unwrap().len(), 10);

    let (p, s) = eleven_element_a_set();
    let s = Subset::from_labels(&p, &s).unwrap();
    assert!(is_a_set(&s).unwrap());
    assert!(is_wedge_tree_set(&s).unwrap());
    assert_eq!(meet_closure(&s).unwrap().len(), 14);
    assert_eq!(tree_characterizations(&meet_closure(&s).unwrap().closed), [true; 4]);
}

#[test]
fn vee_tree_is_wedge_tree_of_the_dual() {
    let mut rng = rng(5);
    for _ in 0..500 {
        let p = random_lattice(&mut rng, 9);
        let dual = p.dual();
        let s = random_subset(&mut rng, &p, 4);
        let t = s.in_dual(&dual);
        assert_eq!(is_vee_tree_set(&s).unwrap(), is_wedge_tree_set(&t).unwrap());
        assert_eq!(is_wedge_tree_set(&s).unwrap(), is_vee_tree_set(&t).unwrap());
    }
}

#[test]
fn cover_graph_matches_brute_force_reduction() {
    let mut rng = rng(6);
    for _ in 0..200 {
        let p = random_poset(&mut rng, 9, 0.35);
        let n = p.len();
        let mut expected = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if p.lt(i, j) && !(0..n).any(|z| p.lt(i, z) && p.lt(z, j)) {
                    expected.push((i, j));
                }
            }
        }
        assert_eq!(cover_graph(&p).edges, expected);
    }
}

#[test]
fn chains_are_meet_closed_and_a_sets() {
    let mut rng = rng(7);
    for _ in 0..200 {
        let p = random_lattice(&mut rng, 9);
        let s = random_subset(&mut rng, &p, 4);
        if is_chain(&s) {
            assert!(is_meet_closed(&s).unwrap());
            assert!(is_a_set(&s).unwrap());
            assert_eq!(meet_closure(&s).unwrap().len(), s.len());
        }
    }
}
