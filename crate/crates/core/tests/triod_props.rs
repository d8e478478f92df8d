mod support;

use proptest::prelude::*;

use kneadlab_core::triod::{between, triod_auto};
use kneadlab_core::{build_tree, Itinerary, MarkedTree, TriodOutcome};
use support::*;

fn trees(max_period: usize) -> Vec<MarkedTree> {
    census(max_period).iter().map(|s| build_tree(s).unwrap()).collect()
}

#[test]
fn quartets_are_consistent_in_small_trees() {
    let mut total = 0;
    for t in trees(5) {
        total += quartets_consistent(&t).unwrap();
    }
    assert!(total > 100);
}

#[test]
fn rabbit_arms_meet_at_the_fixed_point() {
    let t = build_tree(&seq("11*")).unwrap();
    let pts: Vec<&Itinerary> = (0..4).map(|v| t.itinerary(v)).collect();
    assert!(quartet_consistent([pts[0], pts[1], pts[2], pts[3]], t.nu()).is_ok());
    let fixed = t.itinerary(3);
    assert!(between(t.itinerary(0), fixed, t.itinerary(1), t.nu()).unwrap());
    assert!(!between(t.itinerary(0), t.itinerary(1), t.itinerary(2), t.nu()).unwrap());
}

fn relabel(outcome: &TriodOutcome, perm: [usize; 3]) -> TriodOutcome {
    // perm[k] is the original slot placed in slot k.
    match outcome {
        TriodOutcome::Degenerate { middle } => {
            TriodOutcome::Degenerate { middle: perm.iter().position(|&p| p == *middle).unwrap() }
        }
        other => other.clone(),
    }
}

const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn tree_and_triple() -> impl Strategy<Value = (MarkedTree, [usize; 3])> {
    let pool = trees(7);
    (0..pool.len()).prop_flat_map(move |i| {
        let t = pool[i].clone();
        let n = t.len();
        (Just(t), prop::array::uniform3(0..n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn triod_is_permutation_equivariant((t, [a, b, c]) in tree_and_triple()) {
        prop_assume!(a != b && b != c && a != c);
        let pts = [t.itinerary(a), t.itinerary(b), t.itinerary(c)];
        let base = triod_auto(pts[0], pts[1], pts[2], t.nu()).unwrap().outcome;
        for perm in PERMS {
            let out = triod_auto(pts[perm[0]], pts[perm[1]], pts[perm[2]], t.nu()).unwrap().outcome;
            prop_assert_eq!(out, relabel(&base, perm));
        }
    }

    #[test]
    fn triod_agrees_with_the_graph((t, [a, b, c]) in tree_and_triple()) {
        prop_assume!(a != b && b != c && a != c);
        let on_path = t.path(a, c).unwrap().contains(&b);
        prop_assert_eq!(between(t.itinerary(a), t.itinerary(b), t.itinerary(c), t.nu()).unwrap(), on_path);
    }

    #[test]
    fn images_of_vertices_are_vertices((t, [a, _, _]) in tree_and_triple()) {
        prop_assert!(t.index_of(&t.itinerary(a).shift()).is_some());
    }
}
