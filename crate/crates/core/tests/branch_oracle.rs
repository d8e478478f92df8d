mod support;

use std::collections::BTreeMap;

use proptest::prelude::*;

use kneadlab_core::{branch, compare, is_primitive, truncations, BranchCase, BranchKind, OrderRelation};
use support::*;

#[test]
fn census_pairs_match_the_brute_force_lower_sets() {
    let table = OrderTable::new(census(5));
    let pool = &table.pool;
    let mut cases: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, a) in pool.iter().enumerate() {
        for b in &pool[i..] {
            *cases.entry(check_branch(a, b, &table, 16).unwrap()).or_default() += 1;
        }
    }
    assert!(cases["I_STAR"] > 0 && cases["COMPARABLE"] > 0, "{cases:?}");
}

#[test]
fn branch_is_symmetric_up_to_orientation() {
    let pool = census(5);
    for a in &pool {
        for b in &pool {
            let (x, y) = (branch(a, b, 16).unwrap(), branch(b, a, 16).unwrap());
            assert_eq!((x.kind, &x.mu, x.case), (y.kind, &y.mu, y.case), "{a} {b}");
            if let (Some(wx), Some(wy)) = (x.witness, y.witness) {
                assert_eq!((wx.left, wx.right), (wy.right, wy.left), "{a} {b}");
            }
        }
    }
}

fn pair() -> impl Strategy<Value = (kneadlab_core::Seq, kneadlab_core::Seq)> {
    let pool = census(7);
    let n = pool.len();
    (0..n, 0..n).prop_map(move |(i, j)| (pool[i].clone(), pool[j].clone()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn branch_point_lies_below_both((a, b) in pair()) {
        let r = branch(&a, &b, 16).unwrap();
        let rel = compare(&a, &b, 16).unwrap();
        match r.kind {
            BranchKind::Comparable => prop_assert_eq!(r.relation, Some(rel)),
            BranchKind::BranchAt => {
                prop_assert_eq!(rel, OrderRelation::Incomparable);
                let mu = r.mu.unwrap();
                if r.case == Some(BranchCase::IiPrimitive) {
                    // The arcs meet in [*̄, μ[ and μ itself is on only one of them.
                    // μ may be an input, e.g. 10* against a non-admissible 10110*.
                    prop_assert!(is_primitive(&mu).unwrap());
                    prop_assert!(le(&mu, &a) != le(&mu, &b));
                } else if mu == a || mu == b {
                    prop_assert!(false, "branch point {} is an input outside case II", mu);
                } else if mu.is_star_periodic() {
                    prop_assert!(le(&mu, &a) && le(&mu, &b));
                } else {
                    // Order below a preperiodic point is only certified through truncations.
                    for m in truncations(&mu, 16) {
                        prop_assert!(le(&m, &a) && le(&m, &b), "truncation {} of {}", m, mu);
                    }
                }
            }
            BranchKind::Undetermined => prop_assert!(false, "undetermined for {} {}", a, b),
        }
    }
}
