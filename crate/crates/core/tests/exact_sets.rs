mod common;

use proptest::prelude::*;

use sepmodels::{IntervalSet, Rat};

fn rat() -> impl Strategy<Value = Rat> {
    (1i64..=12).prop_flat_map(|d| (0..=d).prop_map(move |n| Rat::new(n, d)))
}

fn raw_pairs() -> impl Strategy<Value = Vec<(Rat, Rat)>> {
    prop::collection::vec((rat(), rat()), 0..5)
        .prop_map(|v| v.into_iter().map(|(a, b)| if a <= b { (a, b) } else { (b, a) }).collect())
}

fn iset() -> impl Strategy<Value = IntervalSet> {
    raw_pairs().prop_map(|v| IntervalSet::from_pairs(v).unwrap())
}

fn grid(sets: &[&IntervalSet]) -> Vec<Rat> {
    common::tiles(&common::breaks(sets.iter().copied()))
        .into_iter()
        .map(|(_, _, m)| m)
        .collect()
}

proptest! {
    #[test]
    fn inclusion_exclusion(a in iset(), b in iset()) {
        prop_assert_eq!(a.union(&b).measure() + a.intersect(&b).measure(), a.measure() + b.measure());
    }

    #[test]
    fn complement_laws(a in iset()) {
        prop_assert!(a.union(&a.complement()).is_full());
        prop_assert!(a.intersect(&a.complement()).is_empty());
        prop_assert_eq!(a.complement().complement(), a.clone());
        prop_assert_eq!(a.complement().measure(), Rat::one() - a.measure());
    }

    #[test]
    fn measure_is_monotone(a in iset(), b in iset()) {
        let meet = a.intersect(&b);
        prop_assert!(meet.is_subset(&b));
        prop_assert!(meet.measure() <= b.measure());
        if a.is_subset(&b) {
            prop_assert_eq!(meet, a.clone());
            prop_assert!(a.measure() <= b.measure());
        }
    }

    /// Splitting, duplicating, shuffling and padding with degenerate pairs
    /// gives the same canonical representation.
    #[test]
    fn canonical_representation(raw in raw_pairs(), cut in rat(), seed in any::<u64>()) {
        let a = IntervalSet::from_pairs(raw.clone()).unwrap();
        let mut noisy = Vec::new();
        for (lo, hi) in &raw {
            if lo < &cut && &cut < hi {
                noisy.push((lo.clone(), cut.clone()));
                noisy.push((cut.clone(), hi.clone()));
            } else {
                noisy.push((lo.clone(), hi.clone()));
            }
            noisy.push((lo.clone(), hi.clone()));
            noisy.push((cut.clone(), cut.clone()));
        }
        let k = noisy.len().max(1);
        noisy.rotate_left((seed as usize) % k);
        noisy.reverse();
        let b = IntervalSet::from_pairs(noisy).unwrap();
        prop_assert!(a.ae_eq(&b));
        prop_assert_eq!(a.pieces(), b.pieces());
        prop_assert!(a.symm_diff(&b).is_empty());
    }

    #[test]
    fn distinct_sets_differ_on_grid(a in iset(), b in iset()) {
        let differ = grid(&[&a, &b]).iter().any(|m| a.contains(m) != b.contains(m));
        prop_assert_eq!(a.ae_eq(&b), !differ);
        prop_assert_eq!(a == b, !differ);
    }

    #[test]
    fn operations_agree_with_grid_oracle(a in iset(), b in iset()) {
        let g = grid(&[&a, &b]);
        let b_ = common::breaks([&a, &b]);
        let check = |s: &IntervalSet, f: &dyn Fn(bool, bool) -> bool| -> bool {
            g.iter().all(|m| s.contains(m) == f(a.contains(m), b.contains(m)))
                && s.measure() == common::grid_measure(&b_, |m| f(a.contains(m), b.contains(m)))
        };
        prop_assert!(check(&a.union(&b), &|x, y| x || y));
        prop_assert!(check(&a.intersect(&b), &|x, y| x && y));
        prop_assert!(check(&a.difference(&b), &|x, y| x && !y));
        prop_assert!(check(&a.symm_diff(&b), &|x, y| x != y));
        prop_assert!(check(&a.complement(), &|x, _| !x));
        prop_assert_eq!(a.measure(), common::grid_measure(&b_, |m| a.contains(m)));
        prop_assert_eq!(a.is_subset(&b), g.iter().all(|m| !a.contains(m) || b.contains(m)));
        prop_assert_eq!(a.is_disjoint(&b), g.iter().all(|m| !(a.contains(m) && b.contains(m))));
    }

    /// Pieces are sorted, nonempty, and separated by gaps.
    #[test]
    fn canonical_form_shape(a in iset(), b in iset()) {
        for s in [a.union(&b), a.intersect(&b), a.complement()] {
            for p in s.pieces() {
                prop_assert!(p.lo() < p.hi());
            }
            for w in s.pieces().windows(2) {
                prop_assert!(w[0].hi() < w[1].lo());
            }
        }
    }

    #[test]
    fn json_round_trip(a in iset()) {
        let text = serde_json::to_string(&a).unwrap();
        let back: IntervalSet = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn malformed_inputs_are_rejected() {
    let r = |n, d| Rat::new(n, d);
    assert!(IntervalSet::from_pairs([(r(1, 2), r(1, 3))]).is_err());
    assert!(IntervalSet::from_pairs([(r(-1, 2), r(1, 3))]).is_err());
    assert!(IntervalSet::from_pairs([(r(0, 1), r(3, 2))]).is_err());
    assert!(serde_json::from_str::<IntervalSet>(r#"[["1/2","1/0"]]"#).is_err());
    assert!(serde_json::from_str::<IntervalSet>(r#"[["x","1"]]"#).is_err());
    assert!(IntervalSet::from_pairs([(r(1, 3), r(1, 3))]).unwrap().is_empty());
}
