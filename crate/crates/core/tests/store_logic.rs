use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use sepmodels::gen;
use sepmodels::group::{act_on_nom_store, act_on_nom_subst};
use sepmodels::store::{
    enc_shape, sat_store_m1, sat_store_m2, translate_store_m1_to_m2, LocSubst, NomStore, NomSubst, Shape, Valuation,
};

fn vars() -> Vec<String> {
    ["x", "y", "z"].iter().map(|s| s.to_string()).collect()
}

proptest! {
    #[test]
    fn translation_preserves_satisfaction(seed in any::<u64>()) {
        let mut g = gen::rng(seed);
        let (s, gamma) = gen::store_m1(&mut g, 6, 3, &vars());
        let p = gen::store_prop(&mut g, &vars(), 3, 4);
        let (s2, g2) = translate_store_m1_to_m2(&s, &gamma).unwrap();
        prop_assert_eq!(sat_store_m1(&s, &gamma, &p).unwrap(), sat_store_m2(&s2, &g2, &p).unwrap());
        let enc = enc_shape(s.shape());
        for (l, v) in s.assignment() {
            prop_assert_eq!(s2.get(enc[l]), Some(*v));
        }
        prop_assert_eq!(s2.len(), s.assignment().len());
    }

    #[test]
    fn permutation_equivariance(seed in any::<u64>()) {
        let mut g = gen::rng(seed);
        let s = gen::nom_store(&mut g, 6, 3);
        let gamma: NomSubst = vars().into_iter().map(|x| (x, g.random_range(0..8))).collect();
        let p = gen::store_prop(&mut g, &vars(), 3, 4);
        let pi = gen::fin_perm(&mut g, 10);
        prop_assert_eq!(
            sat_store_m2(&s, &gamma, &p).unwrap(),
            sat_store_m2(&act_on_nom_store(&s, &pi), &act_on_nom_subst(&gamma, &pi), &p).unwrap()
        );
    }

    #[test]
    fn renaming_locations(seed in any::<u64>()) {
        let mut g = gen::rng(seed);
        let (s, gamma) = gen::store_m1(&mut g, 6, 3, &vars());
        let p = gen::store_prop(&mut g, &vars(), 3, 4);
        let mut fresh: Vec<String> = (0..s.shape().len()).map(|i| format!("loc{i}")).collect();
        fresh.shuffle(&mut g);
        let f: BTreeMap<&String, String> = s.shape().iter().zip(fresh).collect();
        let shape: Shape = f.values().cloned().collect();
        let assignment = s.assignment().iter().map(|(l, v)| (f[l].clone(), *v)).collect();
        let renamed = Valuation::new(shape, assignment).unwrap();
        let gamma2: LocSubst = gamma.iter().map(|(x, l)| (x.clone(), f[l].clone())).collect();
        prop_assert_eq!(sat_store_m1(&s, &gamma, &p).unwrap(), sat_store_m1(&renamed, &gamma2, &p).unwrap());
    }

    /// Adding unused locations keeps satisfaction; removing locations outside
    /// the store's domain and the substitution's image does not change it.
    #[test]
    fn extension_and_restriction(seed in any::<u64>(), extra in 0usize..3) {
        let mut g = gen::rng(seed);
        let (s, gamma) = gen::store_m1(&mut g, 5, 3, &vars());
        let p = gen::store_prop(&mut g, &vars(), 3, 4);
        let base = sat_store_m1(&s, &gamma, &p).unwrap();

        let mut wider = s.shape().clone();
        wider.extend((0..extra).map(|i| format!("new{i}")));
        let extended = Valuation::new(wider, s.assignment().clone()).unwrap();
        if base {
            prop_assert!(sat_store_m1(&extended, &gamma, &p).unwrap());
        }
        prop_assert_eq!(sat_store_m1(&extended, &gamma, &p).unwrap(), base);

        let used: Shape = s.assignment().keys().chain(gamma.values()).cloned().collect();
        let narrowed: Shape = s.shape().iter().filter(|l| used.contains(*l) || g.random_bool(0.5)).cloned().collect();
        let restricted = Valuation::new(narrowed, s.assignment().clone()).unwrap();
        prop_assert_eq!(sat_store_m1(&restricted, &gamma, &p).unwrap(), base);
    }

    #[test]
    fn satisfaction_is_monotone(seed in any::<u64>()) {
        let mut g = gen::rng(seed);
        let s = gen::nom_store(&mut g, 5, 3);
        let more = gen::nom_store(&mut g, 8, 3);
        let bigger = NomStore::from_map(more.iter().chain(s.iter()).collect());
        prop_assert!(s.is_substore(&bigger));
        let gamma: NomSubst = vars().into_iter().map(|x| (x, g.random_range(0..6))).collect();
        let p = gen::store_prop(&mut g, &vars(), 3, 4);
        if sat_store_m2(&s, &gamma, &p).unwrap() {
            prop_assert!(sat_store_m2(&bigger, &gamma, &p).unwrap());
        }
    }
}

#[test]
fn star_needs_disjoint_cells() {
    let s = NomStore::from_map([(0, 8), (1, 3)].into());
    let gamma: NomSubst = [("x".to_string(), 0), ("y".to_string(), 0)].into();
    let p = sepmodels::dsl::parse_store_prop("x |-> 8 * y |-> 8").unwrap();
    assert!(!sat_store_m2(&s, &gamma, &p).unwrap());
    let q = sepmodels::dsl::parse_store_prop("x |-> 8 /\\ y |-> 8").unwrap();
    assert!(sat_store_m2(&s, &gamma, &q).unwrap());
}
