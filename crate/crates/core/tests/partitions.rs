mod common;

use proptest::prelude::*;

use sepmodels::gen::{self, Gen};
use sepmodels::partition::{common_refinement, dicom, dorder, is_coarser, parteq};
use sepmodels::{IntervalSet, MPartition, MeasuredPartition, Rat};

/// Three small measured partitions, jointly independent half of the time.
fn triple(g: &mut Gen) -> Vec<MeasuredPartition> {
    use rand::Rng;
    if g.random_bool(0.5) {
        gen::independent_family(g, 3, 3)
    } else {
        (0..3).map(|_| gen::measured_partition(g, 3)).collect()
    }
}

proptest! {
    #[test]
    fn dicom_commutes(seed in any::<u64>()) {
        let t = triple(&mut gen::rng(seed));
        prop_assert_eq!(dicom(&t[0], &t[1]), dicom(&t[1], &t[0]));
    }

    #[test]
    fn dicom_associates_kleene(seed in any::<u64>()) {
        let t = triple(&mut gen::rng(seed));
        let left = dicom(&t[0], &t[1]).and_then(|ab| dicom(&ab, &t[2]));
        let right = dicom(&t[1], &t[2]).and_then(|bc| dicom(&t[0], &bc));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn dicom_unit(seed in any::<u64>()) {
        let p = gen::measured_partition(&mut gen::rng(seed), 5);
        prop_assert_eq!(dicom(&p, &MeasuredPartition::unit()), Some(p.clone()));
        prop_assert_eq!(dicom(&MeasuredPartition::unit(), &p), Some(p.clone()));
    }

    /// The brute-force search finds exactly the computed combination, and
    /// nothing when the pair is not joinable.
    #[test]
    fn dicom_is_the_unique_candidate(seed in any::<u64>()) {
        let t = triple(&mut gen::rng(seed));
        let (p, q) = (&t[0], &t[1]);
        prop_assume!(p.len() * q.len() <= 9);
        let found = common::dicom_candidates(p, q);
        match dicom(p, q) {
            Some(j) => prop_assert_eq!(found, vec![j]),
            None => prop_assert!(found.is_empty()),
        }
    }

    /// Cells of the combination are the nonempty pairwise intersections,
    /// checked by membership on the midpoint grid.
    #[test]
    fn dicom_cells_on_grid(seed in any::<u64>()) {
        let t = triple(&mut gen::rng(seed));
        let (p, q) = (&t[0], &t[1]);
        if let Some(j) = dicom(p, q) {
            let b = common::breaks(p.cells().iter().chain(q.cells()));
            for (_, _, m) in common::tiles(&b) {
                let i = p.partition().cell_of(&m).unwrap();
                let k = q.partition().cell_of(&m).unwrap();
                let c = j.partition().cell_of(&m).unwrap();
                prop_assert_eq!(&j.masses()[c], &(&p.masses()[i] * &q.masses()[k]));
                for (_, _, m2) in common::tiles(&b) {
                    let same = p.partition().cell_of(&m2) == Some(i) && q.partition().cell_of(&m2) == Some(k);
                    prop_assert_eq!(j.cells()[c].contains(&m2), same);
                }
            }
        }
    }

    #[test]
    fn dicom_is_monotone(seed in any::<u64>()) {
        let mut g = gen::rng(seed);
        let t = triple(&mut g);
        if let Some(j) = dicom(&t[0], &t[1]) {
            let p0 = gen::coarsening(&mut g, &t[0]);
            let q0 = gen::coarsening(&mut g, &t[1]);
            prop_assert!(dorder(&p0, &t[0]) && dorder(&q0, &t[1]));
            let below = dicom(&p0, &q0);
            prop_assert!(below.is_some());
            prop_assert!(dorder(&below.unwrap(), &j));
            prop_assert!(dorder(&t[0], &j) && dorder(&t[1], &j));
        }
    }

    #[test]
    fn dorder_is_a_partial_order(seed in any::<u64>()) {
        let mut g = gen::rng(seed);
        let p = gen::measured_partition(&mut g, 5);
        let q = gen::coarsening(&mut g, &p);
        let r = gen::coarsening(&mut g, &q);
        let other = gen::measured_partition(&mut g, 5);
        prop_assert!(dorder(&p, &p));
        prop_assert!(dorder(&r, &p));
        prop_assert!(dorder(&MeasuredPartition::unit(), &p));
        prop_assert_eq!(dorder(&q, &p) && dorder(&p, &q), p == q);
        if dorder(&p, &other) && dorder(&other, &p) {
            prop_assert_eq!(&p, &other);
        }
    }

    #[test]
    fn common_refinement_is_least_upper_bound(seed in any::<u64>()) {
        let mut g = gen::rng(seed);
        let a = gen::partition(&mut g, 4);
        let b = gen::partition(&mut g, 4);
        let r = common_refinement(&a, &b);
        prop_assert!(is_coarser(&a, &r) && is_coarser(&b, &r));
        let cells: Vec<IntervalSet> = a
            .cells()
            .iter()
            .flat_map(|x| b.cells().iter().map(move |y| x.intersect(y)))
            .filter(|c| !c.is_empty())
            .collect();
        prop_assert!(parteq(&r, &MPartition::new(cells).unwrap()));
        prop_assert!(is_coarser(&MPartition::unit(), &a));
        prop_assert_eq!(is_coarser(&a, &b) && is_coarser(&b, &a), a == b);
    }

    #[test]
    fn coarsening_decomposes(seed in any::<u64>()) {
        let mut g = gen::rng(seed);
        let a = gen::partition(&mut g, 5);
        let grouping = gen::grouping(&mut g, a.len(), a.len());
        let c = a.coarsen(&grouping).unwrap();
        prop_assert!(is_coarser(&c, &a));
        for cell in c.cells() {
            let parts = a.decompose(cell).unwrap();
            let total: Rat = parts.iter().map(|&i| a.cells()[i].measure()).sum();
            prop_assert_eq!(total, cell.measure());
        }
    }

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let p = gen::measured_partition(&mut gen::rng(seed), 4);
        let back: MeasuredPartition = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        prop_assert_eq!(back, p);
    }
}

#[test]
fn invalid_partitions_are_rejected() {
    let half = || IntervalSet::interval(Rat::zero(), Rat::new(1, 2)).unwrap();
    assert!(MPartition::new(vec![half()]).is_err());
    assert!(MPartition::new(vec![half(), IntervalSet::full()]).is_err());
    assert!(MPartition::new(vec![half(), half().complement(), IntervalSet::empty()]).is_err());
    assert!(MeasuredPartition::new(vec![half(), half().complement()], vec![Rat::new(1, 2), Rat::new(1, 3)]).is_err());
    assert!(MeasuredPartition::new(vec![half(), half().complement()], vec![Rat::new(3, 2), Rat::new(-1, 2)]).is_err());
    assert!(MeasuredPartition::new(vec![half(), half().complement()], vec![Rat::zero(), Rat::one()]).is_ok());
}
