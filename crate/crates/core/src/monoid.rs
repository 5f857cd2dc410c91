//! Affine resource monoids and a randomized law checker.
//!
//! A resource monoid is a poset with least element `unit` and a partial,
//! commutative, associative join with unit `unit` that is monotone in both
//! arguments. Three instances are provided (stores under disjoint union,
//! measured partitions under independent combination, probability spaces on a
//! fixed sample space under independent combination) plus a broken canary.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, RngCore};
use serde::Serialize;

use crate::gen::{self, Gen};
use crate::partition::{dicom, dorder, product_refinement_unchecked, MeasuredPartition};
use crate::prob::{subspace_leq, FinOmega, FinProbSpace};
use crate::rational::Rat;
use crate::store::NomStore;

pub trait ResourceMonoid {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn name(&self) -> &str;
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn unit(&self) -> Self::Elem;
    fn pjoin(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    /// `n` elements, biased toward being pairwise joinable.
    fn sample_family(&self, g: &mut Gen, n: usize) -> Vec<Self::Elem>;
    /// An element below `x`.
    fn sample_below(&self, g: &mut Gen, x: &Self::Elem) -> Self::Elem;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: String,
    pub elements: Vec<String>,
    pub seed: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub cases: usize,
    pub violations: Vec<Violation>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(mut self, other: LawReport) -> LawReport {
        self.cases += other.cases;
        self.violations.extend(other.violations);
        self
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} cases, {} violations", self.cases, self.violations.len())
    }
}

struct Case<'a, M: ResourceMonoid + ?Sized> {
    m: &'a M,
    seed: u64,
    out: Vec<Violation>,
}

impl<M: ResourceMonoid + ?Sized> Case<'_, M> {
    fn check(&mut self, ok: bool, law: &str, elements: &[&M::Elem]) {
        if !ok {
            self.out.push(Violation {
                law: law.to_string(),
                elements: elements.iter().map(|e| format!("{e:?}")).collect(),
                seed: self.seed,
            });
        }
    }

    fn run(&mut self, g: &mut Gen) {
        let m = self.m;
        let fam = m.sample_family(g, 3);
        let (x, y, z) = (&fam[0], &fam[1], &fam[2]);
        let e = m.unit();

        self.check(m.pjoin(&e, x).as_ref() == Some(x), "unit", &[x]);
        self.check(m.pjoin(x, &e).as_ref() == Some(x), "unit", &[x]);

        let xy = m.pjoin(x, y);
        let yx = m.pjoin(y, x);
        self.check(xy == yx, "commutativity", &[x, y]);

        if let Some(xy) = &xy {
            if let Some(xy_z) = m.pjoin(xy, z) {
                let x_yz = m.pjoin(y, z).and_then(|yz| m.pjoin(x, &yz));
                self.check(x_yz.as_ref() == Some(&xy_z), "associativity", &[x, y, z]);
            }
        }

        self.check(m.leq(x, x), "reflexivity", &[x]);
        let x1 = m.sample_below(g, x);
        let x2 = m.sample_below(g, &x1);
        self.check(m.leq(&x1, x), "sample below", &[&x1, x]);
        if m.leq(&x1, x) && m.leq(x, &x1) {
            self.check(&x1 == x, "antisymmetry", &[&x1, x]);
        }
        if m.leq(x, y) && m.leq(y, x) {
            self.check(x == y, "antisymmetry", &[x, y]);
        }
        if m.leq(&x2, &x1) && m.leq(&x1, x) {
            self.check(m.leq(&x2, x), "transitivity", &[&x2, &x1, x]);
        }
        if m.leq(x, y) && m.leq(y, z) {
            self.check(m.leq(x, z), "transitivity", &[x, y, z]);
        }

        self.check(m.leq(&e, x), "least element", &[x]);
        if let Some(xy) = &xy {
            self.check(m.leq(&e, xy), "least element", &[xy]);
            let y1 = m.sample_below(g, y);
            match m.pjoin(&x1, &y1) {
                Some(j) => self.check(m.leq(&j, xy), "monotonicity", &[&x1, &y1, x, y]),
                None => self.check(false, "monotonicity", &[&x1, &y1, x, y]),
            }
            match m.pjoin(&x1, y) {
                Some(j) => self.check(m.leq(&j, xy), "monotonicity", &[&x1, y, x, y]),
                None => self.check(false, "monotonicity", &[&x1, y, x, y]),
            }
        }
    }
}

/// Run `cases` randomized law checks. Case `i` draws from its own generator
/// seeded from a stream keyed by `seed`, so reports are reproducible and a
/// violation's seed replays that single case via [`check_case`].
pub fn check_laws<M: ResourceMonoid + ?Sized>(m: &M, seed: u64, cases: usize) -> LawReport {
    let mut base = gen::rng(seed);
    (0..cases)
        .map(|_| check_case(m, base.next_u64()))
        .fold(LawReport::default(), LawReport::merge)
}

pub fn check_case<M: ResourceMonoid + ?Sized>(m: &M, case_seed: u64) -> LawReport {
    let mut case = Case { m, seed: case_seed, out: Vec::new() };
    case.run(&mut gen::rng(case_seed));
    LawReport { cases: 1, violations: case.out }
}

/// Finite stores on ℕ under disjoint union.
pub struct StoreRM;

pub fn store_rm() -> StoreRM {
    StoreRM
}

impl ResourceMonoid for StoreRM {
    type Elem = NomStore;

    fn name(&self) -> &str {
        "store"
    }

    fn leq(&self, a: &NomStore, b: &NomStore) -> bool {
        a.is_substore(b)
    }

    fn unit(&self) -> NomStore {
        NomStore::default()
    }

    fn pjoin(&self, a: &NomStore, b: &NomStore) -> Option<NomStore> {
        a.disjoint_union(b)
    }

    fn sample_family(&self, g: &mut Gen, n: usize) -> Vec<NomStore> {
        if g.random_bool(0.5) {
            // Split one store into n disjoint pieces.
            let whole = gen::nom_store(g, 8, 4);
            let mut parts = vec![std::collections::BTreeMap::new(); n];
            for (k, v) in whole.iter() {
                parts[g.random_range(0..n)].insert(k, v);
            }
            parts.into_iter().map(NomStore::from_map).collect()
        } else {
            (0..n).map(|_| gen::nom_store(g, 5, 3)).collect()
        }
    }

    fn sample_below(&self, g: &mut Gen, x: &NomStore) -> NomStore {
        NomStore::from_map(x.iter().filter(|_| g.random_bool(0.6)).collect())
    }
}

/// Measured partitions of `[0,1)` under independent combination.
pub struct PartitionRM;

pub fn partition_rm() -> PartitionRM {
    PartitionRM
}

fn partition_family(g: &mut Gen, n: usize) -> Vec<MeasuredPartition> {
    match g.random_range(0..4) {
        0 | 1 => {
            let mut fam = gen::independent_family(g, n, 3);
            fam.shuffle(g);
            fam
        }
        2 => {
            let mut fam = gen::independent_family(g, 2, 3);
            fam.extend((2..n).map(|_| gen::measured_partition(g, 4)));
            fam.shuffle(g);
            fam
        }
        _ => (0..n).map(|_| gen::measured_partition(g, 4)).collect(),
    }
}

impl ResourceMonoid for PartitionRM {
    type Elem = MeasuredPartition;

    fn name(&self) -> &str {
        "partition"
    }

    fn leq(&self, a: &MeasuredPartition, b: &MeasuredPartition) -> bool {
        dorder(a, b)
    }

    fn unit(&self) -> MeasuredPartition {
        MeasuredPartition::unit()
    }

    fn pjoin(&self, a: &MeasuredPartition, b: &MeasuredPartition) -> Option<MeasuredPartition> {
        dicom(a, b)
    }

    fn sample_family(&self, g: &mut Gen, n: usize) -> Vec<MeasuredPartition> {
        partition_family(g, n)
    }

    fn sample_below(&self, g: &mut Gen, x: &MeasuredPartition) -> MeasuredPartition {
        gen::coarsening(g, x)
    }
}

/// A deliberately broken variant of [`PartitionRM`]: the join is the common
/// refinement with product masses, always defined, with no check that empty
/// intersections carry zero product mass. The law checker must reject it.
pub struct CanaryPartitionRM;

pub fn canary_partition_rm() -> CanaryPartitionRM {
    CanaryPartitionRM
}

impl ResourceMonoid for CanaryPartitionRM {
    type Elem = MeasuredPartition;

    fn name(&self) -> &str {
        "partition-canary"
    }

    fn leq(&self, a: &MeasuredPartition, b: &MeasuredPartition) -> bool {
        dorder(a, b)
    }

    fn unit(&self) -> MeasuredPartition {
        MeasuredPartition::unit()
    }

    fn pjoin(&self, a: &MeasuredPartition, b: &MeasuredPartition) -> Option<MeasuredPartition> {
        Some(product_refinement_unchecked(a, b))
    }

    fn sample_family(&self, g: &mut Gen, n: usize) -> Vec<MeasuredPartition> {
        partition_family(g, n)
    }

    fn sample_below(&self, g: &mut Gen, x: &MeasuredPartition) -> MeasuredPartition {
        gen::coarsening(g, x)
    }
}

/// Probability spaces on a fixed finite sample space, ordered by subspace,
/// joined by independent combination.
pub struct FinProbRM {
    omega: FinOmega,
}

pub fn fin_prob_rm(omega: FinOmega) -> FinProbRM {
    FinProbRM { omega }
}

/// Common refinement of two spaces on the same sample space with product
/// masses; `None` when an empty intersection of atoms has nonzero product
/// mass (or the sample spaces differ).
pub fn fin_prob_join(p: &FinProbSpace, q: &FinProbSpace) -> Option<FinProbSpace> {
    if p.omega() != q.omega() {
        return None;
    }
    let mut atoms = Vec::new();
    let mut masses = Vec::new();
    for (a, ma) in p.atoms().iter().zip(p.masses()) {
        for (b, mb) in q.atoms().iter().zip(q.masses()) {
            let both: Vec<usize> = a.iter().copied().filter(|i| b.contains(i)).collect();
            let m = ma * mb;
            if both.is_empty() {
                if !m.is_zero() {
                    return None;
                }
            } else {
                atoms.push(both);
                masses.push(m);
            }
        }
    }
    Some(FinProbSpace::new(p.omega().clone(), atoms, masses).expect("independent combination is a probability space"))
}

impl FinProbRM {
    pub fn omega(&self) -> &FinOmega {
        &self.omega
    }

    fn random_space(&self, g: &mut Gen) -> FinProbSpace {
        let atoms = gen::grouping(g, self.omega.len(), 4);
        let masses = gen::masses(g, atoms.len(), true);
        FinProbSpace::new(self.omega.clone(), atoms, masses).unwrap()
    }

    /// `n` mutually independent spaces built from product masses on tuples of
    /// factor atoms, each kept tuple owning at least one sample point.
    fn independent_spaces(&self, g: &mut Gen, n: usize) -> Vec<FinProbSpace> {
        let points = self.omega.len();
        let mut sizes: Vec<usize> = (0..n).map(|_| g.random_range(1..=3)).collect();
        while sizes.iter().product::<usize>() > points {
            let big: Vec<usize> = (0..n).filter(|&f| sizes[f] > 1).collect();
            sizes[big[g.random_range(0..big.len())]] -= 1;
        }
        let ms: Vec<Vec<Rat>> = sizes.iter().map(|&k| gen::masses(g, k, true)).collect();
        let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
        for &k in &sizes {
            tuples = tuples
                .into_iter()
                .flat_map(|t| (0..k).map(move |i| [t.clone(), vec![i]].concat()))
                .collect();
        }
        let positive = |t: &[usize]| t.iter().enumerate().all(|(f, &i)| !ms[f][i].is_zero());
        let mut kept: Vec<Vec<usize>> = tuples
            .iter()
            .filter(|t| positive(t) || g.random_bool(0.5))
            .cloned()
            .collect();
        for (f, &k) in sizes.iter().enumerate() {
            for i in 0..k {
                if !kept.iter().any(|t| t[f] == i) {
                    kept.push(tuples.iter().find(|t| t[f] == i).unwrap().clone());
                }
            }
        }
        let kept: Vec<Vec<usize>> = kept.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let mut owner: Vec<usize> = (0..kept.len()).collect();
        owner.extend((kept.len()..points).map(|_| g.random_range(0..kept.len())));
        owner.shuffle(g);
        (0..n)
            .map(|f| {
                let mut atoms = vec![Vec::new(); sizes[f]];
                for (pt, &o) in owner.iter().enumerate() {
                    atoms[kept[o][f]].push(pt);
                }
                FinProbSpace::new(self.omega.clone(), atoms, ms[f].clone()).unwrap()
            })
            .collect()
    }
}

impl ResourceMonoid for FinProbRM {
    type Elem = FinProbSpace;

    fn name(&self) -> &str {
        "finprob"
    }

    fn leq(&self, a: &FinProbSpace, b: &FinProbSpace) -> bool {
        subspace_leq(a, b).unwrap_or(false)
    }

    fn unit(&self) -> FinProbSpace {
        FinProbSpace::trivial(&self.omega)
    }

    fn pjoin(&self, a: &FinProbSpace, b: &FinProbSpace) -> Option<FinProbSpace> {
        fin_prob_join(a, b)
    }

    fn sample_family(&self, g: &mut Gen, n: usize) -> Vec<FinProbSpace> {
        match g.random_range(0..4) {
            0 | 1 => {
                let mut fam = self.independent_spaces(g, n);
                fam.shuffle(g);
                fam
            }
            2 => {
                let mut fam = self.independent_spaces(g, 2);
                fam.extend((2..n).map(|_| self.random_space(g)));
                fam.shuffle(g);
                fam
            }
            _ => (0..n).map(|_| self.random_space(g)).collect(),
        }
    }

    fn sample_below(&self, g: &mut Gen, x: &FinProbSpace) -> FinProbSpace {
        let grp = gen::grouping(g, x.num_atoms(), x.num_atoms());
        x.coarsen(&grp).unwrap()
    }
}
