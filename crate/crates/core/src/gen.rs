//! Seeded random instance generators.
//!
//! All generators draw from a [`Gen`] (ChaCha8), so a seed determines the
//! instance on every platform. Sizes are kept small: the decision procedures
//! enumerate set partitions and store splits.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::group::{AffinePiece, FinPerm, PwAffine};
use crate::interval_set::{Interval, IntervalSet};
use crate::partition::{MPartition, MeasuredPartition};
use crate::prob::{Decoder, FinOmega, FinProbSpace, Pmf, RandSubst1, RandVar1};
use crate::prop::{Dist, PointsTo, ProbProp, Prop, StoreProp};
use crate::rational::Rat;
use crate::setpart::{self, Grouping};
use crate::store::{LocSubst, NomStore, Shape, Valuation};

pub type Gen = ChaCha8Rng;

pub fn rng(seed: u64) -> Gen {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `k` consecutive intervals tiling `[0,1)` with random rational breakpoints.
pub fn tiling(g: &mut Gen, k: usize) -> Vec<Interval> {
    assert!(k > 0);
    let denom = g.random_range((k as i64 + 1)..=(2 * k as i64).max(30));
    let mut cuts: Vec<i64> = (1..denom).collect();
    cuts.shuffle(g);
    let mut cuts: Vec<Rat> = cuts[..k - 1].iter().map(|&n| Rat::new(n, denom)).collect();
    cuts.sort();
    let mut pts = vec![Rat::zero()];
    pts.extend(cuts);
    pts.push(Rat::one());
    pts.windows(2)
        .map(|w| Interval::new(w[0].clone(), w[1].clone()).unwrap())
        .collect()
}

/// Random labels in `0..blocks` for `n` items, every label used at least once.
fn surjective_labels(g: &mut Gen, n: usize, blocks: usize) -> Vec<usize> {
    assert!(blocks >= 1 && blocks <= n);
    let mut labels: Vec<usize> = (0..blocks).collect();
    labels.extend((blocks..n).map(|_| g.random_range(0..blocks)));
    labels.shuffle(g);
    labels
}

/// A random set partition of `{0..n-1}` into at most `max_blocks` blocks.
pub fn grouping(g: &mut Gen, n: usize, max_blocks: usize) -> Grouping {
    if n == 0 {
        return Vec::new();
    }
    let blocks = g.random_range(1..=max_blocks.min(n));
    setpart::from_labels(&surjective_labels(g, n, blocks))
}

/// Random partition of `[0,1)` with between 1 and `max_cells` cells, some of
/// them non-contiguous.
pub fn partition(g: &mut Gen, max_cells: usize) -> MPartition {
    let cells = g.random_range(1..=max_cells);
    let tiles = g.random_range(cells..=2 * cells);
    let labels = surjective_labels(g, tiles, cells);
    let iv = tiling(g, tiles);
    let mut sets = vec![Vec::new(); cells];
    for (t, l) in iv.into_iter().zip(labels) {
        sets[l].push(t);
    }
    MPartition::new(sets.into_iter().map(IntervalSet::from_intervals).collect()).unwrap()
}

/// Random decoder for `omega`: fibers are unions of random tiles.
pub fn decoder(g: &mut Gen, omega: &FinOmega) -> Decoder {
    let n = omega.len();
    let tiles = g.random_range(n..=2 * n);
    let labels = surjective_labels(g, tiles, n);
    let mut fibers = vec![Vec::new(); n];
    for (t, l) in tiling(g, tiles).into_iter().zip(labels) {
        fibers[l].push(t);
    }
    Decoder::new(omega.clone(), fibers.into_iter().map(IntervalSet::from_intervals).collect()).unwrap()
}

/// `n` nonnegative rationals summing to one. With `allow_zero`, entries are
/// zero with probability 1/5 (at least one entry stays positive).
pub fn masses(g: &mut Gen, n: usize, allow_zero: bool) -> Vec<Rat> {
    let mut w: Vec<i64> = (0..n)
        .map(|_| if allow_zero && g.random_bool(0.2) { 0 } else { g.random_range(1..=6) })
        .collect();
    if w.iter().all(|&x| x == 0) {
        let k = g.random_range(0..n);
        w[k] = 1;
    }
    let total: i64 = w.iter().sum();
    w.into_iter().map(|x| Rat::new(x, total)).collect()
}

pub fn measured_partition(g: &mut Gen, max_cells: usize) -> MeasuredPartition {
    let p = partition(g, max_cells);
    let m = masses(g, p.len(), true);
    MeasuredPartition::new(p.cells().to_vec(), m).unwrap()
}

/// `factors` mutually independent measured partitions, each with at most
/// `max_cells` cells: tiles are indexed by tuples of factor cells and carry
/// product masses. Tuples of zero product mass are sometimes left out, so
/// some intersections are empty.
pub fn independent_family(g: &mut Gen, factors: usize, max_cells: usize) -> Vec<MeasuredPartition> {
    let sizes: Vec<usize> = (0..factors).map(|_| g.random_range(1..=max_cells)).collect();
    let ms: Vec<Vec<Rat>> = sizes.iter().map(|&n| masses(g, n, true)).collect();
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    for &n in &sizes {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    let product = |t: &[usize]| -> Rat { t.iter().enumerate().fold(Rat::one(), |acc, (f, &i)| acc * &ms[f][i]) };
    let mut kept: Vec<Vec<usize>> = tuples
        .iter()
        .filter(|t| !product(t).is_zero() || g.random_bool(0.5))
        .cloned()
        .collect();
    // Every factor cell must stay nonempty.
    for (f, &n) in sizes.iter().enumerate() {
        for i in 0..n {
            if !kept.iter().any(|t| t[f] == i) {
                let pick = tuples.iter().filter(|t| t[f] == i).cloned().collect::<Vec<_>>();
                kept.push(pick[g.random_range(0..pick.len())].clone());
            }
        }
    }
    kept.sort();
    kept.dedup();
    // Some tuples get two tiles, so cells are scattered.
    let mut owners: Vec<usize> = (0..kept.len()).collect();
    owners.extend((0..kept.len()).filter(|_| g.random_bool(0.3)));
    owners.shuffle(g);
    let tiles = tiling(g, owners.len());
    (0..factors)
        .map(|f| {
            let mut cells = vec![Vec::new(); sizes[f]];
            for (tile, &o) in tiles.iter().zip(&owners) {
                cells[kept[o][f]].push(tile.clone());
            }
            let cells = cells.into_iter().map(IntervalSet::from_intervals).collect();
            MeasuredPartition::new(cells, ms[f].clone()).unwrap()
        })
        .collect()
}

/// A random coarsening of a measured partition.
pub fn coarsening(g: &mut Gen, p: &MeasuredPartition) -> MeasuredPartition {
    let grp = grouping(g, p.len(), p.len());
    p.coarsen(&grp).unwrap()
}

/// Random piecewise-affine bijection with at most `max_pieces` pieces.
pub fn pw_affine(g: &mut Gen, max_pieces: usize) -> PwAffine {
    let k = g.random_range(1..=max_pieces);
    let src = tiling(g, k);
    let mut dst = tiling(g, k);
    dst.shuffle(g);
    PwAffine::new(src.into_iter().zip(dst).map(|(src, dst)| AffinePiece { src, dst }).collect()).unwrap()
}

/// Random permutation moving points among `0..bound`.
pub fn fin_perm(g: &mut Gen, bound: u64) -> FinPerm {
    let mut pts: Vec<u64> = (0..bound).collect();
    pts.shuffle(g);
    let k = g.random_range(0..=pts.len());
    let moved = &pts[..k];
    let mut image = moved.to_vec();
    image.shuffle(g);
    FinPerm::from_pairs(moved.iter().copied().zip(image)).unwrap()
}

pub fn nom_store(g: &mut Gen, bound: u64, values: i64) -> NomStore {
    let mut map = BTreeMap::new();
    for n in 0..bound {
        if g.random_bool(0.6) {
            map.insert(n, g.random_range(0..values));
        }
    }
    NomStore::from_map(map)
}

/// Random store proposition of depth at most `depth` over `vars`.
pub fn store_prop(g: &mut Gen, vars: &[String], values: i64, depth: usize) -> StoreProp {
    if depth <= 1 || g.random_bool(0.3) {
        if vars.is_empty() || g.random_bool(0.15) {
            return Prop::Top;
        }
        let var = vars[g.random_range(0..vars.len())].clone();
        return Prop::Atom(PointsTo { var, value: g.random_range(0..values) });
    }
    let l = store_prop(g, vars, values, depth - 1);
    let r = store_prop(g, vars, values, depth - 1);
    match g.random_range(0..4) {
        0 | 1 => Prop::star(l, r),
        2 => Prop::and(l, r),
        _ => Prop::or(l, r),
    }
}

/// Random shape-indexed store instance with at most `max_locs` locations,
/// values in `0..values`, and the given variables mapped into the shape.
pub fn store_m1(g: &mut Gen, max_locs: usize, values: i64, vars: &[String]) -> (Valuation, LocSubst) {
    let n = g.random_range(1..=max_locs);
    let mut names: Vec<String> = ["a", "b", "c", "d", "e", "f", "g", "h"][..n]
        .iter()
        .map(|s| format!("{s}{}", g.random_range(0..3)))
        .collect();
    names.sort();
    names.dedup();
    let shape: Shape = names.iter().cloned().collect();
    let mut assignment = BTreeMap::new();
    for l in &names {
        if g.random_bool(0.75) {
            assignment.insert(l.clone(), g.random_range(0..values));
        }
    }
    let gamma = vars
        .iter()
        .map(|x| (x.clone(), names[g.random_range(0..names.len())].clone()))
        .collect();
    (Valuation::new(shape, assignment).unwrap(), gamma)
}

/// Random probability proposition whose atoms draw their distributions from
/// `pmfs`.
pub fn prob_prop(g: &mut Gen, vars: &[String], pmfs: &[Pmf], depth: usize) -> ProbProp {
    if depth <= 1 || g.random_bool(0.3) {
        if vars.is_empty() || pmfs.is_empty() || g.random_bool(0.15) {
            return Prop::Top;
        }
        let var = vars[g.random_range(0..vars.len())].clone();
        let pmf = pmfs[g.random_range(0..pmfs.len())].clone();
        return Prop::Atom(Dist { var, pmf });
    }
    let l = prob_prop(g, vars, pmfs, depth - 1);
    let r = prob_prop(g, vars, pmfs, depth - 1);
    match g.random_range(0..4) {
        0 | 1 => Prop::star(l, r),
        2 => Prop::and(l, r),
        _ => Prop::or(l, r),
    }
}

/// Random finite probability space with at most `max_points` samples and at
/// most `max_atoms` atoms, together with random variables `vars` taking
/// values in `0..values`.
///
/// Half of the time the space is built as a product of two factors with the
/// first two variables constant on the factors, so that separating
/// conjunctions have a fair chance of holding.
pub fn prob_m1(
    g: &mut Gen,
    max_points: usize,
    max_atoms: usize,
    values: i64,
    vars: &[String],
) -> (FinProbSpace, RandSubst1) {
    let n = g.random_range(1..=max_points);
    let omega = FinOmega::new((0..n).map(|i| format!("w{i}"))).unwrap();
    let structured = n >= 2 && max_atoms >= 2 && g.random_bool(0.5);
    let (atoms, factor_of): (Grouping, Option<Vec<(usize, usize)>>) = if structured {
        let k1 = g.random_range(1..=2usize.min(n));
        let k2 = g.random_range(1..=(max_atoms / k1).min(n / k1).max(1));
        let labels = surjective_labels(g, n, k1 * k2);
        let atoms = setpart::from_labels(&labels);
        let factors = atoms.iter().map(|a| (labels[a[0]] / k2, labels[a[0]] % k2)).collect();
        (atoms, Some(factors))
    } else {
        (grouping(g, n, max_atoms.min(n)), None)
    };
    let atom_masses = match &factor_of {
        Some(f) => {
            let k1 = f.iter().map(|x| x.0).max().unwrap() + 1;
            let k2 = f.iter().map(|x| x.1).max().unwrap() + 1;
            let (m1, m2) = (masses(g, k1, true), masses(g, k2, true));
            f.iter().map(|&(i, j)| &m1[i] * &m2[j]).collect()
        }
        None => masses(g, atoms.len(), true),
    };
    let space = FinProbSpace::new(omega.clone(), atoms.clone(), atom_masses).unwrap();
    let mut atom_of = vec![0; n];
    for (k, a) in space.atoms().iter().enumerate() {
        for &i in a {
            atom_of[i] = k;
        }
    }
    let rvs = vars
        .iter()
        .enumerate()
        .map(|(vi, x)| {
            let values: Vec<i64> = match (&factor_of, vi) {
                (Some(f), 0 | 1) if g.random_bool(0.8) => {
                    let table: Vec<i64> = (0..space.num_atoms() + 1).map(|_| g.random_range(0..values)).collect();
                    (0..n)
                        .map(|i| {
                            let (a, b) = f[atom_of[i]];
                            table[if vi == 0 { a } else { b }]
                        })
                        .collect()
                }
                _ if g.random_bool(0.7) => {
                    let table: Vec<i64> = (0..space.num_atoms()).map(|_| g.random_range(0..values)).collect();
                    (0..n).map(|i| table[atom_of[i]]).collect()
                }
                _ => (0..n).map(|_| g.random_range(0..values)).collect(),
            };
            (x.clone(), RandVar1::new(omega.clone(), values).unwrap())
        })
        .collect();
    (space, rvs)
}

/// Distributions of each variable under `space` (when measurable), plus a few
/// fixed Bernoulli laws, deduplicated. Good candidate atoms for [`prob_prop`].
pub fn pmf_pool(space: &FinProbSpace, rvs: &RandSubst1) -> Vec<Pmf> {
    let mut pool = vec![
        Pmf::ber(Rat::new(1, 2)).unwrap(),
        Pmf::ber(Rat::new(1, 4)).unwrap(),
        Pmf::point(0),
    ];
    for rv in rvs.values() {
        let law: Option<BTreeMap<i64, Rat>> = rv
            .level_sets()
            .into_iter()
            .map(|(k, ev)| space.mass_of(&ev).map(|m| (k, m)))
            .collect();
        if let Some(law) = law {
            pool.push(Pmf::new(law).unwrap());
        }
    }
    pool.sort_by_key(|p| format!("{p:?}"));
    pool.dedup();
    pool
}
