//! Independent oracles shared by the integration tests. They work on the
//! midpoint grid of the relevant breakpoints and use only membership tests,
//! not the set algebra under test.

#![allow(dead_code)]

use sepmodels::group::PwAffine;
use sepmodels::prob::{Decoder, Surjection};
use sepmodels::setpart::set_partitions;
use sepmodels::{IntervalSet, MeasuredPartition, Rat};

/// Sorted, deduplicated breakpoints of all sets, always including 0 and 1.
pub fn breaks<'a, I: IntoIterator<Item = &'a IntervalSet>>(sets: I) -> Vec<Rat> {
    let mut out = vec![Rat::zero(), Rat::one()];
    for s in sets {
        for p in s.pieces() {
            out.push(p.lo().clone());
            out.push(p.hi().clone());
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Tiles `[b_i, b_{i+1})` with their midpoints.
pub fn tiles(breaks: &[Rat]) -> Vec<(Rat, Rat, Rat)> {
    breaks
        .windows(2)
        .map(|w| (w[0].clone(), w[1].clone(), w[0].midpoint(&w[1])))
        .collect()
}

/// Rebuild a set as the union of grid tiles whose midpoints satisfy `pred`.
/// Valid whenever every breakpoint of the set is on the grid.
pub fn from_grid(breaks: &[Rat], pred: impl Fn(&Rat) -> bool) -> IntervalSet {
    let pairs: Vec<(Rat, Rat)> = tiles(breaks)
        .into_iter()
        .filter(|(_, _, m)| pred(m))
        .map(|(a, b, _)| (a, b))
        .collect();
    IntervalSet::from_pairs(pairs).unwrap()
}

/// Measure of the grid tiles whose midpoints satisfy `pred`.
pub fn grid_measure(breaks: &[Rat], pred: impl Fn(&Rat) -> bool) -> Rat {
    tiles(breaks)
        .into_iter()
        .filter(|(_, _, m)| pred(m))
        .map(|(a, b, _)| b - a)
        .sum()
}

/// Brute-force search for independent combinations of `p` and `q`.
///
/// Grid tiles are classified by the pair of cells containing their midpoint.
/// Every grouping of the classes is a candidate partition, with the mass of a
/// block forced to the sum of the products over its classes. A candidate
/// survives when its masses sum to one, it extends `p` and `q` (each cell of
/// either is a union of blocks carrying that cell's mass), and every nonempty
/// `A∩B` is a union of blocks with mass `m(A)·m(B)`. All checks are done on
/// class labels; only survivors are turned into interval sets.
pub fn dicom_candidates(p: &MeasuredPartition, q: &MeasuredPartition) -> Vec<MeasuredPartition> {
    let b = breaks(p.cells().iter().chain(q.cells()));
    let label = |x: &Rat| {
        let i = p.cells().iter().position(|c| c.contains(x)).unwrap();
        let j = q.cells().iter().position(|c| c.contains(x)).unwrap();
        (i, j)
    };
    let mut classes: Vec<(usize, usize)> = tiles(&b).iter().map(|(_, _, m)| label(m)).collect();
    classes.sort();
    classes.dedup();
    let product = |(i, j): (usize, usize)| &p.masses()[i] * &q.masses()[j];

    let mut out = Vec::new();
    for grouping in set_partitions(classes.len()) {
        // Label-only test first: a block straddling a selected set of classes
        // rules the candidate out before any arithmetic.
        let straddles = |pick: &dyn Fn((usize, usize)) -> bool| {
            grouping.iter().any(|blk| {
                let inside = blk.iter().filter(|&&k| pick(classes[k])).count();
                inside != 0 && inside != blk.len()
            })
        };
        if (0..p.len()).any(|i| straddles(&|c| c.0 == i))
            || (0..q.len()).any(|j| straddles(&|c| c.1 == j))
            || classes.iter().any(|&c| straddles(&|d| d == c))
        {
            continue;
        }
        let mass: Vec<Rat> = grouping
            .iter()
            .map(|blk| blk.iter().map(|&k| product(classes[k])).sum())
            .collect();
        if !mass.iter().cloned().sum::<Rat>().is_one() {
            continue;
        }
        let mass_within = |pick: &dyn Fn((usize, usize)) -> bool| -> Rat {
            grouping
                .iter()
                .zip(&mass)
                .filter(|(blk, _)| pick(classes[blk[0]]))
                .map(|(_, m)| m.clone())
                .sum()
        };
        let extends_p = (0..p.len()).all(|i| mass_within(&|c| c.0 == i) == p.masses()[i]);
        let extends_q = (0..q.len()).all(|j| mass_within(&|c| c.1 == j) == q.masses()[j]);
        let independent = classes.iter().all(|&c| mass_within(&|d| d == c) == product(c));
        if extends_p && extends_q && independent {
            let cells = grouping
                .iter()
                .map(|blk| from_grid(&b, |x| blk.iter().any(|&k| classes[k] == label(x))))
                .collect();
            out.push(MeasuredPartition::new(cells, mass).unwrap());
        }
    }
    out
}

/// Check `dec(π(x)) = p(dec'(x))` at every midpoint of the grid formed by the
/// breakpoints of `π`, of `dec'`, and the points `π⁻¹(y)` for breakpoints `y`
/// of `dec`.
pub fn homogeneity_square_holds(pi: &PwAffine, p: &Surjection, dec_prime: &Decoder, dec: &Decoder) -> bool {
    let inv = pi.invert();
    let mut b = breaks(dec_prime.fibers());
    b.extend(pi.breakpoints());
    b.extend(breaks(dec.fibers()).iter().filter(|y| !y.is_one()).map(|y| inv.apply(y)));
    b.sort();
    b.dedup();
    tiles(&b).iter().all(|(_, _, m)| dec.decode(&pi.apply(m)) == p.apply(dec_prime.decode(m)))
}
