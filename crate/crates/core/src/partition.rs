//! Finite measurable and measured partitions of `[0,1)`.
//!
//! A measured partition is the interval-side encoding of a discrete
//! probability space: a finite partition of the unit interval into nonempty
//! [`IntervalSet`] cells, together with a mass for every cell. Masses may be
//! zero; cells may not be.
//!
//! Two measured partitions combine independently ([`dicom`]) when every pair
//! of cells with an empty intersection has zero product mass. The combination,
//! when it exists, is the common refinement carrying product masses.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval_set::IntervalSet;
use crate::rational::Rat;
use crate::setpart::{self, Grouping};

/// A finite partition of `[0,1)` into nonempty cells, stored in order of
/// leftmost endpoint.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPartition", into = "RawPartition")]
pub struct MPartition {
    cells: Vec<IntervalSet>,
}

#[derive(Serialize, Deserialize)]
struct RawPartition {
    cells: Vec<IntervalSet>,
}

impl MPartition {
    pub fn new(mut cells: Vec<IntervalSet>) -> Result<MPartition> {
        if cells.iter().any(IntervalSet::is_empty) {
            return Err(Error::input("partition cell is empty (negligible)"));
        }
        let mut covered = IntervalSet::empty();
        let mut total = Rat::zero();
        for c in &cells {
            covered = covered.union(c);
            total += &c.measure();
        }
        // Disjoint iff the measures add up exactly.
        if total != covered.measure() {
            return Err(Error::input("partition cells overlap"));
        }
        if !covered.is_full() {
            return Err(Error::input("partition cells do not cover [0,1)"));
        }
        cells.sort_by(|a, b| a.infimum().cmp(&b.infimum()));
        Ok(MPartition { cells })
    }

    /// The one-cell partition `{[0,1)}`.
    pub fn unit() -> MPartition {
        MPartition {
            cells: vec![IntervalSet::full()],
        }
    }

    /// `n` consecutive cells of length `1/n`.
    pub fn uniform(n: usize) -> MPartition {
        assert!(n > 0, "uniform partition needs at least one cell");
        let n = n as i64;
        let cells = (0..n)
            .map(|k| IntervalSet::interval(Rat::new(k, n), Rat::new(k + 1, n)).unwrap())
            .collect();
        MPartition { cells }
    }

    pub fn cells(&self) -> &[IntervalSet] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Index of the cell containing the point `x`.
    pub fn cell_of(&self, x: &Rat) -> Option<usize> {
        self.cells.iter().position(|c| c.contains(x))
    }

    /// Indices of the cells whose union is `set`, or `None` when `set` is not
    /// a union of cells.
    pub fn decompose(&self, set: &IntervalSet) -> Option<Vec<usize>> {
        let mut idx = Vec::new();
        let mut covered = IntervalSet::empty();
        for (i, c) in self.cells.iter().enumerate() {
            if c.is_subset(set) {
                idx.push(i);
                covered = covered.union(c);
            }
        }
        (covered == *set).then_some(idx)
    }

    /// Group cells; the grouping must partition the cell indices.
    pub fn coarsen(&self, grouping: &[Vec<usize>]) -> Result<MPartition> {
        let grouping = setpart::validate(grouping, self.len())?;
        let cells = grouping
            .iter()
            .map(|g| {
                g.iter()
                    .fold(IntervalSet::empty(), |acc, &i| acc.union(&self.cells[i]))
            })
            .collect();
        MPartition::new(cells)
    }
}

impl TryFrom<RawPartition> for MPartition {
    type Error = Error;
    fn try_from(raw: RawPartition) -> Result<MPartition> {
        MPartition::new(raw.cells)
    }
}

impl From<MPartition> for RawPartition {
    fn from(p: MPartition) -> RawPartition {
        RawPartition { cells: p.cells }
    }
}

impl fmt::Debug for MPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.cells).finish()
    }
}

/// Almost-everywhere equality of partitions.
pub fn parteq(a: &MPartition, b: &MPartition) -> bool {
    a == b
}

/// True iff every cell of `a` is a union of cells of `b`.
pub fn is_coarser(a: &MPartition, b: &MPartition) -> bool {
    b.cells.iter().all(|bc| a.cells.iter().any(|ac| bc.is_subset(ac)))
}

/// The partition into all nonempty pairwise intersections.
pub fn common_refinement(a: &MPartition, b: &MPartition) -> MPartition {
    let mut cells = Vec::new();
    for ac in &a.cells {
        for bc in &b.cells {
            let x = ac.intersect(bc);
            if !x.is_empty() {
                cells.push(x);
            }
        }
    }
    cells.sort_by(|x, y| x.infimum().cmp(&y.infimum()));
    MPartition { cells }
}

/// A partition together with a mass per cell; masses are nonnegative and sum
/// to one.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMeasured", into = "RawMeasured")]
pub struct MeasuredPartition {
    partition: MPartition,
    masses: Vec<Rat>,
}

#[derive(Serialize, Deserialize)]
struct RawMeasured {
    cells: Vec<IntervalSet>,
    masses: Vec<Rat>,
}

impl MeasuredPartition {
    pub fn new(cells: Vec<IntervalSet>, masses: Vec<Rat>) -> Result<MeasuredPartition> {
        if cells.len() != masses.len() {
            return Err(Error::input(format!(
                "{} cells but {} masses",
                cells.len(),
                masses.len()
            )));
        }
        if let Some(m) = masses.iter().find(|m| m.is_negative()) {
            return Err(Error::input(format!("negative mass {m}")));
        }
        let total: Rat = masses.iter().sum();
        if !total.is_one() {
            return Err(Error::input(format!("masses sum to {total}, not 1")));
        }
        let mut paired: Vec<(IntervalSet, Rat)> = cells.into_iter().zip(masses).collect();
        paired.sort_by(|a, b| a.0.infimum().cmp(&b.0.infimum()));
        let (cells, masses): (Vec<_>, Vec<_>) = paired.into_iter().unzip();
        let partition = MPartition::new(cells)?;
        Ok(MeasuredPartition { partition, masses })
    }

    /// Skips the mass checks. Only for deliberately broken law-harness
    /// instances.
    pub(crate) fn from_parts_unchecked(partition: MPartition, masses: Vec<Rat>) -> MeasuredPartition {
        MeasuredPartition { partition, masses }
    }

    /// One cell `[0,1)` with mass 1.
    pub fn unit() -> MeasuredPartition {
        MeasuredPartition {
            partition: MPartition::unit(),
            masses: vec![Rat::one()],
        }
    }

    /// `n` equal cells with equal masses.
    pub fn uniform(n: usize) -> MeasuredPartition {
        let m = Rat::new(1, n as i64);
        MeasuredPartition {
            partition: MPartition::uniform(n),
            masses: vec![m; n],
        }
    }

    pub fn partition(&self) -> &MPartition {
        &self.partition
    }

    pub fn cells(&self) -> &[IntervalSet] {
        self.partition.cells()
    }

    pub fn masses(&self) -> &[Rat] {
        &self.masses
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IntervalSet, &Rat)> {
        self.partition.cells.iter().zip(&self.masses)
    }

    /// Mass of a union of cells; `None` when `set` is not measurable with
    /// respect to this partition.
    pub fn mass_of(&self, set: &IntervalSet) -> Option<Rat> {
        self.partition
            .decompose(set)
            .map(|idx| idx.iter().map(|&i| &self.masses[i]).sum())
    }

    /// Union cells per group and add up their masses.
    pub fn coarsen(&self, grouping: &[Vec<usize>]) -> Result<MeasuredPartition> {
        let grouping: Grouping = setpart::validate(grouping, self.len())?;
        let cells = grouping
            .iter()
            .map(|g| {
                g.iter()
                    .fold(IntervalSet::empty(), |acc, &i| acc.union(&self.partition.cells[i]))
            })
            .collect();
        let masses = grouping
            .iter()
            .map(|g| g.iter().map(|&i| &self.masses[i]).sum())
            .collect();
        MeasuredPartition::new(cells, masses)
    }
}

impl TryFrom<RawMeasured> for MeasuredPartition {
    type Error = Error;
    fn try_from(raw: RawMeasured) -> Result<MeasuredPartition> {
        MeasuredPartition::new(raw.cells, raw.masses)
    }
}

impl From<MeasuredPartition> for RawMeasured {
    fn from(p: MeasuredPartition) -> RawMeasured {
        RawMeasured {
            cells: p.partition.cells,
            masses: p.masses,
        }
    }
}

impl fmt::Debug for MeasuredPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (c, m)) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c:?}: {m}")?;
        }
        f.write_str("}")
    }
}

/// `p` is coarser than `q` and `q`'s masses restrict to `p`'s.
pub fn dorder(p: &MeasuredPartition, q: &MeasuredPartition) -> bool {
    if !is_coarser(&p.partition, &q.partition) {
        return false;
    }
    p.iter().all(|(cell, m)| q.mass_of(cell).as_ref() == Some(m))
}

/// Independent combination. `None` when some pair of cells has an empty
/// intersection but a nonzero product mass.
pub fn dicom(p: &MeasuredPartition, q: &MeasuredPartition) -> Option<MeasuredPartition> {
    let mut cells = Vec::new();
    let mut masses = Vec::new();
    for (a, ma) in p.iter() {
        for (b, mb) in q.iter() {
            let x = a.intersect(b);
            let m = ma * mb;
            if x.is_empty() {
                if !m.is_zero() {
                    return None;
                }
            } else {
                cells.push(x);
                masses.push(m);
            }
        }
    }
    Some(MeasuredPartition::new(cells, masses).expect("independent combination is a measured partition"))
}

/// Common refinement with product masses, with no definedness check. The
/// result need not be a valid measured partition.
pub(crate) fn product_refinement_unchecked(
    p: &MeasuredPartition,
    q: &MeasuredPartition,
) -> MeasuredPartition {
    let mut paired = Vec::new();
    for (a, ma) in p.iter() {
        for (b, mb) in q.iter() {
            let x = a.intersect(b);
            if !x.is_empty() {
                paired.push((x, ma * mb));
            }
        }
    }
    paired.sort_by(|a, b| a.0.infimum().cmp(&b.0.infimum()));
    let (cells, masses): (Vec<_>, Vec<_>) = paired.into_iter().unzip();
    MeasuredPartition::from_parts_unchecked(MPartition { cells }, masses)
}
