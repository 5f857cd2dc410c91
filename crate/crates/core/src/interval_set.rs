//! Finite unions of half-open rational subintervals of `[0,1)`.
//!
//! Every [`IntervalSet`] is kept in canonical form: its pieces are nonempty,
//! sorted, pairwise disjoint and non-adjacent. Two sets that differ only by a
//! negligible set (a finite set of points) therefore have the same
//! representation, which makes almost-everywhere equality plain `==`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rat;

/// A nonempty half-open interval `[lo, hi)` with `0 <= lo < hi <= 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "(Rat, Rat)", into = "(Rat, Rat)")]
pub struct Interval {
    lo: Rat,
    hi: Rat,
}

impl Interval {
    pub fn new(lo: Rat, hi: Rat) -> Result<Interval> {
        if !lo.in_unit() || !hi.in_unit() {
            return Err(Error::input(format!("endpoint outside [0,1]: [{lo},{hi})")));
        }
        if lo >= hi {
            return Err(Error::input(format!("empty or reversed interval [{lo},{hi})")));
        }
        Ok(Interval { lo, hi })
    }

    /// `[0,1)`.
    pub fn unit() -> Interval {
        Interval {
            lo: Rat::zero(),
            hi: Rat::one(),
        }
    }

    pub(crate) fn new_unchecked(lo: Rat, hi: Rat) -> Interval {
        debug_assert!(lo < hi);
        Interval { lo, hi }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn len(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.lo <= *x && *x < self.hi
    }
}

impl TryFrom<(Rat, Rat)> for Interval {
    type Error = Error;
    fn try_from((lo, hi): (Rat, Rat)) -> Result<Interval> {
        Interval::new(lo, hi)
    }
}

impl From<Interval> for (Rat, Rat) {
    fn from(i: Interval) -> (Rat, Rat) {
        (i.lo, i.hi)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{})", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Canonical finite union of half-open intervals inside `[0,1)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<(Rat, Rat)>", into = "Vec<(Rat, Rat)>")]
pub struct IntervalSet {
    pieces: Vec<Interval>,
}

impl IntervalSet {
    /// Canonical form of the union of the given `[a,b)` pairs. Degenerate
    /// pairs `a == b` are negligible and dropped.
    pub fn from_pairs<I>(raw: I) -> Result<IntervalSet>
    where
        I: IntoIterator<Item = (Rat, Rat)>,
    {
        let mut pieces = Vec::new();
        for (a, b) in raw {
            if !a.in_unit() || !b.in_unit() {
                return Err(Error::input(format!("endpoint outside [0,1]: ({a},{b})")));
            }
            if a > b {
                return Err(Error::input(format!("reversed pair ({a},{b})")));
            }
            if a < b {
                pieces.push(Interval::new_unchecked(a, b));
            }
        }
        Ok(IntervalSet::normalize(pieces))
    }

    pub fn empty() -> IntervalSet {
        IntervalSet { pieces: Vec::new() }
    }

    /// The whole universe `[0,1)`.
    pub fn full() -> IntervalSet {
        IntervalSet {
            pieces: vec![Interval::unit()],
        }
    }

    /// Single interval `[lo,hi)`; empty when `lo == hi`.
    pub fn interval(lo: Rat, hi: Rat) -> Result<IntervalSet> {
        IntervalSet::from_pairs([(lo, hi)])
    }

    pub(crate) fn from_intervals(pieces: Vec<Interval>) -> IntervalSet {
        IntervalSet::normalize(pieces)
    }

    fn normalize(mut pieces: Vec<Interval>) -> IntervalSet {
        pieces.sort();
        let mut out: Vec<Interval> = Vec::with_capacity(pieces.len());
        for p in pieces {
            match out.last_mut() {
                Some(last) if p.lo <= last.hi => {
                    if p.hi > last.hi {
                        last.hi = p.hi;
                    }
                }
                _ => out.push(p),
            }
        }
        IntervalSet { pieces: out }
    }

    pub fn pieces(&self) -> &[Interval] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.pieces.len() == 1 && self.pieces[0] == Interval::unit()
    }

    /// Leftmost endpoint, `None` for the empty set.
    pub fn infimum(&self) -> Option<&Rat> {
        self.pieces.first().map(|p| &p.lo)
    }

    pub fn contains(&self, x: &Rat) -> bool {
        // Pieces are sorted, so the candidate is the last piece starting at or before x.
        let idx = self.pieces.partition_point(|p| p.lo <= *x);
        idx > 0 && self.pieces[idx - 1].contains(x)
    }

    /// Lebesgue measure.
    pub fn measure(&self) -> Rat {
        self.pieces.iter().map(Interval::len).sum()
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut all = self.pieces.clone();
        all.extend(other.pieces.iter().cloned());
        IntervalSet::normalize(all)
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let (a, b) = (&self.pieces, &other.pieces);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            let lo = std::cmp::max(&a[i].lo, &b[j].lo);
            let hi = std::cmp::min(&a[i].hi, &b[j].hi);
            if lo < hi {
                out.push(Interval::new_unchecked(lo.clone(), hi.clone()));
            }
            if a[i].hi < b[j].hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        // Output of a two-pointer sweep over canonical inputs is already
        // sorted and disjoint, but touching pieces can still need merging.
        IntervalSet::normalize(out)
    }

    /// Complement relative to `[0,1)`.
    pub fn complement(&self) -> IntervalSet {
        let mut out = Vec::new();
        let mut cursor = Rat::zero();
        for p in &self.pieces {
            if cursor < p.lo {
                out.push(Interval::new_unchecked(cursor, p.lo.clone()));
            }
            cursor = p.hi.clone();
        }
        if cursor < Rat::one() {
            out.push(Interval::new_unchecked(cursor, Rat::one()));
        }
        IntervalSet { pieces: out }
    }

    pub fn difference(&self, other: &IntervalSet) -> IntervalSet {
        self.intersect(&other.complement())
    }

    pub fn symm_diff(&self, other: &IntervalSet) -> IntervalSet {
        self.difference(other).union(&other.difference(self))
    }

    /// Almost-everywhere equality. Canonical forms make this syntactic.
    pub fn ae_eq(&self, other: &IntervalSet) -> bool {
        self == other
    }

    pub fn is_subset(&self, other: &IntervalSet) -> bool {
        self.difference(other).is_empty()
    }

    pub fn is_disjoint(&self, other: &IntervalSet) -> bool {
        self.intersect(other).is_empty()
    }

    /// All piece endpoints in increasing order, without duplicates.
    pub fn endpoints(&self) -> Vec<Rat> {
        let mut v: Vec<Rat> = self
            .pieces
            .iter()
            .flat_map(|p| [p.lo.clone(), p.hi.clone()])
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

impl TryFrom<Vec<(Rat, Rat)>> for IntervalSet {
    type Error = Error;
    fn try_from(raw: Vec<(Rat, Rat)>) -> Result<IntervalSet> {
        IntervalSet::from_pairs(raw)
    }
}

impl From<IntervalSet> for Vec<(Rat, Rat)> {
    fn from(s: IntervalSet) -> Vec<(Rat, Rat)> {
        s.pieces.into_iter().map(Into::into).collect()
    }
}

impl fmt::Debug for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return f.write_str("∅");
        }
        for (k, p) in self.pieces.iter().enumerate() {
            if k > 0 {
                f.write_str("∪")?;
            }
            write!(f, "{p:?}")?;
        }
        Ok(())
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Sorted, deduplicated union of the endpoints of all given sets together
/// with `0` and `1`.
pub fn breakpoints<'a, I>(sets: I) -> Vec<Rat>
where
    I: IntoIterator<Item = &'a IntervalSet>,
{
    let mut pts = vec![Rat::zero(), Rat::one()];
    for s in sets {
        pts.extend(s.endpoints());
    }
    pts.sort();
    pts.dedup();
    pts
}
