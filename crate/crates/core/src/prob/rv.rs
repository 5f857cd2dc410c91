use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval_set::IntervalSet;
use crate::rational::Rat;

use super::space::{FinOmega, Surjection};

/// An integer-valued function on a finite sample space.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RandVar1 {
    omega: FinOmega,
    values: Vec<i64>,
}

impl RandVar1 {
    pub fn new(omega: FinOmega, values: Vec<i64>) -> Result<RandVar1> {
        if values.len() != omega.len() {
            return Err(Error::input("random variable must be total on its sample space"));
        }
        Ok(RandVar1 { omega, values })
    }

    pub fn from_names(omega: &FinOmega, values: &BTreeMap<String, i64>) -> Result<RandVar1> {
        if values.len() != omega.len() {
            return Err(Error::input("random variable must be total on its sample space"));
        }
        let mut out = vec![0; omega.len()];
        for (name, &v) in values {
            out[omega.require(name)?] = v;
        }
        Ok(RandVar1 { omega: omega.clone(), values: out })
    }

    pub fn omega(&self) -> &FinOmega {
        &self.omega
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Nonempty level sets `X⁻¹(k)` as sets of point indices.
    pub fn level_sets(&self) -> BTreeMap<i64, BTreeSet<usize>> {
        let mut out: BTreeMap<i64, BTreeSet<usize>> = BTreeMap::new();
        for (i, &v) in self.values.iter().enumerate() {
            out.entry(v).or_default().insert(i);
        }
        out
    }

    /// `X ∘ p`, a random variable on `p`'s source.
    pub fn pull(&self, p: &Surjection) -> Result<RandVar1> {
        if p.target() != &self.omega {
            return Err(Error::input("random variable does not live on the surjection's target"));
        }
        let values = (0..p.source().len()).map(|i| self.values[p.apply(i)]).collect();
        Ok(RandVar1 { omega: p.source().clone(), values })
    }
}

/// An integer-valued step function on `[0,1)`, up to almost-everywhere
/// equality: a finite map from values to their (nonempty) level sets.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<i64, IntervalSet>", into = "BTreeMap<i64, IntervalSet>")]
pub struct StepFn {
    levels: BTreeMap<i64, IntervalSet>,
}

impl StepFn {
    /// Level sets must be disjoint and cover `[0,1)`; empty level sets are
    /// negligible and dropped.
    pub fn new(mut levels: BTreeMap<i64, IntervalSet>) -> Result<StepFn> {
        levels.retain(|_, s| !s.is_empty());
        let mut covered = IntervalSet::empty();
        let mut total = Rat::zero();
        for s in levels.values() {
            covered = covered.union(s);
            total += &s.measure();
        }
        if total != covered.measure() {
            return Err(Error::input("step function level sets overlap"));
        }
        if !covered.is_full() {
            return Err(Error::input("step function level sets do not cover [0,1)"));
        }
        Ok(StepFn { levels })
    }

    pub fn constant(k: i64) -> StepFn {
        StepFn {
            levels: [(k, IntervalSet::full())].into(),
        }
    }

    pub fn levels(&self) -> &BTreeMap<i64, IntervalSet> {
        &self.levels
    }

    pub fn eval(&self, x: &Rat) -> i64 {
        *self
            .levels
            .iter()
            .find(|(_, s)| s.contains(x))
            .unwrap_or_else(|| panic!("{x} is outside [0,1)"))
            .0
    }
}

impl TryFrom<BTreeMap<i64, IntervalSet>> for StepFn {
    type Error = Error;
    fn try_from(levels: BTreeMap<i64, IntervalSet>) -> Result<StepFn> {
        StepFn::new(levels)
    }
}

impl From<StepFn> for BTreeMap<i64, IntervalSet> {
    fn from(x: StepFn) -> BTreeMap<i64, IntervalSet> {
        x.levels
    }
}

impl fmt::Debug for StepFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(&self.levels).finish()
    }
}

/// A finitely supported probability mass function on ℤ. Only points with
/// positive mass are stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Pmf {
    support: BTreeMap<i64, Rat>,
}

impl Pmf {
    /// Zero-mass entries are dropped; the rest must be positive and sum to 1.
    pub fn new<I: IntoIterator<Item = (i64, Rat)>>(entries: I) -> Result<Pmf> {
        let mut support = BTreeMap::new();
        for (k, m) in entries {
            if m.is_negative() {
                return Err(Error::input(format!("negative probability {m} at {k}")));
            }
            if support.insert(k, m).is_some() {
                return Err(Error::input(format!("value {k} listed twice")));
            }
        }
        support.retain(|_, m| !m.is_zero());
        let total: Rat = support.values().sum();
        if !total.is_one() {
            return Err(Error::input(format!("probabilities sum to {total}, not 1")));
        }
        Ok(Pmf { support })
    }

    /// Bernoulli: `{0: 1-p, 1: p}`.
    pub fn ber(p: Rat) -> Result<Pmf> {
        if !p.in_unit() {
            return Err(Error::input(format!("Bernoulli parameter {p} outside [0,1]")));
        }
        Pmf::new([(0, Rat::one() - &p), (1, p)])
    }

    pub fn point(k: i64) -> Pmf {
        Pmf {
            support: [(k, Rat::one())].into(),
        }
    }

    pub fn get(&self, k: i64) -> Rat {
        self.support.get(&k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn support(&self) -> &BTreeMap<i64, Rat> {
        &self.support
    }
}

impl fmt::Debug for Pmf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(&self.support).finish()
    }
}

/// Encoding of a finite sample space as a partition of `[0,1)`: every point
/// gets a nonempty fiber.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Decoder {
    omega: FinOmega,
    fibers: Vec<IntervalSet>,
}

impl Decoder {
    pub fn new(omega: FinOmega, fibers: Vec<IntervalSet>) -> Result<Decoder> {
        if fibers.len() != omega.len() {
            return Err(Error::input("decoder needs one fiber per sample"));
        }
        // Reuse the partition checks: nonempty, disjoint, covering.
        crate::partition::MPartition::new(fibers.clone())
            .map_err(|e| Error::input(format!("decoder fibers: {e}")))?;
        Ok(Decoder { omega, fibers })
    }

    pub fn omega(&self) -> &FinOmega {
        &self.omega
    }

    pub fn fiber(&self, i: usize) -> &IntervalSet {
        &self.fibers[i]
    }

    pub fn fibers(&self) -> &[IntervalSet] {
        &self.fibers
    }

    /// Union of the fibers of the given points.
    pub fn preimage<'a, I: IntoIterator<Item = &'a usize>>(&self, points: I) -> IntervalSet {
        points
            .into_iter()
            .fold(IntervalSet::empty(), |acc, &i| acc.union(&self.fibers[i]))
    }

    /// Index of the point whose fiber contains `x`.
    pub fn decode(&self, x: &Rat) -> usize {
        self.fibers
            .iter()
            .position(|f| f.contains(x))
            .unwrap_or_else(|| panic!("{x} is outside [0,1)"))
    }
}

/// Canonical decoder: points in name order get consecutive intervals of
/// length `1/|Ω|`.
pub fn make_decoder(omega: &FinOmega) -> Decoder {
    let n = omega.len() as i64;
    let fibers = (0..n)
        .map(|k| IntervalSet::interval(Rat::new(k, n), Rat::new(k + 1, n)).unwrap())
        .collect();
    Decoder { omega: omega.clone(), fibers }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn canonical_decoders() {
        let three = FinOmega::new(["w1", "w2", "w3"]).unwrap();
        let dec = make_decoder(&three);
        assert_eq!(dec.fiber(0), &IntervalSet::interval(r(0, 1), r(1, 3)).unwrap());
        assert_eq!(dec.fiber(1), &IntervalSet::interval(r(1, 3), r(2, 3)).unwrap());
        assert_eq!(dec.fiber(2), &IntervalSet::interval(r(2, 3), r(1, 1)).unwrap());
        let one = FinOmega::new(["only"]).unwrap();
        assert!(make_decoder(&one).fiber(0).is_full());
        let two = FinOmega::new(["b", "a"]).unwrap();
        assert_eq!(make_decoder(&two).fiber(0), &IntervalSet::interval(r(0, 1), r(1, 2)).unwrap());
    }

    #[test]
    fn bernoulli_desugaring() {
        let b = Pmf::ber(r(1, 2)).unwrap();
        assert_eq!(b.get(0), r(1, 2));
        assert_eq!(b.get(1), r(1, 2));
        assert_eq!(Pmf::ber(Rat::one()).unwrap(), Pmf::point(1));
        assert!(Pmf::ber(r(3, 2)).is_err());
    }

    #[test]
    fn pmf_validation() {
        assert!(Pmf::new([(0, r(1, 2))]).is_err());
        assert!(Pmf::new([(0, r(3, 2)), (1, r(-1, 2))]).is_err());
        assert_eq!(Pmf::new([(0, Rat::zero()), (1, Rat::one())]).unwrap(), Pmf::point(1));
    }

    #[test]
    fn step_fn_validation() {
        let h = IntervalSet::interval(r(0, 1), r(1, 2)).unwrap();
        assert!(StepFn::new([(0, h.clone())].into()).is_err());
        assert!(StepFn::new([(0, h.clone()), (1, IntervalSet::full())].into()).is_err());
        let x = StepFn::new([(0, h.clone()), (1, h.complement()), (2, IntervalSet::empty())].into()).unwrap();
        assert_eq!(x.levels().len(), 2);
        assert_eq!(x.eval(&r(3, 4)), 1);
    }

    #[test]
    fn pulled_random_variable() {
        let src = FinOmega::new(["a", "b", "c"]).unwrap();
        let tgt = FinOmega::new(["0", "1"]).unwrap();
        let p = Surjection::from_names(&src, &tgt, &[("a", "0"), ("b", "1"), ("c", "1")]).unwrap();
        let x = RandVar1::new(tgt, vec![5, 7]).unwrap();
        assert_eq!(x.pull(&p).unwrap().values(), &[5, 7, 7]);
    }
}
