//! Store separation logic in two models.
//!
//! In the shape-indexed model a state is a valuation on a finite set of named
//! locations and `P ⋆ Q` splits the shape into two disjoint sub-shapes. In the
//! nominal model a state is a finite partial map on ℕ and `P ⋆ Q` asks for two
//! disjoint sub-stores. Both separating conjunctions are decided by
//! enumerating three-way splits of the defined locations (left, right,
//! discarded); discarding is allowed because the logic is affine.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prop::{Atom, Prop, StoreProp};

pub type Loc = String;

/// Finite set of location names.
pub type Shape = BTreeSet<Loc>;

/// Logical variable to location, for the shape-indexed model.
pub type LocSubst = BTreeMap<String, Loc>;

/// Logical variable to natural number, for the nominal model.
pub type NomSubst = BTreeMap<String, u64>;

/// A partial integer assignment on a shape.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Valuation {
    shape: Shape,
    assignment: BTreeMap<Loc, i64>,
}

impl Valuation {
    pub fn new(shape: Shape, assignment: BTreeMap<Loc, i64>) -> Result<Valuation> {
        if let Some(l) = assignment.keys().find(|l| !shape.contains(*l)) {
            return Err(Error::input(format!("location {l:?} is assigned but not in the shape")));
        }
        Ok(Valuation { shape, assignment })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn assignment(&self) -> &BTreeMap<Loc, i64> {
        &self.assignment
    }

    pub fn get(&self, l: &str) -> Option<i64> {
        self.assignment.get(l).copied()
    }

    /// The restriction to `locs`, as a valuation of shape `locs`.
    fn restrict(&self, locs: &[&Loc]) -> Valuation {
        Valuation {
            shape: locs.iter().map(|l| (*l).clone()).collect(),
            assignment: locs.iter().map(|l| ((*l).clone(), self.assignment[*l])).collect(),
        }
    }
}

/// A finite partial map `ℕ ⇀ ℤ`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NomStore {
    map: BTreeMap<u64, i64>,
}

impl NomStore {
    pub fn from_map(map: BTreeMap<u64, i64>) -> NomStore {
        NomStore { map }
    }

    pub fn get(&self, n: u64) -> Option<i64> {
        self.map.get(&n).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.map.iter().map(|(&n, &v)| (n, v))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn domain(&self) -> impl Iterator<Item = u64> + '_ {
        self.map.keys().copied()
    }

    /// `self ⊆ other` as graphs of partial functions.
    pub fn is_substore(&self, other: &NomStore) -> bool {
        self.iter().all(|(n, v)| other.get(n) == Some(v))
    }

    /// Disjoint union; `None` when the domains overlap.
    pub fn disjoint_union(&self, other: &NomStore) -> Option<NomStore> {
        if self.domain().any(|n| other.map.contains_key(&n)) {
            return None;
        }
        let mut map = self.map.clone();
        map.extend(other.iter());
        Some(NomStore { map })
    }

    fn restrict(&self, locs: &[u64]) -> NomStore {
        NomStore {
            map: locs.iter().map(|&n| (n, self.map[&n])).collect(),
        }
    }
}

impl fmt::Debug for NomStore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(&self.map).finish()
    }
}

/// Calls `visit(left, right)` for every pair of disjoint subsets of `items`
/// until it returns true. Left subsets are tried in order and each is checked
/// with `left_ok` before any right subset is enumerated.
fn any_split<T: Copy>(
    items: &[T],
    mut left_ok: impl FnMut(&[T]) -> bool,
    mut right_ok: impl FnMut(&[T]) -> bool,
) -> bool {
    let n = items.len();
    assert!(n < 32, "too many locations to enumerate splits");
    let subset = |mask: u32| -> Vec<T> { (0..n).filter(|i| mask >> i & 1 == 1).map(|i| items[i]).collect() };
    let full = (1u32 << n) - 1;
    for left in 0..=full {
        if !left_ok(&subset(left)) {
            continue;
        }
        let rest = full & !left;
        // Enumerate submasks of `rest`, including the empty one.
        let mut right = rest;
        loop {
            if right_ok(&subset(right)) {
                return true;
            }
            if right == 0 {
                break;
            }
            right = (right - 1) & rest;
        }
    }
    false
}

fn check_subst_m1(shape: &Shape, gamma: &LocSubst, p: &StoreProp) -> Result<()> {
    for x in p.free_vars() {
        match gamma.get(x) {
            None => return Err(Error::input(format!("variable {x} is not in the substitution"))),
            Some(l) if !shape.contains(l) => {
                return Err(Error::input(format!("variable {x} maps to {l:?}, outside the shape")))
            }
            Some(_) => {}
        }
    }
    Ok(())
}

/// Satisfaction in the shape-indexed model.
pub fn sat_store_m1(s: &Valuation, gamma: &LocSubst, p: &StoreProp) -> Result<bool> {
    check_subst_m1(&s.shape, gamma, p)?;
    Ok(holds_m1(s, gamma, p))
}

fn holds_m1(s: &Valuation, gamma: &LocSubst, p: &StoreProp) -> bool {
    match p {
        Prop::Top => true,
        Prop::Atom(a) => s.get(&gamma[a.var()]) == Some(a.value),
        Prop::Star(l, r) => {
            let dom: Vec<&Loc> = s.assignment.keys().collect();
            any_split(
                &dom,
                |d1| holds_m1(&s.restrict(d1), gamma, l),
                |d2| holds_m1(&s.restrict(d2), gamma, r),
            )
        }
        Prop::And(l, r) => holds_m1(s, gamma, l) && holds_m1(s, gamma, r),
        Prop::Or(l, r) => holds_m1(s, gamma, l) || holds_m1(s, gamma, r),
    }
}

fn check_subst_m2(gamma: &NomSubst, p: &StoreProp) -> Result<()> {
    match p.free_vars().into_iter().find(|x| !gamma.contains_key(*x)) {
        Some(x) => Err(Error::input(format!("variable {x} is not in the substitution"))),
        None => Ok(()),
    }
}

/// Satisfaction in the nominal model.
pub fn sat_store_m2(s: &NomStore, gamma: &NomSubst, p: &StoreProp) -> Result<bool> {
    check_subst_m2(gamma, p)?;
    Ok(holds_m2(s, gamma, p))
}

fn holds_m2(s: &NomStore, gamma: &NomSubst, p: &StoreProp) -> bool {
    match p {
        Prop::Top => true,
        Prop::Atom(a) => s.get(gamma[a.var()]) == Some(a.value),
        Prop::Star(l, r) => {
            let dom: Vec<u64> = s.domain().collect();
            any_split(
                &dom,
                |d1| holds_m2(&s.restrict(d1), gamma, l),
                |d2| holds_m2(&s.restrict(d2), gamma, r),
            )
        }
        Prop::And(l, r) => holds_m2(s, gamma, l) && holds_m2(s, gamma, r),
        Prop::Or(l, r) => holds_m2(s, gamma, l) || holds_m2(s, gamma, r),
    }
}

/// Canonical injection of a shape into ℕ: names in sorted order get
/// `0, 1, 2, ...`.
pub fn enc_shape(shape: &Shape) -> BTreeMap<Loc, u64> {
    shape.iter().cloned().zip(0u64..).collect()
}

/// Translate a shape-indexed instance into the nominal model along
/// [`enc_shape`].
pub fn translate_store_m1_to_m2(s: &Valuation, gamma: &LocSubst) -> Result<(NomStore, NomSubst)> {
    let enc = enc_shape(&s.shape);
    let store = NomStore::from_map(s.assignment.iter().map(|(l, &v)| (enc[l], v)).collect());
    let subst = gamma
        .iter()
        .map(|(x, l)| match enc.get(l) {
            Some(&n) => Ok((x.clone(), n)),
            None => Err(Error::input(format!("variable {x} maps to {l:?}, outside the shape"))),
        })
        .collect::<Result<_>>()?;
    Ok((store, subst))
}
