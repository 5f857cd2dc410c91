//! Finitely supported permutations of the naturals and their right actions on
//! nominal stores and substitutions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::store::{NomStore, NomSubst};

/// A permutation of ℕ that moves only finitely many points. Only the moved
/// points are stored.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<(u64, u64)>", into = "Vec<(u64, u64)>")]
pub struct FinPerm {
    map: BTreeMap<u64, u64>,
}

impl FinPerm {
    pub fn identity() -> FinPerm {
        FinPerm::default()
    }

    /// Build from `(n, π(n))` pairs; identity pairs are allowed and dropped.
    pub fn from_pairs<I: IntoIterator<Item = (u64, u64)>>(pairs: I) -> Result<FinPerm> {
        let mut map = BTreeMap::new();
        for (n, m) in pairs {
            if map.insert(n, m).is_some_and(|old| old != m) {
                return Err(Error::input(format!("point {n} mapped twice")));
            }
        }
        let domain: BTreeSet<u64> = map.keys().copied().collect();
        let image: BTreeSet<u64> = map.values().copied().collect();
        if domain != image {
            return Err(Error::input("pairs do not describe a bijection on their support"));
        }
        map.retain(|n, m| n != m);
        Ok(FinPerm { map })
    }

    /// The transposition of `a` and `b`.
    pub fn swap(a: u64, b: u64) -> FinPerm {
        FinPerm::from_pairs([(a, b), (b, a)]).expect("a transposition is a bijection")
    }

    /// The cycle `c[0] -> c[1] -> ... -> c[0]`.
    pub fn cycle(c: &[u64]) -> Result<FinPerm> {
        let pairs = c.iter().zip(c.iter().cycle().skip(1)).map(|(&a, &b)| (a, b));
        FinPerm::from_pairs(pairs)
    }

    pub fn apply(&self, n: u64) -> u64 {
        self.map.get(&n).copied().unwrap_or(n)
    }

    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.map.keys().copied()
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &FinPerm) -> FinPerm {
        let support: BTreeSet<u64> = self.support().chain(other.support()).collect();
        let map = support
            .into_iter()
            .map(|n| (n, self.apply(other.apply(n))))
            .filter(|(n, m)| n != m)
            .collect();
        FinPerm { map }
    }

    pub fn invert(&self) -> FinPerm {
        FinPerm {
            map: self.map.iter().map(|(&n, &m)| (m, n)).collect(),
        }
    }
}

impl TryFrom<Vec<(u64, u64)>> for FinPerm {
    type Error = Error;
    fn try_from(pairs: Vec<(u64, u64)>) -> Result<FinPerm> {
        FinPerm::from_pairs(pairs)
    }
}

impl From<FinPerm> for Vec<(u64, u64)> {
    fn from(p: FinPerm) -> Vec<(u64, u64)> {
        p.map.into_iter().collect()
    }
}

impl fmt::Debug for FinPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(&self.map).finish()
    }
}

/// `s · π = s ∘ π`.
pub fn act_on_nom_store(s: &NomStore, pi: &FinPerm) -> NomStore {
    let inv = pi.invert();
    // (s ∘ π)(n) = s(π(n)) is defined exactly for n = π⁻¹(m), m ∈ dom(s).
    NomStore::from_map(s.iter().map(|(m, v)| (inv.apply(m), v)).collect())
}

/// `γ · π = π⁻¹ ∘ γ`.
pub fn act_on_nom_subst(gamma: &NomSubst, pi: &FinPerm) -> NomSubst {
    let inv = pi.invert();
    gamma.iter().map(|(x, &n)| (x.clone(), inv.apply(n))).collect()
}
