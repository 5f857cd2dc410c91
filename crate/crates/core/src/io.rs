//! JSON instance files.
//!
//! Rationals are strings (`"1/3"`), interval sets are lists of `[lo, hi]`
//! string pairs.

use std::collections::{BTreeMap, BTreeSet};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval_set::IntervalSet;
use crate::partition::MeasuredPartition;
use crate::prob::{Decoder, FinOmega, FinProbSpace, RandSubst1, RandSubst2, RandVar1, Surjection};
use crate::rational::Rat;
use crate::store::{LocSubst, NomStore, NomSubst, Valuation};

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::input(format!("invalid JSON: {e}")))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StoreM1File {
    pub shape: Vec<String>,
    pub store: BTreeMap<String, i64>,
    pub subst: BTreeMap<String, String>,
}

impl StoreM1File {
    pub fn into_instance(self) -> Result<(Valuation, LocSubst)> {
        let shape: BTreeSet<String> = self.shape.iter().cloned().collect();
        if shape.len() != self.shape.len() {
            return Err(Error::input("duplicate location in shape"));
        }
        let s = Valuation::new(shape, self.store)?;
        if let Some((x, l)) = self.subst.iter().find(|(_, l)| !s.shape().contains(*l)) {
            return Err(Error::input(format!("variable {x} points to {l}, which is not in the shape")));
        }
        Ok((s, self.subst))
    }

    pub fn from_instance(s: &Valuation, gamma: &LocSubst) -> StoreM1File {
        StoreM1File {
            shape: s.shape().iter().cloned().collect(),
            store: s.assignment().clone(),
            subst: gamma.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StoreM2File {
    pub store: NomStore,
    pub subst: NomSubst,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbM1File {
    pub omega: Vec<String>,
    pub atoms: Vec<Vec<String>>,
    pub masses: Vec<Rat>,
    pub rvs: BTreeMap<String, BTreeMap<String, i64>>,
}

impl ProbM1File {
    pub fn into_instance(self) -> Result<(FinProbSpace, RandSubst1)> {
        let omega = FinOmega::new(self.omega)?;
        let atoms: Vec<Vec<&str>> = self.atoms.iter().map(|a| a.iter().map(String::as_str).collect()).collect();
        let space = FinProbSpace::from_names(&omega, &atoms, self.masses)?;
        let rvs = self
            .rvs
            .iter()
            .map(|(x, vals)| {
                let rv = RandVar1::from_names(&omega, vals)
                    .map_err(|e| Error::input(format!("random variable {x}: {}", strip(&e))))?;
                Ok((x.clone(), rv))
            })
            .collect::<Result<_>>()?;
        Ok((space, rvs))
    }

    pub fn from_instance(space: &FinProbSpace, rvs: &RandSubst1) -> ProbM1File {
        let pts = space.omega().points();
        ProbM1File {
            omega: pts.to_vec(),
            atoms: space.atoms().iter().map(|a| a.iter().map(|&i| pts[i].clone()).collect()).collect(),
            masses: space.masses().to_vec(),
            rvs: rvs
                .iter()
                .map(|(x, rv)| (x.clone(), pts.iter().cloned().zip(rv.values().iter().copied()).collect()))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbM2File {
    pub partition: MeasuredPartition,
    pub rvs: RandSubst2,
}

/// Decoder file: `{point: IntervalSet}`; the sample space is the key set.
pub fn decoder_from_json(text: &str) -> Result<Decoder> {
    let map: BTreeMap<String, IntervalSet> = from_json(text)?;
    let omega = FinOmega::new(map.keys().cloned())?;
    Decoder::new(omega, map.into_values().collect())
}

pub fn decoder_to_json(dec: &Decoder) -> String {
    let map: BTreeMap<&String, &IntervalSet> = dec.omega().points().iter().zip(dec.fibers()).collect();
    to_json(&map)
}

/// Surjection file: `{source point: target point}`; the target sample space
/// is the set of values.
pub fn surjection_from_json(text: &str) -> Result<Surjection> {
    let map: BTreeMap<String, String> = from_json(text)?;
    let source = FinOmega::new(map.keys().cloned())?;
    let target = FinOmega::new(map.values().cloned().collect::<BTreeSet<_>>())?;
    let pairs: Vec<(&str, &str)> = map.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    Surjection::from_names(&source, &target, &pairs)
}

fn strip(e: &Error) -> String {
    match e {
        Error::Input(m) => m.clone(),
        other => other.to_string(),
    }
}
