//! Satisfaction for probabilistic propositions.
//!
//! Model 1 evaluates a proposition on a probability space over a fixed finite
//! sample space; `P ⋆ Q` asks for two coarsenings of the space that are
//! independent and satisfy `P` and `Q`. Model 2 evaluates on a measured
//! partition of `[0,1)`; `P ⋆ Q` asks for two coarsenings whose independent
//! combination lies below the partition.
//!
//! Witness masses are forced (a coarsening carries the summed masses), so both
//! searches range over pairs of set partitions of the atoms / cells.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::partition::{dicom, dorder, MeasuredPartition};
use crate::prop::{Atom, ProbProp, Prop};
use crate::rational::Rat;
use crate::setpart::{set_partitions, Grouping};

use super::rv::{Decoder, RandVar1, StepFn};
use super::space::FinProbSpace;

pub type RandSubst1 = BTreeMap<String, RandVar1>;
pub type RandSubst2 = BTreeMap<String, StepFn>;

pub const DEFAULT_BUDGET: usize = 6;

/// How `X ∼ μ` is read in Model 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DistMode {
    /// Every nonnegligible level set is a union of cells with the right mass.
    #[default]
    UnionOfCells,
    /// Every nonnegligible level set is a single cell with the right mass.
    SingleCell,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalOptions {
    /// Largest number of atoms (or cells) for which `⋆` is decided.
    pub budget: usize,
    pub dist: DistMode,
}

impl Default for EvalOptions {
    fn default() -> EvalOptions {
        EvalOptions {
            budget: DEFAULT_BUDGET,
            dist: DistMode::UnionOfCells,
        }
    }
}

fn check_budget(p: &ProbProp, size: usize, opts: &EvalOptions) -> Result<()> {
    if p.contains_star() && size > opts.budget {
        return Err(Error::Budget {
            atoms: size,
            budget: opts.budget,
        });
    }
    Ok(())
}

fn check_subst<V>(g: &BTreeMap<String, V>, p: &ProbProp) -> Result<()> {
    match p.free_vars().into_iter().find(|x| !g.contains_key(*x)) {
        Some(x) => Err(Error::input(format!("random variable {x} is not in the substitution"))),
        None => Ok(()),
    }
}

/// Model 1 satisfaction on a finite probability space.
pub fn sat_prob_m1(space: &FinProbSpace, g: &RandSubst1, p: &ProbProp, opts: &EvalOptions) -> Result<bool> {
    check_subst(g, p)?;
    for (x, rv) in g {
        if rv.omega() != space.omega() {
            return Err(Error::input(format!("random variable {x} lives on another sample space")));
        }
    }
    check_budget(p, space.num_atoms(), opts)?;
    Ok(holds_m1(space, g, p))
}

fn holds_m1(space: &FinProbSpace, g: &RandSubst1, p: &ProbProp) -> bool {
    match p {
        Prop::Top => true,
        Prop::Atom(d) => {
            let levels = g[d.var()].level_sets();
            let support_ok = d.pmf.support().keys().all(|k| levels.contains_key(k));
            support_ok
                && levels
                    .iter()
                    .all(|(&k, ev)| space.mass_of(ev) == Some(d.pmf.get(k)))
        }
        Prop::Star(l, r) => first_witness_m1(space, g, l, r).is_some(),
        Prop::And(l, r) => holds_m1(space, g, l) && holds_m1(space, g, r),
        Prop::Or(l, r) => holds_m1(space, g, l) || holds_m1(space, g, r),
    }
}

/// Coarsenings (as atom groupings) of `space` that satisfy `p`.
fn satisfying_coarsenings_m1(space: &FinProbSpace, g: &RandSubst1, p: &ProbProp) -> Vec<Grouping> {
    set_partitions(space.num_atoms())
        .filter(|grp| holds_m1(&space.coarsen(grp).expect("valid grouping"), g, p))
        .collect()
}

/// `mass(A∩B) = mass(A)·mass(B)` for every block `A` of `g1` and `B` of `g2`.
fn independent(masses: &[Rat], g1: &Grouping, g2: &Grouping) -> bool {
    let mass = |atoms: &mut dyn Iterator<Item = &usize>| -> Rat { atoms.map(|&k| &masses[k]).sum() };
    g1.iter().all(|a| {
        let ma = mass(&mut a.iter());
        g2.iter().all(|b| {
            let mb = mass(&mut b.iter());
            let both = mass(&mut a.iter().filter(|k| b.contains(k)));
            both == &ma * &mb
        })
    })
}

fn first_witness_m1(space: &FinProbSpace, g: &RandSubst1, l: &ProbProp, r: &ProbProp) -> Option<(Grouping, Grouping)> {
    let left = satisfying_coarsenings_m1(space, g, l);
    if left.is_empty() {
        return None;
    }
    let right = satisfying_coarsenings_m1(space, g, r);
    for g1 in &left {
        for g2 in &right {
            if independent(space.masses(), g1, g2) {
                return Some((g1.clone(), g2.clone()));
            }
        }
    }
    None
}

/// Every accepted witness pair for `l ⋆ r` on `space`, as groupings of the
/// space's atoms.
pub fn star_witnesses_m1(
    space: &FinProbSpace,
    g: &RandSubst1,
    l: &ProbProp,
    r: &ProbProp,
    opts: &EvalOptions,
) -> Result<Vec<(Grouping, Grouping)>> {
    let star = Prop::star(l.clone(), r.clone());
    sat_prob_m1(space, g, &star, opts)?;
    let left = satisfying_coarsenings_m1(space, g, l);
    let right = satisfying_coarsenings_m1(space, g, r);
    let mut out = Vec::new();
    for g1 in &left {
        for g2 in &right {
            if independent(space.masses(), g1, g2) {
                out.push((g1.clone(), g2.clone()));
            }
        }
    }
    Ok(out)
}

/// Model 2 satisfaction on a measured partition of `[0,1)`.
pub fn sat_prob_m2(a: &MeasuredPartition, g: &RandSubst2, p: &ProbProp, opts: &EvalOptions) -> Result<bool> {
    check_subst(g, p)?;
    check_budget(p, a.len(), opts)?;
    Ok(holds_m2(a, g, p, opts.dist))
}

fn holds_m2(a: &MeasuredPartition, g: &RandSubst2, p: &ProbProp, mode: DistMode) -> bool {
    match p {
        Prop::Top => true,
        Prop::Atom(d) => {
            let levels = g[d.var()].levels();
            let support_ok = d.pmf.support().keys().all(|k| levels.contains_key(k));
            support_ok
                && levels.iter().all(|(&k, set)| {
                    let shape_ok = match mode {
                        DistMode::UnionOfCells => true,
                        DistMode::SingleCell => a.cells().contains(set),
                    };
                    shape_ok && a.mass_of(set) == Some(d.pmf.get(k))
                })
        }
        Prop::Star(l, r) => {
            let coarsenings = |q: &ProbProp| -> Vec<MeasuredPartition> {
                set_partitions(a.len())
                    .map(|grp| a.coarsen(&grp).expect("valid grouping"))
                    .filter(|c| holds_m2(c, g, q, mode))
                    .collect()
            };
            let left = coarsenings(l);
            if left.is_empty() {
                return false;
            }
            let right = coarsenings(r);
            left.iter().any(|p1| {
                right
                    .iter()
                    .any(|p2| dicom(p1, p2).is_some_and(|c| dorder(&c, a)))
            })
        }
        Prop::And(l, r) => holds_m2(a, g, l, mode) && holds_m2(a, g, r, mode),
        Prop::Or(l, r) => holds_m2(a, g, l, mode) || holds_m2(a, g, r, mode),
    }
}

/// Encode a probability space as a measured partition along a decoder.
pub fn translate_space(space: &FinProbSpace, dec: &Decoder) -> Result<MeasuredPartition> {
    if dec.omega() != space.omega() {
        return Err(Error::input("decoder is for a different sample space"));
    }
    let cells = space.atoms().iter().map(|a| dec.preimage(a)).collect();
    MeasuredPartition::new(cells, space.masses().to_vec())
}

/// Encode a random variable as a step function along a decoder.
pub fn translate_rv(x: &RandVar1, dec: &Decoder) -> Result<StepFn> {
    if dec.omega() != x.omega() {
        return Err(Error::input("decoder is for a different sample space"));
    }
    let levels = x
        .level_sets()
        .into_iter()
        .map(|(k, pts)| (k, dec.preimage(&pts)))
        .collect();
    StepFn::new(levels)
}

/// Translate a Model 1 instance into Model 2 along `dec`.
pub fn translate_prob_m1_to_m2(
    space: &FinProbSpace,
    g: &RandSubst1,
    dec: &Decoder,
) -> Result<(MeasuredPartition, RandSubst2)> {
    let partition = translate_space(space, dec)?;
    let rvs = g
        .iter()
        .map(|(x, rv)| Ok((x.clone(), translate_rv(rv, dec)?)))
        .collect::<Result<_>>()?;
    Ok((partition, rvs))
}
