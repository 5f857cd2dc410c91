//! Proposition syntax shared by the store logic and the probabilistic logic.
//!
//! Both logics have the same connectives and differ only in their atomic
//! formula: `x ↦ i` for stores, `X ∼ μ` for random variables.

use std::collections::BTreeSet;

use crate::prob::Pmf;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Prop<A> {
    Top,
    Atom(A),
    Star(Box<Prop<A>>, Box<Prop<A>>),
    And(Box<Prop<A>>, Box<Prop<A>>),
    Or(Box<Prop<A>>, Box<Prop<A>>),
}

/// Atomic formulas mention exactly one logical variable.
pub trait Atom {
    fn var(&self) -> &str;
}

/// `x ↦ i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointsTo {
    pub var: String,
    pub value: i64,
}

/// `X ∼ μ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dist {
    pub var: String,
    pub pmf: Pmf,
}

impl Atom for PointsTo {
    fn var(&self) -> &str {
        &self.var
    }
}

impl Atom for Dist {
    fn var(&self) -> &str {
        &self.var
    }
}

pub type StoreProp = Prop<PointsTo>;
pub type ProbProp = Prop<Dist>;

impl<A> Prop<A> {
    pub fn star(l: Prop<A>, r: Prop<A>) -> Prop<A> {
        Prop::Star(Box::new(l), Box::new(r))
    }

    pub fn and(l: Prop<A>, r: Prop<A>) -> Prop<A> {
        Prop::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Prop<A>, r: Prop<A>) -> Prop<A> {
        Prop::Or(Box::new(l), Box::new(r))
    }

    pub fn depth(&self) -> usize {
        match self {
            Prop::Top | Prop::Atom(_) => 1,
            Prop::Star(l, r) | Prop::And(l, r) | Prop::Or(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    pub fn contains_star(&self) -> bool {
        match self {
            Prop::Top | Prop::Atom(_) => false,
            Prop::Star(..) => true,
            Prop::And(l, r) | Prop::Or(l, r) => l.contains_star() || r.contains_star(),
        }
    }

    pub fn atoms(&self) -> Vec<&A> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a A>) {
        match self {
            Prop::Top => {}
            Prop::Atom(a) => out.push(a),
            Prop::Star(l, r) | Prop::And(l, r) | Prop::Or(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }
}

impl<A: Atom> Prop<A> {
    pub fn free_vars(&self) -> BTreeSet<&str> {
        self.atoms().into_iter().map(Atom::var).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(v: &str, i: i64) -> StoreProp {
        Prop::Atom(PointsTo { var: v.into(), value: i })
    }

    #[test]
    fn free_vars_and_depth() {
        let p = Prop::and(Prop::Top, Prop::star(pt("x", 1), Prop::or(pt("y", 2), pt("x", 3))));
        assert_eq!(p.free_vars().into_iter().collect::<Vec<_>>(), vec!["x", "y"]);
        assert_eq!(p.depth(), 4);
        assert!(p.contains_star());
        assert!(!Prop::and(pt("x", 1), Prop::Top).contains_star());
    }
}
