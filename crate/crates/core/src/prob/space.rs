//! Finite sample spaces, probability spaces given by an atom partition, and
//! the pullback / subspace / product constructions on them.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rat;
use crate::setpart::{self, Grouping};

/// A finite nonempty set of sample names, kept sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinOmega {
    points: Vec<String>,
}

impl FinOmega {
    pub fn new<I, S>(points: I) -> Result<FinOmega>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut points: Vec<String> = points.into_iter().map(Into::into).collect();
        let n = points.len();
        points.sort();
        points.dedup();
        if points.len() != n {
            return Err(Error::input("duplicate sample names"));
        }
        if points.is_empty() {
            return Err(Error::input("sample space must be nonempty"));
        }
        Ok(FinOmega { points })
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.points.binary_search_by(|p| p.as_str().cmp(name)).ok()
    }

    pub(crate) fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::input(format!("unknown sample {name:?}")))
    }
}

impl fmt::Debug for FinOmega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.points).finish()
    }
}

/// Name of the point `(a, b)` of a product sample space.
pub fn product_point_name(a: &str, b: &str) -> String {
    format!("({a},{b})")
}

/// A surjective map between finite sample spaces.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Surjection {
    source: FinOmega,
    target: FinOmega,
    map: Vec<usize>,
}

impl Surjection {
    pub fn new(source: FinOmega, target: FinOmega, map: Vec<usize>) -> Result<Surjection> {
        if map.len() != source.len() {
            return Err(Error::input("surjection must be total on its source"));
        }
        if map.iter().any(|&w| w >= target.len()) {
            return Err(Error::input("surjection maps outside its target"));
        }
        let hit: BTreeSet<usize> = map.iter().copied().collect();
        if hit.len() != target.len() {
            let missed = (0..target.len()).find(|w| !hit.contains(w)).unwrap();
            return Err(Error::input(format!(
                "map is not surjective: {:?} has no preimage",
                target.points[missed]
            )));
        }
        Ok(Surjection { source, target, map })
    }

    pub fn from_names(source: &FinOmega, target: &FinOmega, pairs: &[(&str, &str)]) -> Result<Surjection> {
        let mut map = vec![usize::MAX; source.len()];
        for (a, b) in pairs {
            let i = source.require(a)?;
            if map[i] != usize::MAX {
                return Err(Error::input(format!("sample {a:?} mapped twice")));
            }
            map[i] = target.require(b)?;
        }
        if map.contains(&usize::MAX) {
            return Err(Error::input("surjection must be total on its source"));
        }
        Surjection::new(source.clone(), target.clone(), map)
    }

    pub fn identity(omega: &FinOmega) -> Surjection {
        Surjection {
            source: omega.clone(),
            target: omega.clone(),
            map: (0..omega.len()).collect(),
        }
    }

    pub fn source(&self) -> &FinOmega {
        &self.source
    }

    pub fn target(&self) -> &FinOmega {
        &self.target
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn preimage(&self, w: usize) -> Vec<usize> {
        (0..self.map.len()).filter(|&i| self.map[i] == w).collect()
    }
}

/// A probability space on a finite sample space: the σ-algebra is given by
/// its atoms (a set partition of the points) and each atom carries a mass.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinProbSpace {
    omega: FinOmega,
    atoms: Grouping,
    masses: Vec<Rat>,
}

impl FinProbSpace {
    pub fn new(omega: FinOmega, atoms: Grouping, masses: Vec<Rat>) -> Result<FinProbSpace> {
        if atoms.len() != masses.len() {
            return Err(Error::input(format!("{} atoms but {} masses", atoms.len(), masses.len())));
        }
        if let Some(m) = masses.iter().find(|m| m.is_negative()) {
            return Err(Error::input(format!("negative mass {m}")));
        }
        let total: Rat = masses.iter().sum();
        if !total.is_one() {
            return Err(Error::input(format!("masses sum to {total}, not 1")));
        }
        let canonical = setpart::validate(&atoms, omega.len())?;
        // Re-align masses with the canonical atom order.
        let masses = canonical
            .iter()
            .map(|block| {
                let k = atoms.iter().position(|a| a.contains(&block[0])).unwrap();
                masses[k].clone()
            })
            .collect();
        Ok(FinProbSpace { omega, atoms: canonical, masses })
    }

    pub fn from_names(omega: &FinOmega, atoms: &[Vec<&str>], masses: Vec<Rat>) -> Result<FinProbSpace> {
        let atoms = atoms
            .iter()
            .map(|a| a.iter().map(|n| omega.require(n)).collect::<Result<Vec<_>>>())
            .collect::<Result<Grouping>>()?;
        FinProbSpace::new(omega.clone(), atoms, masses)
    }

    /// `{∅, Ω}` with `μ(Ω) = 1`.
    pub fn trivial(omega: &FinOmega) -> FinProbSpace {
        FinProbSpace {
            omega: omega.clone(),
            atoms: vec![(0..omega.len()).collect()],
            masses: vec![Rat::one()],
        }
    }

    /// Singleton atoms with the given point masses.
    pub fn discrete(omega: &FinOmega, masses: Vec<Rat>) -> Result<FinProbSpace> {
        let atoms = (0..omega.len()).map(|i| vec![i]).collect();
        FinProbSpace::new(omega.clone(), atoms, masses)
    }

    pub fn uniform(omega: &FinOmega) -> FinProbSpace {
        let m = Rat::new(1, omega.len() as i64);
        FinProbSpace::discrete(omega, vec![m; omega.len()]).unwrap()
    }

    pub fn omega(&self) -> &FinOmega {
        &self.omega
    }

    pub fn atoms(&self) -> &[Vec<usize>] {
        &self.atoms
    }

    pub fn masses(&self) -> &[Rat] {
        &self.masses
    }

    pub fn num_atoms(&self) -> usize {
        self.atoms.len()
    }

    /// For every point, the index of its atom.
    pub fn atom_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.omega.len()];
        for (k, a) in self.atoms.iter().enumerate() {
            for &i in a {
                out[i] = k;
            }
        }
        out
    }

    /// Mass of an event given as a set of points; `None` when the event is not
    /// a union of atoms.
    pub fn mass_of(&self, event: &BTreeSet<usize>) -> Option<Rat> {
        let mut total = Rat::zero();
        for (a, m) in self.atoms.iter().zip(&self.masses) {
            let inside = a.iter().filter(|i| event.contains(i)).count();
            if inside == a.len() {
                total += m;
            } else if inside != 0 {
                return None;
            }
        }
        Some(total)
    }

    /// Merge atoms per group; the result is a subspace of `self`.
    pub fn coarsen(&self, grouping: &[Vec<usize>]) -> Result<FinProbSpace> {
        let grouping = setpart::validate(grouping, self.num_atoms())?;
        let atoms = grouping
            .iter()
            .map(|g| {
                let mut pts: Vec<usize> = g.iter().flat_map(|&k| self.atoms[k].iter().copied()).collect();
                pts.sort();
                pts
            })
            .collect();
        let masses = grouping
            .iter()
            .map(|g| g.iter().map(|&k| &self.masses[k]).sum())
            .collect();
        FinProbSpace::new(self.omega.clone(), atoms, masses)
    }
}

impl fmt::Debug for FinProbSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (a, m)) in self.atoms.iter().zip(&self.masses).enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            let names: Vec<&str> = a.iter().map(|&i| self.omega.points[i].as_str()).collect();
            write!(f, "{{{}}}: {m}", names.join(","))?;
        }
        f.write_str("}")
    }
}

/// Pull a probability space on `p`'s target back to its source.
pub fn pullback(p: &Surjection, space: &FinProbSpace) -> Result<FinProbSpace> {
    if p.target() != space.omega() {
        return Err(Error::input("space does not live on the surjection's target"));
    }
    let atoms = space
        .atoms()
        .iter()
        .map(|a| {
            let mut pts: Vec<usize> = a.iter().flat_map(|&w| p.preimage(w)).collect();
            pts.sort();
            pts
        })
        .collect();
    FinProbSpace::new(p.source().clone(), atoms, space.masses().to_vec())
}

/// Subspace order: every atom of `p` is a union of atoms of `q` and `q`'s
/// masses restrict to `p`'s.
pub fn subspace_leq(p: &FinProbSpace, q: &FinProbSpace) -> Result<bool> {
    if p.omega() != q.omega() {
        return Err(Error::input("spaces live on different sample spaces"));
    }
    Ok(p.atoms().iter().zip(p.masses()).all(|(a, m)| {
        let event: BTreeSet<usize> = a.iter().copied().collect();
        q.mass_of(&event).as_ref() == Some(m)
    }))
}

/// Product space on `Ω1 × Ω2`: rectangles of atoms with product masses.
pub fn product_space(p1: &FinProbSpace, p2: &FinProbSpace) -> FinProbSpace {
    let (o1, o2) = (p1.omega(), p2.omega());
    let names: Vec<String> = o1
        .points()
        .iter()
        .flat_map(|a| o2.points().iter().map(move |b| product_point_name(a, b)))
        .collect();
    let omega = FinOmega::new(names).expect("product point names are distinct");
    let idx = |i: usize, j: usize| {
        omega
            .index_of(&product_point_name(&o1.points()[i], &o2.points()[j]))
            .unwrap()
    };
    let mut atoms = Vec::new();
    let mut masses = Vec::new();
    for (a1, m1) in p1.atoms().iter().zip(p1.masses()) {
        for (a2, m2) in p2.atoms().iter().zip(p2.masses()) {
            atoms.push(a1.iter().flat_map(|&i| a2.iter().map(move |&j| idx(i, j))).collect());
            masses.push(m1 * m2);
        }
    }
    FinProbSpace::new(omega, atoms, masses).expect("product of probability spaces")
}
