//! Piecewise-affine bijections of `[0,1)`.
//!
//! A [`PwAffine`] is given by finitely many pieces, each mapping a half-open
//! source interval onto a half-open target interval by the increasing affine
//! map between them. Sources tile `[0,1)` and so do targets. These maps send
//! negligible sets to negligible sets in both directions without preserving
//! length, and they are closed under composition and inversion.
//!
//! The representation is canonical: pieces are sorted by source and two
//! neighbouring pieces are merged whenever they continue each other with the
//! same slope.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval_set::{Interval, IntervalSet};
use crate::partition::{MPartition, MeasuredPartition};
use crate::prob::StepFn;
use crate::rational::Rat;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffinePiece {
    pub src: Interval,
    pub dst: Interval,
}

impl AffinePiece {
    fn slope(&self) -> Rat {
        self.dst.len() / self.src.len()
    }

    fn forward(&self, x: &Rat) -> Rat {
        self.dst.lo() + &((x - self.src.lo()) * self.slope())
    }

    fn backward(&self, y: &Rat) -> Rat {
        self.src.lo() + &((y - self.dst.lo()) / self.slope())
    }

    fn inverse(&self) -> AffinePiece {
        AffinePiece {
            src: self.dst.clone(),
            dst: self.src.clone(),
        }
    }
}

impl fmt::Debug for AffinePiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}→{:?}", self.src, self.dst)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<AffinePiece>", into = "Vec<AffinePiece>")]
pub struct PwAffine {
    pieces: Vec<AffinePiece>,
}

fn tiles_unit(mut ivs: Vec<&Interval>) -> bool {
    ivs.sort();
    let mut cursor = Rat::zero();
    for iv in ivs {
        if *iv.lo() != cursor {
            return false;
        }
        cursor = iv.hi().clone();
    }
    cursor.is_one()
}

impl PwAffine {
    pub fn new(pieces: Vec<AffinePiece>) -> Result<PwAffine> {
        if !tiles_unit(pieces.iter().map(|p| &p.src).collect()) {
            return Err(Error::input("affine piece sources do not tile [0,1)"));
        }
        if !tiles_unit(pieces.iter().map(|p| &p.dst).collect()) {
            return Err(Error::input("affine piece targets do not tile [0,1)"));
        }
        Ok(PwAffine::canonical(pieces))
    }

    pub fn identity() -> PwAffine {
        PwAffine {
            pieces: vec![AffinePiece {
                src: Interval::unit(),
                dst: Interval::unit(),
            }],
        }
    }

    /// Map each source set onto its target set by proportional
    /// cumulative-length matching. The sources must partition `[0,1)`, and
    /// so must the targets.
    pub fn from_set_pairs(pairs: &[(IntervalSet, IntervalSet)]) -> Result<PwAffine> {
        let mut pieces = Vec::new();
        for (src, dst) in pairs {
            if src.is_empty() != dst.is_empty() {
                return Err(Error::input("cannot map a negligible set onto a nonnegligible one"));
            }
            pieces.extend(proportional_pieces(src, dst));
        }
        PwAffine::new(pieces)
    }

    fn canonical(mut pieces: Vec<AffinePiece>) -> PwAffine {
        pieces.sort();
        let mut out: Vec<AffinePiece> = Vec::with_capacity(pieces.len());
        for p in pieces {
            if let Some(last) = out.last_mut() {
                if last.src.hi() == p.src.lo() && last.dst.hi() == p.dst.lo() && last.slope() == p.slope() {
                    last.src = Interval::new_unchecked(last.src.lo().clone(), p.src.hi().clone());
                    last.dst = Interval::new_unchecked(last.dst.lo().clone(), p.dst.hi().clone());
                    continue;
                }
            }
            out.push(p);
        }
        PwAffine { pieces: out }
    }

    pub fn pieces(&self) -> &[AffinePiece] {
        &self.pieces
    }

    pub fn is_identity(&self) -> bool {
        *self == PwAffine::identity()
    }

    fn piece_at(&self, x: &Rat) -> &AffinePiece {
        self.pieces
            .iter()
            .find(|p| p.src.contains(x))
            .unwrap_or_else(|| panic!("{x} is outside [0,1)"))
    }

    /// Image of a point of `[0,1)`.
    pub fn apply(&self, x: &Rat) -> Rat {
        self.piece_at(x).forward(x)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &PwAffine) -> PwAffine {
        let mut pieces = Vec::new();
        for b in &other.pieces {
            for a in &self.pieces {
                let lo = std::cmp::max(b.dst.lo(), a.src.lo());
                let hi = std::cmp::min(b.dst.hi(), a.src.hi());
                if lo < hi {
                    pieces.push(AffinePiece {
                        src: Interval::new_unchecked(b.backward(lo), b.backward(hi)),
                        dst: Interval::new_unchecked(a.forward(lo), a.forward(hi)),
                    });
                }
            }
        }
        PwAffine::canonical(pieces)
    }

    pub fn invert(&self) -> PwAffine {
        PwAffine::canonical(self.pieces.iter().map(AffinePiece::inverse).collect())
    }

    /// `π⁻¹(s)`.
    pub fn preimage(&self, s: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        for p in &self.pieces {
            for iv in s.pieces() {
                let lo = std::cmp::max(iv.lo(), p.dst.lo());
                let hi = std::cmp::min(iv.hi(), p.dst.hi());
                if lo < hi {
                    out.push(Interval::new_unchecked(p.backward(lo), p.backward(hi)));
                }
            }
        }
        IntervalSet::from_intervals(out)
    }

    /// `π(s)`.
    pub fn image(&self, s: &IntervalSet) -> IntervalSet {
        self.invert().preimage(s)
    }

    /// All source and target endpoints.
    pub fn breakpoints(&self) -> Vec<Rat> {
        let mut v: Vec<Rat> = self
            .pieces
            .iter()
            .flat_map(|p| [p.src.lo().clone(), p.src.hi().clone()])
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

impl TryFrom<Vec<AffinePiece>> for PwAffine {
    type Error = Error;
    fn try_from(pieces: Vec<AffinePiece>) -> Result<PwAffine> {
        PwAffine::new(pieces)
    }
}

impl From<PwAffine> for Vec<AffinePiece> {
    fn from(p: PwAffine) -> Vec<AffinePiece> {
        p.pieces
    }
}

impl fmt::Debug for PwAffine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.pieces).finish()
    }
}

/// Position at cumulative length `t` inside the concatenation of `pieces`.
fn locate(pieces: &[Interval], cum: &[Rat], t: &Rat) -> Rat {
    let k = cum.partition_point(|c| c <= t).saturating_sub(1).min(pieces.len() - 1);
    pieces[k].lo() + &(t - &cum[k])
}

fn cumulative(pieces: &[Interval]) -> Vec<Rat> {
    let mut cum = Vec::with_capacity(pieces.len() + 1);
    let mut acc = Rat::zero();
    cum.push(acc.clone());
    for p in pieces {
        acc += &p.len();
        cum.push(acc.clone());
    }
    cum
}

/// Increasing affine pieces mapping `src` onto `dst`, matching cumulative
/// length from the left, rescaled by `|dst| / |src|`.
pub(crate) fn proportional_pieces(src: &IntervalSet, dst: &IntervalSet) -> Vec<AffinePiece> {
    if src.is_empty() {
        return Vec::new();
    }
    let scale = dst.measure() / src.measure();
    let (sp, dp) = (src.pieces(), dst.pieces());
    let (scum, dcum) = (cumulative(sp), cumulative(dp));
    // Breakpoints in source-length coordinates.
    let mut ts: Vec<Rat> = scum.clone();
    ts.extend(dcum.iter().map(|u| u / &scale));
    ts.sort();
    ts.dedup();
    ts.windows(2)
        .map(|w| {
            let (t0, t1) = (&w[0], &w[1]);
            let x0 = locate(sp, &scum, t0);
            let y0 = locate(dp, &dcum, &(t0 * &scale));
            let dt = t1 - t0;
            AffinePiece {
                src: Interval::new_unchecked(x0.clone(), x0 + &dt),
                dst: Interval::new_unchecked(y0.clone(), y0 + &(dt * &scale)),
            }
        })
        .collect()
}

/// `(A_i, μ) · π = (π⁻¹(A_i), μ)`.
pub fn act_on_measured_partition(p: &MeasuredPartition, pi: &PwAffine) -> MeasuredPartition {
    let cells = p.cells().iter().map(|c| pi.preimage(c)).collect();
    MeasuredPartition::new(cells, p.masses().to_vec())
        .expect("preimages under a bijection form a partition")
}

/// `X · π = X ∘ π`.
pub fn act_on_step_fn(x: &StepFn, pi: &PwAffine) -> StepFn {
    StepFn::new(x.levels().iter().map(|(&k, s)| (k, pi.preimage(s))).collect())
        .expect("preimages under a bijection form a partition")
}

/// True iff every cell of `a` is mapped onto itself up to a negligible set.
pub fn fixes_partition(pi: &PwAffine, a: &MPartition) -> bool {
    a.cells().iter().all(|c| pi.preimage(c) == *c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn iv(a: Rat, b: Rat) -> Interval {
        Interval::new(a, b).unwrap()
    }

    fn set(a: Rat, b: Rat) -> IntervalSet {
        IntervalSet::interval(a, b).unwrap()
    }

    fn swap_halves() -> PwAffine {
        PwAffine::new(vec![
            AffinePiece { src: iv(r(0, 1), r(1, 2)), dst: iv(r(1, 2), r(1, 1)) },
            AffinePiece { src: iv(r(1, 2), r(1, 1)), dst: iv(r(0, 1), r(1, 2)) },
        ])
        .unwrap()
    }

    #[test]
    fn identity_preimage() {
        let a = set(r(1, 5), r(3, 7));
        assert_eq!(PwAffine::identity().preimage(&a), a);
    }

    #[test]
    fn swap_preimage() {
        assert_eq!(swap_halves().preimage(&set(r(1, 2), r(1, 1))), set(r(0, 1), r(1, 2)));
    }

    #[test]
    fn inverse_law() {
        let pi = swap_halves();
        assert!(pi.compose(&pi.invert()).is_identity());
        let stretch = PwAffine::new(vec![
            AffinePiece { src: iv(r(0, 1), r(1, 3)), dst: iv(r(0, 1), r(1, 4)) },
            AffinePiece { src: iv(r(1, 3), r(1, 1)), dst: iv(r(1, 4), r(1, 1)) },
        ])
        .unwrap();
        assert!(stretch.compose(&stretch.invert()).is_identity());
        assert!(stretch.invert().compose(&stretch).is_identity());
    }

    #[test]
    fn canonical_merging() {
        let split_identity = PwAffine::new(vec![
            AffinePiece { src: iv(r(0, 1), r(1, 3)), dst: iv(r(0, 1), r(1, 3)) },
            AffinePiece { src: iv(r(1, 3), r(1, 1)), dst: iv(r(1, 3), r(1, 1)) },
        ])
        .unwrap();
        assert!(split_identity.is_identity());
    }

    #[test]
    fn rejects_non_tilings() {
        assert!(PwAffine::new(vec![AffinePiece { src: iv(r(0, 1), r(1, 2)), dst: iv(r(0, 1), r(1, 1)) }]).is_err());
        assert!(PwAffine::new(vec![
            AffinePiece { src: iv(r(0, 1), r(1, 2)), dst: iv(r(0, 1), r(1, 2)) },
            AffinePiece { src: iv(r(1, 2), r(1, 1)), dst: iv(r(0, 1), r(1, 2)) },
        ])
        .is_err());
    }

    #[test]
    fn proportional_matching_of_split_source() {
        let src = IntervalSet::from_pairs([(r(0, 1), r(1, 3)), (r(2, 3), r(1, 1))]).unwrap();
        let dst = set(r(0, 1), r(1, 2));
        let pieces = proportional_pieces(&src, &dst);
        assert_eq!(
            pieces,
            vec![
                AffinePiece { src: iv(r(0, 1), r(1, 3)), dst: iv(r(0, 1), r(1, 4)) },
                AffinePiece { src: iv(r(2, 3), r(1, 1)), dst: iv(r(1, 4), r(1, 2)) },
            ]
        );
    }

    #[test]
    fn measured_partition_action() {
        let p = MeasuredPartition::new(MPartition::uniform(2).cells().to_vec(), vec![r(1, 3), r(2, 3)]).unwrap();
        let q = act_on_measured_partition(&p, &swap_halves());
        assert_eq!(q.masses(), &[r(2, 3), r(1, 3)]);
        assert_eq!(act_on_measured_partition(&p, &PwAffine::identity()), p);
    }

    #[test]
    fn fixing_examples() {
        let halves = MPartition::uniform(2);
        assert!(fixes_partition(&PwAffine::identity(), &halves));
        let inner = PwAffine::new(vec![
            AffinePiece { src: iv(r(0, 1), r(1, 4)), dst: iv(r(1, 4), r(1, 2)) },
            AffinePiece { src: iv(r(1, 4), r(1, 2)), dst: iv(r(0, 1), r(1, 4)) },
            AffinePiece { src: iv(r(1, 2), r(1, 1)), dst: iv(r(1, 2), r(1, 1)) },
        ])
        .unwrap();
        assert!(fixes_partition(&inner, &halves));
        assert!(!fixes_partition(&swap_halves(), &halves));
    }

    #[test]
    fn serde_shape() {
        let json = serde_json::to_string(&swap_halves()).unwrap();
        assert_eq!(
            json,
            r#"[{"src":["0","1/2"],"dst":["1/2","1"]},{"src":["1/2","1"],"dst":["0","1/2"]}]"#
        );
        assert_eq!(serde_json::from_str::<PwAffine>(&json).unwrap(), swap_halves());
    }
}
