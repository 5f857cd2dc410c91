//! Constructive witnesses: an interval automorphism refining a map between
//! encoded sample spaces, and an automorphism separating the stabilizers of
//! two partitions.

use crate::error::{Error, Result};
use crate::interval_set::IntervalSet;
use crate::partition::{is_coarser, MPartition};
use crate::prob::{Decoder, Surjection};

use super::affine::PwAffine;

/// Build `π` with `dec(π(x)) = p(dec'(x))` for almost every `x`.
///
/// For every `ω` the union of the `dec'`-fibers over `p⁻¹(ω)` is mapped onto
/// the `dec`-fiber of `ω`, matching cumulative length proportionally.
pub fn homogeneity_auto(p: &Surjection, dec_prime: &Decoder, dec: &Decoder) -> Result<PwAffine> {
    if p.source() != dec_prime.omega() {
        return Err(Error::input("surjection domain differs from the primed decoder's sample space"));
    }
    if p.target() != dec.omega() {
        return Err(Error::input("surjection codomain differs from the decoder's sample space"));
    }
    let pairs: Vec<(IntervalSet, IntervalSet)> = (0..dec.omega().len())
        .map(|w| {
            let src = p
                .preimage(w)
                .iter()
                .fold(IntervalSet::empty(), |acc, &v| acc.union(dec_prime.fiber(v)));
            (src, dec.fiber(w).clone())
        })
        .collect();
    PwAffine::from_set_pairs(&pairs)
}

/// Find `π` fixing every cell of `a` but moving some cell of `b`.
///
/// Such a `π` exists iff `a` is not finer than `b`: pick a cell `A` of `a`
/// meeting two cells `B1`, `B2` of `b`, and swap `A∩B1` with `A∩B2`.
pub fn correspondence_witness(a: &MPartition, b: &MPartition) -> Result<PwAffine> {
    for ac in a.cells() {
        let hits: Vec<IntervalSet> = b
            .cells()
            .iter()
            .map(|bc| ac.intersect(bc))
            .filter(|x| !x.is_empty())
            .collect();
        if let [s1, s2, ..] = hits.as_slice() {
            let rest = s1.union(s2).complement();
            return PwAffine::from_set_pairs(&[
                (s1.clone(), s2.clone()),
                (s2.clone(), s1.clone()),
                (rest.clone(), rest),
            ]);
        }
    }
    debug_assert!(is_coarser(b, a));
    Err(Error::input(
        "first partition is finer than the second; every automorphism fixing it fixes the second",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::affine::{fixes_partition, AffinePiece};
    use crate::interval_set::Interval;
    use crate::prob::{make_decoder, FinOmega};
    use crate::rational::Rat;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn worked_three_to_two_example() {
        let omega_p = FinOmega::new(["w1'", "w2'", "w3'"]).unwrap();
        let omega = FinOmega::new(["w1", "w2"]).unwrap();
        let p = Surjection::from_names(&omega_p, &omega, &[("w1'", "w1"), ("w2'", "w2"), ("w3'", "w1")]).unwrap();
        let pi = homogeneity_auto(&p, &make_decoder(&omega_p), &make_decoder(&omega)).unwrap();
        let piece = |a: Rat, b: Rat, c: Rat, d: Rat| AffinePiece {
            src: Interval::new(a, b).unwrap(),
            dst: Interval::new(c, d).unwrap(),
        };
        assert_eq!(
            pi.pieces(),
            &[
                piece(r(0, 1), r(1, 3), r(0, 1), r(1, 4)),
                piece(r(1, 3), r(2, 3), r(1, 2), r(1, 1)),
                piece(r(2, 3), r(1, 1), r(1, 4), r(1, 2)),
            ]
        );
    }

    #[test]
    fn identity_surjection_gives_identity() {
        let omega = FinOmega::new(["a", "b", "c", "d"]).unwrap();
        let p = Surjection::identity(&omega);
        let dec = make_decoder(&omega);
        assert!(homogeneity_auto(&p, &dec, &dec).unwrap().is_identity());
    }

    #[test]
    fn non_matching_decoder_is_rejected() {
        let omega = FinOmega::new(["a", "b"]).unwrap();
        let other = FinOmega::new(["x", "y"]).unwrap();
        let p = Surjection::identity(&omega);
        assert!(homogeneity_auto(&p, &make_decoder(&other), &make_decoder(&omega)).is_err());
    }

    #[test]
    fn witness_for_halves_against_interleaved() {
        let a = MPartition::uniform(2);
        let b1 = IntervalSet::from_pairs([(r(0, 1), r(1, 4)), (r(1, 2), r(3, 4))]).unwrap();
        let b = MPartition::new(vec![b1.clone(), b1.complement()]).unwrap();
        let pi = correspondence_witness(&a, &b).unwrap();
        assert!(fixes_partition(&pi, &a));
        assert!(!fixes_partition(&pi, &b));
        // The swap exchanges [0,1/4) and [1/4,1/2).
        assert_eq!(pi.apply(&r(1, 8)), r(3, 8));
        assert_eq!(pi.apply(&r(3, 8)), r(1, 8));
    }

    #[test]
    fn finer_first_argument_is_an_error() {
        assert!(correspondence_witness(&MPartition::uniform(4), &MPartition::uniform(2)).is_err());
    }
}
