//! Symmetry groups and their actions: finitely supported permutations of ℕ on
//! the store side, piecewise-affine bijections of `[0,1)` on the probability
//! side.

mod affine;
mod perm;
mod witness;

pub use affine::{
    act_on_measured_partition, act_on_step_fn, fixes_partition, AffinePiece, PwAffine,
};
pub use perm::{act_on_nom_store, act_on_nom_subst, FinPerm};
pub use witness::{correspondence_witness, homogeneity_auto};
