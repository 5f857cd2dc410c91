//! Discrete probabilistic separation logic.

mod rv;
mod sat;
mod space;

pub use rv::{make_decoder, Decoder, Pmf, RandVar1, StepFn};
pub use sat::{
    sat_prob_m1, sat_prob_m2, star_witnesses_m1, translate_prob_m1_to_m2, translate_rv,
    translate_space, DistMode, EvalOptions, RandSubst1, RandSubst2, DEFAULT_BUDGET,
};
pub use space::{
    product_point_name, product_space, pullback, subspace_leq, FinOmega, FinProbSpace, Surjection,
};
