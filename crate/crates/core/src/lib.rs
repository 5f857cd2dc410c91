//! Decision procedures for two small separation logics, each in two
//! equivalent discrete models.
//!
//! - Store logic: shape-indexed valuations (separation as coproduct of
//!   shapes) and finite partial maps on ℕ (separation as disjoint union).
//! - Probabilistic logic: probability spaces on finite sample spaces
//!   (separation as independent coarsenings) and measured partitions of
//!   `[0,1)` (separation as independent combination).
//!
//! Everything is computed with exact rationals. The crate also provides the
//! translations between the models, the group actions under which the
//! interval-side and ℕ-side models are invariant, constructive automorphism
//! witnesses, and a randomized law checker for resource monoids.

pub mod dsl;
pub mod error;
pub mod gen;
pub mod group;
pub mod interval_set;
pub mod io;
pub mod monoid;
pub mod partition;
pub mod prob;
pub mod prop;
pub mod rational;
pub mod setpart;
pub mod store;

pub use error::{Error, Result};
pub use interval_set::{Interval, IntervalSet};
pub use partition::{MPartition, MeasuredPartition};
pub use rational::Rat;
