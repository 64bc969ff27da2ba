//! Conformal blocks divisors on the moduli space of stable n-pointed rational
//! curves, computed in exact rational arithmetic, together with edge-weighting
//! certificates showing that they are effective sums of boundary divisors.
//!
//! * [`lie`]: root-system tables for A/B/C/D, levels, duals, conformal weights.
//! * [`fusion`]: Kac–Walton fusion engine, n-point ranks, level-one closed forms.
//! * [`divisor`]: ψ/boundary classes and the first Chern class of a blocks bundle.
//! * [`certificate`]: complete-graph weightings, the explicit B/D constructions,
//!   and an exact LP search for certificates of arbitrary classes.
//! * [`json`]: canonical JSON forms of divisors, weightings and reports.
//! * [`suite`]: sweeps over the level-one B/D labelings.
//! * [`cli`]: the `cbdiv` command-line surface.

pub mod certificate;
pub mod cli;
pub mod divisor;
pub mod error;
pub mod fusion;
pub mod json;
pub mod lie;
pub mod lp;
pub mod rational;
pub mod suite;

pub use error::{Error, Result};
pub use lie::{AlgebraId, AlgebraTables, Family, Weight};
