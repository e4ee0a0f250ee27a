//! Equidistant binary codes and the equilateral dimension of hypercubes.
//!
//! A `d`-equilateral subset of the hypercube `Q_n` is a set of length-`n`
//! binary words whose pairwise Hamming distances all equal `d`. The largest
//! such set has size `e_d(n)`. This crate provides
//!
//! * finite-field arithmetic over `GF(p^m)` ([`field`]),
//! * packed codewords, codes and their verification and combination ([`codes`]),
//! * the explicit lower-bound constructions ([`construct`]),
//! * upper and lower bound calculators ([`bounds`]),
//! * an exhaustive solver for small parameters ([`exact`]),
//! * sweeps over the growth measures `g(γ)`, `h(d)` and `f(α)` ([`sweep`]).
//!
//! Every construction re-verifies its output before returning it, so a
//! [`Code`] carrying a certified distance is always truly equidistant.

pub mod bounds;
pub mod codes;
pub mod construct;
mod error;
pub mod exact;
pub mod field;
pub mod numbers;
pub mod sweep;

pub use bounds::{
    best_lower, best_upper, BoundReport, Certificate, Construction, Effort, LowerBound,
    UpperBound, UpperFormula,
};
pub use codes::{concat_codes, hamming_distance, repeat_code, Code, Codeword, Verification};
pub use construct::{
    double_code, hadamard_code, iterated_code, pair_code, trivial_code, weight_one_code,
    IteratedParams,
};
pub use error::{Error, Result};
pub use exact::{exact_by_theory, exact_e, ExactResult, SearchConfig, SearchStatus};
pub use field::{Field, FieldElement};
pub use sweep::{Format, Schedule, Summary, SweepMode, SweepRow};

/// Environment variable overriding the default materialization ceiling.
pub const MATERIALIZE_LIMIT_ENV: &str = "EQUICUBE_MATERIALIZE_LIMIT";

/// Default ceiling on the length of a code that will be materialized.
pub const DEFAULT_MATERIALIZE_LIMIT: usize = 1 << 20;

/// Ceiling on `m * n` (total bits) of any materialized code.
pub const MATERIALIZE_CELL_LIMIT: u128 = 1 << 26;

/// The materialization ceiling in effect: [`DEFAULT_MATERIALIZE_LIMIT`]
/// unless [`MATERIALIZE_LIMIT_ENV`] holds a valid integer.
pub fn materialize_limit() -> usize {
    std::env::var(MATERIALIZE_LIMIT_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MATERIALIZE_LIMIT)
}
