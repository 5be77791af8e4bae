//! Exact arithmetic for (N, α)-continued fractions.
//!
//! For an integer `N ≥ 2` and a parameter `0 < α ≤ √N − 1` the map
//!
//! ```text
//! T(x) = N/x − ⌊N/x − α⌋,   x ∈ [α, α + 1]
//! ```
//!
//! generates expansions `x = N/(d₁ + N/(d₂ + …))` with digits drawn from a
//! finite set. Everything in this crate is computed exactly: points and
//! parameters are rationals or real quadratic surds `(a + b√D)/c`, and every
//! floor, comparison and equality is decided with integer arithmetic.
//!
//! The crate is `no_std` (it needs `alloc`). IO, file formats and the
//! command-line front end live in the `nalpha-cli` crate.
//!
//! Module map:
//!
//! * [`exact`]: big rationals, quadratic surds, exact floor/compare, root solving.
//! * [`mobius`]: 2×2 integer matrices acting as Möbius maps.
//! * [`expansion`]: digit sets, the map `T`, expansions, convergents, digit words.
//! * [`orbits`]: exact orbits with cycle detection and non-periodicity tooling.
//! * [`matching`]: matching detection, stability, cylinder and matching intervals.
//! * [`paramspace`]: the coprime region and its digit-set cells.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;
pub mod exact;
pub mod expansion;
pub mod matching;
pub mod mobius;
pub mod orbits;
pub mod paramspace;

pub use error::{Error, Result};
pub use exact::{BigRational, ExactNumber, QuadraticSurd};
pub use expansion::{DigitWord, Params};
pub use mobius::MobiusMatrix;

/// Default step budget for orbit computations.
pub const DEFAULT_BUDGET: usize = 1000;
