//! Exact rationals and real quadratic surds.
//!
//! Rationals come from `num-rational`. Surds `(a + b√D)/c` are kept in
//! canonical form, and all floors and comparisons reduce to integer
//! arithmetic (integer square roots and sign-tracked squaring).

mod isqrt;
mod number;
mod solve;
mod surd;
mod text;

pub use isqrt::integer_sqrt;
pub use number::{compare_exact, floor_exact, surd_arith, ArithOp, ExactNumber};
pub use solve::{quadratic_roots, solve_mobius_fixed_point};
pub use surd::QuadraticSurd;

pub type BigRational = num_rational::BigRational;
