//! The map `T(x) = N/x − d(x)` on `[α, α + 1]` and its expansions.

mod eval;
mod word;

use alloc::format;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::exact::{ExactNumber, QuadraticSurd};
use crate::{Error, Result};

pub use eval::{convergents, evaluate, evaluate_with_tail, matrix_for_digits, Convergent};
pub use word::{alternating_compare, DigitWord};

/// A map `T_{N,α}` with `N ≥ 2` and `0 < α ≤ √N − 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    n: u64,
    alpha: ExactNumber,
    alpha_plus_one: ExactNumber,
    d_min: u64,
    d_max: u64,
}

impl Params {
    pub fn new(n: u64, alpha: ExactNumber) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParams(format!("N = {n} must be at least 2")));
        }
        if alpha.signum().is_le() {
            return Err(Error::InvalidParams(format!("alpha = {alpha} must be positive")));
        }
        let alpha_plus_one = alpha.add_int(1);
        if alpha_plus_one > ExactNumber::sqrt(n)? {
            return Err(Error::InvalidParams(format!("alpha = {alpha} exceeds sqrt({n}) - 1")));
        }
        let nb = BigInt::from(n);
        let lo = alpha_plus_one.int_div(nb.clone())?.checked_sub(&alpha)?.floor();
        let hi = alpha.int_div(nb)?.checked_sub(&alpha)?.floor();
        let d_max = hi.to_u64().ok_or_else(|| {
            Error::InvalidParams(format!("alpha = {alpha} gives digits beyond 64 bits"))
        })?;
        let d_min = lo.to_u64().expect("d_min <= d_max");
        Ok(Params {
            n,
            alpha,
            alpha_plus_one,
            d_min,
            d_max,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn alpha(&self) -> &ExactNumber {
        &self.alpha
    }

    pub fn alpha_plus_one(&self) -> &ExactNumber {
        &self.alpha_plus_one
    }

    /// `α ≤ x ≤ α + 1`.
    pub fn contains(&self, x: &ExactNumber) -> bool {
        &self.alpha <= x && x <= &self.alpha_plus_one
    }

    /// Every digit is coprime to `N`.
    pub fn in_coprime_region(&self) -> bool {
        digits_coprime(self.n, self.d_min, self.d_max)
    }

    fn check_domain(&self, x: &ExactNumber) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::OutOfDomain(format!("{x}")))
        }
    }
}

pub(crate) fn digits_coprime(n: u64, lo: u64, hi: u64) -> bool {
    (lo..=hi).all(|d| d.gcd(&n) == 1)
}

/// `{⌊N/(α+1) − α⌋, …, ⌊N/α − α⌋}`.
pub fn digit_set(p: &Params) -> RangeInclusive<u64> {
    p.d_min..=p.d_max
}

/// First digit of `x`.
///
/// At `x = α` with `N/α − α` an integer the digit is lowered by one so that
/// `T(α) = α + 1`; elsewhere it is the plain floor `⌊N/x − α⌋`.
pub fn digit(x: &ExactNumber, p: &Params) -> Result<u64> {
    Ok(step(x, p)?.0)
}

/// `(d(x), T(x))`.
pub fn step(x: &ExactNumber, p: &Params) -> Result<(u64, ExactNumber)> {
    p.check_domain(x)?;
    let z = x.int_div(p.n)?;
    // ⌊z − α⌋ from ⌊z⌋ − ⌊α⌋, corrected by exact comparison; this works
    // even when x and α lie in different quadratic fields.
    let mut d: BigInt = z.floor() - p.alpha.floor();
    let mut next = z.add_int(-&d);
    while next < p.alpha {
        d -= 1;
        next = next.add_int(1);
    }
    loop {
        let lower = next.add_int(-1);
        if lower < p.alpha {
            break;
        }
        d += 1;
        next = lower;
    }
    if next == p.alpha && *x == p.alpha {
        d -= 1;
        next = next.add_int(1);
    }
    if d.is_negative() {
        return Err(Error::InvariantViolation(format!("negative digit at {x}")));
    }
    let d = d
        .to_u64()
        .ok_or_else(|| Error::InvariantViolation(format!("digit overflow at {x}")))?;
    Ok((d, next))
}

/// The first `n` digits of `x`.
pub fn expand(x: &ExactNumber, p: &Params, n: usize) -> Result<DigitWord> {
    let mut digits = Vec::with_capacity(n);
    let mut y = x.clone();
    for _ in 0..n {
        let (d, next) = step(&y, p)?;
        digits.push(d);
        y = next;
    }
    Ok(DigitWord::finite(digits))
}

/// `w` is the expansion of its own value: the value lies in `[α, α + 1]`
/// and re-expanding it reproduces the digits over prefix plus one period.
pub fn validate_expansion(w: &DigitWord, p: &Params) -> bool {
    let Some(period) = w.period() else {
        return false;
    };
    let range = digit_set(p);
    if !w.prefix().iter().chain(period).all(|d| range.contains(d)) {
        return false;
    }
    let Ok(x) = evaluate(w, p.n) else {
        return false;
    };
    let n = w.prefix().len() + period.len();
    match expand(&x, p, n) {
        Ok(e) => (0..n).all(|i| e.digit_at(i) == w.digit_at(i)),
        Err(_) => false,
    }
}

/// Order-based check that `w` is admissible: `lower ⪯ w` and
/// `lower ⪯ σⁿ(w) ≺ upper` for every `n ≥ 1`, where `lower` and `upper` are
/// the expansions of `α` and `α + 1`.
pub fn validate_by_order(w: &DigitWord, lower: &DigitWord, upper: &DigitWord) -> Result<bool> {
    let Some(period) = w.period() else {
        return Err(Error::Undecidable);
    };
    if alternating_compare(lower, w)?.is_gt() || alternating_compare(w, upper)?.is_gt() {
        return Ok(false);
    }
    for n in 1..=w.prefix().len() + period.len() {
        let s = w.shift(n);
        if alternating_compare(lower, &s)?.is_gt() || !alternating_compare(&s, upper)?.is_lt() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `ξ_N = (−(N−2) + √(N² + 4))/2`, the positive solution of `ξ = N/(N − 2 + ξ)`.
pub fn xi(n: u64) -> QuadraticSurd {
    let n = BigInt::from(n);
    let x = QuadraticSurd::new(2 - &n, 1, 2, &n * &n + 4).expect("valid surd");
    x.as_surd().cloned().expect("N² + 4 is never a square for N ≥ 1")
}
