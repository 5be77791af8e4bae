use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{BigRational, ExactNumber, QuadraticSurd};
use crate::mobius::MobiusMatrix;
use crate::{Error, Result};

/// Real roots of `c2 x² + c1 x + c0 = 0`, ascending and without repeats.
///
/// A vanishing leading coefficient degrades to the linear case.
pub fn quadratic_roots(c2: &BigInt, c1: &BigInt, c0: &BigInt) -> Result<Vec<ExactNumber>> {
    if c2.is_zero() {
        if c1.is_zero() {
            return if c0.is_zero() {
                Err(Error::DegenerateEquation)
            } else {
                Ok(Vec::new())
            };
        }
        return Ok(alloc::vec![ExactNumber::Rational(BigRational::new(-c0, c1.clone()))]);
    }
    let disc = c1 * c1 - BigInt::from(4) * c2 * c0;
    if disc.is_negative() {
        return Ok(Vec::new());
    }
    let den = BigInt::from(2) * c2;
    let x = QuadraticSurd::new(-c1, -1, den.clone(), disc.clone())?;
    let y = QuadraticSurd::new(-c1, 1, den, disc)?;
    let mut roots = alloc::vec![x, y];
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// Solves `x + shift = M(x)` for the unique root in `[lo, hi]`.
///
/// Writing `M = [[a, b], [c, d]]` the equation is
/// `c x² + (d + s c − a) x + (s d − b) = 0`.
pub fn solve_mobius_fixed_point(
    m: &MobiusMatrix,
    shift: bool,
    lo: Option<&ExactNumber>,
    hi: Option<&ExactNumber>,
) -> Result<ExactNumber> {
    let s = BigInt::from(shift as u8);
    let c2 = m.c.clone();
    let c1 = &m.d + &s * &m.c - &m.a;
    let c0 = &s * &m.d - &m.b;
    let mut hits = quadratic_roots(&c2, &c1, &c0)?
        .into_iter()
        .filter(|r| lo.map_or(true, |l| l <= r) && hi.map_or(true, |h| r <= h));
    let first = hits.next().ok_or(Error::NoRootInRange)?;
    if hits.next().is_some() {
        return Err(Error::AmbiguousRoot);
    }
    Ok(first)
}
