use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// `⌊√n⌋` for a non-negative integer.
pub fn integer_sqrt(n: &BigInt) -> Result<BigInt> {
    if n.is_negative() {
        return Err(Error::NegativeInput);
    }
    Ok(BigInt::from(isqrt(n.magnitude())))
}

/// `⌊√n⌋` by Newton iteration from an upper bound.
pub(crate) fn isqrt(n: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    if let Some(small) = n.to_u128() {
        return BigUint::from(isqrt_u128(small));
    }
    let mut x = BigUint::one() << ((n.bits() + 1) / 2);
    loop {
        let y = (&x + n / &x) >> 1u32;
        if y >= x {
            return x;
        }
        x = y;
    }
}

fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let bits = 128 - n.leading_zeros();
    let mut x: u128 = 1 << bits.div_ceil(2);
    loop {
        let y = (x + n / x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// Returns `Some(r)` with `r² = n` when `n` is a perfect square.
pub(crate) fn exact_sqrt(n: &BigUint) -> Option<BigUint> {
    let r = isqrt(n);
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Trial division limit for squarefree splitting.
const TRIAL_LIMIT: u64 = 1 << 20;

/// Writes `n = s² · r` and returns `(s, r)`.
///
/// `r` is squarefree whenever the cofactor left after trial division has at
/// most two prime factors, which always holds for `n < 2⁶⁰`. Beyond that the
/// split may leave square factors in `r`; values stay correct, only the
/// representation is not canonical.
pub(crate) fn squarefree_split(n: &BigUint) -> (BigUint, BigUint) {
    if n.is_zero() {
        return (BigUint::zero(), BigUint::zero());
    }
    if let Some(small) = n.to_u128() {
        let (s, r) = squarefree_split_u128(small);
        return (BigUint::from(s), BigUint::from(r));
    }
    let mut rest = n.clone();
    let mut square = BigUint::one();
    let mut free = BigUint::one();
    let mut p: u64 = 2;
    while p <= TRIAL_LIMIT {
        let pb = BigUint::from(p);
        if &pb * &pb * &pb > rest {
            break;
        }
        let mut e = 0u32;
        loop {
            let (q, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            square *= pb.pow(e / 2);
            if e % 2 == 1 {
                free *= &pb;
            }
            if let Some(small) = rest.to_u128() {
                let (s, r) = squarefree_split_u128(small);
                return (square * s, free * r);
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if let Some(r) = exact_sqrt(&rest) {
        if !rest.is_one() {
            square *= r;
            rest = BigUint::one();
        }
    }
    (square, free * rest)
}

fn squarefree_split_u128(mut n: u128) -> (u128, u128) {
    let mut square: u128 = 1;
    let mut free: u128 = 1;
    let mut p: u128 = 2;
    while p <= TRIAL_LIMIT as u128 && p * p * p <= n {
        let mut e = 0u32;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            square *= p.pow(e / 2);
            if e % 2 == 1 {
                free *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let r = isqrt_u128(n);
    if r * r == n && n > 1 {
        square *= r;
        n = 1;
    }
    (square, free * n)
}
