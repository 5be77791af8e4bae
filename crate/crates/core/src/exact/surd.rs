use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::isqrt::squarefree_split;
use super::{BigRational, ExactNumber};
use crate::{Error, Result};

/// A real quadratic irrational `(a + b√D)/c`.
///
/// Always canonical: `c > 0`, `b ≠ 0`, `D ≥ 2` squarefree and
/// `gcd(a, b, c) = 1`. Values with a vanishing irrational part are never
/// represented here; they become [`ExactNumber::Rational`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl QuadraticSurd {
    /// Normalizes `(a + b√d)/c`, pulling square factors out of `d`.
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<ExactNumber> {
        let (a, mut b, c, d) = (a.into(), b.into(), c.into(), d.into());
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if d.is_negative() {
            return Err(Error::NegativeInput);
        }
        if b.is_zero() || d.is_zero() {
            return Ok(ExactNumber::Rational(BigRational::new(a, c)));
        }
        let (square, free) = squarefree_split(d.magnitude());
        b *= BigInt::from(square);
        let free = BigInt::from(free);
        if free.is_one() {
            return Ok(ExactNumber::Rational(BigRational::new(a + b, c)));
        }
        Ok(Self::from_reduced(a, b, c, free))
    }

    /// Normalizes with a radicand that is already squarefree and `≥ 2`.
    pub(crate) fn from_reduced(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> ExactNumber {
        debug_assert!(!c.is_zero());
        let (a, b, c) = if c.is_negative() { (-a, -b, -c) } else { (a, b, c) };
        if b.is_zero() {
            return ExactNumber::Rational(BigRational::new(a, c));
        }
        let g = a.gcd(&b).gcd(&c);
        let (a, b, c) = if g.is_one() {
            (a, b, c)
        } else {
            (a / &g, b / &g, c / &g)
        };
        ExactNumber::Surd(QuadraticSurd { a, b, c, d })
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub(crate) fn negated(&self) -> Self {
        QuadraticSurd {
            a: -&self.a,
            b: -&self.b,
            c: self.c.clone(),
            d: self.d.clone(),
        }
    }

    /// `(a − b√D)/c`.
    pub fn conjugate(&self) -> Self {
        QuadraticSurd {
            a: self.a.clone(),
            b: -&self.b,
            c: self.c.clone(),
            d: self.d.clone(),
        }
    }

    /// Primitive integer polynomial `A x² + B x + C` with `A > 0` vanishing at
    /// this value.
    pub fn minimal_polynomial(&self) -> (BigInt, BigInt, BigInt) {
        // (c x − a)² = b² D
        let a2 = &self.c * &self.c;
        let b1 = BigInt::from(-2) * &self.a * &self.c;
        let c0 = &self.a * &self.a - &self.b * &self.b * &self.d;
        let g = a2.gcd(&b1).gcd(&c0);
        (a2 / &g, b1 / &g, c0 / &g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        // (-4 + √40)/2 = −2 + √10
        let x = QuadraticSurd::new(-4, 1, 2, 40).unwrap();
        let s = x.as_surd().unwrap();
        assert_eq!(
            (s.a(), s.b(), s.c(), s.radicand()),
            (&BigInt::from(-2), &BigInt::one(), &BigInt::one(), &BigInt::from(10))
        );
        // negative denominator flips signs
        let y = QuadraticSurd::new(1, 1, -2, 3).unwrap();
        let t = y.as_surd().unwrap();
        assert_eq!((t.a(), t.b(), t.c()), (&BigInt::from(-1), &BigInt::from(-1), &BigInt::from(2)));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(QuadraticSurd::new(1, 1, 0, 2), Err(Error::DivisionByZero));
        assert_eq!(QuadraticSurd::new(1, 1, 1, -2), Err(Error::NegativeInput));
    }

    #[test]
    fn minimal_polynomial_of_sqrt2() {
        let x = ExactNumber::sqrt(2).unwrap();
        let (a, b, c) = x.as_surd().unwrap().minimal_polynomial();
        assert_eq!((a, b, c), (BigInt::one(), BigInt::zero(), BigInt::from(-2)));
        let y = QuadraticSurd::new(5, 1, 6, 13).unwrap();
        let (a, b, c) = y.as_surd().unwrap().minimal_polynomial();
        assert_eq!((a, b, c), (BigInt::from(3), BigInt::from(-5), BigInt::one()));
    }
}
