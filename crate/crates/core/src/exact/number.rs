use alloc::string::String;
use core::cmp::Ordering;
use core::fmt::Write as _;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::isqrt::isqrt;
use super::surd::QuadraticSurd;
use super::BigRational;
use crate::{Error, Result};

/// An exact real number: a rational, or a quadratic surd `(a + b√D)/c`.
///
/// Rational values are always carried in the [`ExactNumber::Rational`] arm;
/// constructors collapse surds whose irrational part vanishes. Equality and
/// ordering are numeric and decided exactly, also across different radicands.
#[derive(Clone, Debug)]
pub enum ExactNumber {
    Rational(BigRational),
    Surd(QuadraticSurd),
}

/// The four field operations of [`surd_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Applies `op` to two numbers of the same quadratic field.
pub fn surd_arith(x: &ExactNumber, y: &ExactNumber, op: ArithOp) -> Result<ExactNumber> {
    match op {
        ArithOp::Add => x.checked_add(y),
        ArithOp::Sub => x.checked_sub(y),
        ArithOp::Mul => x.checked_mul(y),
        ArithOp::Div => x.checked_div(y),
    }
}

/// Greatest integer not exceeding `x`.
pub fn floor_exact(x: &ExactNumber) -> BigInt {
    x.floor()
}

/// Exact trichotomy of `x` and `y`.
pub fn compare_exact(x: &ExactNumber, y: &ExactNumber) -> Ordering {
    x.cmp(y)
}

/// `(a + b√d)/c` with the radicand held separately.
#[derive(Clone, Debug)]
pub(crate) struct Lin {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl Lin {
    fn of(x: &ExactNumber) -> Lin {
        match x {
            ExactNumber::Rational(r) => Lin {
                a: r.numer().clone(),
                b: BigInt::zero(),
                c: r.denom().clone(),
            },
            ExactNumber::Surd(s) => Lin {
                a: s.a().clone(),
                b: s.b().clone(),
                c: s.c().clone(),
            },
        }
    }
}

/// Sign of `s + t√d` for `d ≥ 0`.
pub(crate) fn sign_of(s: &BigInt, t: &BigInt, d: &BigInt) -> Ordering {
    let ss = s.sign();
    let ts = if d.is_zero() { Sign::NoSign } else { t.sign() };
    match (ss, ts) {
        (_, Sign::NoSign) => sign_to_ord(ss),
        (Sign::NoSign, _) => sign_to_ord(ts),
        (a, b) if a == b => sign_to_ord(a),
        (Sign::Plus, _) => (s * s).cmp(&(t * t * d)),
        (_, _) => (t * t * d).cmp(&(s * s)),
    }
}

fn sign_to_ord(s: Sign) -> Ordering {
    match s {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    }
}

/// Sign of `u + v√d1 + w√d2`.
fn sign_of_two(u: &BigInt, v: &BigInt, d1: &BigInt, w: &BigInt, d2: &BigInt) -> Ordering {
    let p = sign_of(u, v, d1);
    let q = sign_of(&BigInt::zero(), w, d2);
    if q == Ordering::Equal {
        return p;
    }
    if p == Ordering::Equal || p == q {
        return if p == Ordering::Equal { q } else { p };
    }
    // Opposite signs: compare magnitudes through (u + v√d1)² − w²d2.
    let s = u * u + v * v * d1 - w * w * d2;
    let t = BigInt::from(2) * u * v;
    match sign_of(&s, &t, d1) {
        Ordering::Greater => p,
        Ordering::Less => q,
        Ordering::Equal => Ordering::Equal,
    }
}

impl ExactNumber {
    pub fn integer(n: impl Into<BigInt>) -> Self {
        ExactNumber::Rational(BigRational::from_integer(n.into()))
    }

    /// `n/d` as an exact rational. Panics if `d` is zero.
    pub fn ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        ExactNumber::Rational(BigRational::new(n.into(), d.into()))
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    /// `√n` for a non-negative integer; rational when `n` is a perfect square.
    pub fn sqrt(n: impl Into<BigInt>) -> Result<Self> {
        QuadraticSurd::new(0, 1, 1, n)
    }

    /// `(a + b√d)/c`, normalized.
    pub fn surd(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        QuadraticSurd::new(a, b, c, d)
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, ExactNumber::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ExactNumber::Rational(r) => Some(r),
            ExactNumber::Surd(_) => None,
        }
    }

    pub fn as_surd(&self) -> Option<&QuadraticSurd> {
        match self {
            ExactNumber::Rational(_) => None,
            ExactNumber::Surd(s) => Some(s),
        }
    }

    pub fn is_integer(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_integer())
    }

    pub fn is_zero(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_zero())
    }

    /// Radicand of an irrational value.
    pub fn radicand(&self) -> Option<&BigInt> {
        self.as_surd().map(QuadraticSurd::radicand)
    }

    /// Common radicand of two operands, `None` if both are rational.
    fn field(&self, other: &Self) -> Result<Option<BigInt>> {
        match (self.radicand(), other.radicand()) {
            (None, None) => Ok(None),
            (Some(d), None) | (None, Some(d)) => Ok(Some(d.clone())),
            (Some(d1), Some(d2)) if d1 == d2 => Ok(Some(d1.clone())),
            _ => Err(Error::MixedRadicands),
        }
    }

    pub(crate) fn from_lin(l: Lin, d: &BigInt) -> Self {
        QuadraticSurd::from_reduced(l.a, l.b, l.c, d.clone())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if let (Some(x), Some(y)) = (self.as_rational(), other.as_rational()) {
            return Ok(ExactNumber::Rational(x + y));
        }
        let d = self.field(other)?.expect("irrational operand");
        let (x, y) = (Lin::of(self), Lin::of(other));
        Ok(Self::from_lin(
            Lin {
                a: &x.a * &y.c + &y.a * &x.c,
                b: &x.b * &y.c + &y.b * &x.c,
                c: &x.c * &y.c,
            },
            &d,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if let (Some(x), Some(y)) = (self.as_rational(), other.as_rational()) {
            return Ok(ExactNumber::Rational(x * y));
        }
        let d = self.field(other)?.expect("irrational operand");
        let (x, y) = (Lin::of(self), Lin::of(other));
        Ok(Self::from_lin(
            Lin {
                a: &x.a * &y.a + &x.b * &y.b * &d,
                b: &x.a * &y.b + &x.b * &y.a,
                c: &x.c * &y.c,
            },
            &d,
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.field(other)?;
        self.checked_mul(&other.recip()?)
    }

    pub fn recip(&self) -> Result<Self> {
        match self {
            ExactNumber::Rational(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(ExactNumber::Rational(r.recip()))
                }
            }
            ExactNumber::Surd(s) => {
                let d = s.radicand();
                let norm = s.a() * s.a() - s.b() * s.b() * d;
                Ok(Self::from_lin(
                    Lin {
                        a: s.c() * s.a(),
                        b: -(s.c() * s.b()),
                        c: norm,
                    },
                    d,
                ))
            }
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(&self) -> Self {
        match self {
            ExactNumber::Rational(r) => ExactNumber::Rational(-r),
            ExactNumber::Surd(s) => ExactNumber::Surd(s.negated()),
        }
    }

    pub fn add_rational(&self, r: &BigRational) -> Self {
        match self {
            ExactNumber::Rational(x) => ExactNumber::Rational(x + r),
            ExactNumber::Surd(s) => Self::from_lin(
                Lin {
                    a: s.a() * r.denom() + r.numer() * s.c(),
                    b: s.b() * r.denom(),
                    c: s.c() * r.denom(),
                },
                s.radicand(),
            ),
        }
    }

    pub fn mul_rational(&self, r: &BigRational) -> Self {
        match self {
            ExactNumber::Rational(x) => ExactNumber::Rational(x * r),
            ExactNumber::Surd(s) => Self::from_lin(
                Lin {
                    a: s.a() * r.numer(),
                    b: s.b() * r.numer(),
                    c: s.c() * r.denom(),
                },
                s.radicand(),
            ),
        }
    }

    pub fn add_int(&self, n: impl Into<BigInt>) -> Self {
        self.add_rational(&BigRational::from_integer(n.into()))
    }

    pub fn mul_int(&self, n: impl Into<BigInt>) -> Self {
        self.mul_rational(&BigRational::from_integer(n.into()))
    }

    /// `n / self`.
    pub fn int_div(&self, n: impl Into<BigInt>) -> Result<Self> {
        Ok(self.recip()?.mul_int(n))
    }

    pub fn signum(&self) -> Ordering {
        match self {
            ExactNumber::Rational(r) => sign_to_ord(r.numer().sign()),
            ExactNumber::Surd(s) => sign_of(s.a(), s.b(), s.radicand()),
        }
    }

    /// Greatest integer `≤ self`, using an integer square root for surds.
    pub fn floor(&self) -> BigInt {
        match self {
            ExactNumber::Rational(r) => r.numer().div_floor(r.denom()),
            ExactNumber::Surd(s) => {
                // √(b²D) is irrational, so it lies strictly between r and r + 1.
                let root = BigInt::from(isqrt((s.b() * s.b() * s.radicand()).magnitude()));
                let top = if s.b().is_positive() {
                    s.a() + root
                } else {
                    s.a() - root - 1
                };
                top.div_floor(s.c())
            }
        }
    }

    pub fn ceil(&self) -> BigInt {
        -self.neg().floor()
    }

    /// Round-half-up decimal rendering with `precision` fractional digits.
    pub fn to_decimal_string(&self, precision: usize) -> String {
        let scale = BigInt::from(10u32).pow(precision as u32);
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let scaled = self.mul_int(scale.clone()).add_rational(&half).floor();
        let negative = scaled.is_negative();
        let (whole, frac) = scaled.abs().div_rem(&scale);
        let mut out = String::new();
        if negative {
            out.push('-');
        }
        let _ = write!(out, "{whole}");
        if precision > 0 {
            let _ = write!(out, ".{:0>width$}", frac.to_str_radix(10), width = precision);
        }
        out
    }

    /// Lossy conversion for diagnostics and display.
    pub fn to_f64(&self) -> f64 {
        let s = self.to_decimal_string(20);
        s.parse().unwrap_or(f64::NAN)
    }

    /// Smallest `m/2^k` strictly above `self`.
    fn dyadic_above(&self, k: u32) -> BigRational {
        let scale = BigInt::one() << k;
        let m = self.mul_int(scale.clone()).floor() + 1;
        BigRational::new(m, scale)
    }

    /// Largest `m/2^k` strictly below `self`.
    fn dyadic_below(&self, k: u32) -> BigRational {
        let scale = BigInt::one() << k;
        let m = self.mul_int(scale.clone()).ceil() - 1;
        BigRational::new(m, scale)
    }

    /// A rational strictly between `lo` and `hi`. Requires `lo < hi`.
    pub fn rational_between(lo: &Self, hi: &Self) -> BigRational {
        assert!(lo < hi, "rational_between needs lo < hi");
        let mut k = 0u32;
        loop {
            let q = lo.dyadic_above(k);
            if ExactNumber::Rational(q.clone()) < *hi {
                return q;
            }
            k = if k == 0 { 1 } else { 2 * k };
        }
    }

    /// `count` rationals strictly inside `(lo, hi)`, evenly spaced between
    /// two dyadic points close to the ends.
    pub fn rationals_inside(lo: &Self, hi: &Self, count: usize) -> alloc::vec::Vec<BigRational> {
        assert!(lo < hi, "rationals_inside needs lo < hi");
        if count <= 1 {
            return alloc::vec![Self::rational_between(lo, hi)];
        }
        let need = BigRational::from_integer(BigInt::from(4 * count));
        let mut k = 1u32;
        let (a, b) = loop {
            let a = lo.dyadic_above(k);
            let b = hi.dyadic_below(k);
            if a < b && (&b - &a) * BigRational::from_integer(BigInt::one() << k) >= need {
                break (a, b);
            }
            k *= 2;
        };
        let steps = BigInt::from(count - 1);
        (0..count)
            .map(|i| &a + (&b - &a) * BigRational::new(BigInt::from(i), steps.clone()))
            .collect()
    }
}

impl PartialEq for ExactNumber {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ExactNumber {}

impl PartialOrd for ExactNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExactNumber::Rational(x), ExactNumber::Rational(y)) => x.cmp(y),
            _ => {
                let (x, y) = (Lin::of(self), Lin::of(other));
                let zero = BigInt::zero();
                let d1 = self.radicand().unwrap_or(&zero);
                let d2 = other.radicand().unwrap_or(&zero);
                // c₁c₂(x − y) = u + v√d1 + w√d2 with c₁c₂ > 0.
                let u = &x.a * &y.c - &y.a * &x.c;
                let v = &x.b * &y.c;
                let w = -(&y.b * &x.c);
                if d1 == d2 {
                    sign_of(&u, &(v + w), d1)
                } else if d2.is_zero() {
                    sign_of(&u, &v, d1)
                } else if d1.is_zero() {
                    sign_of(&u, &w, d2)
                } else {
                    sign_of_two(&u, &v, d1, &w, d2)
                }
            }
        }
    }
}

impl From<BigRational> for ExactNumber {
    fn from(r: BigRational) -> Self {
        ExactNumber::Rational(r)
    }
}

impl From<BigInt> for ExactNumber {
    fn from(n: BigInt) -> Self {
        ExactNumber::integer(n)
    }
}

impl From<i64> for ExactNumber {
    fn from(n: i64) -> Self {
        ExactNumber::integer(n)
    }
}

impl From<QuadraticSurd> for ExactNumber {
    fn from(s: QuadraticSurd) -> Self {
        ExactNumber::Surd(s)
    }
}
