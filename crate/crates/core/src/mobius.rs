//! 2×2 integer matrices acting as Möbius maps `x ↦ (ax + b)/(cx + d)`.

use core::fmt;
use core::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exact::{BigRational, ExactNumber};
use crate::{Error, Result};

/// `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MobiusMatrix {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl MobiusMatrix {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Self {
        MobiusMatrix {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn identity() -> Self {
        Self::new(1, 0, 0, 1)
    }

    /// `B_d = [[0, N], [1, d]]`, the inverse branch `x ↦ N/(d + x)`.
    pub fn digit(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        Self::new(0, n, 1, d)
    }

    /// `R = [[1, 1], [0, 1]]`, the translation `x ↦ x + 1`.
    pub fn shift() -> Self {
        Self::new(1, 1, 0, 1)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn is_zero(&self) -> bool {
        self.entries().iter().all(|e| e.is_zero())
    }

    /// `(ax + b)/(cx + d)`.
    pub fn apply(&self, x: &ExactNumber) -> Result<ExactNumber> {
        let den = x.mul_rational(&BigRational::from_integer(self.c.clone())).add_int(self.d.clone());
        if den.is_zero() {
            return Err(Error::PoleInput);
        }
        let num = x.mul_rational(&BigRational::from_integer(self.a.clone())).add_int(self.b.clone());
        num.checked_div(&den)
    }

    /// Both matrices represent the same Möbius map.
    pub fn projective_equiv(&self, other: &Self) -> bool {
        let x = self.entries();
        let y = other.entries();
        (0..4).all(|i| (i + 1..4).all(|j| x[i] * y[j] == x[j] * y[i]))
    }

    /// Entries reduced into `[0, m)`.
    pub fn residues(&self, m: &BigInt) -> [BigInt; 4] {
        self.entries().map(|e| e.mod_floor(m))
    }

    /// Divides all entries by their gcd; the zero matrix is returned as is.
    pub fn primitive(&self) -> Self {
        let g = self.a.gcd(&self.b).gcd(&self.c).gcd(&self.d);
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        Self::new(&self.a / &g, &self.b / &g, &self.c / &g, &self.d / &g)
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        Self::new(&self.a * k, &self.b * k, &self.c * k, &self.d * k)
    }
}

impl Mul for &MobiusMatrix {
    type Output = MobiusMatrix;

    fn mul(self, r: &MobiusMatrix) -> MobiusMatrix {
        MobiusMatrix {
            a: &self.a * &r.a + &self.b * &r.c,
            b: &self.a * &r.b + &self.b * &r.d,
            c: &self.c * &r.a + &self.d * &r.c,
            d: &self.c * &r.b + &self.d * &r.d,
        }
    }
}

impl Mul for MobiusMatrix {
    type Output = MobiusMatrix;

    fn mul(self, r: MobiusMatrix) -> MobiusMatrix {
        &self * &r
    }
}

impl fmt::Display for MobiusMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}
