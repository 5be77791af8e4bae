use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;

use super::{equivalent_exponent_pairs, orbit_points, params_for};
use crate::exact::{quadratic_roots, solve_mobius_fixed_point, BigRational, ExactNumber};
use crate::expansion::{expand, matrix_for_digits, Params};
use crate::mobius::MobiusMatrix;
use crate::{Error, Result};

/// An interval of parameters with exact endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamInterval {
    pub lo: ExactNumber,
    pub hi: ExactNumber,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl ParamInterval {
    pub fn new(lo: ExactNumber, hi: ExactNumber, lo_open: bool, hi_open: bool) -> Result<Self> {
        if lo >= hi {
            return Err(Error::EmptyInterval);
        }
        Ok(ParamInterval {
            lo,
            hi,
            lo_open,
            hi_open,
        })
    }

    pub fn open(lo: ExactNumber, hi: ExactNumber) -> Result<Self> {
        Self::new(lo, hi, true, true)
    }

    pub fn contains(&self, x: &ExactNumber) -> bool {
        let above = match x.cmp(&self.lo) {
            Ordering::Greater => true,
            Ordering::Equal => !self.lo_open,
            Ordering::Less => false,
        };
        let below = match x.cmp(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => !self.hi_open,
            Ordering::Greater => false,
        };
        above && below
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        let (lo, lo_open) = match self.lo.cmp(&other.lo) {
            Ordering::Greater => (self.lo.clone(), self.lo_open),
            Ordering::Less => (other.lo.clone(), other.lo_open),
            Ordering::Equal => (self.lo.clone(), self.lo_open || other.lo_open),
        };
        let (hi, hi_open) = match self.hi.cmp(&other.hi) {
            Ordering::Less => (self.hi.clone(), self.hi_open),
            Ordering::Greater => (other.hi.clone(), other.hi_open),
            Ordering::Equal => (self.hi.clone(), self.hi_open || other.hi_open),
        };
        Self::new(lo, hi, lo_open, hi_open)
    }

    /// The inclusion `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.intersect(other).is_ok_and(|i| i == *self)
    }
}

/// Which endpoint of the domain a cylinder constrains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CylinderKind {
    /// Parameters `α` whose own expansion starts with the digits.
    Alpha,
    /// Parameters `α` for which the expansion of `α + 1` starts with them.
    AlphaPlusOne,
}

impl CylinderKind {
    fn shift(self) -> bool {
        self == CylinderKind::AlphaPlusOne
    }

    fn point(self, alpha: &BigRational) -> ExactNumber {
        match self {
            CylinderKind::Alpha => ExactNumber::Rational(alpha.clone()),
            CylinderKind::AlphaPlusOne => ExactNumber::Rational(alpha + BigRational::from_integer(1.into())),
        }
    }
}

fn check_digits(digits: &[u64]) -> Result<()> {
    if digits.is_empty() || digits.contains(&0) {
        return Err(Error::InvalidParams("digit prefix must be nonempty with digits >= 1".into()));
    }
    Ok(())
}

fn parameter_space(n: u64) -> Result<ParamInterval> {
    ParamInterval::open(ExactNumber::zero(), ExactNumber::sqrt(n)?.add_int(-1))
}

/// The sample parameter reproduces the digit prefix.
fn prefix_holds(kind: CylinderKind, digits: &[u64], n: u64, alpha: &BigRational) -> bool {
    let Ok(p) = params_for(alpha, n) else {
        return false;
    };
    expand(&kind.point(alpha), &p, digits.len()).is_ok_and(|w| w.prefix() == digits)
}

/// Roots of `α + s = M(α)` strictly inside `(lo, hi)`.
fn roots_inside(m: &MobiusMatrix, shift: bool, lo: &ExactNumber, hi: &ExactNumber) -> Vec<ExactNumber> {
    let s = BigInt::from(shift as u8);
    let c1 = &m.d + &s * &m.c - &m.a;
    let c0 = &s * &m.d - &m.b;
    quadratic_roots(&m.c, &c1, &c0)
        .unwrap_or_default()
        .into_iter()
        .filter(|r| lo < r && r < hi)
        .collect()
}

/// `Δ^α(d₁…dₙ)` or `Δ^{α+1}(d₁…dₙ)`: all `α ∈ (0, √N − 1)` for which the
/// point starts with the given digits.
///
/// Built one digit at a time. With the first `j − 1` digits fixed, the `j`-th
/// digit can only change where `T^{j−1}` of the point hits `N/(d_j + α)`,
/// `N/(d_j + 1 + α)` or the domain end `α + 1`; these are fixed points of
/// `M B_{d_j}`, `M B_{d_j+1}` and `M R`. Each piece between consecutive
/// roots is tested at an exact rational sample.
pub fn cylinder_interval(kind: CylinderKind, digits: &[u64], n: u64) -> Result<ParamInterval> {
    check_digits(digits)?;
    let mut current = parameter_space(n)?;
    let mut m = MobiusMatrix::identity();
    for j in 0..digits.len() {
        let d = digits[j];
        let mut cuts: Vec<ExactNumber> = Vec::new();
        let mut candidates = alloc::vec![&m * &MobiusMatrix::digit(n, d), &m * &MobiusMatrix::digit(n, d + 1)];
        if j > 0 {
            candidates.push(&m * &MobiusMatrix::shift());
        }
        for c in &candidates {
            cuts.extend(roots_inside(c, kind.shift(), &current.lo, &current.hi));
        }
        cuts.push(current.lo.clone());
        cuts.push(current.hi.clone());
        cuts.sort();
        cuts.dedup();
        let good: Vec<bool> = cuts
            .windows(2)
            .map(|w| {
                let sample = ExactNumber::rational_between(&w[0], &w[1]);
                prefix_holds(kind, &digits[..=j], n, &sample)
            })
            .collect();
        let first = good.iter().position(|&g| g).ok_or(Error::EmptyInterval)?;
        let last = good.iter().rposition(|&g| g).expect("some piece is good");
        if good[first..=last].iter().any(|&g| !g) {
            return Err(Error::InvariantViolation(format!(
                "cylinder of {digits:?} is not an interval at digit {}",
                j + 1
            )));
        }
        current = ParamInterval::open(cuts[first].clone(), cuts[last + 1].clone())?;
        m = &m * &MobiusMatrix::digit(n, d);
    }
    Ok(current)
}

/// The two boundary equations of a cylinder solved as written: `α₁` from
/// `[0; d₁, …, dₙ + 1, α₁]` and `α₂` from `[0; d₁, …, dₙ, α₂]` if `dₙ > 1`,
/// else `[0; d₁, …, d_{n−1}, α₂ + 1]`, both within `(0, √N − 1]`. Returned
/// as `(α₁, α₂)` for odd `n` and `(α₂, α₁)` for even `n`.
pub fn boundary_roots(kind: CylinderKind, digits: &[u64], n: u64) -> Result<ParamInterval> {
    check_digits(digits)?;
    let space = parameter_space(n)?;
    let len = digits.len();
    let last = digits[len - 1];
    let mut bumped = digits.to_vec();
    bumped[len - 1] += 1;
    let m1 = matrix_for_digits(n, &bumped);
    let m2 = if last > 1 {
        matrix_for_digits(n, digits)
    } else {
        &matrix_for_digits(n, &digits[..len - 1]) * &MobiusMatrix::shift()
    };
    let solve = |m: &MobiusMatrix| {
        solve_mobius_fixed_point(m, kind.shift(), Some(&space.lo), Some(&space.hi))
    };
    let (a1, a2) = (solve(&m1)?, solve(&m2)?);
    if len % 2 == 1 {
        ParamInterval::open(a1, a2)
    } else {
        ParamInterval::open(a2, a1)
    }
}

/// A matching interval together with its exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingInterval {
    pub interval: ParamInterval,
    pub k: usize,
    pub l: usize,
}

/// The interval around rational `α` on which `α` and `α + 1` match with
/// the same exponents. Only for `N = 2`, where the matrix criterion is an
/// equivalence.
pub fn matching_interval(alpha: &BigRational, n: u64, budget: usize) -> Result<MatchingInterval> {
    if n != 2 {
        return Err(Error::NotApplicable(format!("matching intervals need N = 2, got {n}")));
    }
    let (k, l) = equivalent_exponent_pairs(alpha, n, budget)?
        .first()
        .copied()
        .ok_or(Error::BadRational)?;
    let p: Params = params_for(alpha, n)?;
    let (_, a_digits) = orbit_points(p.alpha(), &p, k)?;
    let (_, b_digits) = orbit_points(p.alpha_plus_one(), &p, l)?;
    let lhs = if k == 0 {
        parameter_space(n)?
    } else {
        cylinder_interval(CylinderKind::Alpha, &a_digits, n)?
    };
    let rhs = if l == 0 {
        parameter_space(n)?
    } else {
        cylinder_interval(CylinderKind::AlphaPlusOne, &b_digits, n)?
    };
    Ok(MatchingInterval {
        interval: lhs.intersect(&rhs)?,
        k,
        l,
    })
}
