//! Exact orbits of rationals and quadratic irrationals, with cycle
//! detection and the divisibility bookkeeping behind non-periodicity.

mod diagnostics;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use crate::exact::{integer_sqrt, BigRational, ExactNumber, QuadraticSurd};
use crate::expansion::{step, DigitWord, Params};
use crate::{Error, Result};

pub use diagnostics::{
    divisibility_diagnostics, nonperiodicity_certificate, Certificate, CertificateReason,
    DivisibilityReport,
};

/// Outcome of an orbit computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `x_{pre} = x_{pre + period}` with both minimal.
    Periodic { pre_period: usize, period: usize },
    NoPeriodWithinBudget,
}

/// Raw numerator and denominator `x_n = t_n/s_n`, not reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalOrbitState {
    pub t: BigInt,
    pub s: BigInt,
}

impl RationalOrbitState {
    pub fn reduced(&self) -> BigRational {
        BigRational::new(self.t.clone(), self.s.clone())
    }
}

/// Coefficients of `A x² + B x + C` vanishing at `x_n`.
///
/// `raw` follows the recurrences without any division, `normalized` is the
/// primitive triple with `A > 0`; `plus_root` tells whether `x_n` is
/// `(−B + √(B² − 4AC))/(2A)` for the normalized triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadCoeffState {
    pub raw: (BigInt, BigInt, BigInt),
    pub normalized: (BigInt, BigInt, BigInt),
    pub plus_root: bool,
}

/// Points `x_0, x_1, …` with `digits[i] = d(x_i)` and one state per point.
///
/// For a periodic orbit the points stop just before the first repeat, so
/// `points.len() == pre_period + period`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitTrace<S> {
    pub n: u64,
    pub points: Vec<ExactNumber>,
    pub digits: Vec<u64>,
    pub states: Vec<S>,
    pub verdict: Verdict,
}

impl<S> OrbitTrace<S> {
    /// Index of the first point equal to an earlier one.
    pub fn first_repeat(&self) -> Option<usize> {
        match self.verdict {
            Verdict::Periodic { pre_period, period } => Some(pre_period + period),
            Verdict::NoPeriodWithinBudget => None,
        }
    }

    /// The orbit passes through the fixed point 1.
    pub fn hits_one(&self) -> bool {
        let one = ExactNumber::one();
        self.points.iter().any(|x| *x == one)
    }

    /// Digits of the repeating block, if periodic.
    pub fn digit_period(&self) -> Option<&[u64]> {
        match self.verdict {
            Verdict::Periodic { pre_period, period } => {
                Some(&self.digits[pre_period..pre_period + period])
            }
            Verdict::NoPeriodWithinBudget => None,
        }
    }
}

/// Iterates `T` from `x0` for at most `budget` steps, stopping at the first
/// repeated value. `advance` maps a state and the digit just taken to the
/// next state.
fn run_orbit<S>(
    x0: ExactNumber,
    p: &Params,
    budget: usize,
    s0: S,
    mut advance: impl FnMut(&S, u64, &ExactNumber) -> Result<S>,
) -> Result<OrbitTrace<S>> {
    if !p.contains(&x0) {
        return Err(Error::OutOfDomain(format!("{x0}")));
    }
    let mut seen: BTreeMap<ExactNumber, usize> = BTreeMap::new();
    let mut points = Vec::new();
    let mut digits = Vec::new();
    let mut states = Vec::new();
    let mut x = x0;
    let mut state = s0;
    let mut verdict = Verdict::NoPeriodWithinBudget;
    for i in 0..=budget {
        if let Some(&j) = seen.get(&x) {
            verdict = Verdict::Periodic {
                pre_period: j,
                period: i - j,
            };
            break;
        }
        if i == budget {
            break;
        }
        let (d, next) = step(&x, p)?;
        let next_state = advance(&state, d, &next)?;
        seen.insert(x.clone(), i);
        points.push(core::mem::replace(&mut x, next));
        digits.push(d);
        states.push(core::mem::replace(&mut state, next_state));
    }
    Ok(OrbitTrace {
        n: p.n(),
        points,
        digits,
        states,
        verdict,
    })
}

/// Orbit of a rational point, carrying raw `t_{n+1} = N s_n − d_{n+1} t_n`,
/// `s_{n+1} = t_n` next to the reduced values.
pub fn orbit_rational(
    x: &BigRational,
    p: &Params,
    budget: usize,
) -> Result<OrbitTrace<RationalOrbitState>> {
    let n = BigInt::from(p.n());
    let s0 = RationalOrbitState {
        t: x.numer().clone(),
        s: x.denom().clone(),
    };
    run_orbit(ExactNumber::Rational(x.clone()), p, budget, s0, |st, d, next| {
        let t = &n * &st.s - BigInt::from(d) * &st.t;
        let st = RationalOrbitState {
            t,
            s: st.t.clone(),
        };
        if ExactNumber::Rational(st.reduced()) != *next {
            return Err(Error::InvariantViolation(format!(
                "raw state {}/{} differs from {next}",
                st.t, st.s
            )));
        }
        Ok(st)
    })
}

/// Orbit of a quadratic irrational, advancing
/// `A' = C`, `B' = N B + 2 d C`, `C' = N² A + N B d + C d²`
/// and checking at every step that the selected root of the triple is the
/// point obtained from the map.
pub fn orbit_quadratic(
    x0: &ExactNumber,
    p: &Params,
    budget: usize,
) -> Result<OrbitTrace<QuadCoeffState>> {
    let surd = x0.as_surd().ok_or(Error::NotIrrational)?;
    let radicand = surd.radicand().clone();
    let (a, b, c) = surd.minimal_polynomial();
    let s0 = QuadCoeffState {
        normalized: (a.clone(), b.clone(), c.clone()),
        plus_root: root_sign(&a, &b, &c, &radicand, x0)?,
        raw: (a, b, c),
    };
    let n = BigInt::from(p.n());
    run_orbit(x0.clone(), p, budget, s0, |st, d, next| {
        let d = BigInt::from(d);
        let (a, b, c) = &st.raw;
        let raw = (
            c.clone(),
            &n * b + BigInt::from(2) * &d * c,
            &n * &n * a + &n * b * &d + c * &d * &d,
        );
        let g = raw.0.gcd(&raw.1).gcd(&raw.2);
        let sign = if raw.0.is_negative() { -g } else { g };
        let normalized = (&raw.0 / &sign, &raw.1 / &sign, &raw.2 / &sign);
        let plus_root = root_sign(&normalized.0, &normalized.1, &normalized.2, &radicand, next)?;
        Ok(QuadCoeffState {
            raw,
            normalized,
            plus_root,
        })
    })
}

/// Which root of `a x² + b x + c` (with `a > 0`, discriminant `k² D`)
/// equals `x`.
fn root_sign(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt, x: &ExactNumber) -> Result<bool> {
    let disc = b * b - BigInt::from(4) * a * c;
    let (k2, rem) = disc.div_rem(d);
    let k = integer_sqrt(&k2).unwrap_or_default();
    if !rem.is_zero() || &k * &k != k2 || a.is_zero() {
        return Err(Error::InvariantViolation(format!(
            "discriminant {disc} is not a square multiple of {d}"
        )));
    }
    let den = BigInt::from(2) * a;
    for (plus, kk) in [(true, k.clone()), (false, -k)] {
        let root = QuadraticSurd::from_reduced(-b, kk, den.clone(), d.clone());
        if root == *x {
            return Ok(plus);
        }
    }
    Err(Error::InvariantViolation(format!("{x} is not a root of ({a}, {b}, {c})")))
}

/// `B_n² − 4A_nC_n = N^{2n}(B_0² − 4A_0C_0)` on the raw triples.
pub fn discriminant_check(trace: &OrbitTrace<QuadCoeffState>) -> bool {
    let disc = |(a, b, c): &(BigInt, BigInt, BigInt)| b * b - BigInt::from(4) * a * c;
    let Some(first) = trace.states.first() else {
        return true;
    };
    let d0 = disc(&first.raw);
    let n2 = BigInt::from(trace.n).pow(2u32);
    let mut scale = BigInt::one();
    trace.states.iter().all(|st| {
        let ok = disc(&st.raw) == &scale * &d0;
        scale *= &n2;
        ok
    })
}

/// The orbit of `x` passes through `1` within `budget` steps; from there on
/// every digit is `N − 1`.
pub fn reaches_one(x: &BigRational, p: &Params, budget: usize) -> Result<bool> {
    let trace = orbit_rational(x, p, budget)?;
    let one = ExactNumber::one();
    let Some(k) = trace.points.iter().position(|y| *y == one) else {
        return Ok(false);
    };
    if trace.digits[k..].iter().any(|&d| d != p.n() - 1) {
        return Err(Error::InvariantViolation("tail after 1 is not N - 1".into()));
    }
    Ok(true)
}

/// The eventually periodic expansion of a rational point, if its orbit
/// closes up within `budget` steps.
pub fn expansion_word(x: &BigRational, p: &Params, budget: usize) -> Result<Option<DigitWord>> {
    let trace = orbit_rational(x, p, budget)?;
    Ok(match trace.verdict {
        Verdict::Periodic { pre_period, .. } => Some(DigitWord::periodic(
            trace.digits[..pre_period].to_vec(),
            trace.digits[pre_period..].to_vec(),
        )),
        Verdict::NoPeriodWithinBudget => None,
    })
}
