//! Matching of the orbits of `α` and `α + 1`, its stability, and the
//! parameter intervals on which it persists.

mod badrat;
mod cylinder;
mod theorem;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::exact::{BigRational, ExactNumber};
use crate::expansion::{matrix_for_digits, step, Params};
use crate::mobius::MobiusMatrix;
use crate::{Error, Result};

pub use badrat::{bad_rational_certificate, BadRationalCertificate};
pub use cylinder::{
    boundary_roots, cylinder_interval, matching_interval, CylinderKind, MatchingInterval,
    ParamInterval,
};
pub use theorem::{check_theorem_instance, verify_theorem_intervals, Family, TheoremCheck};

/// Verdict of the matrix criterion `R M_K ∼ M_L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stability {
    Stable,
    Unstable,
    /// The matrices differ, but instability is only proven for `N = 2`.
    UnknownForThisN,
}

/// `T^K(α) = T^L(α + 1)` with `(K, L)` minimal by `K + L`, then `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchReport {
    pub k: usize,
    pub l: usize,
    pub matched_value: ExactNumber,
    /// `K − L`.
    pub index: i64,
    /// Stability of this particular pair.
    pub stable: Stability,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchOutcome {
    Matched(MatchReport),
    NoMatchWithinBudget { obstruction: Obstruction },
}

/// The mod-`N` no-matching argument for rational `α = t₀/s₀`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// `(N, α)` is in the coprime region and `N` divides neither `t₀` nor
    /// `t₀ + s₀`: there is no matching at all.
    ObstructionHolds,
    HypothesesFail,
}

fn params_for(alpha: &BigRational, n: u64) -> Result<Params> {
    Params::new(n, ExactNumber::Rational(alpha.clone()))
}

/// `x, T(x), …, T^{len−1}(x)` together with the digits taken.
fn orbit_points(x: &ExactNumber, p: &Params, len: usize) -> Result<(Vec<ExactNumber>, Vec<u64>)> {
    let mut points = Vec::with_capacity(len + 1);
    let mut digits = Vec::with_capacity(len);
    let mut y = x.clone();
    for _ in 0..len {
        let (d, next) = step(&y, p)?;
        points.push(core::mem::replace(&mut y, next));
        digits.push(d);
    }
    points.push(y);
    Ok((points, digits))
}

/// Orbits of `α` and `α + 1` with `budget` steps each.
struct EndpointOrbits {
    a_points: Vec<ExactNumber>,
    a_digits: Vec<u64>,
    b_points: Vec<ExactNumber>,
    b_digits: Vec<u64>,
}

impl EndpointOrbits {
    fn new(p: &Params, budget: usize) -> Result<Self> {
        let (a_points, a_digits) = orbit_points(p.alpha(), p, budget)?;
        let (b_points, b_digits) = orbit_points(p.alpha_plus_one(), p, budget)?;
        Ok(EndpointOrbits {
            a_points,
            a_digits,
            b_points,
            b_digits,
        })
    }

    fn rm(&self, n: u64, k: usize) -> MobiusMatrix {
        &MobiusMatrix::shift() * &matrix_for_digits(n, &self.a_digits[..k])
    }

    fn m(&self, n: u64, l: usize) -> MobiusMatrix {
        matrix_for_digits(n, &self.b_digits[..l])
    }
}

fn stability_of(rm: &MobiusMatrix, m: &MobiusMatrix, n: u64) -> Stability {
    if rm.projective_equiv(m) {
        Stability::Stable
    } else if n == 2 {
        Stability::Unstable
    } else {
        Stability::UnknownForThisN
    }
}

/// Looks for `T^K(α) = T^L(α + 1)` with `K, L ≤ budget`.
pub fn detect_matching(alpha: &BigRational, n: u64, budget: usize) -> Result<MatchOutcome> {
    let p = params_for(alpha, n)?;
    let orbits = EndpointOrbits::new(&p, budget)?;
    let mut first_b: BTreeMap<&ExactNumber, usize> = BTreeMap::new();
    for (j, y) in orbits.b_points.iter().enumerate() {
        first_b.entry(y).or_insert(j);
    }
    let mut best: Option<(usize, usize)> = None;
    for (i, x) in orbits.a_points.iter().enumerate() {
        if let Some(&j) = first_b.get(x) {
            if best.is_none_or(|(k, l)| (i + j, i) < (k + l, k)) {
                best = Some((i, j));
            }
        }
    }
    let Some((k, l)) = best else {
        return Ok(MatchOutcome::NoMatchWithinBudget {
            obstruction: no_matching_obstruction(alpha, n),
        });
    };
    Ok(MatchOutcome::Matched(MatchReport {
        k,
        l,
        matched_value: orbits.a_points[k].clone(),
        index: k as i64 - l as i64,
        stable: stability_of(&orbits.rm(n, k), &orbits.m(n, l), n),
    }))
}

/// Applies the matrix criterion to a verified matching pair.
pub fn stability_check(alpha: &BigRational, n: u64, k: usize, l: usize) -> Result<Stability> {
    let p = params_for(alpha, n)?;
    let (a_points, a_digits) = orbit_points(p.alpha(), &p, k)?;
    let (b_points, b_digits) = orbit_points(p.alpha_plus_one(), &p, l)?;
    if a_points[k] != b_points[l] {
        return Err(Error::PrerequisiteNotMet(alloc::format!(
            "T^{k}(alpha) = {} but T^{l}(alpha + 1) = {}",
            a_points[k],
            b_points[l]
        )));
    }
    let rm = &MobiusMatrix::shift() * &matrix_for_digits(n, &a_digits);
    Ok(stability_of(&rm, &matrix_for_digits(n, &b_digits), n))
}

/// Primitive representative with the first nonzero entry positive; two
/// matrices are projectively equivalent iff these agree.
fn projective_key(m: &MobiusMatrix) -> [BigInt; 4] {
    let p = m.primitive();
    let flip = p.entries().iter().find(|e| !e.is_zero()).is_some_and(|e| e.is_negative());
    let k = if flip { p.scaled(&BigInt::from(-1)) } else { p };
    [k.a, k.b, k.c, k.d]
}

/// All `(K, L)` with `K, L ≤ max` and `R M_K ∼ M_L`, in order of `K + L`,
/// then `K`.
pub fn equivalent_exponent_pairs(
    alpha: &BigRational,
    n: u64,
    max: usize,
) -> Result<Vec<(usize, usize)>> {
    let p = params_for(alpha, n)?;
    let orbits = EndpointOrbits::new(&p, max)?;
    let mut by_key: BTreeMap<[BigInt; 4], Vec<usize>> = BTreeMap::new();
    let mut m = MobiusMatrix::identity();
    for l in 0..=max {
        by_key.entry(projective_key(&m)).or_default().push(l);
        if l < max {
            m = &m * &MobiusMatrix::digit(n, orbits.b_digits[l]);
        }
    }
    let mut out = Vec::new();
    let mut rm = MobiusMatrix::shift();
    for k in 0..=max {
        if let Some(ls) = by_key.get(&projective_key(&rm)) {
            out.extend(ls.iter().map(|&l| (k, l)));
        }
        if k < max {
            rm = &rm * &MobiusMatrix::digit(n, orbits.a_digits[k]);
        }
    }
    out.sort_by_key(|&(k, l)| (k + l, k));
    Ok(out)
}

/// The minimal stable exponents `(K, L)` with `K, L ≤ max`, if any.
pub fn find_stable_exponents(
    alpha: &BigRational,
    n: u64,
    max: usize,
) -> Result<Option<(usize, usize)>> {
    Ok(equivalent_exponent_pairs(alpha, n, max)?.first().copied())
}

/// Checks the hypotheses of the mod-`N` no-matching argument.
pub fn no_matching_obstruction(alpha: &BigRational, n: u64) -> Obstruction {
    let Ok(p) = params_for(alpha, n) else {
        return Obstruction::HypothesesFail;
    };
    let nb = BigInt::from(n);
    let (t0, s0) = (alpha.numer(), alpha.denom());
    let divides = |v: &BigInt| v.mod_floor(&nb).is_zero();
    if p.in_coprime_region() && !divides(t0) && !divides(&(t0 + s0)) {
        Obstruction::ObstructionHolds
    } else {
        Obstruction::HypothesesFail
    }
}
