use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{
    boundary_roots, cylinder_interval, detect_matching, matching_interval, params_for,
    stability_check, CylinderKind, MatchOutcome, ParamInterval, Stability,
};
use crate::exact::{BigRational, ExactNumber};
use crate::expansion::{matrix_for_digits, validate_by_order, validate_expansion, DigitWord};
use crate::mobius::MobiusMatrix;
use crate::orbits::expansion_word;
use crate::{Error, Result};

/// The four families of matching intervals for `N = 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    I,
    II,
    III,
    IV,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::I, Family::II, Family::III, Family::IV];

    pub fn name(self) -> &'static str {
        match self {
            Family::I => "i",
            Family::II => "ii",
            Family::III => "iii",
            Family::IV => "iv",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))
    }

    /// `α_k`.
    pub fn alpha(self, k: u64) -> BigRational {
        let k = k as i64;
        let (num, den) = match self {
            Family::I => (2, 9 + 4 * k),
            Family::II => (8, 43 + 16 * k),
            Family::III => (13, 72 + 26 * k),
            Family::IV => (30, 191 + 60 * k),
        };
        BigRational::new(num.into(), den.into())
    }

    pub fn alpha_word(self, k: u64) -> DigitWord {
        let prefix = match self {
            Family::I => alloc::vec![8 + 4 * k],
            Family::II => alloc::vec![10 + 4 * k, 2, 2],
            Family::III => alloc::vec![10 + 4 * k, 1, 2, 5],
            Family::IV => alloc::vec![12 + 4 * k, 2, 2, 2, 2],
        };
        DigitWord::periodic(prefix, alloc::vec![1])
    }

    pub fn alpha_plus_one_word(self, k: u64) -> DigitWord {
        let prefix = match self {
            Family::I => alloc::vec![1, 2, k + 1, 2, 2],
            Family::II => alloc::vec![1, 2, k + 2, 10, 2],
            Family::III => alloc::vec![1, 2, k + 2, 7, 4, 2],
            Family::IV => alloc::vec![1, 2, k + 2, 2, 2, 12, 2],
        };
        DigitWord::periodic(prefix, alloc::vec![1])
    }

    /// Exponents of the point matching at `α_k` and of the interval.
    pub fn exponents(self) -> ((usize, usize), (usize, usize)) {
        match self {
            Family::I => ((1, 5), (3, 5)),
            Family::II => ((2, 4), (5, 5)),
            Family::III => ((4, 6), (6, 6)),
            Family::IV => ((4, 6), (7, 7)),
        }
    }

    /// `R M_{α_k, α_k, K}` in closed form.
    pub fn rm(self, k: u64) -> MobiusMatrix {
        let k = k as i64;
        let e = |a: i64, b: i64| BigInt::from(a * k + b);
        match self {
            Family::I => MobiusMatrix::new(e(4, 12), e(12, 32), e(4, 10), e(12, 26)),
            Family::II => MobiusMatrix::new(e(40, 128), e(88, 280), e(40, 108), e(88, 236)),
            Family::III => MobiusMatrix::new(e(120, 392), e(296, 968), e(120, 332), e(296, 820)),
            Family::IV => MobiusMatrix::new(e(304, 1120), e(656, 2416), e(304, 968), e(656, 2088)),
        }
    }

    /// `M_{α_k, α_k+1, L}`: equal to the `RM` matrix, doubled for family i.
    pub fn m(self, k: u64) -> MobiusMatrix {
        let scale = if self == Family::I { 2 } else { 1 };
        self.rm(k).scaled(&BigInt::from(scale))
    }

    /// The matching interval around `α_k` in closed form.
    pub fn interval(self, k: u64) -> ParamInterval {
        let k = k as i64;
        let s = |a: i64, b: i64, c: i64, d: i64| ExactNumber::surd(a, b, c, d).expect("valid closed form");
        let (lo, hi) = match self {
            Family::I => (
                s(-17 - 8 * k, 1, 10 + 4 * k, 369 + 304 * k + 64 * k * k),
                s(-2 - k, 1, 2 + k, 6 + 5 * k + k * k),
            ),
            Family::II => (
                s(-81 - 32 * k, 1, 54 + 20 * k, 8289 + 5824 * k + 1024 * k * k),
                s(-10 - 4 * k, 1, 8 + 3 * k, 132 + 92 * k + 16 * k * k),
            ),
            Family::III => (
                s(-133 - 52 * k, 1, 122 + 44 * k, 24033 + 16120 * k + 2704 * k * k),
                s(-273 - 104 * k, 1, 166 + 60 * k, 13 * (7061 + 4848 * k + 832 * k * k)),
            ),
            Family::IV => (
                s(-363 - 120 * k, 1, 242 + 76 * k, 3 * (53603 + 32080 * k + 4800 * k * k)),
                s(-45 - 15 * k, 1, 35 + 11 * k, 15 * (170 + 101 * k + 15 * k * k)),
            ),
        };
        ParamInterval::open(lo, hi).expect("closed forms are ordered")
    }
}

/// Everything recomputed for one `(family, k)`, with the components that
/// disagree with the closed forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremCheck {
    pub family: Family,
    pub k: u64,
    pub alpha: BigRational,
    pub alpha_word: Option<DigitWord>,
    pub alpha_plus_one_word: Option<DigitWord>,
    pub point_exponents: Option<(usize, usize)>,
    pub stable_exponents: Option<(usize, usize)>,
    pub rm: Option<MobiusMatrix>,
    pub m: Option<MobiusMatrix>,
    pub interval: Option<ParamInterval>,
    /// The two cylinders from the literal boundary equations, intersected.
    pub literal_interval: Option<ParamInterval>,
    pub mismatches: Vec<Error>,
}

impl TheoremCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn mismatch(component: &str, expected: impl ToString, found: impl ToString) -> Error {
    Error::MismatchDetected {
        component: component.to_string(),
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

fn show<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "none".to_string(), |x| x.to_string())
}

fn show_pair(v: Option<(usize, usize)>) -> String {
    v.map_or_else(|| "none".to_string(), |(a, b)| format!("({a},{b})"))
}

fn show_interval(v: &Option<ParamInterval>) -> String {
    v.as_ref()
        .map_or_else(|| "none".to_string(), |i| format!("({}, {})", i.lo, i.hi))
}

/// Recomputes one instance of a family and compares with the closed forms.
pub fn check_theorem_instance(family: Family, k: u64) -> TheoremCheck {
    const BUDGET: usize = 200;
    let n = 2;
    let alpha = family.alpha(k);
    let mut mismatches = Vec::new();
    let ((pk, pl), (sk, sl)) = family.exponents();
    let p = params_for(&alpha, n).ok();

    let words = p.as_ref().map(|p| {
        let a = expansion_word(&alpha, p, BUDGET).ok().flatten();
        let b = expansion_word(&(&alpha + BigRational::from_integer(1.into())), p, BUDGET)
            .ok()
            .flatten();
        (a, b)
    });
    let (alpha_word, alpha_plus_one_word) = words.unwrap_or((None, None));
    let (wa, wb) = (family.alpha_word(k), family.alpha_plus_one_word(k));
    if alpha_word.as_ref() != Some(&wa) {
        mismatches.push(mismatch("expansion of alpha", &wa, show(&alpha_word)));
    }
    if alpha_plus_one_word.as_ref() != Some(&wb) {
        mismatches.push(mismatch("expansion of alpha+1", &wb, show(&alpha_plus_one_word)));
    }
    if let Some(p) = &p {
        let by_value = validate_expansion(&wa, p) && validate_expansion(&wb, p);
        let by_order = validate_by_order(&wa, &wa, &wb) == Ok(true)
            && validate_by_order(&wb, &wa, &wb) == Ok(true);
        if !(by_value && by_order) {
            mismatches.push(mismatch(
                "admissibility",
                "both words admissible",
                format!("value check {by_value}, order check {by_order}"),
            ));
        }
    }

    let point_exponents = match detect_matching(&alpha, n, BUDGET) {
        Ok(MatchOutcome::Matched(r)) => Some((r.k, r.l)),
        _ => None,
    };
    if point_exponents != Some((pk, pl)) {
        mismatches.push(mismatch("point matching", show_pair(Some((pk, pl))), show_pair(point_exponents)));
    }

    let found = matching_interval(&alpha, n, BUDGET).ok();
    let stable_exponents = found.as_ref().map(|f| (f.k, f.l));
    if stable_exponents != Some((sk, sl)) {
        mismatches.push(mismatch("stable exponents", show_pair(Some((sk, sl))), show_pair(stable_exponents)));
    }

    let (rm, m) = match (&alpha_word, &alpha_plus_one_word) {
        (Some(a), Some(b)) => (
            Some(&MobiusMatrix::shift() * &matrix_for_digits(n, &a.take(sk))),
            Some(matrix_for_digits(n, &b.take(sl))),
        ),
        _ => (None, None),
    };
    if rm.as_ref() != Some(&family.rm(k)) {
        mismatches.push(mismatch("RM matrix", family.rm(k), show(&rm)));
    }
    if m.as_ref() != Some(&family.m(k)) {
        mismatches.push(mismatch("M matrix", family.m(k), show(&m)));
    }
    if stability_check(&alpha, n, sk, sl) != Ok(Stability::Stable) {
        mismatches.push(mismatch("stability", "Stable", "not stable"));
    }

    let interval = found.map(|f| f.interval);
    let expected = family.interval(k);
    if interval.as_ref() != Some(&expected) {
        mismatches.push(mismatch("interval", show_interval(&Some(expected.clone())), show_interval(&interval)));
    }
    if !expected.contains(&ExactNumber::Rational(alpha.clone())) {
        mismatches.push(mismatch("alpha in interval", "true", "false"));
    }

    let literal_interval = match (&alpha_word, &alpha_plus_one_word) {
        (Some(a), Some(b)) => boundary_roots(CylinderKind::Alpha, &a.take(sk), n)
            .and_then(|x| {
                let y = boundary_roots(CylinderKind::AlphaPlusOne, &b.take(sl), n)?;
                x.intersect(&y)
            })
            .ok(),
        _ => None,
    };
    // The sweep must also agree on each cylinder separately with itself.
    if let (Some(a), Some(i)) = (&alpha_word, &interval) {
        if let Ok(c) = cylinder_interval(CylinderKind::Alpha, &a.take(sk), n) {
            if !i.is_subset_of(&c) {
                mismatches.push(mismatch("cylinder containment", "interval inside alpha cylinder", "not inside"));
            }
        }
    }

    TheoremCheck {
        family,
        k,
        alpha,
        alpha_word,
        alpha_plus_one_word,
        point_exponents,
        stable_exponents,
        rm,
        m,
        interval,
        literal_interval,
        mismatches,
    }
}

/// Checks every `k` and fails with the first mismatch.
pub fn verify_theorem_intervals(family: Family, ks: &[u64]) -> Result<Vec<TheoremCheck>> {
    let mut out = Vec::with_capacity(ks.len());
    for &k in ks {
        let check = check_theorem_instance(family, k);
        if let Some(e) = check.mismatches.first() {
            return Err(e.clone());
        }
        out.push(check);
    }
    Ok(out)
}
