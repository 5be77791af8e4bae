use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{OrbitTrace, RationalOrbitState};
use crate::exact::ExactNumber;
use crate::expansion::Params;

/// Per-step arithmetic facts about the raw states of a rational orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibilityReport {
    /// `t_n mod N` on the raw numerators.
    pub raw_residues: Vec<u64>,
    /// Numerator of the reduced `x_n`, mod `N`.
    pub reduced_residues: Vec<u64>,
    /// `t_{n+1} = N s_n − d_{n+1} t_n` and `s_{n+1} = t_n` at every step.
    pub raw_law_holds: bool,
    /// `t_{n+1} ≡ −d_{n+1} t_n (mod N)` at every step.
    pub congruence_holds: bool,
    /// First step where `t_n` and `s_n` share a prime not dividing `N`.
    pub foreign_common_factor: Option<usize>,
    pub strictly_increasing: bool,
}

impl DivisibilityReport {
    /// First index from which no reduced numerator is divisible by `N`.
    pub fn reduced_free_from(&self) -> usize {
        self.reduced_residues
            .iter()
            .rposition(|&r| r == 0)
            .map_or(0, |i| i + 1)
    }
}

/// Raw-state divisibility facts for a trace from
/// [`orbit_rational`](super::orbit_rational).
pub fn divisibility_diagnostics(
    trace: &OrbitTrace<RationalOrbitState>,
    n: u64,
) -> DivisibilityReport {
    let nb = BigInt::from(n);
    let residue = |v: &BigInt| v.mod_floor(&nb).to_u64().expect("residue below N");
    let raw_residues = trace.states.iter().map(|st| residue(&st.t)).collect();
    let reduced_residues = trace
        .states
        .iter()
        .map(|st| residue(st.reduced().numer()))
        .collect();
    let mut raw_law_holds = true;
    let mut congruence_holds = true;
    let mut strictly_increasing = true;
    for (i, w) in trace.states.windows(2).enumerate() {
        let d = BigInt::from(trace.digits[i]);
        let (cur, next) = (&w[0], &w[1]);
        raw_law_holds &= next.t == &nb * &cur.s - &d * &cur.t && next.s == cur.t;
        congruence_holds &= (&next.t + &d * &cur.t).mod_floor(&nb).is_zero();
        strictly_increasing &= next.t > cur.t;
    }
    let foreign_common_factor = trace
        .states
        .iter()
        .position(|st| !strip_common(st.t.gcd(&st.s), &nb).is_one());
    DivisibilityReport {
        raw_residues,
        reduced_residues,
        raw_law_holds,
        congruence_holds,
        foreign_common_factor,
        strictly_increasing,
    }
}

/// Removes from `g` every prime that also divides `n`.
fn strip_common(mut g: BigInt, n: &BigInt) -> BigInt {
    loop {
        let h = g.gcd(n);
        if h.is_one() || g.is_zero() {
            return g;
        }
        g /= h;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateReason {
    /// Rational point, `(N, α)` in the coprime region and `α > 1`.
    RationalInK,
    /// Quadratic point, `(N, α)` in the coprime region, `N` odd and
    /// `gcd(C₀, N) = 1`.
    QuadraticInK,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    CertifiedNonPeriodic(CertificateReason),
    NotCertified,
}

/// Certifies non-periodicity only when one of the two proven sufficient
/// conditions holds; never guesses from a long orbit.
pub fn nonperiodicity_certificate(x0: &ExactNumber, p: &Params) -> Certificate {
    if !p.contains(x0) || !p.in_coprime_region() {
        return Certificate::NotCertified;
    }
    match x0 {
        ExactNumber::Rational(_) if *p.alpha() > ExactNumber::one() => {
            Certificate::CertifiedNonPeriodic(CertificateReason::RationalInK)
        }
        ExactNumber::Surd(s) if p.n() % 2 == 1 => {
            let (_, _, c0) = s.minimal_polynomial();
            if c0.gcd(&BigInt::from(p.n())).is_one() {
                Certificate::CertifiedNonPeriodic(CertificateReason::QuadraticInK)
            } else {
                Certificate::NotCertified
            }
        }
        _ => Certificate::NotCertified,
    }
}
