//! The coprime region `K`, digit-set breakpoints and no-matching regions.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::exact::{quadratic_roots, BigRational, ExactNumber};
use crate::expansion::{digit_set, digits_coprime, Params};
use crate::matching::ParamInterval;
use crate::{Error, Result};

/// A maximal piece `(lo, hi]` of parameter space on which the digit set is
/// constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitSetCell {
    pub interval: ParamInterval,
    pub digit_lo: u64,
    pub digit_hi: u64,
    pub in_k: bool,
}

/// One row of plot data for the region `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlotRow {
    pub n: u64,
    pub lo: String,
    pub hi: String,
    pub in_k: bool,
    pub digit_lo: u64,
    pub digit_hi: u64,
}

/// `√N − 1`, the right end of parameter space.
pub fn alpha_max(n: u64) -> Result<ExactNumber> {
    Ok(ExactNumber::sqrt(n)?.add_int(-1))
}

fn check_window(n: u64, alpha_min: &ExactNumber) -> Result<ExactNumber> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("N = {n} < 2")));
    }
    if alpha_min.signum().is_le() {
        return Err(Error::InvalidParams(format!("alpha_min = {alpha_min} is not positive")));
    }
    let top = alpha_max(n)?;
    if *alpha_min >= top {
        return Err(Error::EmptyInterval);
    }
    Ok(top)
}

/// Parameters in `(alpha_min, √N − 1]` where `⌊N/α − α⌋` or
/// `⌊N/(α+1) − α⌋` jumps, sorted ascending. The right end `√N − 1` is always
/// among them.
pub fn digit_breakpoints(n: u64, alpha_min: &ExactNumber) -> Result<Vec<ExactNumber>> {
    let top = check_window(n, alpha_min)?;
    let big_n = BigInt::from(n);
    // N/α − α ≥ m on the window forces m ≤ N/alpha_min
    let m_max = alpha_min.int_div(n)?.floor();
    let mut out = Vec::new();
    let mut m = BigInt::from(1);
    while m <= m_max {
        // α² + mα − N = 0 and α² + (m+1)α + (m − N) = 0
        let one = BigInt::from(1);
        for (c1, c0) in [(m.clone(), -&big_n), (&m + 1, &m - &big_n)] {
            for r in quadratic_roots(&one, &c1, &c0)? {
                if r > *alpha_min && r <= top {
                    out.push(r);
                }
            }
        }
        m += 1;
    }
    out.sort();
    out.dedup();
    debug_assert!(out.last() == Some(&top));
    Ok(out)
}

/// Partitions `(alpha_min, √N − 1]` into cells of constant digit set.
pub fn kset(n: u64, alpha_min: &ExactNumber) -> Result<Vec<DigitSetCell>> {
    let points = digit_breakpoints(n, alpha_min)?;
    let mut cells = Vec::with_capacity(points.len());
    let mut lo = alpha_min.clone();
    for hi in points {
        let sample = ExactNumber::Rational(ExactNumber::rational_between(&lo, &hi));
        let p = Params::new(n, sample)?;
        let ds = digit_set(&p);
        let (digit_lo, digit_hi) = (*ds.start(), *ds.end());
        cells.push(DigitSetCell {
            interval: ParamInterval::new(lo, hi.clone(), true, false)?,
            digit_lo,
            digit_hi,
            in_k: digits_coprime(n, digit_lo, digit_hi),
        });
        lo = hi;
    }
    Ok(cells)
}

/// Intervals of parameter space for odd `N ≥ 5` that contain no matching
/// interval: `(1, √N − 1]` for `N ∈ {5, 7}` and `(ξ, √N − 1]` with
/// `ξ = (−3 + √(9 + 4N))/2` for larger `N`.
pub fn no_matching_regions(n: u64) -> Result<Vec<ParamInterval>> {
    if n % 2 == 0 || n < 5 {
        return Err(Error::NotApplicable(format!("N = {n} is not odd and at least 5")));
    }
    let lo = if n <= 7 {
        ExactNumber::one()
    } else {
        // ξ = N/(3 + ξ)
        ExactNumber::surd(-3, 1, 2, 9 + 4 * n)?
    };
    let region = ParamInterval::new(lo.clone(), alpha_max(n)?, true, false)?;
    for cell in kset(n, &lo)? {
        if !cell.in_k {
            return Err(Error::InvariantViolation(format!(
                "cell ({}, {}] of N = {n} has digits {}..={} not coprime to N",
                cell.interval.lo, cell.interval.hi, cell.digit_lo, cell.digit_hi
            )));
        }
    }
    Ok(alloc::vec![region])
}

/// Plot rows for a single `N`; empty when the window is empty.
pub fn kset_plot_rows(n: u64, precision: usize, alpha_min: &BigRational) -> Result<Vec<PlotRow>> {
    let alpha_min = ExactNumber::Rational(alpha_min.clone());
    let cells = match kset(n, &alpha_min) {
        Ok(c) => c,
        Err(Error::EmptyInterval) => return Ok(Vec::new()),
        Err(e) => return Err(e),
    };
    Ok(cells
        .into_iter()
        .map(|c| PlotRow {
            n,
            lo: c.interval.lo.to_decimal_string(precision),
            hi: c.interval.hi.to_decimal_string(precision),
            in_k: c.in_k,
            digit_lo: c.digit_lo,
            digit_hi: c.digit_hi,
        })
        .collect())
}

/// Plot rows `(N, lo, hi, in K)` for `N = 2..=n_max`.
pub fn emit_kset_plot_data(n_max: u64, precision: usize, alpha_min: &BigRational) -> Result<Vec<PlotRow>> {
    if n_max < 2 {
        return Err(Error::InvalidParams(format!("N_max = {n_max} < 2")));
    }
    let mut rows = Vec::new();
    for n in 2..=n_max {
        rows.extend(kset_plot_rows(n, precision, alpha_min)?);
    }
    Ok(rows)
}
