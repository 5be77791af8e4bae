use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::DigitWord;
use crate::exact::{solve_mobius_fixed_point, ExactNumber};
use crate::mobius::MobiusMatrix;
use crate::{Error, Result};

/// `p_n/q_n` together with `M_n = [[p_{n−1}, p_n], [q_{n−1}, q_n]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub p: BigInt,
    pub q: BigInt,
    pub matrix: MobiusMatrix,
}

/// `B_{d₁} ⋯ B_{dₙ}`.
pub fn matrix_for_digits(n: u64, digits: &[u64]) -> MobiusMatrix {
    digits
        .iter()
        .fold(MobiusMatrix::identity(), |m, &d| &m * &MobiusMatrix::digit(n, d))
}

/// Convergents from `p_n = d_n p_{n−1} + N p_{n−2}` and the matching
/// recurrence for `q_n`, checked against the matrix product and
/// `det M_n = (−N)ⁿ`.
pub fn convergents(digits: &[u64], n: u64) -> Result<Vec<Convergent>> {
    let nb = BigInt::from(n);
    let (mut p_prev, mut p) = (BigInt::one(), BigInt::zero());
    let (mut q_prev, mut q) = (BigInt::zero(), BigInt::one());
    let mut m = MobiusMatrix::identity();
    let mut det = BigInt::one();
    let mut out = Vec::with_capacity(digits.len());
    for &d in digits {
        let db = BigInt::from(d);
        let p_next = &db * &p + &nb * &p_prev;
        let q_next = &db * &q + &nb * &q_prev;
        p_prev = core::mem::replace(&mut p, p_next);
        q_prev = core::mem::replace(&mut q, q_next);
        m = &m * &MobiusMatrix::digit(n, d);
        det = -&det * &nb;
        let expected = MobiusMatrix::new(p_prev.clone(), p.clone(), q_prev.clone(), q.clone());
        if m != expected {
            return Err(Error::InvariantViolation(format!("M_n = {m} but recurrences give {expected}")));
        }
        if m.det() != det {
            return Err(Error::InvariantViolation(format!("det {m} != {det}")));
        }
        out.push(Convergent {
            p: p.clone(),
            q: q.clone(),
            matrix: m.clone(),
        });
    }
    Ok(out)
}

/// `[0; d₁, …, dₙ + tail]`, i.e. `M_n(tail)`.
pub fn evaluate_with_tail(digits: &[u64], n: u64, tail: &ExactNumber) -> Result<ExactNumber> {
    matrix_for_digits(n, digits).apply(tail)
}

/// Value of an eventually periodic word; the periodic tail is the fixed
/// point of the period's matrix in `(0, N)`.
pub fn evaluate(w: &DigitWord, n: u64) -> Result<ExactNumber> {
    let period = w.period().ok_or(Error::NoValidTail)?;
    let mp = matrix_for_digits(n, period);
    let zero = ExactNumber::zero();
    let top = ExactNumber::integer(n);
    let tail = match solve_mobius_fixed_point(&mp, false, Some(&zero), Some(&top)) {
        Ok(t) if t != zero && t != top => t,
        _ => return Err(Error::NoValidTail),
    };
    evaluate_with_tail(w.prefix(), n, &tail)
}

/// `(−N)ⁿ`.
#[cfg(test)]
pub(crate) fn det_power(n: u64, k: usize) -> BigInt {
    let v = num_traits::Pow::pow(BigInt::from(n), k);
    if k % 2 == 1 {
        -v
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn periodic_values() {
        for d in 1..=10u64 {
            let w = DigitWord::periodic(vec![], vec![d]);
            assert_eq!(evaluate(&w, 2 * d + 4), Ok(ExactNumber::integer(2)));
        }
        let w = DigitWord::periodic(vec![8], vec![1]);
        assert_eq!(evaluate(&w, 2), Ok(ExactNumber::ratio(2, 9)));
        assert_eq!(evaluate(&DigitWord::periodic(vec![], vec![6]), 7), Ok(ExactNumber::one()));
        assert_eq!(evaluate(&DigitWord::periodic(vec![], vec![3, 4]), 9), Ok(ExactNumber::integer(2)));
        assert_eq!(evaluate(&DigitWord::periodic(vec![], vec![4, 3]), 9), Ok(ExactNumber::ratio(3, 2)));
        assert_eq!(evaluate(&DigitWord::finite(vec![1]), 2), Err(Error::NoValidTail));
    }

    #[test]
    fn convergent_examples() {
        let c = convergents(&[1], 2).unwrap();
        assert_eq!((c[0].p.clone(), c[0].q.clone()), (BigInt::from(2), BigInt::one()));
        let c = convergents(&[1, 2], 3).unwrap();
        assert_eq!(c[1].matrix, MobiusMatrix::new(3, 6, 1, 5));
        assert_eq!(c[1].matrix.det(), det_power(3, 2));
        let rm = &MobiusMatrix::shift() * &convergents(&[8, 1, 1], 2).unwrap()[2].matrix;
        assert_eq!(rm, MobiusMatrix::new(12, 32, 10, 26));
    }

    #[test]
    fn tails() {
        let x = evaluate_with_tail(&[8, 1, 1], 2, &ExactNumber::one()).unwrap();
        assert_eq!(x, ExactNumber::ratio(2, 9));
    }
}
