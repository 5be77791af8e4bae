use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use super::{orbit_points, params_for};
use crate::exact::BigRational;
use crate::expansion::{matrix_for_digits, validate_expansion, DigitWord};
use crate::mobius::MobiusMatrix;
use crate::orbits::expansion_word;
use crate::{Error, Result};

/// Why `α_n = 1/2ⁿ` lies in no matching interval for `N = 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadRationalCertificate {
    pub n: u32,
    pub alpha: BigRational,
    /// `[0; 2^{n+1} − 1, (1)]`, recomputed and compared.
    pub alpha_word: DigitWord,
    /// `[0; 1, 2, 2^{n−1} − 1, 3, (1)]`, recomputed and compared.
    pub alpha_plus_one_word: DigitWord,
    pub expansions_ok: bool,
    /// `T(α) = T⁴(α + 1)`.
    pub point_matching_ok: bool,
    /// `R M_1 = [[1, 2^{n+1} + 1], [1, 2^{n+1} − 1]]`.
    pub rm: MobiusMatrix,
    /// `M_4 = [[2^{n+1}, 3·2^{n+1} + 8], [2^{n+1} − 2, 3·2^{n+1} + 2]]`.
    pub m4: MobiusMatrix,
    pub matrices_ok: bool,
    /// `M_4 / 2`.
    pub m_hat: MobiusMatrix,
    /// `R M_1 ≡ [[1, 1], [1, 1]]` and `M̂ ≡ [[0, 0], [1, 1]] (mod 2)`, both
    /// fixed by right multiplication with `B_1 ≡ [[0, 0], [1, 1]]`.
    pub residue_classes_ok: bool,
    /// The pairs not covered by the residue argument (`K = 0` or `L ≤ 3`)
    /// are not equivalent either.
    pub small_cases_ok: bool,
    pub valid: bool,
}

fn mod2(m: &MobiusMatrix) -> [u8; 4] {
    m.residues(&BigInt::from(2)).map(|r| u8::from(!r.is_zero()))
}

/// `A` has only odd entries and `M` reduced to lowest terms has an even
/// one: then `A ≁ M`, as some cross product is odd on one side and even on
/// the other.
fn parity_separates(all_odd: &MobiusMatrix, m: &MobiusMatrix) -> bool {
    mod2(all_odd) == [1, 1, 1, 1] && mod2(&m.primitive()).contains(&0)
}

/// Builds and checks the certificate for `n ≥ 3`.
pub fn bad_rational_certificate(n: u32) -> Result<BadRationalCertificate> {
    if !(3..=60).contains(&n) {
        return Err(Error::InvalidParams(alloc::format!("n = {n} must lie in 3..=60")));
    }
    let two = BigInt::from(2);
    let p2 = Pow::pow(&two, n + 1); // 2^{n+1}
    let alpha = BigRational::new(BigInt::one(), Pow::pow(&two, n));
    let p = params_for(&alpha, 2)?;
    let big = |v: &BigInt| v.clone();
    let to_u64 = |v: BigInt| -> u64 { u64::try_from(v).expect("digit fits") };

    let expected_a = DigitWord::periodic(vec![to_u64(&p2 - 1u32)], vec![1]);
    let expected_b = DigitWord::periodic(vec![1, 2, to_u64(Pow::pow(&two, n - 1) - 1u32), 3], vec![1]);
    let alpha_word = expansion_word(&alpha, &p, 1000)?.unwrap_or_else(|| DigitWord::finite(Vec::new()));
    let alpha_plus_one = &alpha + BigRational::one();
    let alpha_plus_one_word =
        expansion_word(&alpha_plus_one, &p, 1000)?.unwrap_or_else(|| DigitWord::finite(Vec::new()));
    let expansions_ok = alpha_word == expected_a
        && alpha_plus_one_word == expected_b
        && validate_expansion(&expected_a, &p)
        && validate_expansion(&expected_b, &p);

    let (a_points, _) = orbit_points(p.alpha(), &p, 1)?;
    let (b_points, _) = orbit_points(p.alpha_plus_one(), &p, 4)?;
    let point_matching_ok = a_points[1] == b_points[4];

    let rm = &MobiusMatrix::shift() * &matrix_for_digits(2, &alpha_word.take(1));
    let m4 = matrix_for_digits(2, &alpha_plus_one_word.take(4));
    let rm_expected = MobiusMatrix::new(1, &p2 + 1u32, 1, &p2 - 1u32);
    let m4_expected = MobiusMatrix::new(
        big(&p2),
        BigInt::from(3) * &p2 + 8,
        &p2 - 2u32,
        BigInt::from(3) * &p2 + 2,
    );
    let matrices_ok = rm == rm_expected && m4 == m4_expected;

    let (m_hat, rem) = {
        let halves = m4.entries().map(|e| e.div_rem(&two));
        let rem = halves.iter().any(|(_, r)| !r.is_zero());
        let [a, b, c, d] = halves.map(|(q, _)| q);
        (MobiusMatrix::new(a, b, c, d), rem)
    };
    let b1 = MobiusMatrix::digit(2, 1);
    let residue_classes_ok = !rem
        && mod2(&b1) == [0, 0, 1, 1]
        && mod2(&rm) == [1, 1, 1, 1]
        && mod2(&(&rm * &b1)) == [1, 1, 1, 1]
        && mod2(&m_hat) == [0, 0, 1, 1]
        && mod2(&(&m_hat * &b1)) == [0, 0, 1, 1];

    // After the first digit of α and the first four of α + 1 every further
    // digit is 1, so R M_K ≡ R M_1 B_1^{K−1} and M_L ∼ M̂ B_1^{L−4}.
    // Remaining: L ≤ 3 against the all-odd class, and K = 0 (R itself).
    let prefix_b = alpha_plus_one_word.take(4);
    let small_l = (0..=3).all(|l| parity_separates(&rm, &matrix_for_digits(2, &prefix_b[..l])));
    // R has a zero entry; M_L has none for L ≥ 2 and M_0, M_1 differ from R.
    let shift = MobiusMatrix::shift();
    let k_zero = (0..=1).all(|l| !shift.projective_equiv(&matrix_for_digits(2, &prefix_b[..l])))
        && matrix_for_digits(2, &prefix_b[..2]).entries().iter().all(|e| !e.is_zero());
    let small_cases_ok = small_l && k_zero;

    let valid = expansions_ok && point_matching_ok && matrices_ok && residue_classes_ok && small_cases_ok;
    Ok(BadRationalCertificate {
        n,
        alpha,
        alpha_word,
        alpha_plus_one_word,
        expansions_ok,
        point_matching_ok,
        rm,
        m4,
        matrices_ok,
        m_hat,
        residue_classes_ok,
        small_cases_ok,
        valid,
    })
}
