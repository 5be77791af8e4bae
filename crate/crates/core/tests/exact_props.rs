use std::cmp::Ordering;

use nalpha::exact::{compare_exact, floor_exact, quadratic_roots, solve_mobius_fixed_point, surd_arith, ArithOp};
use nalpha::{ExactNumber, MobiusMatrix, QuadraticSurd};
use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::Signed;
use proptest::prelude::*;

// floor((a + b√D)/c) for c > 0 using only integer square roots
fn oracle_floor(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> BigInt {
    let sq = b * b * d;
    let s = Roots::sqrt(&sq);
    if s.clone() * &s == sq {
        let top = if b.is_negative() { a - &s } else { a + &s };
        return top.div_floor(c);
    }
    let top = if b.is_negative() { a - &s - 1 } else { a + &s };
    top.div_floor(c)
}

fn raw_surd() -> impl Strategy<Value = (i64, i64, i64, i64)> {
    (-60i64..60, prop_oneof![-20i64..0, 1i64..20], 1i64..40, 2i64..80)
}

fn raw_rational() -> impl Strategy<Value = (i64, i64)> {
    (-200i64..200, 1i64..60)
}

fn build((a, b, c, d): (i64, i64, i64, i64)) -> ExactNumber {
    QuadraticSurd::new(a, b, c, d).unwrap()
}

fn same_d_triple() -> impl Strategy<Value = (ExactNumber, ExactNumber, ExactNumber)> {
    prop_oneof![Just(2i64), Just(3), Just(5), Just(7), Just(13), Just(30)].prop_flat_map(|d| {
        let one = (-30i64..30, -10i64..10, 1i64..15);
        (one.clone(), one.clone(), one).prop_map(move |(x, y, z)| {
            (
                build((x.0, x.1, x.2, d)),
                build((y.0, y.1, y.2, d)),
                build((z.0, z.1, z.2, d)),
            )
        })
    })
}

proptest! {
    #[test]
    fn normalization_is_idempotent(t in raw_surd()) {
        let x = build(t);
        match &x {
            ExactNumber::Surd(s) => {
                let again = QuadraticSurd::new(s.a().clone(), s.b().clone(), s.c().clone(), s.radicand().clone()).unwrap();
                prop_assert_eq!(again.as_surd(), Some(s));
            }
            ExactNumber::Rational(r) => {
                let again = QuadraticSurd::new(r.numer().clone(), 0, r.denom().clone(), 2).unwrap();
                prop_assert_eq!(again.as_rational(), Some(r));
            }
        }
        let parsed: ExactNumber = x.to_string().parse().unwrap();
        prop_assert_eq!(parsed, x);
    }

    #[test]
    fn field_laws((x, y, z) in same_d_triple()) {
        let add = |p: &ExactNumber, q: &ExactNumber| surd_arith(p, q, ArithOp::Add).unwrap();
        let mul = |p: &ExactNumber, q: &ExactNumber| surd_arith(p, q, ArithOp::Mul).unwrap();
        prop_assert_eq!(add(&x, &y), add(&y, &x));
        prop_assert_eq!(mul(&x, &y), mul(&y, &x));
        prop_assert_eq!(add(&add(&x, &y), &z), add(&x, &add(&y, &z)));
        prop_assert_eq!(mul(&mul(&x, &y), &z), mul(&x, &mul(&y, &z)));
        prop_assert_eq!(mul(&x, &add(&y, &z)), add(&mul(&x, &y), &mul(&x, &z)));
        prop_assert_eq!(surd_arith(&add(&x, &y), &y, ArithOp::Sub).unwrap(), x.clone());
        if !y.is_zero() {
            prop_assert_eq!(surd_arith(&mul(&x, &y), &y, ArithOp::Div).unwrap(), x);
        }
    }

    #[test]
    fn floor_matches_integer_oracle(t in raw_surd()) {
        let x = build(t);
        let want = oracle_floor(&t.0.into(), &t.1.into(), &t.2.into(), &t.3.into());
        prop_assert_eq!(floor_exact(&x), want.clone());
        prop_assert!(compare_exact(&ExactNumber::from(want.clone()), &x) != Ordering::Greater);
        prop_assert!(compare_exact(&x, &ExactNumber::from(want + 1)) == Ordering::Less);
    }

    #[test]
    fn floor_bounds_rational((p, q) in raw_rational()) {
        let x = ExactNumber::ratio(p, q);
        let f = floor_exact(&x);
        prop_assert_eq!(f.clone(), BigInt::from(p).div_floor(&BigInt::from(q)));
        prop_assert!(ExactNumber::from(f.clone()) <= x && x < ExactNumber::from(f + 1));
    }

    #[test]
    fn solved_roots_substitute_back(c2 in -12i64..12, c1 in -30i64..30, c0 in -30i64..30) {
        prop_assume!(c2 != 0 || c1 != 0);
        for r in quadratic_roots(&c2.into(), &c1.into(), &c0.into()).unwrap() {
            let r2 = surd_arith(&r, &r, ArithOp::Mul).unwrap();
            let v = surd_arith(&r2.mul_int(c2), &r.mul_int(c1), ArithOp::Add).unwrap().add_int(c0);
            prop_assert!(v.is_zero());
        }
    }

    #[test]
    fn fixed_points_substitute_back(a in -9i64..9, b in -9i64..9, c in -9i64..9, d in -9i64..9, shift in any::<bool>()) {
        let m = MobiusMatrix::new(a, b, c, d);
        if let Ok(y) = solve_mobius_fixed_point(&m, shift, None, None) {
            let lhs = if shift { y.add_int(1) } else { y.clone() };
            // y + s = (a y + b)/(c y + d) with c y + d ≠ 0
            let den = y.mul_int(c).add_int(d);
            prop_assume!(!den.is_zero());
            let num = y.mul_int(a).add_int(b);
            prop_assert_eq!(surd_arith(&lhs, &den, ArithOp::Mul).unwrap(), num);
        }
    }
}

// x · 2^k as a floor, through the integer oracle
fn scaled_floor(t: (i64, i64, i64, i64), k: u32) -> BigInt {
    let s = BigInt::from(1) << k;
    oracle_floor(&(BigInt::from(t.0) * &s), &(BigInt::from(t.1) * &s), &t.2.into(), &t.3.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]
    #[test]
    fn compare_agrees_with_high_precision(x in raw_surd(), y in raw_surd()) {
        let (fx, fy) = (scaled_floor(x, 160), scaled_floor(y, 160));
        let got = compare_exact(&build(x), &build(y));
        if fx < fy {
            prop_assert_eq!(got, Ordering::Less);
        } else if fx > fy {
            prop_assert_eq!(got, Ordering::Greater);
        } else {
            // within 2^-160: equal exactly when the canonical forms agree
            prop_assert_eq!(got == Ordering::Equal, build(x).to_string() == build(y).to_string());
        }
    }
}

#[test]
fn rational_compare_matches_cross_multiplication() {
    let xs: [(i64, i64); 5] = [(-7, 3), (5, 11), (0, 1), (22, 7), (355, 113)];
    for &(p, q) in &xs {
        for &(r, s) in &xs {
            let want = (BigInt::from(p) * s).cmp(&(BigInt::from(r) * q));
            let got = compare_exact(&ExactNumber::ratio(p, q), &ExactNumber::ratio(r, s));
            assert_eq!(got, want);
        }
    }
}
