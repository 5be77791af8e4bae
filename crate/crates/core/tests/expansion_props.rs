use std::cmp::Ordering;

use nalpha::exact::compare_exact;
use nalpha::expansion::{alternating_compare, convergents, expand, matrix_for_digits, step};
use nalpha::{ExactNumber, Params};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = Params> {
    (2u64..=12, 5u64..=40).prop_flat_map(|(n, q)| {
        // p/q ≤ √N − 1 ⇔ (p + q)² ≤ q² N
        let top = num_integer::Roots::sqrt(&(q * q * n)) - q;
        (1..=top).prop_map(move |p| Params::new(n, ExactNumber::ratio(p as i64, q as i64)).unwrap())
    })
}

// a point of [α, α + 1]: rational, or α plus the fractional part of √D
fn point(p: &Params) -> impl Strategy<Value = ExactNumber> {
    let alpha = p.alpha().clone();
    let a2 = alpha.clone();
    prop_oneof![
        (0i64..=60, 1i64..=60)
            .prop_filter("fraction above 1", |(i, j)| i <= j)
            .prop_map(move |(i, j)| alpha.checked_add(&ExactNumber::ratio(i, j)).unwrap()),
        (2i64..200).prop_filter_map("square", move |d| {
            let r = ExactNumber::sqrt(d).ok()?;
            if r.is_rational() {
                return None;
            }
            let f = r.add_int(-r.floor());
            Some(a2.checked_add(&f).unwrap())
        }),
    ]
}

fn params_and_point() -> impl Strategy<Value = (Params, ExactNumber)> {
    params().prop_flat_map(|p| {
        let pt = point(&p);
        (Just(p), pt)
    })
}

fn neg_n_pow(n: u64, k: usize) -> BigInt {
    let v: BigInt = Pow::pow(BigInt::from(n), k);
    if k % 2 == 1 {
        -v
    } else {
        v
    }
}

proptest! {
    #[test]
    fn step_stays_in_domain((p, x) in params_and_point()) {
        let (d, next) = step(&x, &p).unwrap();
        prop_assert!(nalpha::expansion::digit_set(&p).contains(&d));
        prop_assert!(next >= *p.alpha());
        if x == *p.alpha() {
            prop_assert!(next <= *p.alpha_plus_one());
        } else {
            prop_assert!(next < *p.alpha_plus_one());
        }
    }

    #[test]
    fn det_is_power_of_minus_n(n in 2u64..=20, digits in prop::collection::vec(0u64..50, 0..=30)) {
        let m = matrix_for_digits(n, &digits);
        prop_assert_eq!(m.det(), neg_n_pow(n, digits.len()));
    }

    #[test]
    fn reconstruction((p, x) in params_and_point(), len in 1usize..=20) {
        let mut y = x.clone();
        let mut digits = Vec::new();
        for _ in 0..len {
            let (d, next) = step(&y, &p).unwrap();
            digits.push(d);
            y = next;
        }
        let m = matrix_for_digits(p.n(), &digits);
        prop_assert_eq!(m.apply(&y).unwrap(), x);
        prop_assert_eq!(m.det(), neg_n_pow(p.n(), len));
    }

    #[test]
    fn convergents_eventually_approach((p, x) in params_and_point()) {
        let w = expand(&x, &p, 30).unwrap();
        let conv = convergents(w.prefix(), p.n()).unwrap();
        let errs: Vec<ExactNumber> = conv
            .iter()
            .map(|c| {
                let v = ExactNumber::ratio(c.p.clone(), c.q.clone());
                let e = x.checked_sub(&v).unwrap();
                if e < ExactNumber::zero() { e.neg() } else { e }
            })
            .collect();
        // the strictly decreasing run ending at n = 30 starts by n = 20
        let start = (1..errs.len()).rev().take_while(|&i| errs[i] < errs[i - 1]).last().unwrap_or(errs.len());
        prop_assert!(start <= 20 || errs.last().unwrap().is_zero(), "errors not decreasing from {}", start);
    }

    #[test]
    fn alternating_order_matches_values(((p, x), y) in params_and_point().prop_flat_map(|(p, x)| {
        let y = point(&p);
        (Just((p, x)), y)
    }), len in 1usize..=12) {
        let (wx, wy) = (expand(&x, &p, len).unwrap(), expand(&y, &p, len).unwrap());
        prop_assume!(wx != wy);
        prop_assert_eq!(alternating_compare(&wx, &wy).unwrap(), compare_exact(&x, &y));
    }

    #[test]
    fn convergents_coprime_in_k((p, x) in params_and_point().prop_filter("outside K", |(p, _)| p.in_coprime_region())) {
        let w = expand(&x, &p, 30).unwrap();
        for c in convergents(w.prefix(), p.n()).unwrap() {
            prop_assert!(c.p.gcd(&c.q).is_one(), "{}/{}", c.p, c.q);
        }
    }
}

#[test]
fn equal_prefixes_are_undecidable() {
    let p = Params::new(2, ExactNumber::ratio(2, 9)).unwrap();
    let w = expand(&ExactNumber::ratio(2, 9), &p, 4).unwrap();
    assert!(alternating_compare(&w, &w).is_err());
    assert_eq!(
        compare_exact(&ExactNumber::ratio(1, 3), &ExactNumber::ratio(1, 2)),
        Ordering::Less
    );
}
