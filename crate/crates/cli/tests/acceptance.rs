//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use nalpha::expansion::{evaluate, expand, matrix_for_digits, step, xi};
use nalpha::matching::{
    bad_rational_certificate, cylinder_interval, detect_matching, equivalent_exponent_pairs, no_matching_obstruction,
    CylinderKind, MatchOutcome, Obstruction,
};
use nalpha::orbits::{divisibility_diagnostics, expansion_word, orbit_quadratic, orbit_rational, reaches_one, Verdict};
use nalpha::paramspace::{alpha_max, emit_kset_plot_data, kset};
use nalpha::{BigRational, DigitWord, ExactNumber, MobiusMatrix, Params, QuadraticSurd};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn ex(n: i64, d: i64) -> ExactNumber {
    ExactNumber::ratio(n, d)
}

fn neg_pow(n: u64, k: usize) -> BigInt {
    let v: BigInt = Pow::pow(BigInt::from(n), k);
    if k % 2 == 1 {
        -v
    } else {
        v
    }
}

// random α = p/q in (0, √N − 1] with q ≤ max_q
fn random_alpha(rng: &mut ChaCha8Rng, n: u64, max_q: i64) -> Params {
    loop {
        let den = rng.gen_range(2..=max_q);
        let num = rng.gen_range(1..=2 * den);
        if let Ok(p) = Params::new(n, ex(num, den)) {
            return p;
        }
    }
}

// reduced rationals in [α, α + 1] with denominator ≤ max_s
fn random_point(rng: &mut ChaCha8Rng, p: &Params, max_s: i64) -> BigRational {
    loop {
        let s = rng.gen_range(1..=max_s);
        let lo = p.alpha().mul_int(s).ceil();
        let hi = p.alpha_plus_one().mul_int(s).floor();
        if lo > hi {
            continue;
        }
        let span: i64 = (&hi - &lo).try_into().unwrap();
        let t = &lo + rng.gen_range(0..=span);
        let x = BigRational::new(t, s.into());
        if *x.denom() == BigInt::from(s) {
            return x;
        }
    }
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let p = Params::new(3, ex(73, 100)).map_err(|e| e.to_string())?;
    let trace = orbit_rational(&q(40, 33), &p, 1000).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    let found = format!("{:?}, first repeat at {:?}", trace.verdict, trace.first_repeat());
    ensure(
        trace.verdict == Verdict::Periodic { pre_period: 63, period: 38 },
        format!("expected pre-period 63 period 38, found {found}"),
    )?;
    ensure(took < Duration::from_secs(1), format!("took {took:?}"))?;
    Ok(found)
}

fn criterion_2() -> Check {
    for d in 1..=10u64 {
        let w = DigitWord::periodic(vec![], vec![d]);
        let v = evaluate(&w, 2 * d + 4).map_err(|e| e.to_string())?;
        ensure(v == ExactNumber::integer(2), format!("[0; ({d})] with N = {} is {v}", 2 * d + 4))?;
    }
    let v34 = evaluate(&DigitWord::periodic(vec![], vec![3, 4]), 9).map_err(|e| e.to_string())?;
    let v43 = evaluate(&DigitWord::periodic(vec![], vec![4, 3]), 9).map_err(|e| e.to_string())?;
    ensure(v34 == ExactNumber::integer(2), format!("[0; (3, 4)] = {v34}"))?;
    ensure(v43 == ex(3, 2), format!("[0; (4, 3)] = {v43}"))?;
    let p = Params::new(9, ex(149, 100)).map_err(|e| e.to_string())?;
    let w2 = expansion_word(&q(2, 1), &p, 100).map_err(|e| e.to_string())?;
    let w32 = expansion_word(&q(3, 2), &p, 100).map_err(|e| e.to_string())?;
    ensure(w2 == Some(DigitWord::periodic(vec![], vec![3, 4])), format!("expand(2) = {w2:?}"))?;
    ensure(w32 == Some(DigitWord::periodic(vec![], vec![4, 3])), format!("expand(3/2) = {w32:?}"))?;
    Ok("fixed points and both 2-cycles reproduced".into())
}

fn criterion_3() -> Check {
    let start = Instant::now();
    let mut cases: Vec<Params> = [q(1, 10), q(1, 3), q(2, 5)]
        .iter()
        .map(|a| Params::new(2, ExactNumber::Rational(a.clone())).unwrap())
        .collect();
    for n in 3..=8 {
        cases.push(Params::new(n, ExactNumber::from(xi(n)).add_int(-1)).map_err(|e| e.to_string())?);
    }
    let mut count = 0;
    for p in &cases {
        for s in 1..=50i64 {
            let lo = p.alpha().mul_int(s).ceil();
            let hi = p.alpha_plus_one().mul_int(s).floor();
            let mut t = lo;
            while t <= hi {
                if t.gcd(&BigInt::from(s)).is_one() {
                    let x = BigRational::new(t.clone(), s.into());
                    let ok = reaches_one(&x, p, 10_000).map_err(|e| format!("{x}: {e}"))?;
                    ensure(ok, format!("{x} with N = {}, alpha = {} does not reach 1", p.n(), p.alpha()))?;
                    count += 1;
                }
                t += 1;
            }
        }
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(30), format!("took {took:?}"))?;
    Ok(format!("{count} rationals reach 1 with tail N-1 in {took:.2?}"))
}

fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in [5u64, 7] {
        let p = Params::new(n, ex(11, 10)).map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let x = random_point(&mut rng, &p, 40);
            let trace = orbit_rational(&x, &p, 200).map_err(|e| e.to_string())?;
            let rep = divisibility_diagnostics(&trace, n);
            ensure(trace.verdict == Verdict::NoPeriodWithinBudget, format!("{x}: repeated value"))?;
            ensure(trace.states.len() >= 200, format!("{x}: {} states", trace.states.len()))?;
            ensure(rep.strictly_increasing, format!("{x}: t_n not increasing"))?;
            ensure(rep.raw_law_holds && rep.congruence_holds, format!("{x}: raw law or congruence fails"))?;
            ensure(
                rep.foreign_common_factor.is_none(),
                format!("{x}: t_n, s_n share a prime outside N at step {:?}", rep.foreign_common_factor),
            )?;
        }
    }
    Ok("200 orbits of 200 steps: increasing, no repeats, raw laws hold".into())
}

fn criterion_5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let ns = [2u64, 3, 5, 9];
    let mut done = 0;
    while done < 50 {
        let n = ns[done % 4];
        let p = random_alpha(&mut rng, n, 30);
        let (a, b, c, d) = (rng.gen_range(-20..20), rng.gen_range(1..5), rng.gen_range(1..9), rng.gen_range(2..50));
        let r = QuadraticSurd::new(a, b, c, d).unwrap();
        if r.is_rational() {
            continue;
        }
        let x = p.alpha().checked_add(&r.add_int(-r.floor())).unwrap();
        if x.is_rational() || !p.contains(&x) {
            continue;
        }
        let trace = orbit_quadratic(&x, &p, 25).map_err(|e| format!("{x}: {e}"))?;
        let disc = |(a, b, c): &(BigInt, BigInt, BigInt)| b * b - BigInt::from(4) * a * c;
        let d0 = disc(&trace.states[0].raw);
        let n2: BigInt = Pow::pow(BigInt::from(n), 2u32);
        let mut scale = BigInt::one();
        let mut y = x.clone();
        for (i, st) in trace.states.iter().enumerate().take(26) {
            ensure(disc(&st.raw) == &scale * &d0, format!("{x}: discriminant law fails at {i}"))?;
            let (a, b, c) = &st.normalized;
            let sign = if st.plus_root { 1 } else { -1 };
            let root = QuadraticSurd::new(-b, sign, BigInt::from(2) * a, disc(&(a.clone(), b.clone(), c.clone())))
                .unwrap();
            ensure(root == y, format!("{x}: root {root} differs from iterate {y} at {i}"))?;
            y = step(&y, &p).unwrap().1;
            scale *= &n2;
        }
        done += 1;
    }
    Ok("50 quadratic orbits, 25 steps each".into())
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let n = rng.gen_range(2..=12u64);
        let p = random_alpha(&mut rng, n, 40);
        let x = if rng.gen_bool(0.5) {
            ExactNumber::Rational(random_point(&mut rng, &p, 60))
        } else {
            let r = ExactNumber::sqrt(rng.gen_range(2..100i64)).unwrap();
            p.alpha().checked_add(&r.add_int(-r.floor())).unwrap()
        };
        let len = rng.gen_range(1..=20usize);
        let mut y = x.clone();
        let mut digits = Vec::new();
        for _ in 0..len {
            let (d, next) = step(&y, &p).map_err(|e| e.to_string())?;
            digits.push(d);
            y = next;
        }
        let m: MobiusMatrix = matrix_for_digits(n, &digits);
        ensure(m.det() == neg_pow(n, len), format!("det M_{len} for N = {n}"))?;
        ensure(m.apply(&y).map_err(|e| e.to_string())? == x, format!("{x} is not M_n(T^n x)"))?;
    }
    Ok("100 instances".into())
}

fn criterion_7() -> Check {
    let start = Instant::now();
    let o = Command::new(env!("CARGO_BIN_EXE_nalpha"))
        .args(["verify", "--theorem", "--family", "all", "--k", "0..=10", "--jobs", "4"])
        .env_remove("NALPHA_CONFIG")
        .output()
        .map_err(|e| e.to_string())?;
    let took = start.elapsed();
    let out = String::from_utf8_lossy(&o.stdout);
    let summary = out.lines().last().unwrap_or("").to_string();
    let failed: Vec<&str> = out.lines().filter(|l| l.ends_with("FAIL")).collect();
    ensure(
        o.status.success(),
        format!("{summary}; failing: {}", failed.iter().map(|l| l.split(" alpha").next().unwrap()).collect::<Vec<_>>().join(", ")),
    )?;
    ensure(took < Duration::from_secs(10), format!("took {took:?}"))?;
    Ok(format!("{summary} in {took:.2?}"))
}

fn criterion_8() -> Check {
    for n in 3u32..=8 {
        let alpha = BigRational::new(1.into(), BigInt::from(1) << n);
        match detect_matching(&alpha, 2, 60).map_err(|e| e.to_string())? {
            MatchOutcome::Matched(r) => ensure((r.k, r.l) == (1, 4), format!("1/2^{n}: matching ({}, {})", r.k, r.l))?,
            other => return Err(format!("1/2^{n}: {other:?}")),
        }
        let cert = bad_rational_certificate(n).map_err(|e| e.to_string())?;
        ensure(cert.valid, format!("certificate for n = {n} invalid"))?;
        if n == 3 {
            ensure(cert.rm == MobiusMatrix::new(1, 17, 1, 15), format!("RM = {}", cert.rm))?;
            ensure(cert.m4 == MobiusMatrix::new(16, 56, 14, 50), format!("M_4 = {}", cert.m4))?;
        }
        let pairs = equivalent_exponent_pairs(&alpha, 2, 30).map_err(|e| e.to_string())?;
        ensure(pairs.is_empty(), format!("1/2^{n}: equivalent pairs {pairs:?}"))?;
    }
    Ok("n = 3..8 certified, no equivalence up to 30".into())
}

fn criterion_9() -> Check {
    let cases = [(5u64, q(6, 5)), (7, q(7, 6)), (9, q(19, 10))];
    let xi9 = ExactNumber::surd(-3, 1, 2, 45).unwrap();
    ensure(ExactNumber::Rational(q(19, 10)) > xi9, "19/10 below the N = 9 threshold")?;
    let mut notes = Vec::new();
    for (n, a) in &cases {
        let none = matches!(
            detect_matching(a, *n, 500).map_err(|e| e.to_string())?,
            MatchOutcome::NoMatchWithinBudget { .. }
        );
        let ob = no_matching_obstruction(a, *n);
        notes.push(format!("({n}, {a}): obstruction {ob:?}, no match within 500: {none}"));
        ensure(none, format!("({n}, {a}) matches"))?;
        ensure(ob == Obstruction::ObstructionHolds, notes.join("; "))?;
    }
    Ok(notes.join("; "))
}

fn criterion_10() -> Check {
    let alpha_min = ex(1, 100);
    for n in 2..=30u64 {
        let cells = kset(n, &alpha_min).map_err(|e| e.to_string())?;
        ensure(cells[0].interval.lo == alpha_min, format!("N = {n}: left end"))?;
        ensure(cells.last().unwrap().interval.hi == alpha_max(n).unwrap(), format!("N = {n}: right end"))?;
        for w in cells.windows(2) {
            ensure(w[0].interval.hi == w[1].interval.lo, format!("N = {n}: gap at {}", w[0].interval.hi))?;
        }
        if [5, 7, 11, 13].contains(&n) {
            for c in cells.iter().filter(|c| c.interval.lo >= ExactNumber::one()) {
                ensure(c.in_k, format!("N = {n}: cell ({}, {}] not in K", c.interval.lo, c.interval.hi))?;
            }
        }
    }
    let rows = emit_kset_plot_data(30, 6, &q(1, 100)).map_err(|e| e.to_string())?;
    let has = |n: u64, lo: &str, hi: &str, k: bool| rows.iter().any(|r| r.n == n && r.lo == lo && r.hi == hi && r.in_k == k);
    ensure(has(5, "1.192582", "1.236068", true), "row (5, 1.192582, 1.236068, true)")?;
    ensure(has(5, "1.000000", "1.192582", true), "row (5, 1.000000, 1.192582, true)")?;
    ensure(has(9, "1.854102", "2.000000", true), "row (9, 1.854102, 2.000000, true)")?;
    // even N: the top cell (2√2 − 2, 1] has digits 1..3 and lies outside K
    ensure(has(4, "0.828427", "1.000000", false), "row (4, 0.828427, 1.000000, false)")?;
    ensure(rows.iter().filter(|r| r.n == 2).last().map(|r| r.hi.as_str()) == Some("0.414214"), "N = 2 right end")?;
    ensure(rows.iter().filter(|r| r.n == 7 && r.lo.as_str() >= "1.000000").all(|r| r.in_k), "N = 7 above 1")?;
    Ok(format!("N = 2..30 tiled, {} plot rows", rows.len()))
}

fn criterion_11() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..20 {
        let p = random_alpha(&mut rng, 2, 200);
        let kind = if i % 2 == 0 { CylinderKind::Alpha } else { CylinderKind::AlphaPlusOne };
        let len = rng.gen_range(1..=5);
        let prefix = |a: &ExactNumber| -> Option<Vec<u64>> {
            let pa = Params::new(2, a.clone()).ok()?;
            let x = match kind {
                CylinderKind::Alpha => pa.alpha().clone(),
                CylinderKind::AlphaPlusOne => pa.alpha_plus_one().clone(),
            };
            Some(expand(&x, &pa, len).ok()?.prefix().to_vec())
        };
        let digits = prefix(p.alpha()).unwrap();
        let iv = cylinder_interval(kind, &digits, 2).map_err(|e| e.to_string())?;
        let inside = ExactNumber::rationals_inside(&iv.lo, &iv.hi, 10);
        for s in &inside {
            ensure(prefix(&ExactNumber::Rational(s.clone())) == Some(digits.clone()), format!("{s} inside {digits:?}"))?;
        }
        let width = (inside.last().unwrap() - &inside[0]) / BigInt::from(1000);
        for (e, out) in [(&iv.lo, iv.lo.add_rational(&-&width)), (&iv.hi, iv.hi.add_rational(&width))] {
            let (a, b) = if out < *e { (out, e.clone()) } else { (e.clone(), out) };
            let s = ExactNumber::Rational(ExactNumber::rational_between(&a, &b));
            if let Some(w) = prefix(&s) {
                ensure(w != digits, format!("{s} just outside {digits:?} has the same prefix"))?;
            }
        }
    }
    Ok("20 prefixes".into())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("1 worked orbit", criterion_1),
        ("2 fixed points", criterion_2),
        ("3 small-alpha finiteness", criterion_3),
        ("4 non-periodicity diagnostics", criterion_4),
        ("5 discriminant law", criterion_5),
        ("6 matrix laws", criterion_6),
        ("7 theorem families", criterion_7),
        ("8 bad rationals", criterion_8),
        ("9 no-matching regions", criterion_9),
        ("10 region K", criterion_10),
        ("11 cylinder soundness", criterion_11),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(note) => println!("PASS {name}: {note}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    println!("{}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
