//! One function per subcommand. Each returns a [`Report`]; errors map to
//! exit codes through [`exit_code`].

use nalpha::expansion::expand;
use nalpha::matching::{
    bad_rational_certificate, check_theorem_instance, detect_matching, find_stable_exponents, matching_interval,
    BadRationalCertificate, Family, MatchOutcome, Obstruction, ParamInterval, Stability, TheoremCheck,
};
use nalpha::orbits::{discriminant_check, orbit_quadratic, orbit_rational, Verdict};
use nalpha::paramspace::{kset_plot_rows, no_matching_regions, PlotRow};
use nalpha::{BigRational, Error, ExactNumber, Params, Result};
use rayon::prelude::*;
use serde_json::json;

use crate::config::Config;
use crate::output::{Record, Report};
use crate::record;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_NEGATIVE: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => EXIT_PARSE,
        Error::BadRational => EXIT_NEGATIVE,
        Error::InvariantViolation(_) | Error::MismatchDetected { .. } => EXIT_INTERNAL,
        _ => EXIT_DOMAIN,
    }
}

pub fn parse_exact(s: &str) -> Result<ExactNumber> {
    s.parse()
}

fn parse_rational_alpha(s: &str) -> Result<BigRational> {
    parse_exact(s)?
        .as_rational()
        .cloned()
        .ok_or_else(|| Error::InvalidParams(format!("alpha = {s} must be rational here")))
}

/// `a..b` (half open), `a..=b`, or a single value.
pub fn parse_k_range(s: &str) -> Result<Vec<u64>> {
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad range {s:?}")));
    if let Some((a, b)) = s.split_once("..=") {
        Ok((num(a)?..=num(b)?).collect())
    } else if let Some((a, b)) = s.split_once("..") {
        Ok((num(a)?..num(b)?).collect())
    } else {
        Ok(vec![num(s)?])
    }
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidParams(e.to_string()))
}

fn interval_record(iv: &ParamInterval, precision: usize) -> Record {
    record! {
        "lo" => iv.lo.to_string(),
        "hi" => iv.hi.to_string(),
        "lo_decimal" => iv.lo.to_decimal_string(precision),
        "hi_decimal" => iv.hi.to_decimal_string(precision),
        "lo_open" => iv.lo_open,
        "hi_open" => iv.hi_open,
    }
}

fn interval_text(iv: &ParamInterval, precision: usize) -> String {
    format!(
        "{}{}, {}{} ~ {}{}, {}{}",
        if iv.lo_open { "(" } else { "[" },
        iv.lo,
        iv.hi,
        if iv.hi_open { ")" } else { "]" },
        if iv.lo_open { "(" } else { "[" },
        iv.lo.to_decimal_string(precision),
        iv.hi.to_decimal_string(precision),
        if iv.hi_open { ")" } else { "]" },
    )
}

pub fn expand_cmd(x: &str, n: u64, alpha: &str, len: usize) -> Result<Report> {
    let x = parse_exact(x)?;
    let p = Params::new(n, parse_exact(alpha)?)?;
    let w = expand(&x, &p, len)?;
    let mut r = Report::default();
    r.line(w.to_string());
    r.record(record! {
        "x" => x.to_string(),
        "N" => n,
        "alpha" => p.alpha().to_string(),
        "n" => len,
        "word" => w.to_string(),
        "digits" => w.prefix(),
    });
    Ok(r)
}

fn verdict_fields(v: Verdict) -> (String, Record) {
    match v {
        Verdict::Periodic { pre_period, period } => (
            format!("Periodic pre={pre_period} period={period}"),
            record! {
                "verdict" => "Periodic",
                "pre_period" => pre_period,
                "period" => period,
                "first_repeat" => pre_period + period,
            },
        ),
        Verdict::NoPeriodWithinBudget => (
            "NoPeriodWithinBudget".to_string(),
            record! {"verdict" => "NoPeriodWithinBudget"},
        ),
    }
}

pub fn orbit_cmd(x: &str, n: u64, alpha: &str, budget: usize, quadratic: bool) -> Result<Report> {
    let x = parse_exact(x)?;
    let p = Params::new(n, parse_exact(alpha)?)?;
    let mut r = Report::default();
    let (summary, mut fields) = if quadratic || !x.is_rational() {
        let trace = orbit_quadratic(&x, &p, budget)?;
        for (i, (pt, st)) in trace.points.iter().zip(&trace.states).enumerate() {
            let (a, b, c) = &st.raw;
            let d = trace.digits.get(i).copied();
            r.line(format!("{i} {pt} digit={} A={a} B={b} C={c}", show_digit(d)));
            r.record(record! {
                "step" => i,
                "x" => pt.to_string(),
                "digit" => d,
                "A" => a.to_string(),
                "B" => b.to_string(),
                "C" => c.to_string(),
                "plus_root" => st.plus_root,
            });
        }
        let (s, mut f) = verdict_fields(trace.verdict);
        f.insert("discriminant_law".into(), json!(discriminant_check(&trace)));
        (s, f)
    } else {
        let xr = x.as_rational().expect("rational").clone();
        let trace = orbit_rational(&xr, &p, budget)?;
        for (i, (pt, st)) in trace.points.iter().zip(&trace.states).enumerate() {
            let d = trace.digits.get(i).copied();
            r.line(format!("{i} {pt} digit={} t={} s={}", show_digit(d), st.t, st.s));
            r.record(record! {
                "step" => i,
                "x" => pt.to_string(),
                "digit" => d,
                "t" => st.t.to_string(),
                "s" => st.s.to_string(),
            });
        }
        let (s, mut f) = verdict_fields(trace.verdict);
        f.insert("hits_one".into(), json!(trace.hits_one()));
        (s, f)
    };
    fields.insert("summary".into(), json!(true));
    r.line(summary);
    r.record(fields);
    Ok(r)
}

fn show_digit(d: Option<u64>) -> String {
    d.map_or_else(|| "-".into(), |d| d.to_string())
}

fn stability_name(s: Stability) -> &'static str {
    match s {
        Stability::Stable => "Stable",
        Stability::Unstable => "Unstable",
        Stability::UnknownForThisN => "UnknownForThisN",
    }
}

pub fn match_cmd(alpha: &str, n: u64, budget: usize, precision: usize) -> Result<Report> {
    let a = parse_rational_alpha(alpha)?;
    let mut r = Report::default();
    let mut rec = record! {"alpha" => a.to_string(), "N" => n};
    match detect_matching(&a, n, budget)? {
        MatchOutcome::Matched(m) => {
            r.line(format!(
                "matching K={} L={} index={} value={} ({})",
                m.k,
                m.l,
                m.index,
                m.matched_value,
                stability_name(m.stable)
            ));
            rec.insert("K".into(), json!(m.k));
            rec.insert("L".into(), json!(m.l));
            rec.insert("index".into(), json!(m.index));
            rec.insert("matched_value".into(), json!(m.matched_value.to_string()));
            rec.insert("stability".into(), json!(stability_name(m.stable)));
            let stable = find_stable_exponents(&a, n, budget)?;
            match stable {
                Some((k, l)) => r.line(format!("stable ({k},{l})")),
                None => r.line(format!("no stable exponents up to {budget}")),
            }
            rec.insert("stable".into(), json!(stable.map(|(k, l)| [k, l])));
            if n == 2 && stable.is_some() {
                let mi = matching_interval(&a, n, budget)?;
                r.line(format!("interval {}", interval_text(&mi.interval, precision)));
                rec.insert("interval".into(), json!(interval_record(&mi.interval, precision)));
            }
        }
        MatchOutcome::NoMatchWithinBudget { obstruction } => {
            let holds = obstruction == Obstruction::ObstructionHolds;
            r.line(format!("no matching within {budget} steps"));
            if holds {
                r.line("certified: no matching at all (mod N obstruction)");
                r.exit = EXIT_NEGATIVE;
            }
            rec.insert("matched".into(), json!(false));
            rec.insert("obstruction".into(), json!(holds));
        }
    }
    r.record(rec);
    Ok(r)
}

pub fn interval_cmd(alpha: &str, n: u64, budget: usize, precision: usize) -> Result<Report> {
    let a = parse_rational_alpha(alpha)?;
    let mut r = Report::default();
    match matching_interval(&a, n, budget) {
        Ok(mi) => {
            r.line(format!("K={} L={} {}", mi.k, mi.l, interval_text(&mi.interval, precision)));
            let mut rec = record! {"alpha" => a.to_string(), "N" => n, "K" => mi.k, "L" => mi.l};
            rec.extend(interval_record(&mi.interval, precision));
            r.record(rec);
            Ok(r)
        }
        Err(Error::BadRational) => {
            r.line(format!("{a} is a bad rational: no stable exponents up to {budget}"));
            let mut rec = record! {"alpha" => a.to_string(), "N" => n, "bad_rational" => true};
            if let Some(cert) = power_of_two_exponent(&a).and_then(|k| bad_rational_certificate(k).ok()) {
                r.text.extend(certificate_lines(&cert));
                rec.insert("certificate".into(), json!(certificate_record(&cert)));
            }
            r.record(rec);
            r.exit = EXIT_NEGATIVE;
            Ok(r)
        }
        Err(e) => Err(e),
    }
}

/// `k` with `a = 1/2^k`.
fn power_of_two_exponent(a: &BigRational) -> Option<u32> {
    let one = num_bigint::BigInt::from(1);
    let d = a.denom();
    if *a.numer() != one || d.magnitude().count_ones() != 1 {
        return None;
    }
    u32::try_from(d.bits() - 1).ok()
}

fn certificate_lines(c: &BadRationalCertificate) -> Vec<String> {
    let ok = |b: bool| if b { "ok" } else { "FAILED" };
    vec![
        format!("alpha = {}  N = 2", c.alpha),
        format!("alpha   = {}", c.alpha_word),
        format!("alpha+1 = {}", c.alpha_plus_one_word),
        format!("expansions: {}", ok(c.expansions_ok)),
        format!("T(alpha) = T^4(alpha+1): {}", ok(c.point_matching_ok)),
        format!("R M_1 = {}", c.rm),
        format!("M_4 = {}  M_4/2 = {}", c.m4, c.m_hat),
        format!("matrices: {}", ok(c.matrices_ok)),
        "mod 2: R M_K = [[1,1],[1,1]] and M_L/2 = [[0,0],[1,1]] for all K >= 1, L >= 4".into(),
        format!("residue classes: {}", ok(c.residue_classes_ok)),
        format!("K = 0 or L <= 3: {}", ok(c.small_cases_ok)),
        format!("certificate {}", if c.valid { "valid" } else { "INVALID" }),
    ]
}

fn certificate_record(c: &BadRationalCertificate) -> Record {
    record! {
        "n" => c.n,
        "alpha" => c.alpha.to_string(),
        "alpha_word" => c.alpha_word.to_string(),
        "alpha_plus_one_word" => c.alpha_plus_one_word.to_string(),
        "expansions_ok" => c.expansions_ok,
        "point_matching_ok" => c.point_matching_ok,
        "rm" => c.rm.to_string(),
        "m4" => c.m4.to_string(),
        "m_hat" => c.m_hat.to_string(),
        "matrices_ok" => c.matrices_ok,
        "residue_classes_ok" => c.residue_classes_ok,
        "small_cases_ok" => c.small_cases_ok,
        "valid" => c.valid,
    }
}

pub fn badrat_cmd(n: u32) -> Result<Report> {
    let cert = bad_rational_certificate(n)?;
    let mut r = Report {
        text: certificate_lines(&cert),
        records: vec![certificate_record(&cert)],
        exit: EXIT_OK,
    };
    if !cert.valid {
        r.exit = EXIT_INTERNAL;
    }
    Ok(r)
}

fn plot_record(row: &PlotRow) -> Record {
    record! {
        "N" => row.n,
        "lo" => row.lo,
        "hi" => row.hi,
        "in_K" => row.in_k,
        "digit_lo" => row.digit_lo,
        "digit_hi" => row.digit_hi,
    }
}

/// Cells of `K` for every `N` in `ns`, computed in parallel and merged in
/// order.
pub fn kset_cmd(ns: &[u64], cfg: &Config, jobs: usize) -> Result<Report> {
    let per_n: Vec<Result<Vec<PlotRow>>> = pool(jobs)?.install(|| {
        ns.par_iter()
            .map(|&n| kset_plot_rows(n, cfg.precision, &cfg.alpha_min))
            .collect()
    });
    let mut r = Report::default();
    for rows in per_n {
        for row in rows? {
            r.line(format!(
                "N={} ({}, {}] digits {}..{} {}",
                row.n,
                row.lo,
                row.hi,
                row.digit_lo,
                row.digit_hi,
                if row.in_k { "in K" } else { "not in K" }
            ));
            r.record(plot_record(&row));
        }
    }
    Ok(r)
}

pub fn nomatch_cmd(n: u64, precision: usize) -> Result<Report> {
    let mut r = Report::default();
    for iv in no_matching_regions(n)? {
        r.line(format!("N={n} {}", interval_text(&iv, precision)));
        let mut rec = record! {"N" => n};
        rec.extend(interval_record(&iv, precision));
        r.record(rec);
    }
    Ok(r)
}

/// Which parts of a theorem instance to compare.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyScope {
    /// Expansions, exponents, matrices, stability and intervals.
    Theorem,
    /// Exponents and the two matrices only.
    Table,
}

const TABLE_COMPONENTS: [&str; 4] = ["point matching", "stable exponents", "RM matrix", "M matrix"];

fn relevant(scope: VerifyScope, e: &Error) -> bool {
    match (scope, e) {
        (VerifyScope::Theorem, _) => true,
        (VerifyScope::Table, Error::MismatchDetected { component, .. }) => {
            TABLE_COMPONENTS.contains(&component.as_str())
        }
        (VerifyScope::Table, _) => true,
    }
}

fn check_record(c: &TheoremCheck, scope: VerifyScope, failures: &[String]) -> Record {
    let mut rec = record! {
        "family" => c.family.name(),
        "k" => c.k,
        "alpha" => c.alpha.to_string(),
        "passed" => failures.is_empty(),
        "mismatches" => failures,
    };
    if scope == VerifyScope::Table {
        rec.insert("rm".into(), json!(c.rm.as_ref().map(|m| m.to_string())));
        rec.insert("m".into(), json!(c.m.as_ref().map(|m| m.to_string())));
        rec.insert("expected_rm".into(), json!(c.family.rm(c.k).to_string()));
        rec.insert("expected_m".into(), json!(c.family.m(c.k).to_string()));
    } else {
        rec.insert("interval".into(), json!(c.interval.as_ref().map(|iv| [iv.lo.to_string(), iv.hi.to_string()])));
    }
    rec
}

pub fn verify_cmd(scope: VerifyScope, families: &[Family], ks: &[u64], jobs: usize) -> Result<Report> {
    let jobs_list: Vec<(Family, u64)> = families.iter().flat_map(|&f| ks.iter().map(move |&k| (f, k))).collect();
    let checks: Vec<TheoremCheck> =
        pool(jobs)?.install(|| jobs_list.par_iter().map(|&(f, k)| check_theorem_instance(f, k)).collect());
    let mut r = Report::default();
    let mut total_pass = 0;
    for &f in families {
        let mut pass = 0;
        let mut count = 0;
        for c in checks.iter().filter(|c| c.family == f) {
            let failures: Vec<String> =
                c.mismatches.iter().filter(|e| relevant(scope, e)).map(|e| e.to_string()).collect();
            count += 1;
            if failures.is_empty() {
                pass += 1;
                r.line(format!("family {} k={} alpha={} pass", f.name(), c.k, c.alpha));
            } else {
                r.line(format!("family {} k={} alpha={} FAIL", f.name(), c.k, c.alpha));
                for m in &failures {
                    r.line(format!("  {m}"));
                }
            }
            r.record(check_record(c, scope, &failures));
        }
        r.line(format!("family {}: {pass}/{count} pass", f.name()));
        total_pass += pass;
    }
    r.line(format!("{total_pass}/{} pass", checks.len()));
    if total_pass != checks.len() {
        r.exit = EXIT_INTERNAL;
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_k_range("0..3").unwrap(), [0, 1, 2]);
        assert_eq!(parse_k_range("0..=3").unwrap(), [0, 1, 2, 3]);
        assert_eq!(parse_k_range("7").unwrap(), [7]);
        assert!(parse_k_range("a..b").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Parse("x".into())), EXIT_PARSE);
        assert_eq!(exit_code(&Error::OutOfDomain("x".into())), EXIT_DOMAIN);
        assert_eq!(exit_code(&Error::BadRational), EXIT_NEGATIVE);
        assert_eq!(exit_code(&Error::InvariantViolation("x".into())), EXIT_INTERNAL);
    }

    #[test]
    fn powers_of_two() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(power_of_two_exponent(&q(1, 8)), Some(3));
        assert_eq!(power_of_two_exponent(&q(1, 6)), None);
        assert_eq!(power_of_two_exponent(&q(3, 8)), None);
    }
}
