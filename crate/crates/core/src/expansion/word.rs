use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_integer::Integer;

use crate::{Error, Result};

/// Digits `d₁ d₂ …` of an expansion: a finite prefix and an optional
/// repeating period.
///
/// Periodic words are kept canonical (minimal period, as much of the prefix
/// as possible absorbed into the period), so derived equality is equality of
/// the denoted sequences.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitWord {
    prefix: Vec<u64>,
    period: Option<Vec<u64>>,
}

impl DigitWord {
    pub fn finite(prefix: Vec<u64>) -> Self {
        DigitWord {
            prefix,
            period: None,
        }
    }

    /// Panics if `period` is empty.
    pub fn periodic(prefix: Vec<u64>, period: Vec<u64>) -> Self {
        assert!(!period.is_empty(), "empty period");
        let mut w = DigitWord {
            prefix,
            period: Some(period),
        };
        w.canonicalize();
        w
    }

    fn canonicalize(&mut self) {
        let Some(period) = self.period.as_mut() else {
            return;
        };
        let len = period.len();
        if let Some(k) = (1..len).find(|&k| len % k == 0 && (k..len).all(|i| period[i] == period[i - k])) {
            period.truncate(k);
        }
        while let (Some(&last), Some(&p_last)) = (self.prefix.last(), period.last()) {
            if last != p_last {
                break;
            }
            self.prefix.pop();
            period.rotate_right(1);
        }
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    pub fn period(&self) -> Option<&[u64]> {
        self.period.as_deref()
    }

    pub fn is_periodic(&self) -> bool {
        self.period.is_some()
    }

    /// Digit at 0-based position `i`, `None` past the end of a finite word.
    pub fn digit_at(&self, i: usize) -> Option<u64> {
        if let Some(&d) = self.prefix.get(i) {
            return Some(d);
        }
        let p = self.period.as_ref()?;
        Some(p[(i - self.prefix.len()) % p.len()])
    }

    /// The first `n` digits, fewer if the word is finite and shorter.
    pub fn take(&self, n: usize) -> Vec<u64> {
        (0..n).map_while(|i| self.digit_at(i)).collect()
    }

    /// The shift `σⁿ`, dropping the first `n` digits.
    pub fn shift(&self, n: usize) -> Self {
        if n <= self.prefix.len() {
            let mut w = DigitWord {
                prefix: self.prefix[n..].to_vec(),
                period: self.period.clone(),
            };
            w.canonicalize();
            return w;
        }
        match &self.period {
            None => DigitWord::finite(Vec::new()),
            Some(p) => {
                let mut p = p.clone();
                let k = (n - self.prefix.len()) % p.len();
                p.rotate_left(k);
                DigitWord::periodic(Vec::new(), p)
            }
        }
    }
}

/// Orders the points denoted by two words.
///
/// Branches of the map are decreasing, so at the first differing position
/// `n` (counted from 1) a larger digit means a smaller point for odd `n` and
/// a larger point for even `n`.
pub fn alternating_compare(w1: &DigitWord, w2: &DigitWord) -> Result<Ordering> {
    let limit = match (&w1.period, &w2.period) {
        (Some(p1), Some(p2)) => {
            Some(w1.prefix.len().max(w2.prefix.len()) + p1.len().lcm(&p2.len()) + 1)
        }
        _ => None,
    };
    let mut i = 0;
    loop {
        if limit == Some(i) {
            return Ok(Ordering::Equal);
        }
        let (Some(a), Some(b)) = (w1.digit_at(i), w2.digit_at(i)) else {
            return Err(Error::Undecidable);
        };
        if a != b {
            let by_digit = a.cmp(&b).reverse();
            return Ok(if i % 2 == 0 { by_digit } else { by_digit.reverse() });
        }
        i += 1;
    }
}

impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items: Vec<String> = self.prefix.iter().map(|d| d.to_string()).collect();
        if let Some(p) = &self.period {
            let inner: Vec<String> = p.iter().map(|d| d.to_string()).collect();
            items.push(alloc::format!("({})", inner.join(", ")));
        }
        if items.is_empty() {
            write!(f, "[0]")
        } else {
            write!(f, "[0; {}]", items.join(", "))
        }
    }
}

impl FromStr for DigitWord {
    type Err = Error;

    /// Parses `[0; 8, (1)]`, `[0; 8, 1, 1]` and `[0]`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(alloc::format!("malformed digit word {s:?}"));
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(bad)?
            .trim();
        let rest = match body.strip_prefix('0') {
            Some(r) => r.trim(),
            None => return Err(bad()),
        };
        if rest.is_empty() {
            return Ok(DigitWord::finite(Vec::new()));
        }
        let rest = rest.strip_prefix(';').ok_or_else(bad)?.trim();
        let (head, period) = match rest.find('(') {
            Some(open) => {
                let tail = rest[open + 1..].trim_end();
                let inner = tail.strip_suffix(')').ok_or_else(bad)?;
                (rest[..open].trim().trim_end_matches(',').trim(), Some(inner))
            }
            None => (rest, None),
        };
        let parse_list = |t: &str| -> Result<Vec<u64>> {
            if t.trim().is_empty() {
                return Ok(Vec::new());
            }
            t.split(',')
                .map(|d| match d.trim().parse::<u64>() {
                    Ok(v) if v >= 1 => Ok(v),
                    _ => Err(bad()),
                })
                .collect()
        };
        let prefix = parse_list(head)?;
        match period {
            None => Ok(DigitWord::finite(prefix)),
            Some(p) => {
                let p = parse_list(p)?;
                if p.is_empty() {
                    return Err(bad());
                }
                Ok(DigitWord::periodic(prefix, p))
            }
        }
    }
}
