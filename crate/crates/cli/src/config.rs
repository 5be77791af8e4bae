//! `key = value` configuration with flag overrides.

use std::fs;
use std::path::Path;

use nalpha::{BigRational, Error, Result, DEFAULT_BUDGET};

use crate::output::Format;

/// Environment variable naming a config file.
pub const CONFIG_ENV: &str = "NALPHA_CONFIG";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub budget: usize,
    pub format: Format,
    pub precision: usize,
    pub alpha_min: BigRational,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            budget: DEFAULT_BUDGET,
            format: Format::Text,
            precision: 6,
            alpha_min: BigRational::new(1.into(), 100.into()),
        }
    }
}

impl Config {
    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Config::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("config line {}: expected key = value", i + 1)))?;
            cfg.set(key.trim(), value.trim())
                .map_err(|e| Error::Parse(format!("config line {}: {e}", i + 1)))?;
        }
        cfg.check()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "budget" => self.budget = parse_count(value)?,
            "format" => self.format = value.parse()?,
            "precision" => self.precision = parse_count(value)?,
            "alpha_min" | "alpha-min" => self.alpha_min = parse_rational(value)?,
            _ => return Err(Error::Parse(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    pub fn check(&self) -> Result<()> {
        if self.budget == 0 {
            return Err(Error::Parse("budget must be at least 1".into()));
        }
        if !(1..=200).contains(&self.precision) {
            return Err(Error::Parse("precision must be in 1..=200".into()));
        }
        if self.alpha_min <= BigRational::from_integer(0.into()) {
            return Err(Error::Parse("alpha_min must be positive".into()));
        }
        Ok(())
    }
}

fn parse_count(s: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::Parse(format!("not a count: {s:?}")))
}

/// `p/q` or an integer.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let x: nalpha::ExactNumber = s.parse()?;
    x.as_rational()
        .cloned()
        .ok_or_else(|| Error::Parse(format!("{s:?} is not rational")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_validates() {
        let c = Config::parse("# defaults\nbudget = 50\nformat=csv\nprecision = 10 # digits\nalpha_min = 1/20\n").unwrap();
        assert_eq!(c.budget, 50);
        assert_eq!(c.format, Format::Csv);
        assert_eq!(c.precision, 10);
        assert_eq!(c.alpha_min, BigRational::new(1.into(), 20.into()));
        assert!(Config::parse("budget = 0").is_err());
        assert!(Config::parse("precision = 201").is_err());
        assert!(Config::parse("colour = red").is_err());
        assert!(Config::parse("budget").is_err());
        assert!(Config::parse("alpha_min = 0.1").is_err());
    }
}
