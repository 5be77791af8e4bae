use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nalpha::matching::Family;
use nalpha::{Error, Result};
use nalpha_cli::commands::{self, exit_code, VerifyScope, EXIT_OK, EXIT_PARSE};
use nalpha_cli::config::{parse_rational, Config, CONFIG_ENV};
use nalpha_cli::output::Report;

/// Exact (N, alpha)-continued fractions: expansions, orbits, matching.
#[derive(Parser, Debug)]
#[command(name = "nalpha", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Global {
    /// key = value config file
    #[arg(long, global = true, env = CONFIG_ENV)]
    config: Option<PathBuf>,
    /// text, json, jsonl or csv
    #[arg(long, global = true)]
    format: Option<String>,
    /// Fractional digits of decimal renderings
    #[arg(long, global = true)]
    precision: Option<usize>,
    /// Step budget for orbits and matching searches
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Left end of the parameter window for kset
    #[arg(long = "alpha-min", global = true)]
    alpha_min: Option<String>,
    /// Worker threads for kset and verify
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// First n digits of x
    Expand {
        #[arg(long)]
        x: String,
        #[arg(long = "N")]
        big_n: u64,
        #[arg(long)]
        alpha: String,
        #[arg(long = "n")]
        len: usize,
    },
    /// Orbit of x with a periodicity verdict
    Orbit {
        #[arg(long)]
        x: String,
        #[arg(long = "N")]
        big_n: u64,
        #[arg(long)]
        alpha: String,
        /// Track the quadratic (A, B, C) coefficients
        #[arg(long)]
        quadratic: bool,
    },
    /// Matching of alpha and alpha + 1, stable exponents and interval
    Match {
        #[arg(long)]
        alpha: String,
        #[arg(long = "N")]
        big_n: u64,
    },
    /// Matching interval around a rational alpha (N = 2)
    Interval {
        #[arg(long)]
        alpha: String,
        #[arg(long = "N", default_value_t = 2)]
        big_n: u64,
    },
    /// Certificate that 1/2^n is a bad rational
    Badrat {
        #[arg(long = "n")]
        n: u32,
    },
    /// Cells of constant digit set and membership in K
    Kset {
        /// A single N
        #[arg(long = "N", conflicts_with = "n_max")]
        big_n: Option<u64>,
        /// All N from 2 up to this value
        #[arg(long = "N-max")]
        n_max: Option<u64>,
    },
    /// Parameter regions without matching intervals (odd N >= 5)
    NomatchRegions {
        #[arg(long = "N")]
        big_n: u64,
    },
    /// Check the matching-interval families against their closed forms
    Verify {
        #[arg(long, conflicts_with = "table")]
        theorem: bool,
        /// Exponents and matrices only
        #[arg(long)]
        table: bool,
        /// i, ii, iii, iv or all
        #[arg(long, default_value = "all")]
        family: String,
        /// a..b, a..=b or a single k
        #[arg(long, default_value = "0..=10")]
        k: String,
    },
}

fn config(g: &Global) -> Result<Config> {
    let mut cfg = match &g.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    if let Some(f) = &g.format {
        cfg.format = f.parse()?;
    }
    if let Some(p) = g.precision {
        cfg.precision = p;
    }
    if let Some(b) = g.budget {
        cfg.budget = b;
    }
    if let Some(a) = &g.alpha_min {
        cfg.alpha_min = parse_rational(a)?;
    }
    if g.jobs == 0 {
        return Err(Error::Parse("jobs must be at least 1".into()));
    }
    cfg.check()?;
    Ok(cfg)
}

fn run(cli: &Cli, cfg: &Config) -> Result<Report> {
    let jobs = cli.global.jobs;
    match &cli.cmd {
        Cmd::Expand { x, big_n, alpha, len } => commands::expand_cmd(x, *big_n, alpha, *len),
        Cmd::Orbit { x, big_n, alpha, quadratic } => commands::orbit_cmd(x, *big_n, alpha, cfg.budget, *quadratic),
        Cmd::Match { alpha, big_n } => commands::match_cmd(alpha, *big_n, cfg.budget, cfg.precision),
        Cmd::Interval { alpha, big_n } => commands::interval_cmd(alpha, *big_n, cfg.budget, cfg.precision),
        Cmd::Badrat { n } => commands::badrat_cmd(*n),
        Cmd::Kset { big_n, n_max } => {
            let ns: Vec<u64> = match (big_n, n_max) {
                (Some(n), _) => vec![*n],
                (None, Some(m)) if *m >= 2 => (2..=*m).collect(),
                (None, Some(m)) => return Err(Error::InvalidParams(format!("N-max = {m} < 2"))),
                (None, None) => return Err(Error::Parse("kset needs --N or --N-max".into())),
            };
            commands::kset_cmd(&ns, cfg, jobs)
        }
        Cmd::NomatchRegions { big_n } => commands::nomatch_cmd(*big_n, cfg.precision),
        Cmd::Verify { theorem: _, table, family, k } => {
            let scope = if *table { VerifyScope::Table } else { VerifyScope::Theorem };
            let families = if family == "all" {
                Family::ALL.to_vec()
            } else {
                family.split(',').map(Family::parse).collect::<Result<_>>()?
            };
            commands::verify_cmd(scope, &families, &commands::parse_k_range(k)?, jobs)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            return ExitCode::from(code as u8);
        }
    };
    let result = config(&cli.global).and_then(|cfg| {
        let report = run(&cli, &cfg)?;
        Ok((report.render(cfg.format)?, report.exit))
    });
    match result {
        Ok((text, exit)) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(text.as_bytes());
            ExitCode::from(exit as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
