//! Command line front end: parses expressions and problem files, runs the
//! bound and enumeration routines, and prints JSON reports.
//!
//! Exit codes: 0 success, 2 hypothesis violation (a report is still
//! printed), 3 parse or config error, 4 internal invariant failure.

pub mod config;
pub mod output;
pub mod parse;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use pillai_core::bounds::{theorem1_bound_with, theorem2_bound_with, theorem3_bound_with};
use pillai_core::recurrence::{check_no_multiple_values, prepare_theorem2, prepare_theorem3, Prepared};
use pillai_core::{
    brute_force_oracle, check_theorem1_hypotheses, corollary_bound, corollary_solve, is_mult_independent,
    solve_double_rep_with, solve_fixed_f_with, BoundOptions, DoubleRepMode, Error, HypothesisReport, Parallelism,
    RatFunc, TheoremTag,
};
use serde::Serialize;

use crate::config::{ConfigError, Mode, ProblemConfig};
use crate::output::*;
use crate::parse::{parse_expression, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_HYPOTHESIS: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "pillai", version, about = "Effective bounds and certified solutions for G_n - H_m = f over Q(x)")]
struct Cli {
    /// Worker threads for enumeration; 1 runs sequentially, 0 uses all cores.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the effective bound for the configured problem.
    Bound {
        #[arg(short = 'c', long = "config")]
        config: PathBuf,
    },
    /// Enumerate all solutions of G_n - H_m = f (modes T1, COROLLARY).
    Solve {
        #[arg(short = 'c', long = "config")]
        config: PathBuf,
        /// Cross-check against the brute-force oracle on the multiplied window.
        #[arg(long)]
        verify: bool,
    },
    /// Enumerate all f with two representations (modes T2, T3).
    DoubleRep {
        #[arg(short = 'c', long = "config")]
        config: PathBuf,
    },
    /// Report which hypotheses of the configured mode hold.
    Check {
        #[arg(short = 'c', long = "config")]
        config: PathBuf,
    },
    /// Height of a rational function.
    Height { expr: String },
    /// Multiplicative independence of two rational functions.
    Indep { gamma: String, delta: String },
    /// Solve p^n - q^m = f for polynomials.
    Corollary {
        #[arg(short = 'p', allow_hyphen_values = true)]
        p: String,
        #[arg(short = 'q', allow_hyphen_values = true)]
        q: String,
        #[arg(short = 'f', allow_hyphen_values = true)]
        f: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Bound { .. } => "bound",
            Command::Solve { .. } => "solve",
            Command::DoubleRep { .. } => "double-rep",
            Command::Check { .. } => "check",
            Command::Height { .. } => "height",
            Command::Indep { .. } => "indep",
            Command::Corollary { .. } => "corollary",
        }
    }
}

enum Failure {
    Input(String),
    Hypothesis(Box<HypothesisReport>),
    Internal(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::HypothesisViolation(r) => Failure::Hypothesis(r),
            Error::InvalidRecurrence(_) => Failure::Input(e.to_string()),
            Error::ZeroF => violation(TheoremTag::T1, "f is zero"),
            Error::Invariant(_) => Failure::Internal(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

fn violation(theorem: TheoremTag, what: &str) -> Failure {
    let mut r = HypothesisReport::new(theorem);
    r.violate(what);
    Failure::Hypothesis(Box::new(r))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Parses `argv` (including the program name) and runs one command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let par = match cli.threads {
        1 => Parallelism::Sequential,
        n => Parallelism::Parallel(n),
    };
    let name = cli.command.name();
    let mut problem_echo = None;
    match dispatch(cli.command, par, &mut problem_echo) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(err, "internal error: {msg}");
            EXIT_INTERNAL
        }
        Err(Failure::Hypothesis(report)) => {
            let _ = writeln!(err, "hypotheses violated: {}", report.violations.join("; "));
            let report = CheckCmd {
                command: name,
                problem: problem_echo.take().unwrap_or_else(|| Problem {
                    mode: report.theorem.to_string(),
                    g: vec![],
                    h: vec![],
                    f: None,
                    genus: 0,
                }),
                hypotheses: (&*report).into(),
            };
            let _ = out.write_all(json(&report).as_bytes());
            EXIT_HYPOTHESIS
        }
    }
}

fn load(path: &PathBuf, echo: &mut Option<Problem>) -> Result<ProblemConfig, Failure> {
    let config = ProblemConfig::load(path)?;
    *echo = Some((&config).into());
    Ok(config)
}

fn options(c: &ProblemConfig) -> BoundOptions {
    BoundOptions { genus: c.genus, extra_elements: Vec::new() }
}

fn double_mode(mode: Mode) -> Result<DoubleRepMode, Failure> {
    match mode {
        Mode::T2 => Ok(DoubleRepMode::T2),
        Mode::T3 => Ok(DoubleRepMode::T3),
        other => Err(Failure::Input(format!("mode {other} is not a double-representation mode"))),
    }
}

fn dispatch(command: Command, par: Parallelism, echo: &mut Option<Problem>) -> Result<String, Failure> {
    match command {
        Command::Bound { config } => {
            let c = load(&config, echo)?;
            let report = match c.mode {
                Mode::T1 => theorem1_bound_with(&c.g, &c.h, c.f.as_ref().expect("validated"), &options(&c))?,
                Mode::T2 => theorem2_bound_with(&c.g, &c.h, &options(&c))?,
                Mode::T3 => theorem3_bound_with(&c.g, &c.h, &options(&c))?,
                Mode::Corollary => {
                    let (p, q, f) = c.corollary_polys()?;
                    corollary_bound(&p, &q, &f).map_err(corollary_failure)?
                }
            };
            Ok(json(&BoundCmd { command: "bound", problem: (&c).into(), bound: (&report).into() }))
        }
        Command::Solve { config, verify } => {
            let c = load(&config, echo)?;
            let f = c.f.clone().ok_or_else(|| Failure::Input(format!("mode {} has no f; use double-rep", c.mode)))?;
            let (set, g, h) = match c.mode {
                Mode::T1 => {
                    if f.is_zero() {
                        return Err(violation(TheoremTag::T1, "f is zero"));
                    }
                    (solve_fixed_f_with(&c.g, &c.h, &f, &options(&c), par)?, c.g.clone(), c.h.clone())
                }
                Mode::Corollary => {
                    let (p, q, fp) = c.corollary_polys()?;
                    let set = corollary_solve(&p, &q, &fp, par).map_err(corollary_failure)?;
                    (set, c.g.clone(), c.h.clone())
                }
                _ => unreachable!("config validation ties f to T1 and COROLLARY"),
            };
            let oracle = verify.then(|| {
                let window = verification_window(&c, set.bound_report.enumeration_limit);
                (window, brute_force_oracle(&g, &h, &f, window))
            });
            Ok(json(&SolveCmd::new((&c).into(), &set, oracle)))
        }
        Command::DoubleRep { config } => {
            let c = load(&config, echo)?;
            let mode = double_mode(c.mode)?;
            let set = solve_double_rep_with(&c.g, &c.h, mode, &options(&c), par)?;
            Ok(json(&DoubleRepCmd::new((&c).into(), &set)))
        }
        Command::Check { config } => {
            let c = load(&config, echo)?;
            let report = check(&c)?;
            let passed = report.passed;
            let text = json(&CheckCmd { command: "check", problem: (&c).into(), hypotheses: (&report).into() });
            if passed {
                Ok(text)
            } else {
                Err(Failure::Hypothesis(Box::new(report)))
            }
        }
        Command::Height { expr } => {
            let f = parse_expression(&expr)?;
            Ok(json(&HeightCmd { command: "height", input: f.to_string(), value: f.height().to_string() }))
        }
        Command::Indep { gamma, delta } => {
            let g = parse_expression(&gamma)?;
            let d = parse_expression(&delta)?;
            let value = is_mult_independent(&g, &d);
            Ok(json(&IndepCmd { command: "indep", gamma: g.to_string(), delta: d.to_string(), value }))
        }
        Command::Corollary { p, q, f } => {
            let poly = |name: &str, text: &str| -> Result<RatFunc, Failure> {
                let v = parse_expression(text)?;
                if !v.is_polynomial() {
                    return Err(Failure::Input(format!("{name} must be a polynomial")));
                }
                Ok(v)
            };
            let (p, q, f) = (poly("p", &p)?, poly("q", &q)?, poly("f", &f)?);
            let set = corollary_solve(p.num(), q.num(), f.num(), par).map_err(corollary_failure)?;
            Ok(json(&CorollaryCmd::new(p.to_string(), q.to_string(), f.to_string(), &set)))
        }
    }
}

fn corollary_failure(e: Error) -> Failure {
    match e {
        Error::ConstantBase => violation(TheoremTag::Corollary, "p and q must be non-constant"),
        Error::ZeroF => violation(TheoremTag::Corollary, "f is zero"),
        other => other.into(),
    }
}

/// `floor(multiplier * limit)`, at least 1.
fn verification_window(c: &ProblemConfig, limit: u64) -> u64 {
    let w = &c.window_multiplier * pillai_core::Rational::from_integer(limit.into());
    let w = w.floor().to_integer();
    u64::try_from(w).unwrap_or(u64::MAX).max(1)
}

/// Full hypothesis report for the configured mode, including the
/// on-range injectivity check where the mode requires it.
fn check(c: &ProblemConfig) -> Result<HypothesisReport, Failure> {
    match c.mode {
        Mode::T1 => {
            let mut r = check_theorem1_hypotheses(&c.g, &c.h);
            if c.f.as_ref().is_some_and(|f| f.is_zero()) {
                r.violate("f is zero");
            }
            Ok(r)
        }
        Mode::Corollary => {
            let (p, q, f) = c.corollary_polys()?;
            let mut r = HypothesisReport::new(TheoremTag::Corollary);
            if p.is_constant() {
                r.violate("p is constant");
            }
            if q.is_constant() {
                r.violate("q is constant");
            }
            if f.is_zero() {
                r.violate("f is zero");
            }
            Ok(r)
        }
        Mode::T2 | Mode::T3 => {
            let prepared = if c.mode == Mode::T2 { prepare_theorem2(&c.g, &c.h)? } else { prepare_theorem3(&c.g, &c.h)? };
            with_range_check(prepared, c)
        }
    }
}

fn with_range_check(prepared: Prepared, c: &ProblemConfig) -> Result<HypothesisReport, Failure> {
    let mut report = prepared.report.clone();
    if !report.passed {
        return Ok(report);
    }
    let bound = match c.mode {
        Mode::T2 => pillai_core::bounds::theorem2_bound_prepared(&prepared, &options(c))?,
        _ => pillai_core::bounds::theorem3_bound_prepared(&prepared, &options(c))?,
    };
    let limit = bound.enumeration_limit;
    for (name, rec) in [("G", &prepared.g), ("H", &prepared.h)] {
        if !check_no_multiple_values(rec, limit) {
            report.violate(format!("{name} has multiple values on [1, {limit}]"));
        }
    }
    Ok(report)
}
