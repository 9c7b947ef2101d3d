//! Serializable report shapes. Field order here is the order in the
//! emitted JSON; all lists are produced in a deterministic order.

use pillai_core::solver::{Collision, DoubleRepSet, SolutionSet};
use pillai_core::{BoundReport, HypothesisReport, Recurrence};
use serde::Serialize;

use crate::config::ProblemConfig;

#[derive(Debug, Serialize)]
pub struct Constant {
    pub name: String,
    pub value: String,
}

#[derive(Debug, Serialize)]
pub struct SubReport {
    pub label: String,
    pub report: Bound,
}

#[derive(Debug, Serialize)]
pub struct Bound {
    pub theorem: String,
    pub constants: Vec<Constant>,
    pub case_trace: Vec<String>,
    pub sub_reports: Vec<SubReport>,
    #[serde(rename = "final")]
    pub final_bound: String,
    pub enumeration_limit: u64,
}

impl From<&BoundReport> for Bound {
    fn from(r: &BoundReport) -> Self {
        Bound {
            theorem: r.theorem.to_string(),
            constants: r.constants.iter().map(|(n, v)| Constant { name: n.clone(), value: v.to_string() }).collect(),
            case_trace: r.case_trace.clone(),
            sub_reports: r.sub_reports.iter().map(|(l, s)| SubReport { label: l.clone(), report: s.into() }).collect(),
            final_bound: r.final_bound.to_string(),
            enumeration_limit: r.enumeration_limit,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Hypotheses {
    pub theorem: String,
    pub passed: bool,
    pub violations: Vec<String>,
    pub dominant_place: Option<String>,
    pub n0: [u64; 2],
    pub n1: [u64; 2],
}

impl From<&HypothesisReport> for Hypotheses {
    fn from(r: &HypothesisReport) -> Self {
        Hypotheses {
            theorem: r.theorem.to_string(),
            passed: r.passed,
            violations: r.violations.clone(),
            dominant_place: r.dominant_place.clone(),
            n0: r.n0,
            n1: r.n1,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Term {
    pub a: String,
    pub alpha: String,
}

fn terms(r: &Recurrence) -> Vec<Term> {
    r.terms().iter().map(|t| Term { a: t.coeff.to_string(), alpha: t.root.to_string() }).collect()
}

/// Canonical echo of the parsed problem.
#[derive(Debug, Serialize)]
pub struct Problem {
    pub mode: String,
    #[serde(rename = "G")]
    pub g: Vec<Term>,
    #[serde(rename = "H")]
    pub h: Vec<Term>,
    pub f: Option<String>,
    pub genus: u64,
}

impl From<&ProblemConfig> for Problem {
    fn from(c: &ProblemConfig) -> Self {
        Problem {
            mode: c.mode.to_string(),
            g: terms(&c.g),
            h: terms(&c.h),
            f: c.f.as_ref().map(|f| f.to_string()),
            genus: c.genus,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Offsets {
    #[serde(rename = "G")]
    pub g: u64,
    #[serde(rename = "H")]
    pub h: u64,
}

impl From<(u64, u64)> for Offsets {
    fn from((g, h): (u64, u64)) -> Self {
        Offsets { g, h }
    }
}

#[derive(Debug, Serialize)]
pub struct Verification {
    pub window: u64,
    pub oracle_solutions: Vec<[u64; 2]>,
    pub agrees_on_bound_square: bool,
    pub solutions_outside_bound: Vec<[u64; 2]>,
}

fn pairs(v: &[(u64, u64)]) -> Vec<[u64; 2]> {
    v.iter().map(|&(n, m)| [n, m]).collect()
}

#[derive(Debug, Serialize)]
pub struct BoundCmd {
    pub command: &'static str,
    pub problem: Problem,
    pub bound: Bound,
}

#[derive(Debug, Serialize)]
pub struct SolveCmd {
    pub command: &'static str,
    pub problem: Problem,
    pub bound: Bound,
    pub offsets: Offsets,
    pub solutions: Vec<[u64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<Verification>,
}

impl SolveCmd {
    pub fn new(problem: Problem, s: &SolutionSet, oracle: Option<(u64, Vec<(u64, u64)>)>) -> Self {
        let limit = s.bound_report.enumeration_limit;
        let verification = oracle.map(|(window, found)| {
            let inside: Vec<(u64, u64)> = found.iter().copied().filter(|&(n, m)| n <= limit && m <= limit).collect();
            let outside: Vec<(u64, u64)> = found.iter().copied().filter(|&(n, m)| n > limit || m > limit).collect();
            Verification {
                window,
                oracle_solutions: pairs(&found),
                agrees_on_bound_square: inside == s.solutions,
                solutions_outside_bound: pairs(&outside),
            }
        });
        SolveCmd {
            command: "solve",
            problem,
            bound: (&s.bound_report).into(),
            offsets: s.offsets.into(),
            solutions: pairs(&s.solutions),
            verification,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CollisionOut {
    pub f: String,
    pub representations: Vec<[u64; 2]>,
}

impl From<&Collision> for CollisionOut {
    fn from(c: &Collision) -> Self {
        CollisionOut { f: c.f.to_string(), representations: pairs(&c.representations) }
    }
}

#[derive(Debug, Serialize)]
pub struct DoubleRepCmd {
    pub command: &'static str,
    pub problem: Problem,
    pub hypotheses: Hypotheses,
    pub bound: Bound,
    pub offsets: Offsets,
    pub collisions: Vec<CollisionOut>,
}

impl DoubleRepCmd {
    pub fn new(problem: Problem, s: &DoubleRepSet) -> Self {
        DoubleRepCmd {
            command: "double-rep",
            problem,
            hypotheses: (&s.hypotheses).into(),
            bound: (&s.bound_report).into(),
            offsets: s.offsets.into(),
            collisions: s.collisions.iter().map(Into::into).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CheckCmd {
    pub command: &'static str,
    pub problem: Problem,
    pub hypotheses: Hypotheses,
}

#[derive(Debug, Serialize)]
pub struct HeightCmd {
    pub command: &'static str,
    pub input: String,
    pub value: String,
}

#[derive(Debug, Serialize)]
pub struct IndepCmd {
    pub command: &'static str,
    pub gamma: String,
    pub delta: String,
    pub value: bool,
}

#[derive(Debug, Serialize)]
pub struct CorollaryCmd {
    pub command: &'static str,
    pub p: String,
    pub q: String,
    pub f: String,
    pub bound: Bound,
    pub solutions: Vec<[u64; 2]>,
}

impl CorollaryCmd {
    pub fn new(p: String, q: String, f: String, s: &SolutionSet) -> Self {
        CorollaryCmd { command: "corollary", p, q, f, bound: (&s.bound_report).into(), solutions: pairs(&s.solutions) }
    }
}
