//! Ledger of named constants produced while computing an enumeration bound.

use std::fmt;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TheoremTag {
    T1,
    T2,
    T3,
    Corollary,
    Lemma2,
}

impl fmt::Display for TheoremTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TheoremTag::T1 => "T1",
            TheoremTag::T2 => "T2",
            TheoremTag::T3 => "T3",
            TheoremTag::Corollary => "COROLLARY",
            TheoremTag::Lemma2 => "LEMMA2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub theorem: TheoremTag,
    /// Insertion-ordered `(name, value)` pairs.
    pub constants: Vec<(String, Rational)>,
    pub case_trace: Vec<String>,
    pub sub_reports: Vec<(String, BoundReport)>,
    pub final_bound: Rational,
    /// `floor(final_bound)`, clamped at zero.
    pub enumeration_limit: u64,
}

impl BoundReport {
    pub fn new(theorem: TheoremTag) -> Self {
        BoundReport {
            theorem,
            constants: Vec::new(),
            case_trace: Vec::new(),
            sub_reports: Vec::new(),
            final_bound: Rational::zero(),
            enumeration_limit: 0,
        }
    }

    /// Records a constant (replacing an earlier value of the same name) and returns it.
    pub fn set(&mut self, name: impl Into<String>, value: Rational) -> Rational {
        let name = name.into();
        match self.constants.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = value.clone(),
            None => self.constants.push((name, value.clone())),
        }
        value
    }

    pub fn get(&self, name: &str) -> Option<&Rational> {
        self.constants.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn trace(&mut self, label: impl Into<String>) {
        self.case_trace.push(label.into());
    }

    pub fn attach(&mut self, label: impl Into<String>, sub: BoundReport) {
        self.sub_reports.push((label.into(), sub));
    }

    pub fn finish(mut self, final_bound: Rational) -> Self {
        self.enumeration_limit = floor_limit(&final_bound);
        self.final_bound = final_bound;
        self
    }
}

pub(crate) fn floor_limit(q: &Rational) -> u64 {
    if q <= &Rational::zero() {
        return 0;
    }
    q.numer().div_floor(q.denom()).to_u64().unwrap_or(u64::MAX)
}

pub(crate) fn q(n: u64) -> Rational {
    Rational::from_integer(n.into())
}

pub(crate) fn max_of<I: IntoIterator<Item = Rational>>(it: I) -> Rational {
    it.into_iter().fold(Rational::zero(), |a, b| if b > a { b } else { a })
}
