//! Simple linear recurrences `G_n = sum a_i alpha_i^n` and the hypothesis
//! predicates the bound theorems impose on them.

use std::collections::HashSet;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::independence::is_mult_independent;
use crate::places::{gcd_free_basis, valuation, Place, PlaceBasis};
use crate::ratfunc::RatFunc;
use crate::report::TheoremTag;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: RatFunc,
    pub root: RatFunc,
}

/// Binet-form recurrence. `offset` records how many leading elements have
/// been discarded by [`Recurrence::apply_shift`]; the shift itself is folded
/// into the coefficients, so `eval(n)` is always `sum a_i alpha_i^n` and
/// corresponds to index `n + offset` of the original sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Recurrence {
    terms: Vec<Term>,
    offset: u64,
}

impl Recurrence {
    pub fn new(terms: Vec<(RatFunc, RatFunc)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidRecurrence("no terms".into()));
        }
        let terms: Vec<Term> = terms.into_iter().map(|(coeff, root)| Term { coeff, root }).collect();
        for (i, t) in terms.iter().enumerate() {
            if t.coeff.is_zero() {
                return Err(Error::InvalidRecurrence(format!("coefficient {} is zero", i + 1)));
            }
            if t.root.is_zero() {
                return Err(Error::InvalidRecurrence(format!("root {} is zero", i + 1)));
            }
            if terms[..i].iter().any(|s| s.root == t.root) {
                return Err(Error::InvalidRecurrence(format!("root {} repeats an earlier root", i + 1)));
            }
        }
        Ok(Recurrence { terms, offset: 0 })
    }

    /// `alpha^n`.
    pub fn pure_power(root: RatFunc) -> Result<Self> {
        Self::new(vec![(RatFunc::one(), root)])
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn offset(&self) -> u64 {
        self.offset
    }

    pub fn coeffs(&self) -> impl Iterator<Item = &RatFunc> {
        self.terms.iter().map(|t| &t.coeff)
    }

    pub fn roots(&self) -> impl Iterator<Item = &RatFunc> {
        self.terms.iter().map(|t| &t.root)
    }

    /// All coefficients followed by all roots.
    pub fn elements(&self) -> Vec<RatFunc> {
        self.coeffs().chain(self.roots()).cloned().collect()
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|t| t.coeff.is_polynomial() && t.root.is_polynomial())
    }

    pub fn eval(&self, n: u64) -> RatFunc {
        let e = i64::try_from(n).expect("index fits in i64");
        self.terms.iter().fold(RatFunc::zero(), |acc, t| {
            &acc + &(&t.coeff * &t.root.pow(e).expect("nonzero root"))
        })
    }

    /// `[G_1, ..., G_up_to]`, one multiplication per root per step.
    pub fn values(&self, up_to: u64) -> Vec<RatFunc> {
        let mut powers: Vec<RatFunc> = self.terms.iter().map(|t| &t.coeff * &t.root).collect();
        let mut out = Vec::with_capacity(up_to as usize);
        for n in 1..=up_to {
            if n > 1 {
                for (p, t) in powers.iter_mut().zip(&self.terms) {
                    *p = &*p * &t.root;
                }
            }
            out.push(powers.iter().fold(RatFunc::zero(), |acc, p| &acc + p));
        }
        out
    }

    /// Drops the first `k` elements: `a_i <- a_i alpha_i^k`.
    pub fn apply_shift(&self, k: u64) -> Recurrence {
        if k == 0 {
            return self.clone();
        }
        let e = i64::try_from(k).expect("shift fits in i64");
        let terms = self
            .terms
            .iter()
            .map(|t| Term { coeff: &t.coeff * &t.root.pow(e).expect("nonzero root"), root: t.root.clone() })
            .collect();
        Recurrence { terms, offset: self.offset + k }
    }

    fn permuted(&self, order: &[usize]) -> Recurrence {
        Recurrence { terms: order.iter().map(|&i| self.terms[i].clone()).collect(), offset: self.offset }
    }

    fn moved_to_front(&self, i: usize) -> Recurrence {
        let mut order = vec![i];
        order.extend((0..self.len()).filter(|&j| j != i));
        self.permuted(&order)
    }
}

impl fmt::Display for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({})*({})^n", t.coeff, t.root)?;
        }
        Ok(())
    }
}

/// Floor of `num / den` for `den > 0`, clamped at zero. This is the
/// smallest `N` with `n * den > num` for every integer `n > N`.
fn linear_threshold(num: i64, den: i64) -> u64 {
    debug_assert!(den > 0);
    Integer::div_floor(&num, &den).max(0) as u64
}

/// Index of the `nu`-dominant root at `place`, if any. With a single term
/// the only root is dominant by definition.
pub fn dominant_index_at(g: &Recurrence, place: Place, basis: &PlaceBasis) -> Result<Option<usize>> {
    if g.len() == 1 {
        return Ok(Some(0));
    }
    let vals = g.roots().map(|r| valuation(r, place, basis)).collect::<Result<Vec<_>>>()?;
    for (i, &v) in vals.iter().enumerate() {
        let others_min = vals.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &w)| w).min().unwrap_or(0).min(0);
        if v < others_min {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dominance {
    pub index: usize,
    pub place: Place,
    pub valuation: i64,
    pub basis: PlaceBasis,
}

/// Searches every cluster of the recurrence's own basis and infinity for a
/// dominant root. Among all hits the one with the smallest valuation wins,
/// then the lowest root index, then the first place. Returns the recurrence
/// with that root moved to the front.
pub fn find_nu_dominant(g: &Recurrence) -> Result<(Dominance, Recurrence)> {
    let basis = gcd_free_basis(&g.elements())?;
    let mut best: Option<(i64, usize, Place)> = None;
    for place in basis.all_places() {
        if let Some(i) = dominant_index_at(g, place, &basis)? {
            let v = valuation(&g.terms[i].root, place, &basis)?;
            let key = (v, i, place);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
    }
    let (valuation, index, place) = best.ok_or(Error::NotFound)?;
    let reordered = g.moved_to_front(index);
    Ok((Dominance { index, place, valuation, basis }, reordered))
}

/// Smallest `N1` such that the first term strictly dominates every other
/// term at `place` for all `n > N1`.
pub fn immediate_effect_threshold(g: &Recurrence, place: Place, basis: &PlaceBasis) -> Result<u64> {
    if dominant_index_at(g, place, basis)? != Some(0) {
        return Err(Error::NotDominant);
    }
    let a1 = valuation(&g.terms[0].coeff, place, basis)?;
    let r1 = valuation(&g.terms[0].root, place, basis)?;
    let mut n1 = 0;
    for t in &g.terms[1..] {
        let ai = valuation(&t.coeff, place, basis)?;
        let ri = valuation(&t.root, place, basis)?;
        n1 = n1.max(linear_threshold(a1 - ai, ri - r1));
    }
    Ok(n1)
}

fn require_polynomial(g: &Recurrence) -> Result<()> {
    if g.is_polynomial() {
        Ok(())
    } else {
        Err(Error::NonPolynomialInput)
    }
}

/// Smallest `N0` such that `deg alpha_i > deg alpha_j` implies
/// `deg(a_i alpha_i^n) > deg(a_j alpha_j^n)` for all `n > N0`.
pub fn weak_coefficients_threshold(g: &Recurrence) -> Result<u64> {
    require_polynomial(g)?;
    let degs: Vec<(i64, i64)> =
        g.terms.iter().map(|t| (t.root.num().deg() as i64, t.coeff.num().deg() as i64)).collect();
    let mut n0 = 0;
    for &(ri, ai) in &degs {
        for &(rj, aj) in &degs {
            if ri > rj {
                n0 = n0.max(linear_threshold(aj - ai, ri - rj));
            }
        }
    }
    Ok(n0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelevantSet {
    /// Original indices of the relevant roots, ascending.
    pub indices: Vec<usize>,
    /// Terms sorted by `(deg alpha desc, deg a desc, index asc)`; the relevant
    /// roots come first.
    pub reordered: Recurrence,
}

pub fn relevant_set(g: &Recurrence) -> Result<RelevantSet> {
    require_polynomial(g)?;
    let key = |i: usize| {
        let t = &g.terms[i];
        (std::cmp::Reverse(t.root.num().deg()), std::cmp::Reverse(t.coeff.num().deg()), i)
    };
    let mut order: Vec<usize> = (0..g.len()).collect();
    order.sort_by_key(|&i| key(i));
    let top = (key(order[0]).0, key(order[0]).1);
    let mut indices: Vec<usize> = order.iter().copied().filter(|&i| (key(i).0, key(i).1) == top).collect();
    indices.sort_unstable();
    Ok(RelevantSet { indices, reordered: g.permuted(&order) })
}

/// `n -> G_n` is injective on `[1, up_to]`.
pub fn check_no_multiple_values(g: &Recurrence, up_to: u64) -> bool {
    let mut seen = HashSet::new();
    g.values(up_to).into_iter().all(|v| seen.insert(v))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisReport {
    pub theorem: TheoremTag,
    pub passed: bool,
    pub violations: Vec<String>,
    /// Description of the shared dominant place (cluster or `infinity`).
    pub dominant_place: Option<String>,
    /// Weak-coefficient thresholds applied to `(G, H)`.
    pub n0: [u64; 2],
    /// Immediate-effect thresholds applied to `(G, H)`.
    pub n1: [u64; 2],
}

impl HypothesisReport {
    pub fn new(theorem: TheoremTag) -> Self {
        HypothesisReport { theorem, passed: true, violations: Vec::new(), dominant_place: None, n0: [0; 2], n1: [0; 2] }
    }

    pub fn violate(&mut self, what: impl Into<String>) {
        self.violations.push(what.into());
        self.passed = false;
    }

    pub fn into_error(self) -> Error {
        Error::HypothesisViolation(Box::new(self))
    }
}

/// Recurrences prepared for a theorem: reordered and shifted so that the
/// theorem's hypotheses hold from index 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prepared {
    pub g: Recurrence,
    pub h: Recurrence,
    pub report: HypothesisReport,
    /// Sizes of the relevant sets `(|R_G|, |R_H|)`; both 1 outside the polynomial setting.
    pub relevant: [usize; 2],
}

impl Prepared {
    pub fn offsets(&self) -> (u64, u64) {
        (self.g.offset(), self.h.offset())
    }

    pub fn into_checked(self) -> Result<Prepared> {
        if self.report.passed {
            Ok(self)
        } else {
            Err(self.report.into_error())
        }
    }
}

fn check_roots_and_ratios(report: &mut HypothesisReport, roots: &[RatFunc], name: &str) {
    for (i, r) in roots.iter().enumerate() {
        if r.is_constant() {
            report.violate(format!("{name}_{} is constant", i + 1));
        }
    }
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let ratio = roots[i].checked_div(&roots[j]).expect("nonzero root");
            if ratio.is_constant() {
                report.violate(format!("ratio {name}_{}/{name}_{} is constant", i + 1, j + 1));
            }
        }
    }
}

/// No root and no ratio of two distinct roots is constant, in either recurrence.
pub fn check_theorem1_hypotheses(g: &Recurrence, h: &Recurrence) -> HypothesisReport {
    let mut report = HypothesisReport::new(TheoremTag::T1);
    check_roots_and_ratios(&mut report, &g.roots().cloned().collect::<Vec<_>>(), "alpha");
    check_roots_and_ratios(&mut report, &h.roots().cloned().collect::<Vec<_>>(), "beta");
    report
}

/// Finds a place at which both recurrences have a dominant root, shifts both
/// for immediate effect and checks that the dominant roots are non-constant
/// and multiplicatively independent.
///
/// Among admissible places the one needing the smallest total shift wins,
/// then the most negative `nu(alpha_1) + nu(beta_1)`, then basis order.
pub fn prepare_theorem2(g: &Recurrence, h: &Recurrence) -> Result<Prepared> {
    let mut report = HypothesisReport::new(TheoremTag::T2);
    let mut elements = g.elements();
    elements.extend(h.elements());
    let basis = gcd_free_basis(&elements)?;

    let mut best: Option<((u64, i64, Place), Recurrence, Recurrence, [u64; 2])> = None;
    for place in basis.all_places() {
        let (Some(i), Some(j)) = (dominant_index_at(g, place, &basis)?, dominant_index_at(h, place, &basis)?) else {
            continue;
        };
        let g1 = g.moved_to_front(i);
        let h1 = h.moved_to_front(j);
        let ng = immediate_effect_threshold(&g1, place, &basis)?;
        let nh = immediate_effect_threshold(&h1, place, &basis)?;
        let v = valuation(&g1.terms[0].root, place, &basis)? + valuation(&h1.terms[0].root, place, &basis)?;
        let key = (ng + nh, v, place);
        if best.as_ref().is_none_or(|b| key < b.0) {
            best = Some((key, g1, h1, [ng, nh]));
        }
    }
    let Some(((_, _, place), g1, h1, n1)) = best else {
        report.violate("no place at which both recurrences have a dominant root");
        return Ok(Prepared { g: g.clone(), h: h.clone(), report, relevant: [1, 1] });
    };
    report.dominant_place = Some(basis.describe(place));
    report.n1 = n1;
    let g2 = g1.apply_shift(n1[0]);
    let h2 = h1.apply_shift(n1[1]);
    let alpha = &g2.terms[0].root;
    let beta = &h2.terms[0].root;
    if alpha.is_constant() {
        report.violate("alpha_1 is constant");
    }
    if beta.is_constant() {
        report.violate("beta_1 is constant");
    }
    if !alpha.is_constant() && !beta.is_constant() && !is_mult_independent(alpha, beta) {
        report.violate("alpha_1 and beta_1 are multiplicatively dependent");
    }
    Ok(Prepared { g: g2, h: h2, report, relevant: [1, 1] })
}

/// Polynomial setting: shift for weak coefficients, order by relevance and
/// check the relevant-set and independence conditions. The no-multiple-values
/// condition depends on the enumeration range and is checked by the solver.
pub fn prepare_theorem3(g: &Recurrence, h: &Recurrence) -> Result<Prepared> {
    let mut report = HypothesisReport::new(TheoremTag::T3);
    if !g.is_polynomial() || !h.is_polynomial() {
        report.violate("coefficients and roots must be polynomials");
        return Ok(Prepared { g: g.clone(), h: h.clone(), report, relevant: [1, 1] });
    }
    let n0 = [weak_coefficients_threshold(g)?, weak_coefficients_threshold(h)?];
    report.n0 = n0;
    let rg = relevant_set(&g.apply_shift(n0[0]))?;
    let rh = relevant_set(&h.apply_shift(n0[1]))?;
    let (kg, kh) = (rg.indices.len(), rh.indices.len());
    let g2 = rg.reordered;
    let h2 = rh.reordered;
    let rel_g: Vec<RatFunc> = g2.roots().take(kg).cloned().collect();
    let rel_h: Vec<RatFunc> = h2.roots().take(kh).cloned().collect();
    check_roots_and_ratios(&mut report, &rel_g, "alpha");
    check_roots_and_ratios(&mut report, &rel_h, "beta");
    for (j, gamma) in rel_h.iter().enumerate() {
        if !is_mult_independent(&rel_g[0], gamma) {
            report.violate(format!("alpha_1 and beta_{} are multiplicatively dependent", j + 1));
        }
    }
    for (i, delta) in rel_g.iter().enumerate().skip(1) {
        if !is_mult_independent(delta, &rel_h[0]) {
            report.violate(format!("alpha_{} and beta_1 are multiplicatively dependent", i + 1));
        }
    }
    Ok(Prepared { g: g2, h: h2, report, relevant: [kg, kh] })
}
