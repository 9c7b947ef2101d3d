//! Effective constants: the Brownawell–Masser height bound and the constant
//! chains that turn it into bounds on the exponents `n, m`.
//!
//! Every chain records its inputs (`|S|`, `genus`, `k`) and each named
//! constant in the returned [`BoundReport`], in the order they are derived.
//! Branches that cannot occur for the given shape (a minimum over an empty
//! set) are omitted from both the ledger and the final maximum.

use crate::error::{Error, Result};
use crate::independence::lemma2_bound;
use crate::places::s_set_size;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::recurrence::{check_theorem1_hypotheses, prepare_theorem2, prepare_theorem3, Prepared, Recurrence};
use crate::report::{max_of, q, BoundReport, TheoremTag};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoundParams {
    pub genus: u64,
    pub s_size: u64,
}

/// Knobs shared by all theorem bounds. Over `Q(x)` the genus is 0; other
/// values and extra S-elements exist for exercising the formulas.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoundOptions {
    pub genus: u64,
    /// Additional elements whose zeros and poles are added to S.
    pub extra_elements: Vec<RatFunc>,
}

/// `binom(k, 2) * (|S| + max(0, 2g - 2))`.
pub fn bm_bound(k: u64, params: BoundParams) -> u64 {
    let pairs = k * k.saturating_sub(1) / 2;
    pairs * (params.s_size + (2 * params.genus).saturating_sub(2))
}

fn ht(f: &RatFunc) -> Rational {
    q(f.h())
}

fn ratio_ht(a: &RatFunc, b: &RatFunc) -> Rational {
    ht(&a.checked_div(b).expect("nonzero divisor"))
}

fn min_of<I: IntoIterator<Item = Rational>>(it: I) -> Option<Rational> {
    it.into_iter().min()
}

/// Records `|S|`, the genus and `k`, and returns the Brownawell–Masser constant.
fn record_bm(r: &mut BoundReport, elements: &[RatFunc], opts: &BoundOptions, k: u64, name: &str) -> Result<Rational> {
    let mut all = elements.to_vec();
    all.extend(opts.extra_elements.iter().cloned());
    let s_size = s_set_size(&all)?;
    r.set("|S|", q(s_size));
    r.set("genus", q(opts.genus));
    r.set("k", q(k));
    Ok(r.set(name, q(bm_bound(k, BoundParams { genus: opts.genus, s_size }))))
}

/// Closed-form bound for `p^n - q^m = f` with polynomial bases.
pub fn corollary_bound(p: &Poly, qp: &Poly, f: &Poly) -> Result<BoundReport> {
    if p.is_constant() || qp.is_constant() {
        return Err(Error::ConstantBase);
    }
    if f.is_zero() {
        return Err(Error::ZeroF);
    }
    let mut r = BoundReport::new(TheoremTag::Corollary);
    let dp = r.set("deg p", q(p.deg() as u64));
    let dq = r.set("deg q", q(qp.deg() as u64));
    let df = r.set("deg f", q(f.deg() as u64));
    let num = r.set("numerator", q(1) + &dp + &dq + q(2) * &df);
    let den = r.set("denominator", dp.min(dq));
    let c = r.set("C", num / den);
    r.trace("three-term relation has no proper vanishing subsum");
    Ok(r.finish(c))
}

pub fn theorem1_bound(g: &Recurrence, h: &Recurrence, f: &RatFunc) -> Result<BoundReport> {
    theorem1_bound_with(g, h, f, &BoundOptions::default())
}

pub fn theorem1_bound_with(g: &Recurrence, h: &Recurrence, f: &RatFunc, opts: &BoundOptions) -> Result<BoundReport> {
    if f.is_zero() {
        return Err(Error::ZeroF);
    }
    let hyp = check_theorem1_hypotheses(g, h);
    if !hyp.passed {
        return Err(hyp.into_error());
    }
    let mut r = BoundReport::new(TheoremTag::T1);
    let mut elements = vec![f.clone()];
    elements.extend(g.elements());
    elements.extend(h.elements());
    let k = (g.len() + h.len()) as u64;
    let c1 = record_bm(&mut r, &elements, opts, k, "C1")?;

    let neg_f = -f;
    let coeffs: Vec<&RatFunc> = g.coeffs().chain(h.coeffs()).collect();
    let roots: Vec<&RatFunc> = g.roots().chain(h.roots()).collect();
    let min_root_h = min_of(roots.iter().map(|r| ht(r))).expect("nonempty recurrence");
    let max_root_h = max_of(roots.iter().map(|r| ht(r)));

    let c2 = r.set("C2", &c1 + max_of(coeffs.iter().map(|a| ratio_ht(&neg_f, a))));
    let c3 = r.set("C3", &c2 / &min_root_h);
    r.trace("C3: subsum with 1 bounds the exponent of its partner");
    let mut finals = vec![c3.clone()];

    let coeff_ratio_max = max_of(
        [g, h].into_iter().flat_map(|rec| distinct_pairs(rec.len()).map(move |(i, j)| {
            ratio_ht(&rec.terms()[i].coeff, &rec.terms()[j].coeff)
        })),
    );
    let root_ratio_min = min_of(
        [g, h].into_iter().flat_map(|rec| distinct_pairs(rec.len()).map(move |(i, j)| {
            ratio_ht(&rec.terms()[i].root, &rec.terms()[j].root)
        })),
    );
    if let Some(min_ratio) = root_ratio_min {
        let c4 = r.set("C4", &c1 + coeff_ratio_max);
        let c5 = r.set("C5", c4 / min_ratio);
        r.trace("C5: subsum pairs two roots of one recurrence");
        finals.push(c5);
    }

    let max_a = max_of(g.coeffs().map(ht));
    let max_b = max_of(h.coeffs().map(ht));
    let c6 = r.set("C6", &c1 + max_a + max_b + &c3 * max_root_h);
    let c7 = r.set("C7", c6 / &min_root_h);
    r.trace("C7: subsum pairs a root of G with a root of H");
    finals.push(c7);

    let fin = r.set("final", max_of(finals));
    Ok(r.finish(fin))
}

/// Ordered pairs `(i, j)` with `i != j`.
fn distinct_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
}

fn prepared_elements(p: &Prepared) -> Vec<RatFunc> {
    let mut e = p.g.elements();
    e.extend(p.h.elements());
    e
}

/// Brownawell–Masser arity for the two-representation relation with one
/// term divided out.
fn double_rep_arity(p: &Prepared) -> u64 {
    2 * (p.g.len() + p.h.len()) as u64 - 1
}

pub fn theorem2_bound(g: &Recurrence, h: &Recurrence) -> Result<BoundReport> {
    theorem2_bound_with(g, h, &BoundOptions::default())
}

pub fn theorem2_bound_with(g: &Recurrence, h: &Recurrence, opts: &BoundOptions) -> Result<BoundReport> {
    theorem2_bound_prepared(&prepare_theorem2(g, h)?, opts)
}

/// Bound for recurrences already reordered and shifted by [`prepare_theorem2`].
pub fn theorem2_bound_prepared(p: &Prepared, opts: &BoundOptions) -> Result<BoundReport> {
    if !p.report.passed {
        return Err(p.report.clone().into_error());
    }
    let mut r = BoundReport::new(TheoremTag::T2);
    let cbm = record_bm(&mut r, &prepared_elements(p), opts, double_rep_arity(p), "C_BM")?;
    let (d, t) = (p.g.len(), p.h.len());
    let fin = match (d == 1, t == 1) {
        (true, true) => order_one_chain(&mut r, p, &cbm)?,
        (true, false) => {
            r.trace("d = 1, t > 1");
            single_root_chain(&mut r, &p.g, &p.h, &cbm, Omega::Both, ["alpha_1", "beta_1"])?
        }
        (false, true) => {
            r.trace("d > 1, t = 1");
            single_root_chain(&mut r, &p.h, &p.g, &cbm, Omega::Both, ["beta_1", "alpha_1"])?
        }
        (false, false) => {
            r.trace("d > 1, t > 1: dominant terms share a minimal subsum");
            let (a1, al1) = lead(&p.g);
            let (b1, be1) = lead(&p.h);
            let c9 = r.set("C9", cbm.clone());
            let sub = lemma2_bound(be1, al1, &(c9 + ratio_ht(b1, a1)))?;
            let c10 = r.set("C10", sub.final_bound.clone());
            r.attach("lemma2(beta_1, alpha_1)", sub);
            c10
        }
    };
    let fin = r.set("final", fin);
    Ok(r.finish(fin))
}

fn lead(rec: &Recurrence) -> (&RatFunc, &RatFunc) {
    let t = &rec.terms()[0];
    (&t.coeff, &t.root)
}

/// `d = t = 1`: either no proper subsum vanishes, or the relation splits
/// into two two-term relations.
fn order_one_chain(r: &mut BoundReport, p: &Prepared, cbm: &Rational) -> Result<Rational> {
    let (a1, al1) = lead(&p.g);
    let (b1, be1) = lead(&p.h);
    r.trace("d = t = 1: no proper vanishing subsum");
    let c1 = r.set("C1", cbm.clone());
    let c2 = r.set("C2", c1 + ratio_ht(b1, a1));
    let sub = lemma2_bound(be1, al1, &c2)?;
    let c3 = r.set("C3", sub.final_bound.clone());
    r.attach("lemma2(beta_1, alpha_1) no subsum", sub);
    r.trace("d = t = 1: split into two vanishing subsums");
    let sub = lemma2_bound(be1, al1, &ratio_ht(a1, b1))?;
    let c4 = r.set("C4", sub.final_bound.clone());
    r.attach("lemma2(beta_1, alpha_1) split", sub);
    Ok(c3.max(c4))
}

/// Which summands may serve as the partner `omega` of the second
/// occurrence of the single-term recurrence.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Omega {
    /// Any term of the other recurrence or the first occurrence of the single term.
    Both,
    /// Terms of the other recurrence only.
    OtherOnly,
}

/// Finishes a chain in which one recurrence `x` has a single term and the
/// other exponents are already bounded by `bounded`: the second occurrence
/// of `x` sits in a subsum with some `omega` of bounded height.
fn omega_tail(
    r: &mut BoundReport,
    x: &Recurrence,
    y: &Recurrence,
    cbm: &Rational,
    bounded: &Rational,
    omega: Omega,
    names: [&str; 3],
) -> Rational {
    let (a1, al1) = lead(x);
    let mut candidates: Vec<Rational> = y.terms().iter().map(|t| ht(&t.coeff) + bounded * ht(&t.root)).collect();
    if omega == Omega::Both {
        candidates.push(ht(a1) + bounded * ht(al1));
    }
    let h_omega = r.set(names[0], max_of(candidates));
    let c7 = r.set(names[1], cbm + h_omega + ht(a1));
    r.set(names[2], bounded.clone().max(c7 / ht(al1)))
}

/// Chain for one single-term recurrence `x` against a multi-term `y` under
/// a shared dominant place.
fn single_root_chain(
    r: &mut BoundReport,
    x: &Recurrence,
    y: &Recurrence,
    cbm: &Rational,
    omega: Omega,
    labels: [&str; 2],
) -> Result<Rational> {
    let (a1, al1) = lead(x);
    let (b1, be1) = lead(y);
    let c5 = r.set("C5", cbm.clone());
    let l = r.set("L", c5 + ratio_ht(a1, b1));
    let sub = lemma2_bound(al1, be1, &l)?;
    let c6 = r.set("C6", sub.final_bound.clone());
    r.attach(format!("lemma2({}, {})", labels[0], labels[1]), sub);
    Ok(omega_tail(r, x, y, cbm, &c6, omega, ["H(omega)", "C7", "C8"]))
}

pub fn theorem3_bound(g: &Recurrence, h: &Recurrence) -> Result<BoundReport> {
    theorem3_bound_with(g, h, &BoundOptions::default())
}

pub fn theorem3_bound_with(g: &Recurrence, h: &Recurrence, opts: &BoundOptions) -> Result<BoundReport> {
    theorem3_bound_prepared(&prepare_theorem3(g, h)?, opts)
}

/// Bound for recurrences already shifted and ordered by [`prepare_theorem3`].
pub fn theorem3_bound_prepared(p: &Prepared, opts: &BoundOptions) -> Result<BoundReport> {
    if !p.report.passed {
        return Err(p.report.clone().into_error());
    }
    let mut r = BoundReport::new(TheoremTag::T3);
    let cbm = record_bm(&mut r, &prepared_elements(p), opts, double_rep_arity(p), "C_BM")?;
    let (d, t) = (p.g.len(), p.h.len());
    let [kg, kh] = p.relevant;
    let fin = match (d == 1, t == 1) {
        (true, true) => order_one_chain(&mut r, p, &cbm)?,
        (true, false) => {
            r.trace("d = 1, t > 1");
            relevant_single_chain(&mut r, &p.g, &p.h, kh, &cbm, ["alpha_1", "beta"])?
        }
        (false, true) => {
            r.trace("d > 1, t = 1");
            relevant_single_chain(&mut r, &p.h, &p.g, kg, &cbm, ["beta_1", "alpha"])?
        }
        (false, false) => {
            r.trace("d > 1, t > 1: orientation A, deg(a_1 alpha_1^N) >= deg(b_1 beta_1^M)");
            let a = orientation(&mut r, "A", &p.g, kg, &p.h, kh, &cbm, ["alpha", "beta"])?;
            r.trace("d > 1, t > 1: orientation B, deg(b_1 beta_1^M) >= deg(a_1 alpha_1^N)");
            let b = orientation(&mut r, "B", &p.h, kh, &p.g, kg, &cbm, ["beta", "alpha"])?;
            a.max(b)
        }
    };
    let fin = r.set("final", fin);
    Ok(r.finish(fin))
}

/// Largest exponent allowed when the leading term of `rec` shares a
/// subsum with another relevant term: `max_j (C_BM + H(c_j/c_1)) / H(r_j/r_1)`.
fn relevant_ratio_bound(rec: &Recurrence, k: usize, cbm: &Rational) -> Option<Rational> {
    let (c1, r1) = lead(rec);
    rec.terms()[1..k]
        .iter()
        .map(|t| (cbm + ratio_ht(&t.coeff, c1)) / ratio_ht(&t.root, r1))
        .max()
}

/// `x` has one term, `y` has relevant set of size `ky`.
fn relevant_single_chain(
    r: &mut BoundReport,
    x: &Recurrence,
    y: &Recurrence,
    ky: usize,
    cbm: &Rational,
    labels: [&str; 2],
) -> Result<Rational> {
    let (a1, al1) = lead(x);
    let (b1, be1) = lead(y);
    let mut m_bounds = Vec::new();
    if let Some(c3) = relevant_ratio_bound(y, ky, cbm) {
        r.trace("subsum pairs two relevant roots");
        m_bounds.push(r.set("C3", c3));
    }
    r.trace("subsum pairs the single root with the leading relevant root");
    let c4 = r.set("C4", cbm.clone());
    let sub = lemma2_bound(al1, be1, &(c4 + ratio_ht(a1, b1)))?;
    m_bounds.push(r.set("C5", sub.final_bound.clone()));
    r.attach(format!("lemma2({}, {}_1)", labels[0], labels[1]), sub);
    let c6 = r.set("C6", max_of(m_bounds));
    Ok(omega_tail(r, x, y, cbm, &c6, Omega::OtherOnly, ["H(omega)", "C7", "C8"]))
}

/// One orientation of the `d > 1, t > 1` ladder: the leading term of `x`
/// has at least the degree of the leading term of `y`.
#[allow(clippy::too_many_arguments)]
fn orientation(
    r: &mut BoundReport,
    tag: &str,
    x: &Recurrence,
    kx: usize,
    y: &Recurrence,
    ky: usize,
    cbm: &Rational,
    names: [&str; 2],
) -> Result<Rational> {
    let (a1, al1) = lead(x);
    let (b1, be1) = lead(y);
    let c9 = r.set(format!("{tag}:C9"), cbm.clone());
    let mut c10 = q(0);
    for (j, t) in y.terms()[..ky].iter().enumerate() {
        let sub = lemma2_bound(&t.root, al1, &(&c9 + ratio_ht(&t.coeff, a1)))?;
        c10 = c10.max(sub.final_bound.clone());
        r.attach(format!("{tag}: lemma2({}_{}, {}_1)", names[1], j + 1, names[0]), sub);
    }
    let c10 = r.set(format!("{tag}:C10"), c10);
    let mut out = c10;

    let c11 = r.set(format!("{tag}:C11"), cbm.clone());
    if let Some(c12) = relevant_ratio_bound(x, kx, &c11) {
        r.trace(format!("{tag}: leading term shares a subsum with a relevant root of the same recurrence"));
        let c12 = r.set(format!("{tag}:C12"), c12);
        let mut parts = vec![c12.clone()];
        if let Some(c13) = relevant_ratio_bound(y, ky, cbm) {
            parts.push(r.set(format!("{tag}:C13"), c13));
        }
        let c14 = r.set(format!("{tag}:C14"), cbm.clone());
        let worst = max_of(x.terms().iter().map(|t| ht(&t.coeff) + &c12 * ht(&t.root)));
        let c15 = r.set(format!("{tag}:C15"), (c14 + worst + ht(b1)) / ht(be1));
        parts.push(c15);
        let c16 = r.set(format!("{tag}:C16"), max_of(parts));
        out = out.max(c16);
    }
    Ok(r.set(format!("{tag}:final"), out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> RatFunc {
        RatFunc::from_poly(Poly::from_ints(c))
    }
    fn pure(root: RatFunc) -> Recurrence {
        Recurrence::pure_power(root).unwrap()
    }

    #[test]
    fn bm_examples() {
        assert_eq!(bm_bound(2, BoundParams { genus: 0, s_size: 5 }), 5);
        assert_eq!(bm_bound(1, BoundParams { genus: 0, s_size: 10 }), 0);
        assert_eq!(bm_bound(3, BoundParams { genus: 2, s_size: 4 }), 18);
        assert_eq!(bm_bound(3, BoundParams { genus: 1, s_size: 4 }), 12);
    }

    #[test]
    fn corollary_examples() {
        let x = Poly::x();
        let r = corollary_bound(&x.pow(2), &x, &Poly::from_ints(&[0, 0, 0, -1, 1])).unwrap();
        assert_eq!(r.final_bound, q(12));
        let r = corollary_bound(&x, &x, &Poly::from_ints(&[0, -1, 1])).unwrap();
        assert_eq!(r.final_bound, q(7));
        let r = corollary_bound(&x, &x, &Poly::one()).unwrap();
        assert_eq!(r.final_bound, q(3));
        assert!(matches!(corollary_bound(&Poly::one(), &x, &x), Err(Error::ConstantBase)));
        assert!(matches!(corollary_bound(&x, &x, &Poly::zero()), Err(Error::ZeroF)));
    }

    #[test]
    fn theorem1_worked_example() {
        let g = pure(RatFunc::x());
        let h = pure(p(&[1, 1]));
        let r = theorem1_bound(&g, &h, &p(&[-1, -1, 1])).unwrap();
        for (name, v) in [("|S|", 5), ("C1", 5), ("C2", 7), ("C3", 7), ("C6", 12), ("C7", 12)] {
            assert_eq!(r.get(name), Some(&q(v)), "{name}");
        }
        assert_eq!(r.get("C5"), None);
        assert_eq!(r.final_bound, q(12));

        let r = theorem1_bound(&g, &h, &p(&[-1, 1])).unwrap();
        for (name, v) in [("|S|", 4), ("C1", 4), ("C2", 5), ("C3", 5), ("C6", 9)] {
            assert_eq!(r.get(name), Some(&q(v)), "{name}");
        }
        assert_eq!(r.final_bound, q(9));
        assert!(matches!(theorem1_bound(&g, &h, &RatFunc::zero()), Err(Error::ZeroF)));
    }

    #[test]
    fn theorem1_with_two_roots_defines_c5() {
        let g = Recurrence::new(vec![(RatFunc::one(), p(&[0, 0, 1])), (RatFunc::from_int(2), p(&[1, 1]))]).unwrap();
        let h = pure(p(&[-1, 1]));
        let r = theorem1_bound(&g, &h, &RatFunc::from_int(3)).unwrap();
        assert!(r.get("C5").is_some());
        // Coefficient ratio 2 is constant; root ratio x^2/(x + 1) has height 2.
        assert_eq!(r.get("C1"), Some(&q(12)));
        assert_eq!(r.get("C4"), Some(&q(12)));
        assert_eq!(r.get("C5"), Some(&q(6)));
    }

    #[test]
    fn theorem2_worked_example() {
        let r = theorem2_bound(&pure(RatFunc::x()), &pure(p(&[1, 1]))).unwrap();
        assert_eq!(r.get("|S|"), Some(&q(3)));
        assert_eq!(r.get("C_BM"), Some(&q(9)));
        assert_eq!(r.get("C3"), Some(&q(18)));
        assert_eq!(r.get("C4"), Some(&q(0)));
        assert_eq!(r.final_bound, q(18));
        assert!(matches!(
            theorem2_bound(&pure(RatFunc::x()), &pure(RatFunc::x())),
            Err(Error::HypothesisViolation(_))
        ));
    }

    #[test]
    fn theorem2_single_vs_multi_records_chain() {
        let g = pure(RatFunc::x());
        let h = Recurrence::new(vec![(RatFunc::one(), p(&[1, 2, 1])), (RatFunc::one(), p(&[1, 1]))]).unwrap();
        let r = theorem2_bound(&g, &h).unwrap();
        for name in ["C5", "L", "C6", "H(omega)", "C7", "C8"] {
            assert!(r.get(name).is_some(), "{name}");
        }
        assert_eq!(r.final_bound, r.get("C8").unwrap().clone());
    }

    #[test]
    fn theorem3_examples() {
        let g = Recurrence::new(vec![(RatFunc::one(), p(&[0, 0, 1])), (RatFunc::one(), RatFunc::x())]).unwrap();
        let h = Recurrence::new(vec![(RatFunc::one(), p(&[1, 2, 1])), (RatFunc::one(), p(&[1, 1]))]).unwrap();
        let r = theorem3_bound(&g, &h).unwrap();
        assert_eq!(r.get("|S|"), Some(&q(3)));
        assert_eq!(r.get("k"), Some(&q(7)));
        assert_eq!(r.get("C_BM"), Some(&q(63)));
        assert_eq!(r.sub_reports.len(), 2);
        assert_eq!(r.final_bound, Rational::new(189.into(), 2.into()));
        assert_eq!(r.enumeration_limit, 94);

        let a = pure(RatFunc::x());
        let b = pure(p(&[1, 1]));
        assert_eq!(theorem3_bound(&a, &b).unwrap().final_bound, theorem2_bound(&a, &b).unwrap().final_bound);
        assert!(matches!(theorem3_bound(&a, &pure(p(&[0, 0, 1]))), Err(Error::HypothesisViolation(_))));
    }

    #[test]
    fn extra_elements_enlarge_s() {
        let g = pure(RatFunc::x());
        let h = pure(p(&[1, 1]));
        let opts = BoundOptions { genus: 0, extra_elements: vec![p(&[5, 1])] };
        let base = theorem2_bound(&g, &h).unwrap();
        let more = theorem2_bound_with(&g, &h, &opts).unwrap();
        assert_eq!(more.get("|S|"), Some(&q(4)));
        assert!(more.final_bound >= base.final_bound);
    }
}
