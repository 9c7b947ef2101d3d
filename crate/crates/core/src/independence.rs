//! Multiplicative independence and the quotient-height bound.
//!
//! Two non-constant elements are multiplicatively dependent exactly when
//! their divisors over a joint basis are proportional. If `H(g^n / d^m) <= L`
//! for independent `g, d`, both exponents are bounded; [`lemma2_bound`]
//! computes that bound exactly.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::places::{divisor, gcd_free_basis, Place, PlaceBasis};
use crate::ratfunc::RatFunc;
use crate::report::{q, BoundReport, TheoremTag};
use crate::Rational;

/// Valuation vectors of two elements over their joint basis, in basis order
/// with infinity last.
struct JointDivisors {
    basis: PlaceBasis,
    places: Vec<Place>,
    gamma: Vec<i64>,
    delta: Vec<i64>,
}

impl JointDivisors {
    fn new(gamma: &RatFunc, delta: &RatFunc) -> Result<Self> {
        let basis = gcd_free_basis(&[gamma.clone(), delta.clone()])?;
        let places: Vec<Place> = basis.all_places().collect();
        let dg = divisor(gamma, &basis)?;
        let dd = divisor(delta, &basis)?;
        let g = places.iter().map(|&p| dg.get(p)).collect();
        let d = places.iter().map(|&p| dd.get(p)).collect();
        Ok(JointDivisors { basis, places, gamma: g, delta: d })
    }

    fn proportional(&self) -> bool {
        let n = self.places.len();
        (0..n).all(|i| (i + 1..n).all(|j| self.gamma[i] * self.delta[j] == self.gamma[j] * self.delta[i]))
    }
}

pub fn is_mult_independent(gamma: &RatFunc, delta: &RatFunc) -> bool {
    if gamma.is_zero() || delta.is_zero() || gamma.is_constant() || delta.is_constant() {
        return false;
    }
    match JointDivisors::new(gamma, delta) {
        Ok(j) => !j.proportional(),
        Err(_) => false,
    }
}

/// Two places whose valuation ratios `nu(g)/nu(d)` differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatingPair {
    pub basis: PlaceBasis,
    pub nu: Place,
    pub mu: Place,
    pub nu_gamma: i64,
    pub nu_delta: i64,
    pub mu_gamma: i64,
    pub mu_delta: i64,
}

impl SeparatingPair {
    pub fn nu_ratio(&self) -> Rational {
        Rational::new(self.nu_gamma.into(), self.nu_delta.into())
    }

    pub fn mu_ratio(&self) -> Rational {
        Rational::new(self.mu_gamma.into(), self.mu_delta.into())
    }

    /// `1/|nu(d)| + 1/|mu(d)|`, i.e. `C1 / L`.
    fn c1_per_l(&self) -> Rational {
        Rational::new(1.into(), self.nu_delta.abs().into()) + Rational::new(1.into(), self.mu_delta.abs().into())
    }

    fn ratio_gap(&self) -> Rational {
        (self.nu_ratio() - self.mu_ratio()).abs()
    }
}

fn check_pair_inputs(gamma: &RatFunc, delta: &RatFunc) -> Result<()> {
    if gamma.is_zero() || delta.is_zero() {
        return Err(Error::ZeroElement);
    }
    if gamma.is_constant() || delta.is_constant() {
        return Err(Error::ConstantInput);
    }
    Ok(())
}

/// The pair of places minimising `C2` among all pairs with nonzero
/// valuations and distinct ratios; ties go to the first pair in basis order.
pub fn find_separating_pair(gamma: &RatFunc, delta: &RatFunc) -> Result<SeparatingPair> {
    if !is_mult_independent(gamma, delta) {
        return Err(Error::DependentInputs);
    }
    check_pair_inputs(gamma, delta)?;
    let j = JointDivisors::new(gamma, delta)?;
    let usable: Vec<usize> = (0..j.places.len()).filter(|&i| j.gamma[i] != 0 && j.delta[i] != 0).collect();
    let mut best: Option<(Rational, SeparatingPair)> = None;
    for (a, &i) in usable.iter().enumerate() {
        for &k in &usable[a + 1..] {
            if j.gamma[i] * j.delta[k] == j.gamma[k] * j.delta[i] {
                continue;
            }
            let pair = SeparatingPair {
                basis: j.basis.clone(),
                nu: j.places[i],
                mu: j.places[k],
                nu_gamma: j.gamma[i],
                nu_delta: j.delta[i],
                mu_gamma: j.gamma[k],
                mu_delta: j.delta[k],
            };
            let score = pair.c1_per_l() / pair.ratio_gap();
            if best.as_ref().is_none_or(|(s, _)| score < *s) {
                best = Some((score, pair));
            }
        }
    }
    best.map(|(_, p)| p).ok_or(Error::NoSharedSupportCase)
}

/// Which one-sided configurations of zeros and poles occur.
#[derive(Debug, Default)]
struct OneSided {
    /// Some zero/pole of `gamma` is not a zero/pole of `delta`: `n <= L`.
    gamma_side: bool,
    /// Some zero/pole of `delta` is not a zero/pole of `gamma`: `m <= L`.
    delta_side: bool,
}

fn one_sided(j: &JointDivisors) -> OneSided {
    let mut s = OneSided::default();
    for (&g, &d) in j.gamma.iter().zip(&j.delta) {
        if (g > 0 && d <= 0) || (g < 0 && d >= 0) {
            s.gamma_side = true;
        }
        if (d > 0 && g <= 0) || (d < 0 && g >= 0) {
            s.delta_side = true;
        }
    }
    s
}

/// Bound `C` with `max(n, m) <= C` whenever `H(gamma^n / delta^m) <= L`.
///
/// If some zero or pole is one-sided, the corresponding exponent is at most
/// `L` and the other one follows from the height triangle inequality; when
/// both sides apply the smaller resulting bound is kept. Otherwise a
/// separating pair of places bounds `n` and then `m`.
pub fn lemma2_bound(gamma: &RatFunc, delta: &RatFunc, l: &Rational) -> Result<BoundReport> {
    check_pair_inputs(gamma, delta)?;
    if !is_mult_independent(gamma, delta) {
        return Err(Error::DependentInputs);
    }
    if l.is_negative() {
        return Err(Error::Invariant("negative height bound".into()));
    }
    let j = JointDivisors::new(gamma, delta)?;
    let hg = q(gamma.h());
    let hd = q(delta.h());
    let mut r = BoundReport::new(TheoremTag::Lemma2);
    r.set("L", l.clone());
    r.set("H(gamma)", hg.clone());
    r.set("H(delta)", hd.clone());

    let sides = one_sided(&j);
    if sides.gamma_side || sides.delta_side {
        let mut candidates = Vec::new();
        if sides.gamma_side {
            r.trace("gamma has a zero or pole not shared by delta: n <= L");
            let n = l.clone();
            let m = r.set("m-bound (n <= L)", (l + &n * &hg) / &hd);
            candidates.push(r.set("C (n <= L)", n.max(m)));
        }
        if sides.delta_side {
            r.trace("delta has a zero or pole not shared by gamma: m <= L");
            let m = l.clone();
            let n = r.set("n-bound (m <= L)", (l + &m * &hd) / &hg);
            candidates.push(r.set("C (m <= L)", n.max(m)));
        }
        let c = candidates.into_iter().min().expect("at least one side");
        r.set("C", c.clone());
        return Ok(r.finish(c));
    }

    r.trace("shared zeros and poles: separating pair of places");
    let pair = find_separating_pair(gamma, delta)?;
    r.set("nu(gamma)/nu(delta)", pair.nu_ratio());
    r.set("mu(gamma)/mu(delta)", pair.mu_ratio());
    r.trace(format!(
        "nu = {}, mu = {}",
        pair.basis.describe(pair.nu),
        pair.basis.describe(pair.mu)
    ));
    let c1 = r.set("C1", l * pair.c1_per_l());
    let c2 = r.set("C2", &c1 / pair.ratio_gap());
    let c3 = r.set("C3", l.clone().max(c2));
    let c4 = r.set("C4", l + &c3 * &hg);
    let m = r.set("m-bound", &c4 / &hd);
    let c = r.set("C", c3.max(m));
    Ok(r.finish(c))
}
