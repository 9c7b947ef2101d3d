//! Valuations, divisors, heights and S-sets over `Q(x)`.
//!
//! Places of `C(x)` are never enumerated individually. A gcd-free basis of
//! the inputs groups them into *clusters*: monic squarefree pairwise coprime
//! polynomials such that every input is a constant times a product of
//! integer powers of clusters. A cluster of degree `k` stands for `k` complex
//! places that share one valuation on every element expressible over the
//! basis. `|S|` therefore counts each cluster with weight `k`, while searches
//! over places only need one representative per cluster.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ratfunc::{Height, RatFunc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Finite(usize),
    Infinity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceBasis {
    clusters: Vec<Poly>,
    includes_infinity: bool,
}

impl PlaceBasis {
    pub fn clusters(&self) -> &[Poly] {
        &self.clusters
    }

    pub fn includes_infinity(&self) -> bool {
        self.includes_infinity
    }

    pub fn cluster(&self, i: usize) -> Option<&Poly> {
        self.clusters.get(i)
    }

    /// Number of complex places represented: cluster degrees plus infinity.
    pub fn cardinality(&self) -> u64 {
        self.clusters.iter().map(|c| c.deg() as u64).sum::<u64>() + u64::from(self.includes_infinity)
    }

    /// Every cluster followed by infinity, whether or not infinity is in S.
    pub fn all_places(&self) -> impl Iterator<Item = Place> + '_ {
        (0..self.clusters.len()).map(Place::Finite).chain(std::iter::once(Place::Infinity))
    }

    /// Number of complex places a `Place` stands for.
    pub fn weight(&self, place: Place) -> u64 {
        match place {
            Place::Finite(i) => self.clusters[i].deg() as u64,
            Place::Infinity => 1,
        }
    }

    pub fn describe(&self, place: Place) -> String {
        match place {
            Place::Finite(i) => self.clusters[i].to_string(),
            Place::Infinity => "infinity".to_string(),
        }
    }
}

impl fmt::Display for PlaceBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.clusters.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        if self.includes_infinity {
            if !self.clusters.is_empty() {
                f.write_str(", ")?;
            }
            f.write_str("infinity")?;
        }
        f.write_str("}")
    }
}

/// Pairwise coprime refinement of a family of monic squarefree polynomials.
fn refine_coprime(mut parts: Vec<Poly>) -> Result<Vec<Poly>> {
    parts.retain(|p| !p.is_constant());
    'outer: loop {
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                let g = parts[i].gcd(&parts[j])?;
                if g.is_constant() {
                    continue;
                }
                let a = parts[i].exact_div(&g)?;
                let b = parts[j].exact_div(&g)?;
                parts.swap_remove(j);
                parts.swap_remove(i);
                for q in [g, a, b] {
                    if !q.is_constant() {
                        parts.push(q.monic()?);
                    }
                }
                continue 'outer;
            }
        }
        break;
    }
    parts.sort_by(Poly::canonical_cmp);
    parts.dedup();
    Ok(parts)
}

/// Factorisation-free place set supporting all `elements`.
pub fn gcd_free_basis(elements: &[RatFunc]) -> Result<PlaceBasis> {
    let mut parts = Vec::new();
    let mut includes_infinity = false;
    for e in elements {
        if e.is_zero() {
            return Err(Error::ZeroElement);
        }
        includes_infinity |= e.valuation_at_infinity() != 0;
        for p in [e.num(), e.den()] {
            // Splitting by multiplicity first guarantees that each final
            // cluster divides the input with a single exponent.
            for (s, _) in p.squarefree_decomposition()? {
                parts.push(s);
            }
        }
    }
    Ok(PlaceBasis { clusters: refine_coprime(parts)?, includes_infinity })
}

fn poly_valuation(p: &Poly, cluster: &Poly) -> Result<i64> {
    let mut rest = p.clone();
    let mut e = 0;
    loop {
        let (q, r) = rest.divrem(cluster)?;
        if !r.is_zero() {
            break;
        }
        rest = q;
        e += 1;
    }
    if !rest.gcd(cluster)?.is_constant() {
        return Err(Error::NotExpressible);
    }
    Ok(e)
}

/// `nu(f)` at a place of `basis`.
pub fn valuation(f: &RatFunc, place: Place, basis: &PlaceBasis) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::ZeroElement);
    }
    match place {
        Place::Infinity => Ok(f.valuation_at_infinity()),
        Place::Finite(i) => {
            let c = basis.cluster(i).ok_or(Error::NotExpressible)?;
            Ok(poly_valuation(f.num(), c)? - poly_valuation(f.den(), c)?)
        }
    }
}

/// Full valuation map of an element over a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor<'a> {
    basis: &'a PlaceBasis,
    entries: BTreeMap<Place, i64>,
}

impl<'a> Divisor<'a> {
    pub fn basis(&self) -> &'a PlaceBasis {
        self.basis
    }

    pub fn entries(&self) -> &BTreeMap<Place, i64> {
        &self.entries
    }

    pub fn get(&self, place: Place) -> i64 {
        self.entries.get(&place).copied().unwrap_or(0)
    }

    /// `sum_cluster deg(cluster) * nu + nu_inf`; zero for every nonzero element.
    pub fn weighted_sum(&self) -> i64 {
        self.entries.iter().map(|(&p, &v)| self.basis.weight(p) as i64 * v).sum()
    }

    /// `sum max(0, nu)` over all represented places.
    pub fn height(&self) -> u64 {
        self.entries.iter().map(|(&p, &v)| self.basis.weight(p) * v.max(0) as u64).sum()
    }

    /// Places (clusters or infinity) with nonzero valuation.
    pub fn support(&self) -> impl Iterator<Item = Place> + '_ {
        self.entries.iter().filter(|(_, &v)| v != 0).map(|(&p, _)| p)
    }
}

pub fn divisor<'a>(f: &RatFunc, basis: &'a PlaceBasis) -> Result<Divisor<'a>> {
    if f.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut entries = BTreeMap::new();
    let mut num = f.num().clone();
    let mut den = f.den().clone();
    for (i, c) in basis.clusters().iter().enumerate() {
        let a = poly_valuation(&num, c)?;
        let b = poly_valuation(&den, c)?;
        if a > 0 {
            num = num.exact_div(&c.pow(a as u32))?;
        }
        if b > 0 {
            den = den.exact_div(&c.pow(b as u32))?;
        }
        entries.insert(Place::Finite(i), a - b);
    }
    if !num.is_constant() || !den.is_constant() {
        return Err(Error::NotExpressible);
    }
    entries.insert(Place::Infinity, f.valuation_at_infinity());
    Ok(Divisor { basis, entries })
}

/// Height as `max(deg num, deg den)`.
pub fn height(f: &RatFunc) -> Height {
    f.height()
}

/// Height as `sum_nu max(0, nu(f))` over the element's own place basis.
pub fn height_via_divisor(f: &RatFunc) -> Result<Height> {
    if f.is_zero() {
        return Ok(Height::Infinite);
    }
    let basis = gcd_free_basis(std::slice::from_ref(f))?;
    Ok(Height::Finite(divisor(f, &basis)?.height()))
}

/// Minimal S making every element an S-unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SUnitSpec {
    basis: PlaceBasis,
    cardinality: u64,
}

impl SUnitSpec {
    pub fn from_elements(elements: &[RatFunc]) -> Result<Self> {
        let basis = gcd_free_basis(elements)?;
        let cardinality = basis.cardinality();
        if cardinality == 0 {
            return Err(Error::AllConstant);
        }
        Ok(SUnitSpec { basis, cardinality })
    }

    pub fn basis(&self) -> &PlaceBasis {
        &self.basis
    }

    pub fn cardinality(&self) -> u64 {
        self.cardinality
    }

    /// True iff every zero and pole of `f` lies in S.
    pub fn is_s_unit(&self, f: &RatFunc) -> bool {
        if f.is_zero() {
            return false;
        }
        if f.valuation_at_infinity() != 0 && !self.basis.includes_infinity {
            return false;
        }
        let product = self.basis.clusters.iter().fold(Poly::one(), |acc, c| &acc * c);
        [f.num(), f.den()].into_iter().all(|p| {
            p.squarefree_part().is_ok_and(|r| r.is_constant() || r.divides(&product))
        })
    }
}

/// `|S|` for the minimal S over which all elements are S-units.
pub fn s_set_size(elements: &[RatFunc]) -> Result<u64> {
    Ok(SUnitSpec::from_elements(elements)?.cardinality())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }
    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn basis_examples() {
        let b = gcd_free_basis(&[rf(&[0, 0, 1], &[1]), rf(&[0, -1, 1], &[1])]).unwrap();
        assert_eq!(b.clusters(), &[p(&[0, 1]), p(&[-1, 1])]);
        assert!(b.includes_infinity());

        let b = gcd_free_basis(&[RatFunc::x()]).unwrap();
        assert_eq!(b.clusters(), &[p(&[0, 1])]);
        assert!(b.includes_infinity());

        let b = gcd_free_basis(&[RatFunc::x(), rf(&[1, 1], &[1]), rf(&[-1, -1, 1], &[1])]).unwrap();
        assert_eq!(b.clusters(), &[p(&[0, 1]), p(&[1, 1]), p(&[-1, -1, 1])]);

        assert!(matches!(gcd_free_basis(&[RatFunc::zero()]), Err(Error::ZeroElement)));
    }

    #[test]
    fn basis_splits_by_multiplicity() {
        // x^2 (x - 1): the clusters must separate x from x - 1.
        let b = gcd_free_basis(&[rf(&[0, 0, -1, 1], &[1])]).unwrap();
        assert_eq!(b.clusters(), &[p(&[0, 1]), p(&[-1, 1])]);
    }

    #[test]
    fn valuation_examples() {
        let f = rf(&[0, 0, 1], &[1, 1]);
        let b = gcd_free_basis(std::slice::from_ref(&f)).unwrap();
        assert_eq!(valuation(&f, Place::Infinity, &b).unwrap(), -1);
        assert_eq!(valuation(&f, Place::Finite(0), &b).unwrap(), 2);
        assert_eq!(valuation(&RatFunc::from_int(5), Place::Finite(1), &b).unwrap(), 0);
        assert_eq!(valuation(&RatFunc::from_int(5), Place::Infinity, &b).unwrap(), 0);
    }

    #[test]
    fn valuation_detects_foreign_factor() {
        let b = gcd_free_basis(&[rf(&[0, 1, 1], &[1])]).unwrap(); // cluster x^2 + x
        assert!(matches!(valuation(&RatFunc::x(), Place::Finite(0), &b), Err(Error::NotExpressible)));
    }

    #[test]
    fn divisor_examples() {
        let f = rf(&[0, 0, 1], &[1, 1]);
        let b = gcd_free_basis(std::slice::from_ref(&f)).unwrap();
        let d = divisor(&f, &b).unwrap();
        assert_eq!(d.get(Place::Finite(0)), 2);
        assert_eq!(d.get(Place::Finite(1)), -1);
        assert_eq!(d.get(Place::Infinity), -1);
        assert_eq!(d.weighted_sum(), 0);

        let g = rf(&[-1, 1], &[0, 1]);
        let b = gcd_free_basis(std::slice::from_ref(&g)).unwrap();
        assert!(!b.includes_infinity());
        let d = divisor(&g, &b).unwrap();
        assert_eq!(b.clusters(), &[p(&[0, 1]), p(&[-1, 1])]);
        assert_eq!(d.get(Place::Finite(0)), -1);
        assert_eq!(d.get(Place::Finite(1)), 1);
        assert_eq!(d.get(Place::Infinity), 0);

        let other = gcd_free_basis(&[RatFunc::x()]).unwrap();
        assert!(matches!(divisor(&rf(&[1, 1], &[1]), &other), Err(Error::NotExpressible)));
    }

    #[test]
    fn height_examples() {
        let f = rf(&[0, 0, 1], &[1, 1]);
        assert_eq!(height(&f), Height::Finite(2));
        assert_eq!(height_via_divisor(&f).unwrap(), Height::Finite(2));
        assert_eq!(height(&RatFunc::from_int(5)), Height::Finite(0));
        assert_eq!(height(&RatFunc::x().pow(3).unwrap()), Height::Finite(3));
        assert_eq!(height(&RatFunc::zero()), Height::Infinite);
        assert_eq!(height_via_divisor(&RatFunc::zero()).unwrap(), Height::Infinite);
    }

    #[test]
    fn s_set_examples() {
        assert_eq!(s_set_size(&[RatFunc::x(), rf(&[1, 1], &[1]), rf(&[-1, -1, 1], &[1])]).unwrap(), 5);
        assert_eq!(s_set_size(&[RatFunc::x()]).unwrap(), 2);
        assert_eq!(s_set_size(&[rf(&[0, 0, 1], &[1]), RatFunc::x()]).unwrap(), 2);
        assert!(matches!(s_set_size(&[RatFunc::from_int(3), RatFunc::one()]), Err(Error::AllConstant)));
    }

    #[test]
    fn s_unit_examples() {
        let s = SUnitSpec::from_elements(&[RatFunc::x()]).unwrap();
        assert!(s.is_s_unit(&RatFunc::x()));
        assert!(!s.is_s_unit(&rf(&[1, 1], &[1])));
        let s = SUnitSpec::from_elements(&[RatFunc::x(), rf(&[-1, 1], &[1])]).unwrap();
        assert!(s.is_s_unit(&rf(&[0, 0, 1], &[-1, 1])));
        // Divisor support may be a proper part of a cluster.
        let s = SUnitSpec::from_elements(&[rf(&[0, 1, 1], &[1])]).unwrap();
        assert!(s.is_s_unit(&RatFunc::x()));
        // Degree-zero elements with finite support do not need infinity.
        let s = SUnitSpec::from_elements(&[rf(&[-1, 1], &[0, 1])]).unwrap();
        assert!(!s.basis().includes_infinity());
        assert!(!s.is_s_unit(&RatFunc::x()));
        assert!(s.is_s_unit(&rf(&[0, 1], &[-1, 1])));
    }
}
