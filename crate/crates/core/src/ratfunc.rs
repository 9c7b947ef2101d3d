//! Reduced rational functions in `Q(x)`.
//!
//! Canonical form: `gcd(num, den) = 1`, `den` monic, and zero is `0/1`.
//! Two values are equal iff their fields are equal, so `PartialEq` and
//! `Hash` can be derived and a `RatFunc` can key a hash map directly.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

/// `H(f)`; the zero element has infinite height.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Height {
    Finite(u64),
    Infinite,
}

impl Height {
    pub fn finite(self) -> Option<u64> {
        match self {
            Height::Finite(h) => Some(h),
            Height::Infinite => None,
        }
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Finite(h) => write!(f, "{h}"),
            Height::Infinite => f.write_str("infinity"),
        }
    }
}

impl RatFunc {
    /// Reduced, den-monic representative of `num / den`.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den)?;
            if g.is_one() {
                (num, den)
            } else {
                (num.exact_div(&g)?, den.exact_div(&g)?)
            }
        };
        Ok(Self::normalize_lc(num, den))
    }

    // Inputs already coprime; only the leading coefficient of `den` is fixed up.
    fn normalize_lc(num: Poly, den: Poly) -> Self {
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn x() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Constant in the sense of the function field: an element of `Q`.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    /// `max(deg num, deg den)`, which is the height of a reduced nonzero element.
    pub fn height(&self) -> Height {
        if self.is_zero() {
            Height::Infinite
        } else {
            Height::Finite(self.num.deg().max(self.den.deg()) as u64)
        }
    }

    /// Height of an element known to be nonzero.
    pub(crate) fn h(&self) -> u64 {
        self.height().finite().expect("height of a nonzero element")
    }

    /// `deg den - deg num`, the valuation at infinity. Zero maps to 0.
    pub fn valuation_at_infinity(&self) -> i64 {
        if self.is_zero() {
            return 0;
        }
        self.den.deg() as i64 - self.num.deg() as i64
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize_lc(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<RatFunc> {
        if k == 0 {
            return Ok(RatFunc::one());
        }
        if k < 0 && self.is_zero() {
            return Err(Error::ZeroToNegativePower);
        }
        let e = u32::try_from(k.unsigned_abs()).map_err(|_| Error::Invariant("exponent too large".into()))?;
        // Powers of coprime polynomials stay coprime.
        let r = RatFunc { num: self.num.pow(e), den: self.den.pow(e) };
        if k < 0 {
            r.inv()
        } else {
            Ok(r)
        }
    }

    /// `A(self)` for a polynomial `A`, by Horner's scheme.
    pub fn compose_into(&self, outer: &Poly) -> RatFunc {
        outer
            .coeffs()
            .iter()
            .rev()
            .fold(RatFunc::zero(), |acc, c| &(&acc * self) + &RatFunc::constant(c.clone()))
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero denominator");
        }
        // Henrici: with g = gcd(b, d), b = g b', d = g d', the sum
        // (a d' + c b') / (b' d' g) can only cancel against g.
        let g = self.den.gcd(&rhs.den).expect("nonzero");
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RatFunc::normalize_lc(num, &self.den * &rhs.den);
        }
        let b1 = self.den.exact_div(&g).expect("gcd divides");
        let d1 = rhs.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &d1) + &(&rhs.num * &b1);
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g2 = num.gcd(&g).expect("nonzero");
        let num = num.exact_div(&g2).expect("gcd divides");
        let den = &(&b1 * &d1) * &g.exact_div(&g2).expect("gcd divides");
        RatFunc::normalize_lc(num, den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num - &rhs.num);
        }
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        // Cross-cancel so the product of reduced inputs is reduced.
        let g1 = self.num.gcd(&rhs.den).expect("nonzero");
        let g2 = rhs.num.gcd(&self.den).expect("nonzero");
        let a = self.num.exact_div(&g1).expect("gcd divides");
        let d = rhs.den.exact_div(&g1).expect("gcd divides");
        let c = rhs.num.exact_div(&g2).expect("gcd divides");
        let b = self.den.exact_div(&g2).expect("gcd divides");
        RatFunc::normalize_lc(&a * &c, &b * &d)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

fn needs_parens(p: &Poly) -> bool {
    let s = p.to_string();
    p.term_count() > 1 || s.contains('/')
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if needs_parens(&self.num) {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        f.write_str("/")?;
        if needs_parens(&self.den) {
            write!(f, "({})", self.den)
        } else {
            write!(f, "{}", self.den)
        }
    }
}
