//! Dense univariate polynomials over arbitrary-precision rationals.
//!
//! Coefficients are stored in ascending order of the power of `x`. The
//! highest stored coefficient is always nonzero; the zero polynomial is the
//! empty vector. Because that representation is unique, derived equality and
//! hashing are structural.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Rational;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

// Integer coefficients are by far the common case; skipping the gcd
// normalisation inside `Ratio` for them roughly halves the cost of the
// enumeration loops.
#[inline]
fn q_add(a: &Rational, b: &Rational) -> Rational {
    if a.is_integer() && b.is_integer() {
        Rational::from_integer(a.numer() + b.numer())
    } else {
        a + b
    }
}

#[inline]
fn q_sub(a: &Rational, b: &Rational) -> Rational {
    if a.is_integer() && b.is_integer() {
        Rational::from_integer(a.numer() - b.numer())
    } else {
        a - b
    }
}

#[inline]
fn q_mul(a: &Rational, b: &Rational) -> Rational {
    if a.is_integer() && b.is_integer() {
        Rational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

/// `(l * p, l)` as integers, `l` the lcm of the coefficient denominators.
fn integer_scaled(p: &Poly) -> (Vec<BigInt>, BigInt) {
    if p.coeffs.iter().all(Rational::is_integer) {
        return (p.coeffs.iter().map(|c| c.numer().clone()).collect(), BigInt::one());
    }
    let l = p.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    (p.coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect(), l)
}

/// Integer coefficients of a positive rational multiple of `p` with content 1.
fn primitive_integer(p: &Poly) -> Vec<BigInt> {
    primitive_part(integer_scaled(p).0)
}

fn primitive_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !content.is_zero() && !content.is_one() {
        for c in v.iter_mut() {
            *c /= &content;
        }
    }
    v
}

const MODULUS: u64 = (1 << 61) - 1;

fn reduce(v: &[BigInt]) -> Vec<u64> {
    let m = BigInt::from(MODULUS);
    v.iter().map(|c| c.mod_floor(&m).to_u64().expect("reduced residue")).collect()
}

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

fn inv_mod(a: u64) -> u64 {
    let (mut acc, mut base, mut e) = (1, a, MODULUS - 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        e >>= 1;
    }
    acc
}

/// Certifies `gcd(a, b) = 1` when the images modulo a prime not dividing
/// either leading coefficient are coprime: reduction cannot lower the degree
/// of the true gcd. `false` means "not certified", not "not coprime".
fn coprime_mod_prime(a: &[BigInt], b: &[BigInt]) -> bool {
    let (mut x, mut y) = (reduce(a), reduce(b));
    if x.last() == Some(&0) || y.last() == Some(&0) {
        return false;
    }
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while y.len() > 1 {
        let inv = inv_mod(*y.last().expect("nonempty"));
        while x.len() >= y.len() {
            let k = x.len() - y.len();
            let c = mul_mod(*x.last().expect("nonempty"), inv);
            for (j, &yc) in y.iter().enumerate() {
                x[k + j] = (x[k + j] + MODULUS - mul_mod(c, yc)) % MODULUS;
            }
            while x.last() == Some(&0) {
                x.pop();
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
    y.len() == 1
}

/// A remainder of `lc(b)^e * a` modulo `b` over the integers, trimmed.
fn pseudo_remainder(mut r: Vec<BigInt>, b: &[BigInt]) -> Vec<BigInt> {
    let lb = b.last().expect("nonzero divisor");
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let lr = r.last().expect("nonempty").clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[k + j] -= &lr * bc;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Poly { coeffs: vec![Rational::zero(), Rational::one()] }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Builds a polynomial from integer coefficients, lowest power first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; only meaningful where
    /// the caller has already excluded zero.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True for the zero polynomial and nonzero constants alike.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| q_mul(a, c)).collect() }
    }

    /// The monic associate. Fails on zero.
    pub fn monic(&self) -> Result<Poly> {
        let lc = self.leading().ok_or(Error::ZeroInput)?;
        if lc.is_one() {
            return Ok(self.clone());
        }
        Ok(self.scale(&lc.recip()))
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * at + c)
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let Some(sd) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if sd < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let lc_inv = divisor.coeffs[dd].recip();
        let monic_divisor = lc_inv.is_one();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = &rem[k + dd];
            if c.is_zero() {
                continue;
            }
            let c = if monic_divisor { c.clone() } else { q_mul(c, &lc_inv) };
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = q_sub(&rem[k + j], &q_mul(&c, dc));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Exact quotient; fails with `NotExpressible` if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(divisor)?;
        if !r.is_zero() {
            return Err(Error::NotExpressible);
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        !self.is_zero() && other.divrem(self).is_ok_and(|(_, r)| r.is_zero())
    }

    /// Monic greatest common divisor, via a primitive remainder sequence
    /// over the integers.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Err(Error::BothZero),
            (true, false) => return other.monic(),
            (false, true) => return self.monic(),
            _ => {}
        }
        if self.is_constant() || other.is_constant() {
            return Ok(Poly::one());
        }
        let (mut a, mut b) = (primitive_integer(self), primitive_integer(other));
        if coprime_mod_prime(&a, &b) {
            return Ok(Poly::one());
        }
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            if b.len() == 1 {
                return Ok(Poly::one());
            }
            let r = pseudo_remainder(a, &b);
            a = b;
            b = primitive_part(r);
        }
        Poly::from_coeffs(a.into_iter().map(Rational::from_integer).collect()).monic()
    }

    /// `p / gcd(p, p')`, made monic: one linear factor per distinct complex root.
    pub fn squarefree_part(&self) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        if self.is_constant() {
            return Ok(Poly::one());
        }
        let g = self.gcd(&self.derivative())?;
        self.exact_div(&g)?.monic()
    }

    /// Yun's algorithm: monic squarefree, pairwise coprime `s_i` with
    /// `self = lc * prod s_i^i`. Only factors of positive degree are returned.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(Poly, u32)>> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let mut out = Vec::new();
        if self.is_constant() {
            return Ok(out);
        }
        let f = self.monic()?;
        let df = f.derivative();
        let a0 = f.gcd(&df)?;
        let mut b = f.exact_div(&a0)?;
        let mut c = df.exact_div(&a0)?;
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let a = b.gcd(&d)?;
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a)?;
            if b.is_constant() {
                break;
            }
            c = d.exact_div(&a)?;
            d = &c - &b.derivative();
            i += 1;
        }
        Ok(out)
    }

    /// Canonical total order: degree first, then coefficients from the constant
    /// term upward by absolute value and sign. Used to fix cluster order.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| {
            for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
                let ord = a.abs().cmp(&b.abs()).then_with(|| a.cmp(b));
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            Ordering::Equal
        })
    }

    pub(crate) fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c = q_add(c, s);
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Rational::zero();
        let coeffs = (0..n)
            .map(|k| {
                let a = self.coeffs.get(k).unwrap_or(&zero);
                let b = rhs.coeffs.get(k).unwrap_or(&zero);
                q_sub(a, b)
            })
            .collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        // Multiply over the integers and divide once per coefficient, rather
        // than normalising every partial product.
        let (ia, la) = integer_scaled(self);
        let (ib, lb) = integer_scaled(rhs);
        let mut acc = vec![BigInt::zero(); ia.len() + ib.len() - 1];
        for (i, a) in ia.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in ib.iter().enumerate() {
                if !b.is_zero() {
                    acc[i + j] += a * b;
                }
            }
        }
        let l = la * lb;
        let coeffs = if l.is_one() {
            acc.into_iter().map(Rational::from_integer).collect()
        } else {
            acc.into_iter().map(|c| Rational::new(c, l.clone())).collect()
        };
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match k {
                0 => write_rational(f, &mag)?,
                _ => {
                    if !mag.is_one() {
                        write_rational(f, &mag)?;
                        f.write_str("*")?;
                    }
                    f.write_str("x")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
