//! Shared inputs for the benchmarks.

use pillai_core::{Poly, RatFunc, Recurrence};

pub fn poly(c: &[i64]) -> Poly {
    Poly::from_ints(c)
}

fn pure(root: &[i64]) -> Recurrence {
    Recurrence::pure_power(RatFunc::from(poly(root))).expect("nonzero root")
}

/// `x^n` against `(x + 1)^m`.
pub fn power_pair() -> (Recurrence, Recurrence) {
    (pure(&[0, 1]), pure(&[1, 1]))
}

/// The fixed right-hand side `x^2 - x - 1`, hit once by [`power_pair`].
pub fn pillai_f() -> RatFunc {
    RatFunc::from(poly(&[-1, -1, 1]))
}

/// Two-term sequences with a planted double representation.
pub fn planted_pair() -> (Recurrence, Recurrence) {
    let g = Recurrence::new(vec![(RatFunc::one(), RatFunc::x()), (RatFunc::one(), RatFunc::from(poly(&[0, 0, 1])))]);
    let h = Recurrence::new(vec![(RatFunc::from(poly(&[1, 1, 1])), RatFunc::from(poly(&[1, -1])))]);
    (g.expect("valid"), h.expect("valid"))
}

/// `x^2 + x` and `x^2 - 1` raised to `k`, which share the factor `(x + 1)^k`.
pub fn gcd_inputs(k: u32) -> (Poly, Poly) {
    let (a, b) = (poly(&[0, 1, 1]), poly(&[-1, 0, 1]));
    let (mut pa, mut pb) = (poly(&[1]), poly(&[1]));
    for _ in 0..k {
        pa = &pa * &a;
        pb = &pb * &b;
    }
    (pa, pb)
}
