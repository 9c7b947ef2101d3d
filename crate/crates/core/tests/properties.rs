use num_traits::Zero;
use pillai_core::bounds::{theorem1_bound_with, theorem2_bound_with, BoundOptions};
use pillai_core::solver::enumerate_fixed;
use pillai_core::{
    brute_force_oracle, divisor, gcd_free_basis, height_via_divisor, is_mult_independent, lemma2_bound,
    solve_double_rep, solve_fixed_f, DoubleRepMode, Height, Parallelism, Poly, RatFunc, Rational, Recurrence,
};
use proptest::prelude::*;

fn poly_strategy(max_deg: usize, bound: i64) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-bound..=bound, 0..=max_deg + 1).prop_map(|c| Poly::from_ints(&c))
}

fn nonzero_poly(max_deg: usize, bound: i64) -> impl Strategy<Value = Poly> {
    poly_strategy(max_deg, bound).prop_filter("nonzero", |p| !p.is_zero())
}

fn nonconstant_poly(max_deg: usize, bound: i64) -> impl Strategy<Value = Poly> {
    poly_strategy(max_deg, bound).prop_filter("nonconstant", |p| !p.is_constant())
}

fn ratfunc(max_deg: usize, bound: i64) -> impl Strategy<Value = RatFunc> {
    (nonzero_poly(max_deg, bound), nonzero_poly(max_deg, bound)).prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

fn h(f: &RatFunc) -> u64 {
    f.height().finite().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn divrem_reconstructs(a in poly_strategy(6, 9), b in nonzero_poly(3, 9)) {
        let (q, r) = a.divrem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.deg() < b.deg());
    }

    #[test]
    fn gcd_divides_and_is_monic(a in nonzero_poly(4, 6), b in nonzero_poly(4, 6), c in nonconstant_poly(2, 4)) {
        let (ac, bc) = (&a * &c, &b * &c);
        let g = ac.gcd(&bc).unwrap();
        prop_assert!(g.is_monic());
        prop_assert!(g.divides(&ac) && g.divides(&bc));
        prop_assert!(c.divides(&g));
    }

    #[test]
    fn squarefree_decomposition_reconstructs(a in nonconstant_poly(3, 5), b in nonconstant_poly(2, 5)) {
        let p = &(&a * &b) * &b;
        let parts = p.squarefree_decomposition().unwrap();
        let product = parts.iter().fold(Poly::one(), |acc, (f, e)| &acc * &f.pow(*e));
        prop_assert_eq!(product, p.monic().unwrap());
        for (i, (f, _)) in parts.iter().enumerate() {
            prop_assert!(f.is_monic());
            prop_assert!(f.gcd(&f.derivative()).unwrap().is_one());
            for (g, _) in &parts[i + 1..] {
                prop_assert!(f.gcd(g).unwrap().is_one());
            }
        }
    }

    #[test]
    fn ratfunc_canonical_form(n in nonzero_poly(4, 9), d in nonzero_poly(4, 9), k in nonzero_poly(2, 5)) {
        let a = RatFunc::new(n.clone(), d.clone()).unwrap();
        let b = RatFunc::new(&n * &k, &d * &k).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.den().is_monic());
        prop_assert!(a.num().gcd(a.den()).unwrap().is_one());
    }

    #[test]
    fn field_axioms(a in ratfunc(3, 6), b in ratfunc(3, 6), c in ratfunc(3, 6)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert_eq!(&a * &a.inv().unwrap(), RatFunc::one());
    }

    #[test]
    fn height_laws(f in ratfunc(4, 20), g in ratfunc(4, 20), n in -5i64..=5, a in nonzero_poly(3, 9)) {
        prop_assert_eq!(h(&f), h(&f.inv().unwrap()));
        let s = &f + &g;
        if !s.is_zero() {
            prop_assert!(h(&s) <= h(&f) + h(&g));
            prop_assert!(h(&f) <= h(&s) + h(&g));
        }
        let p = &f * &g;
        prop_assert!(h(&p) <= h(&f) + h(&g));
        prop_assert!(h(&f) <= h(&p) + h(&g));
        prop_assert_eq!(h(&f.pow(n).unwrap()), n.unsigned_abs() * h(&f));
        prop_assert_eq!(h(&f) == 0, f.is_constant());
        let composed = f.compose_into(&a);
        // Only a constant f can be a root of A.
        if !composed.is_zero() {
            prop_assert_eq!(h(&composed), a.deg() as u64 * h(&f));
        }
    }

    #[test]
    fn sum_formula_and_divisor_height(f in ratfunc(5, 30)) {
        let basis = gcd_free_basis(std::slice::from_ref(&f)).unwrap();
        let div = divisor(&f, &basis).unwrap();
        prop_assert_eq!(div.weighted_sum(), 0);
        prop_assert_eq!(height_via_divisor(&f).unwrap(), f.height());
    }

    #[test]
    fn gcd_free_basis_is_coprime_and_complete(fs in prop::collection::vec(ratfunc(3, 6), 1..4)) {
        let basis = gcd_free_basis(&fs).unwrap();
        let cl = basis.clusters();
        for (i, c) in cl.iter().enumerate() {
            prop_assert!(c.is_monic() && !c.is_constant());
            prop_assert!(c.gcd(&c.derivative()).unwrap().is_one());
            for d in &cl[i + 1..] {
                prop_assert!(c.gcd(d).unwrap().is_one());
            }
        }
        for f in &fs {
            prop_assert!(divisor(f, &basis).is_ok());
        }
    }

    #[test]
    fn powers_of_one_element_are_dependent(f in ratfunc(3, 6), r in -3i64..=3, s in -3i64..=3) {
        prop_assume!(!f.is_constant() && r != 0 && s != 0);
        prop_assert!(!is_mult_independent(&f.pow(r).unwrap(), &f.pow(s).unwrap()));
    }

    #[test]
    fn shift_and_incremental_values_agree(
        a in nonzero_poly(2, 4), al in nonconstant_poly(2, 4), b in nonzero_poly(2, 4), k in 0u64..4
    ) {
        let be = &al + &Poly::one();
        let g = Recurrence::new(vec![(a.into(), al.into()), (b.into(), be.into())]).unwrap();
        let vals = g.values(6);
        for n in 1..=6u64 {
            prop_assert_eq!(&vals[(n - 1) as usize], &g.eval(n));
        }
        let s = g.apply_shift(k);
        prop_assert_eq!(s.offset(), k);
        for n in 1..=4u64 {
            prop_assert_eq!(s.eval(n), g.eval(n + k));
        }
    }
}

/// Exact divisor-based scan of `H(gamma^n / delta^m)`.
fn quotient_height(gamma: &RatFunc, delta: &RatFunc, n: i64, m: i64) -> u64 {
    h(&gamma.pow(n).unwrap().checked_div(&delta.pow(m).unwrap()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lemma2_is_sound_on_window(
        g in nonconstant_poly(2, 3), d in nonconstant_poly(2, 3), l in 0u64..6
    ) {
        let (gamma, delta) = (RatFunc::from(g), RatFunc::from(d));
        prop_assume!(is_mult_independent(&gamma, &delta));
        let r = lemma2_bound(&gamma, &delta, &Rational::from_integer(l.into())).unwrap();
        let window = (3 * r.enumeration_limit).clamp(6, 30) as i64;
        for n in 1..=window {
            for m in 1..=window {
                if quotient_height(&gamma, &delta, n, m) <= l {
                    prop_assert!(Rational::from_integer(n.max(m).into()) <= r.final_bound, "({n}, {m}) escapes");
                }
            }
        }
    }

    #[test]
    fn adding_places_never_shrinks_bounds(e in nonconstant_poly(2, 5), c in 1i64..5) {
        let g = Recurrence::pure_power(RatFunc::x()).unwrap();
        let hh = Recurrence::pure_power(RatFunc::from(Poly::from_ints(&[c, 1]))).unwrap();
        let f = RatFunc::from(Poly::from_ints(&[-1, 1]));
        let opts = BoundOptions { genus: 0, extra_elements: vec![e.into()] };
        let base = theorem1_bound_with(&g, &hh, &f, &BoundOptions::default()).unwrap();
        let more = theorem1_bound_with(&g, &hh, &f, &opts).unwrap();
        prop_assert!(more.get("|S|") >= base.get("|S|"));
        for (name, v) in &base.constants {
            prop_assert!(more.get(name).unwrap() >= v, "{}", name);
        }
        let base = theorem2_bound_with(&g, &hh, &BoundOptions::default()).unwrap();
        let more = theorem2_bound_with(&g, &hh, &opts).unwrap();
        prop_assert!(more.final_bound >= base.final_bound);
    }

    #[test]
    fn fixed_f_solver_matches_oracle(
        al in nonconstant_poly(2, 3), be in nonconstant_poly(2, 3), n0 in 1u64..4, m0 in 1u64..4
    ) {
        let g = Recurrence::pure_power(al.into()).unwrap();
        let hh = Recurrence::pure_power(be.into()).unwrap();
        let f = &g.eval(n0) - &hh.eval(m0);
        prop_assume!(!f.is_zero());
        let s = solve_fixed_f(&g, &hh, &f, Parallelism::Sequential).unwrap();
        prop_assert!(s.solutions.contains(&(n0, m0)));
        let oracle = brute_force_oracle(&g, &hh, &f, s.bound_report.enumeration_limit);
        prop_assert_eq!(&s.solutions, &oracle);
        let par = enumerate_fixed(&g, &hh, &f, s.bound_report.enumeration_limit, Parallelism::Parallel(3)).unwrap();
        prop_assert_eq!(&s.solutions, &par);
    }
}

#[test]
fn theorem1_report_recomputes_from_inputs() {
    let x = RatFunc::x();
    let g = Recurrence::new(vec![(RatFunc::from_int(2), x.pow(2).unwrap()), (x.clone(), RatFunc::from(Poly::from_ints(&[1, 1])))])
        .unwrap();
    let hh = Recurrence::pure_power(RatFunc::from(Poly::from_ints(&[-2, 0, 1]))).unwrap();
    let f = RatFunc::from(Poly::from_ints(&[3, 1]));
    let r = theorem1_bound_with(&g, &hh, &f, &BoundOptions::default()).unwrap();
    let get = |k: &str| r.get(k).unwrap().clone();
    let qn = |n: u64| Rational::from_integer(n.into());
    let k = get("k");
    let s = get("|S|");
    assert_eq!(get("C1"), &k * (&k - qn(1)) / qn(2) * &s);
    // max H(-f/a_i), H(-f/b_j): -f/2 -> 1, -f/x -> 1, -f/1 -> 1.
    assert_eq!(get("C2"), get("C1") + qn(1));
    // min root height 1 (x + 1).
    assert_eq!(get("C3"), get("C2"));
    // coefficient ratios 2/x, x/2 -> 1; root ratio x^2/(x+1) -> 2.
    assert_eq!(get("C4"), get("C1") + qn(1));
    assert_eq!(get("C5"), get("C4") / qn(2));
    assert_eq!(get("C6"), get("C1") + qn(1) + qn(0) + get("C3") * qn(2));
    assert_eq!(get("C7"), get("C6"));
    let fin = [get("C3"), get("C5"), get("C7")].into_iter().max().unwrap();
    assert_eq!(r.final_bound, fin);
    assert!(!r.final_bound.is_zero());
}

#[test]
fn double_rep_parallel_matches_sequential() {
    let g = Recurrence::pure_power(RatFunc::x()).unwrap();
    let hh = Recurrence::pure_power(RatFunc::from(Poly::from_ints(&[1, -1]))).unwrap();
    let a = solve_double_rep(&g, &hh, DoubleRepMode::T2, Parallelism::Sequential).unwrap();
    for threads in [1, 2, 5] {
        let b = solve_double_rep(&g, &hh, DoubleRepMode::T2, Parallelism::Parallel(threads)).unwrap();
        assert_eq!(a, b);
    }
    assert!(!a.collisions.is_empty());
    assert_eq!(Height::Finite(1), a.collisions[0].f.height());
}
