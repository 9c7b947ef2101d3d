//! Certified enumeration below an effective bound.
//!
//! Values are generated incrementally and keyed by their canonical form, so
//! equality of hash-map keys is exact equality in `Q(x)`. Every reported
//! hit is re-checked by direct evaluation before it is returned.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::bounds::{corollary_bound, theorem1_bound_with, theorem2_bound_prepared, theorem3_bound_prepared, BoundOptions};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::recurrence::{check_no_multiple_values, prepare_theorem2, prepare_theorem3, HypothesisReport, Recurrence};
use crate::report::BoundReport;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Parallelism {
    #[default]
    Sequential,
    /// Rayon pool with the given number of threads; 0 lets rayon choose.
    Parallel(usize),
}

impl Parallelism {
    fn run<T: Send>(self, job: impl FnOnce() -> T + Send) -> T {
        match self {
            Parallelism::Sequential => job(),
            Parallelism::Parallel(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .expect("thread pool")
                .install(job),
        }
    }

    fn is_parallel(self) -> bool {
        matches!(self, Parallelism::Parallel(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub bound_report: BoundReport,
    /// Sorted `(n, m)` pairs in the indexing of the recurrences as shifted.
    pub solutions: Vec<(u64, u64)>,
    /// Index offsets of `(G, H)`: original index = reported index + offset.
    pub offsets: (u64, u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DoubleRepMode {
    T2,
    T3,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collision {
    pub f: RatFunc,
    /// At least two sorted `(n, m)` pairs with `G_n - H_m = f`.
    pub representations: Vec<(u64, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleRepSet {
    pub bound_report: BoundReport,
    pub hypotheses: HypothesisReport,
    /// Sorted by representation lists.
    pub collisions: Vec<Collision>,
    pub offsets: (u64, u64),
}

/// `[G_1, ..., G_up_to]`, computed in contiguous chunks when parallel.
fn values(rec: &Recurrence, up_to: u64, par: Parallelism) -> Vec<RatFunc> {
    if !par.is_parallel() || up_to < 16 {
        return rec.values(up_to);
    }
    let chunks = rayon::current_num_threads().max(1) as u64;
    let size = up_to.div_ceil(chunks);
    let starts: Vec<u64> = (0..chunks).map(|c| c * size).filter(|&s| s < up_to).collect();
    starts
        .into_par_iter()
        .map(|s| {
            let len = size.min(up_to - s);
            // Indices s+1..=s+len are indices 1..=len of the recurrence shifted by s.
            rec.apply_shift(s).values(len)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// All `(n, m)` in `[1, limit]^2` with `G_n - H_m = f`.
pub fn enumerate_fixed(g: &Recurrence, h: &Recurrence, f: &RatFunc, limit: u64, par: Parallelism) -> Result<Vec<(u64, u64)>> {
    par.run(|| {
        let gv = values(g, limit, par);
        let hv = values(h, limit, par);
        let mut by_value: HashMap<&RatFunc, Vec<u64>> = HashMap::with_capacity(gv.len());
        for (n, v) in (1..).zip(&gv) {
            by_value.entry(v).or_default().push(n);
        }
        let lookup = |(m, hm): (u64, &RatFunc)| -> Vec<(u64, u64)> {
            let target = f + hm;
            by_value.get(&target).map(|ns| ns.iter().map(|&n| (n, m)).collect()).unwrap_or_default()
        };
        let mut hits: Vec<(u64, u64)> = if par.is_parallel() {
            hv.par_iter().enumerate().flat_map_iter(|(i, hm)| lookup((i as u64 + 1, hm))).collect()
        } else {
            (1..=limit).zip(&hv).flat_map(lookup).collect()
        };
        hits.sort_unstable();
        for &(n, m) in &hits {
            if &(&g.eval(n) - &h.eval(m)) != f {
                return Err(Error::Invariant(format!("solution ({n}, {m}) failed re-verification")));
            }
        }
        Ok(hits)
    })
}

pub fn solve_fixed_f(g: &Recurrence, h: &Recurrence, f: &RatFunc, par: Parallelism) -> Result<SolutionSet> {
    solve_fixed_f_with(g, h, f, &BoundOptions::default(), par)
}

pub fn solve_fixed_f_with(
    g: &Recurrence,
    h: &Recurrence,
    f: &RatFunc,
    opts: &BoundOptions,
    par: Parallelism,
) -> Result<SolutionSet> {
    let bound_report = theorem1_bound_with(g, h, f, opts)?;
    let solutions = enumerate_fixed(g, h, f, bound_report.enumeration_limit, par)?;
    Ok(SolutionSet { bound_report, solutions, offsets: (0, 0) })
}

pub fn corollary_solve(p: &Poly, q: &Poly, f: &Poly, par: Parallelism) -> Result<SolutionSet> {
    let bound_report = corollary_bound(p, q, f)?;
    let g = Recurrence::pure_power(RatFunc::from_poly(p.clone()))?;
    let h = Recurrence::pure_power(RatFunc::from_poly(q.clone()))?;
    let f = RatFunc::from_poly(f.clone());
    let solutions = enumerate_fixed(&g, &h, &f, bound_report.enumeration_limit, par)?;
    Ok(SolutionSet { bound_report, solutions, offsets: (0, 0) })
}

type CollisionMap = HashMap<RatFunc, Vec<(u64, u64)>>;

fn merge(mut a: CollisionMap, b: CollisionMap) -> CollisionMap {
    if a.len() < b.len() {
        return merge(b, a);
    }
    for (k, v) in b {
        a.entry(k).or_default().extend(v);
    }
    a
}

/// Every value of `G_n - H_m` on `[1, limit]^2` that arises from at least
/// two pairs.
pub fn enumerate_double_rep(g: &Recurrence, h: &Recurrence, limit: u64, par: Parallelism) -> Result<Vec<Collision>> {
    par.run(|| {
        let gv = values(g, limit, par);
        let hv = values(h, limit, par);
        let row = |n: u64| -> CollisionMap {
            let gn = &gv[(n - 1) as usize];
            let mut map = CollisionMap::with_capacity(hv.len());
            for (m, hm) in (1..).zip(&hv) {
                map.entry(gn - hm).or_default().push((n, m));
            }
            map
        };
        let map = if par.is_parallel() {
            (1..=limit).into_par_iter().map(row).reduce(CollisionMap::new, merge)
        } else {
            (1..=limit).map(row).fold(CollisionMap::new(), merge)
        };
        let mut collisions: Vec<Collision> = map
            .into_iter()
            .filter(|(_, reps)| reps.len() >= 2)
            .map(|(f, mut representations)| {
                representations.sort_unstable();
                Collision { f, representations }
            })
            .collect();
        collisions.sort_by(|a, b| a.representations.cmp(&b.representations));
        for c in &collisions {
            for &(n, m) in &c.representations {
                if &g.eval(n) - &h.eval(m) != c.f {
                    return Err(Error::Invariant(format!("representation ({n}, {m}) failed re-verification")));
                }
            }
        }
        Ok(collisions)
    })
}

pub fn solve_double_rep(g: &Recurrence, h: &Recurrence, mode: DoubleRepMode, par: Parallelism) -> Result<DoubleRepSet> {
    solve_double_rep_with(g, h, mode, &BoundOptions::default(), par)
}

pub fn solve_double_rep_with(
    g: &Recurrence,
    h: &Recurrence,
    mode: DoubleRepMode,
    opts: &BoundOptions,
    par: Parallelism,
) -> Result<DoubleRepSet> {
    let prepared = match mode {
        DoubleRepMode::T2 => prepare_theorem2(g, h)?,
        DoubleRepMode::T3 => prepare_theorem3(g, h)?,
    };
    let bound_report = match mode {
        DoubleRepMode::T2 => theorem2_bound_prepared(&prepared, opts)?,
        DoubleRepMode::T3 => theorem3_bound_prepared(&prepared, opts)?,
    };
    let limit = bound_report.enumeration_limit;
    let mut hypotheses = prepared.report.clone();
    if !check_no_multiple_values(&prepared.g, limit) {
        hypotheses.violate(format!("G has multiple values on [1, {limit}]"));
    }
    if !check_no_multiple_values(&prepared.h, limit) {
        hypotheses.violate(format!("H has multiple values on [1, {limit}]"));
    }
    if !hypotheses.passed {
        return Err(hypotheses.into_error());
    }
    let collisions = enumerate_double_rep(&prepared.g, &prepared.h, limit, par)?;
    Ok(DoubleRepSet { bound_report, hypotheses, collisions, offsets: prepared.offsets() })
}

/// `[G_1, ..., G_window]` from running powers of each root.
fn direct_values(rec: &Recurrence, window: u64) -> Vec<RatFunc> {
    let mut out = vec![RatFunc::zero(); window as usize];
    for t in rec.terms() {
        let mut cur = &t.coeff * &t.root;
        for slot in out.iter_mut() {
            *slot = &*slot + &cur;
            cur = &cur * &t.root;
        }
    }
    out
}

/// Every `(n, m)` in `[1, window]^2` with `G_n - H_m = f`, by direct
/// evaluation: `G_n - f` is compared with `H_m` for every pair. Independent
/// of all bound and hashing logic.
pub fn brute_force_oracle(g: &Recurrence, h: &Recurrence, f: &RatFunc, window: u64) -> Vec<(u64, u64)> {
    let gv: Vec<RatFunc> = direct_values(g, window).iter().map(|v| v - f).collect();
    let hv = direct_values(h, window);
    let mut out = Vec::new();
    for (n, gn) in (1..).zip(&gv) {
        for (m, hm) in (1..).zip(&hv) {
            if gn == hm {
                out.push((n, m));
            }
        }
    }
    out
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
    fn fixed_f_worked_example() {
        let g = pure(RatFunc::x());
        let h = pure(p(&[1, 1]));
        let s = solve_fixed_f(&g, &h, &p(&[-1, -1, 1]), Parallelism::Sequential).unwrap();
        assert_eq!(s.bound_report.enumeration_limit, 12);
        assert_eq!(s.solutions, vec![(2, 1)]);
        let s = solve_fixed_f(&g, &h, &RatFunc::one(), Parallelism::Sequential).unwrap();
        assert!(s.solutions.is_empty());
        assert_eq!(brute_force_oracle(&g, &h, &p(&[-1, -1, 1]), 50), vec![(2, 1)]);
    }

    #[test]
    fn corollary_examples() {
        let x = Poly::x();
        let s = corollary_solve(&x.pow(2), &x, &Poly::from_ints(&[0, 0, 0, -1, 1]), Parallelism::Sequential).unwrap();
        assert_eq!(s.solutions, vec![(2, 3)]);
        let s = corollary_solve(&x, &x, &Poly::from_ints(&[0, -1, 1]), Parallelism::Parallel(2)).unwrap();
        assert_eq!(s.solutions, vec![(2, 1)]);
        let s = corollary_solve(&x, &x, &Poly::one(), Parallelism::Sequential).unwrap();
        assert!(s.solutions.is_empty());
    }

    #[test]
    fn double_rep_worked_example() {
        let g = pure(RatFunc::x());
        let h = pure(p(&[1, 1]));
        let s = solve_double_rep(&g, &h, DoubleRepMode::T2, Parallelism::Sequential).unwrap();
        assert_eq!(s.bound_report.enumeration_limit, 18);
        assert!(s.collisions.is_empty());
        assert!(matches!(
            solve_double_rep(&g, &g, DoubleRepMode::T2, Parallelism::Sequential),
            Err(Error::HypothesisViolation(_))
        ));
    }

    #[test]
    fn planted_collision_is_found() {
        // x^1 - (1-x)^1 = 2x - 1 = x^2 - (1-x)^2.
        let g = pure(RatFunc::x());
        let h = pure(p(&[1, -1]));
        let seq = solve_double_rep(&g, &h, DoubleRepMode::T2, Parallelism::Sequential).unwrap();
        let hit = seq.collisions.iter().find(|c| c.f == p(&[-1, 2])).expect("planted collision");
        assert_eq!(hit.representations, vec![(1, 1), (2, 2)]);
        let par = solve_double_rep(&g, &h, DoubleRepMode::T2, Parallelism::Parallel(3)).unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn planted_polynomial_collision_is_found() {
        // Found by searching H = b beta^m with b = (G_2 - G_1) / (beta^2 - beta):
        // G_1 - H_1 = G_2 - H_2 = x^3 + x^2 + x - 1.
        let g = Recurrence::new(vec![(RatFunc::one(), RatFunc::x()), (RatFunc::one(), p(&[0, 0, 1]))]).unwrap();
        let h = Recurrence::new(vec![(p(&[1, 1, 1]), p(&[1, -1]))]).unwrap();
        let s = solve_double_rep(&g, &h, DoubleRepMode::T3, Parallelism::Sequential).unwrap();
        assert_eq!(s.offsets, (0, 0));
        assert_eq!(s.bound_report.enumeration_limit, 156);
        assert_eq!(s.collisions.len(), 1);
        assert_eq!(s.collisions[0].f, p(&[-1, 1, 1, 1]));
        assert_eq!(s.collisions[0].representations, vec![(1, 1), (2, 2)]);
    }

    #[test]
    fn parallel_values_match_sequential() {
        let g = Recurrence::new(vec![(p(&[1, 1]), p(&[0, 0, 1])), (RatFunc::from_int(-2), p(&[3, 1]))]).unwrap();
        let seq = values(&g, 40, Parallelism::Sequential);
        let par = Parallelism::Parallel(4).run(|| values(&g, 40, Parallelism::Parallel(4)));
        assert_eq!(seq, par);
    }
}
