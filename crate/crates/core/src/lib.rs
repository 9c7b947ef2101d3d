//! Exact arithmetic in `Q(x)`, place and height machinery, and effective
//! bounds with certified enumeration for equations of the form
//! `G_n - H_m = f` and `G_n = H_m` in simple linear recurrences over `Q(x)`.

pub mod bounds;
pub mod error;
pub mod independence;
pub mod places;
pub mod poly;
pub mod ratfunc;
pub mod recurrence;
pub mod report;
pub mod solver;

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;

pub use bounds::{
    bm_bound, corollary_bound, theorem1_bound, theorem1_bound_with, theorem2_bound, theorem2_bound_with, theorem3_bound,
    theorem3_bound_with, BoundOptions, BoundParams,
};
pub use error::{Error, Result};
pub use independence::{find_separating_pair, is_mult_independent, lemma2_bound, SeparatingPair};
pub use places::{divisor, gcd_free_basis, height, height_via_divisor, s_set_size, valuation, Divisor, Place, PlaceBasis, SUnitSpec};
pub use poly::Poly;
pub use ratfunc::{Height, RatFunc};
pub use recurrence::{
    check_no_multiple_values, check_theorem1_hypotheses, find_nu_dominant, immediate_effect_threshold,
    prepare_theorem2, prepare_theorem3, relevant_set, weak_coefficients_threshold, HypothesisReport, Prepared,
    Recurrence, Term,
};
pub use report::{BoundReport, TheoremTag};
pub use solver::{
    brute_force_oracle, corollary_solve, solve_double_rep, solve_double_rep_with, solve_fixed_f, solve_fixed_f_with,
    Collision, DoubleRepMode, DoubleRepSet,
    Parallelism, SolutionSet,
};
