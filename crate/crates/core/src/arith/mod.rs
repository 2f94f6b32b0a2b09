//! Exact arithmetic: rationals, integer helpers, Gaussian elimination and
//! the simplex solver.

mod integer;
mod linalg;
mod lp;
mod rational;

pub use integer::{bezout_fold, gcd_all, gcd_u64};
pub use linalg::{in_span, is_integral, kernel_basis, mat_vec, primitive_integer_direction, rank, rref};
pub use lp::{solve_lp, LpOutcome, LpProblem, Sense};
pub use rational::{lcm_of_denominators, simplest_in_interval, Rational};

/// Shorthand for `Rational::new(num, den)`.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}
