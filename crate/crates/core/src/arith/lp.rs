//! Exact two-phase simplex over the rationals.
//!
//! Problems are in equality standard form: optimize `c·x` subject to
//! `A x = b`, `x ≥ 0`. Pivoting follows Bland's rule (lowest-index entering
//! column, lowest-index leaving basic variable among ratio ties), which
//! guarantees termination. Every tableau entry is a reduced fraction.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{Error, Result};

/// Optimization direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Maximize,
    Minimize,
}

/// A linear program `opt c·x` s.t. `A x = b`, `x ≥ 0`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LpProblem {
    pub num_vars: usize,
    pub objective: Vec<Rational>,
    /// Equality rows, each of length `num_vars`.
    pub constraints: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
    pub sense: Sense,
}

/// Result of [`solve_lp`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpOutcome {
    Optimal { value: Rational, point: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    /// The optimal value, if any.
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

impl LpProblem {
    /// An empty problem over `num_vars` variables with a zero objective.
    pub fn new(num_vars: usize, sense: Sense) -> Self {
        LpProblem {
            num_vars,
            objective: vec![Rational::zero(); num_vars],
            constraints: Vec::new(),
            rhs: Vec::new(),
            sense,
        }
    }

    /// Append the row `row·x = rhs`.
    pub fn add_row(&mut self, row: Vec<Rational>, rhs: Rational) {
        self.constraints.push(row);
        self.rhs.push(rhs);
    }

    fn check_dims(&self) -> Result<()> {
        if self.objective.len() != self.num_vars {
            return Err(Error::structural(format!(
                "objective has length {} but num_vars = {}",
                self.objective.len(),
                self.num_vars
            )));
        }
        if self.rhs.len() != self.constraints.len() {
            return Err(Error::structural(format!(
                "{} constraint rows but {} right-hand sides",
                self.constraints.len(),
                self.rhs.len()
            )));
        }
        if let Some((i, row)) = self
            .constraints
            .iter()
            .enumerate()
            .find(|(_, r)| r.len() != self.num_vars)
        {
            return Err(Error::structural(format!(
                "constraint row {i} has length {} but num_vars = {}",
                row.len(),
                self.num_vars
            )));
        }
        Ok(())
    }

    /// True if `point` is nonnegative and satisfies every row exactly.
    pub fn is_feasible_point(&self, point: &[Rational]) -> bool {
        point.len() == self.num_vars
            && point.iter().all(|v| !v.is_negative())
            && self.constraints.iter().zip(&self.rhs).all(|(row, b)| {
                let lhs: Rational = row.iter().zip(point).map(|(a, x)| a * x).sum();
                &lhs == b
            })
    }

    /// `c·point`.
    pub fn objective_at(&self, point: &[Rational]) -> Rational {
        self.objective.iter().zip(point).map(|(c, x)| c * x).sum()
    }
}

/// Solve `p` exactly.
pub fn solve_lp(p: &LpProblem) -> Result<LpOutcome> {
    p.check_dims()?;
    let mut t = Tableau::new(p);
    if !t.phase_one() {
        return Ok(LpOutcome::Infeasible);
    }
    let sign = match p.sense {
        Sense::Maximize => BigRational::from_integer(1.into()),
        Sense::Minimize => BigRational::from_integer((-1).into()),
    };
    let cost: Vec<BigRational> = p
        .objective
        .iter()
        .map(|c| c.as_big() * &sign)
        .collect();
    if !t.phase_two(&cost) {
        return Ok(LpOutcome::Unbounded);
    }
    let point: Vec<Rational> = t.point().into_iter().map(Rational::from_big).collect();
    let value = p.objective_at(&point);
    debug_assert!(p.is_feasible_point(&point));
    Ok(LpOutcome::Optimal { value, point })
}

struct Tableau {
    n: usize,
    /// Rows of `[A | artificials]`; artificial column `n + i` starts in row `i`.
    rows: Vec<Vec<BigRational>>,
    b: Vec<BigRational>,
    basis: Vec<usize>,
    /// Columns allowed to enter the basis.
    active_cols: usize,
}

impl Tableau {
    fn new(p: &LpProblem) -> Self {
        let m = p.constraints.len();
        let n = p.num_vars;
        let mut rows = Vec::with_capacity(m);
        let mut b = Vec::with_capacity(m);
        for (i, (row, rhs)) in p.constraints.iter().zip(&p.rhs).enumerate() {
            let flip = rhs.is_negative();
            let mut r: Vec<BigRational> = row
                .iter()
                .map(|a| if flip { -a.as_big() } else { a.as_big().clone() })
                .collect();
            r.extend((0..m).map(|j| {
                if j == i {
                    BigRational::from_integer(1.into())
                } else {
                    BigRational::zero()
                }
            }));
            rows.push(r);
            b.push(if flip { -rhs.as_big() } else { rhs.as_big().clone() });
        }
        Tableau {
            n,
            rows,
            b,
            basis: (n..n + m).collect(),
            active_cols: n + m,
        }
    }

    fn pivot(&mut self, r: usize, s: usize, d: &mut [BigRational], val: &mut BigRational) {
        let piv = self.rows[r][s].clone();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x /= &piv;
            }
        }
        self.b[r] /= &piv;
        let prow = self.rows[r].clone();
        let pb = self.b[r].clone();
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let f = self.rows[i][s].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in self.rows[i].iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.b[i] -= &f * &pb;
        }
        let f = d[s].clone();
        if !f.is_zero() {
            for (x, y) in d.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            *val += &f * &pb;
        }
        self.basis[r] = s;
    }

    /// Maximize with reduced costs `d` (entering when positive).
    /// Returns false when unbounded.
    fn iterate(&mut self, d: &mut [BigRational], val: &mut BigRational) -> bool {
        loop {
            let Some(s) = (0..self.active_cols).find(|&j| d[j].is_positive()) else {
                return true;
            };
            let mut best: Option<(usize, BigRational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][s];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.b[i] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, s, d, val),
            }
        }
    }

    fn phase_one(&mut self) -> bool {
        let m = self.rows.len();
        let width = self.n + m;
        // Objective: maximize -(sum of artificials).
        let mut d = vec![BigRational::zero(); width];
        let mut val = BigRational::zero();
        for i in 0..m {
            for j in 0..self.n {
                d[j] += &self.rows[i][j];
            }
            val -= &self.b[i];
        }
        self.iterate(&mut d, &mut val);
        if val.is_negative() {
            return false;
        }
        // Drive zero-valued artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= self.n {
                match (0..self.n).find(|&j| !self.rows[i][j].is_zero()) {
                    Some(j) => {
                        let mut dd = vec![BigRational::zero(); width];
                        let mut vv = BigRational::zero();
                        self.pivot(i, j, &mut dd, &mut vv);
                    }
                    None => {
                        self.rows.remove(i);
                        self.b.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        self.active_cols = self.n;
        true
    }

    fn phase_two(&mut self, cost: &[BigRational]) -> bool {
        let width = self.rows.first().map_or(self.n, |r| r.len());
        let mut d: Vec<BigRational> = (0..width)
            .map(|j| if j < self.n { cost[j].clone() } else { BigRational::zero() })
            .collect();
        let mut val = BigRational::zero();
        for i in 0..self.rows.len() {
            let cb = cost[self.basis[i]].clone();
            if cb.is_zero() {
                continue;
            }
            for j in 0..width {
                if !self.rows[i][j].is_zero() {
                    d[j] -= &cb * &self.rows[i][j];
                }
            }
            val += &cb * &self.b[i];
        }
        self.iterate(&mut d, &mut val)
    }

    fn point(&self) -> Vec<BigRational> {
        let mut x = vec![BigRational::zero(); self.n];
        for (i, &j) in self.basis.iter().enumerate() {
            if j < self.n {
                x[j] = self.b[i].clone();
            }
        }
        x
    }
}
