//! Structural predicates on `H`: the `k`-wise C₄-condition, uniformity,
//! balanced-uniform factors and the `(s, t, ρ)`-structuredness space.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{
    in_span, kernel_basis, lcm_of_denominators, primitive_integer_direction, solve_lp,
    LpOutcome, LpProblem, Rational, Sense,
};
use crate::coloring::{chromatic_number, coloring_stats, enumerate_labeled_colorings, LabeledColoring};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Outcome of a `k`-wise C₄ check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct C4Report {
    pub k: usize,
    pub holds: bool,
    /// A coloring and classes `(i, j, k, l)` with
    /// `e(A_i,A_j) + e(A_k,A_l) ≠ e(A_i,A_k) + e(A_j,A_l)`.
    pub counterexample: Option<(LabeledColoring, [usize; 4])>,
}

/// Decide the `k`-wise C₄-condition by enumerating every proper labeled
/// `k`-coloring (empty classes allowed). Stops at the first violation.
pub fn satisfies_c4(h: &Graph, k: usize) -> Result<C4Report> {
    if k < 4 {
        return Err(Error::contract("the C4-condition is defined for k >= 4"));
    }
    for f in enumerate_labeled_colorings(h, k)? {
        let e = coloring_stats(h, &f)?.e;
        if let Some(quad) = c4_violation(&e) {
            return Ok(C4Report {
                k,
                holds: false,
                counterexample: Some((f, quad)),
            });
        }
    }
    Ok(C4Report {
        k,
        holds: true,
        counterexample: None,
    })
}

/// The three pairings of each 4-subset must have equal sums.
fn c4_violation(e: &[Vec<usize>]) -> Option<[usize; 4]> {
    let k = e.len();
    for a in 0..k {
        for b in a + 1..k {
            for c in b + 1..k {
                for d in c + 1..k {
                    let p1 = e[a][b] + e[c][d];
                    let p2 = e[a][c] + e[b][d];
                    let p3 = e[a][d] + e[b][c];
                    if p1 != p2 {
                        return Some([a, b, c, d]);
                    }
                    if p1 != p3 {
                        return Some([a, b, d, c]);
                    }
                }
            }
        }
    }
    None
}

/// Outcome of [`is_uniform`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformReport {
    pub uniform: bool,
    /// A coloring and a pair `(i, j)` with `e_ij ≠ e(H)/C(r,2)`.
    pub counterexample: Option<(LabeledColoring, (usize, usize))>,
}

/// `H` is uniform if `e(A_i, A_j) = e(H)/C(r,2)` for every `r`-coloring and pair.
pub fn is_uniform(h: &Graph) -> Result<UniformReport> {
    let r = chromatic_number(h);
    if r < 2 {
        return Err(Error::contract("uniformity needs at least one edge"));
    }
    let pairs = r * (r - 1) / 2;
    for f in enumerate_labeled_colorings(h, r)? {
        let e = coloring_stats(h, &f)?.e;
        for i in 0..r {
            for j in i + 1..r {
                if e[i][j] * pairs != h.e() {
                    return Ok(UniformReport {
                        uniform: false,
                        counterexample: Some((f, (i, j))),
                    });
                }
            }
        }
    }
    Ok(UniformReport {
        uniform: true,
        counterexample: None,
    })
}

/// The solution space of `ρ(a_i + a_j) = s·X_ij + t·e_ij` over all proper
/// `r`-colorings and pairs, in the unknowns `(s, t, ρ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuredSolution {
    /// Basis of primitive integer triples `(s, t, ρ)`.
    pub basis: Vec<[Rational; 3]>,
    /// The distinct equations as rows `[X_ij, e_ij, −(a_i + a_j)]`.
    pub equations: Vec<[i64; 3]>,
}

impl StructuredSolution {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// True if `(s, t, ρ)` solves every equation.
    pub fn contains(&self, v: &[Rational; 3]) -> bool {
        self.equations.iter().all(|row| {
            let lhs: Rational = row.iter().zip(v).map(|(a, x)| Rational::from_int(*a) * x).sum();
            lhs.is_zero()
        })
    }

    /// `ρ` such that `(s, t, ρ)` is a solution, if one exists.
    pub fn rho_for(&self, s: &Rational, t: &Rational) -> Option<Rational> {
        // Every equation has a ρ-coefficient −(a_i + a_j) < 0, so ρ is forced.
        let row = self.equations.first()?;
        let rho = (Rational::from_int(row[0]) * s + Rational::from_int(row[1]) * t)
            / Rational::from_int(-row[2]);
        self.contains(&[s.clone(), t.clone(), rho.clone()]).then_some(rho)
    }

    /// True if `v` lies in the span of the basis (equivalent to [`Self::contains`]).
    pub fn spans(&self, v: &[Rational; 3]) -> bool {
        let b: Vec<Vec<Rational>> = self.basis.iter().map(|x| x.to_vec()).collect();
        in_span(&b, v)
    }
}

/// Compute the `(s, t, ρ)` solution space.
///
/// Structuredness quantifies over proper `r`-colorings with `r = χ(H)`; no
/// class of such a coloring can be empty.
pub fn structured_space(h: &Graph) -> Result<StructuredSolution> {
    let r = chromatic_number(h);
    if r < 2 {
        return Err(Error::contract("structuredness needs at least one edge"));
    }
    let mut rows = BTreeSet::new();
    for f in enumerate_labeled_colorings(h, r)? {
        let s = coloring_stats(h, &f)?;
        for i in 0..r {
            for j in i + 1..r {
                rows.insert([s.x[i][j] as i64, s.e[i][j] as i64, -((s.a[i] + s.a[j]) as i64)]);
            }
        }
    }
    let equations: Vec<[i64; 3]> = rows.into_iter().collect();
    let m: Vec<Vec<Rational>> = equations
        .iter()
        .map(|row| row.iter().map(|&x| Rational::from_int(x)).collect())
        .collect();
    let basis = kernel_basis(&m, 3)
        .into_iter()
        .map(|v| {
            let p = primitive_integer_direction(&v);
            [p[0].clone(), p[1].clone(), p[2].clone()]
        })
        .collect();
    Ok(StructuredSolution { basis, equations })
}

/// A balanced, non-uniform fractional `H`-factor: integer multiplicities of
/// labeled `r`-colorings of `H` whose class totals are all equal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonUniformFactor {
    pub copies: Vec<(LabeledColoring, BigInt)>,
    /// Total class sizes (all equal).
    pub class_totals: Vec<BigInt>,
    /// Total cross-class edge counts, indexed `[i][j]`.
    pub pair_totals: Vec<Vec<BigInt>>,
}

/// Outcome of [`exists_nonbalanced_uniform_factor`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonUniformReport {
    pub exists: bool,
    pub certificate: Option<NonUniformFactor>,
}

/// Decide whether some `H`-factor has a balanced `r`-coloring (induced by
/// coloring each copy) that is not uniform.
///
/// Variables are weights `x_f ≥ 0` on distinct labeled `r`-colorings with
/// `Σ x_f = 1` and all class totals `Σ x_f a_i(f)` equal. For every pair
/// `i < j` the functional `Σ x_f (e_ij(f) − e(H)/C(r,2))` is maximized and
/// minimized; a nonzero optimum exhibits a non-uniform mixture, and integer
/// scaling of it is the certificate.
pub fn exists_nonbalanced_uniform_factor(h: &Graph) -> Result<NonUniformReport> {
    let r = chromatic_number(h);
    if r < 2 {
        return Err(Error::contract("needs at least one edge"));
    }
    // Distinct (a, e) signatures with a representative coloring.
    let mut cols: BTreeMap<(Vec<usize>, Vec<Vec<usize>>), LabeledColoring> = BTreeMap::new();
    for f in enumerate_labeled_colorings(h, r)? {
        let s = coloring_stats(h, &f)?;
        cols.entry((s.a, s.e)).or_insert(f);
    }
    let cols: Vec<_> = cols.into_iter().collect();
    let m = cols.len();
    let pairs = (r * (r - 1) / 2) as i64;
    let target = Rational::new(h.e() as i64, pairs);
    let mut base = LpProblem::new(m, Sense::Maximize);
    for i in 1..r {
        let row = cols
            .iter()
            .map(|((a, _), _)| Rational::from_int(a[i] as i64 - a[0] as i64))
            .collect();
        base.add_row(row, Rational::zero());
    }
    base.add_row(vec![Rational::one(); m], Rational::one());
    for i in 0..r {
        for j in i + 1..r {
            for sense in [Sense::Maximize, Sense::Minimize] {
                let mut p = base.clone();
                p.sense = sense;
                p.objective = cols
                    .iter()
                    .map(|((_, e), _)| Rational::from_int(e[i][j] as i64) - &target)
                    .collect();
                match solve_lp(&p)? {
                    LpOutcome::Optimal { value, point } if !value.is_zero() => {
                        return Ok(NonUniformReport {
                            exists: true,
                            certificate: Some(build_certificate(&cols, &point, r)),
                        });
                    }
                    LpOutcome::Optimal { .. } => {}
                    LpOutcome::Infeasible => {
                        // No balanced mixture exists at all; nothing to test.
                        return Ok(NonUniformReport {
                            exists: false,
                            certificate: None,
                        });
                    }
                    LpOutcome::Unbounded => {
                        return Err(Error::contract("bounded LP reported unbounded"))
                    }
                }
            }
        }
    }
    Ok(NonUniformReport {
        exists: false,
        certificate: None,
    })
}

#[allow(clippy::type_complexity)]
fn build_certificate(
    cols: &[((Vec<usize>, Vec<Vec<usize>>), LabeledColoring)],
    point: &[Rational],
    r: usize,
) -> NonUniformFactor {
    let l = Rational::from(lcm_of_denominators(point));
    let mut copies = Vec::new();
    let mut class_totals = vec![BigInt::from(0); r];
    let mut pair_totals = vec![vec![BigInt::from(0); r]; r];
    for (((a, e), f), x) in cols.iter().zip(point) {
        if x.is_zero() {
            continue;
        }
        let w = (x * &l).to_bigint().expect("integral after scaling");
        for i in 0..r {
            class_totals[i] += &w * BigInt::from(a[i]);
            for j in 0..r {
                pair_totals[i][j] += &w * BigInt::from(e[i][j]);
            }
        }
        copies.push((f.clone(), w));
    }
    NonUniformFactor {
        copies,
        class_totals,
        pair_totals,
    }
}
