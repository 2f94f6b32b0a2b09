//! The auxiliary graph `H*(H, η)`: a complete `r`-partite graph with a
//! perfect `H`-factor whose critical chromatic number sits just above
//! `α(H) = max{δ₀(H), 1 − 1/χ*(H)}`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::{bezout_fold, gcd_all, simplest_in_interval, Rational};
use crate::coloring::{enumerate_labeled_colorings, Homomorphism, LabeledColoring};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::params::chromatic_profile;
use crate::template::delta0;

/// The graph itself: `H` for `r = 2`, otherwise complete `r`-partite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HStarGraph {
    Verbatim(Graph),
    CompletePartite(Vec<u64>),
}

/// Which construction produced the graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HStarPath {
    /// `r = 2`.
    Verbatim,
    /// `α + η/4 ≥ (r−1)/r`: the `|H|`-blowup of `K_r`.
    Balanced,
    /// The perturbed blowup of the two-size graph `B₃`.
    Perturbed,
}

/// One block of the factor plan: `multiplicity` disjoint copies of a
/// complete `r`-partite block, each tiled by `copies`. A copy `(φ, w)`
/// stands for `w` copies of `H` placing vertex `v` in part `φ.map[v]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorBlock {
    pub label: String,
    pub multiplicity: u64,
    pub copies: Vec<(Homomorphism, u64)>,
}

impl FactorBlock {
    /// Part sizes of one copy of the block.
    pub fn part_sizes(&self, r: usize) -> Result<Vec<u64>> {
        let mut sizes = vec![0u64; r];
        for (phi, w) in &self.copies {
            for (x, f) in phi.fiber_sizes(r).into_iter().enumerate() {
                sizes[x] = (f as u64)
                    .checked_mul(*w)
                    .and_then(|t| t.checked_add(sizes[x]))
                    .ok_or_else(overflow)?;
            }
        }
        Ok(sizes)
    }
}

/// Quantities of the perturbed construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerturbedInternals {
    pub beta: Rational,
    pub k: u64,
    pub ell: u64,
    /// Part sizes of `B₃`.
    pub b3: Vec<u64>,
    /// Pairs `(s, x_s)` with `Σ x_s·s = 1` over the nonzero gaps `s`.
    pub bezout: Vec<(u64, i64)>,
    /// Part sizes of the correction block `B₄`.
    pub a: Vec<u64>,
    pub m: u64,
}

/// The five properties `H*` must have, each checked exactly.
/// `None` marks a property that holds vacuously.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HStarChecks {
    pub complete_partite: bool,
    pub perfect_factor: bool,
    pub chi_cr_window: bool,
    pub hcf_one: Option<bool>,
    pub min_degree_above_delta0: Option<bool>,
}

impl HStarChecks {
    pub fn all_hold(&self) -> bool {
        self.complete_partite
            && self.perfect_factor
            && self.chi_cr_window
            && self.hcf_one != Some(false)
            && self.min_degree_above_delta0 != Some(false)
    }
}

/// Output of [`build_h_star`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HStarResult {
    pub r: usize,
    pub eta: Rational,
    pub path: HStarPath,
    pub graph: HStarGraph,
    pub delta0: Rational,
    pub alpha: Rational,
    pub sigma: usize,
    pub internals: Option<PerturbedInternals>,
    /// Empty on the verbatim path, where `H` is its own factor.
    pub factor_plan: Vec<FactorBlock>,
    /// Only meaningful for `r ≥ 3`.
    pub checks: Option<HStarChecks>,
}

impl HStarResult {
    pub fn part_sizes(&self) -> Option<&[u64]> {
        match &self.graph {
            HStarGraph::CompletePartite(b) => Some(b),
            HStarGraph::Verbatim(_) => None,
        }
    }

    pub fn order(&self) -> u64 {
        match &self.graph {
            HStarGraph::CompletePartite(b) => b.iter().sum(),
            HStarGraph::Verbatim(g) => g.n() as u64,
        }
    }
}

fn overflow() -> Error {
    Error::refused("H* part sizes overflow 64-bit integers")
}

fn rat(x: u64) -> Rational {
    Rational::from(BigInt::from(x))
}

fn to_u64(x: &Rational) -> Result<u64> {
    x.to_bigint()
        .and_then(|b| b.to_u64())
        .ok_or_else(|| Error::contradiction(format!("{x} is not a nonnegative 64-bit integer")))
}

fn mul(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b).ok_or_else(overflow)
}

fn add(a: u64, b: u64) -> Result<u64> {
    a.checked_add(b).ok_or_else(overflow)
}

/// `(r−1)|J|/(|J| − σ(J))` for the complete multipartite graph `J` with
/// parts `b`.
pub fn chi_cr_of_parts(b: &[u64]) -> Rational {
    let total: u64 = b.iter().sum();
    let smallest = *b.iter().min().expect("at least one part");
    rat((b.len() as u64 - 1) * total) / rat(total - smallest)
}

/// Whether `hcf(J) = 1` for the complete `r`-partite graph `J`, `r ≥ 3`,
/// with parts `b`: its only coloring up to relabeling has these parts.
pub fn parts_hcf_is_one(b: &[u64]) -> bool {
    let mut s = b.to_vec();
    s.sort_unstable();
    gcd_all(s.windows(2).map(|w| w[1] - w[0])) == 1
}

/// A homomorphism into `K_r` sending class `j` of `f` to part `target[j]`.
fn placement(f: &LabeledColoring, target: &[usize]) -> Homomorphism {
    Homomorphism {
        map: f.assignment.iter().map(|&c| target[c]).collect(),
    }
}

/// Relabel `f` so that its classes are `order[0], order[1], …`.
fn reorder(f: &LabeledColoring, order: &[usize]) -> LabeledColoring {
    let mut perm = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    f.permute_classes(&perm)
}

/// Construct `H*(H, η)` for `0 < η ≤ 1`.
pub fn build_h_star(h: &Graph, eta: &Rational) -> Result<HStarResult> {
    if !eta.is_positive() || eta > &Rational::one() {
        return Err(Error::contract(format!("eta must lie in (0, 1], got {eta}")));
    }
    let profile = chromatic_profile(h)?;
    let r = profile.r;
    let d0 = delta0(h)?.value;
    let alpha = d0.clone().max(Rational::one() - profile.chi_star.recip());
    let mut result = HStarResult {
        r,
        eta: eta.clone(),
        path: HStarPath::Verbatim,
        graph: HStarGraph::Verbatim(h.clone()),
        delta0: d0.clone(),
        alpha: alpha.clone(),
        sigma: profile.sigma,
        internals: None,
        factor_plan: Vec::new(),
        checks: None,
    };
    if r == 2 {
        return Ok(result);
    }

    let n = h.n() as u64;
    let sigma = profile.sigma as u64;
    let colorings: Vec<LabeledColoring> = enumerate_labeled_colorings(h, r)?.collect();
    // A coloring with a smallest class last.
    let base = {
        let f = colorings
            .iter()
            .find(|f| f.class_sizes().iter().min() == Some(&profile.sigma))
            .expect("sigma is attained");
        let sizes = f.class_sizes();
        let mut order: Vec<usize> = (0..r).collect();
        order.sort_by_key(|&c| (sizes[c] == profile.sigma, c));
        reorder(f, &order)
    };
    let rotations_b2: Vec<(Homomorphism, u64)> = (0..r)
        .map(|i| {
            let target: Vec<usize> = (0..r).map(|j| (i + j) % r).collect();
            (placement(&base, &target), 1)
        })
        .collect();

    let threshold = rat(r as u64 - 1) / rat(r as u64);
    let quarter = eta / Rational::from(4i64);
    if &alpha + &quarter >= threshold {
        result.path = HStarPath::Balanced;
        result.graph = HStarGraph::CompletePartite(vec![n; r]);
        result.factor_plan = vec![FactorBlock {
            label: "B2".into(),
            multiplicity: 1,
            copies: rotations_b2,
        }];
        result.checks = Some(check(&result)?);
        return Ok(result);
    }

    // B₃: r−1 parts of k|H| + ℓ(|H|−σ) and one of k|H| + ℓ(r−1)σ with
    // 1/χ_cr(B₃) = β.
    let one = Rational::one();
    let beta = simplest_in_interval(
        &(&one - &alpha - eta / Rational::from(5i64)),
        &(&one - &alpha - eta / Rational::from(10i64)),
    )?;
    let (nr, rr) = (rat(n), rat(r as u64));
    let qv = (&nr - rat(sigma) - rat(r as u64 - 1) * &nr * &beta) / (&rr * &nr * &beta - &nr);
    if !qv.is_positive() {
        return Err(Error::contradiction(format!("k/ℓ = {qv} is not positive")));
    }
    let ell = to_u64(&Rational::from(qv.denom().clone()))?;
    let k = to_u64(&Rational::from(qv.numer().clone()))?;
    let big = add(mul(k, n)?, mul(ell, n - sigma)?)?;
    let small = add(mul(k, n)?, mul(ell, mul(r as u64 - 1, sigma)?)?)?;
    let mut b3 = vec![big; r - 1];
    b3.push(small);

    // B₁: r−1 rotations of the first r−1 classes with the smallest class fixed.
    let rotations_b1: Vec<(Homomorphism, u64)> = (0..r - 1)
        .map(|i| {
            let mut target: Vec<usize> = (0..r - 1).map(|j| (i + j) % (r - 1)).collect();
            target.push(r - 1);
            (placement(&base, &target), 1)
        })
        .collect();

    // B₄: Bézout combination of colorings with prescribed gaps between the
    // classes placed on parts 1 and 2.
    let gaps: Vec<u64> = profile.d_set.iter().copied().filter(|&s| s > 0).collect();
    let (g, xs) = bezout_fold(&gaps.iter().map(|&s| s as i64).collect::<Vec<_>>());
    if g != 1 {
        return Err(Error::contradiction(format!("hcf of the gap set is {g}, expected 1")));
    }
    let mut a = vec![0u64; r];
    let mut b4_copies = Vec::new();
    let mut bezout = Vec::new();
    for (&s, &x) in gaps.iter().zip(&xs) {
        bezout.push((s, x));
        if x == 0 {
            continue;
        }
        let (f, order) = colorings
            .iter()
            .find_map(|f| {
                let sizes = f.class_sizes();
                let mut order: Vec<usize> = (0..r).collect();
                order.sort_by_key(|&c| (sizes[c], c));
                let j = (0..r - 1).find(|&j| (sizes[order[j + 1]] - sizes[order[j]]) as u64 == s)?;
                // Larger class first, then the smaller, then the rest.
                let head = [order[j + 1], order[j]];
                let mut chosen = head.to_vec();
                chosen.extend(order.iter().copied().filter(|c| !head.contains(c)));
                Some((f, chosen))
            })
            .expect("every gap is realised by some coloring");
        let f = reorder(f, &order);
        let sizes = f.class_sizes();
        let w = x.unsigned_abs();
        let mut target: Vec<usize> = (0..r).collect();
        if x < 0 {
            target.swap(0, 1);
        }
        for (c, &t) in target.iter().enumerate() {
            a[t] = add(a[t], mul(w, sizes[c] as u64)?)?;
        }
        b4_copies.push((placement(&f, &target), w));
    }
    if a[0] != a[1] + 1 {
        return Err(Error::contradiction(format!("a₁ − a₂ ≠ 1 for a = {a:?}")));
    }
    let a_total: u64 = a.iter().sum();
    let b3_total: u64 = b3.iter().sum();

    // Smallest M ≥ 1 with both perturbation bounds.
    let (ar, b3r, b3t, at) = (rat(a[r - 1]), rat(b3[r - 1]), rat(b3_total), rat(a_total));
    let drift = (&at * &b3r - &ar * &b3t).abs();
    let twentieth = eta / Rational::from(20i64);
    let tenth = eta / Rational::from(10i64);
    let mut m = 1u64;
    loop {
        let denom_total = &at + &at * rat(m) * &b3t;
        let chi_shift = &drift / (rat(r as u64 - 1) * &b3t * &denom_total);
        let degree_shift = (&one - &beta) * &at / &denom_total;
        if chi_shift <= twentieth && degree_shift < tenth {
            break;
        }
        m = add(m, 1)?;
    }

    let scale = mul(a_total, m)?;
    let mut b = Vec::with_capacity(r);
    for i in 0..r {
        b.push(add(a[i], mul(scale, b3[i])?)?);
    }
    result.path = HStarPath::Perturbed;
    result.graph = HStarGraph::CompletePartite(b);
    result.internals = Some(PerturbedInternals {
        beta,
        k,
        ell,
        b3,
        bezout,
        a,
        m,
    });
    result.factor_plan = vec![
        FactorBlock {
            label: "B4".into(),
            multiplicity: 1,
            copies: b4_copies,
        },
        FactorBlock {
            label: "B2".into(),
            multiplicity: mul(scale, k)?,
            copies: rotations_b2,
        },
        FactorBlock {
            label: "B1".into(),
            multiplicity: mul(scale, ell)?,
            copies: rotations_b1,
        },
    ];
    result.checks = Some(check(&result)?);
    Ok(result)
}

/// Check the five properties of an `r ≥ 3` result exactly.
fn check(res: &HStarResult) -> Result<HStarChecks> {
    let r = res.r;
    let b = res.part_sizes().expect("r >= 3 results are complete partite");
    let complete_partite = b.len() == r && b.iter().all(|&x| x > 0);
    let mut covered = vec![0u64; r];
    for block in &res.factor_plan {
        let sizes = block.part_sizes(r)?;
        for (c, s) in covered.iter_mut().zip(sizes) {
            *c = add(*c, mul(block.multiplicity, s)?)?;
        }
    }
    let perfect_factor = covered == b;
    let inv = Rational::one() - chi_cr_of_parts(b).recip();
    let quarter = &res.eta / Rational::from(4i64);
    let chi_cr_window = res.alpha <= inv && inv <= &res.alpha + &quarter;
    let threshold = rat(r as u64 - 1) / rat(r as u64);
    let hcf_one = (&res.alpha + &quarter < threshold).then(|| parts_hcf_is_one(b));
    let total: u64 = b.iter().sum();
    let min_degree = total - b.iter().max().expect("nonempty");
    let min_degree_above_delta0 = (res.delta0 < threshold).then(|| rat(min_degree) / rat(total) > res.delta0);
    Ok(HStarChecks {
        complete_partite,
        perfect_factor,
        chi_cr_window,
        hcf_one,
        min_degree_above_delta0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use crate::families;

    #[test]
    fn bipartite_is_verbatim() {
        let p3 = families::path(3);
        let res = build_h_star(&p3, &q(1, 10)).unwrap();
        assert_eq!(res.path, HStarPath::Verbatim);
        assert_eq!(res.graph, HStarGraph::Verbatim(p3));
        assert!(res.checks.is_none());
    }

    #[test]
    fn triangle_takes_the_balanced_shortcut() {
        let res = build_h_star(&Graph::complete(3), &q(1, 10)).unwrap();
        assert_eq!(res.path, HStarPath::Balanced);
        assert_eq!(res.alpha, q(2, 3));
        assert_eq!(res.part_sizes().unwrap(), &[3, 3, 3]);
        assert!(res.checks.unwrap().all_hold());
    }

    #[test]
    fn k4_minus_edge_full_construction() {
        let res = build_h_star(&families::k4_minus_edge(), &q(1, 10)).unwrap();
        assert_eq!(res.path, HStarPath::Perturbed);
        assert_eq!(res.alpha, q(5, 8));
        let int = res.internals.as_ref().unwrap();
        assert_eq!(int.beta, q(4, 11));
        assert_eq!((int.k, int.ell, int.m), (1, 4, 2));
        assert_eq!(int.b3, vec![16, 16, 12]);
        assert_eq!(int.a, vec![2, 1, 1]);
        assert_eq!(res.part_sizes().unwrap(), &[130, 129, 97]);
        assert_eq!(res.order(), 356);
        assert!(res.checks.unwrap().all_hold());
    }

    #[test]
    fn checks_hold_across_small_graphs_and_etas() {
        let graphs = [
            families::k4_minus_edge(),
            families::octahedron_minus_edge(),
            families::complete_multipartite(&[1, 2, 2]),
            families::complete_multipartite(&[1, 1, 3]),
            Graph::complete(4),
            families::cycle(5),
        ];
        for h in &graphs {
            for eta in [q(1, 1), q(1, 3), q(1, 10), q(1, 50)] {
                let res = build_h_star(h, &eta).unwrap();
                assert!(res.checks.as_ref().unwrap().all_hold(), "{h:?} at {eta}: {res:?}");
            }
        }
    }

    #[test]
    fn eta_out_of_range_is_a_contract_error() {
        let h = Graph::complete(3);
        assert!(matches!(build_h_star(&h, &q(0, 1)), Err(Error::Contract(_))));
        assert!(matches!(build_h_star(&h, &q(3, 2)), Err(Error::Contract(_))));
    }
}
