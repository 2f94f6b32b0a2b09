//! Non-template colorings of `K_r`, the parameter `δ₀(H)`, and butterfly
//! templatehood.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::frames::{frame_catalog, kr_edge_index, kr_orbits, ButterflyType, FrameSpec, KrColoring};
use super::{decide_from_columns, hom_value, Column, TemplateDecision};
use crate::arith::{lcm_of_denominators, solve_lp, LpOutcome, LpProblem, Rational, Sense};
use crate::coloring::{chromatic_number, enumerate_labeled_colorings, Homomorphism};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest `r` for which `K(H)` and `δ₀(H)` are computed.
pub const MAX_KR_ORDER: usize = 6;

/// The labeled `r`-colorings of `H` folded by fiber sizes and per-pair edge
/// counts, so that the columns of any coloring of `K_r` follow without
/// re-enumerating.
#[derive(Clone, Debug)]
pub struct KrColumns {
    pub r: usize,
    /// `(a, e, representative)` with `e` indexed by edge of `K_r`.
    pub signatures: Vec<(Vec<usize>, Vec<usize>, Homomorphism)>,
}

/// Precompute [`KrColumns`] for `H` with `r = χ(H)`.
pub fn kr_columns(h: &Graph) -> Result<KrColumns> {
    let r = chromatic_number(h);
    if r < 2 {
        return Err(Error::contract("H must have at least one edge"));
    }
    if r > MAX_KR_ORDER {
        return Err(Error::refused(format!(
            "colorings of K_r are enumerated only for r <= {MAX_KR_ORDER}, got r = {r}"
        )));
    }
    let mut sigs: BTreeMap<(Vec<usize>, Vec<usize>), Homomorphism> = BTreeMap::new();
    for f in enumerate_labeled_colorings(h, r)? {
        let a = f.class_sizes();
        let mut e = vec![0; r * (r - 1) / 2];
        for &(u, v) in h.edges() {
            e[kr_edge_index(r, f.assignment[u], f.assignment[v])] += 1;
        }
        sigs.entry((a, e)).or_insert(Homomorphism { map: f.assignment });
    }
    Ok(KrColumns {
        r,
        signatures: sigs.into_iter().map(|((a, e), rep)| (a, e, rep)).collect(),
    })
}

impl KrColumns {
    /// Folded template-LP columns of `H` into the coloring `c`.
    pub fn columns(&self, c: &KrColoring) -> Vec<Column> {
        let mut folded: BTreeMap<(Vec<usize>, i64), Homomorphism> = BTreeMap::new();
        for (a, e, rep) in &self.signatures {
            let g = e
                .iter()
                .enumerate()
                .map(|(idx, &cnt)| {
                    let bit = (c.mask >> idx & 1) as i64;
                    (2 * bit - 1) * cnt as i64
                })
                .sum();
            folded.entry((a.clone(), g)).or_insert_with(|| rep.clone());
        }
        folded
            .into_iter()
            .map(|((a, g), rep)| Column { a, g, rep })
            .collect()
    }
}

/// A point attaining `δ₀(H)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Delta0Witness {
    /// A non-template coloring, labeled so that `parts` ascend.
    pub coloring: KrColoring,
    /// Part ratios `a₁ ≤ … ≤ a_r`.
    pub parts: Vec<Rational>,
    /// Integer part sizes proportional to `parts`.
    pub part_sizes: Vec<BigInt>,
    /// A perfect `H`-factor of the blowup with `part_sizes`, of discrepancy 0.
    pub zero_disc_factor: Vec<(Homomorphism, BigInt)>,
}

impl Delta0Witness {
    /// Re-check the witness by direct arithmetic.
    pub fn verify(&self, h: &Graph) -> bool {
        let r = self.coloring.r;
        let frame = self.coloring.to_colored_graph();
        let mut cover = vec![BigInt::from(0); r];
        let mut disc = BigInt::from(0);
        for (phi, w) in &self.zero_disc_factor {
            if !phi.is_valid(h, frame.graph()) || *w <= BigInt::from(0) {
                return false;
            }
            for (v, s) in phi.fiber_sizes(r).into_iter().enumerate() {
                cover[v] += w * BigInt::from(s);
            }
            disc += w * BigInt::from(hom_value(h, &frame, phi));
        }
        let total: BigInt = self.part_sizes.iter().sum();
        let ratios_match = self.parts.iter().zip(&self.part_sizes).all(|(p, s)| {
            *p == Rational::from_bigints(s.clone(), total.clone())
        });
        cover == self.part_sizes
            && disc == BigInt::from(0)
            && ratios_match
            && self.parts.windows(2).all(|w| w[0] <= w[1])
    }

    /// `1 − a_r`.
    pub fn value(&self) -> Rational {
        Rational::one() - self.parts.last().cloned().unwrap_or_else(Rational::zero)
    }
}

/// Outcome of [`delta0`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Delta0Result {
    pub value: Rational,
    pub witness: Option<Delta0Witness>,
    /// `K(H)`, ascending by mask.
    pub nontemplate_colorings: Vec<KrColoring>,
}

/// Per-orbit analysis: templatehood of the representative and, for
/// non-templates, the `δ₀` LP optimum with its point.
struct OrbitAnalysis {
    representative: KrColoring,
    members: Vec<KrColoring>,
    template: bool,
    delta: Option<(Rational, Vec<Rational>, Vec<Column>)>,
}

/// The `δ₀` LP for one coloring, in the labeling-invariant form: maximize
/// `1 − t` subject to `a_i ≤ t`, `Σ a_i = 1`, `Σ x_f a_i(f) = a_i` and
/// `Σ x_f g(f) = 0`. Variables are `a (r), t, s (r), x (m)`.
fn delta_lp(columns: &[Column], r: usize) -> Result<Option<(Rational, Vec<Rational>)>> {
    let m = columns.len();
    let nv = 2 * r + 1 + m;
    let t = r;
    let xs = 2 * r + 1;
    let mut p = LpProblem::new(nv, Sense::Maximize);
    p.objective[t] = Rational::from_int(-1);
    for i in 0..r {
        let mut row = vec![Rational::zero(); nv];
        row[i] = Rational::from_int(-1);
        for (j, c) in columns.iter().enumerate() {
            row[xs + j] = Rational::from(c.a[i]);
        }
        p.add_row(row, Rational::zero());
    }
    let mut row = vec![Rational::zero(); nv];
    for x in row.iter_mut().take(r) {
        *x = Rational::one();
    }
    p.add_row(row, Rational::one());
    let mut row = vec![Rational::zero(); nv];
    for (j, c) in columns.iter().enumerate() {
        row[xs + j] = Rational::from_int(c.g);
    }
    p.add_row(row, Rational::zero());
    for i in 0..r {
        let mut row = vec![Rational::zero(); nv];
        row[i] = Rational::one();
        row[r + 1 + i] = Rational::one();
        row[t] = Rational::from_int(-1);
        p.add_row(row, Rational::zero());
    }
    match solve_lp(&p)? {
        LpOutcome::Optimal { value, point } => Ok(Some((Rational::one() + value, point))),
        LpOutcome::Infeasible => Ok(None),
        LpOutcome::Unbounded => Err(Error::contract("delta0 LP reported unbounded")),
    }
}

fn analyze_orbits(h: &Graph, with_delta: bool) -> Result<(usize, Vec<OrbitAnalysis>)> {
    let cols = kr_columns(h)?;
    let r = cols.r;
    let orbits = kr_orbits(r);
    let results: Result<Vec<OrbitAnalysis>> = orbits
        .into_par_iter()
        .map(|orbit| {
            let columns = cols.columns(&orbit.representative);
            let template = decide_from_columns(&columns, r)?.is_template;
            let delta = if template || !with_delta {
                None
            } else {
                delta_lp(&columns, r)?.map(|(v, p)| (v, p, columns))
            };
            Ok(OrbitAnalysis {
                representative: orbit.representative,
                members: orbit.members,
                template,
                delta,
            })
        })
        .collect();
    Ok((r, results?))
}

/// `K(H)`: every coloring of `K_r`, `r = χ(H)`, that is not a template for
/// `H`, ascending by mask. Templatehood is decided once per orbit under
/// vertex permutations and color swap.
pub fn nontemplate_colorings_kr(h: &Graph) -> Result<Vec<KrColoring>> {
    let (_, orbits) = analyze_orbits(h, false)?;
    let mut out: Vec<KrColoring> = orbits
        .into_iter()
        .filter(|o| !o.template)
        .flat_map(|o| o.members)
        .collect();
    out.sort();
    Ok(out)
}

/// Compute `δ₀(H)` with a witness whenever it is positive.
///
/// Among optimal colorings the orbit with the smallest representative mask
/// wins; the witness is that representative relabeled so that its part
/// ratios ascend (ties kept in index order).
pub fn delta0(h: &Graph) -> Result<Delta0Result> {
    let (r, orbits) = analyze_orbits(h, true)?;
    let mut nontemplate: Vec<KrColoring> = orbits
        .iter()
        .filter(|o| !o.template)
        .flat_map(|o| o.members.iter().copied())
        .collect();
    nontemplate.sort();

    // Orbits arrive ordered by representative, so the first maximum wins.
    let mut best: Option<&OrbitAnalysis> = None;
    for o in &orbits {
        if let Some((v, _, _)) = &o.delta {
            if best.map_or(true, |b| v > &b.delta.as_ref().expect("set").0) {
                best = Some(o);
            }
        }
    }
    let Some(best) = best else {
        return Ok(Delta0Result {
            value: Rational::zero(),
            witness: None,
            nontemplate_colorings: nontemplate,
        });
    };
    let (value, point, columns) = best.delta.as_ref().expect("set");
    let a = &point[..r];
    let xs = &point[2 * r + 1..];

    // Relabel so that the part ratios ascend: old vertex order[k] becomes k.
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by(|&i, &j| a[i].cmp(&a[j]).then(i.cmp(&j)));
    let mut perm = vec![0; r];
    for (k, &old) in order.iter().enumerate() {
        perm[old] = k;
    }
    let mut scale_inputs: Vec<Rational> = a.to_vec();
    scale_inputs.extend(xs.iter().cloned());
    let scale = Rational::from(lcm_of_denominators(&scale_inputs));
    let parts: Vec<Rational> = order.iter().map(|&i| a[i].clone()).collect();
    let part_sizes = parts
        .iter()
        .map(|p| (p * &scale).to_bigint().expect("integral"))
        .collect();
    let zero_disc_factor = columns
        .iter()
        .zip(xs)
        .filter(|(_, x)| x.is_positive())
        .map(|(c, x)| {
            let map = c.rep.map.iter().map(|&v| perm[v]).collect();
            (Homomorphism { map }, (x * &scale).to_bigint().expect("integral"))
        })
        .collect();
    let witness = Delta0Witness {
        coloring: best.representative.permuted(&perm),
        parts,
        part_sizes,
        zero_disc_factor,
    };
    debug_assert_eq!(&witness.value(), value);
    Ok(Delta0Result {
        value: value.clone(),
        witness: Some(witness),
        nontemplate_colorings: nontemplate,
    })
}

/// Templatehood of one butterfly type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ButterflyDecision {
    pub kind: ButterflyType,
    pub decision: TemplateDecision,
}

/// Outcome of [`butterfly_status`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ButterflyStatus {
    pub decisions: Vec<ButterflyDecision>,
    /// True if at least one butterfly is not a template.
    pub some_nontemplate: bool,
}

/// Decide templatehood of all three butterfly types for a 3-chromatic `H`.
pub fn butterfly_status(h: &Graph) -> Result<ButterflyStatus> {
    if chromatic_number(h) != 3 {
        return Err(Error::contract("butterflies are only tested for 3-chromatic H"));
    }
    let decisions = ButterflyType::ALL
        .par_iter()
        .map(|&kind| {
            let frame = frame_catalog(&FrameSpec::Butterfly(kind))?;
            Ok(ButterflyDecision {
                kind,
                decision: super::is_template(&frame, h)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let some_nontemplate = decisions.iter().any(|d| !d.decision.is_template);
    Ok(ButterflyStatus {
        decisions,
        some_nontemplate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use crate::families;
    use crate::template::is_template;

    #[test]
    fn k3_all_colorings_nontemplate_and_delta0_zero() {
        let h = Graph::complete(3);
        assert_eq!(nontemplate_colorings_kr(&h).unwrap().len(), 8);
        let d = delta0(&h).unwrap();
        assert_eq!(d.value, Rational::zero());
        assert!(d.witness.is_none());
    }

    #[test]
    fn k4_delta0() {
        let d = delta0(&Graph::complete(4)).unwrap();
        assert_eq!(d.value, q(3, 4));
        let w = d.witness.unwrap();
        assert!(w.verify(&Graph::complete(4)));
        assert_eq!(w.coloring.discrepancy(), 0);
    }

    #[test]
    fn kr_columns_agree_with_generic_enumeration() {
        let h = families::k4_minus_edge();
        let cols = kr_columns(&h).unwrap();
        for c in KrColoring::all(3) {
            let fast = decide_from_columns(&cols.columns(&c), 3).unwrap();
            let slow = is_template(&c.to_frame(), &h).unwrap();
            assert_eq!(fast.is_template, slow.is_template);
            assert_eq!(fast.lp_value, slow.lp_value);
        }
    }

    #[test]
    fn bipartite_delta0_is_zero() {
        for h in [families::path(4), families::cycle(6), families::star(3)] {
            assert_eq!(delta0(&h).unwrap().value, Rational::zero());
        }
    }

    #[test]
    fn k3_butterflies_are_not_templates() {
        let s = butterfly_status(&Graph::complete(3)).unwrap();
        assert!(s.decisions.iter().all(|d| !d.decision.is_template));
        assert!(s.some_nontemplate);
        assert!(butterfly_status(&Graph::complete(4)).is_err());
    }
}
