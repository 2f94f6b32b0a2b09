//! Templatehood of colored frames, the set `K(H)` of non-template colorings
//! of `K_r`, the parameter `δ₀(H)`, and the frame catalog.
//!
//! A frame `(F, c)` is a template for `H` when some blowup of `F` has two
//! perfect `H`-factors of different discrepancy. This is decided by a linear
//! program over the distinct `(a, g)` signatures of homomorphisms `H → F`,
//! where `a` is the fiber-size vector and `g = Σ_{uv ∈ E(H)} c(φ(u)φ(v))`.

mod delta0;
mod frames;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub use delta0::{
    butterfly_status, delta0, kr_columns, nontemplate_colorings_kr, ButterflyDecision,
    ButterflyStatus, Delta0Result, Delta0Witness, KrColumns, MAX_KR_ORDER,
};
pub use frames::{
    clique_pair_graph, frame_catalog, kr_edge_index, kr_orbits, permutations, ButterflyType,
    Frame, FrameSpec, KrColoring, KrOrbit,
};

use crate::arith::{lcm_of_denominators, solve_lp, LpOutcome, LpProblem, Rational, Sense};
use crate::coloring::{enumerate_homomorphisms, Homomorphism};
use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Graph};

/// One folded LP column: every homomorphism with fiber sizes `a` and value
/// `g`, represented by `rep`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Column {
    pub a: Vec<usize>,
    pub g: i64,
    pub rep: Homomorphism,
}

/// `g(φ)` for a homomorphism into a colored frame.
pub fn hom_value(h: &Graph, frame: &ColoredGraph, phi: &Homomorphism) -> i64 {
    h.edges()
        .iter()
        .map(|&(u, v)| {
            frame
                .color(phi.map[u], phi.map[v])
                .expect("homomorphism maps edges to edges")
                .value()
        })
        .sum()
}

/// Enumerate homomorphisms `h → frame` and fold them by `(a, g)`.
pub fn frame_columns(h: &Graph, frame: &Frame) -> Result<Vec<Column>> {
    let mut folded: BTreeMap<(Vec<usize>, i64), Homomorphism> = BTreeMap::new();
    for phi in enumerate_homomorphisms(h, frame.graph())? {
        let a = phi.fiber_sizes(frame.n());
        let g = hom_value(h, &frame.colored, &phi);
        folded.entry((a, g)).or_insert(phi);
    }
    Ok(folded
        .into_iter()
        .map(|((a, g), rep)| Column { a, g, rep })
        .collect())
}

/// Integer witness of templatehood: part sizes of a blowup and two perfect
/// `H`-factors of it, each given as homomorphisms with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplateCertificate {
    pub part_sizes: Vec<BigInt>,
    pub factor_a: Vec<(Homomorphism, BigInt)>,
    pub factor_b: Vec<(Homomorphism, BigInt)>,
    pub disc_a: BigInt,
    pub disc_b: BigInt,
}

impl TemplateCertificate {
    /// Re-check the certificate by direct arithmetic: every homomorphism is
    /// valid, both factors cover each part exactly, the stated discrepancies
    /// are correct and they differ.
    pub fn verify(&self, h: &Graph, frame: &Frame) -> bool {
        let check = |factor: &[(Homomorphism, BigInt)], disc: &BigInt| -> bool {
            let mut cover = vec![BigInt::from(0); frame.n()];
            let mut total = BigInt::from(0);
            for (phi, w) in factor {
                if !phi.is_valid(h, frame.graph()) || *w <= BigInt::from(0) {
                    return false;
                }
                for (v, s) in phi.fiber_sizes(frame.n()).into_iter().enumerate() {
                    cover[v] += w * BigInt::from(s);
                }
                total += w * BigInt::from(hom_value(h, &frame.colored, phi));
            }
            cover == self.part_sizes && &total == disc
        };
        self.part_sizes.len() == frame.n()
            && check(&self.factor_a, &self.disc_a)
            && check(&self.factor_b, &self.disc_b)
            && self.disc_a != self.disc_b
    }
}

/// Outcome of [`is_template`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplateDecision {
    pub is_template: bool,
    /// Optimum of the LP; 0 when there is no homomorphism.
    pub lp_value: Rational,
    pub certificate: Option<TemplateCertificate>,
    pub note: Option<String>,
}

/// Solve the template LP over the given columns for a frame on `nf` vertices.
/// Returns the optimum and the optimal point `(a, x, y)`.
pub(crate) fn template_lp(columns: &[Column], nf: usize) -> Result<(Rational, Vec<Rational>)> {
    let m = columns.len();
    let nv = nf + 2 * m;
    let mut p = LpProblem::new(nv, Sense::Maximize);
    for (j, c) in columns.iter().enumerate() {
        p.objective[nf + j] = Rational::from_int(c.g);
        p.objective[nf + m + j] = Rational::from_int(-c.g);
    }
    for v in 0..nf {
        for offset in [nf, nf + m] {
            let mut row = vec![Rational::zero(); nv];
            row[v] = Rational::from_int(-1);
            for (j, c) in columns.iter().enumerate() {
                row[offset + j] = Rational::from(c.a[v]);
            }
            p.add_row(row, Rational::zero());
        }
    }
    let mut row = vec![Rational::zero(); nv];
    for x in row.iter_mut().take(nf) {
        *x = Rational::one();
    }
    p.add_row(row, Rational::one());
    match solve_lp(&p)? {
        LpOutcome::Optimal { value, point } => Ok((value, point)),
        LpOutcome::Infeasible => Err(Error::contract("template LP with columns is infeasible")),
        LpOutcome::Unbounded => Err(Error::contract("template LP reported unbounded")),
    }
}

fn scaled_factor(columns: &[Column], weights: &[Rational], scale: &BigInt) -> (Vec<(Homomorphism, BigInt)>, BigInt) {
    let mut factor = Vec::new();
    let mut disc = BigInt::from(0);
    for (c, w) in columns.iter().zip(weights) {
        if w.is_positive() {
            let mult = (w * &Rational::from(scale.clone())).to_bigint().expect("integral");
            disc += &mult * BigInt::from(c.g);
            factor.push((c.rep.clone(), mult));
        }
    }
    (factor, disc)
}

/// Decide templatehood from precomputed columns.
pub(crate) fn decide_from_columns(columns: &[Column], nf: usize) -> Result<TemplateDecision> {
    if columns.is_empty() {
        return Ok(TemplateDecision {
            is_template: false,
            lp_value: Rational::zero(),
            certificate: None,
            note: Some("no-embedding".into()),
        });
    }
    let (value, point) = template_lp(columns, nf)?;
    if !value.is_positive() {
        return Ok(TemplateDecision {
            is_template: false,
            lp_value: value,
            certificate: None,
            note: None,
        });
    }
    let m = columns.len();
    let scale = lcm_of_denominators(&point);
    let big = Rational::from(scale.clone());
    let part_sizes = point[..nf]
        .iter()
        .map(|a| (a * &big).to_bigint().expect("integral"))
        .collect();
    let (factor_a, disc_a) = scaled_factor(columns, &point[nf..nf + m], &scale);
    let (factor_b, disc_b) = scaled_factor(columns, &point[nf + m..], &scale);
    Ok(TemplateDecision {
        is_template: true,
        lp_value: value,
        certificate: Some(TemplateCertificate {
            part_sizes,
            factor_a,
            factor_b,
            disc_a,
            disc_b,
        }),
        note: None,
    })
}

/// Decide whether `frame` is a template for `h`.
pub fn is_template(frame: &Frame, h: &Graph) -> Result<TemplateDecision> {
    if h.e() == 0 {
        return Err(Error::contract("H must have at least one edge"));
    }
    if frame.n() == 0 {
        return Err(Error::contract("the frame must be nonempty"));
    }
    let columns = frame_columns(h, frame)?;
    decide_from_columns(&columns, frame.n())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::Sign;

    fn decide(spec: &str, h: &Graph) -> TemplateDecision {
        let frame = frame_catalog(&spec.parse().unwrap()).unwrap();
        let d = is_template(&frame, h).unwrap();
        if let Some(c) = &d.certificate {
            assert!(c.verify(h, &frame), "certificate for {spec} fails to verify");
        }
        d
    }

    #[test]
    fn edge_pair_is_template_for_p3_plus_k2() {
        let h = families::path(3).disjoint_union(&Graph::complete(2));
        assert!(decide("edge_pair:+-", &h).is_template);
    }

    #[test]
    fn mono_triangle_is_not_template_for_k3() {
        assert!(!decide("mono:3,+", &Graph::complete(3)).is_template);
    }

    #[test]
    fn star_k4_is_not_template_for_k4() {
        assert!(!decide("star:4,+", &Graph::complete(4)).is_template);
    }

    #[test]
    fn star_k3_is_not_template_for_k4_minus_edge() {
        let d = decide("star:3,+", &families::k4_minus_edge());
        assert!(!d.is_template);
        assert!(d.lp_value.is_zero());
    }

    #[test]
    fn no_embedding_is_reported() {
        let d = decide("edge_pair:++", &Graph::complete(3));
        assert!(!d.is_template);
        assert_eq!(d.note.as_deref(), Some("no-embedding"));
    }

    #[test]
    fn star_k3_is_template_for_octahedron_minus_edge() {
        let h = families::octahedron_minus_edge();
        assert!(decide("star:3,+", &h).is_template);
        assert!(!decide("mono:3,+", &h).is_template);
    }

    #[test]
    fn color_swap_preserves_decision() {
        let h = families::k4_minus_edge();
        for spec in ["star:3,+", "mono:3,-", "butterfly:1", "butterfly:2", "butterfly:3"] {
            let f = frame_catalog(&spec.parse().unwrap()).unwrap();
            let a = is_template(&f, &h).unwrap();
            let b = is_template(&f.negated(), &h).unwrap();
            assert_eq!(a.is_template, b.is_template, "{spec}");
            assert_eq!(a.lp_value, b.lp_value, "{spec}");
        }
    }

    #[test]
    fn mixed_frame_value() {
        let f = Frame::new(ColoredGraph::from_colored_edges(3, [(0, 1, Sign::Plus), (1, 2, Sign::Minus)]).unwrap());
        // P3 into a two-colored path: the middle vertex maps to 1 or to an end.
        let d = is_template(&f, &families::path(3)).unwrap();
        assert!(d.is_template);
    }
}
