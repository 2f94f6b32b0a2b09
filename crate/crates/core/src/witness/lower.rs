//! Host constructions certifying lower bounds on the discrepancy threshold:
//! colored graphs of large minimum degree in which every perfect `H`-factor
//! has the same (usually zero) discrepancy, or none exists.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::coloring::chromatic_number;
use crate::error::{Error, Result};
use crate::graph::{graph_basics, ColoredGraph, Graph, Sign};
use crate::structure::{satisfies_c4, structured_space};
use crate::template::{frame_catalog, is_template, ButterflyType, Frame, FrameSpec};

use super::blowup::{blowup, BlowupSpec};

/// Which construction to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "name")]
pub enum LowerBoundCase {
    /// Regular `H`: equal blowup of the `(K_4, +)`-star.
    RegularStar,
    /// Equal component densities: two disjoint cliques of opposite colors.
    ComponentDensity,
    /// A non-template butterfly, blown up with weights `(3, 1, 1, 1, 1)/7`.
    /// `None` picks the first non-template type.
    Butterfly { kind: Option<ButterflyType> },
    /// The `k`-wise C₄-condition with `k ≡ 1 (mod 4)`: equal blowup of a
    /// coloring of `K_k` whose positive graph is `(k−1)/2`-regular.
    Circulant { k: usize },
    /// Regular `H` with the `k`-wise C₄-condition, `k ≢ 1 (mod 4)`.
    RegularC4 { k: usize },
    /// `r = 3`: the `(K_3, +)`-star blown up with sizes `(2m, 3m, 3m)`.
    StructuredTriangle,
    /// `r ≥ 6`, `r ≡ 2, 3 (mod 4)`, structured `H`: a blowup of `K_r` with a
    /// positive star at one small part and discrepancy one overall.
    HighDegree,
}

impl fmt::Display for LowerBoundCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LowerBoundCase::RegularStar => f.write_str("regular-star"),
            LowerBoundCase::ComponentDensity => f.write_str("component-density"),
            LowerBoundCase::Butterfly { kind: None } => f.write_str("butterfly"),
            LowerBoundCase::Butterfly { kind: Some(t) } => write!(f, "butterfly:{}", t.number()),
            LowerBoundCase::Circulant { k } => write!(f, "circulant:{k}"),
            LowerBoundCase::RegularC4 { k } => write!(f, "regular-c4:{k}"),
            LowerBoundCase::StructuredTriangle => f.write_str("structured-triangle"),
            LowerBoundCase::HighDegree => f.write_str("high-degree"),
        }
    }
}

impl FromStr for LowerBoundCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::parse(0, format!("unknown lower-bound case {s:?}"));
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a.trim().parse::<usize>().map_err(|_| bad())?)),
            None => (s, None),
        };
        match (name.trim(), arg) {
            ("regular-star", None) => Ok(LowerBoundCase::RegularStar),
            ("component-density", None) => Ok(LowerBoundCase::ComponentDensity),
            ("butterfly", None) => Ok(LowerBoundCase::Butterfly { kind: None }),
            ("butterfly", Some(t)) => Ok(LowerBoundCase::Butterfly {
                kind: Some(ButterflyType::from_number(t).ok_or_else(bad)?),
            }),
            ("circulant", Some(k)) => Ok(LowerBoundCase::Circulant { k }),
            ("regular-c4", Some(k)) => Ok(LowerBoundCase::RegularC4 { k }),
            ("structured-triangle", None) => Ok(LowerBoundCase::StructuredTriangle),
            ("high-degree", None) => Ok(LowerBoundCase::HighDegree),
            _ => Err(bad()),
        }
    }
}

/// What the construction guarantees about perfect `H`-factors of the host.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorClaim {
    AllFactorsZero,
    AllFactorsEqual,
    NoFactor,
}

/// A colored host with its exact minimum-degree ratio and claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBoundConstruction {
    pub case: LowerBoundCase,
    /// The blowup the host expands, when it is one.
    pub blowup: Option<BlowupSpec>,
    pub colored_graph: ColoredGraph,
    /// `δ(J)/|J|`.
    pub min_degree_ratio: Rational,
    pub claim: FactorClaim,
}

fn refuse(msg: impl Into<String>) -> Error {
    Error::refused(msg)
}

fn divisible(m: usize, d: usize, what: &str) -> Result<()> {
    if d == 0 || m % d != 0 {
        return Err(refuse(format!("m = {m} must be divisible by {d} ({what})")));
    }
    Ok(())
}

fn ratio(g: &ColoredGraph) -> Rational {
    Rational::new(g.graph().min_degree() as i64, g.n() as i64)
}

fn from_blowup(case: LowerBoundCase, spec: BlowupSpec, claim: FactorClaim) -> Result<LowerBoundConstruction> {
    let colored_graph = blowup(&spec)?;
    Ok(LowerBoundConstruction {
        case,
        min_degree_ratio: ratio(&colored_graph),
        blowup: Some(spec),
        colored_graph,
        claim,
    })
}

/// Circulant graph on `n` vertices joining vertices at cyclic distance at
/// most `half`; it is `2·half`-regular when `2·half < n`.
fn circulant_positive(n: usize, half: usize) -> impl Fn(usize, usize) -> bool {
    move |u, v| {
        let d = (v + n - u) % n;
        d.min(n - d) <= half
    }
}

/// Build the construction for `case` at scale `m` (the host order, except
/// for the structured triangle where the host has `8m` vertices).
pub fn lower_bound_construction(h: &Graph, case: LowerBoundCase, m: usize) -> Result<LowerBoundConstruction> {
    if h.e() == 0 {
        return Err(Error::contract("H must have at least one edge"));
    }
    if m == 0 {
        return Err(Error::contract("the scale m must be positive"));
    }
    let basics = graph_basics(h);
    let n = h.n();
    match case {
        LowerBoundCase::RegularStar => {
            if !basics.is_regular {
                return Err(refuse("H must be regular"));
            }
            divisible(m, 4, "four parts")?;
            divisible(m, n, "|H|")?;
            let frame = frame_catalog(&FrameSpec::StarClique { k: 4, sign: Sign::Plus })?;
            from_blowup(case, BlowupSpec::new(frame, vec![m / 4; 4])?, FactorClaim::AllFactorsZero)
        }
        LowerBoundCase::ComponentDensity => {
            match &basics.component_density {
                Some(rho) if rho.is_positive() => {}
                _ => return Err(refuse("all components of H must have the same positive edge density")),
            }
            divisible(m, 2, "two cliques")?;
            divisible(m, n, "|H|")?;
            let half = m / 2;
            let mut edges = Vec::new();
            for (offset, sign) in [(0, Sign::Plus), (half, Sign::Minus)] {
                for u in 0..half {
                    for v in u + 1..half {
                        edges.push((offset + u, offset + v, sign));
                    }
                }
            }
            let colored_graph = ColoredGraph::from_colored_edges(m, edges)?;
            Ok(LowerBoundConstruction {
                case,
                blowup: None,
                min_degree_ratio: ratio(&colored_graph),
                colored_graph,
                claim: FactorClaim::AllFactorsZero,
            })
        }
        LowerBoundCase::Butterfly { kind } => {
            if chromatic_number(h) != 3 {
                return Err(refuse("butterflies are considered for 3-chromatic H"));
            }
            divisible(m, 7, "butterfly weights")?;
            divisible(m, n, "|H|")?;
            let kinds: Vec<ButterflyType> = match kind {
                Some(t) => vec![t],
                None => ButterflyType::ALL.to_vec(),
            };
            let mut chosen = None;
            for t in kinds {
                let frame = frame_catalog(&FrameSpec::Butterfly(t))?;
                if !is_template(&frame, h)?.is_template {
                    chosen = Some((t, frame));
                    break;
                }
            }
            let (t, frame) = chosen.ok_or_else(|| refuse("the butterfly must not be a template for H"))?;
            let sizes = vec![3 * m / 7, m / 7, m / 7, m / 7, m / 7];
            let case = LowerBoundCase::Butterfly { kind: Some(t) };
            from_blowup(case, BlowupSpec::new(frame, sizes)?, FactorClaim::AllFactorsZero)
        }
        LowerBoundCase::Circulant { k } => {
            if k < 5 || k % 4 != 1 {
                return Err(refuse("k must be at least 5 and congruent to 1 mod 4"));
            }
            if !satisfies_c4(h, k)?.holds {
                return Err(refuse(format!("H must satisfy the {k}-wise C4-condition")));
            }
            divisible(m, k, "k equal parts")?;
            let pos = circulant_positive(k, (k - 1) / 4);
            let frame = Frame::new(ColoredGraph::from_fn(Graph::complete(k), |u, v| {
                if pos(u, v) { Sign::Plus } else { Sign::Minus }
            }));
            from_blowup(case, BlowupSpec::new(frame, vec![m / k; k])?, FactorClaim::AllFactorsZero)
        }
        LowerBoundCase::RegularC4 { k } => {
            if k < 4 || k % 4 == 1 {
                return Err(refuse("k must be at least 4 and not congruent to 1 mod 4"));
            }
            if !basics.is_regular {
                return Err(refuse("H must be regular"));
            }
            if !satisfies_c4(h, k)?.holds {
                return Err(refuse(format!("H must satisfy the {k}-wise C4-condition")));
            }
            divisible(m, 4 * k, "4k")?;
            let (ell, plus, minus) = match k % 4 {
                0 => (k / 2, 0, m / k),
                2 => ((k - 2) / 2, m / (2 * k), m / (2 * k)),
                _ => ((k - 3) / 2, 3 * m / (4 * k), m / (4 * k)),
            };
            // Vertices 0..k−1 carry an ℓ-regular positive circulant; vertex
            // k−1 sees them all positively and vertex k all negatively.
            let u = k - 1;
            let pos = circulant_positive(u, ell / 2);
            let mut edges = Vec::new();
            for a in 0..u {
                for b in a + 1..u {
                    edges.push((a, b, if pos(a, b) { Sign::Plus } else { Sign::Minus }));
                }
                edges.push((a, u, Sign::Plus));
                edges.push((a, u + 1, Sign::Minus));
            }
            let frame = Frame::new(ColoredGraph::from_colored_edges(k + 1, edges)?);
            let mut sizes = vec![m / k; u];
            sizes.extend([plus, minus]);
            from_blowup(case, BlowupSpec::new(frame, sizes)?, FactorClaim::AllFactorsZero)
        }
        LowerBoundCase::StructuredTriangle => {
            if chromatic_number(h) != 3 {
                return Err(refuse("the triangle construction needs chromatic number 3"));
            }
            let frame = frame_catalog(&FrameSpec::StarClique { k: 3, sign: Sign::Plus })?;
            let spec = BlowupSpec::new(frame.clone(), vec![2 * m, 3 * m, 3 * m])?;
            let claim = if (8 * m) % n != 0 {
                FactorClaim::NoFactor
            } else if structured_space(h)?
                .rho_for(&Rational::one(), &Rational::from_int(2))
                .is_some()
            {
                FactorClaim::AllFactorsZero
            } else if !is_template(&frame, h)?.is_template {
                FactorClaim::AllFactorsEqual
            } else {
                return Err(refuse("H is not (1,2)-structured and the star triangle is a template for it"));
            };
            from_blowup(case, spec, claim)
        }
        LowerBoundCase::HighDegree => high_degree(h, m),
    }
}

fn high_degree(h: &Graph, m: usize) -> Result<LowerBoundConstruction> {
    let r = chromatic_number(h);
    if r < 6 || !(r % 4 == 2 || r % 4 == 3) {
        return Err(refuse("r must be at least 6 and congruent to 2 or 3 mod 4"));
    }
    let space = structured_space(h)?;
    let q = |x: i64| Rational::from_int(x);
    let c_const = if space.rho_for(&q(0), &q(1)).is_some() {
        Rational::zero()
    } else {
        let t = (-2..=2)
            .find(|&t| space.rho_for(&q(1), &q(t)).is_some())
            .ok_or_else(|| refuse("H must be (0,1)-structured or (1,t)-structured with |t| <= 2"))?;
        if !satisfies_c4(h, r)?.holds {
            return Err(refuse(format!("H must satisfy the {r}-wise C4-condition")));
        }
        if r as i64 + t == 4 {
            return Err(refuse("every r-coloring of H is balanced in this case; no blowup is built"));
        }
        q(-2) / q(2 * r as i64 - 4 + t)
    };
    let ri = r as i64;
    let x = (q(ri - 3) - q(ri - 1) * &c_const) * Rational::from(m) / q((ri - 2) * (ri + 1));
    let x = x
        .to_i64()
        .filter(|&v| v >= 0)
        .ok_or_else(|| refuse(format!("m = {m} makes the small part non-integral")))?;
    let rest = m as i64 - x;
    if rest % (ri - 1) != 0 {
        return Err(refuse(format!("m = {m} makes the large parts non-integral")));
    }
    let y = (rest / (ri - 1)) as usize;

    // Vertex 0 is joined positively to all; then further edges in
    // lexicographic order until (C(r,2)+1)/2 edges are positive.
    let total = r * (r - 1) / 2;
    let mut budget = (total + 1) / 2 - (r - 1);
    let mut edges = Vec::new();
    for u in 0..r {
        for v in u + 1..r {
            let sign = if u == 0 {
                Sign::Plus
            } else if budget > 0 {
                budget -= 1;
                Sign::Plus
            } else {
                Sign::Minus
            };
            edges.push((u, v, sign));
        }
    }
    let frame = Frame::new(ColoredGraph::from_colored_edges(r, edges)?);
    let mut sizes = vec![x as usize];
    sizes.extend(std::iter::repeat(y).take(r - 1));
    let claim = if m % h.n() == 0 {
        FactorClaim::AllFactorsZero
    } else {
        FactorClaim::NoFactor
    };
    from_blowup(LowerBoundCase::HighDegree, BlowupSpec::new(frame, sizes)?, claim)
}
