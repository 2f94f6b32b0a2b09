//! Explicit template witnesses: for a frame and a graph `H` meeting a
//! recipe's hypotheses, a blowup of the frame with two perfect `H`-factors
//! whose discrepancies differ by a closed-form amount.
//!
//! Every recipe builds its two factors as weighted lists of homomorphisms
//! into the frame. Cluster sizes are the vertex cover of the first list, and
//! the second list must cover the same sizes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::coloring::{chromatic_number, coloring_stats, enumerate_labeled_colorings, Homomorphism, LabeledColoring};
use crate::error::{Error, Result};
use crate::graph::{graph_basics, Graph};
use crate::oracle::verify_factor;
use crate::structure::satisfies_c4;
use crate::template::{hom_value, permutations, Frame};

use super::blowup::{blowup, build_factor, cover_of, factorial, BlowupSpec, ExplicitFactor};

/// The available witness recipes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Recipe {
    /// Bipartite `H` with two components of different edge density, against
    /// two disjoint edges of different colors.
    Components,
    /// Non-regular `H`, against two `r`-cliques sharing `r−1` vertices with
    /// different discrepancies (or a `K_{r+1}` containing such a pair).
    SharedFacet,
    /// A vertex with different degrees into two classes of an `r`-coloring,
    /// against two equally colored `r`-cliques sharing `r−1` vertices.
    DegreeSplit,
    /// An unbalanced `r`-coloring and the `r`-wise C₄-condition, against two
    /// `r`-cliques sharing `r−2` vertices whose positive graphs are regular
    /// of different degrees.
    Unbalanced,
    /// Non-uniform `H` with the `r`-wise C₄-condition, against two `r`-cliques
    /// whose colorings differ enough on the shared part.
    NonUniform,
    /// A violated `k`-wise C₄-condition, against a coloring of `K_k` that is
    /// neither monochromatic nor a star.
    C4Violation,
    /// Two `r`-colorings with different structured ratios, against two
    /// `r`-cliques sharing `r−2` vertices.
    Structured,
}

impl Recipe {
    pub const ALL: [Recipe; 7] = [
        Recipe::Components,
        Recipe::SharedFacet,
        Recipe::DegreeSplit,
        Recipe::Unbalanced,
        Recipe::NonUniform,
        Recipe::C4Violation,
        Recipe::Structured,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Recipe::Components => "components",
            Recipe::SharedFacet => "shared-facet",
            Recipe::DegreeSplit => "degree-split",
            Recipe::Unbalanced => "unbalanced",
            Recipe::NonUniform => "non-uniform",
            Recipe::C4Violation => "c4-violation",
            Recipe::Structured => "structured",
        }
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Recipe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Recipe::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::parse(0, format!("unknown recipe {s:?}")))
    }
}

/// A blowup with two perfect `H`-factors and their discrepancies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplateWitness {
    pub recipe: Recipe,
    pub spec: BlowupSpec,
    pub factor_1: ExplicitFactor,
    pub factor_2: ExplicitFactor,
    pub disc_1: i64,
    pub disc_2: i64,
    /// The recipe's closed form for `disc_1 − disc_2`.
    pub predicted_difference: Rational,
}

impl TemplateWitness {
    /// Expand the blowup and check both factors and their discrepancies.
    pub fn verify(&self, h: &Graph) -> Result<bool> {
        let host = blowup(&self.spec)?;
        let a = verify_factor(h, &host, &self.factor_1);
        let b = verify_factor(h, &host, &self.factor_2);
        Ok(a.valid
            && b.valid
            && a.discrepancy == self.disc_1
            && b.discrepancy == self.disc_2
            && self.disc_1 != self.disc_2)
    }
}

/// Build a template witness for `(frame, h)` with the given recipe.
pub fn template_witness(recipe: Recipe, h: &Graph, frame: &Frame) -> Result<TemplateWitness> {
    if h.e() == 0 {
        return Err(Error::contract("H must have at least one edge"));
    }
    let (p1, p2, predicted) = match recipe {
        Recipe::Components => components(h, frame)?,
        Recipe::SharedFacet => shared_facet(h, frame)?,
        Recipe::DegreeSplit => degree_split(h, frame)?,
        Recipe::Unbalanced => unbalanced(h, frame)?,
        Recipe::NonUniform => non_uniform(h, frame)?,
        Recipe::C4Violation => c4_violation(h, frame)?,
        Recipe::Structured => structured(h, frame)?,
    };
    finish(recipe, h, frame, &p1, &p2, predicted)
}

type Plan = Vec<(Homomorphism, usize)>;
type Plans = (Plan, Plan, Rational);

fn finish(recipe: Recipe, h: &Graph, frame: &Frame, p1: &Plan, p2: &Plan, predicted: Rational) -> Result<TemplateWitness> {
    let sizes = cover_of(p1, frame.n());
    let other = cover_of(p2, frame.n());
    if sizes != other {
        return Err(Error::structural(format!(
            "the two copy plans cover {sizes:?} and {other:?}"
        )));
    }
    for (phi, _) in p1.iter().chain(p2) {
        if !phi.is_valid(h, frame.graph()) {
            return Err(Error::structural("a planned copy is not a homomorphism"));
        }
    }
    let disc = |plan: &Plan| -> i64 {
        plan.iter()
            .map(|(phi, w)| hom_value(h, &frame.colored, phi) * *w as i64)
            .sum()
    };
    let (disc_1, disc_2) = (disc(p1), disc(p2));
    if Rational::from_int(disc_1 - disc_2) != predicted {
        return Err(Error::contradiction(format!(
            "{recipe}: factor discrepancies {disc_1} and {disc_2} do not match the closed-form difference {predicted}"
        )));
    }
    let spec = BlowupSpec::new(frame.clone(), sizes)?;
    let factor_1 = build_factor(&spec, p1)?;
    let factor_2 = build_factor(&spec, p2)?;
    Ok(TemplateWitness {
        recipe,
        spec,
        factor_1,
        factor_2,
        disc_1,
        disc_2,
        predicted_difference: predicted,
    })
}

/// Map every vertex of class `i` to `target[i]`, then apply the overrides.
fn place(f: &LabeledColoring, target: &[usize], moved: &[(usize, usize)]) -> Homomorphism {
    let mut map: Vec<usize> = f.assignment.iter().map(|&c| target[c]).collect();
    for &(v, x) in moved {
        map[v] = x;
    }
    Homomorphism { map }
}

/// Reorder the classes of `f` so that `order[i]` becomes class `i`.
fn reorder(f: &LabeledColoring, order: &[usize]) -> LabeledColoring {
    let mut perm = vec![0; f.k];
    for (i, &c) in order.iter().enumerate() {
        perm[c] = i;
    }
    f.permute_classes(&perm)
}

/// `order` completed by the remaining classes `0..k` in ascending order.
fn complete_order(k: usize, head: &[usize]) -> Vec<usize> {
    let mut order = head.to_vec();
    order.extend((0..k).filter(|c| !head.contains(c)));
    order
}

fn color(frame: &Frame, u: usize, v: usize) -> i64 {
    frame.colored.color(u, v).map_or(0, |c| c.value())
}

fn clique_disc(frame: &Frame, vs: &[usize]) -> i64 {
    let mut s = 0;
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            s += color(frame, u, v);
        }
    }
    s
}

fn first_coloring(h: &Graph, r: usize) -> Result<LabeledColoring> {
    enumerate_labeled_colorings(h, r)?
        .next()
        .ok_or_else(|| Error::contract(format!("H has no {r}-coloring")))
}

/// Two cliques `shared ∪ only1` and `shared ∪ only2`.
#[derive(Clone, Debug)]
struct PairLayout {
    shared: Vec<usize>,
    only1: Vec<usize>,
    only2: Vec<usize>,
}

impl PairLayout {
    fn l1(&self) -> Vec<usize> {
        let mut v = self.only1.clone();
        v.extend(&self.shared);
        v
    }

    fn l2(&self) -> Vec<usize> {
        let mut v = self.only2.clone();
        v.extend(&self.shared);
        v
    }
}

/// Recognize a frame on `r + 1` or `r + 2` vertices whose edges are exactly
/// those of two `r`-cliques sharing `r − 1` or `r − 2` vertices.
fn pair_layout(frame: &Frame, r: usize) -> Option<PairLayout> {
    let g = frame.graph();
    let n = g.n();
    let mut missing = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                missing.push((u, v));
            }
        }
    }
    if n == r + 1 && missing.len() == 1 {
        let (s, t) = missing[0];
        let shared = (0..n).filter(|&x| x != s && x != t).collect();
        return Some(PairLayout {
            shared,
            only1: vec![s],
            only2: vec![t],
        });
    }
    if n == r + 2 && missing.len() == 4 {
        let mut touched: Vec<usize> = missing.iter().flat_map(|&(u, v)| [u, v]).collect();
        touched.sort_unstable();
        touched.dedup();
        if touched.len() != 4 {
            return None;
        }
        let a = touched[0];
        let b = *touched[1..].iter().find(|&&x| g.has_edge(a, x))?;
        let rest: Vec<usize> = touched.iter().copied().filter(|&x| x != a && x != b).collect();
        let ok = g.has_edge(rest[0], rest[1])
            && [a, b]
                .iter()
                .all(|&x| rest.iter().all(|&y| !g.has_edge(x, y)));
        if !ok {
            return None;
        }
        let shared = (0..n).filter(|x| !touched.contains(x)).collect();
        return Some(PairLayout {
            shared,
            only1: vec![a, b],
            only2: rest,
        });
    }
    None
}

fn refuse(msg: impl Into<String>) -> Error {
    Error::refused(msg)
}

fn components(h: &Graph, frame: &Frame) -> Result<Plans> {
    if chromatic_number(h) != 2 {
        return Err(refuse("H must be bipartite"));
    }
    let fe = frame.graph().edges();
    if fe.len() != 2 || {
        let ((a, b), (c, d)) = (fe[0], fe[1]);
        a == c || a == d || b == c || b == d
    } {
        return Err(refuse("the frame must consist of two disjoint edges"));
    }
    let colors = frame.colored.colors();
    if colors[0] == colors[1] {
        return Err(refuse("the two frame edges must have different colors"));
    }
    let (plus, minus) = if colors[0].value() > 0 { (fe[0], fe[1]) } else { (fe[1], fe[0]) };
    let comps = graph_basics(h).components;
    let density = |c: &Vec<usize>| -> Rational {
        let inside = h.edges().iter().filter(|&&(u, _)| c.contains(&u)).count();
        Rational::new(inside as i64, c.len() as i64)
    };
    let mut pair = None;
    'outer: for i in 0..comps.len() {
        for j in i + 1..comps.len() {
            if density(&comps[i]) != density(&comps[j]) {
                pair = Some((i, j));
                break 'outer;
            }
        }
    }
    let (i, j) = pair.ok_or_else(|| refuse("all components of H have the same edge density"))?;
    let (u_set, w_set) = (&comps[i], &comps[j]);
    let f = first_coloring(h, 2)?;
    let n = h.n();
    let e_in = |c: &Vec<usize>| h.edges().iter().filter(|&&(u, _)| c.contains(&u)).count();
    let (nu, nw) = (u_set.len(), w_set.len());

    // Copies placing `part` on the positive edge and the rest of H on the
    // negative edge, with independent orientations of both.
    let split = |part: &Vec<usize>, flip_part: bool, flip_rest: bool| -> Homomorphism {
        let map = (0..n)
            .map(|v| {
                let side = f.assignment[v] == 1;
                if part.contains(&v) {
                    if side ^ flip_part { plus.1 } else { plus.0 }
                } else if side ^ flip_rest {
                    minus.1
                } else {
                    minus.0
                }
            })
            .collect();
        Homomorphism { map }
    };
    let empty = Vec::new();
    let plan = |part: &Vec<usize>, mult_split: usize, mult_whole: usize| -> Plan {
        let mut p = Vec::new();
        for a in [false, true] {
            for b in [false, true] {
                p.push((split(part, a, b), mult_split));
            }
        }
        for b in [false, true] {
            p.push((split(&empty, false, b), mult_whole));
        }
        p
    };
    let p1 = plan(u_set, nw, 2 * nu);
    let p2 = plan(w_set, nu, 2 * nw);
    let diff = 8 * (nw as i64 * e_in(u_set) as i64 - nu as i64 * e_in(w_set) as i64);
    Ok((p1, p2, Rational::from_int(diff)))
}

fn shared_facet(h: &Graph, frame: &Frame) -> Result<Plans> {
    let r = chromatic_number(h);
    let degrees: Vec<usize> = (0..h.n()).map(|v| h.degree(v)).collect();
    let dmin = *degrees.iter().min().expect("nonempty");
    let dmax = *degrees.iter().max().expect("nonempty");
    if dmin == dmax {
        return Err(refuse("H must be non-regular"));
    }
    let u = degrees.iter().position(|&d| d == dmin).expect("exists");
    let v = degrees.iter().position(|&d| d == dmax).expect("exists");

    // Either a clique pair sharing r−1 vertices, or K_{r+1} from which one
    // is selected by choosing the two private vertices.
    let layout = match pair_layout(frame, r) {
        Some(l) if l.only1.len() == 1 => l,
        _ if frame.n() == r + 1 && frame.graph().e() == (r + 1) * r / 2 => {
            let n = frame.n();
            let mut found = None;
            'outer: for s in 0..n {
                for t in s + 1..n {
                    let shared: Vec<usize> = (0..n).filter(|&x| x != s && x != t).collect();
                    let l = PairLayout { shared, only1: vec![s], only2: vec![t] };
                    if clique_disc(frame, &l.l1()) != clique_disc(frame, &l.l2()) {
                        found = Some(l);
                        break 'outer;
                    }
                }
            }
            found.ok_or_else(|| refuse("every vertex of the frame has the same positive degree"))?
        }
        _ => return Err(refuse("the frame must be two r-cliques sharing r-1 vertices, or K_(r+1)")),
    };
    let (c1, c2) = (clique_disc(frame, &layout.l1()), clique_disc(frame, &layout.l2()));
    if c1 == c2 {
        return Err(refuse("the two cliques must have different discrepancies"));
    }
    let (s, t) = (layout.only1[0], layout.only2[0]);
    let q = &layout.shared;
    let f = first_coloring(h, r)?;
    let (iu, iv) = (f.assignment[u], f.assignment[v]);

    // Copies with class `head` on t and the other classes on the shared
    // vertices in every order, optionally moving one vertex to s.
    let copies = |head: usize, moved: Option<usize>| -> Plan {
        let others: Vec<usize> = (0..r).filter(|&c| c != head).collect();
        permutations(r - 1)
            .into_iter()
            .map(|sigma| {
                let mut target = vec![0; r];
                target[head] = t;
                for (i, &p) in sigma.iter().enumerate() {
                    target[others[p]] = q[i];
                }
                let mv: Vec<(usize, usize)> = moved.map(|x| (x, s)).into_iter().collect();
                (place(&f, &target, &mv), 1)
            })
            .collect()
    };
    let mut p1 = copies(iv, None);
    p1.extend(copies(iu, Some(u)));
    let mut p2 = copies(iu, None);
    p2.extend(copies(iv, Some(v)));
    let diff = (c2 - c1) * factorial(r - 2) as i64 * (degrees[v] as i64 - degrees[u] as i64);
    Ok((p1, p2, Rational::from_int(diff)))
}

fn degree_split(h: &Graph, frame: &Frame) -> Result<Plans> {
    let r = chromatic_number(h);
    if r < 3 {
        return Err(refuse("H must have chromatic number at least 3"));
    }
    let layout = pair_layout(frame, r)
        .filter(|l| l.only1.len() == 1)
        .ok_or_else(|| refuse("the frame must be two r-cliques sharing r-1 vertices"))?;
    if clique_disc(frame, &layout.l1()) != clique_disc(frame, &layout.l2()) {
        return Err(refuse("the two cliques must have equal discrepancies"));
    }
    let (x, y) = (layout.only1[0], layout.only2[0]);
    let gap = |w: usize| color(frame, x, w) - color(frame, y, w);
    let z = *layout
        .shared
        .iter()
        .find(|&&w| gap(w) != 0)
        .ok_or_else(|| refuse("some shared vertex must see the private vertices in different colors"))?;
    let w = *layout
        .shared
        .iter()
        .find(|&&w| gap(w) == -gap(z))
        .expect("equal clique discrepancies force an opposite gap");
    let rest: Vec<usize> = layout.shared.iter().copied().filter(|&p| p != z && p != w).collect();

    // Find a coloring and a vertex a with different degrees into two classes.
    let mut found = None;
    'search: for f in enumerate_labeled_colorings(h, r)? {
        for a in 0..h.n() {
            let home = f.assignment[a];
            let mut deg = vec![0usize; r];
            for &b in h.neighbors(a) {
                deg[f.assignment[b]] += 1;
            }
            for j in 0..r {
                for k in j + 1..r {
                    if j != home && k != home && deg[j] != deg[k] {
                        found = Some((reorder(&f, &complete_order(r, &[home, j, k])), a, deg[j] as i64 - deg[k] as i64));
                        break 'search;
                    }
                }
            }
        }
    }
    let (f, a1, delta) =
        found.ok_or_else(|| refuse("every vertex has equal degrees into the other classes of every r-coloring"))?;

    let copies = |swap: bool, moved: bool| -> Plan {
        permutations(r - 3)
            .into_iter()
            .map(|sigma| {
                let mut target = vec![0; r];
                target[0] = y;
                target[1] = if swap { w } else { z };
                target[2] = if swap { z } else { w };
                for (i, &p) in sigma.iter().enumerate() {
                    target[3 + p] = rest[i];
                }
                let mv: Vec<(usize, usize)> = if moved { vec![(a1, x)] } else { Vec::new() };
                (place(&f, &target, &mv), 1)
            })
            .collect()
    };
    let mut p1 = copies(false, false);
    p1.extend(copies(true, true));
    let mut p2 = copies(true, false);
    p2.extend(copies(false, true));
    let c = |a: usize, b: usize| color(frame, a, b);
    let diff = factorial(r - 3) as i64 * delta * (c(y, z) - c(x, z) - c(y, w) + c(x, w));
    Ok((p1, p2, Rational::from_int(diff)))
}

fn positive_regular_degree(frame: &Frame, vs: &[usize]) -> Option<usize> {
    let degs: Vec<usize> = vs
        .iter()
        .map(|&u| vs.iter().filter(|&&v| v != u && color(frame, u, v) > 0).count())
        .collect();
    degs.iter().all(|&d| d == degs[0]).then_some(degs[0])
}

fn require_c4(h: &Graph, r: usize) -> Result<()> {
    if !satisfies_c4(h, r)?.holds {
        return Err(refuse(format!("H must satisfy the {r}-wise C4-condition")));
    }
    Ok(())
}

fn unbalanced(h: &Graph, frame: &Frame) -> Result<Plans> {
    let r = chromatic_number(h);
    if r < 4 {
        return Err(refuse("the recipe needs chromatic number at least 4"));
    }
    let layout = pair_layout(frame, r)
        .filter(|l| l.only1.len() == 2)
        .ok_or_else(|| refuse("the frame must be two r-cliques sharing r-2 vertices"))?;
    let d1 = positive_regular_degree(frame, &layout.l1());
    let d2 = positive_regular_degree(frame, &layout.l2());
    let (d, d_prime) = match (d1, d2) {
        (Some(a), Some(b)) if a != b => (a as i64, b as i64),
        _ => return Err(refuse("the positive graphs of the two cliques must be regular of different degrees")),
    };
    require_c4(h, r)?;
    let f = enumerate_labeled_colorings(h, r)?
        .find(|f| {
            let a = f.class_sizes();
            a.iter().any(|&x| x != a[0])
        })
        .ok_or_else(|| refuse("every r-coloring of H is balanced"))?;
    let sizes = f.class_sizes();
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by_key(|&c| (sizes[c], c));
    let f = reorder(&f, &order);
    let a = f.class_sizes();
    let low = a[0] + a[1];
    let high = a[r - 2] + a[r - 1];
    let (x1, y1) = (layout.only1[0], layout.only1[1]);
    let (x2, y2) = (layout.only2[0], layout.only2[1]);
    let v = &layout.shared;

    // Classes 0,1 on (x, y) in both orders and classes 2.. on the shared
    // vertices; or classes r−2, r−1 on (x, y) and classes 0..r−2 shared.
    let low_pair = |x: usize, y: usize, mult: usize| -> Plan {
        [(x, y), (y, x)]
            .into_iter()
            .map(|(p, q)| {
                let mut target = vec![0; r];
                target[0] = p;
                target[1] = q;
                for i in 2..r {
                    target[i] = v[i - 2];
                }
                (place(&f, &target, &[]), mult)
            })
            .collect()
    };
    let high_pair = |x: usize, y: usize, mult: usize| -> Plan {
        [(x, y), (y, x)]
            .into_iter()
            .map(|(p, q)| {
                let mut target = vec![0; r];
                target[r - 2] = p;
                target[r - 1] = q;
                for i in 0..r - 2 {
                    target[i] = v[i];
                }
                (place(&f, &target, &[]), mult)
            })
            .collect()
    };
    let mut p1 = low_pair(x1, y1, high);
    p1.extend(high_pair(x2, y2, low));
    let mut p2 = high_pair(x1, y1, low);
    p2.extend(low_pair(x2, y2, high));
    let diff = Rational::from_int(4 * (d - d_prime) * (high as i64 - low as i64) * h.e() as i64)
        / Rational::from(r - 1);
    Ok((p1, p2, diff))
}

fn non_uniform(h: &Graph, frame: &Frame) -> Result<Plans> {
    let r = chromatic_number(h);
    if r < 4 {
        return Err(refuse("the recipe needs chromatic number at least 4"));
    }
    let layout = pair_layout(frame, r).ok_or_else(|| refuse("the frame must be two r-cliques sharing r-1 or r-2 vertices"))?;
    let bad = |q: i64| {
        let m = 2 * (r as i64 - 2);
        [-2 * m, -m, 0, m, 2 * m].contains(&q)
    };
    let c = |a: usize, b: usize| color(frame, a, b);
    // Choose V of size r−2 inside the shared part and name e1, e2.
    let candidates: Vec<(Vec<usize>, (usize, usize), (usize, usize))> = if layout.only1.len() == 2 {
        vec![(
            layout.shared.clone(),
            (layout.only1[0], layout.only1[1]),
            (layout.only2[0], layout.only2[1]),
        )]
    } else {
        layout
            .shared
            .iter()
            .map(|&x| {
                let v = layout.shared.iter().copied().filter(|&p| p != x).collect();
                (v, (x, layout.only1[0]), (x, layout.only2[0]))
            })
            .collect()
    };
    let q_of = |v: &[usize], e1: (usize, usize), e2: (usize, usize)| -> i64 {
        v.iter().map(|&p| c(e1.0, p) + c(e1.1, p) - c(e2.0, p) - c(e2.1, p)).sum()
    };
    let (vset, e1, e2) = candidates
        .into_iter()
        .find(|(v, e1, e2)| !bad(q_of(v, *e1, *e2)))
        .ok_or_else(|| refuse("the clique colorings differ on the shared part by a multiple of 2(r-2)"))?;
    let g = |p: usize| c(p, e1.0) + c(p, e1.1) - c(p, e2.0) - c(p, e2.1);
    let u = vset[0];
    let v = *vset.iter().find(|&&p| g(p) != g(u)).expect("q is not a multiple of 2(r-2)");
    let rest: Vec<usize> = vset.iter().copied().filter(|&p| p != u && p != v).collect();
    require_c4(h, r)?;

    let mut found = None;
    'search: for f in enumerate_labeled_colorings(h, r)? {
        let e = coloring_stats(h, &f)?.e;
        for i in 0..r {
            for j in 0..r {
                for k in j + 1..r {
                    if i != j && i != k && e[i][j] != e[i][k] {
                        found = Some((reorder(&f, &complete_order(r, &[i, j, k])), e[i][j] as i64 - e[i][k] as i64));
                        break 'search;
                    }
                }
            }
        }
    }
    let (f, de) = found.ok_or_else(|| refuse("H must be non-uniform"))?;

    // Classes: 0 on x_i, 3 on y_i, 1 and 2 on {u, v}, 4.. on the rest.
    let copy = |e: (usize, usize), straight: bool| -> (Homomorphism, usize) {
        let mut target = vec![0; r];
        target[0] = e.0;
        target[3] = e.1;
        target[1] = if straight { u } else { v };
        target[2] = if straight { v } else { u };
        for i in 4..r {
            target[i] = rest[i - 4];
        }
        (place(&f, &target, &[]), 1)
    };
    let p1 = vec![copy(e1, true), copy(e2, false)];
    let p2 = vec![copy(e1, false), copy(e2, true)];
    Ok((p1, p2, Rational::from_int((g(u) - g(v)) * de)))
}

fn c4_violation(h: &Graph, frame: &Frame) -> Result<Plans> {
    let k = frame.n();
    if k < 4 {
        return Err(refuse("the frame must be K_k with k >= 4"));
    }
    if frame.graph().e() != k * (k - 1) / 2 {
        return Err(refuse("the frame must be a complete graph"));
    }
    let colors = frame.colored.colors();
    if colors.iter().all(|&s| s == colors[0]) {
        return Err(refuse("the frame coloring must not be monochromatic"));
    }
    let is_star = [1i64, -1].into_iter().any(|sign| {
        (0..k).any(|head| {
            frame
                .graph()
                .edges()
                .iter()
                .zip(colors)
                .all(|(&(a, b), s)| (s.value() == sign) == (a == head || b == head))
        })
    });
    if is_star {
        return Err(refuse("the frame coloring must not be a star"));
    }
    let report = satisfies_c4(h, k)?;
    let (f, quad) = report
        .counterexample
        .ok_or_else(|| refuse(format!("H must violate the {k}-wise C4-condition")))?;
    let c = |a: usize, b: usize| color(frame, a, b);
    let mut verts = None;
    'search: for a1 in 0..k {
        for a2 in 0..k {
            for a3 in 0..k {
                for a4 in 0..k {
                    let s = [a1, a2, a3, a4];
                    let distinct = (0..4).all(|i| (i + 1..4).all(|j| s[i] != s[j]));
                    if distinct && c(a1, a2) + c(a3, a4) != c(a1, a3) + c(a2, a4) {
                        verts = Some(s);
                        break 'search;
                    }
                }
            }
        }
    }
    let a = verts.expect("a coloring that is neither monochromatic nor a star has such a quadruple");
    let f = reorder(&f, &complete_order(k, &quad));
    let e = coloring_stats(h, &f)?.e;
    let rest: Vec<usize> = (0..k).filter(|x| !a.contains(x)).collect();
    let copy = |t: [usize; 4]| -> (Homomorphism, usize) {
        let mut target = vec![0; k];
        target[..4].copy_from_slice(&t);
        for i in 4..k {
            target[i] = rest[i - 4];
        }
        (place(&f, &target, &[]), 1)
    };
    let [a1, a2, a3, a4] = a;
    let p1 = vec![copy([a1, a2, a3, a4]), copy([a4, a3, a2, a1])];
    let p2 = vec![copy([a1, a3, a2, a4]), copy([a4, a2, a3, a1])];
    let cf = c(a1, a2) + c(a3, a4) - c(a1, a3) - c(a2, a4);
    let ef = e[0][1] as i64 + e[2][3] as i64 - e[0][2] as i64 - e[1][3] as i64;
    Ok((p1, p2, Rational::from_int(cf * ef)))
}

fn structured(h: &Graph, frame: &Frame) -> Result<Plans> {
    let r = chromatic_number(h);
    if r < 3 {
        return Err(refuse("the recipe needs chromatic number at least 3"));
    }
    let layout = pair_layout(frame, r)
        .filter(|l| l.only1.len() == 2)
        .ok_or_else(|| refuse("the frame must be two r-cliques sharing r-2 vertices"))?;
    let (x1, y1) = (layout.only1[0], layout.only1[1]);
    let (x2, y2) = (layout.only2[0], layout.only2[1]);
    let v = &layout.shared;
    let c = |a: usize, b: usize| color(frame, a, b);
    let q: i64 = v.iter().map(|&p| c(x1, p) + c(y1, p) - c(x2, p) - c(y2, p)).sum();
    let dc = c(x1, y1) - c(x2, y2);

    // The ratio compared between colorings, scaled by 2(r−2):
    // (q·f(A1,A2) + 2(r−2)·dc·e(A1,A2)) / (|A1| + |A2|).
    struct Stat {
        f: LabeledColoring,
        size: i64,
        inner: i64,
        outer: i64,
    }
    let stat = |f: LabeledColoring| -> Result<Stat> {
        let st = coloring_stats(h, &f)?;
        Ok(Stat {
            size: (st.a[0] + st.a[1]) as i64,
            inner: st.e[0][1] as i64,
            outer: st.x[0][1] as i64,
            f,
        })
    };
    let ratio = |s: &Stat| {
        Rational::from_int(q * s.outer + 2 * (r as i64 - 2) * dc * s.inner) / Rational::from_int(s.size)
    };
    let mut colorings = enumerate_labeled_colorings(h, r)?;
    let a = stat(colorings.next().ok_or_else(|| Error::contract("H has no r-coloring"))?)?;
    let ra = ratio(&a);
    let mut b = None;
    for f in colorings {
        let s = stat(f)?;
        if ratio(&s) != ra {
            b = Some(s);
            break;
        }
    }
    let b = b.ok_or_else(|| refuse("H is structured for the parameters of this frame"))?;

    // `mult` copies of coloring f with classes 0,1 on (x, y) in both orders
    // and classes 2.. on the shared vertices in every order.
    let copies = |f: &LabeledColoring, x: usize, y: usize, mult: usize| -> Plan {
        let mut p = Vec::new();
        for (s, t) in [(x, y), (y, x)] {
            for sigma in permutations(r - 2) {
                let mut target = vec![0; r];
                target[0] = s;
                target[1] = t;
                for (i, &j) in sigma.iter().enumerate() {
                    target[2 + j] = v[i];
                }
                p.push((place(f, &target, &[]), mult));
            }
        }
        p
    };
    let (ma, mb) = (b.size as usize, a.size as usize);
    let mut p1 = copies(&a.f, x1, y1, ma);
    p1.extend(copies(&b.f, x2, y2, mb));
    let mut p2 = copies(&a.f, x2, y2, ma);
    p2.extend(copies(&b.f, x1, y1, mb));
    let diff = 2 * factorial(r - 2) as i64 * dc * (b.size * a.inner - a.size * b.inner)
        + factorial(r - 3) as i64 * q * (b.size * a.outer - a.size * b.outer);
    Ok((p1, p2, Rational::from_int(diff)))
}
