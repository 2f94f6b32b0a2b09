//! Colored frames: the catalog of named frames, colorings of `K_r` as
//! bitmasks, and their orbits under vertex permutations and color swap.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Graph, Sign};

/// A colored graph tested for templatehood, with an optional catalog label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frame {
    pub colored: ColoredGraph,
    pub name: Option<String>,
}

impl Frame {
    pub fn new(colored: ColoredGraph) -> Self {
        Frame {
            colored,
            name: None,
        }
    }

    pub fn named(colored: ColoredGraph, name: impl Into<String>) -> Self {
        Frame {
            colored,
            name: Some(name.into()),
        }
    }

    pub fn graph(&self) -> &Graph {
        self.colored.graph()
    }

    pub fn n(&self) -> usize {
        self.colored.n()
    }

    /// The same frame with all colors flipped.
    pub fn negated(&self) -> Self {
        Frame {
            colored: self.colored.negated(),
            name: self.name.as_ref().map(|s| format!("-({s})")),
        }
    }
}

/// A 2-edge-coloring of `K_r`. Bit `i` of `mask` is set when edge number `i`
/// (edges `(u, v)`, `u < v`, in lexicographic order) has color `+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KrColoring {
    pub r: usize,
    pub mask: u64,
}

/// Index of edge `{u, v}` of `K_r` in lexicographic order.
pub fn kr_edge_index(r: usize, u: usize, v: usize) -> usize {
    let (u, v) = (u.min(v), u.max(v));
    // Edges before row u: (r−1) + (r−2) + … + (r−u).
    u * (2 * r - u - 1) / 2 + (v - u - 1)
}

impl KrColoring {
    pub fn new(r: usize, mask: u64) -> Result<Self> {
        let e = r * r.saturating_sub(1) / 2;
        if e > 63 || (e < 64 && mask >> e != 0) {
            return Err(Error::structural(format!("mask {mask} out of range for K_{r}")));
        }
        Ok(KrColoring { r, mask })
    }

    pub fn num_edges(&self) -> usize {
        self.r * (self.r - 1) / 2
    }

    pub fn color(&self, u: usize, v: usize) -> Sign {
        if self.mask >> kr_edge_index(self.r, u, v) & 1 == 1 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// `c(K_r)`.
    pub fn discrepancy(&self) -> i64 {
        2 * self.mask.count_ones() as i64 - self.num_edges() as i64
    }

    pub fn negated(&self) -> Self {
        let full = (1u64 << self.num_edges()) - 1;
        KrColoring {
            r: self.r,
            mask: !self.mask & full,
        }
    }

    /// Relabel vertices: vertex `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut mask = 0u64;
        for u in 0..self.r {
            for v in u + 1..self.r {
                if self.color(u, v) == Sign::Plus {
                    mask |= 1 << kr_edge_index(self.r, perm[u], perm[v]);
                }
            }
        }
        KrColoring { r: self.r, mask }
    }

    /// `+1`-degree of each vertex.
    pub fn positive_degrees(&self) -> Vec<usize> {
        (0..self.r)
            .map(|u| (0..self.r).filter(|&v| v != u && self.color(u, v) == Sign::Plus).count())
            .collect()
    }

    /// `Some(sign)` if every edge has color `sign`.
    pub fn monochromatic(&self) -> Option<Sign> {
        let full = (1u64 << self.num_edges()) - 1;
        if self.mask == full {
            Some(Sign::Plus)
        } else if self.mask == 0 {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    /// `Some((head, sign))` if the edges of color `sign` form a spanning
    /// star centered at `head` (the `(K_r, sign)`-star).
    pub fn star(&self) -> Option<(usize, Sign)> {
        for sign in [Sign::Plus, Sign::Minus] {
            for head in 0..self.r {
                let ok = (0..self.r).all(|u| {
                    (u + 1..self.r).all(|v| {
                        let at_head = u == head || v == head;
                        (self.color(u, v) == sign) == at_head
                    })
                });
                if ok {
                    return Some((head, sign));
                }
            }
        }
        None
    }

    pub fn to_colored_graph(&self) -> ColoredGraph {
        ColoredGraph::from_fn(Graph::complete(self.r), |u, v| self.color(u, v))
    }

    pub fn to_frame(&self) -> Frame {
        Frame::named(self.to_colored_graph(), format!("kr:{},{}", self.r, self.mask))
    }

    /// All `2^C(r,2)` colorings of `K_r`.
    pub fn all(r: usize) -> impl Iterator<Item = KrColoring> {
        let e = r * r.saturating_sub(1) / 2;
        (0..1u64 << e).map(move |mask| KrColoring { r, mask })
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("exists");
        p.swap(i, j);
        p[i + 1..].reverse();
    }
}

/// An orbit of colorings of `K_r` under vertex permutations and color swap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KrOrbit {
    /// The smallest mask in the orbit.
    pub representative: KrColoring,
    /// All members, ascending.
    pub members: Vec<KrColoring>,
}

/// Partition the colorings of `K_r` into orbits, ordered by representative.
pub fn kr_orbits(r: usize) -> Vec<KrOrbit> {
    let e = r * r.saturating_sub(1) / 2;
    assert!(e <= 28, "orbit enumeration is limited to r <= 8");
    let perms = permutations(r);
    // Bit images under each permutation.
    let tables: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| {
            let mut t = vec![0; e];
            for u in 0..r {
                for v in u + 1..r {
                    t[kr_edge_index(r, u, v)] = kr_edge_index(r, p[u], p[v]);
                }
            }
            t
        })
        .collect();
    let full = if e == 0 { 0 } else { (1u64 << e) - 1 };
    let mut seen = vec![false; 1usize << e];
    let mut orbits = Vec::new();
    for mask in 0..(1u64 << e) {
        if seen[mask as usize] {
            continue;
        }
        let mut members = Vec::new();
        for t in &tables {
            let mut img = 0u64;
            let mut bits = mask;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                img |= 1 << t[b];
            }
            for m in [img, !img & full] {
                if !seen[m as usize] {
                    seen[m as usize] = true;
                    members.push(KrColoring { r, mask: m });
                }
            }
        }
        members.sort();
        orbits.push(KrOrbit {
            representative: KrColoring { r, mask },
            members,
        });
    }
    orbits
}

/// The three butterfly types. Vertices are `u = 0`, wing one `v₁ = 1`,
/// `w₁ = 2`, wing two `v₂ = 3`, `w₂ = 4`; every edge of wing two has the
/// opposite color of its counterpart in wing one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ButterflyType {
    /// Wing one entirely `+1`, wing two entirely `−1`.
    MonochromaticWings,
    /// `c(uv₁) = +1`, `c(uw₁) = −1`, `c(v₁w₁) = +1`.
    MixedWings,
    /// `c(uv₁) = c(uw₁) = −1` and `c(v₁w₁) = +1`: each wing's edges at `u`
    /// agree and its far edge has the other color.
    StarWings,
}

impl ButterflyType {
    pub const ALL: [ButterflyType; 3] = [
        ButterflyType::MonochromaticWings,
        ButterflyType::MixedWings,
        ButterflyType::StarWings,
    ];

    /// Catalog number 1, 2 or 3.
    pub fn number(self) -> usize {
        match self {
            ButterflyType::MonochromaticWings => 1,
            ButterflyType::MixedWings => 2,
            ButterflyType::StarWings => 3,
        }
    }

    pub fn from_number(n: usize) -> Option<Self> {
        ButterflyType::ALL.get(n.checked_sub(1)?).copied()
    }

    /// Colors of `(uv₁, uw₁, v₁w₁)`.
    pub fn wing_one(self) -> [Sign; 3] {
        use Sign::*;
        match self {
            ButterflyType::MonochromaticWings => [Plus, Plus, Plus],
            ButterflyType::MixedWings => [Plus, Minus, Plus],
            ButterflyType::StarWings => [Minus, Minus, Plus],
        }
    }

    /// The three classes are exactly the orbits of wing-one triples under
    /// swapping `v` with `w` and swapping the wings. Returns the type of a
    /// butterfly whose wing one reads `(uv₁, uw₁, v₁w₁)`.
    pub fn classify(wing_one: [Sign; 3]) -> Self {
        let [a, b, c] = wing_one;
        if a != b {
            ButterflyType::MixedWings
        } else if a == c {
            ButterflyType::MonochromaticWings
        } else {
            ButterflyType::StarWings
        }
    }
}

/// A named frame from the catalog.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FrameSpec {
    /// `K_k` with every edge colored `sign`.
    MonoClique { k: usize, sign: Sign },
    /// `K_k` whose `sign` edges form a spanning star centered at vertex 0.
    StarClique { k: usize, sign: Sign },
    Butterfly(ButterflyType),
    /// Two copies of `K_r` sharing `shared ∈ {r−1, r−2}` vertices, colors in
    /// edge-index order of the layout described at [`clique_pair_graph`].
    CliquePair { r: usize, shared: usize, colors: Vec<Sign> },
    /// Two disjoint edges `{0,1}` and `{2,3}` with the given colors.
    EdgePair(Sign, Sign),
    /// A coloring of `K_r` given as a bitmask.
    Kr(KrColoring),
}

/// The graph of two `r`-cliques sharing `shared` vertices.
///
/// * `shared = r − 1`: vertex 0 is only in `L₁`, vertex 1 only in `L₂`, and
///   vertices `2..=r` are shared. The only non-edge is `{0, 1}`.
/// * `shared = r − 2`: vertices 0, 1 are only in `L₁`, vertices 2, 3 only
///   in `L₂`, and vertices `4..r+2` are shared. The non-edges are `{0,1}×{2,3}`.
pub fn clique_pair_graph(r: usize, shared: usize) -> Result<Graph> {
    if r < 2 || !(shared + 1 == r || shared + 2 == r) {
        return Err(Error::structural(format!(
            "clique pair needs r >= 2 and shared in {{r-1, r-2}}, got r={r}, shared={shared}"
        )));
    }
    let private = r - shared;
    let n = r + private;
    let only1: Vec<usize> = (0..private).collect();
    let only2: Vec<usize> = (private..2 * private).collect();
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| {
        !(only1.contains(&u) && only2.contains(&v))
    });
    Graph::new(n, edges.collect::<Vec<_>>())
}

fn parse_sign_token(s: &str) -> Result<Sign> {
    match s {
        "+" | "+1" => Ok(Sign::Plus),
        "-" | "-1" => Ok(Sign::Minus),
        _ => Err(Error::parse(0, format!("bad sign {s:?}"))),
    }
}

fn parse_sign_string(s: &str) -> Result<Vec<Sign>> {
    s.chars().map(|c| parse_sign_token(&c.to_string())).collect()
}

fn parse_usize(s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::parse(0, format!("bad integer {s:?}")))
}

impl FromStr for FrameSpec {
    type Err = Error;

    /// Parse `NAME[:PARAMS]` with comma-separated parameters:
    /// `mono:K,SIGN`, `star:K,SIGN`, `butterfly:T` (T ∈ {1,2,3}),
    /// `clique_pair:R,SHARED,SIGNS`, `edge_pair:SIGNS` and `kr:R,MASK`,
    /// where `SIGNS` is a string over `+`/`-`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, params) = s.split_once(':').unwrap_or((s, ""));
        let ps: Vec<&str> = if params.is_empty() {
            Vec::new()
        } else {
            params.split(',').map(str::trim).collect()
        };
        let want = |k: usize| -> Result<()> {
            if ps.len() == k {
                Ok(())
            } else {
                Err(Error::parse(0, format!("frame {name:?} takes {k} parameters")))
            }
        };
        match name {
            "mono" => {
                want(2)?;
                Ok(FrameSpec::MonoClique {
                    k: parse_usize(ps[0])?,
                    sign: parse_sign_token(ps[1])?,
                })
            }
            "star" => {
                want(2)?;
                Ok(FrameSpec::StarClique {
                    k: parse_usize(ps[0])?,
                    sign: parse_sign_token(ps[1])?,
                })
            }
            "butterfly" => {
                want(1)?;
                let t = parse_usize(ps[0])?;
                ButterflyType::from_number(t)
                    .map(FrameSpec::Butterfly)
                    .ok_or_else(|| Error::parse(0, "butterfly type must be 1, 2 or 3"))
            }
            "clique_pair" => {
                want(3)?;
                Ok(FrameSpec::CliquePair {
                    r: parse_usize(ps[0])?,
                    shared: parse_usize(ps[1])?,
                    colors: parse_sign_string(ps[2])?,
                })
            }
            "edge_pair" => {
                want(1)?;
                let c = parse_sign_string(ps[0])?;
                if c.len() != 2 {
                    return Err(Error::parse(0, "edge_pair takes two signs"));
                }
                Ok(FrameSpec::EdgePair(c[0], c[1]))
            }
            "kr" => {
                want(2)?;
                let r = parse_usize(ps[0])?;
                let mask = ps[1]
                    .parse()
                    .map_err(|_| Error::parse(0, format!("bad mask {:?}", ps[1])))?;
                Ok(FrameSpec::Kr(KrColoring::new(r, mask)?))
            }
            _ => Err(Error::parse(0, format!("unknown frame {name:?}"))),
        }
    }
}

impl fmt::Display for FrameSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sg = |s: &Sign| if *s == Sign::Plus { '+' } else { '-' };
        match self {
            FrameSpec::MonoClique { k, sign } => write!(f, "mono:{k},{}", sg(sign)),
            FrameSpec::StarClique { k, sign } => write!(f, "star:{k},{}", sg(sign)),
            FrameSpec::Butterfly(t) => write!(f, "butterfly:{}", t.number()),
            FrameSpec::CliquePair { r, shared, colors } => {
                let s: String = colors.iter().map(sg).collect();
                write!(f, "clique_pair:{r},{shared},{s}")
            }
            FrameSpec::EdgePair(a, b) => write!(f, "edge_pair:{}{}", sg(a), sg(b)),
            FrameSpec::Kr(c) => write!(f, "kr:{},{}", c.r, c.mask),
        }
    }
}

/// Build a catalog frame.
pub fn frame_catalog(spec: &FrameSpec) -> Result<Frame> {
    let colored = match spec {
        FrameSpec::MonoClique { k, sign } => {
            if *k < 2 {
                return Err(Error::structural("cliques need k >= 2"));
            }
            ColoredGraph::monochromatic(Graph::complete(*k), *sign)
        }
        FrameSpec::StarClique { k, sign } => {
            if *k < 2 {
                return Err(Error::structural("cliques need k >= 2"));
            }
            ColoredGraph::from_fn(Graph::complete(*k), |u, _| {
                if u == 0 {
                    *sign
                } else {
                    sign.flip()
                }
            })
        }
        FrameSpec::Butterfly(t) => {
            let [a, b, c] = t.wing_one();
            ColoredGraph::from_colored_edges(
                5,
                [
                    (0, 1, a),
                    (0, 2, b),
                    (1, 2, c),
                    (0, 3, a.flip()),
                    (0, 4, b.flip()),
                    (3, 4, c.flip()),
                ],
            )?
        }
        FrameSpec::CliquePair { r, shared, colors } => {
            let g = clique_pair_graph(*r, *shared)?;
            ColoredGraph::new(g, colors.clone())?
        }
        FrameSpec::EdgePair(a, b) => ColoredGraph::from_colored_edges(4, [(0, 1, *a), (2, 3, *b)])?,
        FrameSpec::Kr(c) => c.to_colored_graph(),
    };
    Ok(Frame::named(colored, spec.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_indices_are_lexicographic() {
        let r = 5;
        let mut idx = 0;
        for u in 0..r {
            for v in u + 1..r {
                assert_eq!(kr_edge_index(r, u, v), idx);
                assert_eq!(kr_edge_index(r, v, u), idx);
                idx += 1;
            }
        }
    }

    #[test]
    fn orbit_counts() {
        // Numbers of 2-colorings of K_r up to isomorphism and color swap.
        let counts: Vec<usize> = (2..=6).map(|r| kr_orbits(r).len()).collect();
        assert_eq!(counts, vec![1, 2, 6, 18, 78]);
        let total: usize = kr_orbits(4).iter().map(|o| o.members.len()).sum();
        assert_eq!(total, 64);
    }

    #[test]
    fn star_and_mono_detection() {
        let f = frame_catalog(&FrameSpec::StarClique { k: 4, sign: Sign::Plus }).unwrap();
        assert_eq!(f.colored.positive_edges(), 3);
        let c = KrColoring { r: 4, mask: 0b000111 };
        assert_eq!(c.star(), Some((0, Sign::Plus)));
        assert_eq!(c.negated().star(), Some((0, Sign::Minus)));
        assert_eq!(KrColoring { r: 3, mask: 7 }.monochromatic(), Some(Sign::Plus));
        assert_eq!(KrColoring { r: 3, mask: 7 }.star(), None);
    }

    #[test]
    fn butterfly_classification_is_consistent() {
        for t in ButterflyType::ALL {
            assert_eq!(ButterflyType::classify(t.wing_one()), t);
            let flipped = t.wing_one().map(Sign::flip);
            assert_eq!(ButterflyType::classify(flipped), t);
            let [a, b, c] = t.wing_one();
            assert_eq!(ButterflyType::classify([b, a, c]), t);
        }
    }

    #[test]
    fn frame_spec_round_trip() {
        for s in ["mono:3,+", "star:4,-", "butterfly:3", "clique_pair:2,1,+-", "edge_pair:+-", "kr:3,5"] {
            let spec: FrameSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
            frame_catalog(&spec).unwrap();
        }
        assert!("butterfly:4".parse::<FrameSpec>().is_err());
        assert!("clique_pair:3,1,+".parse::<FrameSpec>().map(|s| frame_catalog(&s)).unwrap().is_err());
    }

    #[test]
    fn clique_pair_layouts() {
        let g = clique_pair_graph(3, 2).unwrap();
        assert_eq!((g.n(), g.e()), (4, 5));
        assert!(!g.has_edge(0, 1));
        let g = clique_pair_graph(3, 1).unwrap();
        assert_eq!((g.n(), g.e()), (5, 6));
        assert!(!g.has_edge(0, 2) && !g.has_edge(1, 3) && g.has_edge(0, 1));
    }

    #[test]
    fn permutations_count() {
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(0).len(), 1);
    }
}
