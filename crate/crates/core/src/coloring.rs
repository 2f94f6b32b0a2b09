//! Proper labeled colorings, per-coloring statistics and homomorphisms.
//!
//! A labeled `k`-coloring of `H` is exactly a homomorphism `H → K_k`, so both
//! enumerations share one backtracking engine. The engine keeps a bitmask
//! domain per vertex, prunes neighbor domains after each assignment (forward
//! checking) and always branches on the unassigned vertex with the fewest
//! remaining candidates, breaking ties by higher degree and then lower index.
//! Vertices whose domain collapses to a single value are therefore placed
//! immediately, which is what makes graphs with dominating vertices cheap.
//!
//! Classes and frame vertices are 0-based throughout.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest target graph the bitmask engine supports.
pub const MAX_TARGET: usize = 64;

/// A proper coloring with ordered classes `0..k`; classes may be empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LabeledColoring {
    pub k: usize,
    /// `assignment[v]` is the class of vertex `v`.
    pub assignment: Vec<usize>,
}

impl LabeledColoring {
    /// Class sizes `a_0, …, a_{k−1}`.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut a = vec![0; self.k];
        for &c in &self.assignment {
            a[c] += 1;
        }
        a
    }

    /// Members of each class.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k];
        for (v, &c) in self.assignment.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// Rename classes: class `i` becomes `perm[i]`.
    pub fn permute_classes(&self, perm: &[usize]) -> Self {
        LabeledColoring {
            k: self.k,
            assignment: self.assignment.iter().map(|&c| perm[c]).collect(),
        }
    }

    /// True if no edge of `h` joins two vertices of one class.
    pub fn is_proper(&self, h: &Graph) -> bool {
        self.assignment.len() == h.n()
            && self.assignment.iter().all(|&c| c < self.k)
            && h.edges()
                .iter()
                .all(|&(u, v)| self.assignment[u] != self.assignment[v])
    }
}

/// An edge-preserving map from `H` into a frame.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Homomorphism {
    /// `map[v]` is the frame vertex receiving vertex `v` of `H`.
    pub map: Vec<usize>,
}

impl Homomorphism {
    /// Number of `H`-vertices sent to each frame vertex.
    pub fn fiber_sizes(&self, frame_order: usize) -> Vec<usize> {
        let mut a = vec![0; frame_order];
        for &x in &self.map {
            a[x] += 1;
        }
        a
    }

    /// True if every edge of `h` lands on an edge of `frame`.
    pub fn is_valid(&self, h: &Graph, frame: &Graph) -> bool {
        self.map.len() == h.n()
            && self.map.iter().all(|&x| x < frame.n())
            && h.edges().iter().all(|&(u, v)| frame.has_edge(self.map[u], self.map[v]))
    }
}

/// Per-coloring statistics.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColoringStats {
    /// Class sizes `a_i`.
    pub a: Vec<usize>,
    /// `e[i][j] = e_H(A_i, A_j)`, symmetric with zero diagonal.
    pub e: Vec<Vec<usize>>,
    /// `x[i][j] = e_H(A_i ∪ A_j, V ∖ (A_i ∪ A_j))` for `i ≠ j`; zero diagonal.
    pub x: Vec<Vec<usize>>,
}

impl ColoringStats {
    pub fn k(&self) -> usize {
        self.a.len()
    }
}

/// Statistics of a proper coloring.
pub fn coloring_stats(h: &Graph, f: &LabeledColoring) -> Result<ColoringStats> {
    if !f.is_proper(h) {
        return Err(Error::contract("coloring is not proper for this graph"));
    }
    let k = f.k;
    let a = f.class_sizes();
    let mut e = vec![vec![0; k]; k];
    for &(u, v) in h.edges() {
        let (i, j) = (f.assignment[u], f.assignment[v]);
        e[i][j] += 1;
        e[j][i] += 1;
    }
    let mut x = vec![vec![0; k]; k];
    for i in 0..k {
        for j in 0..k {
            if i != j {
                x[i][j] = (0..k)
                    .filter(|&l| l != i && l != j)
                    .map(|l| e[i][l] + e[j][l])
                    .sum();
            }
        }
    }
    Ok(ColoringStats { a, e, x })
}

struct Level {
    var: usize,
    remaining: u64,
    saved: Vec<u64>,
}

/// Lazy stream of all homomorphisms `H → target`, in a deterministic order.
pub struct Homomorphisms<'a> {
    h: &'a Graph,
    tadj: Vec<u64>,
    domains: Vec<u64>,
    assign: Vec<usize>,
    stack: Vec<Level>,
    started: bool,
    done: bool,
}

const UNASSIGNED: usize = usize::MAX;

impl<'a> Homomorphisms<'a> {
    fn new(h: &'a Graph, tadj: Vec<u64>) -> Self {
        let m = tadj.len();
        let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        Homomorphisms {
            h,
            tadj,
            domains: vec![full; h.n()],
            assign: vec![UNASSIGNED; h.n()],
            stack: Vec::new(),
            started: false,
            done: false,
        }
    }

    fn choose_var(&self) -> Option<usize> {
        (0..self.h.n())
            .filter(|&v| self.assign[v] == UNASSIGNED)
            .min_by_key(|&v| {
                (
                    self.domains[v].count_ones(),
                    usize::MAX - self.h.degree(v),
                    v,
                )
            })
    }

    fn push_level(&mut self) -> bool {
        match self.choose_var() {
            Some(var) => {
                self.stack.push(Level {
                    var,
                    remaining: self.domains[var],
                    saved: self.domains.clone(),
                });
                true
            }
            None => false,
        }
    }
}

impl Iterator for Homomorphisms<'_> {
    type Item = Homomorphism;

    fn next(&mut self) -> Option<Homomorphism> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.h.n() == 0 {
                self.done = true;
                return Some(Homomorphism { map: Vec::new() });
            }
            if self.tadj.is_empty() {
                self.done = true;
                return None;
            }
            self.push_level();
        }
        loop {
            let Some(top) = self.stack.last_mut() else {
                self.done = true;
                return None;
            };
            let var = top.var;
            if top.remaining == 0 {
                let lvl = self.stack.pop().expect("nonempty");
                self.domains = lvl.saved;
                self.assign[var] = UNASSIGNED;
                continue;
            }
            let c = top.remaining.trailing_zeros() as usize;
            top.remaining &= top.remaining - 1;
            self.domains.clone_from(&top.saved);
            self.assign[var] = c;
            self.domains[var] = 1 << c;
            let mut ok = true;
            for &w in self.h.neighbors(var) {
                if self.assign[w] == UNASSIGNED {
                    self.domains[w] &= self.tadj[c];
                    if self.domains[w] == 0 {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                self.assign[var] = UNASSIGNED;
                continue;
            }
            if self.stack.len() == self.h.n() {
                return Some(Homomorphism {
                    map: self.assign.clone(),
                });
            }
            self.push_level();
        }
    }
}

/// Stream every homomorphism `h → frame`. The frame may have at most
/// [`MAX_TARGET`] vertices.
pub fn enumerate_homomorphisms<'a>(h: &'a Graph, frame: &Graph) -> Result<Homomorphisms<'a>> {
    if frame.n() > MAX_TARGET {
        return Err(Error::contract(format!(
            "frames are limited to {MAX_TARGET} vertices"
        )));
    }
    Ok(Homomorphisms::new(h, frame.adjacency_masks()))
}

/// Stream of proper labeled `k`-colorings.
pub struct Colorings<'a> {
    inner: Homomorphisms<'a>,
    k: usize,
}

impl Iterator for Colorings<'_> {
    type Item = LabeledColoring;
    fn next(&mut self) -> Option<LabeledColoring> {
        self.inner.next().map(|hm| LabeledColoring {
            k: self.k,
            assignment: hm.map,
        })
    }
}

/// Stream every proper labeled `k`-coloring of `h` (empty classes allowed).
pub fn enumerate_labeled_colorings(h: &Graph, k: usize) -> Result<Colorings<'_>> {
    if k > MAX_TARGET {
        return Err(Error::contract(format!(
            "at most {MAX_TARGET} colors are supported"
        )));
    }
    Ok(Colorings {
        inner: Homomorphisms::new(h, Graph::complete(k).adjacency_masks()),
        k,
    })
}

/// `χ(h)`; 0 for the empty graph on no vertices.
pub fn chromatic_number(h: &Graph) -> usize {
    if h.n() == 0 {
        return 0;
    }
    (1..=h.n().min(MAX_TARGET))
        .find(|&k| {
            enumerate_labeled_colorings(h, k)
                .expect("k within range")
                .next()
                .is_some()
        })
        .expect("n colors always suffice")
}

/// `σ(h)`: the smallest class size over all proper `χ(h)`-colorings.
pub fn sigma(h: &Graph) -> usize {
    let r = chromatic_number(h);
    enumerate_labeled_colorings(h, r)
        .expect("r within range")
        .map(|f| f.class_sizes().into_iter().min().unwrap_or(0))
        .min()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn chromatic_numbers() {
        assert_eq!(chromatic_number(&families::path(3)), 2);
        assert_eq!(chromatic_number(&families::k4_minus_edge()), 3);
        assert_eq!(chromatic_number(&Graph::complete(5)), 5);
        assert_eq!(chromatic_number(&Graph::empty(3)), 1);
    }

    #[test]
    fn coloring_counts() {
        assert_eq!(enumerate_labeled_colorings(&Graph::complete(3), 3).unwrap().count(), 6);
        assert_eq!(enumerate_labeled_colorings(&Graph::complete(3), 5).unwrap().count(), 60);
        let cols: Vec<_> = enumerate_labeled_colorings(&families::k4_minus_edge(), 3)
            .unwrap()
            .collect();
        assert_eq!(cols.len(), 6);
        // u, v (the non-adjacent pair 2, 3) always share a class.
        assert!(cols.iter().all(|f| f.assignment[2] == f.assignment[3]));
    }

    #[test]
    fn stats_of_k4_minus_edge() {
        let h = families::k4_minus_edge();
        let f = LabeledColoring {
            k: 3,
            assignment: vec![0, 1, 2, 2],
        };
        let s = coloring_stats(&h, &f).unwrap();
        assert_eq!(s.a, vec![1, 1, 2]);
        assert_eq!((s.e[0][1], s.e[0][2], s.e[1][2]), (1, 2, 2));
        assert_eq!(s.x[0][1], 4);
        let bad = LabeledColoring {
            k: 3,
            assignment: vec![0, 0, 1, 2],
        };
        assert!(matches!(coloring_stats(&h, &bad), Err(Error::Contract(_))));
    }

    #[test]
    fn stats_of_small_graphs() {
        let s = coloring_stats(
            &Graph::complete(3),
            &LabeledColoring {
                k: 3,
                assignment: vec![0, 1, 2],
            },
        )
        .unwrap();
        assert_eq!(s.a, vec![1, 1, 1]);
        assert!((0..3).all(|i| (0..3).all(|j| i == j || (s.e[i][j] == 1 && s.x[i][j] == 2))));
        let p = coloring_stats(
            &families::path(3),
            &LabeledColoring {
                k: 2,
                assignment: vec![0, 1, 0],
            },
        )
        .unwrap();
        assert_eq!(p.a, vec![2, 1]);
        assert_eq!(p.e[0][1], 2);
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(&Graph::complete(4)), 1);
        assert_eq!(sigma(&families::k4_minus_edge()), 1);
        assert_eq!(sigma(&families::star(3)), 1);
        assert_eq!(sigma(&families::cycle(4)), 2);
    }

    #[test]
    fn homomorphism_counts() {
        let bf = families::butterfly_graph();
        assert_eq!(enumerate_homomorphisms(&Graph::complete(3), &bf).unwrap().count(), 12);
        assert_eq!(
            enumerate_homomorphisms(&families::path(3), &Graph::complete(2)).unwrap().count(),
            2
        );
        assert_eq!(
            enumerate_homomorphisms(&families::k4_minus_edge(), &Graph::complete(3))
                .unwrap()
                .count(),
            6
        );
    }

    #[test]
    fn homomorphisms_are_valid_and_distinct() {
        let h = families::cycle(5);
        let t = families::cycle(5);
        let all: Vec<_> = enumerate_homomorphisms(&h, &t).unwrap().collect();
        assert!(all.iter().all(|m| m.is_valid(&h, &t)));
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), all.len());
        // Homomorphisms C5 -> C5 are the 10 automorphisms.
        assert_eq!(all.len(), 10);
    }

    #[test]
    fn dominated_graph_colors_quickly() {
        let h = families::dominated_partition_graph(&[10, 11, 100], &[110, 110, 110]).unwrap();
        assert_eq!(enumerate_labeled_colorings(&h, 3).unwrap().count(), 6);
    }
}
