//! Named graphs and parametrized graph families used as inputs and fixtures.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// The path on `n` vertices `0 − 1 − … − (n−1)`.
pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("valid")
}

/// The cycle on `n ≥ 3` vertices.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least 3 vertices");
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid")
}

/// The star `K_{1,k}` with center 0.
pub fn star(k: usize) -> Graph {
    Graph::new(k + 1, (1..=k).map(|i| (0, i))).expect("valid")
}

/// `K_4` minus the edge `{2, 3}`: vertices 0 and 1 are the degree-3 pair.
pub fn k4_minus_edge() -> Graph {
    Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).expect("valid")
}

/// The complete multipartite graph with the given part sizes; parts occupy
/// consecutive vertex ranges in order.
pub fn complete_multipartite(parts: &[usize]) -> Graph {
    let part_of = part_index(parts);
    let n = part_of.len();
    let edges = (0..n).flat_map(|u| {
        let part_of = &part_of;
        (u + 1..n).filter(move |&v| part_of[u] != part_of[v]).map(move |v| (u, v))
    });
    Graph::new(n, edges.collect::<Vec<_>>()).expect("valid")
}

/// `K_{2,2,2}` (the octahedron) minus the edge between the first vertices
/// of parts 0 and 1.
pub fn octahedron_minus_edge() -> Graph {
    let g = complete_multipartite(&[2, 2, 2]);
    Graph::new(6, g.edges().iter().copied().filter(|&e| e != (0, 2))).expect("valid")
}

/// The uncolored butterfly: triangles `{0,1,2}` and `{0,3,4}` sharing vertex 0.
pub fn butterfly_graph() -> Graph {
    Graph::new(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).expect("valid")
}

fn part_index(parts: &[usize]) -> Vec<usize> {
    parts
        .iter()
        .enumerate()
        .flat_map(|(i, &s)| std::iter::repeat(i).take(s))
        .collect()
}

/// First vertex of each part when parts occupy consecutive ranges.
pub fn part_starts(parts: &[usize]) -> Vec<usize> {
    let mut s = Vec::with_capacity(parts.len());
    let mut acc = 0;
    for &p in parts {
        s.push(acc);
        acc += p;
    }
    s
}

/// An `r`-partite graph with a dominating vertex in every part.
///
/// Parts `A_0, …, A_{r−1}` occupy consecutive ranges and the first vertex
/// `a_i` of `A_i` is joined to every vertex outside `A_i`. Further edges
/// between `A_i ∖ {a_i}` and `A_j ∖ {a_j}` are added in lexicographic order
/// until `e(A_i, A_j)` reaches `pair_counts` (listed for pairs `i < j` in
/// lexicographic order). Every proper `r`-coloring then agrees with the
/// partition up to relabeling.
pub fn dominated_partition_graph(parts: &[usize], pair_counts: &[usize]) -> Result<Graph> {
    let r = parts.len();
    if r < 2 || parts.iter().any(|&p| p == 0) {
        return Err(Error::contract("need at least two nonempty parts"));
    }
    if pair_counts.len() != r * (r - 1) / 2 {
        return Err(Error::contract("one edge count per pair of parts is required"));
    }
    let starts = part_starts(parts);
    let n: usize = parts.iter().sum();
    let mut edges = Vec::new();
    for i in 0..r {
        let a = starts[i];
        for (j, (&s, &len)) in starts.iter().zip(parts).enumerate() {
            if j != i {
                edges.extend((s..s + len).map(|v| (a, v)));
            }
        }
    }
    let mut idx = 0;
    for i in 0..r {
        for j in i + 1..r {
            let base = parts[i] + parts[j] - 1;
            let want = pair_counts[idx];
            idx += 1;
            let room = (parts[i] - 1) * (parts[j] - 1);
            if want < base || want - base > room {
                return Err(Error::contract(format!(
                    "pair ({i},{j}) needs between {base} and {} edges, got {want}",
                    base + room
                )));
            }
            let extra = (starts[i] + 1..starts[i] + parts[i])
                .flat_map(|u| (starts[j] + 1..starts[j] + parts[j]).map(move |v| (u, v)))
                .take(want - base);
            edges.extend(extra);
        }
    }
    Graph::new(n, edges)
}

/// Complete `r`-partite graph with parts `(r−2)m+1, (r−2)m, …, (r−2)m` from
/// which, for every pair of the equal parts, a matching of size `m` is
/// removed so that every vertex outside the first part loses exactly one
/// edge. The result is `(r−1)(r−2)m`-regular.
///
/// Requires `r ≥ 4` and `m ≥ 1`; the matchings are found by a greedy
/// round-robin over the `m`-blocks of each part.
pub fn regular_multipartite_minus_matchings(r: usize, m: usize) -> Result<Graph> {
    if r < 4 || m == 0 {
        return Err(Error::contract("need r >= 4 and m >= 1"));
    }
    let big = (r - 2) * m;
    let mut parts = vec![big + 1];
    parts.extend(std::iter::repeat(big).take(r - 1));
    let starts = part_starts(&parts);
    let g = complete_multipartite(&parts);
    // Each equal part splits into r−2 blocks of size m, one block reserved for
    // each of the other equal parts. A round-robin tournament schedule pairs
    // part i's block for j with part j's block for i.
    let block = |part: usize, other: usize| -> usize {
        let rank = if other < part { other - 1 } else { other - 2 };
        starts[part] + rank * m
    };
    let mut removed = Vec::new();
    for i in 1..r {
        for j in i + 1..r {
            let (bi, bj) = (block(i, j), block(j, i));
            removed.extend((0..m).map(|t| (bi + t, bj + t)));
        }
    }
    removed.sort_unstable();
    let edges = g
        .edges()
        .iter()
        .copied()
        .filter(|e| removed.binary_search(e).is_err());
    Graph::new(g.n(), edges.collect::<Vec<_>>())
}
