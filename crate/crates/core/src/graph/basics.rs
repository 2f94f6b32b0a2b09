//! Components, degrees, regularity, `hcf_c` and component densities.

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::arith::{gcd_all, Rational};

/// Elementary structure of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphBasics {
    /// Connected components, each sorted, ordered by smallest vertex.
    pub components: Vec<Vec<usize>>,
    pub degrees: Vec<usize>,
    pub is_regular: bool,
    /// The common degree when the graph is regular.
    pub regular_degree: Option<usize>,
    /// gcd of the component orders.
    pub hcf_c: u64,
    /// The common ratio `ρ = e(U)/|U|` when every component `U` has the same one.
    pub component_density: Option<Rational>,
}

/// Connected components by iterative depth-first search.
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Compute [`GraphBasics`].
pub fn graph_basics(g: &Graph) -> GraphBasics {
    let comps = components(g);
    let degrees: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let regular_degree = match degrees.split_first() {
        Some((d, rest)) if rest.iter().all(|x| x == d) => Some(*d),
        Some(_) => None,
        None => Some(0),
    };
    let hcf_c = gcd_all(comps.iter().map(|c| c.len() as u64));
    let densities: Vec<Rational> = comps
        .iter()
        .map(|c| {
            let e: usize = c.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
            Rational::new(e as i64, c.len() as i64)
        })
        .collect();
    let component_density = match densities.split_first() {
        Some((d, rest)) if rest.iter().all(|x| x == d) => Some(d.clone()),
        _ => None,
    };
    GraphBasics {
        components: comps,
        degrees,
        is_regular: regular_degree.is_some(),
        regular_degree,
        hcf_c,
        component_density,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    #[test]
    fn path_p3() {
        let b = graph_basics(&Graph::new(3, [(0, 1), (1, 2)]).unwrap());
        assert!(!b.is_regular);
        assert_eq!(b.components.len(), 1);
        assert_eq!(b.hcf_c, 3);
        assert_eq!(b.component_density, Some(q(2, 3)));
    }

    #[test]
    fn triangle() {
        let b = graph_basics(&Graph::complete(3));
        assert_eq!(b.regular_degree, Some(2));
        assert_eq!(b.component_density, Some(q(1, 1)));
    }

    #[test]
    fn p3_plus_k2() {
        let g = Graph::new(3, [(0, 1), (1, 2)])
            .unwrap()
            .disjoint_union(&Graph::complete(2));
        let b = graph_basics(&g);
        assert!(!b.is_regular);
        assert_eq!(b.hcf_c, 1);
        assert_eq!(b.component_density, None);
    }

    #[test]
    fn isolated_vertex_has_zero_density() {
        let g = Graph::complete(2).disjoint_union(&Graph::empty(1));
        let b = graph_basics(&g);
        assert_eq!(b.components, vec![vec![0, 1], vec![2]]);
        assert_eq!(b.component_density, None);
        let two_isolated = graph_basics(&Graph::empty(2));
        assert_eq!(two_isolated.component_density, Some(q(0, 1)));
    }
}
