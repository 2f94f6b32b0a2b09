//! Blowups of colored frames, explicit `H`-factors, and the balanced
//! permutation factor of a blowup of `K_r`.

use serde::{Deserialize, Serialize};

use crate::coloring::{chromatic_number, enumerate_labeled_colorings, Homomorphism};
use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Graph};
use crate::template::{permutations, Frame, KrColoring};

/// A blowup of a frame: frame vertex `x` becomes a cluster of `sizes[x]`
/// vertices. Clusters occupy consecutive vertex ranges in frame order.
///
/// Empty clusters are allowed; such a blowup is a blowup of the frame with
/// those vertices deleted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupSpec {
    pub frame: Frame,
    pub sizes: Vec<usize>,
}

impl BlowupSpec {
    pub fn new(frame: Frame, sizes: Vec<usize>) -> Result<Self> {
        if sizes.len() != frame.n() {
            return Err(Error::structural(format!(
                "{} cluster sizes for a frame on {} vertices",
                sizes.len(),
                frame.n()
            )));
        }
        Ok(BlowupSpec { frame, sizes })
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// First host vertex of each cluster.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.sizes
            .iter()
            .map(|&s| {
                let o = acc;
                acc += s;
                o
            })
            .collect()
    }

    /// The frame vertex whose cluster contains host vertex `v`.
    pub fn cluster_of(&self) -> Vec<usize> {
        self.sizes
            .iter()
            .enumerate()
            .flat_map(|(x, &s)| std::iter::repeat(x).take(s))
            .collect()
    }
}

/// Expand a blowup into an explicit colored graph. Every frame edge `xy`
/// becomes a complete bipartite graph between the clusters of `x` and `y`,
/// all of color `c(xy)`.
pub fn blowup(spec: &BlowupSpec) -> Result<ColoredGraph> {
    let offsets = spec.offsets();
    let fc = &spec.frame.colored;
    let mut edges = Vec::new();
    for (&(x, y), &c) in fc.graph().edges().iter().zip(fc.colors()) {
        for u in offsets[x]..offsets[x] + spec.sizes[x] {
            for v in offsets[y]..offsets[y] + spec.sizes[y] {
                edges.push((u, v, c));
            }
        }
    }
    ColoredGraph::from_colored_edges(spec.total(), edges)
}

/// A collection of copies of `H` in a host: `copies[i][v]` is the host
/// vertex receiving vertex `v` of `H` in copy `i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExplicitFactor {
    pub copies: Vec<Vec<usize>>,
}

/// Turns homomorphisms into a frame into vertex-disjoint copies in a blowup
/// by handing out cluster vertices in order.
#[derive(Clone, Debug)]
pub struct FactorBuilder {
    offsets: Vec<usize>,
    sizes: Vec<usize>,
    used: Vec<usize>,
    copies: Vec<Vec<usize>>,
}

impl FactorBuilder {
    pub fn new(spec: &BlowupSpec) -> Self {
        FactorBuilder {
            offsets: spec.offsets(),
            sizes: spec.sizes.clone(),
            used: vec![0; spec.sizes.len()],
            copies: Vec::new(),
        }
    }

    /// Add one copy placed by `phi` (vertex `v` of `H` into the cluster of
    /// frame vertex `phi.map[v]`).
    pub fn add(&mut self, phi: &Homomorphism) -> Result<()> {
        let mut copy = Vec::with_capacity(phi.map.len());
        for &x in &phi.map {
            if x >= self.sizes.len() || self.used[x] >= self.sizes[x] {
                return Err(Error::structural(format!("cluster {x} is over-full")));
            }
            copy.push(self.offsets[x] + self.used[x]);
            self.used[x] += 1;
        }
        self.copies.push(copy);
        Ok(())
    }

    /// Add `count` copies placed by `phi`.
    pub fn add_many(&mut self, phi: &Homomorphism, count: usize) -> Result<()> {
        for _ in 0..count {
            self.add(phi)?;
        }
        Ok(())
    }

    /// Finish, requiring every cluster to be exactly filled.
    pub fn finish(self) -> Result<ExplicitFactor> {
        if self.used != self.sizes {
            return Err(Error::structural(format!(
                "factor fills clusters {:?} but sizes are {:?}",
                self.used, self.sizes
            )));
        }
        Ok(ExplicitFactor {
            copies: self.copies,
        })
    }
}

/// Fiber sizes summed over a weighted list of homomorphisms.
pub fn cover_of(plan: &[(Homomorphism, usize)], frame_order: usize) -> Vec<usize> {
    let mut cover = vec![0; frame_order];
    for (phi, w) in plan {
        for &x in &phi.map {
            cover[x] += w;
        }
    }
    cover
}

/// Build the explicit factor for a weighted copy plan.
pub fn build_factor(spec: &BlowupSpec, plan: &[(Homomorphism, usize)]) -> Result<ExplicitFactor> {
    let mut b = FactorBuilder::new(spec);
    for (phi, w) in plan {
        b.add_many(phi, *w)?;
    }
    b.finish()
}

/// Number of factor edges between each pair of clusters.
pub fn cluster_edge_counts(h: &Graph, spec: &BlowupSpec, f: &ExplicitFactor) -> Vec<Vec<usize>> {
    let cluster = spec.cluster_of();
    let k = spec.sizes.len();
    let mut m = vec![vec![0; k]; k];
    for copy in &f.copies {
        for &(u, v) in h.edges() {
            let (x, y) = (cluster[copy[u]], cluster[copy[v]]);
            m[x][y] += 1;
            if x != y {
                m[y][x] += 1;
            }
        }
    }
    m
}

pub(crate) fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// The `(r−1)!|H|`-blowup of `(K_r, c)`, `r = χ(H)`, with the perfect factor
/// holding one copy of `H` for every permutation of the classes of a fixed
/// `r`-coloring of `H`.
///
/// Every pair of clusters then carries exactly `2(r−2)!e(H)` factor edges.
pub fn balanced_blowup_factor(h: &Graph, coloring: KrColoring) -> Result<(BlowupSpec, ExplicitFactor)> {
    let r = chromatic_number(h);
    if r < 2 {
        return Err(Error::contract("H must have at least one edge"));
    }
    if coloring.r != r {
        return Err(Error::contract(format!("coloring of K_{} given for r = {r}", coloring.r)));
    }
    let f = enumerate_labeled_colorings(h, r)?
        .next()
        .expect("an r-coloring exists");
    let part = factorial(r - 1) * h.n();
    let spec = BlowupSpec::new(coloring.to_frame(), vec![part; r])?;
    let plan: Vec<(Homomorphism, usize)> = permutations(r)
        .into_iter()
        .map(|sigma| {
            let map = f.assignment.iter().map(|&c| sigma[c]).collect();
            (Homomorphism { map }, 1)
        })
        .collect();
    let factor = build_factor(&spec, &plan)?;
    Ok((spec, factor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::Sign;
    use crate::template::{frame_catalog, FrameSpec};

    #[test]
    fn blowup_examples() {
        let k2 = frame_catalog(&FrameSpec::MonoClique { k: 2, sign: Sign::Plus }).unwrap();
        let g = blowup(&BlowupSpec::new(k2, vec![2, 2]).unwrap()).unwrap();
        assert_eq!((g.graph().e(), g.positive_edges()), (4, 4));

        let star = frame_catalog(&FrameSpec::StarClique { k: 3, sign: Sign::Plus }).unwrap();
        let g = blowup(&BlowupSpec::new(star, vec![2, 2, 2]).unwrap()).unwrap();
        assert_eq!((g.graph().e(), g.positive_edges()), (12, 8));

        let bf = frame_catalog(&"butterfly:1".parse().unwrap()).unwrap();
        let g = blowup(&BlowupSpec::new(bf, vec![3, 1, 1, 1, 1]).unwrap()).unwrap();
        assert_eq!((g.n(), g.graph().min_degree()), (7, 4));
    }

    #[test]
    fn balanced_factor_edge_counts() {
        for (h, part, copies) in [
            (Graph::complete(3), 6, 6),
            (families::k4_minus_edge(), 8, 6),
            (families::path(3), 3, 2),
        ] {
            let r = chromatic_number(&h);
            let (spec, f) = balanced_blowup_factor(&h, KrColoring { r, mask: 0 }).unwrap();
            assert!(spec.sizes.iter().all(|&s| s == part));
            assert_eq!(f.copies.len(), copies);
            let m = cluster_edge_counts(&h, &spec, &f);
            let want = 2 * factorial(r - 2) * h.e();
            for i in 0..r {
                for j in i + 1..r {
                    assert_eq!(m[i][j], want);
                }
            }
        }
    }

    #[test]
    fn builder_rejects_overfull_and_underfull() {
        let k2 = frame_catalog(&FrameSpec::MonoClique { k: 2, sign: Sign::Plus }).unwrap();
        let spec = BlowupSpec::new(k2, vec![1, 1]).unwrap();
        let phi = Homomorphism { map: vec![0, 1] };
        let mut b = FactorBuilder::new(&spec);
        b.add(&phi).unwrap();
        assert!(b.clone().add(&phi).is_err());
        assert!(b.finish().is_ok());
        assert!(FactorBuilder::new(&spec).finish().is_err());
    }
}
