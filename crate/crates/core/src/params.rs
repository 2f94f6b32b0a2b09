//! Chromatic parameters: `σ`, `χ_cr`, the gap set `D(C)`, `hcf_χ`, `hcf_c`,
//! the `hcf(H) = 1` flag and `χ*`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd_all, Rational};
use crate::coloring::{chromatic_number, enumerate_labeled_colorings};
use crate::error::{Error, Result};
use crate::graph::{graph_basics, Graph};

/// The chromatic profile of a graph with at least one edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChromaticProfile {
    /// `r = χ(H)`.
    pub r: usize,
    pub sigma: usize,
    /// `(r−1)|H| / (|H| − σ)`.
    pub chi_cr: Rational,
    /// Gaps between consecutive sorted class sizes, over all `r`-colorings.
    pub d_set: BTreeSet<u64>,
    /// gcd of `d_set`, with gcd of an empty or all-zero set equal to 0.
    pub hcf_chi: u64,
    /// gcd of the component orders.
    pub hcf_c: u64,
    pub hcf_is_one: bool,
    /// `χ_cr` when `hcf_is_one`, else `r`.
    pub chi_star: Rational,
}

/// Compute the chromatic profile.
///
/// The `hcf(H) = 1` rule: for `r ≥ 3` it means `hcf_χ = 1`; for `r = 2` it
/// means `hcf_χ ≤ 2` and `hcf_c = 1`.
pub fn chromatic_profile(h: &Graph) -> Result<ChromaticProfile> {
    if h.e() == 0 {
        return Err(Error::contract("the graph must have at least one edge"));
    }
    let r = chromatic_number(h);
    let mut sigma = usize::MAX;
    let mut d_set = BTreeSet::new();
    for f in enumerate_labeled_colorings(h, r)? {
        let mut sizes = f.class_sizes();
        sizes.sort_unstable();
        sigma = sigma.min(sizes[0]);
        d_set.extend(sizes.windows(2).map(|w| (w[1] - w[0]) as u64));
    }
    let n = h.n();
    let chi_cr = Rational::new(((r - 1) * n) as i64, (n - sigma) as i64);
    let hcf_chi = gcd_all(d_set.iter().copied());
    let hcf_c = graph_basics(h).hcf_c;
    let hcf_is_one = if r >= 3 {
        hcf_chi == 1
    } else {
        hcf_chi <= 2 && hcf_c == 1
    };
    let chi_star = if hcf_is_one {
        chi_cr.clone()
    } else {
        Rational::from(r)
    };
    Ok(ChromaticProfile {
        r,
        sigma,
        chi_cr,
        d_set,
        hcf_chi,
        hcf_c,
        hcf_is_one,
        chi_star,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use crate::families;

    #[test]
    fn complete_graphs() {
        for r in 2..=6 {
            let p = chromatic_profile(&Graph::complete(r)).unwrap();
            assert_eq!(p.r, r);
            assert_eq!(p.sigma, 1);
            assert_eq!(p.chi_cr, Rational::from(r));
            assert_eq!(p.chi_star, Rational::from(r));
        }
    }

    #[test]
    fn path_p3() {
        let p = chromatic_profile(&families::path(3)).unwrap();
        assert_eq!((p.r, p.sigma, p.hcf_chi, p.hcf_c), (2, 1, 1, 3));
        assert_eq!(p.chi_cr, q(3, 2));
        assert!(!p.hcf_is_one);
        assert_eq!(p.chi_star, q(2, 1));
    }

    #[test]
    fn k4_minus_edge() {
        let p = chromatic_profile(&families::k4_minus_edge()).unwrap();
        assert_eq!(p.r, 3);
        assert_eq!(p.sigma, 1);
        assert_eq!(p.chi_cr, q(8, 3));
        assert_eq!(p.d_set, BTreeSet::from([0, 1]));
        assert!(p.hcf_is_one);
        assert_eq!(p.chi_star, q(8, 3));
    }

    #[test]
    fn balanced_only_graph_uses_r() {
        let p = chromatic_profile(&families::cycle(4)).unwrap();
        assert_eq!(p.hcf_chi, 0);
        assert_eq!(p.chi_star, q(2, 1));
    }

    #[test]
    fn edgeless_is_rejected() {
        assert!(matches!(chromatic_profile(&Graph::empty(3)), Err(Error::Contract(_))));
    }
}
