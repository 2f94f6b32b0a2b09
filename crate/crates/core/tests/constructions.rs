//! End-to-end checks of witnesses, lower-bound hosts and `H*` against the
//! brute-force oracle.

use hdisc_core::families::{k4_minus_edge, octahedron_minus_edge, path};
use hdisc_core::oracle::{discrepancy_multiset, DEFAULT_BUDGET};
use hdisc_core::template::{delta0, frame_catalog, KrColoring};
use hdisc_core::witness::{
    blowup, build_h_star, lower_bound_construction, template_witness, BlowupSpec, FactorClaim,
    HStarPath, LowerBoundCase, Recipe,
};
use hdisc_core::{q, Graph};

#[test]
fn non_template_colorings_stay_positive_on_h_star() {
    // For every non-template coloring with positive clique discrepancy, a
    // blowup shaped like H* admits only positive perfect factors.
    let h = Graph::complete(3);
    let star = build_h_star(&h, &q(1, 10)).unwrap();
    assert_eq!(star.path, HStarPath::Balanced);
    let sizes: Vec<usize> = star.part_sizes().unwrap().iter().map(|&b| b as usize).collect();
    let k = delta0(&h).unwrap().nontemplate_colorings;
    let positive: Vec<&KrColoring> = k.iter().filter(|c| c.discrepancy() > 0).collect();
    assert!(!positive.is_empty());
    for c in positive {
        let host = blowup(&BlowupSpec::new(c.to_frame(), sizes.clone()).unwrap()).unwrap();
        let s = discrepancy_multiset(&h, &host, DEFAULT_BUDGET).unwrap();
        assert!(!s.truncated && s.factor_count > 0);
        assert!(s.values.keys().all(|&v| v > 0), "coloring {}: {:?}", c.mask, s.values);
    }
}

#[test]
fn lower_bound_claims_hold_on_smallest_scales() {
    let cases = [
        (Graph::complete(3), LowerBoundCase::RegularStar, 12, q(3, 4)),
        (path(2), LowerBoundCase::ComponentDensity, 4, q(1, 4)),
        (Graph::complete(5), LowerBoundCase::Circulant { k: 5 }, 10, q(4, 5)),
        (Graph::complete(4), LowerBoundCase::RegularC4 { k: 4 }, 16, q(3, 4)),
        (k4_minus_edge(), LowerBoundCase::StructuredTriangle, 1, q(5, 8)),
    ];
    for (h, case, m, ratio) in cases {
        let con = lower_bound_construction(&h, case, m).unwrap();
        assert_eq!(con.min_degree_ratio, ratio, "{case}");
        let s = discrepancy_multiset(&h, &con.colored_graph, DEFAULT_BUDGET).unwrap();
        assert!(!s.truncated, "{case}");
        let values = s.distinct();
        match con.claim {
            FactorClaim::AllFactorsZero => assert_eq!(values, vec![0], "{case}"),
            FactorClaim::AllFactorsEqual => assert_eq!(values.len(), 1, "{case}"),
            FactorClaim::NoFactor => assert!(values.is_empty(), "{case}"),
        }
    }
    // Neither (1,2)-structured nor blocked by the star triangle.
    assert!(matches!(
        lower_bound_construction(&octahedron_minus_edge(), LowerBoundCase::StructuredTriangle, 3),
        Err(hdisc_core::Error::Refused(_))
    ));
}

#[test]
fn every_recipe_witness_verifies() {
    let cases = [
        (Recipe::Components, path(3).disjoint_union(&Graph::complete(2)), "edge_pair:+-"),
        (Recipe::SharedFacet, path(3), "clique_pair:2,1,+-"),
        (Recipe::SharedFacet, k4_minus_edge(), "kr:4,1"),
        (Recipe::C4Violation, k4_minus_edge(), "kr:4,3"),
    ];
    for (recipe, h, frame) in cases {
        let f = frame_catalog(&frame.parse().unwrap()).unwrap();
        let w = template_witness(recipe, &h, &f).unwrap();
        assert!(w.verify(&h).unwrap(), "{recipe} on {frame}");
        assert_eq!(q(w.disc_1 - w.disc_2, 1), w.predicted_difference);
    }
}
