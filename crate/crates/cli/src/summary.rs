//! One-page text renderings of the JSON reports.

use std::fmt::Write as _;

use hdisc_core::oracle::{CrossCheck, DiscrepancySummary, FactorCheck};
use hdisc_core::template::{Delta0Result, FrameSpec, TemplateDecision};
use hdisc_core::threshold::ThresholdReport;
use hdisc_core::witness::{HStarGraph, HStarResult, LowerBoundConstruction, TemplateWitness};
use hdisc_core::Graph;

pub fn threshold(h: &Graph, rep: &ThresholdReport) -> String {
    let p = &rep.profile;
    let mut s = String::new();
    writeln!(s, "H: {} vertices, {} edges", h.n(), h.e()).unwrap();
    writeln!(s, "chromatic number r = {}, sigma = {}", p.r, p.sigma).unwrap();
    writeln!(s, "chi_cr = {}, hcf = 1: {}, chi* = {}", p.chi_cr, p.hcf_is_one, p.chi_star).unwrap();
    writeln!(s, "delta0 = {}", rep.delta0).unwrap();
    writeln!(s, "delta* = {} ({})", rep.delta_star, rep.theorem_case).unwrap();
    s
}

pub fn delta0(res: &Delta0Result) -> String {
    let mut s = format!("delta0 = {}\n", res.value);
    writeln!(s, "non-template colorings of K_r: {}", res.nontemplate_colorings.len()).unwrap();
    if let Some(w) = &res.witness {
        let parts: Vec<String> = w.parts.iter().map(|p| p.to_string()).collect();
        writeln!(s, "witness: coloring mask {} with parts {}", w.coloring.mask, parts.join(", ")).unwrap();
    }
    s
}

pub fn template(frame: &FrameSpec, d: &TemplateDecision) -> String {
    let mut s = format!(
        "{frame}: {} (LP optimum {})\n",
        if d.is_template { "template" } else { "not a template" },
        d.lp_value
    );
    if let Some(c) = &d.certificate {
        let sizes: Vec<String> = c.part_sizes.iter().map(|x| x.to_string()).collect();
        writeln!(s, "blowup sizes {}: discrepancies {} and {}", sizes.join(","), c.disc_a, c.disc_b).unwrap();
    }
    s
}

pub fn cross_check(frame: &FrameSpec, x: &CrossCheck) -> String {
    let mut s = template(frame, &x.lp);
    writeln!(
        s,
        "oracle: {}{}",
        if x.oracle.is_template() { "template found" } else { "no template up to the bound" },
        if x.conclusive { "" } else { " (inconclusive: certificate exceeds the bound)" }
    )
    .unwrap();
    s
}

pub fn witness(w: &TemplateWitness) -> String {
    let sizes: Vec<String> = w.spec.sizes.iter().map(|x| x.to_string()).collect();
    format!(
        "{}: blowup sizes {}\nfactor discrepancies {} and {} (predicted difference {})\n",
        w.recipe,
        sizes.join(","),
        w.disc_1,
        w.disc_2,
        w.predicted_difference
    )
}

pub fn lower_bound(c: &LowerBoundConstruction) -> String {
    format!(
        "{}: host on {} vertices, min degree ratio {}, claim {:?}\n",
        c.case,
        c.colored_graph.n(),
        c.min_degree_ratio,
        c.claim
    )
}

pub fn h_star(r: &HStarResult) -> String {
    let mut s = format!("alpha = {}, delta0 = {}, path {:?}\n", r.alpha, r.delta0, r.path);
    match &r.graph {
        HStarGraph::Verbatim(g) => writeln!(s, "H* = H ({} vertices)", g.n()).unwrap(),
        HStarGraph::CompletePartite(b) => {
            let parts: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            writeln!(s, "H* = complete {}-partite with parts {}", b.len(), parts.join(",")).unwrap();
        }
    }
    if let Some(c) = &r.checks {
        writeln!(s, "all properties hold: {}", c.all_hold()).unwrap();
    }
    s
}

pub fn factor_check(c: &FactorCheck) -> String {
    match &c.problem {
        None => format!("valid perfect factor, discrepancy {}\n", c.discrepancy),
        Some(p) => format!("invalid factor: {p}\n"),
    }
}

pub fn multiset(m: &DiscrepancySummary) -> String {
    let mut s = format!(
        "{} perfect factors{}\n",
        m.factor_count,
        if m.truncated { " (truncated)" } else { "" }
    );
    for (v, n) in &m.values {
        writeln!(s, "  discrepancy {v}: {n}").unwrap();
    }
    s
}
