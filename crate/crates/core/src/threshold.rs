//! The decision procedure for `δ*(H)`: the bipartite, tripartite and
//! `r ≥ 4` case splits, each step recorded in a trace.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::graph::{graph_basics, Graph};
use crate::params::{chromatic_profile, ChromaticProfile};
use crate::structure::satisfies_c4;
use crate::template::{butterfly_status, delta0, ButterflyStatus};

/// Which branch of the case split produced the value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremCase {
    BipartiteRegular,
    BipartiteComponentDensity,
    BipartiteChiStar,
    TriRegular,
    TriButterfly,
    TriDefault,
    RCond1,
    RCond2,
    RDefault,
}

impl TheoremCase {
    pub fn label(self) -> &'static str {
        match self {
            TheoremCase::BipartiteRegular => "bipartite-regular",
            TheoremCase::BipartiteComponentDensity => "bipartite-component-density",
            TheoremCase::BipartiteChiStar => "bipartite-chi-star",
            TheoremCase::TriRegular => "tri-regular",
            TheoremCase::TriButterfly => "tri-butterfly",
            TheoremCase::TriDefault => "tri-default",
            TheoremCase::RCond1 => "r-cond1",
            TheoremCase::RCond2 => "r-cond2",
            TheoremCase::RDefault => "r-default",
        }
    }
}

impl fmt::Display for TheoremCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One evaluated predicate or intermediate value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub name: String,
    pub value: String,
}

/// The two conditions governing `r ≥ 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conditions {
    /// `(r+1)`-wise C₄-condition, and `r ≡ 0 (mod 4)` or `H` regular.
    pub cond1: bool,
    /// `r`-wise C₄-condition and `H` regular.
    pub cond2: bool,
}

/// Outcome of [`delta_star`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub delta_star: Rational,
    pub theorem_case: TheoremCase,
    pub profile: ChromaticProfile,
    pub delta0: Rational,
    /// `r ≥ 4` only.
    pub conditions: Option<Conditions>,
    /// `r = 3` and non-regular only.
    pub butterflies: Option<ButterflyStatus>,
    /// `r = 2` only: the common component density, if any.
    pub component_density: Option<Rational>,
    pub trace: Vec<TraceStep>,
}

impl ThresholdReport {
    /// `max{δ₀, 1 − 1/χ*}`, the bound every branch dominates.
    pub fn trivial_lower_bound(&self) -> Rational {
        self.delta0.clone().max(Rational::one() - self.profile.chi_star.recip())
    }
}

struct Trace(Vec<TraceStep>);

impl Trace {
    fn push(&mut self, name: &str, value: impl fmt::Display) {
        self.0.push(TraceStep {
            name: name.to_string(),
            value: value.to_string(),
        });
    }
}

/// Evaluate both conditions for `χ(H) ≥ 4`.
pub fn conditions(h: &Graph) -> Result<Conditions> {
    let r = crate::coloring::chromatic_number(h);
    if r < 4 {
        return Err(Error::contract(format!("conditions need chromatic number at least 4, got {r}")));
    }
    let regular = graph_basics(h).is_regular;
    let c4_next = satisfies_c4(h, r + 1)?.holds;
    let c4_r = satisfies_c4(h, r)?.holds;
    Ok(Conditions {
        cond1: c4_next && (r % 4 == 0 || regular),
        cond2: c4_r && regular,
    })
}

/// Compute `δ*(H)` with the case that determines it.
pub fn delta_star(h: &Graph) -> Result<ThresholdReport> {
    let profile = chromatic_profile(h)?;
    let r = profile.r;
    let basics = graph_basics(h);
    let mut trace = Trace(Vec::new());
    trace.push("r", r);
    trace.push("chi_cr", &profile.chi_cr);
    trace.push("hcf_is_one", profile.hcf_is_one);
    trace.push("chi_star", &profile.chi_star);
    let d0 = delta0(h)?.value;
    trace.push("delta0", &d0);
    let one = Rational::one();
    let chi_bound = &one - profile.chi_star.recip();
    let base = d0.clone().max(chi_bound.clone());
    trace.push("regular", basics.is_regular);

    let mut conds = None;
    let mut butterflies = None;
    let mut component_density = None;
    let (value, case) = match r {
        2 => {
            component_density = basics.component_density.clone();
            if basics.is_regular {
                (Rational::new(3, 4), TheoremCase::BipartiteRegular)
            } else {
                let rho = basics.component_density.as_ref().filter(|rho| rho.is_positive());
                trace.push(
                    "component_density",
                    rho.map_or_else(|| "none".to_string(), |v| v.to_string()),
                );
                if rho.is_some() {
                    (Rational::new(1, 2), TheoremCase::BipartiteComponentDensity)
                } else {
                    (chi_bound, TheoremCase::BipartiteChiStar)
                }
            }
        }
        3 => {
            if basics.is_regular {
                (Rational::new(3, 4), TheoremCase::TriRegular)
            } else {
                let status = butterfly_status(h)?;
                for d in &status.decisions {
                    trace.push(&format!("butterfly:{}_is_template", d.kind.number()), d.decision.is_template);
                }
                let some = status.some_nontemplate;
                butterflies = Some(status);
                if some {
                    (base.clone().max(Rational::new(4, 7)), TheoremCase::TriButterfly)
                } else {
                    (base.clone(), TheoremCase::TriDefault)
                }
            }
        }
        _ => {
            let c = conditions(h)?;
            trace.push("cond1", c.cond1);
            trace.push("cond2", c.cond2);
            conds = Some(c);
            let rr = Rational::from(r);
            if c.cond1 {
                (&one - (&rr + &one).recip(), TheoremCase::RCond1)
            } else if c.cond2 {
                (&one - rr.recip(), TheoremCase::RCond2)
            } else {
                (base.clone(), TheoremCase::RDefault)
            }
        }
    };
    trace.push("case", case);
    trace.push("delta_star", &value);
    Ok(ThresholdReport {
        delta_star: value,
        theorem_case: case,
        profile,
        delta0: d0,
        conditions: conds,
        butterflies,
        component_density,
        trace: trace.0,
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
            let rep = delta_star(&Graph::complete(r)).unwrap();
            let want = q(3, 4).max(q(r as i64, r as i64 + 1));
            assert_eq!(rep.delta_star, want, "K_{r}");
        }
    }

    #[test]
    fn bipartite_cases() {
        let rep = delta_star(&families::path(3)).unwrap();
        assert_eq!((rep.delta_star.clone(), rep.theorem_case), (q(1, 2), TheoremCase::BipartiteComponentDensity));
        let rep = delta_star(&families::cycle(4)).unwrap();
        assert_eq!((rep.delta_star, rep.theorem_case), (q(3, 4), TheoremCase::BipartiteRegular));
        // An isolated vertex gives a component of density 0.
        let h = families::path(3).disjoint_union(&Graph::empty(1));
        let rep = delta_star(&h).unwrap();
        assert_eq!(rep.theorem_case, TheoremCase::BipartiteChiStar);
    }

    #[test]
    fn k4_minus_edge_value() {
        let rep = delta_star(&families::k4_minus_edge()).unwrap();
        assert_eq!(rep.delta_star, q(5, 8));
        assert!(rep.delta_star >= rep.trivial_lower_bound());
    }

    #[test]
    fn conditions_for_small_cliques() {
        for r in [4, 5] {
            let c = conditions(&Graph::complete(r)).unwrap();
            assert!(c.cond1 && c.cond2);
        }
        assert!(matches!(conditions(&Graph::complete(3)), Err(Error::Contract(_))));
    }
}
