//! Explicit witnesses: blowups with pairs of perfect `H`-factors of
//! different discrepancy, lower-bound host constructions and the auxiliary
//! graph `H*`.

mod blowup;
mod hstar;
mod lower;
mod recipes;

pub use blowup::{
    balanced_blowup_factor, blowup, build_factor, cluster_edge_counts, cover_of, BlowupSpec,
    ExplicitFactor, FactorBuilder,
};
pub use recipes::{template_witness, Recipe, TemplateWitness};
pub use hstar::{
    build_h_star, chi_cr_of_parts, parts_hcf_is_one, FactorBlock, HStarChecks, HStarGraph, HStarPath,
    HStarResult, PerturbedInternals,
};
pub use lower::{lower_bound_construction, FactorClaim, LowerBoundCase, LowerBoundConstruction};
