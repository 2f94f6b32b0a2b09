//! Exact minimum-degree discrepancy thresholds for perfect `H`-factors.
//!
//! Given a graph `H`, the crate computes the threshold `δ*(H)` as an exact
//! rational together with the quantities it depends on (critical chromatic
//! number, `δ₀(H)`, structural predicates) and machine-checkable
//! certificates: LP-based template decisions with integer blowups, explicit
//! factor pairs, lower-bound constructions and the auxiliary graph `H*`.
//! A brute-force oracle re-checks certificates on small explicit hosts.

pub mod arith;
pub mod coloring;
pub mod error;
pub mod families;
pub mod graph;
pub mod oracle;
pub mod params;
pub mod structure;
pub mod template;
pub mod threshold;
pub mod witness;

pub use arith::{q, Rational};
pub use error::{Error, Result};
pub use graph::{ColoredGraph, Graph, Sign};
