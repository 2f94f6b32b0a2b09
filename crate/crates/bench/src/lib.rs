//! Shared inputs for the criterion benchmarks.

use hdisc_core::families::{butterfly_graph, k4_minus_edge, octahedron_minus_edge};
use hdisc_core::template::frame_catalog;
use hdisc_core::witness::{blowup, BlowupSpec};
use hdisc_core::{ColoredGraph, Graph};

/// Named graphs that exercise the three-chromatic and four-chromatic paths.
pub fn graphs() -> Vec<(&'static str, Graph)> {
    vec![
        ("k4_minus_edge", k4_minus_edge()),
        ("butterfly", butterfly_graph()),
        ("octahedron_minus_edge", octahedron_minus_edge()),
        ("k5", Graph::complete(5)),
    ]
}

/// A triangle together with a balanced blowup of a two-colored triangle,
/// sized so that full factor enumeration takes milliseconds.
pub fn enumeration_host(per_part: usize) -> (Graph, ColoredGraph) {
    let frame = frame_catalog(&"kr:3,1".parse().unwrap()).unwrap();
    let host = blowup(&BlowupSpec::new(frame, vec![per_part; 3]).unwrap()).unwrap();
    (Graph::complete(3), host)
}
