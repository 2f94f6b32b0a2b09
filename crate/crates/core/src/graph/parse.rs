//! Plain-text edge lists.
//!
//! The first non-comment line holds the vertex count `n`; every further
//! non-comment line is an edge `u v` (or `u v c` in the colored format, with
//! `c` one of `+1`, `-1`, `+`, `-`). `#` starts a comment that runs to the end
//! of the line, and blank lines are ignored.

use std::fmt::Write as _;

use super::{ColoredGraph, Graph, Sign};
use crate::error::{Error, Result};

/// Non-empty, comment-stripped lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

fn parse_header<'a>(
    lines: &mut impl Iterator<Item = (usize, Vec<&'a str>)>,
) -> Result<usize> {
    let (ln, toks) = lines
        .next()
        .ok_or_else(|| Error::parse(0, "missing vertex count line"))?;
    if toks.len() != 1 {
        return Err(Error::parse(ln, "the first line must contain only the vertex count"));
    }
    toks[0]
        .parse()
        .map_err(|_| Error::parse(ln, format!("bad vertex count {:?}", toks[0])))
}

fn parse_endpoint(ln: usize, tok: &str, n: usize) -> Result<usize> {
    let v: usize = tok
        .parse()
        .map_err(|_| Error::parse(ln, format!("bad vertex {tok:?}")))?;
    if v >= n {
        return Err(Error::parse(ln, format!("vertex {v} out of range (n = {n})")));
    }
    Ok(v)
}

fn parse_pair(ln: usize, toks: &[&str], n: usize) -> Result<(usize, usize)> {
    let u = parse_endpoint(ln, toks[0], n)?;
    let v = parse_endpoint(ln, toks[1], n)?;
    if u == v {
        return Err(Error::parse(ln, format!("loop at vertex {u}")));
    }
    Ok((u, v))
}

/// Parse an uncolored edge list. Repeated edges collapse.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let n = parse_header(&mut lines)?;
    let mut edges = Vec::new();
    for (ln, toks) in lines {
        if toks.len() != 2 {
            return Err(Error::parse(ln, "expected \"u v\""));
        }
        edges.push(parse_pair(ln, &toks, n)?);
    }
    Graph::new(n, edges)
}

fn parse_sign(ln: usize, tok: &str) -> Result<Sign> {
    match tok {
        "+1" | "+" => Ok(Sign::Plus),
        "-1" | "-" => Ok(Sign::Minus),
        _ => Err(Error::parse(ln, format!("bad edge color {tok:?}"))),
    }
}

/// Parse a colored edge list. Repeated edges must repeat the same color.
pub fn parse_colored_edge_list(text: &str) -> Result<ColoredGraph> {
    let mut lines = content_lines(text);
    let n = parse_header(&mut lines)?;
    let mut edges = Vec::new();
    for (ln, toks) in lines {
        if toks.len() != 3 {
            return Err(Error::parse(ln, "expected \"u v c\""));
        }
        let (u, v) = parse_pair(ln, &toks, n)?;
        edges.push((u, v, parse_sign(ln, toks[2])?));
    }
    ColoredGraph::from_colored_edges(n, edges).map_err(|e| Error::parse(0, e.to_string()))
}

/// Serialize in the uncolored edge-list format.
pub fn write_edge_list(g: &Graph) -> String {
    let mut s = format!("{}\n", g.n());
    for &(u, v) in g.edges() {
        writeln!(s, "{u} {v}").expect("string write");
    }
    s
}

/// Serialize in the colored edge-list format.
pub fn write_colored_edge_list(g: &ColoredGraph) -> String {
    let mut s = format!("{}\n", g.n());
    for (&(u, v), c) in g.graph().edges().iter().zip(g.colors()) {
        let c = if *c == Sign::Plus { "+1" } else { "-1" };
        writeln!(s, "{u} {v} {c}").expect("string write");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_on_three_vertices() {
        let g = parse_edge_list("3\n0 1\n1 2").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn k4_minus_an_edge() {
        let g = parse_edge_list("4\n0 1\n0 2\n0 3\n1 2\n1 3").unwrap();
        assert_eq!(g.e(), 5);
        assert!(!g.has_edge(2, 3));
    }

    #[test]
    fn loops_and_ranges_rejected_with_line() {
        assert_eq!(
            parse_edge_list("2\n0 0"),
            Err(Error::parse(2, "loop at vertex 0"))
        );
        assert!(matches!(parse_edge_list("2\n# c\n0 5"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_edge_list("x"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_edge_list("3\n0 1 2"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn comments_and_isolated_vertices() {
        let g = parse_edge_list("# header\n5 # five vertices\n\n0 1 # edge\n").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.e(), 1);
    }

    #[test]
    fn colored_formats() {
        let g = parse_colored_edge_list("3\n0 1 +\n1 2 -1\n0 2 +1").unwrap();
        assert_eq!(g.color(0, 1), Some(Sign::Plus));
        assert_eq!(g.color(2, 1), Some(Sign::Minus));
        assert!(parse_colored_edge_list("2\n0 1 2").is_err());
        assert!(parse_colored_edge_list("2\n0 1 +\n1 0 -").is_err());
    }

    #[test]
    fn writers_round_trip() {
        let g = parse_colored_edge_list("4\n0 1 +\n2 3 -\n1 2 -").unwrap();
        assert_eq!(parse_colored_edge_list(&write_colored_edge_list(&g)).unwrap(), g);
        let h = g.graph().clone();
        assert_eq!(parse_edge_list(&write_edge_list(&h)).unwrap(), h);
    }
}
