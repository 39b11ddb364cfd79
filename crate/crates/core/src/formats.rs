//! Plain-text formats.
//!
//! * Edge list: one edge per line, two whitespace-separated tokens.
//! * Facet list: one facet per line, whitespace-separated tokens.
//! * Catalog: a `#` header, then edge lists separated by `# member` lines.
//!
//! Lines starting with `#` are comments (the catalog reader gives `# member`
//! lines meaning). Tokens are arbitrary strings numbered in first-seen order.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::simplicial::{Face, SimplicialComplex, MAX_VERTICES};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    parse_edges(content_lines(text))
}

fn parse_edges<'a>(lines: impl Iterator<Item = (usize, &'a str)>) -> Result<Graph> {
    let mut pairs = Vec::new();
    for (line, l) in lines {
        let tokens: Vec<&str> = l.split_whitespace().collect();
        match tokens[..] {
            [a, b] if a == b => return Err(Error::Parse { line, message: format!("self-loop at {a:?}") }),
            [a, b] => pairs.push((a, b)),
            _ => {
                return Err(Error::Parse { line, message: format!("expected two vertex tokens, found {}", tokens.len()) })
            }
        }
    }
    Graph::from_labeled_edges(pairs)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", g.label(u), g.label(v));
    }
    out
}

/// A facet-list complex together with the token of each vertex id.
#[derive(Clone, Debug)]
pub struct ParsedComplex {
    pub complex: SimplicialComplex,
    pub labels: Vec<String>,
}

pub fn parse_facet_list(text: &str) -> Result<ParsedComplex> {
    let mut index: HashMap<&str, u32> = HashMap::new();
    let mut labels = Vec::new();
    let mut faces = Vec::new();
    for (line, l) in content_lines(text) {
        let mut ids = Vec::new();
        for tok in l.split_whitespace() {
            let next = index.len() as u32;
            let id = *index.entry(tok).or_insert(next);
            if id == next {
                labels.push(tok.to_string());
            }
            ids.push(id);
        }
        if labels.len() > MAX_VERTICES {
            return Err(Error::Parse { line, message: format!("more than {MAX_VERTICES} distinct vertices") });
        }
        faces.push(Face::from_vertices(ids)?);
    }
    if faces.is_empty() {
        return Err(Error::Parse { line: 0, message: "no facets".into() });
    }
    Ok(ParsedComplex { complex: SimplicialComplex::generated_by(faces), labels })
}

pub fn write_facet_list(cx: &SimplicialComplex) -> String {
    let mut out = String::new();
    for f in cx.facets() {
        let names: Vec<String> = f.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", names.join(" "));
    }
    out
}

const MEMBER_MARK: &str = "# member";

/// Header lines (without `# `) followed by one edge-list block per graph.
pub fn write_catalog(header: &[String], graphs: &[Graph]) -> String {
    let mut out = String::new();
    for h in header {
        let _ = writeln!(out, "# {h}");
    }
    for (i, g) in graphs.iter().enumerate() {
        let _ = writeln!(out, "{MEMBER_MARK} {} (vertices {}, edges {})", i + 1, g.n(), g.m());
        out.push_str(&write_edge_list(g));
    }
    out
}

/// `# member <index> ...`; other comments, such as a member count, are not marks.
fn is_member_mark(line: &str) -> bool {
    line.strip_prefix(MEMBER_MARK)
        .and_then(|rest| rest.strip_prefix(' '))
        .is_some_and(|rest| rest.starts_with(|c: char| c.is_ascii_digit()))
}

pub fn parse_catalog(text: &str) -> Result<Vec<Graph>> {
    let mut blocks: Vec<Vec<(usize, &str)>> = Vec::new();
    for (i, l) in text.lines().enumerate() {
        let l = l.trim();
        if is_member_mark(l) {
            blocks.push(Vec::new());
        } else if !l.is_empty() && !l.starts_with('#') {
            match blocks.last_mut() {
                Some(b) => b.push((i + 1, l)),
                None => return Err(Error::Parse { line: i + 1, message: "edge before the first member".into() }),
            }
        }
    }
    blocks.into_iter().map(|b| parse_edges(b.into_iter())).collect()
}
