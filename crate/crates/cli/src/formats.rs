//! Text formats for graphs, branch decompositions, and tree decompositions.
//!
//! Ids are 1-based in files, 0-based in memory; the boundary converts. Blank
//! lines and `c`-comment lines are accepted anywhere on input and never
//! emitted. Serialization is canonical — records sorted, one space between
//! tokens — so parse then serialize reproduces a canonical file byte for
//! byte.
//!
//! Graphs are DIMACS-style: one `p edge <vertices> <edges>` header, then one
//! `e <u> <v>` line per edge. Branch decompositions carry a header
//! `s bd <tree-nodes> <elements>`, tree edges `e <i> <j>`, and leaf-map
//! lines `l <tree-node> <element>`; elements over an edge ground set are
//! edge indices in the graph file's edge order. Tree decompositions follow
//! the PACE layout: `s td <bags> <max-bag-size> <vertices>`, bag lines
//! `b <id> <v...>`, then bare `<i> <j>` tree edges.

use std::fmt;

use widthforge_core::{BranchDecomposition, Graph, Ground, TreeDecomposition};

/// A parse failure pointing at its 1-based input line.
#[derive(Clone, Debug)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

type Parsed<T> = std::result::Result<T, ParseError>;

fn fail<T>(line: usize, message: impl Into<String>) -> Parsed<T> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

fn parse_count(line: usize, token: Option<&str>, what: &str) -> Parsed<usize> {
    match token {
        None => fail(line, format!("missing {what}")),
        Some(raw) => raw
            .parse()
            .map_err(|_| ParseError {
                line,
                message: format!("unreadable {what} `{raw}`"),
            }),
    }
}

/// A 1-based id token, converted to 0-based.
fn parse_id(line: usize, token: Option<&str>, what: &str, limit: usize) -> Parsed<u32> {
    let raw = parse_count(line, token, what)?;
    if raw == 0 || raw > limit {
        return fail(line, format!("{what} {raw} outside 1..={limit}"));
    }
    Ok((raw - 1) as u32)
}

fn reject_extras(line: usize, mut rest: std::str::SplitWhitespace) -> Parsed<()> {
    match rest.next() {
        Some(tok) => fail(line, format!("trailing token `{tok}`")),
        None => Ok(()),
    }
}

/// Lines that carry content: skips blanks and `c` comments, keeps 1-based
/// numbering.
fn records(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(idx, raw)| {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed == "c" || trimmed.starts_with("c ") {
            None
        } else {
            Some((idx + 1, trimmed))
        }
    })
}

pub fn parse_graph(text: &str) -> Parsed<Graph> {
    let mut header: Option<(usize, usize, usize)> = None; // (line, n, m)
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut last_line = 0;
    for (line, record) in records(text) {
        last_line = line;
        let mut parts = record.split_whitespace();
        match parts.next() {
            Some("p") => {
                if header.is_some() {
                    return fail(line, "second `p` header");
                }
                if parts.next() != Some("edge") {
                    return fail(line, "expected `p edge <vertices> <edges>`");
                }
                let n = parse_count(line, parts.next(), "vertex count")?;
                let m = parse_count(line, parts.next(), "edge count")?;
                reject_extras(line, parts)?;
                header = Some((line, n, m));
            }
            Some("e") => {
                let Some((_, n, _)) = header else {
                    return fail(line, "edge record before the `p edge` header");
                };
                let u = parse_id(line, parts.next(), "vertex", n)?;
                let v = parse_id(line, parts.next(), "vertex", n)?;
                reject_extras(line, parts)?;
                if u == v {
                    return fail(line, format!("self-loop at vertex {}", u + 1));
                }
                let pair = (u.min(v), u.max(v));
                if edges.contains(&pair) {
                    return fail(line, format!("duplicate edge {} {}", pair.0 + 1, pair.1 + 1));
                }
                edges.push(pair);
            }
            Some(other) => return fail(line, format!("unknown record `{other}`")),
            None => unreachable!("records are non-empty"),
        }
    }
    let Some((header_line, n, m)) = header else {
        return fail(last_line.max(1), "missing `p edge` header");
    };
    if edges.len() != m {
        return fail(
            header_line,
            format!("header promises {m} edges, file has {}", edges.len()),
        );
    }
    Graph::from_edges(n, &edges).map_err(|e| ParseError {
        line: header_line,
        message: e.to_string(),
    })
}

pub fn serialize_graph(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

/// The ground set is not recorded in the file; the caller knows whether the
/// elements are vertices or edge indices.
pub fn parse_bd(text: &str, ground: Ground) -> Parsed<BranchDecomposition> {
    let mut header: Option<(usize, usize, usize)> = None; // (line, nodes, elements)
    let mut tree_edges: Vec<(u32, u32)> = Vec::new();
    let mut element_leaf: Vec<u32> = Vec::new();
    let mut mapped_lines: Vec<usize> = Vec::new();
    let mut last_line = 0;
    for (line, record) in records(text) {
        last_line = line;
        let mut parts = record.split_whitespace();
        match parts.next() {
            Some("s") => {
                if header.is_some() {
                    return fail(line, "second `s` header");
                }
                if parts.next() != Some("bd") {
                    return fail(line, "expected `s bd <tree-nodes> <elements>`");
                }
                let nodes = parse_count(line, parts.next(), "tree-node count")?;
                let elements = parse_count(line, parts.next(), "element count")?;
                reject_extras(line, parts)?;
                header = Some((line, nodes, elements));
                element_leaf = vec![u32::MAX; elements];
                mapped_lines = vec![0; elements];
            }
            Some("e") => {
                let Some((_, nodes, _)) = header else {
                    return fail(line, "tree edge before the `s bd` header");
                };
                let a = parse_id(line, parts.next(), "tree node", nodes)?;
                let b = parse_id(line, parts.next(), "tree node", nodes)?;
                reject_extras(line, parts)?;
                tree_edges.push((a, b));
            }
            Some("l") => {
                let Some((_, nodes, elements)) = header else {
                    return fail(line, "leaf record before the `s bd` header");
                };
                let node = parse_id(line, parts.next(), "tree node", nodes)?;
                let element = parse_id(line, parts.next(), "element", elements)?;
                reject_extras(line, parts)?;
                if element_leaf[element as usize] != u32::MAX {
                    return fail(
                        line,
                        format!(
                            "element {} already mapped on line {}",
                            element + 1,
                            mapped_lines[element as usize]
                        ),
                    );
                }
                element_leaf[element as usize] = node;
                mapped_lines[element as usize] = line;
            }
            Some(other) => return fail(line, format!("unknown record `{other}`")),
            None => unreachable!("records are non-empty"),
        }
    }
    let Some((header_line, nodes, _)) = header else {
        return fail(last_line.max(1), "missing `s bd` header");
    };
    if let Some(missing) = element_leaf.iter().position(|&leaf| leaf == u32::MAX) {
        return fail(header_line, format!("element {} is never mapped", missing + 1));
    }
    BranchDecomposition::new(nodes, tree_edges, element_leaf, ground).map_err(|e| ParseError {
        line: header_line,
        message: e.to_string(),
    })
}

pub fn serialize_bd(bd: &BranchDecomposition) -> String {
    let mut out = format!("s bd {} {}\n", bd.node_count(), bd.element_count());
    for &(a, b) in bd.tree_edges() {
        out.push_str(&format!("e {} {}\n", a + 1, b + 1));
    }
    for (element, &leaf) in bd.element_leaves().iter().enumerate() {
        out.push_str(&format!("l {} {}\n", leaf + 1, element + 1));
    }
    out
}

/// Returns the decomposition together with the header's vertex count, which
/// the decomposition itself does not store.
pub fn parse_td(text: &str) -> Parsed<(TreeDecomposition, usize)> {
    let mut header: Option<(usize, usize, usize, usize)> = None; // (line, bags, max, n)
    let mut bags: Vec<Option<Vec<u32>>> = Vec::new();
    let mut tree_edges: Vec<(u32, u32)> = Vec::new();
    let mut last_line = 0;
    for (line, record) in records(text) {
        last_line = line;
        let mut parts = record.split_whitespace();
        match parts.next() {
            Some("s") => {
                if header.is_some() {
                    return fail(line, "second `s` header");
                }
                if parts.next() != Some("td") {
                    return fail(line, "expected `s td <bags> <max-bag-size> <vertices>`");
                }
                let count = parse_count(line, parts.next(), "bag count")?;
                let max_size = parse_count(line, parts.next(), "largest bag size")?;
                let n = parse_count(line, parts.next(), "vertex count")?;
                reject_extras(line, parts)?;
                header = Some((line, count, max_size, n));
                bags = vec![None; count];
            }
            Some("b") => {
                let Some((_, count, _, n)) = header else {
                    return fail(line, "bag record before the `s td` header");
                };
                let id = parse_id(line, parts.next(), "bag id", count)?;
                if bags[id as usize].is_some() {
                    return fail(line, format!("bag {} listed twice", id + 1));
                }
                let mut bag = Vec::new();
                for token in parts {
                    bag.push(parse_id(line, Some(token), "vertex", n)?);
                }
                bags[id as usize] = Some(bag);
            }
            Some(first) => {
                let Some((_, count, _, _)) = header else {
                    return fail(line, "tree edge before the `s td` header");
                };
                let a = parse_id(line, Some(first), "bag id", count)?;
                let b = parse_id(line, parts.next(), "bag id", count)?;
                reject_extras(line, parts)?;
                tree_edges.push((a, b));
            }
            None => unreachable!("records are non-empty"),
        }
    }
    let Some((header_line, _, max_size, n)) = header else {
        return fail(last_line.max(1), "missing `s td` header");
    };
    let mut filled = Vec::with_capacity(bags.len());
    for (id, bag) in bags.into_iter().enumerate() {
        match bag {
            Some(bag) => filled.push(bag),
            None => return fail(header_line, format!("bag {} is never listed", id + 1)),
        }
    }
    let largest = filled.iter().map(Vec::len).max().unwrap_or(0);
    if largest != max_size {
        return fail(
            header_line,
            format!("header says largest bag {max_size}, bags reach {largest}"),
        );
    }
    let td = TreeDecomposition::new(filled, tree_edges).map_err(|e| ParseError {
        line: header_line,
        message: e.to_string(),
    })?;
    Ok((td, n))
}

pub fn serialize_td(td: &TreeDecomposition, vertex_count: usize) -> String {
    let largest = td.bags().iter().map(Vec::len).max().unwrap_or(0);
    let mut out = format!("s td {} {} {}\n", td.bag_count(), largest, vertex_count);
    for (id, bag) in td.bags().iter().enumerate() {
        out.push_str(&format!("b {}", id + 1));
        for &v in bag {
            out.push_str(&format!(" {}", v + 1));
        }
        out.push('\n');
    }
    for &(a, b) in td.tree_edges() {
        out.push_str(&format!("{} {}\n", a + 1, b + 1));
    }
    out
}
