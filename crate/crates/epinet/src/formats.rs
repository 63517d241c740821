//! Edge-list and node-attribute text formats.
//!
//! Edge lists hold one edge per line as `u v` or `u v w`, separated by
//! whitespace or commas; blank lines and lines starting with `#` are skipped.
//! Node ids therefore cannot contain whitespace or commas. Repeated `u v`
//! lines sum their weights; lines without a weight count as 1.
//!
//! Attribute files hold `node,attr1;attr2;...` or `node attr` per line.
//! Repeated lines for one node accumulate.

use std::io::{BufRead, Write};

use epinet_core::{GraphBuilder, TestimonialGraph};

use crate::error::{Error, Result};

/// An attribute line naming a node absent from the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttributeWarning {
    pub line: usize,
    pub node: String,
}

fn content_lines(reader: impl BufRead) -> impl Iterator<Item = Result<(usize, String)>> {
    reader
        .lines()
        .enumerate()
        .map(|(i, line)| line.map(|l| (i + 1, l)).map_err(Error::from))
        .filter(|r| match r {
            Ok((_, l)) => {
                let t = l.trim();
                !t.is_empty() && !t.starts_with('#')
            }
            Err(_) => true,
        })
}

/// Parses an edge list. With `weighted == false` a third column is ignored.
pub fn load_edge_list(reader: impl BufRead, directed: bool, weighted: bool) -> Result<TestimonialGraph> {
    let mut builder = GraphBuilder::new(directed);
    for item in content_lines(reader) {
        let (no, line) = item?;
        let tokens: Vec<&str> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect();
        let weight = match tokens.len() {
            2 => 1.0,
            3 if !weighted => 1.0,
            3 => {
                let w: f64 = tokens[2]
                    .parse()
                    .map_err(|_| Error::parse(no, format!("weight {:?} is not a number", tokens[2])))?;
                if w.is_nan() {
                    return Err(Error::parse(no, "weight is NaN"));
                }
                if w < 0.0 || w.is_infinite() {
                    return Err(Error::invalid(format!("line {no}: weight {w} must be finite and non-negative")));
                }
                w
            }
            n => return Err(Error::parse(no, format!("expected `u v` or `u v w`, found {n} fields"))),
        };
        builder.add_edge(tokens[0], tokens[1], weight)?;
    }
    Ok(builder.build())
}

/// Applies an attribute file to `graph`, returning a warning for every line
/// whose node is not in the graph.
pub fn load_attributes(graph: &mut TestimonialGraph, reader: impl BufRead) -> Result<Vec<AttributeWarning>> {
    let mut warnings = Vec::new();
    for item in content_lines(reader) {
        let (no, line) = item?;
        let line = line.trim();
        let (node, list) = match line.split_once(',') {
            Some((node, list)) => (node.trim(), list),
            None => {
                let mut parts = line.split_whitespace();
                match (parts.next(), parts.next(), parts.next()) {
                    (Some(node), Some(attr), None) => (node, attr),
                    _ => return Err(Error::parse(no, "expected `node,attr;attr` or `node attr`")),
                }
            }
        };
        if node.is_empty() {
            return Err(Error::parse(no, "missing node id"));
        }
        let attrs: Vec<&str> = list.split(';').map(str::trim).collect();
        if attrs.iter().any(|a| a.is_empty()) {
            return Err(Error::invalid(format!("line {no}: empty attribute for node {node}")));
        }
        match graph.node_index(node) {
            Some(i) => {
                let mut merged = graph.attributes(i).clone();
                merged.extend(attrs.into_iter().map(str::to_owned));
                graph.set_attributes(node, merged)?;
            }
            None => warnings.push(AttributeWarning { line: no, node: node.to_owned() }),
        }
    }
    Ok(warnings)
}

/// Writes `u v w` lines that [`load_edge_list`] reads back to an equal graph.
/// Nodes without edges cannot be represented and are dropped.
pub fn write_edge_list(graph: &TestimonialGraph, mut out: impl Write) -> Result<()> {
    for (u, v, w) in graph.edges() {
        writeln!(out, "{} {} {}", graph.name(u), graph.name(v), w)?;
    }
    Ok(())
}
