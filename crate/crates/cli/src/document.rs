//! The line-based graph file format.
//!
//! ```text
//! graph <name>                      | rowgraph <name>
//! vertex <id>
//! edge <id> <src> <dst> [<mult>|inf]
//! row <id> [up <rowid>]
//! ```
//!
//! `#` starts a comment. Tokens are separated by any whitespace.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use leavitt_core::row_graphs::{RowGraph, RowGraphError};
use leavitt_core::{Graph, RawGraph, XNat};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    Graph(Graph),
    Rows(RowGraph),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphDocument {
    pub name: String,
    pub body: Body,
    pub source_file: Option<PathBuf>,
}

/// A parse failure at a 1-based line and column.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Token<'_> {
    fn error(&self, message: impl fmt::Display) -> ParseError {
        ParseError { line: self.line, column: self.column, message: message.to_string() }
    }
}

fn tokenize(text: &str) -> Vec<Vec<Token<'_>>> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    let column = content[..s].chars().count() + 1;
                    tokens.push(Token { text: &content[s..pos], line: i + 1, column });
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            lines.push(tokens);
        }
    }
    lines
}

fn arity(tokens: &[Token<'_>], min: usize, max: usize, usage: &str) -> Result<(), ParseError> {
    if tokens.len() < min {
        let last = tokens.last().expect("nonempty line");
        return Err(ParseError {
            line: last.line,
            column: last.column + last.text.chars().count(),
            message: format!("expected `{usage}`"),
        });
    }
    if tokens.len() > max {
        return Err(tokens[max].error(format!("unexpected token `{}`; expected `{usage}`", tokens[max].text)));
    }
    Ok(())
}

fn parse_multiplicity(tok: &Token<'_>) -> Result<XNat, ParseError> {
    if tok.text == "inf" {
        return Ok(XNat::Omega);
    }
    match tok.text.parse::<u64>() {
        Ok(0) => Err(tok.error("multiplicity must be at least 1")),
        Ok(n) => Ok(XNat::Fin(n)),
        Err(_) => Err(tok.error(format!("invalid multiplicity `{}` (expected a positive integer or `inf`)", tok.text))),
    }
}

pub fn parse_graph_file(text: &str) -> Result<GraphDocument, ParseError> {
    let lines = tokenize(text);
    let Some(header) = lines.first() else {
        return Err(ParseError {
            line: 1,
            column: 1,
            message: "empty document: expected `graph <name>` or `rowgraph <name>`".into(),
        });
    };
    let keyword = header[0];
    match keyword.text {
        "graph" => {
            arity(header, 2, 2, "graph <name>")?;
            let graph = parse_graph_body(&lines[1..])?;
            Ok(GraphDocument { name: header[1].text.to_string(), body: Body::Graph(graph), source_file: None })
        }
        "rowgraph" => {
            arity(header, 2, 2, "rowgraph <name>")?;
            let rows = parse_row_body(&lines[1..])?;
            Ok(GraphDocument { name: header[1].text.to_string(), body: Body::Rows(rows), source_file: None })
        }
        other => Err(keyword.error(format!("expected `graph` or `rowgraph`, found `{other}`"))),
    }
}

fn parse_graph_body(lines: &[Vec<Token<'_>>]) -> Result<Graph, ParseError> {
    let mut vertices: BTreeMap<&str, Token<'_>> = BTreeMap::new();
    let mut edges: Vec<[Token<'_>; 3]> = Vec::new();
    let mut edge_ids: BTreeMap<&str, Token<'_>> = BTreeMap::new();
    let mut raw = RawGraph::new();
    for tokens in lines {
        match tokens[0].text {
            "vertex" => {
                arity(tokens, 2, 2, "vertex <id>")?;
                let id = tokens[1];
                if let Some(prev) = vertices.insert(id.text, id) {
                    return Err(
                        id.error(format!("duplicate vertex `{}` (first declared at line {})", id.text, prev.line))
                    );
                }
                raw = raw.vertex(id.text);
            }
            "edge" => {
                arity(tokens, 4, 5, "edge <id> <src> <dst> [<mult>|inf]")?;
                let id = tokens[1];
                if let Some(prev) = edge_ids.insert(id.text, id) {
                    return Err(
                        id.error(format!("duplicate edge `{}` (first declared at line {})", id.text, prev.line))
                    );
                }
                let mult = match tokens.get(4) {
                    Some(tok) => parse_multiplicity(tok)?,
                    None => XNat::ONE,
                };
                raw = raw.bundle(id.text, tokens[2].text, tokens[3].text, mult);
                edges.push([id, tokens[2], tokens[3]]);
            }
            "row" | "graph" | "rowgraph" => {
                return Err(tokens[0].error(format!("`{}` is not allowed in a graph document", tokens[0].text)));
            }
            other => return Err(tokens[0].error(format!("unknown directive `{other}`"))),
        }
    }
    for [_, src, dst] in &edges {
        for end in [src, dst] {
            if !vertices.contains_key(end.text) {
                return Err(end.error(format!("unknown vertex `{}`", end.text)));
            }
        }
    }
    Ok(raw.build().expect("checked above"))
}

fn parse_row_body(lines: &[Vec<Token<'_>>]) -> Result<RowGraph, ParseError> {
    let mut rows: Vec<(String, Option<String>)> = Vec::new();
    for tokens in lines {
        match tokens[0].text {
            "row" => {
                arity(tokens, 2, 4, "row <id> [up <rowid>]")?;
                let id = tokens[1];
                let target = match tokens.get(2) {
                    None => None,
                    Some(kw) if kw.text == "up" => {
                        arity(tokens, 4, 4, "row <id> [up <rowid>]")?;
                        Some(tokens[3])
                    }
                    Some(kw) => return Err(kw.error(format!("expected `up`, found `{}`", kw.text))),
                };
                let mut next = rows.clone();
                next.push((id.text.to_string(), target.map(|t| t.text.to_string())));
                match RowGraph::new(&next) {
                    Ok(_) => rows = next,
                    Err(RowGraphError::DuplicateRow(r)) => return Err(id.error(format!("duplicate row `{r}`"))),
                    Err(RowGraphError::TargetNotEarlier { target: t, .. }) => {
                        let tok = target.expect("only raised for targets");
                        return Err(tok.error(format!("up-target `{t}` must be a row declared earlier")));
                    }
                    Err(e) => return Err(id.error(e)),
                }
            }
            "vertex" | "edge" | "graph" | "rowgraph" => {
                return Err(tokens[0].error(format!("`{}` is not allowed in a rowgraph document", tokens[0].text)));
            }
            other => return Err(tokens[0].error(format!("unknown directive `{other}`"))),
        }
    }
    Ok(RowGraph::new(&rows).expect("validated row by row"))
}

/// Canonical text: header, then vertices and edges sorted by id (rows in
/// declaration order). Multiplicity 1 is omitted, `ω` is written `inf`.
pub fn emit(doc: &GraphDocument) -> String {
    let mut out = String::new();
    match &doc.body {
        Body::Graph(g) => {
            out.push_str(&format!("graph {}\n", doc.name));
            for v in g.vertices() {
                out.push_str(&format!("vertex {}\n", g.name(v)));
            }
            for b in g.bundles() {
                out.push_str(&format!("edge {} {} {}", b.id, g.name(b.source), g.name(b.range)));
                match b.multiplicity {
                    XNat::Fin(1) => {}
                    XNat::Fin(n) => out.push_str(&format!(" {n}")),
                    XNat::Omega => out.push_str(" inf"),
                }
                out.push('\n');
            }
        }
        Body::Rows(rg) => {
            out.push_str(&format!("rowgraph {}\n", doc.name));
            for r in 0..rg.len() {
                match rg.up_target(r) {
                    Some(t) => out.push_str(&format!("row {} up {}\n", rg.name(r), rg.name(t))),
                    None => out.push_str(&format!("row {}\n", rg.name(r))),
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use leavitt_core::row_graphs::pyramid;

    fn graph(doc: &GraphDocument) -> &Graph {
        match &doc.body {
            Body::Graph(g) => g,
            Body::Rows(_) => panic!("expected a graph"),
        }
    }

    #[test]
    fn loop_graph() {
        let doc = parse_graph_file("graph g\nvertex v\nedge e v v").unwrap();
        assert_eq!(doc.name, "g");
        let g = graph(&doc);
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.bundles()[0].multiplicity, XNat::ONE);
    }

    #[test]
    fn breaking_example() {
        let doc = parse_graph_file("graph g\nvertex u\nvertex h\nvertex z\nedge a u h inf\nedge b u z").unwrap();
        let g = graph(&doc);
        assert_eq!(g.names(), ["h", "u", "z"]);
        assert_eq!(g.bundle(g.bundle_by_id("a").unwrap()).multiplicity, XNat::Omega);
        assert!(g.is_infinite_emitter(g.vertex("u").unwrap()));
    }

    #[test]
    fn pyramid_document() {
        let doc = parse_graph_file("rowgraph p3\nrow r1\nrow r2 up r1\nrow r3 up r2").unwrap();
        assert_eq!(doc.body, Body::Rows(pyramid(3).unwrap()));
    }

    #[test]
    fn comments_and_whitespace() {
        let text = "# leading comment\n\n  graph   g  # trailing\nvertex\tv\n   edge e v v 2 # two copies\n";
        let doc = parse_graph_file(text).unwrap();
        assert_eq!(graph(&doc).bundles()[0].multiplicity, XNat::Fin(2));
    }

    #[test]
    fn positioned_errors() {
        let err = |text: &str| parse_graph_file(text).unwrap_err();
        assert_eq!(
            err("graph g\nvertex v\nedge e v w"),
            ParseError { line: 3, column: 10, message: "unknown vertex `w`".into() }
        );
        let e = err("graph g\nvertex v\nvertex v");
        assert_eq!((e.line, e.column), (3, 8));
        assert!(e.message.contains("duplicate vertex"));
        let e = err("graph g\nvertex v\nedge e v v 0");
        assert_eq!((e.line, e.column), (3, 12));
        let e = err("graph g\nvertex v\nedge e v v many");
        assert_eq!((e.line, e.column), (3, 12));
        let e = err("graph g\nvertex v\nedge e v v\nedge e v v");
        assert!(e.message.contains("duplicate edge"));
        let e = err("graph g\nvertex v\nedge e v");
        assert_eq!((e.line, e.column), (3, 9));
        let e = err("digraph g");
        assert_eq!((e.line, e.column), (1, 1));
        let e = err("");
        assert_eq!(e.line, 1);
        let e = err("rowgraph p\nrow a up b\nrow b");
        assert_eq!((e.line, e.column), (2, 10));
        let e = err("rowgraph p\nrow a\nrow a");
        assert_eq!((e.line, e.column), (3, 5));
        let e = err("rowgraph p\nrow a over b");
        assert_eq!((e.line, e.column), (2, 7));
        let e = err("graph g\nrow a");
        assert!(e.message.contains("not allowed"));
        let e = err("graph g\nvertex v w");
        assert_eq!((e.line, e.column), (2, 10));
    }

    #[test]
    fn emit_is_canonical() {
        let text = "graph g\nvertex z\nvertex u\nvertex h\nedge b u z 1\nedge a u h inf\nedge c z z 3\n";
        let doc = parse_graph_file(text).unwrap();
        let canonical = emit(&doc);
        assert_eq!(canonical, "graph g\nvertex h\nvertex u\nvertex z\nedge a u h inf\nedge b u z\nedge c z z 3\n");
        let again = parse_graph_file(&canonical).unwrap();
        assert_eq!(again, doc);
        assert_eq!(emit(&again), canonical);

        let rows = parse_graph_file("rowgraph p\nrow b\nrow a up b\n").unwrap();
        assert_eq!(emit(&rows), "rowgraph p\nrow b\nrow a up b\n");
    }
}
