use std::collections::BTreeMap;
use std::fmt::Write;

use thiserror::Error;

use super::{ColoredGraph, Edge, EdgeKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphFormatError {
    #[error("DOT syntax error near token {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("edge {0} has no color attribute")]
    MissingColor(String),
}

fn quote(s: &str) -> String {
    if !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        s.to_string()
    } else {
        format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

/// DOT with one statement per vertex and edge. Arcs carry `color=<generator>`;
/// involution edges are written once with `dir=none`, half-loops additionally
/// with `halfloop=true`.
pub fn write_dot(g: &ColoredGraph) -> String {
    let mut s = String::from("digraph cayley {\n");
    let _ = writeln!(s, "  generators={};", quote(&g.colors().join(",")));
    for v in 0..g.vertex_count() {
        let _ = writeln!(s, "  {v};");
    }
    for e in g.edges() {
        let color = quote(&g.colors()[e.color]);
        let extra = match e.kind {
            EdgeKind::Directed => "",
            EdgeKind::Involution => ", dir=none",
            EdgeKind::HalfLoop => ", dir=none, halfloop=true",
        };
        let _ = writeln!(s, "  {} -> {} [color={color}{extra}];", e.tail, e.head);
    }
    s.push_str("}\n");
    s
}

pub fn write_graphml(g: &ColoredGraph) -> String {
    let mut s = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    s.push_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n");
    s.push_str("  <key id=\"color\" for=\"edge\" attr.name=\"color\" attr.type=\"string\"/>\n");
    s.push_str("  <key id=\"kind\" for=\"edge\" attr.name=\"kind\" attr.type=\"string\"/>\n");
    s.push_str("  <graph id=\"cayley\" edgedefault=\"directed\">\n");
    for v in 0..g.vertex_count() {
        let _ = writeln!(s, "    <node id=\"n{v}\"/>");
    }
    for (i, e) in g.edges().iter().enumerate() {
        let kind = match e.kind {
            EdgeKind::Directed => "directed",
            EdgeKind::Involution => "involution",
            EdgeKind::HalfLoop => "halfloop",
        };
        let directed = if e.kind == EdgeKind::Directed { "" } else { " directed=\"false\"" };
        let color = g.colors()[e.color].replace('&', "&amp;").replace('<', "&lt;").replace('"', "&quot;");
        let _ = writeln!(
            s,
            "    <edge id=\"e{i}\" source=\"n{}\" target=\"n{}\"{directed}><data key=\"color\">{color}</data><data key=\"kind\">{kind}</data></edge>",
            e.tail, e.head
        );
    }
    s.push_str("  </graph>\n</graphml>\n");
    s
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Id(String),
    Sym(&'static str),
}

fn tokenize(text: &str) -> Result<Vec<Tok>, GraphFormatError> {
    let b = text.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    let err = |pos: usize, m: &str| GraphFormatError::Syntax { pos, message: m.to_string() };
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c == b'/' && b.get(i + 1) == Some(&b'/') || c == b'#' {
            while i < b.len() && b[i] != b'\n' {
                i += 1;
            }
        } else if c == b'/' && b.get(i + 1) == Some(&b'*') {
            let end = text[i + 2..].find("*/").ok_or_else(|| err(out.len(), "unterminated comment"))?;
            i += end + 4;
        } else if c == b'"' {
            let mut s = String::new();
            i += 1;
            loop {
                match b.get(i) {
                    None => return Err(err(out.len(), "unterminated string")),
                    Some(b'"') => break,
                    Some(b'\\') if i + 1 < b.len() => {
                        s.push(b[i + 1] as char);
                        i += 2;
                    }
                    Some(_) => {
                        let ch = text[i..].chars().next().unwrap();
                        s.push(ch);
                        i += ch.len_utf8();
                    }
                }
            }
            i += 1;
            out.push(Tok::Id(s));
        } else if text[i..].starts_with("->") || text[i..].starts_with("--") {
            out.push(Tok::Sym(if b[i + 1] == b'>' { "->" } else { "--" }));
            i += 2;
        } else if let Some(sym) = ["{", "}", "[", "]", "=", ";", ","].into_iter().find(|s| s.as_bytes()[0] == c) {
            out.push(Tok::Sym(sym));
            i += 1;
        } else if c.is_ascii_alphanumeric() || c == b'_' || c == b'.' || c == b'-' {
            let start = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_' || b[i] == b'.' || (b[i] == b'-' && i == start)) {
                i += 1;
            }
            out.push(Tok::Id(text[start..i].to_string()));
        } else {
            return Err(err(out.len(), &format!("unexpected character `{}`", c as char)));
        }
    }
    Ok(out)
}

/// Reads the DOT subset written by [`write_dot`]. Vertex ids that are exactly
/// `0..n` keep their numbers; otherwise vertices are numbered by first
/// appearance. Colors follow the `generators` attribute when present.
pub fn read_dot(text: &str) -> Result<ColoredGraph, GraphFormatError> {
    let toks = tokenize(text)?;
    let err = |pos: usize, m: String| GraphFormatError::Syntax { pos, message: m };
    let mut pos = 0;
    while pos < toks.len() && toks[pos] != Tok::Sym("{") {
        pos += 1;
    }
    if pos == toks.len() {
        return Err(err(pos, "expected `{`".into()));
    }
    pos += 1;
    let mut names: Vec<String> = Vec::new();
    let mut generators: Option<Vec<String>> = None;
    struct RawEdge {
        tail: String,
        head: String,
        attrs: BTreeMap<String, String>,
    }
    let mut raw: Vec<RawEdge> = Vec::new();
    let note = |n: &str, names: &mut Vec<String>| {
        if !names.iter().any(|x| x == n) {
            names.push(n.to_string());
        }
    };
    let attrs = |toks: &[Tok], pos: &mut usize| -> Result<BTreeMap<String, String>, GraphFormatError> {
        let mut m = BTreeMap::new();
        if toks.get(*pos) != Some(&Tok::Sym("[")) {
            return Ok(m);
        }
        *pos += 1;
        loop {
            match toks.get(*pos) {
                Some(Tok::Sym("]")) => {
                    *pos += 1;
                    return Ok(m);
                }
                Some(Tok::Sym(",")) | Some(Tok::Sym(";")) => *pos += 1,
                Some(Tok::Id(k)) => {
                    let k = k.clone();
                    if toks.get(*pos + 1) != Some(&Tok::Sym("=")) {
                        return Err(GraphFormatError::Syntax { pos: *pos, message: format!("expected `=` after `{k}`") });
                    }
                    match toks.get(*pos + 2) {
                        Some(Tok::Id(v)) => {
                            m.insert(k, v.clone());
                            *pos += 3;
                        }
                        _ => return Err(GraphFormatError::Syntax { pos: *pos, message: "expected attribute value".into() }),
                    }
                }
                _ => return Err(GraphFormatError::Syntax { pos: *pos, message: "unterminated attribute list".into() }),
            }
        }
    };
    loop {
        match toks.get(pos) {
            None => return Err(err(pos, "missing `}`".into())),
            Some(Tok::Sym("}")) => break,
            Some(Tok::Sym(";")) => pos += 1,
            Some(Tok::Id(id)) => {
                let id = id.clone();
                pos += 1;
                if toks.get(pos) == Some(&Tok::Sym("=")) {
                    let Some(Tok::Id(v)) = toks.get(pos + 1) else {
                        return Err(err(pos, "expected value".into()));
                    };
                    if id == "generators" {
                        generators = Some(v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect());
                    }
                    pos += 2;
                    continue;
                }
                if matches!(id.as_str(), "graph" | "node" | "edge") && toks.get(pos) == Some(&Tok::Sym("[")) {
                    attrs(&toks, &mut pos)?;
                    continue;
                }
                if let Some(Tok::Sym(op)) = toks.get(pos).cloned() {
                    if op == "->" || op == "--" {
                        let Some(Tok::Id(head)) = toks.get(pos + 1).cloned() else {
                            return Err(err(pos, "expected edge target".into()));
                        };
                        pos += 2;
                        let a = attrs(&toks, &mut pos)?;
                        note(&id, &mut names);
                        note(&head, &mut names);
                        raw.push(RawEdge { tail: id, head, attrs: a });
                        continue;
                    }
                }
                attrs(&toks, &mut pos)?;
                note(&id, &mut names);
            }
            Some(t) => return Err(err(pos, format!("unexpected {t:?}"))),
        }
    }
    let mut numeric: Option<Vec<usize>> = names.iter().map(|n| n.parse().ok()).collect();
    if let Some(nums) = numeric.as_mut() {
        nums.sort_unstable();
    }
    let index: BTreeMap<String, usize> = match numeric {
        Some(nums) if nums.iter().enumerate().all(|(i, &x)| i == x) => {
            names.iter().map(|n| (n.clone(), n.parse().unwrap())).collect()
        }
        _ => names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect(),
    };
    let mut colors = generators.unwrap_or_default();
    let mut edges = Vec::new();
    for e in raw {
        let Some(c) = e.attrs.get("color") else {
            return Err(GraphFormatError::MissingColor(format!("{} -> {}", e.tail, e.head)));
        };
        let color = match colors.iter().position(|x| x == c) {
            Some(i) => i,
            None => {
                colors.push(c.clone());
                colors.len() - 1
            }
        };
        let undirected = e.attrs.get("dir").is_some_and(|d| d == "none");
        let half = e.attrs.get("halfloop").is_some_and(|d| d == "true");
        let kind = match (half, undirected) {
            (true, _) => EdgeKind::HalfLoop,
            (false, true) => EdgeKind::Involution,
            (false, false) => EdgeKind::Directed,
        };
        edges.push(Edge { color, kind, tail: index[&e.tail], head: index[&e.head] });
    }
    Ok(ColoredGraph::new(names.len(), colors, edges))
}
