//! Line-oriented text form of templates and strategies.
//!
//! ```text
//! region: a b c d
//! unsafe: (d,e)
//! colive: (a,b) (d,b)
//! live-group: (a,c) (a,d)
//! ```
//!
//! Vertices are written by name when the name is unambiguous and contains
//! no blanks or separators, otherwise by id.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::ParseError;
use crate::graph::{Edge, EdgeSet, GameGraph, VertexId, VertexSet};
use crate::strategy::Strategy;
use crate::template::{LiveGroup, StrategyTemplate};

/// How vertices of one graph are printed and read back.
pub struct Labels<'a> {
    g: &'a GameGraph,
    by_name: HashMap<&'a str, VertexId>,
    safe: Vec<bool>,
}

fn plain(name: &str) -> bool {
    !name.is_empty()
        && !name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '(' | ')' | ',' | ';' | ':' | '#' | '"'))
}

impl<'a> Labels<'a> {
    pub fn new(g: &'a GameGraph) -> Self {
        let mut count: HashMap<&str, usize> = HashMap::new();
        for v in g.vertices() {
            if let Some(n) = g.name(v) {
                *count.entry(n).or_default() += 1;
            }
        }
        let mut by_name = HashMap::new();
        let mut safe = vec![false; g.vertex_count()];
        for v in g.vertices() {
            let Some(n) = g.name(v) else { continue };
            let numeric = n.bytes().all(|b| b.is_ascii_digit());
            if count[n] == 1 && plain(n) && (!numeric || n == v.0.to_string()) {
                safe[v.index()] = true;
                by_name.insert(n, v);
            }
        }
        Labels { g, by_name, safe }
    }

    pub fn show(&self, v: VertexId) -> String {
        if self.safe[v.index()] {
            self.g.name(v).expect("safe names exist").to_owned()
        } else {
            v.0.to_string()
        }
    }

    pub fn resolve(&self, token: &str) -> Option<VertexId> {
        if let Some(&v) = self.by_name.get(token) {
            return Some(v);
        }
        let id: u32 = token.parse().ok()?;
        ((id as usize) < self.g.vertex_count()).then_some(VertexId(id))
    }

    fn show_edge(&self, e: &Edge) -> String {
        format!("({},{})", self.show(e.source), self.show(e.target))
    }
}

fn write_edges<'e>(
    out: &mut String,
    key: &str,
    labels: &Labels,
    edges: impl Iterator<Item = &'e Edge>,
) {
    out.push_str(key);
    out.push(':');
    for e in edges {
        out.push(' ');
        out.push_str(&labels.show_edge(e));
    }
    out.push('\n');
}

pub fn emit_template(g: &GameGraph, t: &StrategyTemplate) -> String {
    let labels = Labels::new(g);
    let mut out = String::from("region:");
    for v in t.region.iter() {
        write!(out, " {}", labels.show(v)).unwrap();
    }
    out.push('\n');
    write_edges(&mut out, "unsafe", &labels, t.unsafe_edges.iter());
    write_edges(&mut out, "colive", &labels, t.colive.iter());
    for h in &t.live_groups {
        write_edges(&mut out, "live-group", &labels, h.edges().iter());
    }
    out
}

struct Line<'t> {
    number: usize,
    text: &'t str,
}

impl Line<'_> {
    fn error(&self, offset: usize, message: impl Into<String>) -> ParseError {
        ParseError::new(self.number, offset + 1, message)
    }
}

/// Splits `key: rest` and returns the key with the byte offset of `rest`.
fn split_key<'t>(line: &Line<'t>) -> Result<(&'t str, usize), ParseError> {
    let colon = line
        .text
        .find(':')
        .ok_or_else(|| line.error(0, "expected 'key:'"))?;
    Ok((line.text[..colon].trim(), colon + 1))
}

/// Whitespace-separated tokens of `line` from `start`, with their offsets.
fn tokens<'t>(line: &Line<'t>, start: usize) -> Vec<(usize, &'t str)> {
    let rest = &line.text[start..];
    let mut out = Vec::new();
    let mut pos = 0;
    for piece in rest.split(|c: char| c.is_whitespace()) {
        if !piece.is_empty() {
            out.push((start + pos, piece));
        }
        pos += piece.len() + 1;
    }
    out
}

fn vertex(
    labels: &Labels,
    line: &Line,
    offset: usize,
    token: &str,
) -> Result<VertexId, ParseError> {
    labels
        .resolve(token)
        .ok_or_else(|| line.error(offset, format!("unknown vertex '{token}'")))
}

fn edge(
    g: &GameGraph,
    labels: &Labels,
    line: &Line,
    offset: usize,
    token: &str,
) -> Result<Edge, ParseError> {
    let inner = token
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| line.error(offset, format!("expected '(u,v)', found '{token}'")))?;
    let (s, t) = inner
        .split_once(',')
        .ok_or_else(|| line.error(offset, format!("expected '(u,v)', found '{token}'")))?;
    let s = vertex(labels, line, offset + 1, s)?;
    let t = vertex(labels, line, offset + 2 + inner.find(',').unwrap_or(0), t)?;
    if !g.has_edge(s, t) {
        return Err(line.error(offset, format!("{token} is not an edge of the game")));
    }
    Ok(Edge::new(s, t))
}

fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines()
        .enumerate()
        .map(|(i, l)| Line {
            number: i + 1,
            text: l,
        })
        .filter(|l| {
            let t = l.text.trim_start();
            !t.is_empty() && !t.starts_with('#')
        })
}

pub fn parse_template(g: &GameGraph, text: &str) -> Result<StrategyTemplate, ParseError> {
    let labels = Labels::new(g);
    let mut region: Option<VertexSet> = None;
    let mut unsafe_edges = EdgeSet::new();
    let mut colive = EdgeSet::new();
    let mut groups: Vec<LiveGroup> = Vec::new();
    let mut last_line = 0;
    for line in lines(text) {
        last_line = line.number;
        let (key, start) = split_key(&line)?;
        let toks = tokens(&line, start);
        match key {
            "region" => {
                if region.is_some() {
                    return Err(line.error(0, "duplicate region line"));
                }
                let mut set = g.empty_set();
                for (off, tok) in toks {
                    set.insert(vertex(&labels, &line, off, tok)?);
                }
                region = Some(set);
            }
            "unsafe" | "colive" => {
                let target = if key == "unsafe" {
                    &mut unsafe_edges
                } else {
                    &mut colive
                };
                for (off, tok) in toks {
                    target.insert(edge(g, &labels, &line, off, tok)?);
                }
            }
            "live-group" => {
                let mut es = Vec::new();
                for (off, tok) in toks {
                    es.push(edge(g, &labels, &line, off, tok)?);
                }
                if let Some(h) = LiveGroup::new(g, es) {
                    groups.push(h);
                }
            }
            other => return Err(line.error(0, format!("unknown section '{other}'"))),
        }
    }
    let region =
        region.ok_or_else(|| ParseError::new(last_line.max(1), 1, "missing region line"))?;
    Ok(StrategyTemplate {
        unsafe_edges,
        colive,
        live_groups: groups,
        region,
    })
}

/// One line `v: (v,w1) (v,w2) ...` per vertex with moves, in rotation order.
pub fn emit_strategy(g: &GameGraph, s: &Strategy) -> String {
    let labels = Labels::new(g);
    let mut out = String::new();
    for v in s.vertices() {
        out.push_str(&labels.show(v));
        out.push(':');
        for &w in s.moves(v) {
            write!(out, " {}", labels.show_edge(&Edge::new(v, w))).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn parse_strategy(g: &GameGraph, text: &str) -> Result<Strategy, ParseError> {
    let labels = Labels::new(g);
    let mut s = Strategy::empty(g.vertex_count());
    let mut seen = g.empty_set();
    for line in lines(text) {
        let (key, start) = split_key(&line)?;
        let v = vertex(&labels, &line, 0, key)?;
        if !seen.insert(v) {
            return Err(line.error(0, format!("vertex '{key}' listed twice")));
        }
        let mut targets = Vec::new();
        for (off, tok) in tokens(&line, start) {
            let e = edge(g, &labels, &line, off, tok)?;
            if e.source != v {
                return Err(line.error(off, format!("{tok} does not leave '{key}'")));
            }
            if targets.contains(&e.target) {
                return Err(line.error(off, format!("{tok} listed twice")));
            }
            targets.push(e.target);
        }
        if targets.is_empty() {
            return Err(line.error(start, "empty move list"));
        }
        s.set_moves(v, targets);
    }
    Ok(s)
}

fn is_separator(c: char) -> bool {
    c == ',' || c.is_whitespace()
}

/// Edges written `(u,v)` and separated by commas or blanks, on one line.
pub fn parse_edge_list(g: &GameGraph, text: &str) -> Result<EdgeSet, ParseError> {
    let labels = Labels::new(g);
    let line = Line { number: 1, text };
    let mut out = EdgeSet::new();
    let mut pos = 0;
    while let Some(skip) = text[pos..].find(|c: char| !is_separator(c)) {
        let start = pos + skip;
        if !text[start..].starts_with('(') {
            return Err(line.error(start, "expected '('"));
        }
        let close = text[start..]
            .find(')')
            .map(|i| start + i)
            .ok_or_else(|| line.error(start, "unclosed '('"))?;
        let token = &text[start..=close];
        out.insert(edge(g, &labels, &line, start, token)?);
        pos = close + 1;
    }
    Ok(out)
}

/// Vertex names or ids separated by commas or blanks, on one line.
pub fn parse_vertex_list(g: &GameGraph, text: &str) -> Result<VertexSet, ParseError> {
    let labels = Labels::new(g);
    let line = Line { number: 1, text };
    let mut out = g.empty_set();
    let mut pos = 0;
    for piece in text.split(is_separator) {
        if !piece.is_empty() {
            out.insert(vertex(&labels, &line, pos, piece)?);
        }
        pos += piece.len() + 1;
    }
    Ok(out)
}
