//! pgsolver-style game files, extended with several priorities per vertex.
//!
//! ```text
//! genparity 5 2;
//! 0 0,1 0 0,1,2,3 "a";
//! ```
//!
//! The header is `genparity <maxId> <k>;` or `parity <maxId>;` (k = 1).
//! Each record is `<id> <p1>,...,<pk> <owner> <t1>,<t2>,...` with an
//! optional quoted name, terminated by `;`. Lines starting with `#` are
//! comments.

use std::fmt::Write as _;

use crate::error::ParseError;
use crate::graph::{GameGraph, GameGraphBuilder, Player, PriorityFunction, VertexId};

/// A game graph together with one priority function per objective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenParityGame {
    pub graph: GameGraph,
    pub objectives: Vec<PriorityFunction>,
}

impl GenParityGame {
    pub fn objective_count(&self) -> usize {
        self.objectives.len()
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            src: text.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.col, message)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn at_line_start(&self) -> bool {
        self.src[..self.pos]
            .iter()
            .rev()
            .take_while(|&&c| c != b'\n')
            .all(|c| c.is_ascii_whitespace())
    }

    /// Skips whitespace and whole-line comments.
    fn skip_blank(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_ascii_whitespace() {
                self.bump();
            } else if c == b'#' && self.at_line_start() {
                while let Some(c) = self.bump() {
                    if c == b'\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_blank();
        self.peek().is_none()
    }

    fn word(&mut self) -> Result<String, ParseError> {
        self.skip_blank();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphabetic() {
                self.bump();
            } else {
                break;
            }
        }
        if start == self.pos {
            return Err(self.error("expected a keyword"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn number(&mut self) -> Result<u32, ParseError> {
        self.skip_blank();
        let (line, col) = (self.line, self.col);
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                self.bump();
            } else {
                break;
            }
        }
        if start == self.pos {
            return Err(ParseError::new(line, col, "expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("digits are ASCII")
            .parse()
            .map_err(|_| ParseError::new(line, col, "number out of range"))
    }

    /// Comma-separated numbers with no blanks around the commas.
    fn list(&mut self) -> Result<Vec<u32>, ParseError> {
        let mut out = vec![self.number()?];
        while self.peek() == Some(b',') {
            self.bump();
            let (line, col) = (self.line, self.col);
            match self.peek() {
                Some(c) if c.is_ascii_digit() => out.push(self.number()?),
                _ => return Err(ParseError::new(line, col, "expected a number after ','")),
            }
        }
        Ok(out)
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        self.skip_blank();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    /// Optional `"name"`.
    fn name(&mut self) -> Result<Option<String>, ParseError> {
        self.skip_blank();
        if self.peek() != Some(b'"') {
            return Ok(None);
        }
        self.bump();
        let start = self.pos;
        loop {
            match self.peek() {
                Some(b'"') => break,
                Some(b'\n') | None => return Err(self.error("unterminated name")),
                Some(_) => {
                    self.bump();
                }
            }
        }
        let name = std::str::from_utf8(&self.src[start..self.pos])
            .map_err(|_| self.error("name is not valid UTF-8"))?
            .to_owned();
        self.bump();
        Ok(Some(name))
    }
}

struct Record {
    priorities: Vec<u32>,
    owner: Player,
    successors: Vec<u32>,
    name: Option<String>,
    line: usize,
    column: usize,
}

pub fn parse_game(text: &str) -> Result<GenParityGame, ParseError> {
    let mut lx = Lexer::new(text);
    if lx.at_end() {
        return Err(lx.error("empty input"));
    }
    let (hl, hc) = (lx.line, lx.col);
    let header = lx.word()?;
    let max_id = lx.number()?;
    let k = match header.as_str() {
        "parity" => 1,
        "genparity" => lx.number()? as usize,
        other => return Err(ParseError::new(hl, hc, format!("unknown header '{other}'"))),
    };
    if k == 0 {
        return Err(ParseError::new(
            hl,
            hc,
            "objective count must be at least 1",
        ));
    }
    lx.expect(b';')?;

    let n = max_id as usize + 1;
    if n > text.len() / 8 + 1 {
        return Err(ParseError::new(
            hl,
            hc,
            format!("header declares {n} vertices, more than the input can hold"),
        ));
    }
    let mut records: Vec<Option<Record>> = Vec::new();
    records.resize_with(n, || None);
    while !lx.at_end() {
        lx.skip_blank();
        let (line, column) = (lx.line, lx.col);
        let id = lx.number()?;
        if id > max_id {
            return Err(ParseError::new(
                line,
                column,
                format!("vertex {id} exceeds the declared maximum {max_id}"),
            ));
        }
        lx.skip_blank();
        let (pl, pc) = (lx.line, lx.col);
        let priorities = lx.list()?;
        if priorities.len() != k {
            return Err(ParseError::new(
                pl,
                pc,
                format!("expected {k} priorities, found {}", priorities.len()),
            ));
        }
        lx.skip_blank();
        let (ol, oc) = (lx.line, lx.col);
        let owner = match lx.number()? {
            0 => Player::Zero,
            1 => Player::One,
            o => {
                return Err(ParseError::new(
                    ol,
                    oc,
                    format!("owner must be 0 or 1, found {o}"),
                ))
            }
        };
        lx.skip_blank();
        let (sl, sc) = (lx.line, lx.col);
        if !matches!(lx.peek(), Some(c) if c.is_ascii_digit()) {
            return Err(ParseError::new(sl, sc, "missing successor list"));
        }
        let mut successors = lx.list()?;
        if let Some(&bad) = successors.iter().find(|&&t| t > max_id) {
            return Err(ParseError::new(
                sl,
                sc,
                format!("successor {bad} exceeds the declared maximum {max_id}"),
            ));
        }
        let mut seen = std::collections::HashSet::new();
        successors.retain(|t| seen.insert(*t));
        let name = lx.name()?;
        lx.expect(b';')?;
        let slot = &mut records[id as usize];
        if slot.is_some() {
            return Err(ParseError::new(
                line,
                column,
                format!("vertex {id} declared twice"),
            ));
        }
        *slot = Some(Record {
            priorities,
            owner,
            successors,
            name,
            line,
            column,
        });
    }

    let mut b = GameGraphBuilder::new();
    let mut columns: Vec<Vec<u32>> = vec![Vec::with_capacity(n); k];
    for (id, r) in records.iter().enumerate() {
        let r = r.as_ref().ok_or_else(|| {
            ParseError::new(lx.line, lx.col, format!("vertex {id} is never declared"))
        })?;
        if let Some(name) = &r.name {
            if name.contains('"') {
                return Err(ParseError::new(r.line, r.column, "name contains a quote"));
            }
        }
        b.add_vertex_with_name(r.owner, r.name.clone());
        for (i, &p) in r.priorities.iter().enumerate() {
            columns[i].push(p);
        }
    }
    for (id, r) in records.iter().enumerate() {
        let r = r.as_ref().expect("checked above");
        for &t in &r.successors {
            b.add_edge(VertexId::new(id), VertexId(t))
                .map_err(|e| ParseError::new(r.line, r.column, e.to_string()))?;
        }
    }
    let graph = b
        .build()
        .map_err(|e| ParseError::new(lx.line, lx.col, e.to_string()))?;
    Ok(GenParityGame {
        graph,
        objectives: columns.into_iter().map(PriorityFunction::new).collect(),
    })
}

/// Writes `parity` when there is a single objective, `genparity` otherwise.
pub fn emit_game(game: &GenParityGame) -> String {
    let g = &game.graph;
    let k = game.objectives.len();
    let max_id = g.vertex_count().saturating_sub(1);
    let mut out = String::new();
    if k == 1 {
        writeln!(out, "parity {max_id};").unwrap();
    } else {
        writeln!(out, "genparity {max_id} {k};").unwrap();
    }
    for v in g.vertices() {
        write!(out, "{} ", v.0).unwrap();
        for (i, p) in game.objectives.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            write!(out, "{}", p.priority(v)).unwrap();
        }
        write!(out, " {} ", g.owner(v).index()).unwrap();
        for (i, w) in g.successors(v).iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            write!(out, "{}", w.0).unwrap();
        }
        if let Some(name) = g.name(v) {
            write!(out, " \"{name}\"").unwrap();
        }
        out.push_str(";\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{six, six_parity};

    #[test]
    fn six_round_trip() {
        let (g, _) = six();
        let game = GenParityGame {
            graph: g,
            objectives: vec![six_parity()],
        };
        let text = emit_game(&game);
        assert!(text.starts_with("parity 5;\n0 0 0 0,1,2,3 \"a\";\n"));
        assert_eq!(parse_game(&text).unwrap(), game);
    }

    #[test]
    fn genparity_and_comments() {
        let text = "# two objectives\ngenparity 1 2;\n0 1,2 0 1;\n# between\n1 0,0 1 0,1,1;\n";
        let game = parse_game(text).unwrap();
        assert_eq!(game.objective_count(), 2);
        assert_eq!(
            game.graph.successors(VertexId(1)),
            &[VertexId(0), VertexId(1)]
        );
        assert_eq!(game.objectives[1].priorities(), &[2, 0]);
        assert_eq!(parse_game(&emit_game(&game)).unwrap(), game);
    }

    #[test]
    fn parity_equals_genparity_one() {
        let a = parse_game("parity 1;\n0 3 0 1;\n1 2 1 0;\n").unwrap();
        let b = parse_game("genparity 1 1;\n0 3 0 1;\n1 2 1 0;\n").unwrap();
        assert_eq!(a, b);
    }

    fn err(text: &str) -> ParseError {
        parse_game(text).unwrap_err()
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(err("").message, "empty input");
        let e = err("parity 1;\n0 3 0 1;\n1 2 1;\n");
        assert_eq!((e.line, e.message.as_str()), (3, "missing successor list"));
        let e = err("genparity 0 2;\n0 1 0 0;\n");
        assert_eq!((e.line, e.column), (2, 3));
        assert!(err("parity 0;\n0 1 2 0;\n").message.contains("owner"));
        assert!(err("parity 1;\n0 1 0 0;\n")
            .message
            .contains("never declared"));
        assert!(err("parity 0;\n0 1 0 0;\n0 1 0 0;\n")
            .message
            .contains("twice"));
        assert!(err("parity 0;\n0 1 0 5;\n").message.contains("exceeds"));
        assert!(err("parity 0;\n0 1 0 0 \"x;\n")
            .message
            .contains("unterminated"));
        assert!(err("game 0;\n").message.contains("unknown header"));
        assert!(err("parity 4000000000;\n")
            .message
            .contains("more than the input"));
        assert!(err("parity 0;\n0 1 0 0").message.contains("';'"));
    }
}
