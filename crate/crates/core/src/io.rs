//! Text formats for instances and projections.
//!
//! Instance: `n m`, then `m` lines `k v_1 … v_k`, then `t`, then one line of
//! `t` terminal ids. Projection: `n_G n_H`, then one line of `n_G` images.
//! Lines starting with `#` and blank lines are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, ProjectionMap, TerminalSet, VertexId};

/// Largest vertex count the parser accepts.
pub const MAX_PARSE_VERTICES: usize = 1 << 26;

struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
}

fn parse_error<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        column,
        message: message.into(),
    })
}

fn content_lines(input: &str) -> impl Iterator<Item = Line<'_>> {
    input.lines().enumerate().filter_map(|(i, raw)| {
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            return None;
        }
        let mut tokens = Vec::new();
        let mut start = None;
        for (j, ch) in raw.char_indices().chain([(raw.len(), ' ')]) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(j),
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &raw[s..j],
                        column: raw[..s].chars().count() + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        Some(Line {
            number: i + 1,
            tokens,
        })
    })
}

struct Reader<'a, I: Iterator<Item = Line<'a>>> {
    lines: I,
    last_line: usize,
}

impl<'a, I: Iterator<Item = Line<'a>>> Reader<'a, I> {
    fn next_line(&mut self, what: &str) -> Result<Line<'a>> {
        match self.lines.next() {
            Some(l) => {
                self.last_line = l.number;
                Ok(l)
            }
            None => parse_error(self.last_line + 1, 1, format!("unexpected end of input, expected {what}")),
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        match self.lines.next() {
            Some(l) => parse_error(l.number, l.tokens[0].column, "unexpected trailing content"),
            None => Ok(()),
        }
    }
}

fn number(line: &Line<'_>, tok: &Token<'_>, what: &str) -> Result<usize> {
    tok.text
        .parse::<usize>()
        .or_else(|_| parse_error(line.number, tok.column, format!("expected {what}, found '{}'", tok.text)))
}

fn exact_count<'a>(line: &'a Line<'a>, count: usize, what: &str) -> Result<&'a [Token<'a>]> {
    if line.tokens.len() != count {
        let column = line.tokens.get(count).map_or_else(
            || line.tokens.last().map_or(1, |t| t.column + t.text.chars().count()),
            |t| t.column,
        );
        return parse_error(
            line.number,
            column,
            format!("expected {count} {what}, found {}", line.tokens.len()),
        );
    }
    Ok(&line.tokens)
}

fn ids(line: &Line<'_>, toks: &[Token<'_>], n: usize, what: &str) -> Result<Vec<VertexId>> {
    toks.iter()
        .map(|tok| {
            let v = number(line, tok, what)?;
            if v >= n {
                return parse_error(line.number, tok.column, format!("{what} {v} out of range for n = {n}"));
            }
            Ok(v)
        })
        .collect()
}

/// Parses an instance file.
pub fn parse_instance(input: &str) -> Result<(Hypergraph, TerminalSet)> {
    let mut r = Reader {
        lines: content_lines(input),
        last_line: 0,
    };
    let head = r.next_line("header 'n m'")?;
    let toks = exact_count(&head, 2, "header fields")?;
    let n = number(&head, &toks[0], "vertex count")?;
    let m = number(&head, &toks[1], "edge count")?;
    if n > MAX_PARSE_VERTICES {
        return parse_error(head.number, toks[0].column, format!("vertex count {n} exceeds {MAX_PARSE_VERTICES}"));
    }
    let mut edges = Vec::new();
    for _ in 0..m {
        let line = r.next_line("an edge line")?;
        let first = &line.tokens[0];
        let k = number(&line, first, "edge size")?;
        if k < 2 {
            return parse_error(line.number, first.column, format!("edge size {k} is below 2"));
        }
        let toks = exact_count(&line, k + 1, "fields on the edge line")?;
        let mut e = ids(&line, &toks[1..], n, "vertex")?;
        let mut sorted = e.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            let col = toks[1..].iter().filter(|t| t.text.parse::<usize>() == Ok(w[0])).nth(1).map_or(1, |t| t.column);
            return parse_error(line.number, col, format!("vertex {} repeated in edge", w[0]));
        }
        e.sort_unstable();
        edges.push(e);
    }
    let tline = r.next_line("terminal count")?;
    let toks = exact_count(&tline, 1, "terminal count field")?;
    let t = number(&tline, &toks[0], "terminal count")?;
    let terminals = if t == 0 {
        Vec::new()
    } else {
        let line = r.next_line("terminal line")?;
        let toks = exact_count(&line, t, "terminal ids")?;
        let ts = ids(&line, toks, n, "terminal")?;
        let mut sorted = ts.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != ts.len() {
            return parse_error(line.number, 1, "terminal listed twice");
        }
        ts
    };
    r.expect_end()?;
    Ok((Hypergraph::from_normalized(n, edges), TerminalSet::new(terminals)))
}

/// Serializes an instance; anchor flags are not represented.
pub fn write_instance(g: &Hypergraph, t: &TerminalSet) -> String {
    let mut out = format!("{} {}\n", g.num_vertices(), g.num_edges());
    for e in g.edges() {
        let _ = write!(out, "{}", e.len());
        for v in e {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    let _ = writeln!(out, "{}", t.len());
    out.push_str(&join(t.iter()));
    out.push('\n');
    out
}

fn join(it: impl Iterator<Item = usize>) -> String {
    it.map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

/// Parses a projection file.
pub fn parse_projection(input: &str) -> Result<ProjectionMap> {
    let mut r = Reader {
        lines: content_lines(input),
        last_line: 0,
    };
    let head = r.next_line("header 'n_G n_H'")?;
    let toks = exact_count(&head, 2, "header fields")?;
    let ng = number(&head, &toks[0], "domain size")?;
    let nh = number(&head, &toks[1], "image size")?;
    if ng > MAX_PARSE_VERTICES || nh > ng.max(1) {
        return parse_error(head.number, toks[1].column, format!("sizes {ng} -> {nh} cannot form a surjection"));
    }
    let map = if ng == 0 {
        Vec::new()
    } else {
        let line = r.next_line("image line")?;
        let toks = exact_count(&line, ng, "images")?;
        ids(&line, toks, nh, "image")?
    };
    r.expect_end()?;
    ProjectionMap::new(map, nh).map_err(|e| Error::Parse {
        line: 2,
        column: 1,
        message: e.to_string(),
    })
}

pub fn write_projection(pi: &ProjectionMap) -> String {
    format!(
        "{} {}\n{}\n",
        pi.domain_size(),
        pi.image_size(),
        join(pi.as_slice().iter().copied())
    )
}
