//! Plain-text hypergraph files.
//!
//! ```text
//! # comment lines start with '#'
//! 4 3
//! 0 1 2
//! 1 2 3 | 1 2
//! 0 3   | 5/2 inf
//! ```
//!
//! The first non-comment line is `n m`. Each of the next `m` lines lists the
//! distinct vertices of one edge, optionally followed by `|` and one to
//! three numeric columns (integers, decimals, `p/q`, or `inf`). Every edge
//! line must carry the same number of columns.

use std::fmt::Write as _;

use hypermat_core::{EdgeVector, Hypergraph, Rational, Role};
use thiserror::Error;

pub const MAX_COLUMNS: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Finite(Rational),
    Infinite,
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Value::Finite(r) => write!(f, "{r}"),
            Value::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Strict,
    /// Repeated vertices inside an edge are dropped with a warning.
    Lenient,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergraphFile {
    pub hypergraph: Hypergraph,
    /// `columns[c][e]`
    pub columns: Vec<Vec<Value>>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: empty edge")]
    EmptyEdge { line: usize },
    #[error("line {line}: vertex {vertex} repeated in edge")]
    DuplicateVertexInEdge { line: usize, vertex: usize },
    #[error("line {line}: expected {expected} columns, found {found}")]
    ColumnCount { line: usize, expected: usize, found: usize },
    #[error("expected {expected} edge lines, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("missing header line `n m`")]
    MissingHeader,
}

fn malformed(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Malformed { line, message: message.into() }
}

fn parse_value(line: usize, token: &str) -> Result<Value, FormatError> {
    if token.eq_ignore_ascii_case("inf") {
        return Ok(Value::Infinite);
    }
    token
        .parse::<Rational>()
        .map(Value::Finite)
        .map_err(|e| malformed(line, format!("bad number `{token}`: {e}")))
}

pub fn parse(text: &str, mode: Mode) -> Result<HypergraphFile, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line, header) = lines.next().ok_or(FormatError::MissingHeader)?;
    let nums: Vec<&str> = header.split_whitespace().collect();
    let [n, m] = nums[..] else {
        return Err(malformed(line, "header must be `n m`"));
    };
    let n: usize = n.parse().map_err(|_| malformed(line, format!("bad vertex count `{n}`")))?;
    let m: usize = m.parse().map_err(|_| malformed(line, format!("bad edge count `{m}`")))?;

    let mut edges = Vec::with_capacity(m);
    let mut columns: Vec<Vec<Value>> = Vec::new();
    let mut width: Option<usize> = None;
    let mut warnings = Vec::new();
    for (line, body) in lines {
        if edges.len() == m {
            return Err(FormatError::EdgeCount { expected: m, found: m + 1 });
        }
        let (verts, values) = match body.split_once('|') {
            Some((v, c)) => (v, Some(c)),
            None => (body, None),
        };
        let mut edge = Vec::new();
        for token in verts.split_whitespace() {
            let v: usize = token.parse().map_err(|_| malformed(line, format!("bad vertex `{token}`")))?;
            if v >= n {
                return Err(FormatError::VertexOutOfRange { line, vertex: v, n });
            }
            if edge.contains(&v) {
                match mode {
                    Mode::Strict => return Err(FormatError::DuplicateVertexInEdge { line, vertex: v }),
                    Mode::Lenient => {
                        warnings.push(format!("line {line}: dropped repeated vertex {v}"));
                        continue;
                    }
                }
            }
            edge.push(v);
        }
        if edge.is_empty() {
            return Err(FormatError::EmptyEdge { line });
        }
        let row: Vec<Value> = match values {
            None => Vec::new(),
            Some(c) => c.split_whitespace().map(|t| parse_value(line, t)).collect::<Result<_, _>>()?,
        };
        if values.is_some() && !(1..=MAX_COLUMNS).contains(&row.len()) {
            return Err(malformed(line, format!("between 1 and {MAX_COLUMNS} columns expected after `|`")));
        }
        match width {
            None => {
                width = Some(row.len());
                columns = vec![Vec::with_capacity(m); row.len()];
            }
            Some(w) if w != row.len() => {
                return Err(FormatError::ColumnCount { line, expected: w, found: row.len() });
            }
            _ => {}
        }
        for (c, v) in row.into_iter().enumerate() {
            columns[c].push(v);
        }
        edges.push(edge);
    }
    if edges.len() != m {
        return Err(FormatError::EdgeCount { expected: m, found: edges.len() });
    }
    let hypergraph = Hypergraph::new(n, edges).map_err(|e| malformed(0, e.to_string()))?;
    Ok(HypergraphFile { hypergraph, columns, warnings })
}

/// Writes `h` with the given columns (each of length `m`).
pub fn serialize(h: &Hypergraph, columns: &[Vec<Value>]) -> String {
    assert!(columns.len() <= MAX_COLUMNS, "at most {MAX_COLUMNS} columns");
    assert!(columns.iter().all(|c| c.len() == h.m()), "column length differs from m");
    let mut out = format!("{} {}\n", h.n(), h.m());
    for e in h.edges() {
        let verts: Vec<String> = e.vertices().iter().map(|v| v.to_string()).collect();
        out.push_str(&verts.join(" "));
        if !columns.is_empty() {
            out.push_str(" |");
            for c in columns {
                let _ = write!(out, " {}", c[e.id.index()]);
            }
        }
        out.push('\n');
    }
    out
}

impl HypergraphFile {
    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    /// Column `c` as a nonnegative finite vector.
    pub fn finite_column(&self, c: usize, role: Role) -> Result<EdgeVector, String> {
        let col = self.columns.get(c).ok_or_else(|| format!("column {} is missing", c + 1))?;
        let values = col
            .iter()
            .enumerate()
            .map(|(e, v)| match v {
                Value::Finite(r) => Ok(r.clone()),
                Value::Infinite => Err(format!("column {}: `inf` not allowed on edge {e}", c + 1)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        EdgeVector::new(role, values, self.hypergraph.m()).map_err(|e| format!("column {}: {e}", c + 1))
    }
}
