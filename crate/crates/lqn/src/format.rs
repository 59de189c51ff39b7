//! The plain-text representation format.
//!
//! ```text
//! LQN v1 q=<q> n=<n> V=<V>
//! <V lines of V space-separated atom names>
//! ```
//!
//! Atom names are `1'`, `a0` .. `a<q>`, `t1` .. `t<n>`. Rows are written and
//! read one at a time.

use std::io::{self, BufRead, Write};

use lqn_core::algebra::{Atom, AtomStructure};
use lqn_core::geometry::LabelMatrix;
use thiserror::Error;

pub const MAGIC: &str = "LQN";
pub const VERSION: &str = "v1";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("file truncated: expected {expected} rows, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("labels ({x},{y}) and ({y},{x}) differ")]
    Asymmetric { x: usize, y: usize },
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

pub fn header(m: &LabelMatrix) -> String {
    format!(
        "{MAGIC} {VERSION} q={} n={} V={}",
        m.q(),
        m.n(),
        m.vertex_count()
    )
}

fn atom_names(q: u32, n: u32) -> Vec<String> {
    std::iter::once("1'".to_string())
        .chain((0..=q).map(|i| format!("a{i}")))
        .chain((1..=n).map(|k| format!("t{k}")))
        .collect()
}

/// Writes `m` row by row.
pub fn write_representation<W: Write>(m: &LabelMatrix, out: &mut W) -> io::Result<()> {
    let names = atom_names(m.q(), m.n());
    writeln!(out, "{}", header(m))?;
    let mut line = String::new();
    for x in 0..m.vertex_count() {
        line.clear();
        for (y, &l) in m.row(x).iter().enumerate() {
            if y > 0 {
                line.push(' ');
            }
            line.push_str(&names[l as usize]);
        }
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    out.flush()
}

fn parse_field(tok: Option<&str>, key: &str, line: usize) -> Result<u64, FormatError> {
    let tok = tok.ok_or_else(|| syntax(line, format!("missing {key}=")))?;
    tok.strip_prefix(key)
        .and_then(|v| v.strip_prefix('='))
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| syntax(line, format!("expected {key}=<integer>, found {tok:?}")))
}

/// Parses a representation file. The matrix must be symmetric with `1'`
/// exactly on the diagonal.
pub fn read_representation<R: BufRead>(input: R) -> Result<LabelMatrix, FormatError> {
    let mut lines = input.lines();
    let head = lines.next().ok_or_else(|| syntax(1, "empty file"))??;
    let mut toks = head.split_whitespace();
    if toks.next() != Some(MAGIC) || toks.next() != Some(VERSION) {
        return Err(syntax(
            1,
            format!("expected header \"{MAGIC} {VERSION} ...\""),
        ));
    }
    let q = parse_field(toks.next(), "q", 1)?;
    let n = parse_field(toks.next(), "n", 1)?;
    let v = parse_field(toks.next(), "V", 1)? as usize;
    if toks.next().is_some() {
        return Err(syntax(1, "trailing tokens in header"));
    }
    let (q, n) = match (u32::try_from(q), u32::try_from(n)) {
        (Ok(q), Ok(n)) if q >= 1 => (q, n),
        _ => return Err(syntax(1, "q must be positive and q, n must fit in 32 bits")),
    };
    let s = AtomStructure::new(q, n).map_err(|e| syntax(1, e.to_string()))?;
    let mut m = LabelMatrix::new(q, n, v).map_err(|e| syntax(1, e.to_string()))?;

    for x in 0..v {
        let lineno = x + 2;
        let row = match lines.next() {
            Some(r) => r?,
            None => {
                return Err(FormatError::Truncated {
                    expected: v,
                    found: x,
                })
            }
        };
        let mut count = 0;
        for (y, tok) in row.split_whitespace().enumerate() {
            count += 1;
            if y >= v {
                break;
            }
            let idx = tok
                .parse::<Atom>()
                .ok()
                .and_then(|a| s.index_of(a))
                .ok_or_else(|| syntax(lineno, format!("column {}: unknown atom {tok:?}", y + 1)))?;
            if (x == y) != (idx == 0) {
                return Err(syntax(
                    lineno,
                    format!("column {}: 1' must appear exactly on the diagonal", y + 1),
                ));
            }
            if y > x {
                m.set(x, y, idx);
            } else if y < x && m.get(x, y) != idx {
                return Err(FormatError::Asymmetric { x, y });
            }
        }
        if count != v {
            return Err(syntax(
                lineno,
                format!("expected {v} labels, found {count}"),
            ));
        }
    }
    for rest in lines {
        if !rest?.trim().is_empty() {
            return Err(syntax(v + 2, "unexpected content after the last row"));
        }
    }
    Ok(m)
}
