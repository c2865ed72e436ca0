//! The table grid text format: k lines of k whitespace-separated integers.
//! Entries 1..k make a multiplication table, entries all 0/1 a square 0-1
//! matrix. A header row and column (as printed in the literature, with an
//! operation symbol in the corner) are tolerated on input and never emitted.

use std::fmt::Write as _;

use upp2_core::OperationTable;

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParsedGrid {
    /// Square 0-1 matrix, rows as bitmasks.
    Matrix(Vec<Vec<u8>>),
    /// Multiplication table, 0-based entries.
    Table(OperationTable),
}

struct Token {
    line: usize,
    col: usize,
    text: String,
}

fn tokenize(text: &str) -> Vec<Vec<Token>> {
    let mut rows = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let mut toks = Vec::new();
        let mut col = 0;
        let chars: Vec<char> = line.chars().collect();
        while col < chars.len() {
            if chars[col].is_whitespace() {
                col += 1;
                continue;
            }
            let start = col;
            while col < chars.len() && !chars[col].is_whitespace() {
                col += 1;
            }
            toks.push(Token {
                line: li + 1,
                col: start + 1,
                text: chars[start..col].iter().collect(),
            });
        }
        if !toks.is_empty() {
            rows.push(toks);
        }
    }
    rows
}

fn is_integer(tok: &Token) -> bool {
    !tok.text.is_empty() && tok.text.chars().all(|c| c.is_ascii_digit())
}

pub fn parse_grid(text: &str, name: &str) -> CliResult<ParsedGrid> {
    let mut rows = tokenize(text);
    if rows.is_empty() {
        return Err(CliError::parse(name, 1, 1, "empty input"));
    }

    // A plain grid is square with integer entries. Anything else is taken as
    // a header row (possibly an operation symbol plus column labels); the
    // body lines then drop a leading row label if they are one entry long.
    let plain = rows[0].iter().all(is_integer) && rows[0].len() == rows.len();
    if !plain {
        rows.remove(0);
        let k = rows.len();
        for row in &mut rows {
            if row.len() == k + 1 {
                row.remove(0);
            }
        }
    }

    let k = rows.len();
    if k == 0 {
        return Err(CliError::parse(name, 1, 1, "no grid rows"));
    }
    let mut values = Vec::with_capacity(k * k);
    for row in &rows {
        if row.len() != k {
            let tok = row.last().unwrap();
            return Err(CliError::parse(
                name,
                tok.line,
                tok.col,
                format!("expected {k} entries on this line, found {}", row.len()),
            ));
        }
        for tok in row {
            if !is_integer(tok) {
                return Err(CliError::parse(
                    name,
                    tok.line,
                    tok.col,
                    format!("not an integer: {:?}", tok.text),
                ));
            }
            let v: usize = tok.text.parse().map_err(|_| {
                CliError::parse(name, tok.line, tok.col, "integer out of range")
            })?;
            values.push((v, tok.line, tok.col));
        }
    }

    if values.iter().all(|&(v, _, _)| v <= 1) {
        let grid = values
            .chunks(k)
            .map(|row| row.iter().map(|&(v, _, _)| v as u8).collect())
            .collect();
        return Ok(ParsedGrid::Matrix(grid));
    }

    let mut entries = Vec::with_capacity(k * k);
    for &(v, line, col) in &values {
        if v == 0 || v > k {
            return Err(CliError::parse(
                name,
                line,
                col,
                format!("table entry {v} outside 1..={k}"),
            ));
        }
        entries.push(v - 1);
    }
    Ok(ParsedGrid::Table(OperationTable::new(k, entries)?))
}

/// Renders a table in the grid format: 1-based entries, no headers.
pub fn render_table(table: &OperationTable) -> String {
    let k = table.order();
    let width = format!("{k}").len();
    let mut out = String::new();
    for a in 0..k {
        for b in 0..k {
            if b > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{:>width$}", table.get(a, b) + 1);
        }
        out.push('\n');
    }
    out
}
