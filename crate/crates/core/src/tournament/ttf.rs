//! Tournament text format, version 1.
//!
//! ```text
//! tournament v1
//! n=<order>
//! <n(n-1)/2 characters over {0,1}, pairs (i,j), i<j, lexicographic>
//! ```
//!
//! A `1` means `i` dominates `j`. Lines starting with `#` are ignored.

use super::Tournament;
use crate::error::{Error, Result};

const HEADER: &str = "tournament v1";

pub fn write_ttf(t: &Tournament) -> String {
    format!("{HEADER}\nn={}\n{}\n", t.order(), t.arc_string())
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

pub fn parse_ttf(text: &str) -> Result<Tournament> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|(_, l)| !l.starts_with('#'));

    let (ln, header) = lines.next().ok_or_else(|| err(1, 1, "empty input"))?;
    if header != HEADER {
        return Err(err(ln, 1, format!("expected `{HEADER}`")));
    }

    let (ln, size) = lines
        .next()
        .ok_or_else(|| err(ln + 1, 1, "missing `n=` line"))?;
    let digits = size
        .strip_prefix("n=")
        .ok_or_else(|| err(ln, 1, "expected `n=<order>`"))?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(ln, 3, "order must be a decimal integer"));
    }
    let n: usize = digits
        .parse()
        .map_err(|_| err(ln, 3, "order out of range"))?;
    if n == 0 {
        return Err(err(ln, 3, "order must be at least 1"));
    }
    let expected = n
        .checked_mul(n - 1)
        .map(|m| m / 2)
        .ok_or_else(|| err(ln, 3, "order out of range"))?;

    let (arc_line, arcs) = match lines.next() {
        Some(l) => l,
        None if expected == 0 => (ln + 1, ""),
        None => return Err(err(ln + 1, 1, "missing arc line")),
    };
    let mut bits = Vec::with_capacity(expected);
    for (col, ch) in arcs.chars().enumerate() {
        match ch {
            '0' => bits.push(false),
            '1' => bits.push(true),
            other => {
                return Err(err(arc_line, col + 1, format!("unexpected character {other:?}")));
            }
        }
    }
    if bits.len() != expected {
        return Err(err(
            arc_line,
            bits.len() + 1,
            format!("expected {expected} arc bits for n={n}, found {}", bits.len()),
        ));
    }
    if let Some((ln, _)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(err(ln, 1, "unexpected trailing content"));
    }
    Tournament::from_pair_bits(n, bits)
}
