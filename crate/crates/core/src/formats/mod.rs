//! Plain-text file formats.
//!
//! Every format is UTF-8, whitespace separated, and `\n` terminated. The
//! first line is a versioned header; later lines starting with `#` are
//! comments and blank lines are ignored. Writers produce canonical text in
//! which each number is the shortest decimal string that parses back to the
//! same `f64`, so `parse(write(x)) == x` holds exactly.
//!
//! | extension | header                                      | content                 |
//! |-----------|---------------------------------------------|-------------------------|
//! | `.mlog`   | `#MLOG v1 dim=<n> type=<interval|zonotope>` | logged samples          |
//! | `.mbeh`   | `#MBEH v1 dim=<n>`                          | the state at every step |
//! | `.model`  | `#MODEL v1 dim=<n>`                         | uncertain linear system |
//! | `.unsafe` | `#UNSAFE v1 dim=<n>`                        | unsafe region           |
//!
//! Plot exports (CSV and SVG) are output only.

mod mbeh;
mod mlog;
mod model;
mod plot;
mod unsafe_file;

pub use mbeh::{parse_mbeh, write_mbeh};
pub use mlog::{parse_mlog, write_mlog};
pub use model::{parse_model, write_model, ModelFile};
pub use plot::{export_plot_csv, export_plot_svg, PlotLayer};
pub use unsafe_file::{parse_unsafe, write_unsafe};

use crate::error::{FormatError, FormatErrorKind};

type ParseResult<T> = std::result::Result<T, FormatError>;

/// Shortest text that round-trips to `x`: plain or exponent notation,
/// whichever is shorter.
pub fn format_number(x: f64) -> String {
    let plain = format!("{x}");
    let exp = format!("{x:e}");
    if exp.len() < plain.len() {
        exp
    } else {
        plain
    }
}

fn join_numbers(out: &mut String, values: impl IntoIterator<Item = f64>) {
    for v in values {
        out.push(' ');
        out.push_str(&format_number(v));
    }
}

/// A content line with its 1-based line number.
struct Line<'a> {
    number: usize,
    tokens: Vec<&'a str>,
}

impl Line<'_> {
    fn err(&self, kind: FormatErrorKind) -> FormatError {
        FormatError::new(self.number, kind)
    }

    fn expect_len(&self, expected: usize) -> ParseResult<()> {
        if self.tokens.len() == expected {
            Ok(())
        } else {
            Err(self.err(FormatErrorKind::Arity {
                expected,
                found: self.tokens.len(),
            }))
        }
    }

    fn number(&self, k: usize) -> ParseResult<f64> {
        parse_number(self.tokens[k]).map_err(|kind| self.err(kind))
    }

    fn numbers(&self, range: std::ops::Range<usize>) -> ParseResult<Vec<f64>> {
        range.map(|k| self.number(k)).collect()
    }

    fn count(&self, k: usize) -> ParseResult<usize> {
        self.tokens[k]
            .parse::<usize>()
            .map_err(|_| self.err(FormatErrorKind::InvalidNumber(self.tokens[k].to_string())))
    }

    fn time(&self, k: usize) -> ParseResult<u64> {
        self.tokens[k]
            .parse::<u64>()
            .map_err(|_| self.err(FormatErrorKind::InvalidTime(self.tokens[k].to_string())))
    }
}

fn parse_number(tok: &str) -> Result<f64, FormatErrorKind> {
    let v = tok
        .parse::<f64>()
        .map_err(|_| FormatErrorKind::InvalidNumber(tok.to_string()))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(FormatErrorKind::NonFinite)
    }
}

/// Splits `text` into header tokens and content lines.
///
/// The header must be the first line, start with `magic`, and carry exactly
/// `fields` further tokens.
fn split_document<'a>(text: &'a str, magic: &str) -> ParseResult<(Vec<&'a str>, Vec<Line<'a>>)> {
    let mut raw = text.split('\n').enumerate().map(|(k, l)| (k + 1, l));
    let (_, header) = raw
        .next()
        .ok_or(FormatError::new(1, FormatErrorKind::EmptyInput))?;
    if header.is_empty() && text.is_empty() {
        return Err(FormatError::new(1, FormatErrorKind::EmptyInput));
    }
    let header_tokens: Vec<&str> = header.split_whitespace().collect();
    if header.contains('\r') || header_tokens.first() != Some(&magic) {
        return Err(FormatError::new(
            1,
            FormatErrorKind::MalformedHeader(header.to_string()),
        ));
    }
    let mut lines = Vec::new();
    for (number, l) in raw {
        if l.contains('\r') {
            return Err(FormatError::new(
                number,
                FormatErrorKind::Invalid("carriage return in line".into()),
            ));
        }
        let trimmed = l.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        lines.push(Line {
            number,
            tokens: trimmed.split_whitespace().collect(),
        });
    }
    Ok((header_tokens, lines))
}

/// Number of lines in `text`, for diagnostics about missing content.
fn last_line(text: &str) -> usize {
    text.trim_end_matches('\n').split('\n').count().max(1)
}

/// Parses `key=value` header fields in a fixed order.
fn header_fields<'a>(tokens: &[&'a str], keys: &[&str], raw: &str) -> ParseResult<Vec<&'a str>> {
    let malformed = || FormatError::new(1, FormatErrorKind::MalformedHeader(raw.to_string()));
    if tokens.len() != keys.len() + 2 || tokens[1] != "v1" {
        return Err(malformed());
    }
    keys.iter()
        .zip(&tokens[2..])
        .map(|(key, tok)| {
            tok.strip_prefix(key)
                .and_then(|rest| rest.strip_prefix('='))
                .filter(|v| !v.is_empty())
                .ok_or_else(malformed)
        })
        .collect()
}

fn header_dim(value: &str, raw: &str) -> ParseResult<usize> {
    match value.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(FormatError::new(
            1,
            FormatErrorKind::MalformedHeader(raw.to_string()),
        )),
    }
}

fn first_line(text: &str) -> &str {
    text.split('\n').next().unwrap_or("")
}
