//! `.mlog`: logged samples.
//!
//! ```text
//! #MLOG v1 dim=<n> type=<interval|zonotope>
//! <t> <l1> <u1> ... <ln> <un>                          (interval)
//! <t> <m> <c1> ... <cn> <g11> ... <gn1> ... <gnm>      (zonotope, column-major)
//! ```

use nalgebra::{DMatrix, DVector};

use crate::error::{FormatError, FormatErrorKind, Result};
use crate::geometry::{IntervalBox, Zonotope};
use crate::monitor::{Log, LogKind, Sample, SampleSet};

use super::{first_line, header_dim, header_fields, join_numbers, split_document, ParseResult};

pub fn parse_mlog(text: &str) -> Result<Log> {
    Ok(parse(text)?)
}

fn parse(text: &str) -> ParseResult<Log> {
    let (header, lines) = split_document(text, "#MLOG")?;
    let raw = first_line(text);
    let fields = header_fields(&header, &["dim", "type"], raw)?;
    let n = header_dim(fields[0], raw)?;
    let kind = match fields[1] {
        "interval" => LogKind::Interval,
        "zonotope" => LogKind::Zonotope,
        _ => {
            return Err(FormatError::new(
                1,
                FormatErrorKind::MalformedHeader(raw.into()),
            ))
        }
    };

    let mut samples: Vec<Sample> = Vec::with_capacity(lines.len());
    for line in &lines {
        if line.tokens.len() < 2 {
            return Err(line.err(FormatErrorKind::Arity {
                expected: if kind == LogKind::Interval {
                    1 + 2 * n
                } else {
                    2 + n
                },
                found: line.tokens.len(),
            }));
        }
        let time = line.time(0)?;
        if let Some(prev) = samples.last() {
            if time <= prev.time {
                return Err(line.err(FormatErrorKind::NonIncreasingTime {
                    previous: prev.time,
                    found: time,
                }));
            }
        }
        let set = match kind {
            LogKind::Interval => {
                line.expect_len(1 + 2 * n)?;
                let v = line.numbers(1..1 + 2 * n)?;
                let lower = DVector::from_iterator(n, v.iter().step_by(2).copied());
                let upper = DVector::from_iterator(n, v.iter().skip(1).step_by(2).copied());
                for i in 0..n {
                    if lower[i] > upper[i] {
                        return Err(line.err(FormatErrorKind::InvertedBounds {
                            lower: lower[i],
                            upper: upper[i],
                        }));
                    }
                }
                let b = IntervalBox::new(lower, upper)
                    .map_err(|e| line.err(FormatErrorKind::Invalid(e.to_string())))?;
                SampleSet::Box(b)
            }
            LogKind::Zonotope => {
                let m = line.count(1)?;
                line.expect_len(2 + n + n * m)?;
                let v = line.numbers(2..2 + n + n * m)?;
                let center = DVector::from_column_slice(&v[..n]);
                let generators = DMatrix::from_column_slice(n, m, &v[n..]);
                let z = Zonotope::new(center, generators)
                    .map_err(|e| line.err(FormatErrorKind::Invalid(e.to_string())))?;
                SampleSet::Zonotope(z)
            }
        };
        samples.push(Sample { time, set });
    }
    Log::new(n, kind, samples)
        .map_err(|e| FormatError::new(1, FormatErrorKind::Invalid(e.to_string())))
}

pub fn write_mlog(log: &Log) -> String {
    let n = log.dim();
    let kind = match log.kind() {
        LogKind::Interval => "interval",
        LogKind::Zonotope => "zonotope",
    };
    let mut out = format!("#MLOG v1 dim={n} type={kind}\n");
    for s in log.samples() {
        out.push_str(&s.time.to_string());
        match &s.set {
            SampleSet::Box(b) => {
                join_numbers(&mut out, (0..n).flat_map(|i| [b.lower()[i], b.upper()[i]]));
            }
            SampleSet::Zonotope(z) => {
                out.push(' ');
                out.push_str(&z.num_generators().to_string());
                join_numbers(&mut out, z.center().iter().copied());
                join_numbers(&mut out, z.generators().iter().copied());
            }
        }
        out.push('\n');
    }
    out
}
