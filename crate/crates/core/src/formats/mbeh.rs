//! `.mbeh`: the state at every timestep.
//!
//! ```text
//! #MBEH v1 dim=<n>
//! <t> <x1> ... <xn>        one line for each t = 0, 1, ..., T
//! ```

use nalgebra::DVector;

use crate::error::{FormatError, FormatErrorKind, Result};
use crate::monitor::Behavior;

use super::{
    first_line, header_dim, header_fields, join_numbers, last_line, split_document, ParseResult,
};

pub fn parse_mbeh(text: &str) -> Result<Behavior> {
    Ok(parse(text)?)
}

fn parse(text: &str) -> ParseResult<Behavior> {
    let (header, lines) = split_document(text, "#MBEH")?;
    let raw = first_line(text);
    let fields = header_fields(&header, &["dim"], raw)?;
    let n = header_dim(fields[0], raw)?;
    let mut states = Vec::with_capacity(lines.len());
    for (expected, line) in lines.iter().enumerate() {
        line.expect_len(1 + n)?;
        let t = line.time(0)?;
        if t != expected as u64 {
            return Err(line.err(FormatErrorKind::UnexpectedTime {
                expected: expected as u64,
                found: t,
            }));
        }
        states.push(DVector::from_vec(line.numbers(1..1 + n)?));
    }
    if states.is_empty() {
        return Err(FormatError::new(
            last_line(text),
            FormatErrorKind::Missing("state at time 0".into()),
        ));
    }
    Behavior::new(n, states)
        .map_err(|e| FormatError::new(1, FormatErrorKind::Invalid(e.to_string())))
}

pub fn write_mbeh(beh: &Behavior) -> String {
    let mut out = format!("#MBEH v1 dim={}\n", beh.dim());
    for (t, x) in beh.states().iter().enumerate() {
        out.push_str(&t.to_string());
        join_numbers(&mut out, x.iter().copied());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_state() {
        let beh = parse_mbeh("#MBEH v1 dim=2\n0 1 -2.5\n").unwrap();
        assert_eq!(beh.len(), 1);
        assert_eq!(beh.states()[0], DVector::from_vec(vec![1.0, -2.5]));
    }

    #[test]
    fn gap_names_expected_time() {
        let text = "#MBEH v1 dim=1\n0 1\n1 1\n3 1\n4 1\n5 1\n";
        let err = parse_mbeh(text).unwrap_err().to_string();
        assert_eq!(err, "line 4: expected time 2, found 3");
        let dup = "#MBEH v1 dim=1\n0 1\n0 1\n";
        assert!(parse_mbeh(dup)
            .unwrap_err()
            .to_string()
            .starts_with("line 3:"));
    }

    #[test]
    fn arity_mismatch() {
        let err = parse_mbeh("#MBEH v1 dim=2\n0 1\n").unwrap_err().to_string();
        assert!(
            err.starts_with("line 2:") && err.contains("expected 3"),
            "{err}"
        );
    }

    #[test]
    fn round_trip() {
        let text = "#MBEH v1 dim=2\n0 1 0\n1 0.9 0.1\n2 0.81 1e-9\n";
        assert_eq!(write_mbeh(&parse_mbeh(text).unwrap()), text);
    }
}
