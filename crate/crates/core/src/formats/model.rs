//! `.model`: the uncertain linear bounding model.
//!
//! ```text
//! #MODEL v1 dim=<n>
//! vars <name1> ... <namen>          optional, defaults to x1 ... xn
//! max_generators <k>                optional, defaults to 5·n
//! row <a_i1> ... <a_in>             exactly n rows, in order
//! cell <i> <j> <lo> <hi>            1-based cell, ΔA[i][j] ∈ [lo, hi]
//! ```

use std::collections::BTreeMap;

use nalgebra::DMatrix;

use crate::dynamics::UncertainLinearSystem;
use crate::error::{FormatError, FormatErrorKind, Result};
use crate::geometry::Interval;

use super::{
    first_line, format_number, header_dim, header_fields, join_numbers, last_line, split_document,
    ParseResult,
};

#[derive(Clone, Debug, PartialEq)]
pub struct ModelFile {
    pub system: UncertainLinearSystem,
    pub var_names: Vec<String>,
    pub max_generators: usize,
}

impl ModelFile {
    /// Default names `x1 ... xn` and generator budget.
    pub fn new(system: UncertainLinearSystem) -> Self {
        let n = system.dim();
        ModelFile {
            var_names: (1..=n).map(|i| format!("x{i}")).collect(),
            max_generators: system.default_max_generators(),
            system,
        }
    }
}

pub fn parse_model(text: &str) -> Result<ModelFile> {
    Ok(parse(text)?)
}

fn parse(text: &str) -> ParseResult<ModelFile> {
    let (header, lines) = split_document(text, "#MODEL")?;
    let raw = first_line(text);
    let fields = header_fields(&header, &["dim"], raw)?;
    let n = header_dim(fields[0], raw)?;

    let mut var_names: Option<Vec<String>> = None;
    let mut max_generators: Option<usize> = None;
    let mut rows: Vec<f64> = Vec::with_capacity(n * n);
    let mut uncertainty = BTreeMap::new();

    for line in &lines {
        match line.tokens[0] {
            "vars" => {
                if var_names.is_some() {
                    return Err(line.err(FormatErrorKind::Duplicate("vars".into())));
                }
                line.expect_len(1 + n)?;
                var_names = Some(line.tokens[1..].iter().map(|s| s.to_string()).collect());
            }
            "max_generators" => {
                if max_generators.is_some() {
                    return Err(line.err(FormatErrorKind::Duplicate("max_generators".into())));
                }
                line.expect_len(2)?;
                let k = line.count(1)?;
                if k < n {
                    return Err(line.err(FormatErrorKind::Invalid(format!(
                        "max_generators {k} is below the dimension {n}"
                    ))));
                }
                max_generators = Some(k);
            }
            "row" => {
                if rows.len() == n * n {
                    return Err(line.err(FormatErrorKind::Invalid(format!(
                        "more than {n} nominal rows"
                    ))));
                }
                line.expect_len(1 + n)?;
                rows.extend(line.numbers(1..1 + n)?);
            }
            "cell" => {
                line.expect_len(5)?;
                let i = line.count(1)?;
                let j = line.count(2)?;
                for idx in [i, j] {
                    if idx == 0 || idx > n {
                        return Err(
                            line.err(FormatErrorKind::IndexOutOfRange { index: idx, dim: n })
                        );
                    }
                }
                let (lo, hi) = (line.number(3)?, line.number(4)?);
                if lo > hi {
                    return Err(line.err(FormatErrorKind::InvertedBounds {
                        lower: lo,
                        upper: hi,
                    }));
                }
                if uncertainty
                    .insert((i - 1, j - 1), Interval { lo, hi })
                    .is_some()
                {
                    return Err(line.err(FormatErrorKind::Duplicate(format!("cell {i} {j}"))));
                }
            }
            other => return Err(line.err(FormatErrorKind::UnknownDirective(other.into()))),
        }
    }
    if rows.len() != n * n {
        return Err(FormatError::new(
            last_line(text),
            FormatErrorKind::Missing(format!("nominal rows ({} of {n} given)", rows.len() / n)),
        ));
    }
    let system = UncertainLinearSystem::new(DMatrix::from_row_slice(n, n, &rows), uncertainty)
        .map_err(|e| FormatError::new(1, FormatErrorKind::Invalid(e.to_string())))?;
    let mut model = ModelFile::new(system);
    if let Some(names) = var_names {
        model.var_names = names;
    }
    if let Some(k) = max_generators {
        model.max_generators = k;
    }
    Ok(model)
}

pub fn write_model(model: &ModelFile) -> String {
    let sys = &model.system;
    let n = sys.dim();
    let mut out = format!("#MODEL v1 dim={n}\nvars {}\n", model.var_names.join(" "));
    out.push_str(&format!("max_generators {}\n", model.max_generators));
    for row in sys.nominal().row_iter() {
        out.push_str("row");
        join_numbers(&mut out, row.iter().copied());
        out.push('\n');
    }
    for (&(i, j), iv) in sys.uncertainty() {
        out.push_str(&format!(
            "cell {} {} {} {}\n",
            i + 1,
            j + 1,
            format_number(iv.lo),
            format_number(iv.hi)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_model() {
        let m = parse_model("#MODEL v1 dim=1\nrow 0.5\n").unwrap();
        assert_eq!(m.system.nominal()[(0, 0)], 0.5);
        assert!(m.system.uncertainty().is_empty());
        assert_eq!(m.var_names, vec!["x1"]);
        assert_eq!(m.max_generators, 5);
    }

    #[test]
    fn full_round_trip() {
        let text = "#MODEL v1 dim=2\nvars v d\nmax_generators 8\nrow 1 0.1\nrow -0.2 0.9\n\
                    cell 1 2 -0.01 0.01\ncell 2 2 0 0.05\n";
        let m = parse_model(text).unwrap();
        assert_eq!(
            m.system.uncertainty()[&(0, 1)],
            Interval {
                lo: -0.01,
                hi: 0.01
            }
        );
        assert_eq!(write_model(&m), text);
    }

    #[test]
    fn diagnostics() {
        let cases = [
            ("#MODEL v1 dim=1\nrow 1\ncell 1 1 0.2 0.1\n", 3, "exceeds"),
            ("#MODEL v1 dim=2\nrow 1 0\n", 2, "missing"),
            ("#MODEL v1 dim=2\nrow 1 0\nrow 0\n", 3, "expected 3"),
            ("#MODEL v1 dim=1\nrow 1\ncell 2 1 0 0\n", 3, "out of range"),
            ("#MODEL v1 dim=1\nrow 1\nmatrix 1\n", 3, "unknown directive"),
            (
                "#MODEL v1 dim=1\nrow 1\ncell 1 1 0 0\ncell 1 1 0 0\n",
                4,
                "duplicate",
            ),
            (
                "#MODEL v1 dim=2\nmax_generators 1\nrow 1 0\nrow 0 1\n",
                2,
                "below",
            ),
        ];
        for (text, line, needle) in cases {
            let err = parse_model(text).unwrap_err().to_string();
            assert!(err.starts_with(&format!("line {line}:")), "{err}");
            assert!(err.contains(needle), "{err}");
        }
    }
}
