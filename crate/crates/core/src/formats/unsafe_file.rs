//! `.unsafe`: the unsafe region as a union of disjuncts, one per line.
//!
//! ```text
//! #UNSAFE v1 dim=<n>
//! halfspace <a1> ... <an> >= <b>        a·x ≥ b
//! zonotope <m> <c1> ... <cn> <g...>     generators column-major
//! box <l1> <u1> ... <ln> <un>           read as a zonotope
//! 2*x1 - x3 >= 4                        linear constraint over x1 ... xn
//! ```
//!
//! In linear constraints, terms and the `+`/`-` between them are separated
//! by spaces, a term is `x<i>` or `<coef>*x<i>` with an optional leading
//! sign, and `<=` is accepted as well as `>=`. The writer always emits the
//! `halfspace` and `zonotope` forms.

use nalgebra::{DMatrix, DVector};

use crate::error::{FormatError, FormatErrorKind, Result};
use crate::geometry::{Disjunct, Halfspace, IntervalBox, UnsafeSpec, Zonotope};

use super::{
    first_line, format_number, header_dim, header_fields, join_numbers, last_line, parse_number,
    split_document, Line, ParseResult,
};

pub fn parse_unsafe(text: &str) -> Result<UnsafeSpec> {
    Ok(parse(text)?)
}

fn parse(text: &str) -> ParseResult<UnsafeSpec> {
    let (header, lines) = split_document(text, "#UNSAFE")?;
    let raw = first_line(text);
    let fields = header_fields(&header, &["dim"], raw)?;
    let n = header_dim(fields[0], raw)?;

    let mut disjuncts = Vec::new();
    for line in &lines {
        let d = match line.tokens[0] {
            "halfspace" => {
                line.expect_len(n + 3)?;
                if line.tokens[n + 1] != ">=" {
                    return Err(line.err(FormatErrorKind::Invalid(format!(
                        "expected `>=`, found `{}`",
                        line.tokens[n + 1]
                    ))));
                }
                let normal = DVector::from_vec(line.numbers(1..n + 1)?);
                halfspace(line, normal, line.number(n + 2)?)?
            }
            "zonotope" => {
                if line.tokens.len() < 2 {
                    return Err(line.err(FormatErrorKind::Arity {
                        expected: 2 + n,
                        found: 1,
                    }));
                }
                let m = line.count(1)?;
                line.expect_len(2 + n + n * m)?;
                let v = line.numbers(2..2 + n + n * m)?;
                let z = Zonotope::new(
                    DVector::from_column_slice(&v[..n]),
                    DMatrix::from_column_slice(n, m, &v[n..]),
                )
                .map_err(|e| line.err(FormatErrorKind::Invalid(e.to_string())))?;
                Disjunct::Zonotope(z)
            }
            "box" => {
                line.expect_len(1 + 2 * n)?;
                let v = line.numbers(1..1 + 2 * n)?;
                for i in 0..n {
                    if v[2 * i] > v[2 * i + 1] {
                        return Err(line.err(FormatErrorKind::InvertedBounds {
                            lower: v[2 * i],
                            upper: v[2 * i + 1],
                        }));
                    }
                }
                let b = IntervalBox::new(
                    DVector::from_iterator(n, v.iter().step_by(2).copied()),
                    DVector::from_iterator(n, v.iter().skip(1).step_by(2).copied()),
                )
                .map_err(|e| line.err(FormatErrorKind::Invalid(e.to_string())))?;
                Disjunct::Zonotope(Zonotope::from_interval(&b))
            }
            _ => linear_constraint(line, n)?,
        };
        disjuncts.push(d);
    }
    if disjuncts.is_empty() {
        return Err(FormatError::new(
            last_line(text),
            FormatErrorKind::Missing("unsafe disjunct".into()),
        ));
    }
    UnsafeSpec::new(disjuncts)
        .map_err(|e| FormatError::new(1, FormatErrorKind::Invalid(e.to_string())))
}

fn halfspace(line: &Line<'_>, normal: DVector<f64>, offset: f64) -> ParseResult<Disjunct> {
    if normal.iter().all(|v| *v == 0.0) {
        return Err(line.err(FormatErrorKind::ZeroNormal));
    }
    Halfspace::new(normal, offset)
        .map(Disjunct::Halfspace)
        .map_err(|e| line.err(FormatErrorKind::Invalid(e.to_string())))
}

fn linear_constraint(line: &Line<'_>, n: usize) -> ParseResult<Disjunct> {
    let toks = &line.tokens;
    let Some(op) = toks.iter().position(|t| *t == ">=" || *t == "<=") else {
        return Err(line.err(FormatErrorKind::UnknownDirective(toks[0].to_string())));
    };
    if op + 2 != toks.len() || op == 0 {
        return Err(line.err(FormatErrorKind::Invalid(
            "linear constraint must read `<terms> >= <number>`".into(),
        )));
    }
    let bound = line.number(op + 1)?;
    let mut normal = DVector::zeros(n);
    let mut sign = 1.0;
    let mut expect_term = true;
    for tok in &toks[..op] {
        if !expect_term {
            sign = match *tok {
                "+" => 1.0,
                "-" => -1.0,
                _ => {
                    return Err(line.err(FormatErrorKind::Invalid(format!(
                        "expected `+` or `-`, found `{tok}`"
                    ))))
                }
            };
            expect_term = true;
            continue;
        }
        let (coef, var) = match tok.split_once('*') {
            Some((c, v)) => (parse_number(c).map_err(|k| line.err(k))?, v),
            None => match tok.strip_prefix('-') {
                Some(v) => (-1.0, v),
                None => (1.0, tok.strip_prefix('+').unwrap_or(tok)),
            },
        };
        let index = var
            .strip_prefix('x')
            .and_then(|i| i.parse::<usize>().ok())
            .ok_or_else(|| {
                line.err(FormatErrorKind::Invalid(format!(
                    "unknown variable `{var}`"
                )))
            })?;
        if index == 0 || index > n {
            return Err(line.err(FormatErrorKind::IndexOutOfRange { index, dim: n }));
        }
        normal[index - 1] += sign * coef;
        expect_term = false;
    }
    if expect_term {
        return Err(line.err(FormatErrorKind::Invalid("dangling operator".into())));
    }
    if toks[op] == "<=" {
        halfspace(line, -normal, -bound)
    } else {
        halfspace(line, normal, bound)
    }
}

pub fn write_unsafe(u: &UnsafeSpec) -> String {
    let mut out = format!("#UNSAFE v1 dim={}\n", u.dim());
    for d in u.disjuncts() {
        match d {
            Disjunct::Halfspace(h) => {
                out.push_str("halfspace");
                join_numbers(&mut out, h.normal().iter().copied());
                out.push_str(" >= ");
                out.push_str(&format_number(h.offset()));
            }
            Disjunct::Zonotope(z) => {
                out.push_str("zonotope ");
                out.push_str(&z.num_generators().to_string());
                join_numbers(&mut out, z.center().iter().copied());
                join_numbers(&mut out, z.generators().iter().copied());
            }
        }
        out.push('\n');
    }
    out
}
