//! Plain-text point-set format.
//!
//! ```text
//! d n
//! x_11 x_12 ... x_1d
//! ...
//! x_n1 x_n2 ... x_nd
//! ```
//!
//! Values are written with 17 significant digits so that a write/read cycle
//! reproduces every coordinate bit for bit.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geometry::PointSet;

fn parse_err<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        message: message.into(),
    })
}

pub fn parse_pointset(text: &str) -> Result<PointSet> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let Some((hline, header)) = lines.next() else {
        return parse_err(1, "missing header `d n`");
    };
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return parse_err(hline, format!("header must be `d n`, got {header:?}"));
    }
    let dim: usize = fields[0]
        .parse()
        .or_else(|_| parse_err(hline, format!("bad dimension {:?}", fields[0])))?;
    let n: usize = fields[1]
        .parse()
        .or_else(|_| parse_err(hline, format!("bad point count {:?}", fields[1])))?;
    if dim == 0 {
        return parse_err(hline, "dimension must be positive");
    }

    let mut coords = Vec::with_capacity(dim * n);
    let mut rows = 0;
    for (lineno, line) in lines {
        if rows == n {
            return parse_err(lineno, format!("more than the {n} rows announced"));
        }
        let before = coords.len();
        for tok in line.split_whitespace() {
            let v: f64 = tok
                .parse()
                .or_else(|_| parse_err(lineno, format!("non-numeric token {tok:?}")))?;
            if !v.is_finite() {
                return parse_err(lineno, format!("non-finite value {tok:?}"));
            }
            coords.push(v);
        }
        let got = coords.len() - before;
        if got != dim {
            return parse_err(lineno, format!("expected {dim} coordinates, found {got}"));
        }
        rows += 1;
    }
    if rows != n {
        return parse_err(
            text.lines().count().max(1),
            format!("header announces {n} rows, found {rows}"),
        );
    }
    PointSet::from_flat(dim, coords)
}

pub fn format_pointset(points: &PointSet) -> String {
    let mut out = String::with_capacity(points.len() * points.dim() * 25 + 16);
    let _ = writeln!(out, "{} {}", points.dim(), points.len());
    for p in points.iter() {
        let mut first = true;
        for x in p {
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{x:.16e}");
        }
        out.push('\n');
    }
    out
}
