//! Plain-text matrix format.
//!
//! ```text
//! gf 2            <- domain: `gf p` | `gf p k <modulus coeffs low-to-high>` | `rat` | `quat`
//! 2 2             <- rows cols
//! 0 1
//! 1 0
//! ```
//!
//! Galois entries are integers (prime fields reduce mod `p`; extension
//! fields take packed element codes), rationals are `a` or `a/b`, and
//! quaternions are `a+bi+cj+dk`. Blank lines and `#` comments are ignored.

use crate::error::AlgebraError;
use crate::matrix::ExactMatrix;
use crate::scalar::ScalarDomain;

/// Non-empty, comment-stripped lines.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
}

pub fn parse_matrix(text: &str) -> Result<ExactMatrix, AlgebraError> {
    parse_matrix_lines(&mut content_lines(text))
}

pub(crate) fn parse_matrix_lines<'a>(
    lines: &mut impl Iterator<Item = &'a str>,
) -> Result<ExactMatrix, AlgebraError> {
    let header = lines
        .next()
        .ok_or_else(|| AlgebraError::Parse("missing domain line".into()))?;
    let domain = ScalarDomain::parse_spec(header)?;
    let dims = lines
        .next()
        .ok_or_else(|| AlgebraError::Parse("missing dimension line".into()))?;
    let dims: Vec<usize> = dims
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| AlgebraError::Parse(format!("bad dimension `{t}`")))
        })
        .collect::<Result<_, _>>()?;
    let [rows, cols] = dims[..] else {
        return Err(AlgebraError::Parse(
            "dimension line must be `rows cols`".into(),
        ));
    };
    let mut grid = Vec::with_capacity(rows);
    for r in 0..rows {
        let line = lines
            .next()
            .ok_or_else(|| AlgebraError::Parse(format!("missing row {}", r + 1)))?;
        let row = line
            .split_whitespace()
            .map(|tok| domain.parse_scalar(tok))
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != cols {
            return Err(AlgebraError::Parse(format!(
                "row {} has {} entries, expected {cols}",
                r + 1,
                row.len()
            )));
        }
        grid.push(row);
    }
    if let Some(extra) = lines.next() {
        return Err(AlgebraError::Parse(format!(
            "unexpected trailing line `{extra}`"
        )));
    }
    if rows == 0 {
        return Ok(ExactMatrix::zero(&domain, 0, cols));
    }
    ExactMatrix::from_rows(&domain, grid)
}

pub fn format_matrix(m: &ExactMatrix) -> String {
    let mut out = format!("{}\n{} {}\n", m.domain().spec_line(), m.rows(), m.cols());
    for row in m.format_rows() {
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
