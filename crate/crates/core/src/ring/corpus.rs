//! Ring corpus files and per-ring reports.
//!
//! One ring per line:
//!
//! ```text
//! zmod m | gf p [k] | matrix n <ring> | uppertri n <ring>
//!        | product <ring> <ring> | quotientpoly <ring> <poly>
//! ```
//!
//! `<poly>` is either comma separated coefficients from low to high degree
//! (`1,0,1`) or a monic polynomial in `x` (`x^2+1`). `#` starts a comment.

use serde::{Deserialize, Serialize};

use super::checks::{check_structure_theorem, nil_sum_consequences, Checklist};
use super::property::{has_2_nil_sum_property, minimal_types, TypeSignature};
use super::{analyze, FiniteRing, RingError};

pub const DEFAULT_CORPUS: &str = "\
zmod 2
zmod 3
zmod 4
zmod 5
zmod 6
zmod 7
zmod 8
zmod 9
zmod 10
zmod 11
zmod 12
zmod 13
zmod 14
zmod 15
zmod 16
gf 2 1
gf 3 1
gf 2 2
gf 5 1
quotientpoly zmod 2 0,0,1
quotientpoly zmod 2 0,0,0,1
product zmod 2 zmod 2
matrix 2 gf 2 1
matrix 2 gf 3 1
uppertri 2 gf 2 1
uppertri 2 gf 3 1
";

/// Parses one ring description.
pub fn parse_ring_spec(text: &str) -> Result<FiniteRing, String> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let mut pos = 0;
    let ring = parse_ring(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(format!(
            "unexpected trailing input `{}`",
            tokens[pos..].join(" ")
        ));
    }
    Ok(ring)
}

fn next<'a>(tokens: &[&'a str], pos: &mut usize, what: &str) -> Result<&'a str, String> {
    let t = tokens
        .get(*pos)
        .ok_or_else(|| format!("expected {what}, found end of line"))?;
    *pos += 1;
    Ok(t)
}

fn number(tokens: &[&str], pos: &mut usize, what: &str) -> Result<usize, String> {
    let t = next(tokens, pos, what)?;
    t.parse()
        .map_err(|_| format!("expected {what}, found `{t}`"))
}

fn parse_ring(tokens: &[&str], pos: &mut usize) -> Result<FiniteRing, String> {
    let keyword = next(tokens, pos, "a ring")?;
    let ring = match keyword {
        "zmod" => FiniteRing::zmod(number(tokens, pos, "a modulus")?),
        "gf" => {
            let p = number(tokens, pos, "a prime")? as u32;
            let k = match tokens.get(*pos).and_then(|t| t.parse::<u32>().ok()) {
                Some(k) => {
                    *pos += 1;
                    k
                }
                None => 1,
            };
            FiniteRing::galois(p, k)
        }
        "matrix" | "uppertri" => {
            let n = number(tokens, pos, "a matrix size")?;
            if n == 0 {
                return Err("matrix size must be positive".into());
            }
            let base = parse_ring(tokens, pos)?;
            if keyword == "matrix" {
                FiniteRing::matrix(n, &base)
            } else {
                FiniteRing::upper_triangular(n, &base)
            }
        }
        "product" => {
            let a = parse_ring(tokens, pos)?;
            let b = parse_ring(tokens, pos)?;
            FiniteRing::product(&a, &b)
        }
        "quotientpoly" => {
            let base = parse_ring(tokens, pos)?;
            let poly = parse_poly(next(tokens, pos, "a polynomial")?)?;
            FiniteRing::quotient_poly(&base, &poly)
        }
        other => return Err(format!("unknown ring `{other}`")),
    };
    ring.map_err(|e| e.to_string())
}

/// Coefficients from low to high degree.
fn parse_poly(text: &str) -> Result<Vec<i64>, String> {
    let bad = || format!("bad polynomial `{text}`");
    if !text.contains('x') {
        return text
            .split(',')
            .map(|c| c.trim().parse().map_err(|_| bad()))
            .collect();
    }
    let mut coeffs: Vec<i64> = Vec::new();
    let normalized = text.replace('-', "+-");
    for term in normalized.split('+').filter(|t| !t.is_empty()) {
        let (coeff, degree) = match term.split_once('x') {
            None => (term.parse::<i64>().map_err(|_| bad())?, 0),
            Some((c, rest)) => {
                let c = match c.trim_end_matches('*') {
                    "" => 1,
                    "-" => -1,
                    c => c.parse().map_err(|_| bad())?,
                };
                let d = match rest {
                    "" => 1,
                    r => r
                        .strip_prefix('^')
                        .and_then(|d| d.parse().ok())
                        .ok_or_else(bad)?,
                };
                (c, d)
            }
        };
        if coeffs.len() <= degree {
            coeffs.resize(degree + 1, 0);
        }
        coeffs[degree] += coeff;
    }
    Ok(coeffs)
}

/// Parses a corpus file; errors carry the one-based line number.
pub fn parse_corpus(text: &str) -> Result<Vec<FiniteRing>, RingError> {
    text.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let line = line.split('#').next().unwrap_or("").trim();
            (!line.is_empty()).then_some((i + 1, line))
        })
        .map(|(line, spec)| {
            parse_ring_spec(spec).map_err(|message| RingError::Parse { line, message })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingReport {
    pub ring: String,
    pub size: usize,
    pub holds: bool,
    /// Label of the first element that is not a sum of two nilpotents.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<String>,
    pub minimal_types: TypeSignature,
    /// Checklist of consequences of the property.
    pub lemma21: Checklist,
    pub structure_consistent: bool,
}

impl RingReport {
    /// Whether every check in the report agrees with the theory.
    pub fn consistent(&self) -> bool {
        self.structure_consistent && self.lemma21.passed()
    }
}

pub fn report_ring(r: &FiniteRing) -> RingReport {
    let a = analyze(r);
    let property = has_2_nil_sum_property(r, &a);
    RingReport {
        ring: r.name().to_string(),
        size: r.size(),
        holds: property.holds,
        counterexample: property.counterexample.map(|x| r.label(x).to_string()),
        minimal_types: minimal_types(r, &a),
        lemma21: nil_sum_consequences(r, &a),
        structure_consistent: check_structure_theorem(r, &a).consistent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Exponent;

    #[test]
    fn parses_nested_specs() {
        let r = parse_ring_spec("matrix 2 gf 2 1").unwrap();
        assert_eq!(r.size(), 16);
        let r = parse_ring_spec("product zmod 2 gf 3").unwrap();
        assert_eq!(r.size(), 6);
        let r = parse_ring_spec("quotientpoly zmod 2 x^2+1").unwrap();
        assert_eq!(r.size(), 4);
        assert_eq!(parse_poly("x^3-x+2").unwrap(), vec![2, -1, 0, 1]);
        assert_eq!(parse_poly("0,0,1").unwrap(), vec![0, 0, 1]);
    }

    #[test]
    fn parse_errors_name_the_line() {
        let err = parse_corpus("zmod 4\n# comment\nzmod 0\n").unwrap_err();
        assert!(matches!(err, RingError::Parse { line: 3, .. }), "{err}");
        assert!(parse_ring_spec("zmod").is_err());
        assert!(parse_ring_spec("zmod 4 5").is_err());
        assert!(parse_ring_spec("ring 4").is_err());
        assert!(parse_ring_spec("matrix 6 gf 2").is_err());
    }

    #[test]
    fn default_corpus_parses() {
        let rings = parse_corpus(DEFAULT_CORPUS).unwrap();
        assert_eq!(rings.len(), 26);
        let m2gf3 = rings.iter().find(|r| r.name() == "M_2(GF(3))").unwrap();
        assert_eq!(m2gf3.size(), 81);
    }

    #[test]
    fn z4_report() {
        let rep = report_ring(&FiniteRing::zmod(4).unwrap());
        assert!(rep.holds && rep.consistent());
        assert_eq!(rep.counterexample, None);
        assert_eq!(
            rep.minimal_types.pairs,
            vec![(1, Exponent::Finite(2)), (2, Exponent::Finite(1))]
        );
        let z6 = report_ring(&FiniteRing::zmod(6).unwrap());
        assert_eq!(z6.counterexample.as_deref(), Some("2"));
        assert!(z6.consistent());
    }
}
