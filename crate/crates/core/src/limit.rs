//! The direct limit `R` of `GF(2) -> M_2(GF(2)) -> M_4(GF(2)) -> ...` along
//! the unital embeddings `A -> diag(A, A)`.
//!
//! An element is stored at the smallest level where it appears, so two
//! elements are equal exactly when their stored forms are. `R` is simple
//! with center `{0, 1}`, and every element other than `1` is a sum of two
//! nilpotents: lifting a non-scalar `A` once gives `diag(A, A)`, which has
//! trace `2 tr(A) = 0` and is still non-scalar.

use std::fmt;

use thiserror::Error;

use crate::error::AlgebraError;
use crate::matrix::ExactMatrix;
use crate::nilpotency::is_nilpotent;
use crate::nilsum::{decompose_trace_zero, NilSumError};
use crate::scalar::ScalarDomain;
use crate::text;

pub const DEFAULT_MAX_LEVEL: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LimitError {
    #[error("matrix is {0}x{1}; expected 2^n x 2^n")]
    NotPowerOfTwo(usize, usize),
    #[error("entries must lie in GF(2), got {0}")]
    WrongDomain(String),
    #[error("level {level} exceeds the configured maximum {cap}")]
    LevelCap { level: u32, cap: u32 },
    #[error("cannot lift level {from} down to level {to}")]
    LiftBelow { from: u32, to: u32 },
    #[error("the identity is a central unit and is not a sum of two nilpotents")]
    CentralUnit,
    #[error("level header says {header} but the matrix has level {actual}")]
    LevelMismatch { header: u32, actual: u32 },
    #[error("decomposition failed: {0}")]
    Decompose(#[from] NilSumError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Canonical representative: a `2^level x 2^level` matrix over `GF(2)`
/// that is not of the form `diag(B, B)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LimitElement {
    level: u32,
    matrix: ExactMatrix,
}

impl LimitElement {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.level == 0 && self.matrix.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.level == 0 && self.matrix.is_identity()
    }
}

impl fmt::Display for LimitElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "level {}: {}", self.level, self.matrix)
    }
}

/// Two nilpotents summing to an element, found at `working_level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitDecomposition {
    pub first: LimitElement,
    pub second: LimitElement,
    pub working_level: u32,
    pub first_index: usize,
    pub second_index: usize,
}

/// Operations on the limit ring with a bound on matrix size.
#[derive(Clone, Debug)]
pub struct LimitRing {
    max_level: u32,
    domain: ScalarDomain,
}

impl Default for LimitRing {
    fn default() -> Self {
        Self::new(DEFAULT_MAX_LEVEL)
    }
}

fn level_of(n: usize) -> Option<u32> {
    n.is_power_of_two().then(|| n.trailing_zeros())
}

impl LimitRing {
    pub fn new(max_level: u32) -> Self {
        Self {
            max_level,
            domain: ScalarDomain::galois(2, 1).expect("GF(2)"),
        }
    }

    pub fn max_level(&self) -> u32 {
        self.max_level
    }

    pub fn domain(&self) -> &ScalarDomain {
        &self.domain
    }

    fn check_level(&self, level: u32) -> Result<(), LimitError> {
        if level > self.max_level {
            Err(LimitError::LevelCap {
                level,
                cap: self.max_level,
            })
        } else {
            Ok(())
        }
    }

    pub fn zero(&self) -> LimitElement {
        LimitElement {
            level: 0,
            matrix: ExactMatrix::zero(&self.domain, 1, 1),
        }
    }

    pub fn one(&self) -> LimitElement {
        LimitElement {
            level: 0,
            matrix: ExactMatrix::identity(&self.domain, 1),
        }
    }

    /// Strips `diag(B, B)` layers until none is left.
    pub fn canonicalize(&self, matrix: &ExactMatrix) -> Result<LimitElement, LimitError> {
        if matrix.domain() != &self.domain {
            return Err(LimitError::WrongDomain(matrix.domain().to_string()));
        }
        let level = match level_of(matrix.rows()) {
            Some(l) if matrix.is_square() => l,
            _ => return Err(LimitError::NotPowerOfTwo(matrix.rows(), matrix.cols())),
        };
        self.check_level(level)?;
        let mut level = level;
        let mut m = matrix.clone();
        while level > 0 {
            let h = m.rows() / 2;
            let top = m.block(0, h, 0, h);
            let doubled = top.direct_sum(&top)?;
            if doubled != m {
                break;
            }
            m = top;
            level -= 1;
        }
        Ok(LimitElement { level, matrix: m })
    }

    /// The matrix of `e` at level `target`: `diag(A, ..., A)`.
    pub fn lift(&self, e: &LimitElement, target: u32) -> Result<ExactMatrix, LimitError> {
        if target < e.level {
            return Err(LimitError::LiftBelow {
                from: e.level,
                to: target,
            });
        }
        self.check_level(target)?;
        let mut m = e.matrix.clone();
        for _ in e.level..target {
            m = m.direct_sum(&m)?;
        }
        Ok(m)
    }

    pub fn add(&self, a: &LimitElement, b: &LimitElement) -> Result<LimitElement, LimitError> {
        let level = a.level.max(b.level);
        let sum = self.lift(a, level)?.add(&self.lift(b, level)?)?;
        self.canonicalize(&sum)
    }

    pub fn mul(&self, a: &LimitElement, b: &LimitElement) -> Result<LimitElement, LimitError> {
        let level = a.level.max(b.level);
        let prod = self.lift(a, level)?.mul(&self.lift(b, level)?)?;
        self.canonicalize(&prod)
    }

    /// The center of `R` is `GF(2) * 1`, i.e. the level-0 elements.
    pub fn is_central(&self, e: &LimitElement) -> bool {
        e.level == 0
    }

    /// Each embedding preserves and reflects invertibility, so the stored
    /// level decides.
    pub fn is_unit(&self, e: &LimitElement) -> bool {
        e.matrix.rank().is_ok_and(|r| r == e.matrix.rows())
    }

    pub fn is_nilpotent(&self, e: &LimitElement) -> bool {
        is_nilpotent(&e.matrix).is_some()
    }

    /// Writes `e` as a sum of two nilpotents. Zero splits as `0 + 0`; any
    /// other non-identity element is lifted one level and split there.
    pub fn two_nilgood_decompose(
        &self,
        e: &LimitElement,
    ) -> Result<LimitDecomposition, LimitError> {
        if e.is_one() {
            return Err(LimitError::CentralUnit);
        }
        if e.is_zero() {
            return Ok(LimitDecomposition {
                first: self.zero(),
                second: self.zero(),
                working_level: 0,
                first_index: 1,
                second_index: 1,
            });
        }
        let working_level = e.level + 1;
        let lifted = self.lift(e, working_level)?;
        let witness = decompose_trace_zero(&lifted)?;
        let first = self.canonicalize(&witness.first)?;
        let second = self.canonicalize(&witness.second)?;
        let first_index = is_nilpotent(&first.matrix)
            .ok_or_else(|| NilSumError::InvalidWitness("first part is not nilpotent".into()))?
            .index;
        let second_index = is_nilpotent(&second.matrix)
            .ok_or_else(|| NilSumError::InvalidWitness("second part is not nilpotent".into()))?
            .index;
        if self.add(&first, &second)? != *e {
            return Err(
                NilSumError::InvalidWitness("parts do not sum to the element".into()).into(),
            );
        }
        Ok(LimitDecomposition {
            first,
            second,
            working_level,
            first_index,
            second_index,
        })
    }

    /// Text form: a `level n` line followed by the matrix format.
    pub fn format_element(&self, e: &LimitElement) -> String {
        format!("level {}\n{}", e.level, text::format_matrix(&e.matrix))
    }

    /// Parses a matrix file with an optional leading `level n` line and
    /// returns the canonical element. The header, when present, must match
    /// the matrix size.
    pub fn parse_element(&self, input: &str) -> Result<LimitElement, LimitError> {
        let mut lines = text::content_lines(input).peekable();
        let mut header = None;
        if let Some(first) = lines.peek() {
            if let Some(rest) = first.strip_prefix("level") {
                let n = rest
                    .trim()
                    .parse::<u32>()
                    .map_err(|_| AlgebraError::Parse(format!("bad level line `{first}`")))?;
                header = Some(n);
                lines.next();
            }
        }
        let m = text::parse_matrix_lines(&mut lines)?;
        let actual = level_of(m.rows()).ok_or(LimitError::NotPowerOfTwo(m.rows(), m.cols()))?;
        if let Some(h) = header {
            if h != actual {
                return Err(LimitError::LevelMismatch { header: h, actual });
            }
        }
        self.canonicalize(&m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> LimitRing {
        LimitRing::default()
    }

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_ints(ring().domain(), rows)
    }

    #[test]
    fn canonicalize_examples() {
        let r = ring();
        assert!(r.canonicalize(&m(&[&[1, 0], &[0, 1]])).unwrap().is_one());
        let e12 = m(&[&[0, 1], &[0, 0]]);
        let doubled = e12.direct_sum(&e12).unwrap();
        let c = r.canonicalize(&doubled).unwrap();
        assert_eq!(c.level(), 1);
        assert_eq!(c.matrix(), &e12);
        let e11 = m(&[&[1, 0], &[0, 0]]);
        assert_eq!(r.canonicalize(&e11).unwrap().level(), 1);
        assert!(matches!(
            r.canonicalize(&ExactMatrix::zero(r.domain(), 3, 3)),
            Err(LimitError::NotPowerOfTwo(3, 3))
        ));
    }

    #[test]
    fn lift_examples() {
        let r = ring();
        assert_eq!(r.lift(&r.one(), 1).unwrap(), m(&[&[1, 0], &[0, 1]]));
        let e12 = r.canonicalize(&m(&[&[0, 1], &[0, 0]])).unwrap();
        let lifted = r.lift(&e12, 2).unwrap();
        assert_eq!(r.canonicalize(&lifted).unwrap(), e12);
        assert!(matches!(r.lift(&e12, 0), Err(LimitError::LiftBelow { .. })));
        assert!(matches!(r.lift(&e12, 7), Err(LimitError::LevelCap { .. })));
    }

    #[test]
    fn ring_operations() {
        let r = ring();
        assert!(r.add(&r.one(), &r.one()).unwrap().is_zero());
        let e12 = r.canonicalize(&m(&[&[0, 1], &[0, 0]])).unwrap();
        let e21 = r.canonicalize(&m(&[&[0, 0], &[1, 0]])).unwrap();
        let e11 = r.canonicalize(&m(&[&[1, 0], &[0, 0]])).unwrap();
        assert_eq!(r.mul(&e12, &e21).unwrap(), e11);
        assert_eq!(r.mul(&e11, &r.one()).unwrap(), e11);
        // E_11 + E_22 = 1 across the embedding.
        let e22 = r.canonicalize(&m(&[&[0, 0], &[0, 1]])).unwrap();
        assert!(r.add(&e11, &e22).unwrap().is_one());
    }

    #[test]
    fn central_and_unit_predicates() {
        let r = ring();
        assert!(r.is_central(&r.one()) && r.is_unit(&r.one()));
        let e11 = r.canonicalize(&m(&[&[1, 0], &[0, 0]])).unwrap();
        assert!(!r.is_central(&e11) && !r.is_unit(&e11));
        let swap = r.canonicalize(&m(&[&[0, 1], &[1, 0]])).unwrap();
        assert!(!r.is_central(&swap) && r.is_unit(&swap));
    }

    #[test]
    fn decomposition_examples() {
        let r = ring();
        let z = r.two_nilgood_decompose(&r.zero()).unwrap();
        assert!(z.first.is_zero() && z.second.is_zero());
        assert_eq!(
            r.two_nilgood_decompose(&r.one()),
            Err(LimitError::CentralUnit)
        );
        let e11 = r.canonicalize(&m(&[&[1, 0], &[0, 0]])).unwrap();
        let d = r.two_nilgood_decompose(&e11).unwrap();
        assert_eq!(d.working_level, 2);
        assert!(r.is_nilpotent(&d.first) && r.is_nilpotent(&d.second));
        assert_eq!(r.add(&d.first, &d.second).unwrap(), e11);
    }

    #[test]
    fn element_text_format() {
        let r = ring();
        let e11 = r.canonicalize(&m(&[&[1, 0], &[0, 0]])).unwrap();
        let text = r.format_element(&e11);
        assert!(text.starts_with("level 1\ngf 2\n2 2\n"));
        assert_eq!(r.parse_element(&text).unwrap(), e11);
        assert!(matches!(
            r.parse_element("level 2\ngf 2\n2 2\n1 0\n0 0\n"),
            Err(LimitError::LevelMismatch {
                header: 2,
                actual: 1
            })
        ));
        assert!(matches!(
            r.parse_element("gf 3\n1 1\n1\n"),
            Err(LimitError::WrongDomain(_))
        ));
    }
}
