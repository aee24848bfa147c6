//! Sums of two nilpotent matrices over a field.
//!
//! A non-scalar trace-zero matrix over a field is similar to one with zero
//! diagonal; splitting that into its strictly lower and strictly upper
//! parts and conjugating back gives two nilpotents. Over a commutative
//! ring the trace of a nilpotent matrix is nilpotent, which rules out the
//! matrices whose trace is not.

use thiserror::Error;

use crate::error::AlgebraError;
use crate::matrix::ExactMatrix;
use crate::nilpotency::{is_nilpotent, NilpotencyCertificate};
use crate::scalar::{Scalar, ScalarDomain, Value};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NilSumError {
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("matrix is scalar")]
    ScalarMatrix,
    #[error("trace is {0}, expected 0")]
    NonzeroTrace(String),
    #[error("{0} is not a field")]
    NotField(String),
    #[error("{0} is not commutative; the trace argument does not apply")]
    Noncommutative(String),
    #[error("witness rejected: {0}")]
    InvalidWitness(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `first + second = target` with both summands nilpotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilSumWitness {
    pub first: ExactMatrix,
    pub second: ExactMatrix,
    pub first_cert: NilpotencyCertificate,
    pub second_cert: NilpotencyCertificate,
}

impl NilSumWitness {
    /// Checks the sum and computes both nilpotency certificates.
    pub fn certify(
        target: &ExactMatrix,
        first: ExactMatrix,
        second: ExactMatrix,
    ) -> Result<Self, NilSumError> {
        if first.add(&second)? != *target {
            return Err(NilSumError::InvalidWitness(
                "summands do not add up to the target".into(),
            ));
        }
        let first_cert = is_nilpotent(&first)
            .ok_or_else(|| NilSumError::InvalidWitness("first summand is not nilpotent".into()))?;
        let second_cert = is_nilpotent(&second)
            .ok_or_else(|| NilSumError::InvalidWitness("second summand is not nilpotent".into()))?;
        Ok(Self {
            first,
            second,
            first_cert,
            second_cert,
        })
    }

    /// Recomputes everything from scratch.
    pub fn verify(&self, target: &ExactMatrix) -> bool {
        self.first.add(&self.second).is_ok_and(|s| s == *target)
            && self.first_cert.check(&self.first)
            && self.second_cert.check(&self.second)
    }
}

/// `zero_diagonal = conjugator^{-1} * A * conjugator` with zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroDiagonalSimilarity {
    pub conjugator: ExactMatrix,
    pub conjugator_inverse: ExactMatrix,
    pub zero_diagonal: ExactMatrix,
}

impl ZeroDiagonalSimilarity {
    pub fn verify(&self, a: &ExactMatrix) -> bool {
        let n = a.rows();
        let id = ExactMatrix::identity(a.domain(), n);
        let b = &self.zero_diagonal;
        self.conjugator_inverse
            .mul(&self.conjugator)
            .is_ok_and(|m| m == id)
            && self
                .conjugator
                .mul(&self.conjugator_inverse)
                .is_ok_and(|m| m == id)
            && self
                .conjugator_inverse
                .mul(a)
                .and_then(|m| m.mul(&self.conjugator))
                .is_ok_and(|m| m == *b)
            && (0..n).all(|i| b.is_zero_entry(i, i))
    }
}

fn check_trace_zero_input(a: &ExactMatrix) -> Result<(), NilSumError> {
    if !a.is_square() {
        return Err(NilSumError::NotSquare(a.rows(), a.cols()));
    }
    if !a.domain().is_field() {
        return Err(NilSumError::NotField(a.domain().to_string()));
    }
    if a.is_scalar() {
        return Err(NilSumError::ScalarMatrix);
    }
    let t = a.trace()?;
    if !t.is_zero() {
        return Err(NilSumError::NonzeroTrace(t.to_string()));
    }
    Ok(())
}

/// Working state: `b = pinv * A * p` throughout.
struct Similarity {
    domain: ScalarDomain,
    b: ExactMatrix,
    p: ExactMatrix,
    pinv: ExactMatrix,
}

impl Similarity {
    /// Conjugate by the transposition of basis vectors `i` and `j`.
    fn swap(&mut self, i: usize, j: usize) {
        self.b.swap_rows(i, j);
        self.b.swap_cols(i, j);
        self.p.swap_cols(i, j);
        self.pinv.swap_rows(i, j);
    }

    /// Conjugate by `S = I + x E_{rc}`: column `c` gains `x` times column
    /// `r`, then row `r` loses `x` times row `c`.
    fn transvect(&mut self, r: usize, c: usize, x: &Value) {
        let neg = self.domain.neg(x);
        self.b.add_col_multiple(c, r, x);
        self.b.add_row_multiple(r, c, &neg);
        self.p.add_col_multiple(c, r, x);
        self.pinv.add_row_multiple(r, c, &neg);
    }

    /// Conjugate by scaling basis vector `i` by `x`.
    fn scale(&mut self, i: usize, x: &Value) {
        let inv = self.domain.inverse(x).expect("nonzero scale");
        self.b.scale_col_right(i, x);
        self.b.scale_row_left(i, &inv);
        self.p.scale_col_right(i, x);
        self.pinv.scale_row_left(i, &inv);
    }

    fn diagonal_zero_from(&self, s: usize) -> bool {
        (s..self.b.rows()).all(|t| self.b.is_zero_entry(t, t))
    }

    fn trailing_is_nonzero_scalar(&self, s: usize) -> bool {
        let n = self.b.rows();
        n - s >= 2 && !self.b.is_zero_entry(s, s) && self.b.block(s, n, s, n).is_scalar()
    }

    /// Makes `b[s][s] = 0` and column `s` below the diagonal equal to
    /// `e_{s+1}`, acting only on indices `>= s`. The trailing block from
    /// `s` must be non-scalar.
    fn clear_pivot(&mut self, s: usize) {
        let n = self.b.rows();
        let d = self.domain.clone();
        // v: first basis vector of the trailing block not mapped into its own span.
        let moving = (s..n).find(|&i| (s..n).any(|r| r != i && !self.b.is_zero_entry(r, i)));
        match moving {
            Some(i) => self.swap(s, i),
            None => {
                // Trailing block is diagonal and non-scalar: use e_s + e_j.
                let j = (s + 1..n)
                    .find(|&j| self.b.at(j, j) != self.b.at(s, s))
                    .expect("trailing block is non-scalar");
                self.transvect(j, s, &d.one_value());
            }
        }
        // Column s now has a nonzero entry below the diagonal; that image
        // becomes basis vector s + 1.
        let r = (s + 1..n)
            .find(|&r| !self.b.is_zero_entry(r, s))
            .expect("column has an off-diagonal entry");
        self.swap(s + 1, r);
        let c = self.b.at(s + 1, s).clone();
        self.scale(s + 1, &c);
        for r in (s..n).filter(|&r| r != s + 1) {
            let x = self.b.at(r, s).clone();
            if !d.is_zero(&x) {
                self.transvect(r, s + 1, &x);
            }
        }
    }
}

/// Finds `P` with `P^{-1} A P` having zero diagonal, for a non-scalar
/// trace-zero `A` over a field.
///
/// Proceeds index by index: at step `s` the trailing block is non-scalar,
/// a basis vector `v` with `Av` outside `span(v)` is moved to position `s`
/// (scanning `e_s, e_{s+1}, ...`, or `e_s + e_j` if the block is
/// diagonal), and `Av` becomes the next basis vector, which zeroes the
/// diagonal entry. The remaining block keeps trace zero; if it is a
/// nonzero scalar it is made non-scalar by one more transvection.
pub fn zero_diagonal_similarity(a: &ExactMatrix) -> Result<ZeroDiagonalSimilarity, NilSumError> {
    check_trace_zero_input(a)?;
    let n = a.rows();
    let d = a.domain().clone();
    let mut sim = Similarity {
        domain: d.clone(),
        b: a.clone(),
        p: ExactMatrix::identity(&d, n),
        pinv: ExactMatrix::identity(&d, n),
    };
    for s in 0..n {
        if sim.diagonal_zero_from(s) {
            break;
        }
        sim.clear_pivot(s);
        if sim.trailing_is_nonzero_scalar(s + 1) {
            // Column s is e_{s+1} below the diagonal, so this keeps
            // b[s][s] = 0 and puts a 1 at (s+1, s+2).
            sim.transvect(s, s + 2, &d.one_value());
        }
    }
    let out = ZeroDiagonalSimilarity {
        conjugator: sim.p,
        conjugator_inverse: sim.pinv,
        zero_diagonal: sim.b,
    };
    if !out.verify(a) {
        return Err(NilSumError::InvalidWitness(
            "zero-diagonal similarity failed to verify".into(),
        ));
    }
    Ok(out)
}

/// Splits a non-scalar trace-zero matrix over a field into two nilpotents
/// `P L P^{-1}` and `P U P^{-1}`, where `L` and `U` are the strictly lower
/// and strictly upper parts of the zero-diagonal conjugate.
pub fn decompose_trace_zero(a: &ExactMatrix) -> Result<NilSumWitness, NilSumError> {
    let sim = zero_diagonal_similarity(a)?;
    let n = a.rows();
    let d = a.domain();
    let b = &sim.zero_diagonal;
    let mut lower = ExactMatrix::zero(d, n, n);
    let mut upper = ExactMatrix::zero(d, n, n);
    for i in 0..n {
        for j in 0..n {
            if i > j {
                *lower.at_mut(i, j) = b.at(i, j).clone();
            } else if i < j {
                *upper.at_mut(i, j) = b.at(i, j).clone();
            }
        }
    }
    let conj = |m: &ExactMatrix| {
        sim.conjugator
            .mul(m)
            .and_then(|x| x.mul(&sim.conjugator_inverse))
    };
    NilSumWitness::certify(a, conj(&lower)?, conj(&upper)?)
}

/// Outcome of the trace test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceVerdict {
    /// The trace is not nilpotent, so `A` is not a sum of two nilpotents.
    Obstructed {
        trace: Scalar,
    },
    Inconclusive {
        trace: Scalar,
    },
}

impl TraceVerdict {
    pub fn is_obstructed(&self) -> bool {
        matches!(self, Self::Obstructed { .. })
    }
}

/// Over a commutative ring, `tr(N)` is nilpotent for nilpotent `N`, so a
/// matrix whose trace is not nilpotent is never a sum of two nilpotents.
pub fn trace_obstruction(a: &ExactMatrix) -> Result<TraceVerdict, NilSumError> {
    if !a.domain().is_commutative() {
        return Err(NilSumError::Noncommutative(a.domain().to_string()));
    }
    if !a.is_square() {
        return Err(NilSumError::NotSquare(a.rows(), a.cols()));
    }
    let trace = a.trace()?;
    Ok(if trace.is_nilpotent() {
        TraceVerdict::Inconclusive { trace }
    } else {
        TraceVerdict::Obstructed { trace }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> ScalarDomain {
        ScalarDomain::galois(p, 1).unwrap()
    }

    #[test]
    fn swap_matrix_is_already_zero_diagonal() {
        let d = gf(2);
        let a = ExactMatrix::from_ints(&d, &[&[0, 1], &[1, 0]]);
        let sim = zero_diagonal_similarity(&a).unwrap();
        assert_eq!(sim.conjugator, ExactMatrix::identity(&d, 2));
        assert_eq!(sim.zero_diagonal, a);
        let w = decompose_trace_zero(&a).unwrap();
        assert_eq!(w.first, ExactMatrix::unit(&d, 2, 1, 0));
        assert_eq!(w.second, ExactMatrix::unit(&d, 2, 0, 1));
    }

    #[test]
    fn jordan_block_over_gf2() {
        let d = gf(2);
        let a = ExactMatrix::from_ints(&d, &[&[1, 1], &[0, 1]]);
        let sim = zero_diagonal_similarity(&a).unwrap();
        assert_eq!(
            sim.conjugator,
            ExactMatrix::from_ints(&d, &[&[0, 1], &[1, 1]])
        );
        assert_eq!(
            sim.zero_diagonal,
            ExactMatrix::from_ints(&d, &[&[0, 1], &[1, 0]])
        );
        let w = decompose_trace_zero(&a).unwrap();
        assert_eq!(w.first, ExactMatrix::from_ints(&d, &[&[1, 1], &[1, 1]]));
        assert_eq!(w.second, ExactMatrix::from_ints(&d, &[&[0, 0], &[1, 0]]));
        assert!(w.verify(&a));
    }

    #[test]
    fn rejects_bad_inputs() {
        let d = gf(2);
        assert_eq!(
            decompose_trace_zero(&ExactMatrix::identity(&d, 2)),
            Err(NilSumError::ScalarMatrix)
        );
        assert!(matches!(
            decompose_trace_zero(&ExactMatrix::unit(&d, 2, 0, 0)),
            Err(NilSumError::NonzeroTrace(_))
        ));
        let q = ScalarDomain::Quaternion;
        assert!(matches!(
            decompose_trace_zero(&ExactMatrix::unit(&q, 2, 0, 1)),
            Err(NilSumError::NotField(_))
        ));
    }

    #[test]
    fn scalar_trailing_block_is_repaired() {
        // diag(0, 1, 1, 1) - ... over GF(3): trailing blocks hit c*I with 3 | size.
        let d = gf(3);
        let a = ExactMatrix::from_ints(
            &d,
            &[&[0, 1, 0, 0], &[1, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]],
        );
        assert!(a.trace().unwrap().is_zero());
        let sim = zero_diagonal_similarity(&a).unwrap();
        assert!(sim.verify(&a));
        assert!(decompose_trace_zero(&a).unwrap().verify(&a));
        // Diagonal non-scalar input exercises the e_s + e_j choice.
        let diag = ExactMatrix::from_ints(&d, &[&[1, 0, 0], &[0, 2, 0], &[0, 0, 0]]);
        assert!(decompose_trace_zero(&diag).unwrap().verify(&diag));
    }

    #[test]
    fn trace_obstruction_examples() {
        let d2 = gf(2);
        assert!(trace_obstruction(&ExactMatrix::unit(&d2, 2, 0, 0))
            .unwrap()
            .is_obstructed());
        let d3 = gf(3);
        assert!(
            !trace_obstruction(&ExactMatrix::from_ints(&d3, &[&[0, 1], &[1, 0]]))
                .unwrap()
                .is_obstructed()
        );
        let z4 = ScalarDomain::integers_mod(4).unwrap();
        // trace 2 is nilpotent in Z/4
        assert!(
            !trace_obstruction(&ExactMatrix::from_ints(&z4, &[&[1, 0], &[0, 1]]))
                .unwrap()
                .is_obstructed()
        );
        assert!(matches!(
            trace_obstruction(&ExactMatrix::identity(&ScalarDomain::Quaternion, 2)),
            Err(NilSumError::Noncommutative(_))
        ));
    }
}
