//! Nilpotency over division rings: certificates, the power-entry identity
//! for unit-subdiagonal matrices, the Hessenberg-type reduction by a
//! conjugation `diag(1, V)`, and the decision for matrices with a single
//! nonzero row.

use thiserror::Error;

use crate::error::AlgebraError;
use crate::matrix::{normalize_column, ExactMatrix};
use crate::nilsum::NilSumWitness;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NilpotencyError {
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("{0}")]
    Precondition(String),
    #[error("the first subcolumn (x_21, ..., x_n1) is zero")]
    ZeroSubcolumn,
    #[error("shape violation: {0}")]
    Shape(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Proof that `A^index = 0` with `index` minimal.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct NilpotencyCertificate {
    pub index: usize,
    pub verified: bool,
}

impl NilpotencyCertificate {
    /// Recomputes `A^index = 0` and `A^(index-1) != 0`.
    pub fn check(&self, a: &ExactMatrix) -> bool {
        if self.index == 0 || !a.is_square() {
            return false;
        }
        let Ok(top) = a.pow(self.index as u32) else {
            return false;
        };
        if !top.is_zero() {
            return false;
        }
        self.index == 1 || a.pow(self.index as u32 - 1).is_ok_and(|m| !m.is_zero())
    }
}

/// Minimal `k` with `A^k = 0`, or `None` if `A` is not nilpotent.
///
/// Over a division ring a nilpotent `n x n` matrix already has `A^n = 0`,
/// so powers are searched up to `n` (up to `n * e` over `Z/m`, `e` the
/// largest prime exponent of `m`). The index is located by binary lifting
/// over repeated squares and then recomputed directly.
pub fn is_nilpotent(a: &ExactMatrix) -> Option<NilpotencyCertificate> {
    if !a.is_square() {
        return None;
    }
    let n = a.rows();
    if n == 0 {
        return Some(NilpotencyCertificate {
            index: 1,
            verified: true,
        });
    }
    let bound = a.domain().nilpotency_bound(n);
    let mut squares = vec![a.clone()];
    while (1usize << squares.len()) <= bound {
        let last = squares.last().unwrap();
        squares.push(last.mul(last).ok()?);
    }
    // Largest m with A^m != 0, built bit by bit.
    let mut cur = ExactMatrix::identity(a.domain(), n);
    let mut m = 0usize;
    for (j, sq) in squares.iter().enumerate().rev() {
        let next = cur.mul(sq).ok()?;
        if !next.is_zero() {
            cur = next;
            m += 1 << j;
        }
    }
    if m >= bound {
        return None;
    }
    let mut cert = NilpotencyCertificate {
        index: m + 1,
        verified: false,
    };
    cert.verified = cert.check(a);
    cert.verified.then_some(cert)
}

/// Whether `a` has ones on the subdiagonal and zeros below it.
pub fn has_unit_subdiagonal_shape(a: &ExactMatrix) -> bool {
    let n = a.rows();
    a.is_square()
        && (1..n).all(|i| a.get(i, i - 1).is_one())
        && (0..n).all(|i| (0..i.saturating_sub(1)).all(|j| a.is_zero_entry(i, j)))
}

/// Returns the `(k, 1)` entry of `A^k` and the sum `a_11 + ... + a_kk`
/// (one-based `k`) for a matrix with unit subdiagonal and zeros below it.
/// The two agree over any ring.
pub fn power_entry_identity(
    a: &ExactMatrix,
    k: usize,
) -> Result<(Scalar, Scalar), NilpotencyError> {
    if !a.is_square() {
        return Err(NilpotencyError::NotSquare(a.rows(), a.cols()));
    }
    let n = a.rows();
    if k == 0 || k > n {
        return Err(NilpotencyError::Precondition(format!(
            "exponent {k} outside 1..={n}"
        )));
    }
    if !has_unit_subdiagonal_shape(a) {
        return Err(NilpotencyError::Shape(
            "expected ones on the subdiagonal and zeros below it".into(),
        ));
    }
    let observed = a.pow(k as u32)?.get(k - 1, 0);
    let mut predicted = a.domain().zero();
    for i in 0..k {
        predicted = predicted.add(&a.get(i, i))?;
    }
    Ok((observed, predicted))
}

/// A conjugate `U X U^{-1}` whose leading `k x k` block has ones on the
/// subdiagonal and zeros below it, with zeros under that block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HessenbergReduction {
    /// `U = diag(1, V)`.
    pub transform: ExactMatrix,
    /// The `(n-1) x (n-1)` block `V`.
    pub block: ExactMatrix,
    /// Size `k` of the leading block, `1 < k <= n`.
    pub block_size: usize,
    /// `U X U^{-1}`.
    pub reduced: ExactMatrix,
}

impl HessenbergReduction {
    /// Re-checks every invariant against the original matrix.
    pub fn verify(&self, x: &ExactMatrix) -> Result<(), NilpotencyError> {
        let n = x.rows();
        let d = x.domain();
        let fail = |why: &str| Err(NilpotencyError::Verification(why.into()));
        let u = &self.transform;
        if u.rows() != n || self.block.rows() != n - 1 {
            return fail("transform has the wrong size");
        }
        if !u.get(0, 0).is_one()
            || (1..n).any(|i| !u.is_zero_entry(0, i) || !u.is_zero_entry(i, 0))
            || u.block(1, n, 1, n) != self.block
        {
            return fail("transform is not diag(1, V)");
        }
        let u_inv = u.inverse()?;
        if u.mul(x)?.mul(&u_inv)? != self.reduced {
            return fail("U X U^-1 does not recompute to the reduced matrix");
        }
        let k = self.block_size;
        if k < 2 || k > n {
            return fail("block size outside 2..=n");
        }
        let r = &self.reduced;
        if !has_unit_subdiagonal_shape(&r.block(0, k, 0, k)) {
            return fail("leading block lacks the unit-subdiagonal shape");
        }
        if (k..n).any(|i| (0..k).any(|j| !r.is_zero_entry(i, j))) {
            return fail("block below the leading block is nonzero");
        }
        debug_assert_eq!(u.domain(), d);
        Ok(())
    }
}

/// Conjugates `X` by `U = U_{k-1} ... U_1`, `U_l = diag(I_l, V_l)`, where
/// `V_l` normalizes the part of column `l` below row `l` to `e_1`. Stops
/// at the first zero subcolumn or when `k = n`.
pub fn hessenberg_reduce(x: &ExactMatrix) -> Result<HessenbergReduction, NilpotencyError> {
    if !x.is_square() {
        return Err(NilpotencyError::NotSquare(x.rows(), x.cols()));
    }
    let n = x.rows();
    let d = x.domain().clone();
    if n < 2 {
        return Err(NilpotencyError::Precondition("need n >= 2".into()));
    }
    if !d.is_division_ring() {
        return Err(NilpotencyError::Precondition(format!(
            "{d} is not a division ring"
        )));
    }
    if (1..n).all(|i| x.is_zero_entry(i, 0)) {
        return Err(NilpotencyError::ZeroSubcolumn);
    }

    let mut current = x.clone();
    let mut u = ExactMatrix::identity(&d, n);
    let mut k = n;
    for l in 1..n {
        let sub = current.block(l, n, l - 1, l);
        if sub.is_zero() {
            k = l;
            break;
        }
        let v = normalize_column(&sub)?.transform;
        let v_inv = v.inverse()?;
        let id = ExactMatrix::identity(&d, l);
        let step = id.direct_sum(&v)?;
        let step_inv = id.direct_sum(&v_inv)?;
        current = step.mul(&current)?.mul(&step_inv)?;
        u = step.mul(&u)?;
    }
    let reduction = HessenbergReduction {
        block: u.block(1, n, 1, n),
        transform: u,
        block_size: k,
        reduced: current,
    };
    reduction.verify(x)?;
    Ok(reduction)
}

/// Outcome of [`single_row_decide`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SingleRowDecision {
    /// `a_kk = 0`; then `A^2 = a_kk A = 0` and `(A, 0)` is a witness.
    Decomposable(NilSumWitness),
    /// `a_kk != 0`; no pair of nilpotents sums to `A`.
    Obstructed { row: usize, diagonal: Scalar },
}

impl SingleRowDecision {
    pub fn is_decomposable(&self) -> bool {
        matches!(self, Self::Decomposable(_))
    }
}

/// Decides whether a matrix over a division ring whose only possibly
/// nonzero row is `row` (zero-based) is a sum of two nilpotents: it is
/// exactly when its diagonal entry in that row vanishes.
pub fn single_row_decide(
    a: &ExactMatrix,
    row: usize,
) -> Result<SingleRowDecision, NilpotencyError> {
    if !a.is_square() {
        return Err(NilpotencyError::NotSquare(a.rows(), a.cols()));
    }
    let n = a.rows();
    if row >= n {
        return Err(NilpotencyError::Precondition(format!(
            "row {row} outside 0..{n}"
        )));
    }
    if !a.domain().is_division_ring() {
        return Err(NilpotencyError::Precondition(format!(
            "{} is not a division ring",
            a.domain()
        )));
    }
    if let Some(bad) = (0..n).find(|&i| i != row && (0..n).any(|j| !a.is_zero_entry(i, j))) {
        return Err(NilpotencyError::Shape(format!(
            "row {bad} is nonzero but only row {row} may be"
        )));
    }
    let diagonal = a.get(row, row);
    if !diagonal.is_zero() {
        return Ok(SingleRowDecision::Obstructed { row, diagonal });
    }
    let zero = ExactMatrix::zero(a.domain(), n, n);
    let witness = NilSumWitness::certify(a, a.clone(), zero)
        .map_err(|e| NilpotencyError::Verification(e.to_string()))?;
    Ok(SingleRowDecision::Decomposable(witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Quaternion, ScalarDomain};

    fn gf(p: u32) -> ScalarDomain {
        ScalarDomain::galois(p, 1).unwrap()
    }

    fn quat(rows: &[&[Quaternion]]) -> ExactMatrix {
        let d = ScalarDomain::Quaternion;
        let grid = rows
            .iter()
            .map(|r| r.iter().map(|q| d.quaternion(q.clone())).collect())
            .collect();
        ExactMatrix::from_rows(&d, grid).unwrap()
    }

    #[test]
    fn nilpotency_examples() {
        let d = gf(2);
        assert_eq!(
            is_nilpotent(&ExactMatrix::unit(&d, 2, 0, 1)).unwrap().index,
            2
        );
        let (i, j) = (Quaternion::i(), Quaternion::j());
        let a = quat(&[&[i.clone(), j.clone()], &[j.neg(), i]]);
        let cert = is_nilpotent(&a).unwrap();
        assert_eq!(cert.index, 2);
        assert!(cert.verified);
        assert!(is_nilpotent(&ExactMatrix::identity(&gf(3), 2)).is_none());
        assert_eq!(is_nilpotent(&ExactMatrix::zero(&d, 3, 3)).unwrap().index, 1);
    }

    #[test]
    fn jordan_block_index_equals_size() {
        let d = gf(5);
        for n in 1..=8 {
            let mut m = ExactMatrix::zero(&d, n, n);
            for i in 1..n {
                m.set(i, i - 1, d.one()).unwrap();
            }
            assert_eq!(is_nilpotent(&m).unwrap().index, n);
        }
    }

    #[test]
    fn zmod_nilpotent_beyond_dimension() {
        // 2 in Z/8 has index 3 as a 1x1 matrix.
        let d = ScalarDomain::integers_mod(8).unwrap();
        let m = ExactMatrix::from_ints(&d, &[&[2]]);
        assert_eq!(is_nilpotent(&m).unwrap().index, 3);
    }

    #[test]
    fn power_entry_examples() {
        let d = gf(3);
        let a = ExactMatrix::from_ints(&d, &[&[1, 2], &[1, 2]]);
        let (obs, pred) = power_entry_identity(&a, 2).unwrap();
        assert!(obs.is_zero());
        assert_eq!(obs, pred);
        let (obs, pred) = power_entry_identity(&a, 1).unwrap();
        assert_eq!(obs, d.from_int(1));
        assert_eq!(pred, d.from_int(1));
        let bad = ExactMatrix::from_ints(&d, &[&[1, 2], &[2, 2]]);
        assert!(matches!(
            power_entry_identity(&bad, 2),
            Err(NilpotencyError::Shape(_))
        ));
        assert!(power_entry_identity(&a, 3).is_err());
    }

    #[test]
    fn hessenberg_examples() {
        let d2 = gf(2);
        let x = ExactMatrix::from_ints(&d2, &[&[0, 0], &[1, 0]]);
        let r = hessenberg_reduce(&x).unwrap();
        assert_eq!(r.transform, ExactMatrix::identity(&d2, 2));
        assert_eq!(r.block_size, 2);
        assert_eq!(r.reduced, x);

        let d3 = gf(3);
        let x = ExactMatrix::from_ints(&d3, &[&[0, 0], &[2, 0]]);
        let r = hessenberg_reduce(&x).unwrap();
        assert_eq!(
            r.transform,
            ExactMatrix::from_ints(&d3, &[&[1, 0], &[0, 2]])
        );
        assert_eq!(r.reduced, ExactMatrix::from_ints(&d3, &[&[0, 0], &[1, 0]]));

        let (o, z, j) = (Quaternion::one(), Quaternion::zero(), Quaternion::j());
        let x = quat(&[&[z.clone(), z.clone()], &[j.clone(), z.clone()]]);
        let r = hessenberg_reduce(&x).unwrap();
        assert_eq!(
            r.transform,
            quat(&[&[o.clone(), z.clone()], &[z.clone(), j.neg()]])
        );
        assert_eq!(r.reduced, quat(&[&[z.clone(), z.clone()], &[o, z]]));
        assert_eq!(r.block_size, 2);
    }

    #[test]
    fn hessenberg_stops_at_zero_subcolumn() {
        let d = gf(3);
        // Column 1 below row 1 is zero after the first step.
        let x = ExactMatrix::from_ints(&d, &[&[1, 2, 0], &[1, 0, 0], &[0, 0, 2]]);
        let r = hessenberg_reduce(&x).unwrap();
        assert_eq!(r.block_size, 2);
        r.verify(&x).unwrap();
    }

    #[test]
    fn hessenberg_rejects_zero_first_subcolumn() {
        let d = gf(2);
        let x = ExactMatrix::from_ints(&d, &[&[1, 1], &[0, 1]]);
        assert_eq!(hessenberg_reduce(&x), Err(NilpotencyError::ZeroSubcolumn));
    }

    #[test]
    fn single_row_examples() {
        let d = gf(2);
        let e11 = ExactMatrix::unit(&d, 2, 0, 0);
        match single_row_decide(&e11, 0).unwrap() {
            SingleRowDecision::Obstructed { row, diagonal } => {
                assert_eq!(row, 0);
                assert!(diagonal.is_one());
            }
            other => panic!("unexpected {other:?}"),
        }
        let e12 = ExactMatrix::unit(&d, 2, 0, 1);
        match single_row_decide(&e12, 0).unwrap() {
            SingleRowDecision::Decomposable(w) => {
                assert_eq!(w.first, e12);
                assert!(w.second.is_zero());
            }
            other => panic!("unexpected {other:?}"),
        }
        let (i, j, z) = (Quaternion::i(), Quaternion::j(), Quaternion::zero());
        let a = quat(&[&[i, j], &[z.clone(), z]]);
        assert!(!single_row_decide(&a, 0).unwrap().is_decomposable());
        assert!(matches!(
            single_row_decide(&ExactMatrix::identity(&d, 2), 0),
            Err(NilpotencyError::Shape(_))
        ));
    }

    #[test]
    fn trace_is_not_a_similarity_invariant_over_quaternions() {
        let (o, z, i, j, k) = (
            Quaternion::one(),
            Quaternion::zero(),
            Quaternion::i(),
            Quaternion::j(),
            Quaternion::k(),
        );
        let a = quat(&[&[i.clone(), j.clone()], &[j.neg(), i.clone()]]);
        let u = quat(&[&[o.clone(), z.clone()], &[k, o]]);
        let conj = u.mul(&a).unwrap().mul(&u.inverse().unwrap()).unwrap();
        assert_eq!(conj, quat(&[&[z.clone(), j], &[z.clone(), z]]));
        assert_eq!(
            a.trace().unwrap().as_quaternion().unwrap(),
            &Quaternion::from_ints(0, 2, 0, 0)
        );
        assert!(conj.trace().unwrap().is_zero());
    }
}
