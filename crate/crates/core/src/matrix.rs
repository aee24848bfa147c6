//! Dense matrices with exact entries over a [`ScalarDomain`].

use std::fmt;

use crate::error::AlgebraError;
use crate::scalar::{Scalar, ScalarDomain, Value};

/// Dense row-major matrix. Every entry belongs to `domain`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    domain: ScalarDomain,
    rows: usize,
    cols: usize,
    entries: Vec<Value>,
}

impl ExactMatrix {
    pub fn zero(domain: &ScalarDomain, rows: usize, cols: usize) -> Self {
        Self {
            domain: domain.clone(),
            rows,
            cols,
            entries: vec![domain.zero_value(); rows * cols],
        }
    }

    pub fn identity(domain: &ScalarDomain, n: usize) -> Self {
        let mut m = Self::zero(domain, n, n);
        for i in 0..n {
            m.entries[i * n + i] = domain.one_value();
        }
        m
    }

    /// The matrix unit `E_{ij}` (zero-based indices).
    pub fn unit(domain: &ScalarDomain, n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(domain, n, n);
        m.entries[i * n + j] = domain.one_value();
        m
    }

    /// Builds a matrix from a rectangular grid of scalars.
    pub fn from_rows(domain: &ScalarDomain, rows: Vec<Vec<Scalar>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(AlgebraError::DimensionMismatch("ragged rows".into()));
            }
            for s in row {
                if s.domain() != domain {
                    return Err(AlgebraError::DomainMismatch {
                        left: domain.to_string(),
                        right: s.domain().to_string(),
                    });
                }
                entries.push(s.into_value());
            }
        }
        Ok(Self {
            domain: domain.clone(),
            rows: r,
            cols: c,
            entries,
        })
    }

    /// Builds a matrix from integer entries mapped into `domain`.
    pub fn from_ints(domain: &ScalarDomain, rows: &[&[i64]]) -> Self {
        let grid = rows
            .iter()
            .map(|row| row.iter().map(|&x| domain.from_int(x)).collect())
            .collect();
        Self::from_rows(domain, grid).expect("integer grid is well formed")
    }

    pub fn from_fn(
        domain: &ScalarDomain,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let s = f(i, j);
                assert_eq!(s.domain(), domain, "entry ({i}, {j}) in wrong domain");
                entries.push(s.into_value());
            }
        }
        Self {
            domain: domain.clone(),
            rows,
            cols,
            entries,
        }
    }

    pub fn domain(&self) -> &ScalarDomain {
        &self.domain
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        Scalar::from_parts(self.domain.clone(), self.entries[i * self.cols + j].clone())
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) -> Result<(), AlgebraError> {
        if s.domain() != &self.domain {
            return Err(AlgebraError::DomainMismatch {
                left: self.domain.to_string(),
                right: s.domain().to_string(),
            });
        }
        self.entries[i * self.cols + j] = s.into_value();
        Ok(())
    }

    pub(crate) fn at(&self, i: usize, j: usize) -> &Value {
        &self.entries[i * self.cols + j]
    }

    pub(crate) fn at_mut(&mut self, i: usize, j: usize) -> &mut Value {
        &mut self.entries[i * self.cols + j]
    }

    pub fn is_zero_entry(&self, i: usize, j: usize) -> bool {
        self.domain.is_zero(self.at(i, j))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|v| self.domain.is_zero(v))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(&self.domain, self.rows)
    }

    /// Whether the matrix is `c * I` for some scalar `c` (zero included).
    pub fn is_scalar(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let n = self.rows;
        (0..n).all(|i| {
            (0..n).all(|j| {
                if i == j {
                    self.at(i, i) == self.at(0, 0)
                } else {
                    self.domain.is_zero(self.at(i, j))
                }
            })
        })
    }

    fn same_shape(&self, other: &Self, what: &str) -> Result<(), AlgebraError> {
        if self.domain != other.domain {
            return Err(AlgebraError::DomainMismatch {
                left: self.domain.to_string(),
                right: other.domain.to_string(),
            });
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_shape(other, "add")?;
        Ok(self.zip(other, |d, a, b| d.add(a, b)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_shape(other, "sub")?;
        Ok(self.zip(other, |d, a, b| d.sub(a, b)))
    }

    pub fn neg(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|v| self.domain.neg(v)).collect(),
            ..self.clone()
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&ScalarDomain, &Value, &Value) -> Value) -> Self {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| f(&self.domain, a, b))
            .collect();
        Self {
            domain: self.domain.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Product `self * other`; entries multiply in that order.
    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.domain != other.domain {
            return Err(AlgebraError::DomainMismatch {
                left: self.domain.to_string(),
                right: other.domain.to_string(),
            });
        }
        if self.cols != other.rows {
            return Err(AlgebraError::DimensionMismatch(format!(
                "mul: {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let d = &self.domain;
        let mut out = Self::zero(d, self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.at(i, t);
                if d.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(t, j);
                    if d.is_zero(b) {
                        continue;
                    }
                    let prod = d.mul(a, b);
                    let slot = out.at_mut(i, j);
                    *slot = d.add(slot, &prod);
                }
            }
        }
        Ok(out)
    }

    /// Left scalar multiplication `c * self`.
    pub fn scale_left(&self, c: &Scalar) -> Result<Self, AlgebraError> {
        if c.domain() != &self.domain {
            return Err(AlgebraError::DomainMismatch {
                left: self.domain.to_string(),
                right: c.domain().to_string(),
            });
        }
        Ok(Self {
            entries: self
                .entries
                .iter()
                .map(|v| self.domain.mul(c.value(), v))
                .collect(),
            ..self.clone()
        })
    }

    pub fn pow(&self, exp: u32) -> Result<Self, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::DimensionMismatch(
                "power of a non-square matrix".into(),
            ));
        }
        let mut acc = Self::identity(&self.domain, self.rows);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Result<Scalar, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::DimensionMismatch(
                "trace of a non-square matrix".into(),
            ));
        }
        let d = &self.domain;
        let t = (0..self.rows).fold(d.zero_value(), |acc, i| d.add(&acc, self.at(i, i)));
        Ok(Scalar::from_parts(d.clone(), t))
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(&self.domain, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    /// Rectangular sub-block `rows r0..r1`, `cols c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        let mut out = Self::zero(&self.domain, r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                *out.at_mut(i - r0, j - c0) = self.at(i, j).clone();
            }
        }
        out
    }

    /// Block-diagonal matrix `diag(self, other)`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.domain != other.domain {
            return Err(AlgebraError::DomainMismatch {
                left: self.domain.to_string(),
                right: other.domain.to_string(),
            });
        }
        let mut out = Self::zero(&self.domain, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(i, j) = self.at(i, j).clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                *out.at_mut(self.rows + i, self.cols + j) = other.at(i, j).clone();
            }
        }
        Ok(out)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[r] <- c * row[r]` (left multiplication).
    pub(crate) fn scale_row_left(&mut self, r: usize, c: &Value) {
        for j in 0..self.cols {
            let v = self.domain.mul(c, self.at(r, j));
            *self.at_mut(r, j) = v;
        }
    }

    /// `col[col] <- col[col] * c` (right multiplication).
    pub(crate) fn scale_col_right(&mut self, col: usize, c: &Value) {
        for i in 0..self.rows {
            let v = self.domain.mul(self.at(i, col), c);
            *self.at_mut(i, col) = v;
        }
    }

    /// `row[dst] <- row[dst] + c * row[src]`.
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, c: &Value) {
        if self.domain.is_zero(c) {
            return;
        }
        for j in 0..self.cols {
            let term = self.domain.mul(c, self.at(src, j));
            let v = self.domain.add(self.at(dst, j), &term);
            *self.at_mut(dst, j) = v;
        }
    }

    /// `col[dst] <- col[dst] + col[src] * c`.
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, c: &Value) {
        if self.domain.is_zero(c) {
            return;
        }
        for i in 0..self.rows {
            let term = self.domain.mul(self.at(i, src), c);
            let v = self.domain.add(self.at(i, dst), &term);
            *self.at_mut(i, dst) = v;
        }
    }

    /// Two-sided inverse by Gauss-Jordan elimination with row operations
    /// applied from the left. Pivots are the first nonzero entry in each
    /// column. The result is checked against the identity on both sides.
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::DimensionMismatch(
                "inverse of a non-square matrix".into(),
            ));
        }
        if !self.domain.is_division_ring() {
            return Err(AlgebraError::UnsupportedDomain(format!(
                "row reduction needs a division ring, got {}",
                self.domain
            )));
        }
        let n = self.rows;
        let d = self.domain.clone();
        let mut work = self.clone();
        let mut inv = Self::identity(&d, n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !d.is_zero(work.at(r, col)))
                .ok_or_else(|| AlgebraError::NotInvertible(format!("singular at column {col}")))?;
            work.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p_inv = d.inverse(work.at(col, col)).expect("pivot is nonzero");
            work.scale_row_left(col, &p_inv);
            inv.scale_row_left(col, &p_inv);
            for r in 0..n {
                if r != col && !d.is_zero(work.at(r, col)) {
                    let c = d.neg(work.at(r, col));
                    work.add_row_multiple(r, col, &c);
                    inv.add_row_multiple(r, col, &c);
                }
            }
        }
        let id = Self::identity(&d, n);
        if inv.mul(self)? != id || self.mul(&inv)? != id {
            return Err(AlgebraError::NotInvertible(
                "inverse failed verification".into(),
            ));
        }
        Ok(inv)
    }

    /// Rank over a field or division ring (row reduction from the left).
    pub fn rank(&self) -> Result<usize, AlgebraError> {
        if !self.domain.is_division_ring() {
            return Err(AlgebraError::UnsupportedDomain(format!(
                "rank needs a division ring, got {}",
                self.domain
            )));
        }
        let d = self.domain.clone();
        let mut work = self.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| !d.is_zero(work.at(r, col))) else {
                continue;
            };
            work.swap_rows(rank, pivot);
            let p_inv = d.inverse(work.at(rank, col)).expect("pivot is nonzero");
            work.scale_row_left(rank, &p_inv);
            for r in rank + 1..self.rows {
                if !d.is_zero(work.at(r, col)) {
                    let c = d.neg(work.at(r, col));
                    work.add_row_multiple(r, rank, &c);
                }
            }
            rank += 1;
        }
        Ok(rank)
    }

    /// Entry grid formatted with the domain's entry syntax.
    pub fn format_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.domain.format_value(self.at(i, j)))
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .format_rows()
            .into_iter()
            .map(|r| format!("[{}]", r.join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Result of [`normalize_column`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnNormalization {
    /// Invertible `m x m` product of elementary row operations.
    pub transform: ExactMatrix,
    /// `transform * w`, always the first standard basis column.
    pub image: ExactMatrix,
}

/// Finds an invertible `V` with `V w = e_1` for a nonzero column `w` over
/// a division ring. The pivot is the first nonzero entry of `w`; it is
/// swapped to the top, scaled from the left by its inverse, and the other
/// entries are cleared by left row additions.
pub fn normalize_column(w: &ExactMatrix) -> Result<ColumnNormalization, AlgebraError> {
    if w.cols() != 1 {
        return Err(AlgebraError::DimensionMismatch(format!(
            "expected a column vector, got {}x{}",
            w.rows(),
            w.cols()
        )));
    }
    let d = w.domain().clone();
    if !d.is_division_ring() {
        return Err(AlgebraError::UnsupportedDomain(format!(
            "normalization needs a division ring, got {d}"
        )));
    }
    let m = w.rows();
    let pivot = (0..m)
        .find(|&r| !w.is_zero_entry(r, 0))
        .ok_or(AlgebraError::NoPivot)?;
    let mut v = ExactMatrix::identity(&d, m);
    let mut image = w.clone();
    v.swap_rows(0, pivot);
    image.swap_rows(0, pivot);
    let p_inv = d.inverse(image.at(0, 0)).expect("pivot is nonzero");
    v.scale_row_left(0, &p_inv);
    image.scale_row_left(0, &p_inv);
    for r in 1..m {
        if !image.is_zero_entry(r, 0) {
            let c = d.neg(image.at(r, 0));
            v.add_row_multiple(r, 0, &c);
            image.add_row_multiple(r, 0, &c);
        }
    }
    debug_assert_eq!(v.mul(w).as_ref(), Ok(&image));
    Ok(ColumnNormalization {
        transform: v,
        image,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Quaternion;

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
    fn matrix_units_multiply() {
        let d = gf(2);
        let e12 = ExactMatrix::unit(&d, 2, 0, 1);
        let e21 = ExactMatrix::unit(&d, 2, 1, 0);
        assert_eq!(e12.mul(&e21).unwrap(), ExactMatrix::unit(&d, 2, 0, 0));
        let b = ExactMatrix::from_ints(&d, &[&[1, 1], &[0, 1]]);
        assert_eq!(ExactMatrix::identity(&d, 2).mul(&b).unwrap(), b);
    }

    #[test]
    fn quaternion_square_zero_matrix() {
        let (i, j) = (Quaternion::i(), Quaternion::j());
        let a = quat(&[&[i.clone(), j.clone()], &[j.neg(), i]]);
        assert!(a.mul(&a).unwrap().is_zero());
    }

    #[test]
    fn quaternion_lower_unitriangular_inverse() {
        let (o, z, k) = (Quaternion::one(), Quaternion::zero(), Quaternion::k());
        let u = quat(&[&[o.clone(), z.clone()], &[k.clone(), o.clone()]]);
        let expected = quat(&[&[o.clone(), z], &[k.neg(), o]]);
        assert_eq!(u.inverse().unwrap(), expected);
    }

    #[test]
    fn singular_and_identity_inverse() {
        let d = gf(2);
        assert!(matches!(
            ExactMatrix::unit(&d, 2, 0, 0).inverse(),
            Err(AlgebraError::NotInvertible(_))
        ));
        let id = ExactMatrix::identity(&d, 3);
        assert_eq!(id.inverse().unwrap(), id);
    }

    #[test]
    fn dimension_and_domain_mismatch() {
        let a = ExactMatrix::identity(&gf(2), 2);
        assert!(matches!(
            a.mul(&ExactMatrix::identity(&gf(2), 3)),
            Err(AlgebraError::DimensionMismatch(_))
        ));
        assert!(matches!(
            a.add(&ExactMatrix::identity(&gf(3), 2)),
            Err(AlgebraError::DomainMismatch { .. })
        ));
    }

    #[test]
    fn normalize_column_examples() {
        let d2 = gf(2);
        let n = normalize_column(&ExactMatrix::from_ints(&d2, &[&[1], &[0]])).unwrap();
        assert_eq!(n.transform, ExactMatrix::identity(&d2, 2));

        let d3 = gf(3);
        let n = normalize_column(&ExactMatrix::from_ints(&d3, &[&[2]])).unwrap();
        assert_eq!(n.transform, ExactMatrix::from_ints(&d3, &[&[2]]));
        assert_eq!(n.image, ExactMatrix::from_ints(&d3, &[&[1]]));

        let n = normalize_column(&quat(&[&[Quaternion::j()]])).unwrap();
        assert_eq!(n.transform, quat(&[&[Quaternion::j().neg()]]));

        assert_eq!(
            normalize_column(&ExactMatrix::zero(&d3, 2, 1)),
            Err(AlgebraError::NoPivot)
        );
    }

    #[test]
    fn rank_and_scalar_detection() {
        let d = gf(3);
        assert_eq!(
            ExactMatrix::from_ints(&d, &[&[1, 2], &[2, 1]])
                .rank()
                .unwrap(),
            1
        );
        assert!(ExactMatrix::from_ints(&d, &[&[2, 0], &[0, 2]]).is_scalar());
        assert!(!ExactMatrix::from_ints(&d, &[&[2, 0], &[0, 1]]).is_scalar());
        assert!(ExactMatrix::zero(&d, 3, 3).is_scalar());
    }
}
