//! Small finite rings given by full addition and multiplication tables.
//!
//! Elements are indices `0..size`. Constructed rings are checked against
//! the ring axioms: exhaustively up to [`EXHAUSTIVE_AXIOM_LIMIT`]
//! elements, by random sampling above it.

mod analysis;
mod checks;
mod corpus;
mod property;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::scalar::GaloisField;

pub use analysis::{analyze, RingAnalysis};
pub use checks::{
    check_structure_theorem, enumerate_ideals, nil_sum_consequences, search_noncommutative_type,
    CheckItem, CheckStatus, Checklist, NoncommutativeSearch, StructureVerdict,
    IDEAL_ENUMERATION_LIMIT,
};
pub use corpus::{parse_corpus, parse_ring_spec, report_ring, RingReport, DEFAULT_CORPUS};
pub use property::{
    has_2_nil_sum_property, has_type, minimal_types, Exponent, NilSumReport, SplitTable,
    TypeSignature,
};

/// Largest ring that will be materialized.
pub const MAX_RING_SIZE: usize = 1024;
/// Rings up to this size get an exhaustive axiom check.
pub const EXHAUSTIVE_AXIOM_LIMIT: usize = 256;
const SAMPLED_AXIOM_TRIALS: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("ring would have {0} elements, more than the limit {MAX_RING_SIZE}")]
    TooLarge(u128),
    #[error("{name}: ring axiom fails: {detail}")]
    Axiom { name: String, detail: String },
    #[error("invalid ring: {0}")]
    Invalid(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("exponents must be at least 1")]
    BadExponent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRing {
    name: String,
    size: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    zero: usize,
    one: usize,
    labels: Vec<String>,
}

impl FiniteRing {
    /// Builds a ring from tables and verifies the axioms. `seed` drives
    /// the sampled check for rings above the exhaustive limit.
    pub fn from_tables(
        name: impl Into<String>,
        add: Vec<u32>,
        mul: Vec<u32>,
        zero: usize,
        one: usize,
        labels: Vec<String>,
        seed: u64,
    ) -> Result<Self, RingError> {
        let name = name.into();
        let size = labels.len();
        if size == 0 || add.len() != size * size || mul.len() != size * size {
            return Err(RingError::Invalid(format!(
                "{name}: table sizes do not match"
            )));
        }
        if add.iter().chain(&mul).any(|&x| x as usize >= size) || zero >= size || one >= size {
            return Err(RingError::Invalid(format!(
                "{name}: table entry out of range"
            )));
        }
        let neg = (0..size)
            .map(|a| {
                (0..size)
                    .find(|&b| add[a * size + b] as usize == zero)
                    .map(|b| b as u32)
                    .ok_or_else(|| RingError::Axiom {
                        name: name.clone(),
                        detail: format!("{} has no additive inverse", labels[a]),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let ring = Self {
            name,
            size,
            add,
            mul,
            neg,
            zero,
            one,
            labels,
        };
        ring.verify_axioms(seed)?;
        Ok(ring)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| (a + 1..self.size).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Image of an integer under `Z -> R`.
    pub fn from_int(&self, n: i64) -> usize {
        let base = if n < 0 { self.neg(self.one) } else { self.one };
        (0..n.unsigned_abs()).fold(self.zero, |acc, _| self.add(acc, base))
    }

    /// Re-checks the ring axioms; `seed` drives the sampled check above
    /// [`EXHAUSTIVE_AXIOM_LIMIT`] elements.
    pub fn verify_axioms(&self, seed: u64) -> Result<(), RingError> {
        let fail = |detail: String| {
            Err(RingError::Axiom {
                name: self.name.clone(),
                detail,
            })
        };
        for a in self.elements() {
            if self.add(a, self.zero) != a || self.add(self.zero, a) != a {
                return fail(format!("{} + 0 != {}", self.label(a), self.label(a)));
            }
            if self.mul(a, self.one) != a || self.mul(self.one, a) != a {
                return fail(format!("{} * 1 != {}", self.label(a), self.label(a)));
            }
            for b in self.elements() {
                if self.add(a, b) != self.add(b, a) {
                    return fail(format!("addition does not commute at ({a}, {b})"));
                }
            }
        }
        let triple = |a: usize, b: usize, c: usize| -> Result<(), RingError> {
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                return fail(format!("addition not associative at ({a}, {b}, {c})"));
            }
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return fail(format!("multiplication not associative at ({a}, {b}, {c})"));
            }
            if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                return fail(format!("left distributivity fails at ({a}, {b}, {c})"));
            }
            if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
                return fail(format!("right distributivity fails at ({a}, {b}, {c})"));
            }
            Ok(())
        };
        if self.size <= EXHAUSTIVE_AXIOM_LIMIT {
            for a in self.elements() {
                for b in self.elements() {
                    for c in self.elements() {
                        triple(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = StdRng::seed_from_u64(seed);
            for _ in 0..SAMPLED_AXIOM_TRIALS {
                let (a, b, c) = (
                    rng.gen_range(0..self.size),
                    rng.gen_range(0..self.size),
                    rng.gen_range(0..self.size),
                );
                triple(a, b, c)?;
            }
        }
        Ok(())
    }

    pub fn zmod(m: usize) -> Result<Self, RingError> {
        if m < 2 {
            return Err(RingError::Invalid(format!(
                "zmod {m}: modulus must be at least 2"
            )));
        }
        check_size(m as u128)?;
        let table = |f: fn(usize, usize) -> usize| {
            (0..m * m)
                .map(|i| (f(i / m, i % m) % m) as u32)
                .collect::<Vec<_>>()
        };
        let add = table(|a, b| a + b);
        let mul = table(|a, b| a * b);
        let labels = (0..m).map(|i| i.to_string()).collect();
        Self::from_tables(format!("Z/{m}"), add, mul, 0, 1 % m, labels, 0)
    }

    pub fn galois(p: u32, k: u32) -> Result<Self, RingError> {
        let f = GaloisField::new(p, k, None).map_err(|e| RingError::Invalid(e.to_string()))?;
        let q = f.order() as usize;
        let mut add = Vec::with_capacity(q * q);
        let mut mul = Vec::with_capacity(q * q);
        for a in 0..q as u32 {
            for b in 0..q as u32 {
                add.push(f.add(a, b));
                mul.push(f.mul(a, b));
            }
        }
        let labels = (0..q as u32).map(|c| f.format_poly(c)).collect();
        let name = if k == 1 {
            format!("GF({p})")
        } else {
            format!("GF({q})")
        };
        Self::from_tables(name, add, mul, 0, 1, labels, 0)
    }

    /// Full matrix ring `M_n(base)`. Entries are encoded little-endian in
    /// row-major order, so index 1 is `E_11`.
    pub fn matrix(n: usize, base: &FiniteRing) -> Result<Self, RingError> {
        let positions: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        Self::matrix_like(n, base, positions, format!("M_{n}({})", base.name))
    }

    /// Upper triangular matrices `T_n(base)`.
    pub fn upper_triangular(n: usize, base: &FiniteRing) -> Result<Self, RingError> {
        let positions: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        Self::matrix_like(n, base, positions, format!("T_{n}({})", base.name))
    }

    fn matrix_like(
        n: usize,
        base: &FiniteRing,
        positions: Vec<(usize, usize)>,
        name: String,
    ) -> Result<Self, RingError> {
        if n == 0 {
            return Err(RingError::Invalid("matrix size must be at least 1".into()));
        }
        let b = base.size;
        let size = check_size(
            (b as u128)
                .checked_pow(positions.len() as u32)
                .unwrap_or(u128::MAX),
        )?;
        let decode = |mut x: usize| {
            let mut m = vec![base.zero; n * n];
            for &(i, j) in &positions {
                m[i * n + j] = x % b;
                x /= b;
            }
            m
        };
        let encode = |m: &[usize]| {
            positions
                .iter()
                .rev()
                .fold(0usize, |acc, &(i, j)| acc * b + m[i * n + j])
        };
        let mats: Vec<Vec<usize>> = (0..size).map(decode).collect();
        let mut add = Vec::with_capacity(size * size);
        let mut mul = Vec::with_capacity(size * size);
        for x in &mats {
            for y in &mats {
                let s: Vec<usize> = x.iter().zip(y).map(|(&a, &c)| base.add(a, c)).collect();
                add.push(encode(&s) as u32);
                let mut p = vec![base.zero; n * n];
                for i in 0..n {
                    for j in 0..n {
                        p[i * n + j] = (0..n).fold(base.zero, |acc, t| {
                            base.add(acc, base.mul(x[i * n + t], y[t * n + j]))
                        });
                    }
                }
                mul.push(encode(&p) as u32);
            }
        }
        let mut identity = vec![base.zero; n * n];
        for i in 0..n {
            identity[i * n + i] = base.one;
        }
        let labels = mats
            .iter()
            .map(|m| {
                let rows: Vec<String> = (0..n)
                    .map(|i| {
                        let row: Vec<&str> = (0..n).map(|j| base.label(m[i * n + j])).collect();
                        format!("[{}]", row.join(","))
                    })
                    .collect();
                format!("[{}]", rows.join(","))
            })
            .collect();
        let zero = encode(&vec![base.zero; n * n]);
        Self::from_tables(name, add, mul, zero, encode(&identity), labels, 0)
    }

    /// Direct product; `(a, b)` has index `a + |A| * b`.
    pub fn product(a: &FiniteRing, b: &FiniteRing) -> Result<Self, RingError> {
        let size = check_size(a.size as u128 * b.size as u128)?;
        let split = |x: usize| (x % a.size, x / a.size);
        let join = |x: usize, y: usize| (x + a.size * y) as u32;
        let mut add = Vec::with_capacity(size * size);
        let mut mul = Vec::with_capacity(size * size);
        for x in 0..size {
            let (x1, x2) = split(x);
            for y in 0..size {
                let (y1, y2) = split(y);
                add.push(join(a.add(x1, y1), b.add(x2, y2)));
                mul.push(join(a.mul(x1, y1), b.mul(x2, y2)));
            }
        }
        let labels = (0..size)
            .map(|x| {
                let (x1, x2) = split(x);
                format!("({},{})", a.label(x1), b.label(x2))
            })
            .collect();
        Self::from_tables(
            format!("{} x {}", a.name, b.name),
            add,
            mul,
            join(a.zero, b.zero) as usize,
            join(a.one, b.one) as usize,
            labels,
            0,
        )
    }

    /// `base[x] / (f)` for a monic `f` over a commutative `base`; the
    /// coefficients of `f` (low to high) are integers mapped into `base`.
    pub fn quotient_poly(base: &FiniteRing, coeffs: &[i64]) -> Result<Self, RingError> {
        if !base.is_commutative() {
            return Err(RingError::Invalid(format!(
                "{} is not commutative",
                base.name
            )));
        }
        let f: Vec<usize> = coeffs.iter().map(|&c| base.from_int(c)).collect();
        let deg = f.len().saturating_sub(1);
        if deg == 0 || f[deg] != base.one {
            return Err(RingError::Invalid(
                "polynomial must be monic of degree >= 1".into(),
            ));
        }
        let b = base.size;
        let size = check_size((b as u128).checked_pow(deg as u32).unwrap_or(u128::MAX))?;
        let decode = |mut x: usize| {
            (0..deg)
                .map(|_| {
                    let c = x % b;
                    x /= b;
                    c
                })
                .collect::<Vec<_>>()
        };
        let encode = |v: &[usize]| v.iter().rev().fold(0usize, |acc, &c| acc * b + c);
        let polys: Vec<Vec<usize>> = (0..size).map(decode).collect();
        let mut add = Vec::with_capacity(size * size);
        let mut mul = Vec::with_capacity(size * size);
        for x in &polys {
            for y in &polys {
                let s: Vec<usize> = x.iter().zip(y).map(|(&a, &c)| base.add(a, c)).collect();
                add.push(encode(&s) as u32);
                let mut prod = vec![base.zero; 2 * deg - 1];
                for (i, &xi) in x.iter().enumerate() {
                    for (j, &yj) in y.iter().enumerate() {
                        prod[i + j] = base.add(prod[i + j], base.mul(xi, yj));
                    }
                }
                // x^d = -(f_0 + ... + f_{d-1} x^{d-1})
                for top in (deg..prod.len()).rev() {
                    let c = prod[top];
                    if c == base.zero {
                        continue;
                    }
                    prod[top] = base.zero;
                    for (i, &fi) in f[..deg].iter().enumerate() {
                        let t = top - deg + i;
                        prod[t] = base.sub(prod[t], base.mul(c, fi));
                    }
                }
                mul.push(encode(&prod[..deg]) as u32);
            }
        }
        let labels = polys.iter().map(|p| poly_label(base, p)).collect();
        let name = format!("{}[x]/({})", base.name, poly_label(base, &f));
        let mut one = vec![base.zero; deg];
        one[0] = base.one;
        Self::from_tables(
            name,
            add,
            mul,
            encode(&vec![base.zero; deg]),
            encode(&one),
            labels,
            0,
        )
    }
}

fn check_size(size: u128) -> Result<usize, RingError> {
    if size > MAX_RING_SIZE as u128 {
        Err(RingError::TooLarge(size))
    } else {
        Ok(size as usize)
    }
}

fn poly_label(base: &FiniteRing, coeffs: &[usize]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != base.zero)
        .map(|(i, &c)| {
            let coef = if c == base.one && i > 0 {
                String::new()
            } else {
                base.label(c).to_string()
            };
            match i {
                0 => coef,
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{i}"),
            }
        })
        .collect();
    if terms.is_empty() {
        base.label(base.zero).to_string()
    } else {
        terms.join("+")
    }
}
