//! Prime and prime-power finite fields `GF(p^k)` with `p^k <= 1024`.
//!
//! Elements are packed as `u32` codes: coefficient `i` of the residue
//! polynomial is digit `i` of the code written in base `p`. So in
//! `GF(4) = GF(2)[x]/(x^2+x+1)` the code `2` is `x` and `3` is `x + 1`.

use std::fmt;

use crate::error::AlgebraError;

/// Largest field order supported.
pub const MAX_FIELD_ORDER: u32 = 1024;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaloisField {
    p: u32,
    k: u32,
    order: u32,
    /// Monic defining polynomial, low-to-high, length `k + 1`.
    modulus: Vec<u32>,
}

impl GaloisField {
    /// Builds `GF(p^k)`. With `modulus = None` the lexicographically least
    /// monic irreducible polynomial of degree `k` is used.
    pub fn new(p: u32, k: u32, modulus: Option<Vec<u32>>) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::InvalidField(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(AlgebraError::InvalidField(
                "degree must be at least 1".into(),
            ));
        }
        let order = (p as u64)
            .checked_pow(k)
            .filter(|&q| q <= MAX_FIELD_ORDER as u64)
            .ok_or_else(|| {
                AlgebraError::InvalidField(format!("{p}^{k} exceeds {MAX_FIELD_ORDER}"))
            })? as u32;
        let modulus = match modulus {
            Some(m) => {
                let m = trim(m);
                if m.len() != k as usize + 1 {
                    return Err(AlgebraError::InvalidField(format!(
                        "modulus must have degree {k}"
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(AlgebraError::InvalidField(format!(
                        "modulus coefficients must lie in [0, {p})"
                    )));
                }
                if m[k as usize] != 1 {
                    return Err(AlgebraError::InvalidField("modulus must be monic".into()));
                }
                if !is_irreducible(&m, p) {
                    return Err(AlgebraError::InvalidField(format!(
                        "modulus {} is reducible over GF({p})",
                        poly_string(&m)
                    )));
                }
                m
            }
            None => least_irreducible(p, k),
        };
        Ok(Self {
            p,
            k,
            order,
            modulus,
        })
    }

    pub fn prime(p: u32) -> Result<Self, AlgebraError> {
        Self::new(p, 1, None)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Reduces an arbitrary integer into the prime subfield.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    /// Validates a packed element code.
    pub fn element(&self, code: u32) -> Result<u32, AlgebraError> {
        if code < self.order {
            Ok(code)
        } else {
            Err(AlgebraError::Parse(format!(
                "{code} is not an element code of GF({})",
                self.order
            )))
        }
    }

    pub fn coefficients(&self, code: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.k as usize);
        let mut c = code;
        for _ in 0..self.k {
            out.push(c % self.p);
            c /= self.p;
        }
        out
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> u32 {
        coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| acc * self.p + c % self.p)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return (a + b) % self.p;
        }
        self.digitwise(a, b, |x, y| (x + y) % self.p)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return (a + self.p - b) % self.p;
        }
        self.digitwise(a, b, |x, y| (x + self.p - y) % self.p)
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.sub(0, a)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let prod = poly_mul(&self.coefficients(a), &self.coefficients(b), self.p);
        let (_, rem) = poly_divmod(&prod, &self.modulus, self.p);
        self.from_coefficients(&rem)
    }

    /// Inverse by the extended Euclidean algorithm on polynomials.
    pub fn inverse(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let p = self.p;
        let (mut r0, mut r1) = (self.modulus.clone(), trim(self.coefficients(a)));
        let (mut t0, mut t1) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1, p);
            let t2 = poly_sub(&t0, &poly_mul(&q, &t1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t2);
        }
        // r0 is a nonzero constant since the modulus is irreducible.
        let lead_inv = prime_inverse(r0[0], p);
        let inv: Vec<u32> = t0
            .iter()
            .map(|&c| ((c as u64 * lead_inv as u64) % p as u64) as u32)
            .collect();
        let (_, inv) = poly_divmod(&inv, &self.modulus, p);
        Some(self.from_coefficients(&inv))
    }

    /// Formats an element as a polynomial in `x`, e.g. `x + 1`.
    pub fn format_poly(&self, code: u32) -> String {
        poly_string(&trim(self.coefficients(code)))
    }

    fn digitwise(&self, a: u32, b: u32, f: impl Fn(u32, u32) -> u32) -> u32 {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += f(a % self.p, b % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }
}

impl fmt::Display for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.k)
        }
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_inverse(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2).
    let (mut base, mut exp, mut acc) = (a as u64 % p as u64, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

fn poly_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

/// Division with remainder; `b` must be nonzero (trimmed, nonempty).
fn poly_divmod(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let b = trim(b.to_vec());
    let mut rem = trim(a.to_vec());
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = prime_inverse(*b.last().expect("nonzero divisor"), p) as u64;
    let mut quot = vec![0u32; rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = (*rem.last().unwrap() as u64 * lead_inv % p as u64) as u32;
        quot[shift] = c;
        for (i, &bc) in b.iter().enumerate() {
            let sub = (c as u64 * bc as u64 % p as u64) as u32;
            rem[shift + i] = (rem[shift + i] + p - sub) % p;
        }
        rem = trim(rem);
    }
    (trim(quot), rem)
}

/// Brute-force irreducibility: no monic factor of degree `1..=deg/2`.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut factor = Vec::with_capacity(d + 1);
            let mut c = low;
            for _ in 0..d {
                factor.push((c % p as u64) as u32);
                c /= p as u64;
            }
            factor.push(1);
            if poly_divmod(poly, &factor, p).1.is_empty() {
                return false;
            }
        }
    }
    true
}

/// Least monic irreducible of degree `k`, ordering candidates by the
/// integer whose base-`p` digits are the non-leading coefficients, most
/// significant first from `x^{k-1}` down.
fn least_irreducible(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    for low in 0..count {
        let mut poly = Vec::with_capacity(k as usize + 1);
        let mut c = low;
        for _ in 0..k {
            poly.push((c % p as u64) as u32);
            c /= p as u64;
        }
        poly.push(1);
        if is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn poly_string(coeffs: &[u32]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => "x".to_string(),
            (1, c) => format!("{c}x"),
            (i, 1) => format!("x^{i}"),
            (i, c) => format!("{c}x^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_default_modulus_and_products() {
        let f = GaloisField::new(2, 2, None).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let omega = 2;
        // x * x = x^2 = x + 1 mod x^2 + x + 1
        assert_eq!(f.mul(omega, omega), 3);
        assert_eq!(f.inverse(omega), Some(3));
        assert_eq!(f.add(1, 1), 0);
    }

    #[test]
    fn default_moduli_are_least() {
        assert_eq!(
            GaloisField::new(2, 3, None).unwrap().modulus(),
            &[1, 1, 0, 1]
        );
        assert_eq!(GaloisField::new(3, 2, None).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(GaloisField::new(4, 1, None).is_err());
        assert!(GaloisField::new(2, 11, None).is_err());
        // x^2 + 1 = (x + 1)^2 over GF(2)
        assert!(GaloisField::new(2, 2, Some(vec![1, 0, 1])).is_err());
        assert!(GaloisField::new(2, 2, Some(vec![1, 1, 2])).is_err());
    }

    #[test]
    fn every_nonzero_element_inverts() {
        for (p, k) in [(2, 1), (3, 1), (2, 3), (3, 2), (5, 2), (2, 10), (31, 2)] {
            let f = GaloisField::new(p, k, None).unwrap();
            let step = (f.order() / 97).max(1);
            for a in (1..f.order()).step_by(step as usize) {
                let inv = f.inverse(a).unwrap();
                assert_eq!(f.mul(a, inv), 1, "{f}: {a}");
                assert_eq!(f.mul(inv, a), 1);
            }
        }
    }

    #[test]
    fn poly_formatting() {
        let f = GaloisField::new(3, 2, None).unwrap();
        assert_eq!(f.format_poly(0), "0");
        assert_eq!(f.format_poly(3 * 2 + 1), "2x + 1");
    }
}
