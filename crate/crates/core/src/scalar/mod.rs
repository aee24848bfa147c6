//! Exact scalar domains: Galois fields, rationals, rational quaternions,
//! and (for trace arguments over commutative rings) the integers mod `m`.

mod galois;
mod quaternion;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use galois::{is_prime, GaloisField, MAX_FIELD_ORDER};
pub use quaternion::Quaternion;

use crate::error::AlgebraError;

/// The ring the entries of a matrix live in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ScalarDomain {
    Galois(Arc<GaloisField>),
    Rational,
    /// Hamilton quaternions over the rationals; a noncommutative division ring.
    Quaternion,
    /// `Z/m`, commutative but not a field for composite `m`.
    IntegersMod(u64),
}

/// Domain-specific payload. Always interpreted relative to a domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Value {
    Gf(u32),
    Zmod(u64),
    Rat(BigRational),
    Quat(Box<Quaternion>),
}

impl ScalarDomain {
    pub fn galois(p: u32, k: u32) -> Result<Self, AlgebraError> {
        Ok(Self::Galois(Arc::new(GaloisField::new(p, k, None)?)))
    }

    pub fn galois_with_modulus(p: u32, k: u32, modulus: Vec<u32>) -> Result<Self, AlgebraError> {
        Ok(Self::Galois(Arc::new(GaloisField::new(
            p,
            k,
            Some(modulus),
        )?)))
    }

    pub fn integers_mod(m: u64) -> Result<Self, AlgebraError> {
        if m < 2 {
            return Err(AlgebraError::InvalidField(format!(
                "modulus {m} must be at least 2"
            )));
        }
        Ok(Self::IntegersMod(m))
    }

    pub fn galois_field(&self) -> Option<&GaloisField> {
        match self {
            Self::Galois(f) => Some(f),
            _ => None,
        }
    }

    pub fn is_field(&self) -> bool {
        match self {
            Self::Galois(_) | Self::Rational => true,
            Self::Quaternion => false,
            Self::IntegersMod(m) => is_prime_u64(*m),
        }
    }

    pub fn is_division_ring(&self) -> bool {
        self.is_field() || matches!(self, Self::Quaternion)
    }

    pub fn is_commutative(&self) -> bool {
        !matches!(self, Self::Quaternion)
    }

    /// Characteristic, or 0 for the rationals and quaternions.
    pub fn characteristic(&self) -> u64 {
        match self {
            Self::Galois(f) => f.characteristic() as u64,
            Self::IntegersMod(m) => *m,
            Self::Rational | Self::Quaternion => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.scalar(self.zero_value())
    }

    pub fn one(&self) -> Scalar {
        self.scalar(self.one_value())
    }

    /// Image of an integer under the unital map `Z -> domain`.
    pub fn from_int(&self, n: i64) -> Scalar {
        let value = match self {
            Self::Galois(f) => Value::Gf(f.from_int(n)),
            Self::IntegersMod(m) => Value::Zmod(n.rem_euclid(*m as i64) as u64),
            Self::Rational => Value::Rat(BigRational::from_integer(BigInt::from(n))),
            Self::Quaternion => Value::Quat(Box::new(Quaternion::new(
                BigRational::from_integer(BigInt::from(n)),
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
            ))),
        };
        self.scalar(value)
    }

    /// Element of a Galois field by packed code.
    pub fn gf_element(&self, code: u32) -> Result<Scalar, AlgebraError> {
        match self {
            Self::Galois(f) => Ok(self.scalar(Value::Gf(f.element(code)?))),
            other => Err(AlgebraError::UnsupportedDomain(format!(
                "{other} has no Galois element codes"
            ))),
        }
    }

    pub fn rational(&self, r: BigRational) -> Result<Scalar, AlgebraError> {
        match self {
            Self::Rational => Ok(self.scalar(Value::Rat(r))),
            Self::Quaternion => Ok(self.quaternion(Quaternion::new(
                r,
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
            ))),
            other => Err(AlgebraError::UnsupportedDomain(format!(
                "{other} does not contain the rationals"
            ))),
        }
    }

    /// Wraps a quaternion; only valid in the quaternion domain.
    pub fn quaternion(&self, q: Quaternion) -> Scalar {
        assert!(matches!(self, Self::Quaternion), "quaternion in {self}");
        self.scalar(Value::Quat(Box::new(q)))
    }

    /// Header line of the matrix text format.
    pub fn spec_line(&self) -> String {
        match self {
            Self::Galois(f) if f.degree() == 1 => format!("gf {}", f.characteristic()),
            Self::Galois(f) => {
                let coeffs: Vec<String> = f.modulus().iter().map(|c| c.to_string()).collect();
                format!(
                    "gf {} {} {}",
                    f.characteristic(),
                    f.degree(),
                    coeffs.join(" ")
                )
            }
            Self::Rational => "rat".to_string(),
            Self::Quaternion => "quat".to_string(),
            Self::IntegersMod(m) => format!("zmod {m}"),
        }
    }

    /// Parses the header line of the matrix text format.
    pub fn parse_spec(line: &str) -> Result<Self, AlgebraError> {
        let toks: Vec<&str> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect();
        let num = |t: &str| -> Result<u64, AlgebraError> {
            t.parse::<u64>().map_err(|_| {
                AlgebraError::Parse(format!("expected a non-negative integer, got `{t}`"))
            })
        };
        match toks.as_slice() {
            ["gf", p] => Self::galois(num(p)? as u32, 1),
            ["gf", p, k] => Self::galois(num(p)? as u32, num(k)? as u32),
            ["gf", p, k, coeffs @ ..] => {
                let modulus = coeffs
                    .iter()
                    .map(|c| num(c).map(|c| c as u32))
                    .collect::<Result<Vec<_>, _>>()?;
                Self::galois_with_modulus(num(p)? as u32, num(k)? as u32, modulus)
            }
            ["rat"] => Ok(Self::Rational),
            ["quat"] => Ok(Self::Quaternion),
            ["zmod", m] => Self::integers_mod(num(m)?),
            _ => Err(AlgebraError::Parse(format!("unknown domain spec `{line}`"))),
        }
    }

    /// Parses one matrix entry in this domain's syntax.
    pub fn parse_scalar(&self, token: &str) -> Result<Scalar, AlgebraError> {
        let token = token.trim();
        let value = match self {
            Self::Galois(f) => {
                let n: i64 = token
                    .parse()
                    .map_err(|_| AlgebraError::Parse(format!("bad field element `{token}`")))?;
                if f.degree() == 1 {
                    Value::Gf(f.from_int(n))
                } else if n >= 0 && n < f.order() as i64 {
                    Value::Gf(n as u32)
                } else {
                    return Err(AlgebraError::Parse(format!(
                        "element code `{token}` outside [0, {})",
                        f.order()
                    )));
                }
            }
            Self::IntegersMod(m) => {
                let n: i64 = token
                    .parse()
                    .map_err(|_| AlgebraError::Parse(format!("bad residue `{token}`")))?;
                Value::Zmod(n.rem_euclid(*m as i64) as u64)
            }
            Self::Rational => Value::Rat(parse_rational(token)?),
            Self::Quaternion => Value::Quat(Box::new(parse_quaternion(token)?)),
        };
        Ok(self.scalar(value))
    }

    fn scalar(&self, value: Value) -> Scalar {
        Scalar {
            domain: self.clone(),
            value,
        }
    }

    pub(crate) fn zero_value(&self) -> Value {
        match self {
            Self::Galois(_) => Value::Gf(0),
            Self::IntegersMod(_) => Value::Zmod(0),
            Self::Rational => Value::Rat(BigRational::zero()),
            Self::Quaternion => Value::Quat(Box::new(Quaternion::zero())),
        }
    }

    pub(crate) fn one_value(&self) -> Value {
        match self {
            Self::Galois(_) => Value::Gf(1),
            Self::IntegersMod(_) => Value::Zmod(1),
            Self::Rational => Value::Rat(BigRational::one()),
            Self::Quaternion => Value::Quat(Box::new(Quaternion::one())),
        }
    }

    pub(crate) fn add(&self, a: &Value, b: &Value) -> Value {
        match (self, a, b) {
            (Self::Galois(f), Value::Gf(x), Value::Gf(y)) => Value::Gf(f.add(*x, *y)),
            (Self::IntegersMod(m), Value::Zmod(x), Value::Zmod(y)) => Value::Zmod((x + y) % m),
            (Self::Rational, Value::Rat(x), Value::Rat(y)) => Value::Rat(x + y),
            (Self::Quaternion, Value::Quat(x), Value::Quat(y)) => Value::Quat(Box::new(x.add(y))),
            _ => payload_mismatch(self),
        }
    }

    pub(crate) fn sub(&self, a: &Value, b: &Value) -> Value {
        match (self, a, b) {
            (Self::Galois(f), Value::Gf(x), Value::Gf(y)) => Value::Gf(f.sub(*x, *y)),
            (Self::IntegersMod(m), Value::Zmod(x), Value::Zmod(y)) => Value::Zmod((x + m - y) % m),
            (Self::Rational, Value::Rat(x), Value::Rat(y)) => Value::Rat(x - y),
            (Self::Quaternion, Value::Quat(x), Value::Quat(y)) => Value::Quat(Box::new(x.sub(y))),
            _ => payload_mismatch(self),
        }
    }

    pub(crate) fn neg(&self, a: &Value) -> Value {
        self.sub(&self.zero_value(), a)
    }

    pub(crate) fn mul(&self, a: &Value, b: &Value) -> Value {
        match (self, a, b) {
            (Self::Galois(f), Value::Gf(x), Value::Gf(y)) => Value::Gf(f.mul(*x, *y)),
            (Self::IntegersMod(m), Value::Zmod(x), Value::Zmod(y)) => {
                Value::Zmod(((*x as u128 * *y as u128) % *m as u128) as u64)
            }
            (Self::Rational, Value::Rat(x), Value::Rat(y)) => Value::Rat(x * y),
            (Self::Quaternion, Value::Quat(x), Value::Quat(y)) => Value::Quat(Box::new(x.mul(y))),
            _ => payload_mismatch(self),
        }
    }

    pub(crate) fn inverse(&self, a: &Value) -> Option<Value> {
        match (self, a) {
            (Self::Galois(f), Value::Gf(x)) => f.inverse(*x).map(Value::Gf),
            (Self::IntegersMod(m), Value::Zmod(x)) => {
                let (m, x) = (*m as i128, *x as i128);
                let g = x.extended_gcd(&m);
                (g.gcd == 1).then(|| Value::Zmod(g.x.rem_euclid(m) as u64))
            }
            (Self::Rational, Value::Rat(x)) => (!x.is_zero()).then(|| Value::Rat(x.recip())),
            (Self::Quaternion, Value::Quat(x)) => x.inverse().map(|q| Value::Quat(Box::new(q))),
            _ => payload_mismatch(self),
        }
    }

    pub(crate) fn is_zero(&self, a: &Value) -> bool {
        match a {
            Value::Gf(x) => *x == 0,
            Value::Zmod(x) => *x == 0,
            Value::Rat(x) => x.is_zero(),
            Value::Quat(x) => x.is_zero(),
        }
    }

    pub(crate) fn is_one(&self, a: &Value) -> bool {
        *a == self.one_value()
    }

    /// Whether a scalar is nilpotent in this domain. In a division ring
    /// only zero is; in `Z/m` exactly the multiples of the radical of `m`.
    pub(crate) fn is_nilpotent_value(&self, a: &Value) -> bool {
        match (self, a) {
            (Self::IntegersMod(m), Value::Zmod(x)) => x % radical(*m) == 0,
            _ => self.is_zero(a),
        }
    }

    pub(crate) fn format_value(&self, a: &Value) -> String {
        match a {
            Value::Gf(x) => x.to_string(),
            Value::Zmod(x) => x.to_string(),
            Value::Rat(x) => x.to_string(),
            Value::Quat(x) => x.to_string(),
        }
    }

    /// Nilpotency index bound for `n x n` matrices over this domain:
    /// `n` over a division ring, `n * e` over `Z/m` with `e` the largest
    /// prime exponent of `m`.
    pub fn nilpotency_bound(&self, n: usize) -> usize {
        match self {
            Self::IntegersMod(m) => n * max_prime_exponent(*m) as usize,
            _ => n,
        }
        .max(1)
    }
}

impl fmt::Display for ScalarDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Galois(g) => write!(f, "{g}"),
            Self::Rational => f.write_str("Q"),
            Self::Quaternion => f.write_str("H_Q"),
            Self::IntegersMod(m) => write!(f, "Z/{m}"),
        }
    }
}

fn payload_mismatch(domain: &ScalarDomain) -> ! {
    panic!("payload does not belong to domain {domain}")
}

fn is_prime_u64(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn prime_factors(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        let mut e = 0;
        while m.is_multiple_of(d) {
            m /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

fn radical(m: u64) -> u64 {
    prime_factors(m).iter().map(|(p, _)| p).product()
}

fn max_prime_exponent(m: u64) -> u32 {
    prime_factors(m).iter().map(|&(_, e)| e).max().unwrap_or(1)
}

/// An element of a [`ScalarDomain`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    domain: ScalarDomain,
    value: Value,
}

impl Scalar {
    pub(crate) fn from_parts(domain: ScalarDomain, value: Value) -> Self {
        Self { domain, value }
    }

    pub(crate) fn value(&self) -> &Value {
        &self.value
    }

    pub(crate) fn into_value(self) -> Value {
        self.value
    }

    pub fn domain(&self) -> &ScalarDomain {
        &self.domain
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.domain == other.domain {
            Ok(())
        } else {
            Err(AlgebraError::DomainMismatch {
                left: self.domain.to_string(),
                right: other.domain.to_string(),
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        Ok(self
            .domain
            .scalar(self.domain.add(&self.value, &other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        Ok(self
            .domain
            .scalar(self.domain.sub(&self.value, &other.value)))
    }

    /// `self * other`, in that order.
    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        Ok(self
            .domain
            .scalar(self.domain.mul(&self.value, &other.value)))
    }

    pub fn neg(&self) -> Self {
        self.domain.scalar(self.domain.neg(&self.value))
    }

    /// Two-sided inverse.
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        self.domain
            .inverse(&self.value)
            .map(|v| self.domain.scalar(v))
            .ok_or_else(|| AlgebraError::NotInvertible(format!("{self} in {}", self.domain)))
    }

    pub fn is_zero(&self) -> bool {
        self.domain.is_zero(&self.value)
    }

    pub fn is_one(&self) -> bool {
        self.domain.is_one(&self.value)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.domain.is_nilpotent_value(&self.value)
    }

    pub fn gf_code(&self) -> Option<u32> {
        match self.value {
            Value::Gf(x) => Some(x),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.value {
            Value::Rat(x) => Some(x),
            _ => None,
        }
    }

    pub fn as_quaternion(&self) -> Option<&Quaternion> {
        match &self.value {
            Value::Quat(x) => Some(x),
            _ => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.domain.format_value(&self.value))
    }
}

/// Parses `a` or `a/b` into a reduced rational.
pub fn parse_rational(token: &str) -> Result<BigRational, AlgebraError> {
    let bad = || AlgebraError::Parse(format!("bad rational `{token}`"));
    let token = token.trim();
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n, d),
        None => (token, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Parses `a+bi+cj+dk` with rational coefficients; zero terms may be
/// omitted, unit coefficients may be implicit (`-j`), and terms may come
/// in any order.
pub fn parse_quaternion(token: &str) -> Result<Quaternion, AlgebraError> {
    let bad = |why: &str| AlgebraError::Parse(format!("bad quaternion `{token}`: {why}"));
    let s: String = token.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad("empty"));
    }
    // Split into signed terms at '+' / '-' that do not start the string.
    let mut terms = Vec::new();
    let mut start = 0;
    for (idx, ch) in s.char_indices() {
        if idx > start && (ch == '+' || ch == '-') {
            terms.push(&s[start..idx]);
            start = idx;
        }
    }
    terms.push(&s[start..]);

    let mut parts = [
        BigRational::zero(),
        BigRational::zero(),
        BigRational::zero(),
        BigRational::zero(),
    ];
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, term.strip_prefix('+').unwrap_or(term)),
        };
        let (slot, coef) = match body.chars().last() {
            Some('i') => (1, &body[..body.len() - 1]),
            Some('j') => (2, &body[..body.len() - 1]),
            Some('k') => (3, &body[..body.len() - 1]),
            Some(_) => (0, body),
            None => return Err(bad("dangling sign")),
        };
        let mut value = if coef.is_empty() {
            if slot == 0 {
                return Err(bad("missing coefficient"));
            }
            BigRational::one()
        } else {
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            parse_rational(coef).map_err(|_| bad("bad coefficient"))?
        };
        if sign < 0 {
            value = -value;
        }
        parts[slot] += value;
    }
    let [a, b, c, d] = parts;
    Ok(Quaternion::new(a, b, c, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_one_plus_one() {
        let d = ScalarDomain::galois(2, 1).unwrap();
        assert!(d.one().add(&d.one()).unwrap().is_zero());
    }

    #[test]
    fn gf4_omega_square_and_inverse() {
        let d = ScalarDomain::galois(2, 2).unwrap();
        let omega = d.gf_element(2).unwrap();
        let omega_plus_one = d.gf_element(3).unwrap();
        assert_eq!(omega.mul(&omega).unwrap(), omega_plus_one);
        assert_eq!(omega.inverse().unwrap(), omega_plus_one);
    }

    #[test]
    fn quaternion_order_matters() {
        let d = ScalarDomain::Quaternion;
        let i = d.quaternion(Quaternion::i());
        let j = d.quaternion(Quaternion::j());
        let k = d.quaternion(Quaternion::k());
        assert_eq!(i.mul(&j).unwrap(), k);
        assert_eq!(j.mul(&i).unwrap(), k.neg());
        assert_eq!(j.inverse().unwrap(), j.neg());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(matches!(
            ScalarDomain::Rational.zero().inverse(),
            Err(AlgebraError::NotInvertible(_))
        ));
    }

    #[test]
    fn mismatched_domains_are_rejected() {
        let a = ScalarDomain::galois(2, 1).unwrap().one();
        let b = ScalarDomain::galois(3, 1).unwrap().one();
        assert!(matches!(
            a.add(&b),
            Err(AlgebraError::DomainMismatch { .. })
        ));
        assert!(a.mul(&ScalarDomain::Rational.one()).is_err());
    }

    #[test]
    fn zmod_units_and_nilpotents() {
        let d = ScalarDomain::integers_mod(12).unwrap();
        assert!(d.from_int(6).is_nilpotent());
        assert!(!d.from_int(4).is_nilpotent());
        assert_eq!(d.from_int(5).inverse().unwrap(), d.from_int(5));
        assert!(d.from_int(4).inverse().is_err());
        assert!(!d.is_field());
        assert_eq!(d.nilpotency_bound(3), 6);
    }

    #[test]
    fn parse_quaternion_forms() {
        let q = parse_quaternion("1/2-3/4k").unwrap();
        assert_eq!(q.to_string(), "1/2-3/4k");
        assert_eq!(parse_quaternion("-j").unwrap(), Quaternion::j().neg());
        assert_eq!(parse_quaternion("i").unwrap(), Quaternion::i());
        assert_eq!(parse_quaternion("0").unwrap(), Quaternion::zero());
        assert_eq!(
            parse_quaternion("2+i+j+k").unwrap(),
            Quaternion::from_ints(2, 1, 1, 1)
        );
        assert!(parse_quaternion("").is_err());
        assert!(parse_quaternion("1+").is_err());
        assert!(parse_quaternion("x").is_err());
    }

    #[test]
    fn parse_domain_specs() {
        assert_eq!(
            ScalarDomain::parse_spec("rat").unwrap(),
            ScalarDomain::Rational
        );
        let gf4 = ScalarDomain::parse_spec("gf 2 2 1 1 1").unwrap();
        assert_eq!(gf4, ScalarDomain::galois(2, 2).unwrap());
        assert_eq!(gf4.spec_line(), "gf 2 2 1 1 1");
        assert_eq!(ScalarDomain::parse_spec("gf 2 2 1,1,1").unwrap(), gf4);
        assert!(ScalarDomain::parse_spec("gf 4").is_err());
        assert!(ScalarDomain::parse_spec("real").is_err());
    }

    #[test]
    fn rationals_stay_reduced() {
        let d = ScalarDomain::Rational;
        let a = d.parse_scalar("6/-4").unwrap();
        let r = a.as_rational().unwrap();
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
    }
}
