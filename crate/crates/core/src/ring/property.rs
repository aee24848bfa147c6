//! The property "every element that is not a central unit is a sum of two
//! nilpotents", and its refinement by nilpotency indices: type `(p, q)`
//! asks for `a = b + c` with `b^p = 0` and `c^q = 0`, and `q = inf` only
//! asks for `c` nilpotent.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{FiniteRing, RingAnalysis, RingError};

/// A nilpotency bound; `Infinite` compares above every finite bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Exponent {
    Finite(u32),
    Infinite,
}

impl Exponent {
    fn admits(self, index: u32) -> bool {
        match self {
            Self::Finite(q) => index <= q,
            Self::Infinite => true,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(n) => write!(f, "{n}"),
            Self::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Self::Finite(n) => s.serialize_u32(*n),
            Self::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u32),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(Self::Finite(n)),
            Raw::S(s) if s == "inf" => Ok(Self::Infinite),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad exponent `{s}`"))),
        }
    }
}

impl std::str::FromStr for Exponent {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inf" | "infinity" => Ok(Self::Infinite),
            _ => s
                .parse()
                .map(Self::Finite)
                .map_err(|_| format!("bad exponent `{s}`")),
        }
    }
}

/// For each element `a`, the index pairs `(index(b), index(a - b))` over
/// all nilpotent `b` with `a - b` nilpotent.
#[derive(Clone, Debug)]
pub struct SplitTable {
    splits: Vec<Vec<(u32, u32)>>,
    witness: Vec<Option<(usize, usize)>>,
}

impl SplitTable {
    pub fn new(r: &FiniteRing, a: &RingAnalysis) -> Self {
        let mut splits = vec![Vec::new(); r.size()];
        let mut witness = vec![None; r.size()];
        for x in r.elements() {
            for &b in &a.nilpotents {
                let c = r.sub(x, b);
                if let (Some(ib), Some(ic)) = (a.nilpotency_index[b], a.nilpotency_index[c]) {
                    splits[x].push((ib, ic));
                    witness[x].get_or_insert((b, c));
                }
            }
        }
        Self { splits, witness }
    }

    pub fn is_two_nilgood(&self, x: usize) -> bool {
        self.witness[x].is_some()
    }

    pub fn witness(&self, x: usize) -> Option<(usize, usize)> {
        self.witness[x]
    }

    fn admits(&self, x: usize, p: u32, q: Exponent) -> bool {
        self.splits[x]
            .iter()
            .any(|&(ib, ic)| ib <= p && q.admits(ic))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilSumReport {
    pub holds: bool,
    /// First non-central-unit (in index order) that is not a sum of two nilpotents.
    pub counterexample: Option<usize>,
    /// `a -> (b, c)` with `a = b + c`, for every element checked before
    /// the first counterexample.
    pub witnesses: BTreeMap<usize, (usize, usize)>,
}

pub fn has_2_nil_sum_property(r: &FiniteRing, a: &RingAnalysis) -> NilSumReport {
    let mut witnesses = BTreeMap::new();
    for x in r.elements().filter(|&x| !a.is_central_unit(x)) {
        let found = a.nilpotents.iter().find_map(|&b| {
            let c = r.sub(x, b);
            a.is_nilpotent(c).then_some((b, c))
        });
        match found {
            Some(w) => {
                witnesses.insert(x, w);
            }
            None => {
                return NilSumReport {
                    holds: false,
                    counterexample: Some(x),
                    witnesses,
                }
            }
        }
    }
    NilSumReport {
        holds: true,
        counterexample: None,
        witnesses,
    }
}

pub fn has_type(r: &FiniteRing, a: &RingAnalysis, p: u32, q: Exponent) -> Result<bool, RingError> {
    let table = SplitTable::new(r, a);
    type_holds(r, a, &table, p, q)
}

fn type_holds(
    r: &FiniteRing,
    a: &RingAnalysis,
    table: &SplitTable,
    p: u32,
    q: Exponent,
) -> Result<bool, RingError> {
    if p < 1 || q == Exponent::Finite(0) {
        return Err(RingError::BadExponent);
    }
    Ok(r.elements()
        .filter(|&x| !a.is_central_unit(x))
        .all(|x| table.admits(x, p, q)))
}

/// Minimal elements of the (upward closed) set of valid types.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeSignature {
    pub pairs: Vec<(u32, Exponent)>,
}

impl TypeSignature {
    pub fn contains(&self, p: u32, q: Exponent) -> bool {
        self.pairs.contains(&(p, q))
    }
}

impl fmt::Display for TypeSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pairs
            .iter()
            .map(|(p, q)| format!("({p},{q})"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Sweeps `p, q <= M` plus `q = inf`, with `M` the largest nilpotency
/// index in the ring; nothing changes beyond `M`.
pub fn minimal_types(r: &FiniteRing, a: &RingAnalysis) -> TypeSignature {
    let table = SplitTable::new(r, a);
    let m = a.max_nilpotency_index();
    let qs: Vec<Exponent> = (1..=m)
        .map(Exponent::Finite)
        .chain([Exponent::Infinite])
        .collect();
    let valid: Vec<(u32, Exponent)> = (1..=m)
        .flat_map(|p| qs.iter().map(move |&q| (p, q)))
        .filter(|&(p, q)| type_holds(r, a, &table, p, q).expect("exponents are positive"))
        .collect();
    let pairs = valid
        .iter()
        .copied()
        .filter(|&(p, q)| {
            !valid
                .iter()
                .any(|&(p2, q2)| (p2, q2) != (p, q) && p2 <= p && q2 <= q)
        })
        .collect();
    TypeSignature { pairs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::analyze;

    #[test]
    fn z4_property_and_types() {
        let r = FiniteRing::zmod(4).unwrap();
        let a = analyze(&r);
        let rep = has_2_nil_sum_property(&r, &a);
        assert!(rep.holds);
        assert_eq!(rep.witnesses.get(&2), Some(&(0, 2)));
        let t = minimal_types(&r, &a);
        assert_eq!(
            t.pairs,
            vec![(1, Exponent::Finite(2)), (2, Exponent::Finite(1))]
        );
    }

    #[test]
    fn fields_have_type_one_one() {
        let r = FiniteRing::galois(5, 1).unwrap();
        let a = analyze(&r);
        assert_eq!(minimal_types(&r, &a).pairs, vec![(1, Exponent::Finite(1))]);
    }

    #[test]
    fn m2_gf2_fails_at_e11() {
        let gf2 = FiniteRing::zmod(2).unwrap();
        let r = FiniteRing::matrix(2, &gf2).unwrap();
        let a = analyze(&r);
        let rep = has_2_nil_sum_property(&r, &a);
        assert!(!rep.holds);
        assert_eq!(r.label(rep.counterexample.unwrap()), "[[1,0],[0,0]]");
        assert!(minimal_types(&r, &a).pairs.is_empty());
        for p in 1..=3 {
            for q in [Exponent::Finite(1), Exponent::Finite(3), Exponent::Infinite] {
                assert!(!has_type(&r, &a, p, q).unwrap());
            }
        }
    }

    #[test]
    fn z6_fails_at_a_central_non_unit() {
        let r = FiniteRing::zmod(6).unwrap();
        let a = analyze(&r);
        let rep = has_2_nil_sum_property(&r, &a);
        assert!(!rep.holds);
        let x = rep.counterexample.unwrap();
        assert!(a.is_central[x] && !a.is_unit(x));
        assert_eq!(x, 2);
        // 3 is a counterexample as well.
        assert!(!SplitTable::new(&r, &a).is_two_nilgood(3));
    }

    #[test]
    fn exponent_order_and_errors() {
        assert!(Exponent::Finite(1000) < Exponent::Infinite);
        let r = FiniteRing::zmod(4).unwrap();
        let a = analyze(&r);
        assert_eq!(
            has_type(&r, &a, 0, Exponent::Infinite),
            Err(RingError::BadExponent)
        );
        assert_eq!(
            has_type(&r, &a, 1, Exponent::Finite(0)),
            Err(RingError::BadExponent)
        );
        assert_eq!("inf".parse::<Exponent>().unwrap(), Exponent::Infinite);
    }
}
