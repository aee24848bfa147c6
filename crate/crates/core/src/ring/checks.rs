//! Consistency checks tying the sum-of-two-nilpotents property to ring
//! structure, run by brute force.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::analysis::is_local;
use super::property::has_2_nil_sum_property;
use super::{has_type, Exponent, FiniteRing, RingAnalysis};

/// Ideal enumeration is only attempted up to this many elements.
pub const IDEAL_ENUMERATION_LIMIT: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckItem {
    pub item: u8,
    pub claim: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checklist {
    /// Whether the ring has the property at all; if not, nothing is checked.
    pub hypothesis_holds: bool,
    pub items: Vec<CheckItem>,
}

impl Checklist {
    /// True when no item failed (vacuously true without the hypothesis).
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.status != CheckStatus::Fail)
    }
}

/// All two-sided ideals reachable as sums of principal ideals `RaR`,
/// each as a sorted element list. `None` above the size limit.
pub fn enumerate_ideals(r: &FiniteRing) -> Option<Vec<Vec<usize>>> {
    if r.size() > IDEAL_ENUMERATION_LIMIT {
        return None;
    }
    let mut ideals: BTreeSet<Vec<usize>> = BTreeSet::new();
    for a in r.elements() {
        let gens: BTreeSet<usize> = r
            .elements()
            .flat_map(|x| r.elements().map(move |y| (x, y)))
            .map(|(x, y)| r.mul(r.mul(x, a), y))
            .collect();
        ideals.insert(additive_closure(r, &gens));
    }
    loop {
        let current: Vec<Vec<usize>> = ideals.iter().cloned().collect();
        let mut grew = false;
        for (i, x) in current.iter().enumerate() {
            for y in &current[i + 1..] {
                let sum: BTreeSet<usize> = x
                    .iter()
                    .flat_map(|&a| y.iter().map(move |&b| (a, b)))
                    .map(|(a, b)| r.add(a, b))
                    .collect();
                grew |= ideals.insert(sum.into_iter().collect());
            }
        }
        if !grew {
            break;
        }
    }
    Some(ideals.into_iter().collect())
}

fn additive_closure(r: &FiniteRing, gens: &BTreeSet<usize>) -> Vec<usize> {
    let mut seen = vec![false; r.size()];
    let mut stack = vec![r.zero()];
    seen[r.zero()] = true;
    while let Some(x) = stack.pop() {
        for &g in gens {
            let y = r.add(x, g);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    r.elements().filter(|&x| seen[x]).collect()
}

/// Necessary consequences of the property, checked item by item:
///
/// 1. central non-units are nilpotent, and the non-units of the center
///    are closed under addition;
/// 2. every proper ideal lies in `C(R) ∩ nil(R)`;
/// 3. every proper ideal lies in `J(R)`;
/// 4. `J(R)` is nil and central;
/// 5. for every proper ideal `I`, each central unit of `R/I` has a
///    preimage that is a central unit of `R`.
///
/// Items 2, 3 and 5 need the ideal lattice and are skipped above
/// [`IDEAL_ENUMERATION_LIMIT`].
pub fn nil_sum_consequences(r: &FiniteRing, a: &RingAnalysis) -> Checklist {
    if !has_2_nil_sum_property(r, a).holds {
        return Checklist {
            hypothesis_holds: false,
            items: Vec::new(),
        };
    }
    let status = |ok: bool| {
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    };
    let mut items = Vec::new();

    let central_non_units: Vec<usize> = a
        .center
        .iter()
        .copied()
        .filter(|&x| !a.is_unit(x))
        .collect();
    let item1 = central_non_units.iter().all(|&x| a.is_nilpotent(x))
        && central_non_units
            .iter()
            .all(|&x| central_non_units.iter().all(|&y| !a.is_unit(r.add(x, y))));
    items.push(CheckItem {
        item: 1,
        claim: "central non-units are nilpotent and the center is local".into(),
        status: status(item1),
        detail: None,
    });

    let proper: Option<Vec<Vec<usize>>> =
        enumerate_ideals(r).map(|all| all.into_iter().filter(|i| !i.contains(&r.one())).collect());
    let item = |item: u8, claim: &str, outcome: Option<bool>| CheckItem {
        item,
        claim: claim.into(),
        status: outcome.map_or(CheckStatus::Skipped, status),
        detail: outcome
            .is_none()
            .then(|| format!("ring has more than {IDEAL_ENUMERATION_LIMIT} elements")),
    };

    let item2 = proper.as_ref().map(|ideals| {
        ideals
            .iter()
            .all(|i| i.iter().all(|&x| a.is_central[x] && a.is_nilpotent(x)))
    });
    items.push(item(2, "proper ideals lie in C(R) ∩ nil(R)", item2));

    let item3 = proper
        .as_ref()
        .map(|ideals| ideals.iter().all(|i| i.iter().all(|&x| a.in_jacobson[x])));
    items.push(item(3, "proper ideals lie in J(R)", item3));

    let item4 = a
        .jacobson
        .iter()
        .all(|&x| a.is_nilpotent(x) && a.is_central[x]);
    items.push(item(4, "J(R) is nil and central", Some(item4)));

    let item5 = proper
        .as_ref()
        .map(|ideals| ideals.iter().all(|i| central_units_lift(r, a, i)));
    items.push(item(
        5,
        "central units of R/I lift to central units of R",
        item5,
    ));

    Checklist {
        hypothesis_holds: true,
        items,
    }
}

fn central_units_lift(r: &FiniteRing, a: &RingAnalysis, ideal: &[usize]) -> bool {
    let mut in_ideal = vec![false; r.size()];
    for &x in ideal {
        in_ideal[x] = true;
    }
    let congruent = |x: usize, y: usize| in_ideal[r.sub(x, y)];
    r.elements().all(|x| {
        let central_mod = r.elements().all(|y| congruent(r.mul(x, y), r.mul(y, x)));
        let unit_mod = r
            .elements()
            .any(|y| congruent(r.mul(x, y), r.one()) && congruent(r.mul(y, x), r.one()));
        if !(central_mod && unit_mod) {
            return true;
        }
        ideal.iter().any(|&i| a.is_central_unit(r.add(x, i)))
    })
}

/// Both sides of the finite-ring characterization: the property holds
/// exactly for commutative local rings with nil Jacobson radical.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureVerdict {
    pub property_holds: bool,
    pub commutative: bool,
    pub local: bool,
    pub jacobson_nil: bool,
    pub consistent: bool,
}

pub fn check_structure_theorem(r: &FiniteRing, a: &RingAnalysis) -> StructureVerdict {
    let property_holds = has_2_nil_sum_property(r, a).holds;
    let commutative = r.is_commutative();
    let local = is_local(r, a);
    let jacobson_nil = a.jacobson.iter().all(|&x| a.is_nilpotent(x));
    StructureVerdict {
        property_holds,
        commutative,
        local,
        jacobson_nil,
        consistent: property_holds == (commutative && local && jacobson_nil),
    }
}

/// Noncommutative rings of a corpus that have type `(p, q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoncommutativeSearch {
    pub p: u32,
    pub q: Exponent,
    pub scanned: usize,
    pub noncommutative_scanned: usize,
    pub findings: Vec<String>,
}

pub fn search_noncommutative_type(
    corpus: &[FiniteRing],
    p: u32,
    q: Exponent,
) -> Result<NoncommutativeSearch, super::RingError> {
    let mut findings = Vec::new();
    let mut noncommutative_scanned = 0;
    for r in corpus {
        if r.is_commutative() {
            continue;
        }
        noncommutative_scanned += 1;
        if has_type(r, &super::analyze(r), p, q)? {
            findings.push(r.name().to_string());
        }
    }
    Ok(NoncommutativeSearch {
        p,
        q,
        scanned: corpus.len(),
        noncommutative_scanned,
        findings,
    })
}
