use super::FiniteRing;

/// Nilpotents, units, center and Jacobson radical of a finite ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingAnalysis {
    /// Nilpotency index per element, `None` for non-nilpotents.
    pub nilpotency_index: Vec<Option<u32>>,
    /// Two-sided inverse per element.
    pub inverse: Vec<Option<usize>>,
    pub is_central: Vec<bool>,
    pub in_jacobson: Vec<bool>,
    pub nilpotents: Vec<usize>,
    pub units: Vec<usize>,
    pub center: Vec<usize>,
    pub central_units: Vec<usize>,
    pub jacobson: Vec<usize>,
}

impl RingAnalysis {
    pub fn is_nilpotent(&self, x: usize) -> bool {
        self.nilpotency_index[x].is_some()
    }

    pub fn is_unit(&self, x: usize) -> bool {
        self.inverse[x].is_some()
    }

    pub fn is_central_unit(&self, x: usize) -> bool {
        self.is_central[x] && self.is_unit(x)
    }

    pub fn max_nilpotency_index(&self) -> u32 {
        self.nilpotency_index
            .iter()
            .flatten()
            .copied()
            .max()
            .unwrap_or(1)
    }
}

fn nilpotency_index(r: &FiniteRing, x: usize) -> Option<u32> {
    // A nilpotent's powers are distinct until they hit zero.
    let mut power = x;
    for k in 1..=r.size() as u32 {
        if power == r.zero() {
            return Some(k);
        }
        power = r.mul(power, x);
    }
    None
}

pub fn analyze(r: &FiniteRing) -> RingAnalysis {
    let nilpotency_index: Vec<Option<u32>> = r.elements().map(|x| nilpotency_index(r, x)).collect();
    // In a finite ring a one-sided inverse is two-sided.
    let inverse: Vec<Option<usize>> = r
        .elements()
        .map(|x| {
            r.elements()
                .find(|&y| r.mul(x, y) == r.one() && r.mul(y, x) == r.one())
        })
        .collect();
    let is_central: Vec<bool> = r
        .elements()
        .map(|x| r.elements().all(|y| r.mul(x, y) == r.mul(y, x)))
        .collect();
    let in_jacobson: Vec<bool> = r
        .elements()
        .map(|x| {
            r.elements()
                .all(|y| inverse[r.sub(r.one(), r.mul(y, x))].is_some())
        })
        .collect();
    let collect =
        |pred: &dyn Fn(usize) -> bool| r.elements().filter(|&x| pred(x)).collect::<Vec<_>>();
    RingAnalysis {
        nilpotents: collect(&|x| nilpotency_index[x].is_some()),
        units: collect(&|x| inverse[x].is_some()),
        center: collect(&|x| is_central[x]),
        central_units: collect(&|x| is_central[x] && inverse[x].is_some()),
        jacobson: collect(&|x| in_jacobson[x]),
        nilpotency_index,
        inverse,
        is_central,
        in_jacobson,
    }
}

/// Non-units closed under addition (in a nonzero ring) means local.
pub(crate) fn is_local(r: &FiniteRing, a: &RingAnalysis) -> bool {
    let non_units: Vec<usize> = r.elements().filter(|&x| !a.is_unit(x)).collect();
    r.one() != r.zero()
        && non_units
            .iter()
            .all(|&x| non_units.iter().all(|&y| !a.is_unit(r.add(x, y))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(r: &FiniteRing, xs: &[usize]) -> Vec<String> {
        xs.iter().map(|&x| r.label(x).to_string()).collect()
    }

    #[test]
    fn z4() {
        let r = FiniteRing::zmod(4).unwrap();
        let a = analyze(&r);
        assert_eq!(a.nilpotents, vec![0, 2]);
        assert_eq!(a.units, vec![1, 3]);
        assert_eq!(a.center, vec![0, 1, 2, 3]);
        assert_eq!(a.jacobson, vec![0, 2]);
        assert!(is_local(&r, &a));
    }

    #[test]
    fn m2_gf2() {
        let gf2 = FiniteRing::zmod(2).unwrap();
        let r = FiniteRing::matrix(2, &gf2).unwrap();
        let a = analyze(&r);
        assert_eq!(a.units.len(), 6);
        assert_eq!(
            labels(&r, &a.center),
            vec!["[[0,0],[0,0]]", "[[1,0],[0,1]]"]
        );
        assert_eq!(a.jacobson, vec![r.zero()]);
        let mut nil = labels(&r, &a.nilpotents);
        nil.sort();
        assert_eq!(
            nil,
            vec![
                "[[0,0],[0,0]]",
                "[[0,0],[1,0]]",
                "[[0,1],[0,0]]",
                "[[1,1],[1,1]]"
            ]
        );
        assert!(!is_local(&r, &a));
    }

    #[test]
    fn gf4_is_a_field() {
        let r = FiniteRing::galois(2, 2).unwrap();
        let a = analyze(&r);
        assert_eq!(a.nilpotents, vec![0]);
        assert_eq!(a.units.len(), 3);
        assert_eq!(a.jacobson, vec![0]);
    }

    #[test]
    fn jacobson_is_an_ideal_with_units_above_it() {
        for r in [
            FiniteRing::zmod(12).unwrap(),
            FiniteRing::upper_triangular(2, &FiniteRing::zmod(3).unwrap()).unwrap(),
            FiniteRing::quotient_poly(&FiniteRing::zmod(2).unwrap(), &[0, 0, 0, 1]).unwrap(),
        ] {
            let a = analyze(&r);
            for &x in &a.jacobson {
                assert!(a.is_unit(r.add(r.one(), x)));
                for &y in &a.jacobson {
                    assert!(a.in_jacobson[r.add(x, y)]);
                }
                for s in r.elements() {
                    assert!(a.in_jacobson[r.mul(s, x)] && a.in_jacobson[r.mul(x, s)]);
                }
            }
            if r.is_commutative() {
                assert_eq!(a.center.len(), r.size());
            }
            assert!(a
                .central_units
                .iter()
                .all(|&u| a.is_central[u] && a.is_unit(u)));
        }
    }
}
