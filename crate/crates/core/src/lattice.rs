//! Finite bounded lattices with precomputed meet/join tables.

use crate::error::{Budget, Error, Result};
use crate::subset::ElementSubset;

/// A finite bounded lattice over carrier indices `0..n`.
///
/// The order matrix is validated and the meet/join tables, bottom and top are
/// derived at construction time; everything downstream assumes totality.
/// Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    n: usize,
    names: Vec<String>,
    leq: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl FiniteLattice {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty carriers
    }

    /// The one-element lattice (0 = 1) is legal here; modules that need
    /// 0 != 1 flag it as degenerate themselves.
    pub fn is_trivial(&self) -> bool {
        self.n == 1
    }

    pub fn name(&self, p: usize) -> &str {
        &self.names[p]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    #[inline]
    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.leq[p * self.n + q]
    }

    #[inline]
    pub fn meet(&self, p: usize, q: usize) -> usize {
        self.meet[p * self.n + q]
    }

    #[inline]
    pub fn join(&self, p: usize, q: usize) -> usize {
        self.join[p * self.n + q]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Least upper bound of a subset of the carrier; the empty join is bottom.
    pub fn join_of(&self, u: &ElementSubset) -> usize {
        assert_eq!(u.carrier(), self.n);
        u.iter().fold(self.bottom, |acc, p| self.join(acc, p))
    }

    /// Greatest lower bound of a subset; the empty meet is top.
    pub fn meet_of(&self, u: &ElementSubset) -> usize {
        assert_eq!(u.carrier(), self.n);
        u.iter().fold(self.top, |acc, p| self.meet(acc, p))
    }
}

/// A join-generating family: every element is the join of the members below it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseFamily {
    carrier: usize,
    members: Vec<usize>,
}

impl BaseFamily {
    /// Wrap a user-supplied base, checking the join-generation invariant.
    pub fn new(lattice: &FiniteLattice, members: Vec<usize>) -> Result<Self> {
        for &a in &members {
            if a >= lattice.len() {
                return Err(Error::CarrierMismatch {
                    expected: lattice.len(),
                    got: a,
                });
            }
        }
        let base = BaseFamily {
            carrier: lattice.len(),
            members,
        };
        for p in lattice.elements() {
            if base.generate(lattice, p) != p {
                return Err(Error::NotOverlapAlgebra {
                    axiom: "base join-generation",
                });
            }
        }
        Ok(base)
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Join of all members below `p`.
    pub fn generate(&self, lattice: &FiniteLattice, p: usize) -> usize {
        self.members
            .iter()
            .filter(|&&a| lattice.leq(a, p))
            .fold(lattice.bottom(), |acc, &a| lattice.join(acc, a))
    }

    /// Members below `p`.
    pub fn below<'a>(
        &'a self,
        lattice: &'a FiniteLattice,
        p: usize,
    ) -> impl Iterator<Item = usize> + 'a {
        self.members.iter().copied().filter(move |&a| lattice.leq(a, p))
    }
}

/// Validate an order matrix and derive the lattice structure.
pub fn build_lattice(names: Vec<String>, leq: &[Vec<bool>]) -> Result<FiniteLattice> {
    let n = leq.len();
    if n == 0 {
        return Err(Error::NoBounds);
    }
    let limit = Budget::default().max_lattice_elements;
    if n > limit {
        return Err(Error::SizeLimit {
            requested: n,
            limit,
        });
    }
    for row in leq {
        if row.len() != n {
            return Err(Error::NotPoset {
                reason: "order matrix is not square".into(),
            });
        }
    }
    let names = if names.is_empty() {
        (0..n).map(|i| i.to_string()).collect()
    } else if names.len() == n {
        names
    } else {
        return Err(Error::CarrierMismatch {
            expected: n,
            got: names.len(),
        });
    };

    let at = |p: usize, q: usize| leq[p][q];
    for p in 0..n {
        if !at(p, p) {
            return Err(Error::NotPoset {
                reason: format!("reflexivity fails at {p}"),
            });
        }
        for q in 0..n {
            if p != q && at(p, q) && at(q, p) {
                return Err(Error::NotPoset {
                    reason: format!("antisymmetry fails at ({p},{q})"),
                });
            }
            for r in 0..n {
                if at(p, q) && at(q, r) && !at(p, r) {
                    return Err(Error::NotPoset {
                        reason: format!("transitivity fails at ({p},{q},{r})"),
                    });
                }
            }
        }
    }

    let mut meet = vec![0usize; n * n];
    let mut join = vec![0usize; n * n];
    for p in 0..n {
        for q in 0..n {
            meet[p * n + q] = bound(n, &at, p, q, true)
                .ok_or(Error::NotLattice { p, q, kind: "meet" })?;
            join[p * n + q] = bound(n, &at, p, q, false)
                .ok_or(Error::NotLattice { p, q, kind: "join" })?;
        }
    }

    // Meet/join totality forces global bounds.
    let bottom = (0..n).fold(0, |acc, p| meet[acc * n + p]);
    let top = (0..n).fold(0, |acc, p| join[acc * n + p]);
    debug_assert!((0..n).all(|p| at(bottom, p) && at(p, top)));

    let flat: Vec<bool> = (0..n * n).map(|i| leq[i / n][i % n]).collect();
    Ok(FiniteLattice {
        n,
        names,
        leq: flat,
        meet,
        join,
        bottom,
        top,
    })
}

/// Greatest lower bound (meet=true) or least upper bound of a pair, if unique.
fn bound(
    n: usize,
    at: &impl Fn(usize, usize) -> bool,
    p: usize,
    q: usize,
    meet: bool,
) -> Option<usize> {
    let is_bnd = |r: usize| {
        if meet {
            at(r, p) && at(r, q)
        } else {
            at(p, r) && at(q, r)
        }
    };
    let mut best: Option<usize> = None;
    for r in 0..n {
        if !is_bnd(r) {
            continue;
        }
        // r is an extremal bound if every other bound is on the right side.
        let extremal = (0..n).all(|s| {
            !is_bnd(s) || if meet { at(s, r) } else { at(r, s) }
        });
        if extremal {
            best = Some(r);
            break;
        }
    }
    best
}

/// The lattice of all subsets of a `k`-element ground set, ordered by
/// inclusion, together with its singleton base.
pub fn powerset_lattice(k: usize, budget: &Budget) -> Result<(FiniteLattice, BaseFamily)> {
    if k >= 63 || (1usize << k) > budget.max_lattice_elements {
        return Err(Error::SizeLimit {
            requested: 1usize.checked_shl(k as u32).unwrap_or(usize::MAX),
            limit: budget.max_lattice_elements,
        });
    }
    let n = 1usize << k;
    let names: Vec<String> = (0..n).map(|m| mask_name(k, m as u64)).collect();
    let leq: Vec<Vec<bool>> = (0..n)
        .map(|a| (0..n).map(|b| a & !b == 0).collect())
        .collect();
    let lattice = build_lattice(names, &leq)?;
    let singletons: Vec<usize> = (0..k).map(|i| 1usize << i).collect();
    let base = BaseFamily::new(&lattice, singletons)?;
    Ok((lattice, base))
}

pub fn mask_name(k: usize, mask: u64) -> String {
    let elems: Vec<String> = (0..k)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| i.to_string())
        .collect();
    format!("{{{}}}", elems.join(","))
}

/// The largest q with p /\ q = 0, if it exists.
pub fn pseudocomplement(lattice: &FiniteLattice, p: usize) -> Result<usize> {
    let disjoint: Vec<usize> = lattice
        .elements()
        .filter(|&q| lattice.meet(p, q) == lattice.bottom())
        .collect();
    disjoint
        .iter()
        .copied()
        .find(|&q| disjoint.iter().all(|&r| lattice.leq(r, q)))
        .ok_or(Error::NoPseudocomplement { p })
}

/// Pseudocomplement table for the whole carrier, or the first failing element.
pub fn total_pseudocomplement(lattice: &FiniteLattice) -> Result<Vec<usize>> {
    lattice
        .elements()
        .map(|p| pseudocomplement(lattice, p))
        .collect()
}

/// `p -> q` as the join of base elements `a` with `a /\ p <= q`, verified
/// against the residuation law.
pub fn heyting_implication(
    lattice: &FiniteLattice,
    base: &BaseFamily,
    p: usize,
    q: usize,
) -> Result<usize> {
    let r = base
        .members()
        .iter()
        .filter(|&&a| lattice.leq(lattice.meet(a, p), q))
        .fold(lattice.bottom(), |acc, &a| lattice.join(acc, a));
    for x in lattice.elements() {
        if lattice.leq(x, r) != lattice.leq(lattice.meet(x, p), q) {
            return Err(Error::NotHeyting { p, q, witness: x });
        }
    }
    Ok(r)
}

pub fn is_distributive(lattice: &FiniteLattice) -> bool {
    let n = lattice.len();
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                let lhs = lattice.meet(p, lattice.join(q, r));
                let rhs = lattice.join(lattice.meet(p, q), lattice.meet(p, r));
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// Complemented and distributive.
pub fn is_boolean(lattice: &FiniteLattice) -> bool {
    is_distributive(lattice)
        && lattice.elements().all(|p| {
            lattice.elements().any(|c| {
                lattice.meet(p, c) == lattice.bottom() && lattice.join(p, c) == lattice.top()
            })
        })
}

/// The join-irreducible elements: nonzero and not a join of strictly smaller
/// elements. They always join-generate a finite lattice.
pub fn minimal_base(lattice: &FiniteLattice) -> BaseFamily {
    let members: Vec<usize> = lattice
        .elements()
        .filter(|&p| {
            if p == lattice.bottom() {
                return false;
            }
            let below = lattice
                .elements()
                .filter(|&q| lattice.leq(q, p) && q != p)
                .fold(lattice.bottom(), |acc, q| lattice.join(acc, q));
            below != p
        })
        .collect();
    BaseFamily::new(lattice, members).expect("join-irreducibles generate a finite lattice")
}

/// Exhaustive check of the meet/join algebra laws; used by tests and the
/// bundled corpus as an internal-consistency oracle.
pub fn lattice_laws_hold(lattice: &FiniteLattice) -> bool {
    let n = lattice.len();
    for p in 0..n {
        if lattice.meet(p, p) != p || lattice.join(p, p) != p {
            return false;
        }
        for q in 0..n {
            if lattice.meet(p, q) != lattice.meet(q, p)
                || lattice.join(p, q) != lattice.join(q, p)
                || lattice.meet(p, lattice.join(p, q)) != p
                || lattice.join(p, lattice.meet(p, q)) != p
            {
                return false;
            }
            for r in 0..n {
                if lattice.meet(p, lattice.meet(q, r)) != lattice.meet(lattice.meet(p, q), r)
                    || lattice.join(p, lattice.join(q, r)) != lattice.join(lattice.join(p, q), r)
                {
                    return false;
                }
            }
        }
    }
    // join over the whole carrier is top, over the empty set bottom
    lattice.join_of(&ElementSubset::full(n)) == lattice.top()
        && lattice.join_of(&ElementSubset::empty(n)) == lattice.bottom()
}

/// Convenience constructors for the standard small test lattices.
pub mod shapes {
    use super::*;

    /// Chain 0 < 1 < .. < n-1.
    pub fn chain(n: usize) -> FiniteLattice {
        let leq: Vec<Vec<bool>> = (0..n).map(|p| (0..n).map(|q| p <= q).collect()).collect();
        build_lattice(Vec::new(), &leq).expect("chain is a lattice")
    }

    /// The diamond M3: bottom, three incomparable middles, top.
    pub fn m3() -> FiniteLattice {
        let leq = order_from_pairs(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]);
        build_lattice(
            ["0", "a", "b", "c", "1"].map(String::from).to_vec(),
            &leq,
        )
        .expect("M3 is a lattice")
    }

    /// The pentagon N5.
    pub fn n5() -> FiniteLattice {
        let leq = order_from_pairs(5, &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 4), (0, 3)]);
        build_lattice(
            ["0", "a", "b", "c", "1"].map(String::from).to_vec(),
            &leq,
        )
        .expect("N5 is a lattice")
    }

    /// Reflexive-transitive closure of a covering/edge list.
    pub fn order_from_pairs(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<bool>> {
        let mut leq = vec![vec![false; n]; n];
        for p in 0..n {
            leq[p][p] = true;
        }
        for &(p, q) in pairs {
            leq[p][q] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        leq
    }
}

/// Check the general pseudocomplement law p <= --p whenever `-` is total.
pub fn double_negation_expansive(lattice: &FiniteLattice) -> Result<bool> {
    let neg = total_pseudocomplement(lattice)?;
    Ok(lattice.elements().all(|p| lattice.leq(p, neg[neg[p]])))
}

#[cfg(test)]
mod tests {
    use super::shapes::*;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn trivial_lattice() {
        let l = build_lattice(vec!["*".into()], &[vec![true]]).unwrap();
        assert_eq!(l.bottom(), l.top());
        assert!(l.is_trivial());
        assert!(minimal_base(&l).is_empty());
    }

    #[test]
    fn three_chain() {
        let l = chain(3);
        assert_eq!(l.bottom(), 0);
        assert_eq!(l.top(), 2);
        assert_eq!(l.meet(1, 2), 1);
        assert_eq!(l.join(1, 2), 2);
        assert!(lattice_laws_hold(&l));
        // both m and 1 are join-irreducible in a chain
        assert_eq!(minimal_base(&l).members(), &[1, 2]);
        assert!(is_distributive(&l));
        assert!(!is_boolean(&l)); // m has no complement
    }

    #[test]
    fn non_lattice_rejected() {
        // incomparable atoms over a bottom, no top: 1 and 2 have no join
        let leq = order_from_pairs(4, &[(0, 1), (0, 2), (0, 3)]);
        let err = build_lattice(Vec::new(), &leq).unwrap_err();
        assert!(matches!(err, Error::NotLattice { kind: "join", .. }));
    }

    #[test]
    fn not_poset_rejected() {
        let err = build_lattice(
            Vec::new(),
            &[vec![true, true], vec![true, true]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotPoset { .. }));
        let err = build_lattice(Vec::new(), &[vec![false]]).unwrap_err();
        assert!(matches!(err, Error::NotPoset { .. }));
    }

    #[test]
    fn powerset_basics() {
        let budget = Budget::default();
        let (l0, b0) = powerset_lattice(0, &budget).unwrap();
        assert_eq!(l0.len(), 1);
        assert!(b0.is_empty());

        let (l2, b2) = powerset_lattice(2, &budget).unwrap();
        assert_eq!(l2.len(), 4);
        assert!(is_boolean(&l2));
        assert_eq!(b2.members(), &[0b01, 0b10]);

        let (l3, _) = powerset_lattice(3, &budget).unwrap();
        assert_eq!(l3.len(), 8);
        // atoms are the three singletons
        let atoms: Vec<usize> = l3
            .elements()
            .filter(|&p| {
                p != l3.bottom()
                    && l3
                        .elements()
                        .all(|q| !(l3.leq(q, p) && q != p && q != l3.bottom()))
            })
            .collect();
        assert_eq!(atoms, vec![0b001, 0b010, 0b100]);
    }

    #[test]
    fn powerset_size_limit() {
        let budget = Budget::small();
        assert!(matches!(
            powerset_lattice(20, &budget),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn join_of_examples() {
        let budget = Budget::default();
        let (l2, _) = powerset_lattice(2, &budget).unwrap();
        assert_eq!(l2.join_of(&ElementSubset::empty(4)), l2.bottom());
        assert_eq!(
            l2.join_of(&ElementSubset::from_indices(4, [0b01, 0b10])),
            0b11
        );
        let c = chain(3);
        assert_eq!(c.join_of(&ElementSubset::from_indices(3, [1, 2])), 2);
    }

    #[test]
    fn pseudocomplement_examples() {
        let budget = Budget::default();
        let (l2, _) = powerset_lattice(2, &budget).unwrap();
        assert_eq!(pseudocomplement(&l2, 0b01).unwrap(), 0b10);
        assert_eq!(pseudocomplement(&l2, l2.bottom()).unwrap(), l2.top());
        let c = chain(3);
        assert_eq!(pseudocomplement(&c, 1).unwrap(), 0);
        // M3: middles have no largest disjoint element? they do: the other two
        // middles are not disjoint pairwise-joinable; enumerate directly.
        // (brute-force oracle inline)
        let m = m3();
        for p in m.elements() {
            let disjoint: Vec<usize> = m
                .elements()
                .filter(|&q| m.meet(p, q) == m.bottom())
                .collect();
            let largest = disjoint
                .iter()
                .copied()
                .find(|&q| disjoint.iter().all(|&r| m.leq(r, q)));
            match largest {
                Some(q) => assert_eq!(pseudocomplement(&m, p).unwrap(), q),
                None => assert!(pseudocomplement(&m, p).is_err()),
            }
        }
    }

    #[test]
    fn heyting_examples() {
        let budget = Budget::default();
        let (l2, b2) = powerset_lattice(2, &budget).unwrap();
        for p in l2.elements() {
            assert_eq!(heyting_implication(&l2, &b2, p, p).unwrap(), l2.top());
        }
        assert_eq!(heyting_implication(&l2, &b2, 0b01, 0b10).unwrap(), 0b10);
        let c = chain(3);
        let cb = minimal_base(&c);
        assert_eq!(heyting_implication(&c, &cb, 1, 0).unwrap(), 0);
        // non-distributive: residuation fails somewhere on M3
        let m = m3();
        let mb = minimal_base(&m);
        let failed = m.elements().any(|p| {
            m.elements()
                .any(|q| heyting_implication(&m, &mb, p, q).is_err())
        });
        assert!(failed);
    }

    #[test]
    fn distributivity_and_boolean() {
        assert!(is_distributive(&chain(3)));
        assert!(!is_distributive(&m3()));
        assert!(!is_distributive(&n5()));
        let (l3, _) = powerset_lattice(3, &Budget::default()).unwrap();
        assert!(is_distributive(&l3));
        assert!(is_boolean(&l3));
        assert!(!is_boolean(&m3()));
    }

    #[test]
    fn minimal_base_generates() {
        for l in [chain(4), m3(), n5()] {
            let base = minimal_base(&l);
            for p in l.elements() {
                assert_eq!(base.generate(&l, p), p);
            }
        }
        let (l2, _) = powerset_lattice(2, &Budget::default()).unwrap();
        assert_eq!(minimal_base(&l2).members(), &[0b01, 0b10]);
    }

    #[test]
    fn double_negation() {
        assert!(double_negation_expansive(&chain(3)).unwrap());
        let (l3, _) = powerset_lattice(3, &Budget::default()).unwrap();
        assert!(double_negation_expansive(&l3).unwrap());
    }

    proptest! {
        // random order matrices: whenever construction succeeds, the
        // algebraic laws hold exhaustively
        #[test]
        fn built_lattices_satisfy_laws(n in 1usize..6,
                                       edges in prop::collection::vec((0usize..6, 0usize..6), 0..12)) {
            let pairs: Vec<(usize,usize)> = edges.into_iter()
                .filter(|&(p,q)| p < n && q < n && p < q)
                .collect();
            let leq = order_from_pairs(n, &pairs);
            if let Ok(l) = build_lattice(Vec::new(), &leq) {
                prop_assert!(lattice_laws_hold(&l));
                let base = minimal_base(&l);
                for p in l.elements() {
                    prop_assert_eq!(base.generate(&l, p), p);
                }
            }
        }
    }
}
