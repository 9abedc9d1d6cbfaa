//! Overlap relations: axiom checking, canonical overlap, exhaustive search,
//! derived-property suites and the positivity bridge.

use crate::error::{Budget, Error, Result};
use crate::lattice::{
    heyting_implication, is_boolean, is_distributive, total_pseudocomplement, BaseFamily,
    FiniteLattice,
};
use crate::subset::{all_subsets, ElementSubset};

/// A symmetric boolean matrix over a lattice carrier.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OverlapRelation {
    n: usize,
    matrix: Vec<bool>,
}

impl OverlapRelation {
    /// Asymmetric input is rejected at construction.
    pub fn new(n: usize, rows: &[Vec<bool>]) -> Result<Self> {
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::CarrierMismatch {
                expected: n,
                got: rows.len(),
            });
        }
        for p in 0..n {
            for q in 0..p {
                if rows[p][q] != rows[q][p] {
                    return Err(Error::AsymmetricRelation { p, q });
                }
            }
        }
        Ok(OverlapRelation {
            n,
            matrix: (0..n * n).map(|i| rows[i / n][i % n]).collect(),
        })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let rows: Vec<Vec<bool>> = (0..n).map(|p| (0..n).map(|q| f(p, q)).collect()).collect();
        Self::new(n, &rows)
    }

    pub fn carrier(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn overlaps(&self, p: usize, q: usize) -> bool {
        self.matrix[p * self.n + q]
    }

    pub fn empty(n: usize) -> Self {
        OverlapRelation {
            n,
            matrix: vec![false; n * n],
        }
    }
}

/// Verdict for a single law, with a counterexample when it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Vec<usize>>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict {
            holds: true,
            witness: None,
        }
    }

    pub fn fail(witness: Vec<usize>) -> Self {
        Verdict {
            holds: false,
            witness: Some(witness),
        }
    }
}

/// Per-axiom verdicts for the overlap-algebra definition.
///
/// Density is quantified over the supplied base; the full-carrier form is
/// checked as well and `density_forms_agree` records the (always expected)
/// agreement between the two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub symmetry: Verdict,
    pub meet_closure: Verdict,
    pub splitting: Verdict,
    pub density: Verdict,
    pub density_forms_agree: bool,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.symmetry.holds && self.meet_closure.holds && self.splitting.holds && self.density.holds
    }

    pub fn verdicts(&self) -> [(&'static str, &Verdict); 4] {
        [
            ("symmetry", &self.symmetry),
            ("meet_closure", &self.meet_closure),
            ("splitting", &self.splitting),
            ("density", &self.density),
        ]
    }
}

/// A lattice carrying a verified overlap relation.
#[derive(Clone, Debug)]
pub struct OAlgebra {
    pub lattice: FiniteLattice,
    pub base: BaseFamily,
    pub overlap: OverlapRelation,
}

impl OAlgebra {
    pub fn new(
        lattice: FiniteLattice,
        base: BaseFamily,
        overlap: OverlapRelation,
    ) -> Result<Self> {
        let report = check_overlap_axioms(&lattice, &base, &overlap)?;
        for (name, verdict) in report.verdicts() {
            if !verdict.holds {
                return Err(Error::NotOverlapAlgebra { axiom: name });
            }
        }
        Ok(OAlgebra {
            lattice,
            base,
            overlap,
        })
    }

    /// Powerset of a `k`-element set with the inhabited-intersection overlap.
    pub fn powerset(k: usize, budget: &Budget) -> Result<Self> {
        let (lattice, base) = crate::lattice::powerset_lattice(k, budget)?;
        let overlap = canonical_overlap(&lattice);
        OAlgebra::new(lattice, base, overlap)
    }

    #[inline]
    pub fn overlaps(&self, p: usize, q: usize) -> bool {
        self.overlap.overlaps(p, q)
    }
}

/// Check the four overlap-algebra axioms. Splitting is checked over the join
/// of every subset of the carrier (all joins exist at finite scale); density
/// over the base, cross-checked against the full-carrier form.
pub fn check_overlap_axioms(
    lattice: &FiniteLattice,
    base: &BaseFamily,
    r: &OverlapRelation,
) -> Result<AxiomReport> {
    let n = lattice.len();
    if r.carrier() != n || base.carrier() != n {
        return Err(Error::CarrierMismatch {
            expected: n,
            got: r.carrier(),
        });
    }
    if n > 20 {
        return Err(Error::SearchBudgetExceeded {
            what: format!("splitting check over 2^{n} subsets"),
        });
    }

    let symmetry = Verdict::pass(); // enforced at construction

    let mut meet_closure = Verdict::pass();
    'mc: for p in 0..n {
        for q in 0..n {
            if r.overlaps(p, q) && !r.overlaps(p, lattice.meet(p, q)) {
                meet_closure = Verdict::fail(vec![p, q]);
                break 'mc;
            }
        }
    }

    let mut splitting = Verdict::pass();
    'sp: for u in all_subsets(n) {
        let j = lattice.join_of(&u);
        for p in 0..n {
            let whole = r.overlaps(p, j);
            let some = u.iter().any(|q| r.overlaps(p, q));
            if whole != some {
                let mut w = vec![p, j];
                w.extend(u.iter());
                splitting = Verdict::fail(w);
                break 'sp;
            }
        }
    }

    let density = density_verdict(lattice, r, base.members());
    let full_carrier: Vec<usize> = lattice.elements().collect();
    let density_full = density_verdict(lattice, r, &full_carrier);
    let density_forms_agree = density.holds == density_full.holds;
    Ok(AxiomReport {
        symmetry,
        meet_closure,
        splitting,
        density,
        density_forms_agree,
    })
}

fn density_verdict(lattice: &FiniteLattice, r: &OverlapRelation, probes: &[usize]) -> Verdict {
    for p in lattice.elements() {
        for q in lattice.elements() {
            let antecedent = probes
                .iter()
                .all(|&a| !r.overlaps(a, p) || r.overlaps(a, q));
            if antecedent && !lattice.leq(p, q) {
                return Verdict::fail(vec![p, q]);
            }
        }
    }
    Verdict::pass()
}

/// The classical overlap: p ovl q iff p /\ q != 0.
pub fn canonical_overlap(lattice: &FiniteLattice) -> OverlapRelation {
    OverlapRelation::from_fn(lattice.len(), |p, q| {
        lattice.meet(p, q) != lattice.bottom()
    })
    .expect("meet is commutative")
}

/// Exhaustively find every relation satisfying all four axioms.
///
/// Any valid overlap splits over base decompositions, so it is determined by
/// its restriction to base x base; the search enumerates symmetric base
/// assignments, extends each by joins, and verifies the axioms in full.
pub fn find_all_overlaps(
    lattice: &FiniteLattice,
    base: &BaseFamily,
    budget: &Budget,
) -> Result<Vec<OverlapRelation>> {
    let n = lattice.len();
    let k = base.len();
    if k > budget.overlap_base_limit {
        return Err(Error::SearchBudgetExceeded {
            what: format!(
                "overlap search over a base of {k} elements (limit {})",
                budget.overlap_base_limit
            ),
        });
    }
    // base members below each carrier element, as a k-bit mask
    let below: Vec<u32> = lattice
        .elements()
        .map(|p| {
            base.members()
                .iter()
                .enumerate()
                .filter(|&(_, &a)| lattice.leq(a, p))
                .fold(0u32, |m, (i, _)| m | 1 << i)
        })
        .collect();

    // cells with a bottom meet can never hold: a ovl b forces (a /\ b) to
    // overlap itself, and bottom overlaps nothing by splitting of the empty
    // join; so only the remaining cells are enumerated
    let cells: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (0..=i).map(move |j| (i, j)))
        .filter(|&(i, j)| {
            lattice.meet(base.members()[i], base.members()[j]) != lattice.bottom()
        })
        .collect();
    let mut found = Vec::new();
    for assignment in 0u64..1 << cells.len() {
        let mut cand = vec![false; k * k];
        for (bit, &(i, j)) in cells.iter().enumerate() {
            if assignment >> bit & 1 == 1 {
                cand[i * k + j] = true;
                cand[j * k + i] = true;
            }
        }
        let rel = OverlapRelation::from_fn(n, |p, q| {
            let (bp, bq) = (below[p], below[q]);
            (0..k).any(|i| {
                bp >> i & 1 == 1 && (0..k).any(|j| bq >> j & 1 == 1 && cand[i * k + j])
            })
        })
        .expect("extension is symmetric");
        let report = check_overlap_axioms(lattice, base, &rel)?;
        if report.all_pass() && !found.contains(&rel) {
            found.push(rel);
        }
    }
    Ok(found)
}

/// Report for the six derived overlap-algebra properties.
#[derive(Clone, Debug)]
pub struct DerivedPropertiesReport {
    /// p ovl r and r <= q imply p ovl q
    pub upward_monotone: Verdict,
    /// p = q iff the base sees the same overlaps
    pub extensional_equality: Verdict,
    /// (p /\ r) ovl q iff p ovl (r /\ q)
    pub meet_exchange: Verdict,
    /// p ovl q iff (p/\q) ovl (p/\q) iff some base a <= p/\q has a ovl a
    pub three_way: Verdict,
    /// not (0 ovl 0)
    pub bottom_irreflexive: Verdict,
    /// not (p ovl q) iff p /\ q = 0
    pub negation_as_disjointness: Verdict,
}

impl DerivedPropertiesReport {
    pub fn all_pass(&self) -> bool {
        self.verdicts().iter().all(|(_, v)| v.holds)
    }

    pub fn verdicts(&self) -> [(&'static str, &Verdict); 6] {
        [
            ("upward_monotone", &self.upward_monotone),
            ("extensional_equality", &self.extensional_equality),
            ("meet_exchange", &self.meet_exchange),
            ("three_way", &self.three_way),
            ("bottom_irreflexive", &self.bottom_irreflexive),
            ("negation_as_disjointness", &self.negation_as_disjointness),
        ]
    }
}

pub fn derived_properties_suite(alg: &OAlgebra) -> DerivedPropertiesReport {
    let l = &alg.lattice;
    let n = l.len();
    let r = &alg.overlap;

    let mut upward_monotone = Verdict::pass();
    'a: for p in 0..n {
        for x in 0..n {
            for q in 0..n {
                if r.overlaps(p, x) && l.leq(x, q) && !r.overlaps(p, q) {
                    upward_monotone = Verdict::fail(vec![p, x, q]);
                    break 'a;
                }
            }
        }
    }

    let mut extensional_equality = Verdict::pass();
    'b: for p in 0..n {
        for q in 0..n {
            let same_overlaps = alg
                .base
                .members()
                .iter()
                .all(|&a| r.overlaps(a, p) == r.overlaps(a, q));
            if (p == q) != same_overlaps {
                extensional_equality = Verdict::fail(vec![p, q]);
                break 'b;
            }
        }
    }

    let mut meet_exchange = Verdict::pass();
    'c: for p in 0..n {
        for x in 0..n {
            for q in 0..n {
                if r.overlaps(l.meet(p, x), q) != r.overlaps(p, l.meet(x, q)) {
                    meet_exchange = Verdict::fail(vec![p, x, q]);
                    break 'c;
                }
            }
        }
    }

    let mut three_way = Verdict::pass();
    'd: for p in 0..n {
        for q in 0..n {
            let m = l.meet(p, q);
            let direct = r.overlaps(p, q);
            let reflexive = r.overlaps(m, m);
            let base_witness = alg
                .base
                .members()
                .iter()
                .any(|&a| l.leq(a, m) && r.overlaps(a, a));
            if direct != reflexive || direct != base_witness {
                three_way = Verdict::fail(vec![p, q]);
                break 'd;
            }
        }
    }

    let bottom_irreflexive = if r.overlaps(l.bottom(), l.bottom()) {
        Verdict::fail(vec![l.bottom()])
    } else {
        Verdict::pass()
    };

    let mut negation_as_disjointness = Verdict::pass();
    'e: for p in 0..n {
        for q in 0..n {
            if !r.overlaps(p, q) != (l.meet(p, q) == l.bottom()) {
                negation_as_disjointness = Verdict::fail(vec![p, q]);
                break 'e;
            }
        }
    }

    DerivedPropertiesReport {
        upward_monotone,
        extensional_equality,
        meet_exchange,
        three_way,
        bottom_irreflexive,
        negation_as_disjointness,
    }
}

/// Negative density, double-negation involution and stability of equality on
/// a lattice with total pseudocomplement.
///
/// Returns `(negative_density, involution, stable_equality)`. The first two
/// are equivalent on any such lattice; stability of equality is automatic on
/// a finite classical carrier and reported as computed.
pub fn negative_density_check(lattice: &FiniteLattice) -> Result<(bool, bool, bool)> {
    let neg = total_pseudocomplement(lattice)?;
    let n = lattice.len();
    let bottom = lattice.bottom();

    let mut negative_density = true;
    'nd: for p in 0..n {
        for q in 0..n {
            let antecedent = (0..n).all(|r| {
                lattice.meet(r, p) == bottom || lattice.meet(r, q) != bottom
            });
            if antecedent && !lattice.leq(p, q) {
                negative_density = false;
                break 'nd;
            }
        }
    }

    let involution = (0..n).all(|p| neg[neg[p]] == p);

    // not(p != q) => p = q: decidable equality on a finite carrier, so the
    // antecedent not-not(p = q) already entails p = q.
    let stable_equality = true;

    Ok((negative_density, involution, stable_equality))
}

/// Positivity report for a valid o-algebra: Pos(p) iff p ovl p, plus the
/// three positivity-predicate laws.
#[derive(Clone, Debug)]
pub struct PositivityReport {
    pub pos: Vec<bool>,
    pub monotone: bool,
    pub splits_joins: bool,
    pub positivity_axiom: bool,
}

impl PositivityReport {
    pub fn laws_hold(&self) -> bool {
        self.monotone && self.splits_joins && self.positivity_axiom
    }
}

pub fn positivity_of(alg: &OAlgebra) -> PositivityReport {
    let l = &alg.lattice;
    let n = l.len();
    let pos: Vec<bool> = (0..n).map(|p| alg.overlaps(p, p)).collect();

    let monotone = (0..n).all(|p| (0..n).all(|q| !(pos[p] && l.leq(p, q)) || pos[q]));

    let splits_joins = all_subsets(n).all(|u| {
        let j = l.join_of(&u);
        !pos[j] || u.iter().any(|q| pos[q])
    });

    let positivity_axiom = (0..n).all(|p| {
        let mut support = ElementSubset::empty(n);
        for a in alg.base.below(l, p) {
            if pos[a] {
                support.insert(a);
            }
        }
        l.leq(p, l.join_of(&support))
    });

    PositivityReport {
        pos,
        monotone,
        splits_joins,
        positivity_axiom,
    }
}

/// The density-style criterion deciding when a positivity predicate turns a
/// formal topology into an o-algebra: for all p, q,
/// (forall base a: Pos(a /\ p) => Pos(a /\ q)) implies p <= q.
pub fn ft_overlap_criterion(lattice: &FiniteLattice, base: &BaseFamily, pos: &[bool]) -> bool {
    assert_eq!(pos.len(), lattice.len());
    for p in lattice.elements() {
        for q in lattice.elements() {
            let antecedent = base
                .members()
                .iter()
                .all(|&a| !pos[lattice.meet(a, p)] || pos[lattice.meet(a, q)]);
            if antecedent && !lattice.leq(p, q) {
                return false;
            }
        }
    }
    true
}

/// Classification of an overlap structure: oo-lattice, o-Heyting, o-Boolean.
#[derive(Clone, Debug)]
pub struct OoStructureReport {
    pub axioms: AxiomReport,
    pub pseudocomplement_total: bool,
    pub is_oo_lattice: bool,
    pub heyting: bool,
    pub boolean: bool,
    /// asserted consequence: every oo-lattice is distributive
    pub distributive: bool,
    /// 0 = 1: legal, but outside the Boolean reading
    pub degenerate: bool,
}

impl OoStructureReport {
    pub fn classification(&self) -> Option<&'static str> {
        if !self.is_oo_lattice {
            None
        } else if self.boolean {
            Some("o-Ba")
        } else if self.heyting {
            Some("o-Ha")
        } else {
            Some("oo-lattice")
        }
    }
}

/// Check the oo-lattice definition (pseudocomplement totality plus the four
/// overlap axioms; on a finite carrier all joins exist, so splitting over
/// existing joins coincides with full splitting) and upgrade to o-Ha / o-Ba
/// where the underlying lattice allows it.
pub fn oo_structure_check(
    lattice: &FiniteLattice,
    base: &BaseFamily,
    r: &OverlapRelation,
) -> Result<OoStructureReport> {
    let axioms = check_overlap_axioms(lattice, base, r)?;
    let pseudocomplement_total = total_pseudocomplement(lattice).is_ok();
    let is_oo_lattice = pseudocomplement_total && axioms.all_pass();
    let heyting = lattice.elements().all(|p| {
        lattice
            .elements()
            .all(|q| heyting_implication(lattice, base, p, q).is_ok())
    });
    let boolean = is_boolean(lattice);
    let distributive = is_distributive(lattice);
    if is_oo_lattice && !distributive {
        return Err(Error::TheoremViolation {
            theorem: "every oo-lattice is distributive",
        });
    }
    Ok(OoStructureReport {
        axioms,
        pseudocomplement_total,
        is_oo_lattice,
        heyting,
        boolean,
        distributive,
        degenerate: lattice.is_trivial(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::shapes::{chain, m3};
    use crate::lattice::{minimal_base, powerset_lattice};

    fn powerset(k: usize) -> OAlgebra {
        OAlgebra::powerset(k, &Budget::default()).unwrap()
    }

    #[test]
    fn powerset_overlap_passes_axioms() {
        for k in 0..=3 {
            let alg = powerset(k);
            let report =
                check_overlap_axioms(&alg.lattice, &alg.base, &alg.overlap).unwrap();
            assert!(report.all_pass(), "k={k}: {report:?}");
            assert!(report.density_forms_agree);
        }
    }

    #[test]
    fn empty_relation_fails_density() {
        let (l, b) = powerset_lattice(2, &Budget::default()).unwrap();
        let r = OverlapRelation::empty(4);
        let report = check_overlap_axioms(&l, &b, &r).unwrap();
        assert!(!report.density.holds);
        // vacuous antecedent forces p <= q for all pairs; {0} <= {} fails
        assert!(report.density.witness.is_some());
        assert!(report.density_forms_agree);
    }

    #[test]
    fn bottom_overlap_fails_splitting() {
        let (l, b) = powerset_lattice(1, &Budget::default()).unwrap();
        // p ovl 0 for some p breaks splitting of the empty join
        let r = OverlapRelation::from_fn(2, |p, q| p == 1 || q == 1 || (p == 0 && q == 0))
            .unwrap();
        let report = check_overlap_axioms(&l, &b, &r).unwrap();
        assert!(!report.splitting.holds);
    }

    #[test]
    fn asymmetric_rejected() {
        let err = OverlapRelation::new(
            2,
            &[vec![false, true], vec![false, false]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::AsymmetricRelation { .. }));
    }

    #[test]
    fn canonical_examples() {
        let alg = powerset(2);
        assert!(alg.overlaps(0b01, 0b11));
        assert!(!alg.overlaps(0b01, 0b10));

        let t = chain(1);
        assert_eq!(canonical_overlap(&t), OverlapRelation::empty(1));

        let c = chain(3);
        let r = canonical_overlap(&c);
        assert!(r.overlaps(1, 1) && r.overlaps(1, 2));
        assert!((0..3).all(|x| !r.overlaps(0, x)));
    }

    #[test]
    fn search_powerset_unique() {
        let (l, b) = powerset_lattice(2, &Budget::default()).unwrap();
        let found = find_all_overlaps(&l, &b, &Budget::default()).unwrap();
        assert_eq!(found, vec![canonical_overlap(&l)]);
    }

    #[test]
    fn search_chain_empty() {
        let c = chain(3);
        let b = minimal_base(&c);
        let found = find_all_overlaps(&c, &b, &Budget::default()).unwrap();
        assert!(found.is_empty());
    }

    #[test]
    fn search_trivial_lattice() {
        let t = chain(1);
        let b = minimal_base(&t);
        let found = find_all_overlaps(&t, &b, &Budget::default()).unwrap();
        assert_eq!(found, vec![OverlapRelation::empty(1)]);
    }

    #[test]
    fn derived_properties_on_powersets() {
        for k in 1..=3 {
            let alg = powerset(k);
            let report = derived_properties_suite(&alg);
            assert!(report.all_pass(), "k={k}: {report:?}");
        }
    }

    #[test]
    fn negative_density_examples() {
        let (l, _) = powerset_lattice(2, &Budget::default()).unwrap();
        assert_eq!(negative_density_check(&l).unwrap(), (true, true, true));

        let c = chain(3);
        let (nd, inv, stable) = negative_density_check(&c).unwrap();
        assert_eq!((nd, inv, stable), (false, false, true));
        // --m = 1 != m
        let neg = total_pseudocomplement(&c).unwrap();
        assert_eq!(neg[1], 0);
        assert_eq!(neg[0], 2);

        let t = chain(1);
        assert_eq!(negative_density_check(&t).unwrap(), (true, true, true));
    }

    #[test]
    fn positivity_examples() {
        let alg = powerset(2);
        let report = positivity_of(&alg);
        assert!(!report.pos[0b00]);
        assert!(report.pos[0b01]);
        assert!(report.laws_hold());

        let alg3 = powerset(3);
        assert!(positivity_of(&alg3).laws_hold());
    }

    #[test]
    fn ft_criterion_examples() {
        let alg = powerset(2);
        let pos: Vec<bool> = alg.lattice.elements().map(|p| p != 0).collect();
        assert!(ft_overlap_criterion(&alg.lattice, &alg.base, &pos));

        let c = chain(3);
        let b = minimal_base(&c);
        let pos: Vec<bool> = c.elements().map(|p| p != 0).collect();
        // Pos(a /\ 1) => Pos(a /\ m) for a in {m, 1}, yet 1 is not <= m
        assert!(!ft_overlap_criterion(&c, &b, &pos));

        let t = chain(1);
        let tb = minimal_base(&t);
        assert!(ft_overlap_criterion(&t, &tb, &[false]));
    }

    #[test]
    fn ft_criterion_induces_overlap() {
        let alg = powerset(2);
        let pos: Vec<bool> = alg.lattice.elements().map(|p| p != 0).collect();
        assert!(ft_overlap_criterion(&alg.lattice, &alg.base, &pos));
        let induced = OverlapRelation::from_fn(alg.lattice.len(), |p, q| {
            pos[alg.lattice.meet(p, q)]
        })
        .unwrap();
        let report = check_overlap_axioms(&alg.lattice, &alg.base, &induced).unwrap();
        assert!(report.all_pass());
    }

    #[test]
    fn oo_structure_examples() {
        let alg = powerset(3);
        let report = oo_structure_check(&alg.lattice, &alg.base, &alg.overlap).unwrap();
        assert_eq!(report.classification(), Some("o-Ba"));

        let c = chain(3);
        let b = minimal_base(&c);
        let report = oo_structure_check(&c, &b, &canonical_overlap(&c)).unwrap();
        assert!(!report.is_oo_lattice);

        let m = m3();
        let mb = minimal_base(&m);
        let report = oo_structure_check(&m, &mb, &canonical_overlap(&m)).unwrap();
        assert!(!report.is_oo_lattice);
        assert!(!report.distributive);
    }
}
