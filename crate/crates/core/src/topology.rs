//! Finite inductively generated formal topologies: cover saturation, frame
//! construction, positivity, binary products, the openness condition and the
//! discreteness / open-diagonal theorem.

use crate::error::{Budget, Error, Result};
use crate::lattice::{build_lattice, is_distributive, BaseFamily, FiniteLattice};
use crate::morphism::LatticeMap;
use crate::subset::{all_subsets, ElementSubset};

/// A finite base with total meets and a top, plus cover axioms `a cov U`.
///
/// The cover is generated inductively from the axioms together with
/// reflexivity, order (via base meets) and localization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverPresentation {
    size: usize,
    names: Vec<String>,
    meet: Vec<usize>,
    top: usize,
    axioms: Vec<(usize, Vec<usize>)>,
}

impl CoverPresentation {
    pub fn new(
        names: Vec<String>,
        meet_table: &[Vec<usize>],
        top: usize,
        axioms: Vec<(usize, Vec<usize>)>,
    ) -> Result<Self> {
        let m = meet_table.len();
        if m == 0 {
            // the empty base presents the one-element frame
            return Ok(CoverPresentation {
                size: 0,
                names: Vec::new(),
                meet: Vec::new(),
                top: 0,
                axioms: Vec::new(),
            });
        }
        if meet_table.iter().any(|row| row.len() != m) || top >= m {
            return Err(Error::CarrierMismatch {
                expected: m,
                got: top,
            });
        }
        let names = if names.is_empty() {
            (0..m).map(|i| format!("b{i}")).collect()
        } else if names.len() == m {
            names
        } else {
            return Err(Error::CarrierMismatch {
                expected: m,
                got: names.len(),
            });
        };
        let at = |a: usize, b: usize| meet_table[a][b];
        for a in 0..m {
            if at(a, a) != a || at(a, top) != a || at(top, a) != a {
                return Err(Error::NotPoset {
                    reason: format!("meet table not idempotent/unital at {a}"),
                });
            }
            for b in 0..m {
                if at(a, b) >= m || at(a, b) != at(b, a) {
                    return Err(Error::NotPoset {
                        reason: format!("meet table not commutative at ({a},{b})"),
                    });
                }
                for c in 0..m {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(Error::NotPoset {
                            reason: format!("meet table not associative at ({a},{b},{c})"),
                        });
                    }
                }
            }
        }
        for (a, u) in &axioms {
            if *a >= m || u.iter().any(|&x| x >= m) {
                return Err(Error::CarrierMismatch { expected: m, got: *a });
            }
        }
        Ok(CoverPresentation {
            size: m,
            names,
            meet: (0..m * m).map(|i| meet_table[i / m][i % m]).collect(),
            top,
            axioms,
        })
    }

    pub fn base_size(&self) -> usize {
        self.size
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn axioms(&self) -> &[(usize, Vec<usize>)] {
        &self.axioms
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size + b]
    }

    /// Semilattice order of the input base structure.
    #[inline]
    pub fn base_leq(&self, a: usize, b: usize) -> bool {
        self.meet(a, b) == a
    }

    /// Least saturated superset of `u`: a worklist fixpoint over the rules
    /// reflexivity, order, and localized axiom application.
    pub fn saturate(&self, u: &ElementSubset) -> ElementSubset {
        assert_eq!(u.carrier(), self.size);
        let mut v = u.clone();
        let mut changed = true;
        while changed {
            changed = false;
            for a in 0..self.size {
                if v.contains(a) {
                    continue;
                }
                let covered = (0..self.size).any(|b| self.base_leq(a, b) && v.contains(b))
                    || self.axioms.iter().any(|(head, w)| {
                        self.base_leq(a, *head)
                            && w.iter().all(|&x| v.contains(self.meet(x, a)))
                    });
                if covered {
                    v.insert(a);
                    changed = true;
                }
            }
        }
        v
    }

    /// Cover-derived order on the base: a is below b when a is in Sat({b}).
    pub fn cover_leq(&self, a: usize, b: usize) -> bool {
        self.saturate(&ElementSubset::singleton(self.size, b)).contains(a)
    }

    /// Product presentation: base `S x T` with componentwise meets, and each
    /// axiom lifted along every base element of the other component.
    pub fn product(&self, other: &CoverPresentation) -> CoverPresentation {
        let (m, k) = (self.size, other.size);
        let idx = |a: usize, b: usize| a * k + b;
        let names: Vec<String> = (0..m * k)
            .map(|i| format!("({},{})", self.names[i / k], other.names[i % k]))
            .collect();
        let meet_table: Vec<Vec<usize>> = (0..m * k)
            .map(|i| {
                (0..m * k)
                    .map(|j| {
                        idx(
                            self.meet(i / k, j / k),
                            other.meet(i % k, j % k),
                        )
                    })
                    .collect()
            })
            .collect();
        let mut axioms = Vec::new();
        for (a, u) in &self.axioms {
            for b in 0..k {
                axioms.push((idx(*a, b), u.iter().map(|&x| idx(x, b)).collect()));
            }
        }
        for (b, u) in &other.axioms {
            for a in 0..m {
                axioms.push((idx(a, *b), u.iter().map(|&y| idx(a, y)).collect()));
            }
        }
        CoverPresentation::new(names, &meet_table, idx(self.top, other.top), axioms)
            .expect("componentwise meets stay a semilattice")
    }
}

/// The frame of saturated subsets of a presentation, with its base positivity
/// predicate. Order is inclusion, meet is intersection, join is saturation of
/// the union.
#[derive(Clone, Debug)]
pub struct FTFrame {
    presentation: CoverPresentation,
    elements: Vec<ElementSubset>,
    lattice: FiniteLattice,
    pos_base: Vec<bool>,
    /// frame index of Sat({a}) for each base element
    base_image: Vec<usize>,
}

impl FTFrame {
    pub fn presentation(&self) -> &CoverPresentation {
        &self.presentation
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn element(&self, i: usize) -> &ElementSubset {
        &self.elements[i]
    }

    pub fn index_of(&self, s: &ElementSubset) -> Option<usize> {
        self.elements.iter().position(|e| e == s)
    }

    /// Frame element generated by a base element.
    pub fn base_image(&self, a: usize) -> usize {
        self.base_image[a]
    }

    pub fn pos_base(&self) -> &[bool] {
        &self.pos_base
    }

    /// A frame element is positive when it contains a positive base element.
    pub fn pos(&self, i: usize) -> bool {
        self.elements[i].iter().any(|a| self.pos_base[a])
    }

    /// The canonical base of the frame: images of base elements.
    pub fn frame_base(&self) -> Result<BaseFamily> {
        let mut members: Vec<usize> = self.base_image.clone();
        members.sort_unstable();
        members.dedup();
        BaseFamily::new(&self.lattice, members)
    }
}

/// Enumerate the saturated sets (as the join closure of the generators),
/// build the frame lattice, and verify the frame invariants.
pub fn build_frame(p: &CoverPresentation, budget: &Budget) -> Result<FTFrame> {
    let m = p.base_size();
    let bottom = p.saturate(&ElementSubset::empty(m));
    let mut elements = vec![bottom.clone()];
    let mut gens = Vec::new();
    for a in 0..m {
        let s = p.saturate(&ElementSubset::singleton(m, a));
        if !elements.contains(&s) {
            elements.push(s.clone());
        }
        gens.push(s);
    }
    // close under binary joins; arbitrary joins are iterated binary ones
    let mut frontier: Vec<ElementSubset> = elements.clone();
    while let Some(v) = frontier.pop() {
        for g in &gens {
            let joined = p.saturate(&v.union(g));
            if !elements.contains(&joined) {
                if elements.len() >= budget.frame_limit {
                    return Err(Error::FrameBudgetExceeded {
                        limit: budget.frame_limit,
                    });
                }
                elements.push(joined.clone());
                frontier.push(joined);
            }
        }
    }
    elements.sort_by_key(|e| (e.count(), e.clone()));

    let leq: Vec<Vec<bool>> = elements
        .iter()
        .map(|u| elements.iter().map(|v| u.is_subset_of(v)).collect())
        .collect();
    let names: Vec<String> = elements
        .iter()
        .map(|e| {
            let parts: Vec<&str> = e.iter().map(|a| p.names[a].as_str()).collect();
            format!("{{{}}}", parts.join(" "))
        })
        .collect();
    let lattice = build_lattice(names, &leq)?;

    // saturation is a closure operator and meets/joins are the set operations
    for (i, u) in elements.iter().enumerate() {
        debug_assert_eq!(&p.saturate(u), u);
        for (j, v) in elements.iter().enumerate() {
            let meet = u.intersection(v);
            if elements[lattice.meet(i, j)] != meet {
                return Err(Error::TheoremViolation {
                    theorem: "frame meet is intersection of saturated sets",
                });
            }
            let join = p.saturate(&u.union(v));
            if elements[lattice.join(i, j)] != join {
                return Err(Error::TheoremViolation {
                    theorem: "frame join is saturation of union",
                });
            }
        }
    }
    if !is_distributive(&lattice) {
        return Err(Error::TheoremViolation {
            theorem: "frame distributivity",
        });
    }

    let pos_base: Vec<bool> = (0..m).map(|a| !elements[0].contains(a)).collect();
    debug_assert_eq!(elements[0], p.saturate(&ElementSubset::empty(m)));
    let base_image: Vec<usize> = (0..m)
        .map(|a| {
            let s = p.saturate(&ElementSubset::singleton(m, a));
            elements.iter().position(|e| *e == s).unwrap()
        })
        .collect();

    let frame = FTFrame {
        presentation: p.clone(),
        elements,
        lattice,
        pos_base,
        base_image,
    };
    verify_positivity_laws(&frame)?;
    Ok(frame)
}

/// The three positivity-predicate laws, on the built frame.
fn verify_positivity_laws(frame: &FTFrame) -> Result<()> {
    let l = &frame.lattice;
    let n = frame.len();
    // monotonicity
    for i in 0..n {
        for j in 0..n {
            if frame.pos(i) && l.leq(i, j) && !frame.pos(j) {
                return Err(Error::PositivityLawViolation { law: "monotonicity" });
            }
        }
    }
    // join splitting: binary always, all subsets when the frame is small
    for i in 0..n {
        for j in 0..n {
            if frame.pos(l.join(i, j)) && !frame.pos(i) && !frame.pos(j) {
                return Err(Error::PositivityLawViolation { law: "join splitting" });
            }
        }
    }
    if !frame.pos(l.bottom()) {
        // fine: the empty join must not be positive; nothing to check
    } else {
        return Err(Error::PositivityLawViolation { law: "join splitting" });
    }
    if n <= 16 {
        for u in all_subsets(n) {
            if frame.pos(l.join_of(&u)) && !u.iter().any(|i| frame.pos(i)) {
                return Err(Error::PositivityLawViolation { law: "join splitting" });
            }
        }
    }
    // positivity axiom: p <= join of positive base elements below p
    for i in 0..n {
        let mut support = ElementSubset::empty(n);
        for a in 0..frame.presentation.base_size() {
            if frame.pos_base[a] && l.leq(frame.base_image(a), i) {
                support.insert(frame.base_image(a));
            }
        }
        if !l.leq(i, l.join_of(&support)) {
            return Err(Error::PositivityLawViolation { law: "positivity axiom" });
        }
    }
    Ok(())
}

/// Base positivity: a is positive when it is not covered by the empty set.
/// Verifies the positivity laws against the built frame as a side effect.
pub fn positivity(p: &CoverPresentation, budget: &Budget) -> Result<Vec<bool>> {
    let frame = build_frame(p, budget)?;
    Ok(frame.pos_base().to_vec())
}

/// The product positivity formula on the base: a pair is positive exactly
/// when both components are.
pub fn product_positivity_agrees(
    p: &CoverPresentation,
    q: &CoverPresentation,
    budget: &Budget,
) -> Result<bool> {
    let pos_p = positivity(p, budget)?;
    let pos_q = positivity(q, budget)?;
    let prod = p.product(q);
    let pos_prod = positivity(&prod, budget)?;
    let k = q.base_size();
    Ok((0..p.base_size()).all(|a| {
        (0..k).all(|b| pos_prod[a * k + b] == (pos_p[a] && pos_q[b]))
    }))
}

/// The openness condition for product covers: if (a,b) is below the join of
/// W, then a and b are below the joins of the respective projections.
/// `a`, `b` must be positive base elements of `p`.
pub fn openness_condition(
    p: &CoverPresentation,
    a: usize,
    b: usize,
    w: &[(usize, usize)],
) -> bool {
    let prod = p.product(p);
    openness_condition_in(p, &prod, a, b, w)
}

/// As `openness_condition`, with the product presentation precomputed by the
/// caller (saves rebuilding it inside exhaustive loops).
pub fn openness_condition_in(
    p: &CoverPresentation,
    prod: &CoverPresentation,
    a: usize,
    b: usize,
    w: &[(usize, usize)],
) -> bool {
    let k = p.base_size();
    let mut w_prod = ElementSubset::empty(prod.base_size());
    let mut proj_x = ElementSubset::empty(k);
    let mut proj_y = ElementSubset::empty(k);
    for &(x, y) in w {
        w_prod.insert(x * k + y);
        proj_x.insert(x);
        proj_y.insert(y);
    }
    if !prod.saturate(&w_prod).contains(a * k + b) {
        return true; // antecedent fails
    }
    p.saturate(&proj_x).contains(a) && p.saturate(&proj_y).contains(b)
}

/// The diagonal frame map and its two frames.
#[derive(Clone, Debug)]
pub struct DiagonalAnalysis {
    pub frame: FTFrame,
    pub product_frame: FTFrame,
    /// From the product frame to the frame: saturation of pairwise meets.
    pub pullback: LatticeMap,
}

/// Build the frames of `p` and `p x p` and the diagonal pullback, verified
/// to preserve finite meets and all joins.
pub fn diagonal_pullback(p: &CoverPresentation, budget: &Budget) -> Result<DiagonalAnalysis> {
    let frame = build_frame(p, budget)?;
    let prod = p.product(p);
    let product_frame = build_frame(&prod, budget)?;
    let k = p.base_size();

    let table: Vec<usize> = (0..product_frame.len())
        .map(|i| {
            let mut meets = ElementSubset::empty(k);
            for pair in product_frame.element(i).iter() {
                meets.insert(p.meet(pair / k, pair % k));
            }
            let sat = p.saturate(&meets);
            frame.index_of(&sat).expect("saturated set is a frame element")
        })
        .collect();
    let pullback = LatticeMap::new(product_frame.len(), frame.len(), table)?;

    // frame map: preserves top, binary meets, bottom and binary joins
    let (pl, fl) = (product_frame.lattice(), frame.lattice());
    if pullback.apply(pl.top()) != fl.top() {
        return Err(Error::NotFrameMap {
            reason: "top not preserved".into(),
        });
    }
    if pullback.apply(pl.bottom()) != fl.bottom() {
        return Err(Error::NotFrameMap {
            reason: "empty join not preserved".into(),
        });
    }
    for i in 0..product_frame.len() {
        for j in 0..product_frame.len() {
            if pullback.apply(pl.meet(i, j)) != fl.meet(pullback.apply(i), pullback.apply(j)) {
                return Err(Error::NotFrameMap {
                    reason: format!("binary meet not preserved at ({i},{j})"),
                });
            }
            if pullback.apply(pl.join(i, j)) != fl.join(pullback.apply(i), pullback.apply(j)) {
                return Err(Error::NotFrameMap {
                    reason: format!("binary join not preserved at ({i},{j})"),
                });
            }
        }
    }
    Ok(DiagonalAnalysis {
        frame,
        product_frame,
        pullback,
    })
}

/// Left adjoint of a monotone map between finite frames, when it exists:
/// candidate by meets, verified against the adjunction law.
pub fn left_adjoint_of(
    g: &LatticeMap,
    src: &FiniteLattice,
    tgt: &FiniteLattice,
) -> Result<LatticeMap> {
    let table: Vec<usize> = tgt
        .elements()
        .map(|p| {
            src.elements()
                .filter(|&q| tgt.leq(p, g.apply(q)))
                .fold(src.top(), |acc, q| src.meet(acc, q))
        })
        .collect();
    let exists = LatticeMap::new(tgt.len(), src.len(), table)?;
    for p in tgt.elements() {
        for q in src.elements() {
            if src.leq(exists.apply(p), q) != tgt.leq(p, g.apply(q)) {
                return Err(Error::NoLeftAdjoint);
            }
        }
    }
    Ok(exists)
}

/// Frobenius reciprocity for an adjoint pair (exists -| g):
/// exists(x /\ g(y)) = exists(x) /\ y for all x in g's target, y in g's source.
pub fn frobenius_check(
    exists: &LatticeMap,
    g: &LatticeMap,
    g_source: &FiniteLattice,
    g_target: &FiniteLattice,
) -> bool {
    g_target.elements().all(|x| {
        g_source.elements().all(|y| {
            exists.apply(g_target.meet(x, g.apply(y)))
                == g_source.meet(exists.apply(x), y)
        })
    })
}

/// The diagonal is open when its pullback has a Frobenius left adjoint.
pub fn diagonal_open(p: &CoverPresentation, budget: &Budget) -> Result<bool> {
    let analysis = diagonal_pullback(p, budget)?;
    diagonal_open_in(&analysis)
}

pub fn diagonal_open_in(analysis: &DiagonalAnalysis) -> Result<bool> {
    let exists = match left_adjoint_of(
        &analysis.pullback,
        analysis.product_frame.lattice(),
        analysis.frame.lattice(),
    ) {
        Ok(m) => m,
        Err(Error::NoLeftAdjoint) => return Ok(false),
        Err(e) => return Err(e),
    };
    Ok(frobenius_check(
        &exists,
        &analysis.pullback,
        analysis.product_frame.lattice(),
        analysis.frame.lattice(),
    ))
}

/// Machine check of the discreteness theorem: a presentation is discrete
/// exactly when its diagonal is open. Disagreement is a fatal diagnostic.
pub fn discrete_iff_open_theorem(p: &CoverPresentation, budget: &Budget) -> Result<bool> {
    let analysis = diagonal_pullback(p, budget)?;
    let discrete = crate::atoms::is_discrete(&analysis.frame);
    let open = diagonal_open_in(&analysis)?;
    if discrete != open {
        return Err(Error::TheoremViolation {
            theorem: "discrete iff diagonal open",
        });
    }
    Ok(discrete)
}

/// The explicit left-adjoint formula for a discrete topology: the join of
/// the diagonal squares (a,a) over atoms a below the argument.
pub fn diagonal_adjoint_atom_formula(analysis: &DiagonalAnalysis) -> Result<LatticeMap> {
    let frame = &analysis.frame;
    let prod_frame = &analysis.product_frame;
    let k = frame.presentation().base_size();
    let atoms = crate::atoms::ft_atoms(frame)?;
    let table: Vec<usize> = frame
        .lattice()
        .elements()
        .map(|p| {
            let mut squares = ElementSubset::empty(prod_frame.len());
            for &a in &atoms {
                if frame.lattice().leq(frame.base_image(a), p) {
                    squares.insert(prod_frame.base_image(a * k + a));
                }
            }
            prod_frame.lattice().join_of(&squares)
        })
        .collect();
    LatticeMap::new(frame.len(), prod_frame.len(), table)
}

/// Ready-made presentations used throughout the test corpus.
pub mod presentations {
    use super::*;

    /// Discrete topology on `k` points.
    pub fn discrete(k: usize) -> CoverPresentation {
        match k {
            0 => {
                // a single top covered by nothing: the one-element frame
                CoverPresentation::new(
                    vec!["T".into()],
                    &[vec![0]],
                    0,
                    vec![(0, vec![])],
                )
                .unwrap()
            }
            1 => CoverPresentation::new(
                vec!["x0".into(), "T".into()],
                &[vec![0, 0], vec![0, 1]],
                1,
                vec![(1, vec![0])],
            )
            .unwrap(),
            _ => {
                // 0 = bottom, 1..=k singletons, k+1 = top
                let m = k + 2;
                let top = k + 1;
                let meet: Vec<Vec<usize>> = (0..m)
                    .map(|a| {
                        (0..m)
                            .map(|b| {
                                if a == b {
                                    a
                                } else if a == top {
                                    b
                                } else if b == top {
                                    a
                                } else {
                                    0
                                }
                            })
                            .collect()
                    })
                    .collect();
                let mut names = vec!["bot".to_string()];
                names.extend((0..k).map(|i| format!("x{i}")));
                names.push("T".into());
                let axioms = vec![(top, (1..=k).collect()), (0, vec![])];
                CoverPresentation::new(names, &meet, top, axioms).unwrap()
            }
        }
    }

    /// Sierpinski space: base {s, T} with s < T and no axioms.
    pub fn sierpinski() -> CoverPresentation {
        CoverPresentation::new(
            vec!["s".into(), "T".into()],
            &[vec![0, 0], vec![0, 1]],
            1,
            vec![],
        )
        .unwrap()
    }

    /// A 3-element chain base b < m < T with no axioms (4-chain frame).
    pub fn chain_cover() -> CoverPresentation {
        CoverPresentation::new(
            vec!["b".into(), "m".into(), "T".into()],
            &[vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]],
            2,
            vec![],
        )
        .unwrap()
    }

    /// One base element, covered by nothing: the one-element frame.
    pub fn trivial() -> CoverPresentation {
        discrete(0)
    }
}

#[cfg(test)]
mod tests {
    use super::presentations::*;
    use super::*;

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn saturation_examples() {
        // no axioms: saturation is down-closure in the base order
        let s = sierpinski();
        let sat = s.saturate(&ElementSubset::singleton(2, 1));
        assert_eq!(sat.indices(), vec![0, 1]);

        // axiom (T, {s}): Sat({s}) also contains T
        let p = CoverPresentation::new(
            vec!["s".into(), "T".into()],
            &[vec![0, 0], vec![0, 1]],
            1,
            vec![(1, vec![0])],
        )
        .unwrap();
        assert_eq!(p.saturate(&ElementSubset::singleton(2, 0)).indices(), vec![0, 1]);

        // axiom (a, {}): a is in Sat(empty)
        let q = discrete(2);
        assert!(q.saturate(&ElementSubset::empty(4)).contains(0));
    }

    #[test]
    fn saturation_is_closure_operator() {
        for p in [discrete(2), sierpinski(), chain_cover(), discrete(3)] {
            let m = p.base_size();
            for u in all_subsets(m) {
                let s = p.saturate(&u);
                assert!(u.is_subset_of(&s));
                assert_eq!(p.saturate(&s), s, "idempotence");
                for v in all_subsets(m) {
                    if u.is_subset_of(&v) {
                        assert!(s.is_subset_of(&p.saturate(&v)), "monotonicity");
                    }
                }
            }
        }
    }

    #[test]
    fn frame_examples() {
        let f = build_frame(&discrete(2), &budget()).unwrap();
        assert_eq!(f.len(), 4);
        assert!(crate::lattice::is_boolean(f.lattice()));

        let f = build_frame(&sierpinski(), &budget()).unwrap();
        assert_eq!(f.len(), 3);

        let f = build_frame(&CoverPresentation::new(vec![], &[], 0, vec![]).unwrap(), &budget())
            .unwrap();
        assert_eq!(f.len(), 1);

        let f = build_frame(&trivial(), &budget()).unwrap();
        assert_eq!(f.len(), 1);

        let f = build_frame(&chain_cover(), &budget()).unwrap();
        assert_eq!(f.len(), 4);
        assert!(!crate::lattice::is_boolean(f.lattice()));
    }

    #[test]
    fn positivity_examples() {
        let pos = positivity(&sierpinski(), &budget()).unwrap();
        assert_eq!(pos, vec![true, true]);

        let pos = positivity(&discrete(2), &budget()).unwrap();
        assert_eq!(pos, vec![false, true, true, true]);

        // axiom (a, {}) makes a non-positive
        let p = CoverPresentation::new(
            vec!["a".into(), "T".into()],
            &[vec![0, 0], vec![0, 1]],
            1,
            vec![(0, vec![])],
        )
        .unwrap();
        let pos = positivity(&p, &budget()).unwrap();
        assert_eq!(pos, vec![false, true]);
    }

    #[test]
    fn product_examples() {
        let d2 = discrete(2);
        let prod = d2.product(&d2);
        let f = build_frame(&prod, &budget()).unwrap();
        // frame of the discrete topology on 2x2 points
        assert_eq!(f.len(), 16);
        assert!(product_positivity_agrees(&d2, &d2, &budget()).unwrap());

        // product with the one-point base behaves as the original
        let one = CoverPresentation::new(vec!["T".into()], &[vec![0]], 0, vec![]).unwrap();
        let p = sierpinski().product(&one);
        let f = build_frame(&p, &budget()).unwrap();
        assert_eq!(f.len(), 3);

        let ss = sierpinski().product(&sierpinski());
        let f = build_frame(&ss, &budget()).unwrap();
        assert_eq!(f.len(), 6); // saturated down-sets of the 2x2 square base
        assert!(product_positivity_agrees(&sierpinski(), &sierpinski(), &budget()).unwrap());
    }

    #[test]
    fn openness_examples() {
        let d2 = discrete(2);
        let prod = d2.product(&d2);
        // W = {(a,b)} is trivially fine
        assert!(openness_condition_in(&d2, &prod, 1, 2, &[(1, 2)]));
        // empty W: positive (a,b) is not covered, antecedent fails
        assert!(openness_condition_in(&d2, &prod, 1, 1, &[]));
        // exhaustively over all W on the discrete 2-point base
        let m = d2.base_size();
        let pos = positivity(&d2, &budget()).unwrap();
        for a in 0..m {
            for b in 0..m {
                if !(pos[a] && pos[b]) {
                    continue;
                }
                for w_mask in 0..1u64 << (m * m) {
                    let w: Vec<(usize, usize)> = (0..m * m)
                        .filter(|i| w_mask >> i & 1 == 1)
                        .map(|i| (i / m, i % m))
                        .collect();
                    assert!(openness_condition_in(&d2, &prod, a, b, &w));
                }
            }
        }
    }

    #[test]
    fn diagonal_pullback_examples() {
        let analysis = diagonal_pullback(&discrete(2), &budget()).unwrap();
        let (pf, ff) = (analysis.product_frame.lattice(), analysis.frame.lattice());
        assert_eq!(analysis.pullback.apply(pf.top()), ff.top());
        // the diagonal square of a point maps back to that point
        let k = analysis.frame.presentation().base_size();
        for a in 0..k {
            let sq = analysis.product_frame.base_image(a * k + a);
            assert_eq!(analysis.pullback.apply(sq), analysis.frame.base_image(a));
        }
    }

    #[test]
    fn diagonal_open_examples() {
        assert!(diagonal_open(&discrete(2), &budget()).unwrap());
        assert!(!diagonal_open(&sierpinski(), &budget()).unwrap());
        assert!(diagonal_open(&trivial(), &budget()).unwrap());
    }

    #[test]
    fn theorem_examples() {
        assert!(discrete_iff_open_theorem(&discrete(1), &budget()).unwrap());
        assert!(discrete_iff_open_theorem(&discrete(2), &budget()).unwrap());
        assert!(!discrete_iff_open_theorem(&sierpinski(), &budget()).unwrap());
        assert!(!discrete_iff_open_theorem(&chain_cover(), &budget()).unwrap());
        assert!(discrete_iff_open_theorem(&trivial(), &budget()).unwrap());
    }

    #[test]
    fn adjoint_matches_atom_formula_when_discrete() {
        let analysis = diagonal_pullback(&discrete(2), &budget()).unwrap();
        let exists = left_adjoint_of(
            &analysis.pullback,
            analysis.product_frame.lattice(),
            analysis.frame.lattice(),
        )
        .unwrap();
        let formula = diagonal_adjoint_atom_formula(&analysis).unwrap();
        assert_eq!(exists, formula);
    }

    #[test]
    fn frobenius_identity_pair() {
        let f = build_frame(&sierpinski(), &budget()).unwrap();
        let id = LatticeMap::identity(f.len());
        assert!(frobenius_check(&id, &id, f.lattice(), f.lattice()));
    }
}
