//! Maps between overlap structures: adjoints, symmetric pairs, the three
//! equivalent o-morphism characterizations, relation-induced operators and
//! the composition laws.

use crate::error::{Budget, Error, Result};
use crate::lattice::{BaseFamily, FiniteLattice};
use crate::overlap::OAlgebra;
use crate::subset::all_subsets;

/// A total map between lattice carriers, stored as an image table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeMap {
    source: usize,
    target: usize,
    table: Vec<usize>,
}

impl LatticeMap {
    pub fn new(source: usize, target: usize, table: Vec<usize>) -> Result<Self> {
        if table.len() != source {
            return Err(Error::CarrierMismatch {
                expected: source,
                got: table.len(),
            });
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= target) {
            return Err(Error::CarrierMismatch {
                expected: target,
                got: bad,
            });
        }
        Ok(LatticeMap {
            source,
            target,
            table,
        })
    }

    pub fn identity(n: usize) -> Self {
        LatticeMap {
            source: n,
            target: n,
            table: (0..n).collect(),
        }
    }

    pub fn constant(source: usize, target: usize, value: usize) -> Self {
        LatticeMap {
            source,
            target,
            table: vec![value; source],
        }
    }

    pub fn source_len(&self) -> usize {
        self.source
    }

    pub fn target_len(&self) -> usize {
        self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, p: usize) -> usize {
        self.table[p]
    }

    /// `self` after `inner` (apply `inner` first).
    pub fn compose(&self, inner: &LatticeMap) -> Result<LatticeMap> {
        if inner.target != self.source {
            return Err(Error::ShapeMismatch {
                left: inner.target,
                right: self.source,
            });
        }
        Ok(LatticeMap {
            source: inner.source,
            target: self.target,
            table: inner.table.iter().map(|&p| self.table[p]).collect(),
        })
    }
}

pub fn is_monotone(f: &LatticeMap, src: &FiniteLattice, tgt: &FiniteLattice) -> bool {
    src.elements().all(|p| {
        src.elements()
            .all(|q| !src.leq(p, q) || tgt.leq(f.apply(p), f.apply(q)))
    })
}

/// f preserves every join, including the empty one.
pub fn preserves_joins(f: &LatticeMap, src: &FiniteLattice, tgt: &FiniteLattice) -> bool {
    assert!(src.len() <= 20, "join-preservation scan over 2^{}", src.len());
    all_subsets(src.len()).all(|u| {
        let image_join = u
            .iter()
            .fold(tgt.bottom(), |acc, p| tgt.join(acc, f.apply(p)));
        f.apply(src.join_of(&u)) == image_join
    })
}

/// Candidate right adjoint by the base formula, without verification:
/// f*(q) = join of base elements a with f(a) <= q.
fn adjoint_candidate(
    f: &LatticeMap,
    src: &FiniteLattice,
    tgt: &FiniteLattice,
    base_src: &BaseFamily,
) -> LatticeMap {
    let table: Vec<usize> = tgt
        .elements()
        .map(|q| {
            base_src
                .members()
                .iter()
                .filter(|&&a| tgt.leq(f.apply(a), q))
                .fold(src.bottom(), |acc, &a| src.join(acc, a))
        })
        .collect();
    LatticeMap {
        source: tgt.len(),
        target: src.len(),
        table,
    }
}

/// The right adjoint of `f`, when it exists: monotonicity is a precondition
/// and the adjunction law is verified in full.
pub fn right_adjoint(
    f: &LatticeMap,
    src: &FiniteLattice,
    tgt: &FiniteLattice,
    base_src: &BaseFamily,
) -> Result<LatticeMap> {
    if let Some((p, q)) = src.elements().find_map(|p| {
        src.elements()
            .find(|&q| src.leq(p, q) && !tgt.leq(f.apply(p), f.apply(q)))
            .map(|q| (p, q))
    }) {
        return Err(Error::NotMonotone { p, q });
    }
    let star = adjoint_candidate(f, src, tgt, base_src);
    let ok = src.elements().all(|p| {
        tgt.elements()
            .all(|q| tgt.leq(f.apply(p), q) == src.leq(p, star.apply(q)))
    });
    if ok {
        Ok(star)
    } else {
        Err(Error::NoRightAdjoint)
    }
}

/// The symmetric-candidate formula: g(q) = join of base elements a such that
/// every base x overlapping a has f(x) overlapping q. Always defined; g is
/// the symmetric of f exactly when `is_symmetric_pair` confirms it.
pub fn symmetric_candidate(f: &LatticeMap, src: &OAlgebra, tgt: &OAlgebra) -> LatticeMap {
    let sl = &src.lattice;
    let table: Vec<usize> = tgt
        .lattice
        .elements()
        .map(|q| {
            src.base
                .members()
                .iter()
                .filter(|&&a| {
                    src.base
                        .members()
                        .iter()
                        .all(|&x| !src.overlaps(x, a) || tgt.overlaps(f.apply(x), q))
                })
                .fold(sl.bottom(), |acc, &a| sl.join(acc, a))
        })
        .collect();
    LatticeMap {
        source: tgt.lattice.len(),
        target: sl.len(),
        table,
    }
}

/// f(p) ovl q iff p ovl g(q), exhaustively.
pub fn is_symmetric_pair(
    f: &LatticeMap,
    g: &LatticeMap,
    src: &OAlgebra,
    tgt: &OAlgebra,
) -> bool {
    src.lattice.elements().all(|p| {
        tgt.lattice
            .elements()
            .all(|q| tgt.overlaps(f.apply(p), q) == src.overlaps(p, g.apply(q)))
    })
}

/// The four maps witnessing an o-morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointQuadruple {
    pub f: LatticeMap,
    pub f_minus: LatticeMap,
    pub f_star: LatticeMap,
    pub f_minus_star: LatticeMap,
}

/// Construct the symmetric and both right adjoints by their base formulas and
/// verify the three o-morphism conditions.
pub fn check_o_morphism(
    f: &LatticeMap,
    src: &OAlgebra,
    tgt: &OAlgebra,
) -> Result<AdjointQuadruple> {
    let f_minus = symmetric_candidate(f, src, tgt);
    let f_star = adjoint_candidate(f, &src.lattice, &tgt.lattice, &src.base);
    let f_minus_star = adjoint_candidate(&f_minus, &tgt.lattice, &src.lattice, &tgt.base);

    // condition 1: f -| f*
    for p in src.lattice.elements() {
        for q in tgt.lattice.elements() {
            if tgt.lattice.leq(f.apply(p), q) != src.lattice.leq(p, f_star.apply(q)) {
                return Err(Error::NotOMorphism {
                    condition: "f -| f*",
                    p,
                    q,
                });
            }
        }
    }
    // condition 2: f^- -| f^-*
    for q in tgt.lattice.elements() {
        for p in src.lattice.elements() {
            if src.lattice.leq(f_minus.apply(q), p) != tgt.lattice.leq(q, f_minus_star.apply(p)) {
                return Err(Error::NotOMorphism {
                    condition: "f^- -| f^-*",
                    p,
                    q,
                });
            }
        }
    }
    // condition 3: f and f^- are symmetric
    for p in src.lattice.elements() {
        for q in tgt.lattice.elements() {
            if tgt.overlaps(f.apply(p), q) != src.overlaps(p, f_minus.apply(q)) {
                return Err(Error::NotOMorphism {
                    condition: "f ~ f^-",
                    p,
                    q,
                });
            }
        }
    }
    Ok(AdjointQuadruple {
        f: f.clone(),
        f_minus,
        f_star,
        f_minus_star,
    })
}

/// The intrinsic characterization: f(p) ovl q iff some base element a has
/// p ovl a and every base x overlapping a satisfies f(x) ovl q.
pub fn red_condition(f: &LatticeMap, src: &OAlgebra, tgt: &OAlgebra) -> bool {
    let base = src.base.members();
    src.lattice.elements().all(|p| {
        tgt.lattice.elements().all(|q| {
            let lhs = tgt.overlaps(f.apply(p), q);
            let rhs = base.iter().any(|&a| {
                src.overlaps(p, a)
                    && base
                        .iter()
                        .all(|&x| !src.overlaps(x, a) || tgt.overlaps(f.apply(x), q))
            });
            lhs == rhs
        })
    })
}

/// Evaluate all three characterizations independently and return the shared
/// verdict; disagreement means the implementation is broken.
pub fn three_way_equivalence(f: &LatticeMap, src: &OAlgebra, tgt: &OAlgebra) -> Result<bool> {
    let via_quadruple = check_o_morphism(f, src, tgt).is_ok();
    let g = symmetric_candidate(f, src, tgt);
    let via_symmetric = is_symmetric_pair(f, &g, src, tgt);
    let via_red = red_condition(f, src, tgt);
    if via_quadruple != via_symmetric || via_symmetric != via_red {
        return Err(Error::InconsistentCharacterizations);
    }
    Ok(via_red)
}

/// Outcome of comparing {o-morphisms} with {join-preserving maps}.
#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    /// true when every total map was enumerated; false for the sampled path
    pub exhaustive: bool,
    pub maps_checked: u64,
    pub o_morphism_count: u64,
    pub join_preserving_count: u64,
    /// the two sets agree on every map checked
    pub sets_agree: bool,
}

/// Compare o-morphisms with join-preserving maps over all total maps from
/// `src` to `tgt`, or over a constructed-plus-sampled family when full
/// enumeration exceeds the budget.
pub fn classical_equivalence_suite(
    src: &OAlgebra,
    tgt: &OAlgebra,
    budget: &Budget,
    seed: u64,
) -> Result<EquivalenceReport> {
    let ns = src.lattice.len();
    let nt = tgt.lattice.len();
    let total = (nt as u128).checked_pow(ns as u32).unwrap_or(u128::MAX);

    let mut checked = 0u64;
    let mut o_morphisms = 0u64;
    let mut join_preserving = 0u64;
    let mut agree = true;

    let mut visit = |map: &LatticeMap| -> Result<()> {
        let is_om = three_way_equivalence(map, src, tgt)?;
        let is_jp = preserves_joins(map, &src.lattice, &tgt.lattice);
        checked += 1;
        if is_om {
            o_morphisms += 1;
        }
        if is_jp {
            join_preserving += 1;
        }
        if is_om != is_jp {
            agree = false;
        }
        Ok(())
    };

    if total <= budget.map_enum_limit as u128 {
        let mut table = vec![0usize; ns];
        loop {
            visit(&LatticeMap {
                source: ns,
                target: nt,
                table: table.clone(),
            })?;
            // odometer over all tables
            let mut i = 0;
            while i < ns {
                table[i] += 1;
                if table[i] < nt {
                    break;
                }
                table[i] = 0;
                i += 1;
            }
            if i == ns {
                break;
            }
        }
        return Ok(EquivalenceReport {
            exhaustive: true,
            maps_checked: checked,
            o_morphism_count: o_morphisms,
            join_preserving_count: join_preserving,
            sets_agree: agree,
        });
    }

    // Sampled path: the join-preserving family is generated constructively
    // from base images (a join-preserving map is determined by them); the
    // other inclusion is probed on seeded random tables.
    let k = src.base.len();
    let family = (nt as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if family > budget.map_enum_limit as u128 {
        return Err(Error::SearchBudgetExceeded {
            what: format!("{family} base-image candidates"),
        });
    }
    let mut images = vec![0usize; k];
    loop {
        let table: Vec<usize> = src
            .lattice
            .elements()
            .map(|p| {
                src.base
                    .members()
                    .iter()
                    .enumerate()
                    .filter(|&(_, &a)| src.lattice.leq(a, p))
                    .fold(tgt.lattice.bottom(), |acc, (i, _)| {
                        tgt.lattice.join(acc, images[i])
                    })
            })
            .collect();
        let map = LatticeMap {
            source: ns,
            target: nt,
            table,
        };
        if preserves_joins(&map, &src.lattice, &tgt.lattice) {
            visit(&map)?;
        }
        let mut i = 0;
        while i < k {
            images[i] += 1;
            if images[i] < nt {
                break;
            }
            images[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
    }
    let mut state = seed | 1;
    for _ in 0..1024 {
        let table: Vec<usize> = (0..ns)
            .map(|_| {
                // xorshift64
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state % nt as u64) as usize
            })
            .collect();
        visit(&LatticeMap {
            source: ns,
            target: nt,
            table,
        })?;
    }
    Ok(EquivalenceReport {
        exhaustive: false,
        maps_checked: checked,
        o_morphism_count: o_morphisms,
        join_preserving_count: join_preserving,
        sets_agree: agree,
    })
}

/// A binary relation between two finite ground sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRelation {
    pub x_size: usize,
    pub y_size: usize,
    pairs: Vec<(usize, usize)>,
}

impl FiniteRelation {
    pub fn new(x_size: usize, y_size: usize, mut pairs: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(x, y)) = pairs.iter().find(|&&(x, y)| x >= x_size || y >= y_size) {
            return Err(Error::CarrierMismatch {
                expected: x_size.max(y_size),
                got: x.max(y),
            });
        }
        pairs.sort_unstable();
        pairs.dedup();
        Ok(FiniteRelation {
            x_size,
            y_size,
            pairs,
        })
    }

    pub fn identity(n: usize) -> Self {
        FiniteRelation {
            x_size: n,
            y_size: n,
            pairs: (0..n).map(|i| (i, i)).collect(),
        }
    }

    /// Decode from a bitmask over the x_size * y_size pair grid.
    pub fn from_mask(x_size: usize, y_size: usize, mask: u64) -> Self {
        let pairs = (0..x_size)
            .flat_map(|x| (0..y_size).map(move |y| (x, y)))
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, p)| p)
            .collect();
        FiniteRelation {
            x_size,
            y_size,
            pairs,
        }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.pairs.binary_search(&(x, y)).is_ok()
    }

    pub fn converse(&self) -> FiniteRelation {
        let mut pairs: Vec<(usize, usize)> = self.pairs.iter().map(|&(x, y)| (y, x)).collect();
        pairs.sort_unstable();
        FiniteRelation {
            x_size: self.y_size,
            y_size: self.x_size,
            pairs,
        }
    }

    /// Relational composition: x (R;S) z iff exists y with xRy and ySz.
    pub fn compose(&self, other: &FiniteRelation) -> Result<FiniteRelation> {
        if self.y_size != other.x_size {
            return Err(Error::ShapeMismatch {
                left: self.y_size,
                right: other.x_size,
            });
        }
        let mut pairs = Vec::new();
        for &(x, y) in &self.pairs {
            for &(y2, z) in &other.pairs {
                if y == y2 {
                    pairs.push((x, z));
                }
            }
        }
        FiniteRelation::new(self.x_size, other.y_size, pairs)
    }
}

/// The four operators induced by a relation, as maps between powerset
/// lattices (elements are subset masks).
#[derive(Clone, Debug)]
pub struct RelationOperators {
    /// existential image R(A)
    pub forward: LatticeMap,
    /// existential preimage R^-(B)
    pub inverse: LatticeMap,
    /// universal preimage R*(B)
    pub star: LatticeMap,
    /// universal image R^-*(A)
    pub inverse_star: LatticeMap,
}

pub fn relation_operators(r: &FiniteRelation) -> RelationOperators {
    let nx = 1usize << r.x_size;
    let ny = 1usize << r.y_size;

    let forward_table: Vec<usize> = (0..nx)
        .map(|a| {
            (0..r.y_size)
                .filter(|&y| (0..r.x_size).any(|x| r.related(x, y) && a >> x & 1 == 1))
                .fold(0usize, |m, y| m | 1 << y)
        })
        .collect();
    let inverse_table: Vec<usize> = (0..ny)
        .map(|b| {
            (0..r.x_size)
                .filter(|&x| (0..r.y_size).any(|y| r.related(x, y) && b >> y & 1 == 1))
                .fold(0usize, |m, x| m | 1 << x)
        })
        .collect();
    let star_table: Vec<usize> = (0..ny)
        .map(|b| {
            (0..r.x_size)
                .filter(|&x| (0..r.y_size).all(|y| !r.related(x, y) || b >> y & 1 == 1))
                .fold(0usize, |m, x| m | 1 << x)
        })
        .collect();
    let inverse_star_table: Vec<usize> = (0..nx)
        .map(|a| {
            (0..r.y_size)
                .filter(|&y| (0..r.x_size).all(|x| !r.related(x, y) || a >> x & 1 == 1))
                .fold(0usize, |m, y| m | 1 << y)
        })
        .collect();

    RelationOperators {
        forward: LatticeMap {
            source: nx,
            target: ny,
            table: forward_table,
        },
        inverse: LatticeMap {
            source: ny,
            target: nx,
            table: inverse_table,
        },
        star: LatticeMap {
            source: ny,
            target: nx,
            table: star_table,
        },
        inverse_star: LatticeMap {
            source: nx,
            target: ny,
            table: inverse_star_table,
        },
    }
}

/// Recover the relation from an o-morphism between powerset o-algebras:
/// x R y iff y belongs to f({x}).
pub fn morphism_to_relation(
    f: &LatticeMap,
    src: &OAlgebra,
    tgt: &OAlgebra,
) -> Result<FiniteRelation> {
    check_o_morphism(f, src, tgt)?;
    let x_size = src.lattice.len().trailing_zeros() as usize;
    let y_size = tgt.lattice.len().trailing_zeros() as usize;
    let mut pairs = Vec::new();
    for x in 0..x_size {
        let image = f.apply(1usize << x);
        for y in 0..y_size {
            if image >> y & 1 == 1 {
                pairs.push((x, y));
            }
        }
    }
    FiniteRelation::new(x_size, y_size, pairs)
}

/// Verify the composite quadruple laws: (f o g)^- = g^- o f^-,
/// (f o g)* = g* o f*, (f o g)^-* = f^-* o g^-*, and that the composite is
/// itself an o-morphism. `g` maps P to Q, `f` maps Q to R.
pub fn composition_laws(
    f: &AdjointQuadruple,
    g: &AdjointQuadruple,
    p_alg: &OAlgebra,
    q_alg: &OAlgebra,
    r_alg: &OAlgebra,
) -> Result<bool> {
    check_o_morphism(&g.f, p_alg, q_alg)?;
    check_o_morphism(&f.f, q_alg, r_alg)?;
    let composite = f.f.compose(&g.f)?;
    let quad = check_o_morphism(&composite, p_alg, r_alg).map_err(|_| {
        Error::TheoremViolation {
            theorem: "composite of o-morphisms is an o-morphism",
        }
    })?;
    let minus_ok = quad.f_minus == g.f_minus.compose(&f.f_minus)?;
    let star_ok = quad.f_star == g.f_star.compose(&f.f_star)?;
    let minus_star_ok = quad.f_minus_star == f.f_minus_star.compose(&g.f_minus_star)?;
    Ok(minus_ok && star_ok && minus_star_ok)
}

/// Morphism check for oo-structures: the intrinsic condition, cross-checked
/// against the monotone-plus-half-condition decomposition, plus the theorem
/// that passing maps preserve all (here: all existing) joins.
pub fn oo_morphism_check(f: &LatticeMap, src: &OAlgebra, tgt: &OAlgebra) -> Result<bool> {
    let red = red_condition(f, src, tgt);

    let monotone = is_monotone(f, &src.lattice, &tgt.lattice);
    let base = src.base.members();
    let half = src.lattice.elements().all(|p| {
        tgt.lattice.elements().all(|q| {
            !tgt.overlaps(f.apply(p), q)
                || base.iter().any(|&a| {
                    src.overlaps(p, a)
                        && base
                            .iter()
                            .all(|&x| !src.overlaps(x, a) || tgt.overlaps(f.apply(x), q))
                })
        })
    });
    if red != (monotone && half) {
        return Err(Error::TheoremViolation {
            theorem: "oo-morphism = monotone + half RED",
        });
    }
    if red && !preserves_joins(f, &src.lattice, &tgt.lattice) {
        return Err(Error::TheoremViolation {
            theorem: "oo-morphisms preserve existing joins",
        });
    }
    Ok(red)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn powerset(k: usize) -> OAlgebra {
        OAlgebra::powerset(k, &Budget::default()).unwrap()
    }

    #[test]
    fn right_adjoint_identity() {
        let a = powerset(2);
        let id = LatticeMap::identity(4);
        let star = right_adjoint(&id, &a.lattice, &a.lattice, &a.base).unwrap();
        assert_eq!(star, id);
    }

    #[test]
    fn right_adjoint_small() {
        let a = powerset(1);
        let f = LatticeMap::identity(2);
        let star = right_adjoint(&f, &a.lattice, &a.lattice, &a.base).unwrap();
        for p in 0..2 {
            for q in 0..2 {
                assert_eq!(
                    a.lattice.leq(f.apply(p), q),
                    a.lattice.leq(p, star.apply(q))
                );
            }
        }
    }

    #[test]
    fn constant_top_has_no_right_adjoint() {
        let a = powerset(2);
        let f = LatticeMap::constant(4, 4, a.lattice.top());
        assert!(matches!(
            right_adjoint(&f, &a.lattice, &a.lattice, &a.base),
            Err(Error::NoRightAdjoint)
        ));
    }

    #[test]
    fn symmetric_candidate_identity() {
        let a = powerset(2);
        let id = LatticeMap::identity(4);
        let g = symmetric_candidate(&id, &a, &a);
        assert_eq!(g, id);
        assert!(is_symmetric_pair(&id, &g, &a, &a));
    }

    #[test]
    fn symmetric_candidate_constant_top_fails() {
        let a = powerset(2);
        let f = LatticeMap::constant(4, 4, a.lattice.top());
        let g = symmetric_candidate(&f, &a, &a);
        assert!(!is_symmetric_pair(&f, &g, &a, &a));
    }

    #[test]
    fn relation_image_symmetric_pairs() {
        let a = powerset(2);
        for mask in 0..16u64 {
            let r = FiniteRelation::from_mask(2, 2, mask);
            let ops = relation_operators(&r);
            assert!(is_symmetric_pair(&ops.forward, &ops.inverse, &a, &a));
        }
        // (R-image, R*-image) is not symmetric for R = {(0,0),(0,1)}
        let r = FiniteRelation::new(2, 2, vec![(0, 0), (0, 1)]).unwrap();
        let ops = relation_operators(&r);
        assert!(!is_symmetric_pair(&ops.forward, &ops.star, &a, &a));
    }

    #[test]
    fn identity_is_o_morphism() {
        let a = powerset(2);
        let quad = check_o_morphism(&LatticeMap::identity(4), &a, &a).unwrap();
        assert_eq!(quad.f_minus, LatticeMap::identity(4));
        assert_eq!(quad.f_star, LatticeMap::identity(4));
        assert_eq!(quad.f_minus_star, LatticeMap::identity(4));
    }

    #[test]
    fn meet_with_fixed_element_is_o_morphism() {
        let a = powerset(2);
        let f = LatticeMap::new(4, 4, (0..4).map(|p| p & 0b01).collect()).unwrap();
        let quad = check_o_morphism(&f, &a, &a).unwrap();
        // self-symmetric
        assert_eq!(quad.f_minus, f);
    }

    #[test]
    fn relation_images_are_o_morphisms() {
        let a = powerset(2);
        for mask in 0..16u64 {
            let r = FiniteRelation::from_mask(2, 2, mask);
            let ops = relation_operators(&r);
            let quad = check_o_morphism(&ops.forward, &a, &a).unwrap();
            assert_eq!(quad.f_minus, ops.inverse);
            assert_eq!(quad.f_star, ops.star);
            assert_eq!(quad.f_minus_star, ops.inverse_star);
        }
    }

    #[test]
    fn red_condition_examples() {
        let a = powerset(2);
        assert!(red_condition(&LatticeMap::identity(4), &a, &a));
        let b = powerset(3);
        for mask in 0..64u64 {
            let r = FiniteRelation::from_mask(2, 3, mask);
            let ops = relation_operators(&r);
            assert!(red_condition(&ops.forward, &a, &b));
        }
        // non-monotone swap map
        let f = LatticeMap::new(4, 4, vec![0, 0b11, 0b10, 0]).unwrap();
        assert!(!red_condition(&f, &a, &a));
    }

    #[test]
    fn three_way_on_all_relation_maps() {
        let a = powerset(2);
        for mask in 0..16u64 {
            let r = FiniteRelation::from_mask(2, 2, mask);
            let ops = relation_operators(&r);
            assert!(three_way_equivalence(&ops.forward, &a, &a).unwrap());
        }
    }

    #[test]
    fn preserves_joins_examples() {
        let a = powerset(2);
        assert!(preserves_joins(
            &LatticeMap::identity(4),
            &a.lattice,
            &a.lattice
        ));
        assert!(preserves_joins(
            &LatticeMap::constant(4, 4, a.lattice.bottom()),
            &a.lattice,
            &a.lattice
        ));
        assert!(!preserves_joins(
            &LatticeMap::constant(4, 4, a.lattice.top()),
            &a.lattice,
            &a.lattice
        ));
    }

    #[test]
    fn equivalence_suite_counts() {
        let budget = Budget::default();
        let p1 = powerset(1);
        let p2 = powerset(2);
        let r = classical_equivalence_suite(&p2, &p2, &budget, 7).unwrap();
        assert!(r.exhaustive && r.sets_agree);
        assert_eq!(r.o_morphism_count, 16);
        assert_eq!(r.join_preserving_count, 16);

        let r = classical_equivalence_suite(&p1, &p2, &budget, 7).unwrap();
        assert_eq!(r.o_morphism_count, 4);
        let r = classical_equivalence_suite(&p1, &p1, &budget, 7).unwrap();
        assert_eq!(r.o_morphism_count, 2);
    }

    #[test]
    fn relation_operator_tables() {
        let id = FiniteRelation::identity(2);
        let ops = relation_operators(&id);
        assert_eq!(ops.forward, LatticeMap::identity(4));
        assert_eq!(ops.inverse, LatticeMap::identity(4));
        assert_eq!(ops.star, LatticeMap::identity(4));
        assert_eq!(ops.inverse_star, LatticeMap::identity(4));

        // R = {(0,0),(0,1)} from a 1-element to a 2-element ground set
        let r = FiniteRelation::new(1, 2, vec![(0, 0), (0, 1)]).unwrap();
        let ops = relation_operators(&r);
        assert_eq!(ops.forward.apply(0b1), 0b11);
        assert_eq!(ops.star.apply(0b01), 0b0);

        let empty = FiniteRelation::new(2, 2, vec![]).unwrap();
        let ops = relation_operators(&empty);
        assert!((0..4).all(|a| ops.forward.apply(a) == 0));
        assert!((0..4).all(|b| ops.star.apply(b) == 0b11));
    }

    #[test]
    fn relation_round_trip() {
        let a = powerset(2);
        for mask in 0..16u64 {
            let r = FiniteRelation::from_mask(2, 2, mask);
            let ops = relation_operators(&r);
            assert_eq!(morphism_to_relation(&ops.forward, &a, &a).unwrap(), r);
        }
        let f = LatticeMap::constant(4, 4, a.lattice.top());
        assert!(matches!(
            morphism_to_relation(&f, &a, &a),
            Err(Error::NotOMorphism { .. })
        ));
    }

    #[test]
    fn composition_law_examples() {
        let a = powerset(2);
        let id_quad = check_o_morphism(&LatticeMap::identity(4), &a, &a).unwrap();
        assert!(composition_laws(&id_quad, &id_quad, &a, &a, &a).unwrap());

        for (m1, m2) in [(0b0110u64, 0b1001u64), (0b0001, 0b1110), (5, 11)] {
            let r = FiniteRelation::from_mask(2, 2, m1);
            let s = FiniteRelation::from_mask(2, 2, m2);
            let rq = check_o_morphism(&relation_operators(&r).forward, &a, &a).unwrap();
            let sq = check_o_morphism(&relation_operators(&s).forward, &a, &a).unwrap();
            // composite of images equals image of relational composition
            assert!(composition_laws(&sq, &rq, &a, &a, &a).unwrap());
            let composed = sq.f.compose(&rq.f).unwrap();
            let rel_comp = r.compose(&s).unwrap();
            assert_eq!(composed, relation_operators(&rel_comp).forward);
        }
    }

    #[test]
    fn oo_morphism_examples() {
        let a = powerset(2);
        assert!(oo_morphism_check(&LatticeMap::identity(4), &a, &a).unwrap());
        let swap = LatticeMap::new(4, 4, vec![0, 0b11, 0b10, 0]).unwrap();
        assert!(!oo_morphism_check(&swap, &a, &a).unwrap());
    }

    #[test]
    fn symmetric_uniqueness_small_scale() {
        // enumerate every map g and check only the candidate is symmetric to f
        let a = powerset(1);
        for f_mask in 0..4usize {
            let f = LatticeMap::new(2, 2, vec![f_mask & 1, (f_mask >> 1) & 1]).unwrap();
            let cand = symmetric_candidate(&f, &a, &a);
            let f_sym = is_symmetric_pair(&f, &cand, &a, &a);
            let mut count = 0;
            for g_mask in 0..4usize {
                let g = LatticeMap::new(2, 2, vec![g_mask & 1, (g_mask >> 1) & 1]).unwrap();
                if is_symmetric_pair(&f, &g, &a, &a) {
                    count += 1;
                    assert_eq!(g, cand);
                }
            }
            assert_eq!(count, usize::from(f_sym));
        }
    }

    #[test]
    fn double_symmetric_is_identity_on_f() {
        let a = powerset(2);
        for mask in 0..16u64 {
            let r = FiniteRelation::from_mask(2, 2, mask);
            let f = relation_operators(&r).forward;
            let quad = check_o_morphism(&f, &a, &a).unwrap();
            // (f^-)^- = f and symmetric maps preserve joins
            let back = symmetric_candidate(&quad.f_minus, &a, &a);
            assert_eq!(back, f);
            assert!(preserves_joins(&quad.f_minus, &a.lattice, &a.lattice));
        }
    }
}
