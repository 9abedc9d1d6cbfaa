//! Named constructions: the free overlap algebra on a finite set, the
//! Dedekind-MacNeille completion with join-preserving map extension, the
//! finite-cofinite family F(X), and generated oo-sublattices of a powerset.

use crate::error::{Budget, Error, Result};
use crate::lattice::{
    build_lattice, is_boolean, mask_name, minimal_base, BaseFamily, FiniteLattice,
};
use crate::morphism::{check_o_morphism, preserves_joins, red_condition, symmetric_candidate, LatticeMap};
use crate::overlap::{canonical_overlap, oo_structure_check, OAlgebra, OoStructureReport};
use crate::subset::ElementSubset;

/// The free o-algebra P(X) on `x_size` points, together with the mediating
/// map induced by a point assignment into another algebra.
#[derive(Clone, Debug)]
pub struct FreeAlgebraResult {
    /// P(X); its elements are the subset masks of X
    pub algebra: OAlgebra,
    /// x |-> the singleton {x} as an element of the algebra
    pub unit: Vec<usize>,
    /// the join extension of the point assignment
    pub mediating: LatticeMap,
    /// the mediating map commutes with the unit
    pub commutes: bool,
    /// no other morphism in the candidate family commutes with the unit
    pub unique: bool,
    /// the symmetric partner agrees with its direct overlap formula
    pub symmetric_matches_formula: bool,
}

/// Build P(X), the join-extension of `f: X -> Q`, and verify the universal
/// property: the extension is an o-morphism, commutes with the unit, and is
/// the only such map. Candidate morphisms are enumerated exhaustively when
/// |Q|^|P(X)| fits the budget, otherwise through their base images (any
/// competitor preserves joins, so base images determine it).
pub fn free_oalgebra(
    x_size: usize,
    q: &OAlgebra,
    f: &[usize],
    budget: &Budget,
) -> Result<FreeAlgebraResult> {
    if f.len() != x_size {
        return Err(Error::CarrierMismatch {
            expected: x_size,
            got: f.len(),
        });
    }
    let nq = q.lattice.len();
    if let Some(&bad) = f.iter().find(|&&v| v >= nq) {
        return Err(Error::CarrierMismatch {
            expected: nq,
            got: bad,
        });
    }
    let algebra = OAlgebra::powerset(x_size, budget)?;
    let np = algebra.lattice.len();
    let unit: Vec<usize> = (0..x_size).map(|x| 1usize << x).collect();

    let extend = |images: &[usize]| -> Vec<usize> {
        (0..np)
            .map(|mask| {
                (0..x_size)
                    .filter(|x| mask >> x & 1 == 1)
                    .fold(q.lattice.bottom(), |acc, x| q.lattice.join(acc, images[x]))
            })
            .collect()
    };
    let mediating = LatticeMap::new(np, nq, extend(f))?;
    check_o_morphism(&mediating, &algebra, q)?;
    let commutes = (0..x_size).all(|x| mediating.apply(unit[x]) == f[x]);

    // uniqueness among o-morphisms commuting with the unit
    let total = (nq as u128).checked_pow(np as u32).unwrap_or(u128::MAX);
    let mut unique = true;
    if total <= budget.map_enum_limit as u128 {
        let mut table = vec![0usize; np];
        'outer: loop {
            let g = LatticeMap::new(np, nq, table.clone())?;
            if (0..x_size).all(|x| g.apply(unit[x]) == f[x])
                && g != mediating
                && check_o_morphism(&g, &algebra, q).is_ok()
            {
                unique = false;
            }
            let mut i = 0;
            while i < np {
                table[i] += 1;
                if table[i] < nq {
                    continue 'outer;
                }
                table[i] = 0;
                i += 1;
            }
            break;
        }
    } else {
        let family = (nq as u128).checked_pow(x_size as u32).unwrap_or(u128::MAX);
        if family > budget.map_enum_limit as u128 {
            return Err(Error::SearchBudgetExceeded {
                what: format!("{family} candidate point assignments"),
            });
        }
        let mut images = vec![0usize; x_size];
        'fam: loop {
            if images != f {
                let g = LatticeMap::new(np, nq, extend(&images))?;
                if (0..x_size).all(|x| g.apply(unit[x]) == f[x]) && g != mediating {
                    unique = false;
                }
            }
            let mut i = 0;
            while i < x_size {
                images[i] += 1;
                if images[i] < nq {
                    continue 'fam;
                }
                images[i] = 0;
                i += 1;
            }
            break;
        }
    }

    // simplified symmetric formula: g(q') = { x | f(x) ovl q' }
    let sym = symmetric_candidate(&mediating, &algebra, q);
    let symmetric_matches_formula = (0..nq).all(|qp| {
        let mask: usize = (0..x_size)
            .filter(|&x| q.overlaps(f[x], qp))
            .map(|x| 1usize << x)
            .sum();
        sym.apply(qp) == mask
    });

    Ok(FreeAlgebraResult {
        algebra,
        unit,
        mediating,
        commutes,
        unique,
        symmetric_matches_formula,
    })
}

/// The Dedekind-MacNeille completion of a finite poset: the lattice of
/// normal cuts ordered by inclusion, with the principal-cut embedding.
#[derive(Clone, Debug)]
pub struct CutLattice {
    pub source_size: usize,
    /// each cut is a lower set over the source, fixed by lb(ub(-))
    pub cuts: Vec<ElementSubset>,
    pub lattice: FiniteLattice,
    /// source element -> index of its principal cut
    pub embedding: Vec<usize>,
}

impl CutLattice {
    /// The completion adds nothing when the embedding is a bijection.
    pub fn is_isomorphic_to_source(&self) -> bool {
        self.cuts.len() == self.source_size
    }
}

fn validate_poset(leq: &[Vec<bool>]) -> Result<usize> {
    let n = leq.len();
    if leq.iter().any(|row| row.len() != n) {
        return Err(Error::NotPoset {
            reason: "order matrix is not square".into(),
        });
    }
    for i in 0..n {
        if !leq[i][i] {
            return Err(Error::NotPoset {
                reason: format!("not reflexive at {i}"),
            });
        }
        for j in 0..n {
            if i != j && leq[i][j] && leq[j][i] {
                return Err(Error::NotPoset {
                    reason: format!("not antisymmetric at ({i},{j})"),
                });
            }
            for k in 0..n {
                if leq[i][j] && leq[j][k] && !leq[i][k] {
                    return Err(Error::NotPoset {
                        reason: format!("not transitive at ({i},{j},{k})"),
                    });
                }
            }
        }
    }
    Ok(n)
}

/// All normal cuts of the poset, as the fixed points of lb(ub(-)).
pub fn dm_completion(leq: &[Vec<bool>]) -> Result<CutLattice> {
    let n = validate_poset(leq)?;
    assert!(n <= 16, "cut enumeration scans all subsets");

    let ub = |a: &ElementSubset| -> ElementSubset {
        ElementSubset::from_indices(n, (0..n).filter(|&u| a.iter().all(|x| leq[x][u])))
    };
    let lb = |a: &ElementSubset| -> ElementSubset {
        ElementSubset::from_indices(n, (0..n).filter(|&l| a.iter().all(|x| leq[l][x])))
    };

    let mut cuts: Vec<ElementSubset> = crate::subset::all_subsets(n)
        .map(|a| lb(&ub(&a)))
        .collect();
    cuts.sort_by_key(|c| (c.count(), c.clone()));
    cuts.dedup();

    let m = cuts.len();
    let order: Vec<Vec<bool>> = cuts
        .iter()
        .map(|a| cuts.iter().map(|b| a.is_subset_of(b)).collect())
        .collect();
    let names: Vec<String> = cuts
        .iter()
        .map(|c| {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            format!("[{}]", parts.join(" "))
        })
        .collect();
    let lattice = build_lattice(names, &order)?;

    let embedding: Vec<usize> = (0..n)
        .map(|x| {
            let principal = lb(&ub(&ElementSubset::singleton(n, x)));
            cuts.iter().position(|c| *c == principal).unwrap()
        })
        .collect();

    // the embedding is an order embedding, and the image is join-dense and
    // meet-dense in the completion
    for x in 0..n {
        for y in 0..n {
            if leq[x][y] != lattice.leq(embedding[x], embedding[y]) {
                return Err(Error::TheoremViolation {
                    theorem: "principal-cut embedding reflects the order",
                });
            }
        }
    }
    for (i, c) in cuts.iter().enumerate() {
        let below = ElementSubset::from_indices(m, c.iter().map(|x| embedding[x]));
        if lattice.join_of(&below) != i {
            return Err(Error::TheoremViolation {
                theorem: "source image is join-dense in the completion",
            });
        }
        let above = ElementSubset::from_indices(
            m,
            (0..n).filter(|&x| lattice.leq(i, embedding[x])).map(|x| embedding[x]),
        );
        if lattice.meet_of(&above) != i {
            return Err(Error::TheoremViolation {
                theorem: "source image is meet-dense in the completion",
            });
        }
    }

    Ok(CutLattice {
        source_size: n,
        cuts,
        lattice,
        embedding,
    })
}

/// A join-preserving map between finite lattices, lifted to their
/// completions, with the verified restriction and condition-transfer facts.
#[derive(Clone, Debug)]
pub struct DmExtension {
    pub source_completion: CutLattice,
    pub target_completion: CutLattice,
    pub extended: LatticeMap,
    /// extension composed with the embeddings reproduces the original map
    pub restricts: bool,
    /// the intrinsic morphism condition over a base of the source transfers
    /// unchanged to the completion; absent when either completion carries no
    /// overlap structure
    pub red_transfer: Option<bool>,
}

fn leq_matrix(l: &FiniteLattice) -> Vec<Vec<bool>> {
    l.elements()
        .map(|p| l.elements().map(|q| l.leq(p, q)).collect())
        .collect()
}

/// Extend a join-preserving map `f: b -> b2` to the completions by sending a
/// cut to the join of the images of its members.
pub fn dm_extend(f: &LatticeMap, b: &FiniteLattice, b2: &FiniteLattice) -> Result<DmExtension> {
    if f.source_len() != b.len() || f.target_len() != b2.len() {
        return Err(Error::ShapeMismatch {
            left: f.source_len(),
            right: b.len(),
        });
    }
    if !preserves_joins(f, b, b2) {
        return Err(Error::NotJoinPreserving);
    }
    let src = dm_completion(&leq_matrix(b))?;
    let tgt = dm_completion(&leq_matrix(b2))?;

    let table: Vec<usize> = src
        .cuts
        .iter()
        .map(|c| {
            let images = ElementSubset::from_indices(
                tgt.lattice.len(),
                c.iter().map(|x| tgt.embedding[f.apply(x)]),
            );
            tgt.lattice.join_of(&images)
        })
        .collect();
    let extended = LatticeMap::new(src.lattice.len(), tgt.lattice.len(), table)?;

    let restricts = b
        .elements()
        .all(|x| extended.apply(src.embedding[x]) == tgt.embedding[f.apply(x)]);
    if !preserves_joins(&extended, &src.lattice, &tgt.lattice) {
        return Err(Error::TheoremViolation {
            theorem: "join-preserving extension preserves joins",
        });
    }

    // condition transfer: a base of b remains a base of the completion, and
    // the intrinsic condition holds for the extension over that base exactly
    // when it holds over the completion's own base
    let red_transfer = match (dm_oalgebra(&src), dm_oalgebra(&tgt)) {
        (Some(src_alg), Some(tgt_alg)) => {
            let embedded: Vec<usize> = minimal_base(b)
                .members()
                .iter()
                .map(|&a| src.embedding[a])
                .collect();
            match BaseFamily::new(&src_alg.lattice, embedded) {
                Ok(base_s) => {
                    let over_s = OAlgebra::new(
                        src_alg.lattice.clone(),
                        base_s,
                        src_alg.overlap.clone(),
                    )
                    .map(|alg| red_condition(&extended, &alg, &tgt_alg));
                    let over_own = red_condition(&extended, &src_alg, &tgt_alg);
                    match over_s {
                        Ok(v) => Some(v == over_own && v),
                        Err(_) => None,
                    }
                }
                Err(_) => None,
            }
        }
        _ => None,
    };

    Ok(DmExtension {
        source_completion: src,
        target_completion: tgt,
        extended,
        restricts,
        red_transfer,
    })
}

fn dm_oalgebra(c: &CutLattice) -> Option<OAlgebra> {
    if !is_boolean(&c.lattice) {
        return None;
    }
    let base = minimal_base(&c.lattice);
    let overlap = canonical_overlap(&c.lattice);
    OAlgebra::new(c.lattice.clone(), base, overlap).ok()
}

/// A verified sub-family of P(X): its member masks, the induced lattice with
/// the inherited overlap, and its classification.
#[derive(Clone, Debug)]
pub struct SubfamilyReport {
    pub ground_size: usize,
    /// subset masks belonging to the family, ascending
    pub members: Vec<usize>,
    pub algebra: OAlgebra,
    pub structure: OoStructureReport,
    /// at finite ground size the family collapses to all of P(X); the
    /// distinction is a constructive one, invisible here
    pub equals_powerset: bool,
}

fn subfamily_algebra(ground: usize, members: &[usize]) -> Result<OAlgebra> {
    let full = (1usize << ground) - 1;
    let order: Vec<Vec<bool>> = members
        .iter()
        .map(|&a| members.iter().map(|&b| a & b == a).collect())
        .collect();
    let names: Vec<String> = members.iter().map(|&a| mask_name(ground, a as u64)).collect();
    let lattice = build_lattice(names, &order)?;
    // closure under the set operations: lattice meet/join are exactly them
    for (i, &a) in members.iter().enumerate() {
        for (j, &b) in members.iter().enumerate() {
            if members[lattice.meet(i, j)] != a & b || members[lattice.join(i, j)] != a | b {
                return Err(Error::TheoremViolation {
                    theorem: "sub-family is closed under union and intersection",
                });
            }
            // relative pseudocomplement stays inside the family
            let arrow = members
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c & a & !b & full == 0)
                .fold(0usize, |acc, (_, &c)| acc | c);
            if !members.contains(&arrow) {
                return Err(Error::TheoremViolation {
                    theorem: "sub-family is closed under implication",
                });
            }
        }
    }
    let base = minimal_base(&lattice);
    let overlap = canonical_overlap(&lattice);
    OAlgebra::new(lattice, base, overlap)
}

/// The finite-cofinite family: subsets A with some finite K such that
/// A is inside the double complement of K or the complement of K is inside
/// A. Every K is finite here, so the scan is a direct disjunction.
pub fn finite_cofinite(ground: usize, budget: &Budget) -> Result<SubfamilyReport> {
    let total = 1usize << ground;
    if total > budget.max_lattice_elements {
        return Err(Error::SizeLimit {
            requested: total,
            limit: budget.max_lattice_elements,
        });
    }
    let full = total - 1;
    let members: Vec<usize> = (0..total)
        .filter(|&a| {
            (0..total).any(|k| {
                let not_k = !k & full;
                let not_not_k = !not_k & full;
                a & !not_not_k & full == 0 || not_k & !a & full == 0
            })
        })
        .collect();
    let algebra = subfamily_algebra(ground, &members)?;
    let structure = oo_structure_check(&algebra.lattice, &algebra.base, &algebra.overlap)?;
    // density through singletons alone
    let singleton_density = {
        let l = &algebra.lattice;
        let singles: Vec<usize> = (0..ground)
            .filter_map(|x| members.iter().position(|&m| m == 1 << x))
            .collect();
        l.elements().all(|p| {
            l.elements().all(|q| {
                let ante = singles
                    .iter()
                    .all(|&s| !algebra.overlaps(s, p) || algebra.overlaps(s, q));
                !ante || l.leq(p, q)
            })
        })
    };
    if !singleton_density {
        return Err(Error::TheoremViolation {
            theorem: "density through singletons",
        });
    }
    Ok(SubfamilyReport {
        ground_size: ground,
        equals_powerset: members.len() == total,
        members,
        algebra,
        structure,
    })
}

/// Least sub-family of P(X) containing the singletons and the seeds, closed
/// under union, intersection and (pseudo)complement; computed as a fixpoint.
pub fn generated_oo_sublattice(
    ground: usize,
    seeds: &[usize],
    budget: &Budget,
) -> Result<SubfamilyReport> {
    let total = 1usize << ground;
    if total > budget.max_lattice_elements {
        return Err(Error::SizeLimit {
            requested: total,
            limit: budget.max_lattice_elements,
        });
    }
    let full = total - 1;
    if let Some(&bad) = seeds.iter().find(|&&s| s > full) {
        return Err(Error::CarrierMismatch {
            expected: full,
            got: bad,
        });
    }
    let mut in_family = vec![false; total];
    in_family[0] = true;
    in_family[full] = true;
    for x in 0..ground {
        in_family[1 << x] = true;
    }
    for &s in seeds {
        in_family[s] = true;
    }
    let mut changed = true;
    while changed {
        changed = false;
        let current: Vec<usize> = (0..total).filter(|&m| in_family[m]).collect();
        for &a in &current {
            let c = !a & full;
            if !in_family[c] {
                in_family[c] = true;
                changed = true;
            }
            for &b in &current {
                for m in [a | b, a & b] {
                    if !in_family[m] {
                        in_family[m] = true;
                        changed = true;
                    }
                }
            }
        }
    }
    let members: Vec<usize> = (0..total).filter(|&m| in_family[m]).collect();
    let algebra = subfamily_algebra(ground, &members)?;
    let structure = oo_structure_check(&algebra.lattice, &algebra.base, &algebra.overlap)?;
    Ok(SubfamilyReport {
        ground_size: ground,
        equals_powerset: members.len() == total,
        members,
        algebra,
        structure,
    })
}
