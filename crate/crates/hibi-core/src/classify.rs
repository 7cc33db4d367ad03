//! Structural classification of distributive lattices: tree and honest
//! lattices, products of chains, pruning at a maximal join-irreducible, and
//! the counting lemmas that connect pruning to partner sets.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use serde::Serialize;

use crate::diamonds::{partner_sets_all, Diamond};
use crate::lattice::{ElementId, Lattice};
use crate::poset::OrderIdeal;
use crate::{Error, Result};

/// True when every cover of the rooted join-irreducible poset (bottom plus
/// principal ideals, ordered as lattice elements) is also a cover of the
/// lattice itself.
pub fn is_honest(l: &Lattice) -> bool {
    let ji = l.ji_poset();
    let root_covers = ji
        .minimals()
        .into_iter()
        .all(|m| l.is_cover(l.bottom(), l.principal(m)));
    let ji_covers = ji
        .covers()
        .iter()
        .all(|&(lo, hi)| l.is_cover(l.principal(lo), l.principal(hi)));
    root_covers && ji_covers
}

/// True when the Hasse diagram of the rooted join-irreducible poset is a
/// tree (connected and acyclic).
pub fn is_tree_lattice(l: &Lattice) -> bool {
    l.rooted_ji_poset().hasse_is_tree()
}

/// True when the lattice is a tree lattice whose rooted join-irreducible
/// Hasse diagram branches only at the root, i.e. every non-root vertex has
/// degree at most two. These are exactly the products of chains.
pub fn is_square_lattice(l: &Lattice) -> bool {
    if !is_tree_lattice(l) {
        return false;
    }
    let rooted = l.rooted_ji_poset();
    rooted
        .max_degree_except_root()
        .map(|d| d <= 2)
        .unwrap_or(false)
}

/// True when every proper join-irreducible has at most one lower cover
/// among the proper join-irreducibles; holds in every tree lattice.
pub fn has_unique_ji_predecessors(l: &Lattice) -> bool {
    let ji = l.ji_poset();
    (0..ji.len()).all(|j| ji.lower_covers(j).len() <= 1)
}

/// Checks that every join-irreducible is prime: whenever `x v y` is above a
/// join-irreducible, one of `x`, `y` already is. This is what makes partner
/// counting across a pruning work.
pub fn verify_join_check(l: &Lattice) -> bool {
    let ji_elems: Vec<ElementId> = (0..l.ji_poset().len()).map(|j| l.principal(j)).collect();
    for x in 0..l.len() {
        for y in 0..l.len() {
            let join = l.join(x, y);
            for &beta in &ji_elems {
                if l.leq(beta, join) && !l.leq(beta, x) && !l.leq(beta, y) {
                    return false;
                }
            }
        }
    }
    true
}

/// Result of testing the tree/honest equivalence on one lattice.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct EquivalenceCheck {
    pub lattice: String,
    pub tree: bool,
    pub honest: bool,
    pub holds: bool,
}

/// Evaluates both predicates and reports whether they agree.
pub fn verify_tree_honest_equivalence(l: &Lattice) -> EquivalenceCheck {
    let tree = is_tree_lattice(l);
    let honest = is_honest(l);
    EquivalenceCheck {
        lattice: l.name().to_owned(),
        tree,
        honest,
        holds: tree == honest,
    }
}

/// A verified isomorphism between a lattice and a product of chains.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ChainDecomposition {
    /// Chain sizes, one per branch of the join-irreducible tree, in branch
    /// order (branches sorted by their minimal element).
    pub factor_sizes: Vec<usize>,
    /// Proper join-irreducible indices of each branch, bottom-up.
    pub branches: Vec<Vec<usize>>,
    /// Chain position tuple of every lattice element in canonical order;
    /// entry `i` is the length of the ideal's prefix of branch `i`.
    pub coordinates: Vec<Vec<usize>>,
}

/// Splits a square lattice into its chain factors and verifies the tuple
/// map is an isomorphism of lattices before returning it.
pub fn decompose_chain_product(l: &Lattice) -> Result<ChainDecomposition> {
    if !is_square_lattice(l) {
        return Err(Error::NotSquare);
    }
    let ji = l.ji_poset();

    // The join-irreducibles of a square lattice form disjoint chains; walk
    // each one upward from its minimal element.
    let mut branches: Vec<Vec<usize>> = Vec::new();
    for start in ji.minimals() {
        let mut branch = vec![start];
        loop {
            let ups = ji.upper_covers(*branch.last().unwrap());
            match ups.as_slice() {
                [] => break,
                [next] => branch.push(*next),
                _ => unreachable!("square lattice branch splits above the root"),
            }
        }
        branches.push(branch);
    }
    let covered: usize = branches.iter().map(Vec::len).sum();
    assert_eq!(covered, ji.len(), "branches must partition the chains");

    let factor_sizes: Vec<usize> = branches.iter().map(|b| b.len() + 1).collect();
    assert_eq!(
        factor_sizes.iter().product::<usize>(),
        l.len(),
        "factor sizes must multiply to the lattice size"
    );

    // Coordinates: an ideal meets each branch in a prefix.
    let mut coordinates = Vec::with_capacity(l.len());
    for e in 0..l.len() {
        let ideal = l.ideal(e);
        let mut tuple = Vec::with_capacity(branches.len());
        for branch in &branches {
            let len = branch.iter().filter(|&&j| ideal.contains(j)).count();
            for (k, &j) in branch.iter().enumerate() {
                assert_eq!(
                    ideal.contains(j),
                    k < len,
                    "ideal must meet each branch in a prefix"
                );
            }
            tuple.push(len);
        }
        coordinates.push(tuple);
    }

    // The tuple map must be a bijection preserving order, join, and meet.
    let distinct: BTreeSet<&Vec<usize>> = coordinates.iter().collect();
    assert_eq!(distinct.len(), l.len(), "coordinate tuples must be distinct");
    for a in 0..l.len() {
        for b in 0..l.len() {
            let pointwise_leq = coordinates[a]
                .iter()
                .zip(&coordinates[b])
                .all(|(x, y)| x <= y);
            assert_eq!(l.leq(a, b), pointwise_leq, "order must match tuples");
            let join = l.join(a, b);
            let meet = l.meet(a, b);
            for i in 0..branches.len() {
                assert_eq!(
                    coordinates[join][i],
                    coordinates[a][i].max(coordinates[b][i]),
                    "join must be the pointwise maximum"
                );
                assert_eq!(
                    coordinates[meet][i],
                    coordinates[a][i].min(coordinates[b][i]),
                    "meet must be the pointwise minimum"
                );
            }
        }
    }

    Ok(ChainDecomposition {
        factor_sizes,
        branches,
        coordinates,
    })
}

/// Result of pruning a lattice at a maximal proper join-irreducible.
#[derive(Debug, Clone)]
pub struct PruneResult {
    /// Name of the pruned join-irreducible.
    pub beta: String,
    /// Ideal lattice of the join-irreducibles with `beta` removed.
    pub sublattice: Lattice,
    /// Elements of the original lattice whose ideals contain `beta`, in
    /// canonical order: the complement of the sublattice's image.
    pub removed: Vec<ElementId>,
    /// For each sublattice element, the original element with the same
    /// ideal.
    pub embedding: Vec<ElementId>,
}

/// Removes a maximal proper join-irreducible and rebuilds the ideal
/// lattice, verifying that what disappears is exactly the up-set of `beta`.
pub fn prune(l: &Lattice, beta: &str) -> Result<PruneResult> {
    let ji = l.ji_poset();
    let beta_idx = ji.index_of(beta)?;
    if !ji.upper_covers(beta_idx).is_empty() {
        return Err(Error::NotMaximalJoinIrreducible {
            name: beta.to_owned(),
        });
    }
    let sub_ji = ji.without(beta_idx, &format!("{}-minus-{}", ji.name(), beta));
    let sublattice = Lattice::birkhoff(&sub_ji)?;

    // Index translation from the pruned poset back into the original.
    let back: Vec<usize> = sub_ji
        .names()
        .iter()
        .map(|n| ji.index_of(n).expect("pruned name exists in the original"))
        .collect();
    let embedding: Vec<ElementId> = sublattice
        .ideals()
        .iter()
        .map(|ideal| {
            let translated = ideal
                .members()
                .fold(OrderIdeal::EMPTY, |acc, j| acc.with(back[j]));
            l.element_of_ideal(translated)
                .expect("pruned ideal embeds into the original lattice")
        })
        .collect();

    let beta_elem = l.principal(beta_idx);
    let removed: Vec<ElementId> = (0..l.len()).filter(|&e| l.leq(beta_elem, e)).collect();

    // The up-set of beta and the embedded sublattice partition the lattice.
    assert_eq!(removed.len() + embedding.len(), l.len());
    let image: BTreeSet<ElementId> = embedding.iter().copied().collect();
    assert_eq!(image.len(), embedding.len(), "embedding must be injective");
    assert!(removed.iter().all(|e| !image.contains(e)));
    assert!(removed
        .iter()
        .all(|&e| l.ideal(e).contains(beta_idx)));
    // The up-set is closed under join and meet.
    for &a in &removed {
        for &b in &removed {
            assert!(removed.binary_search(&l.join(a, b)).is_ok());
            assert!(removed.binary_search(&l.meet(a, b)).is_ok());
        }
    }
    // The embedding preserves order, join, and meet.
    for (s, &a) in embedding.iter().enumerate() {
        for (t, &b) in embedding.iter().enumerate() {
            assert_eq!(sublattice.leq(s, t), l.leq(a, b));
            assert_eq!(embedding[sublattice.join(s, t)], l.join(a, b));
            assert_eq!(embedding[sublattice.meet(s, t)], l.meet(a, b));
        }
    }
    assert_eq!(sublattice.rooted_ji_count(), l.rooted_ji_count() - 1);

    Ok(PruneResult {
        beta: beta.to_owned(),
        sublattice,
        removed,
        embedding,
    })
}

/// Result of testing the pruning bijection at one join-irreducible.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct BijectionCheck {
    pub lattice: String,
    pub beta: String,
    /// The unique join-irreducible directly below `beta`, or the root.
    pub beta1: String,
    pub upset_size: usize,
    pub removed_size: usize,
    pub holds: bool,
}

/// Verifies that `x -> x v beta` maps the up-set of `beta1` inside the
/// pruned lattice isomorphically onto the up-set of `beta`.
pub fn verify_bijection_lemma(l: &Lattice, beta: &str) -> Result<BijectionCheck> {
    let pruned = prune(l, beta)?;
    let ji = l.ji_poset();
    let beta_idx = ji.index_of(beta)?;
    let lower = ji.lower_covers(beta_idx);
    if lower.len() > 1 {
        return Err(Error::NoUniquePredecessor {
            name: beta.to_owned(),
        });
    }
    let sub = &pruned.sublattice;
    let (beta1_name, beta1_elem) = match lower.as_slice() {
        [] => (l.root_name().to_owned(), sub.bottom()),
        [p] => {
            let name = ji.element_name(*p).to_owned();
            let sub_idx = sub.ji_poset().index_of(&name)?;
            (name, sub.principal(sub_idx))
        }
        _ => unreachable!(),
    };

    let upset: Vec<ElementId> = (0..sub.len())
        .filter(|&x| sub.leq(beta1_elem, x))
        .collect();
    let beta_elem = l.principal(beta_idx);
    let image: Vec<ElementId> = upset
        .iter()
        .map(|&x| l.join(pruned.embedding[x], beta_elem))
        .collect();

    // Bijectivity onto the removed up-set.
    let image_set: BTreeSet<ElementId> = image.iter().copied().collect();
    assert_eq!(image_set.len(), image.len(), "the map must be injective");
    let removed_set: BTreeSet<ElementId> = pruned.removed.iter().copied().collect();
    assert_eq!(image_set, removed_set, "the map must be onto the up-set");
    // Order isomorphism in both directions.
    for (i, &x) in upset.iter().enumerate() {
        for (j, &y) in upset.iter().enumerate() {
            assert_eq!(sub.leq(x, y), l.leq(image[i], image[j]));
        }
    }

    Ok(BijectionCheck {
        lattice: l.name().to_owned(),
        beta: beta.to_owned(),
        beta1: beta1_name,
        upset_size: upset.len(),
        removed_size: pruned.removed.len(),
        holds: true,
    })
}

/// Outcome of one of the pruning/partner counting lemmas at a fixed `beta`.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct LemmaReport {
    pub lattice: String,
    pub beta: String,
    /// The claimed lower bound `|L| - |L_beta| - 1`.
    pub bound: usize,
    pub alphas_checked: usize,
    /// Labels of elements where the partner-count difference undershoots
    /// the bound.
    pub violations: Vec<String>,
    /// Labels of elements where the inequality is strict; empty exactly
    /// when the bound is attained everywhere.
    pub strict_at: Vec<String>,
    pub holds: bool,
}

/// Shared setup of the two counting lemmas: pruning plus per-element
/// partner-count differences, with the sublattice's partner sets verified
/// to embed into the original ones.
fn partner_count_differences(
    l: &Lattice,
    pruned: &PruneResult,
) -> (Vec<usize>, Vec<crate::diamonds::PartnerSet>) {
    let partners_l = partner_sets_all(l);
    let partners_sub = partner_sets_all(&pruned.sublattice);
    let mut diffs = Vec::with_capacity(pruned.embedding.len());
    for (s, &alpha) in pruned.embedding.iter().enumerate() {
        let full = &partners_l[alpha];
        for &p in &partners_sub[s].partners {
            assert!(
                full.partners.binary_search(&pruned.embedding[p]).is_ok(),
                "sublattice partner sets embed into the original"
            );
        }
        diffs.push(full.count() - partners_sub[s].count());
    }
    (diffs, partners_l)
}

/// Checks, for every element of the pruned lattice, that pruning removed at
/// least `|L| - |L_beta| - 1` of its partners.
pub fn verify_lemma_inequality(l: &Lattice, beta: &str) -> Result<LemmaReport> {
    if !is_square_lattice(l) {
        return Err(Error::NotSquare);
    }
    let pruned = prune(l, beta)?;
    let bound = pruned.removed.len() - 1;
    let (diffs, _) = partner_count_differences(l, &pruned);
    let mut violations = Vec::new();
    let mut strict_at = Vec::new();
    for (s, &alpha) in pruned.embedding.iter().enumerate() {
        if diffs[s] < bound {
            violations.push(l.label(alpha).to_owned());
        } else if diffs[s] > bound {
            strict_at.push(l.label(alpha).to_owned());
        }
    }
    Ok(LemmaReport {
        lattice: l.name().to_owned(),
        beta: beta.to_owned(),
        bound,
        alphas_checked: pruned.embedding.len(),
        holds: violations.is_empty(),
        violations,
        strict_at,
    })
}

/// Checks the same bound by re-running the constructive argument: for every
/// element `alpha` of the pruned lattice and every removed element `b1`
/// other than `b = alpha v beta`, it builds the diamond promised by the
/// three-case analysis in chain coordinates, verifies it is a genuine
/// diamond containing `alpha` with partner `b1`, and only then counts.
pub fn verify_lemma_greater(l: &Lattice, beta: &str) -> Result<LemmaReport> {
    let deco = decompose_chain_product(l)?;
    let pruned = prune(l, beta)?;
    let ji = l.ji_poset();
    let beta_idx = ji.index_of(beta)?;

    // beta is maximal, hence the top of its branch chain.
    let branch = deco
        .branches
        .iter()
        .position(|b| b.contains(&beta_idx))
        .expect("beta belongs to some branch");
    assert_eq!(*deco.branches[branch].last().unwrap(), beta_idx);
    let top_coord = deco.factor_sizes[branch] - 1;

    let tuple_of: BTreeMap<&Vec<usize>, ElementId> = deco
        .coordinates
        .iter()
        .enumerate()
        .map(|(e, t)| (t, e))
        .collect();

    let bound = pruned.removed.len() - 1;
    let (diffs, partners_l) = partner_count_differences(l, &pruned);
    let beta_elem = l.principal(beta_idx);

    let mut violations = Vec::new();
    let mut strict_at = Vec::new();
    for (s, &alpha) in pruned.embedding.iter().enumerate() {
        // b is the least removed element above alpha: alpha with the branch
        // coordinate raised to the top.
        let b = l.join(alpha, beta_elem);
        assert!(pruned.removed.binary_search(&b).is_ok());
        for &g in &pruned.removed {
            if l.leq(alpha, g) {
                assert!(l.leq(b, g), "b must be minimal above alpha");
            }
        }
        let mut expected = deco.coordinates[alpha].clone();
        expected[branch] = top_coord;
        assert_eq!(deco.coordinates[b], expected);

        let mut constructed = BTreeSet::new();
        for &b1 in &pruned.removed {
            if b1 == b {
                continue;
            }
            let diamond = if l.leq(b, b1) {
                // Case one: lower b1's branch coordinate back to alpha's.
                let mut zc = deco.coordinates[b1].clone();
                zc[branch] = deco.coordinates[alpha][branch];
                let z = tuple_of[&zc];
                assert!(l.incomparable(z, b));
                assert_eq!(l.join(z, b), b1);
                assert_eq!(l.meet(z, b), alpha);
                Diamond {
                    x: z.min(b),
                    y: z.max(b),
                    top: b1,
                    bottom: alpha,
                }
            } else if l.leq(b1, b) {
                // Case two: alpha and b1 are incomparable and join to b.
                assert!(l.incomparable(alpha, b1));
                assert_eq!(l.join(alpha, b1), b);
                Diamond {
                    x: alpha.min(b1),
                    y: alpha.max(b1),
                    top: b,
                    bottom: l.meet(alpha, b1),
                }
            } else {
                // Case three: b1 incomparable to b, hence also to alpha.
                assert!(l.incomparable(alpha, b1));
                Diamond {
                    x: alpha.min(b1),
                    y: alpha.max(b1),
                    top: l.join(alpha, b1),
                    bottom: l.meet(alpha, b1),
                }
            };
            // The produced 4-set is a genuine diamond yielding the partner
            // pair (alpha, b1).
            assert!(l.incomparable(diamond.x, diamond.y));
            assert_eq!(l.join(diamond.x, diamond.y), diamond.top);
            assert_eq!(l.meet(diamond.x, diamond.y), diamond.bottom);
            let members = diamond.members();
            assert!(members.iter().collect::<BTreeSet<_>>().len() == 4);
            assert!(diamond.contains(alpha));
            assert_eq!(diamond.partner_of(alpha), Some(b1));
            assert!(
                partners_l[alpha].partners.binary_search(&b1).is_ok(),
                "constructed partner must appear in the full partner set"
            );
            constructed.insert(b1);
        }
        assert_eq!(constructed.len(), bound, "one new partner per removed element");

        if diffs[s] < bound {
            violations.push(l.label(alpha).to_owned());
        } else if diffs[s] > bound {
            strict_at.push(l.label(alpha).to_owned());
        }
    }
    Ok(LemmaReport {
        lattice: l.name().to_owned(),
        beta: beta.to_owned(),
        bound,
        alphas_checked: pruned.embedding.len(),
        holds: violations.is_empty(),
        violations,
        strict_at,
    })
}

/// Names of the maximal proper join-irreducibles, the valid pruning sites.
pub fn maximal_ji_names(l: &Lattice) -> Vec<String> {
    let ji = l.ji_poset();
    ji.maximals()
        .into_iter()
        .map(|j| ji.element_name(j).to_owned())
        .collect()
}

/// Summary classification of one lattice.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ClassificationReport {
    pub tree: bool,
    pub honest: bool,
    pub square: bool,
    pub factors: Option<Vec<usize>>,
    pub lemma_violations: Vec<String>,
}

/// Classifies a lattice and, when it is a product of chains, re-checks both
/// counting lemmas at every maximal join-irreducible.
pub fn classification_report(l: &Lattice) -> Result<ClassificationReport> {
    let tree = is_tree_lattice(l);
    let honest = is_honest(l);
    let square = is_square_lattice(l);
    let mut factors = None;
    let mut lemma_violations = Vec::new();
    if square {
        let deco = decompose_chain_product(l)?;
        factors = Some(deco.factor_sizes);
        for beta in maximal_ji_names(l) {
            for (kind, report) in [
                ("inequality", verify_lemma_inequality(l, &beta)?),
                ("greater", verify_lemma_greater(l, &beta)?),
            ] {
                for alpha in &report.violations {
                    lemma_violations.push(format!(
                        "lemma-{kind} fails at alpha={alpha} beta={beta}"
                    ));
                }
            }
        }
    }
    Ok(ClassificationReport {
        tree,
        honest,
        square,
        factors,
        lemma_violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Poset;
    use crate::testutil::demo_lattice;

    fn n_poset_lattice() -> Lattice {
        let ji = Poset::from_covers(
            "n-poset",
            &["a", "b", "c", "d"],
            &[("a", "c"), ("b", "c"), ("b", "d")],
        )
        .unwrap();
        Lattice::birkhoff(&ji).unwrap()
    }

    #[test]
    fn demo_lattice_is_a_tree_but_not_square() {
        let l = demo_lattice();
        assert!(is_tree_lattice(&l));
        assert!(is_honest(&l));
        assert!(!is_square_lattice(&l));
        assert!(has_unique_ji_predecessors(&l));
        assert!(verify_tree_honest_equivalence(&l).holds);
    }

    #[test]
    fn n_poset_lattice_is_neither_tree_nor_honest() {
        let l = n_poset_lattice();
        assert!(!is_tree_lattice(&l));
        assert!(!is_honest(&l));
        assert!(!has_unique_ji_predecessors(&l));
        let check = verify_tree_honest_equivalence(&l);
        assert!(check.holds);
        assert!(!check.tree && !check.honest);
    }

    #[test]
    fn chains_and_products_are_square() {
        for l in [
            Lattice::chain(1).unwrap(),
            Lattice::chain(7).unwrap(),
            Lattice::chain_product(&[2, 2]).unwrap(),
            Lattice::chain_product(&[4, 3, 2]).unwrap(),
        ] {
            assert!(is_square_lattice(&l));
            assert!(is_honest(&l));
        }
    }

    #[test]
    fn decomposition_recovers_factors() {
        assert_eq!(
            decompose_chain_product(&Lattice::chain_product(&[2, 2, 2]).unwrap())
                .unwrap()
                .factor_sizes,
            vec![2, 2, 2]
        );
        assert_eq!(
            decompose_chain_product(&Lattice::chain(6).unwrap())
                .unwrap()
                .factor_sizes,
            vec![6]
        );
        assert_eq!(
            decompose_chain_product(&Lattice::chain_product(&[4, 3]).unwrap())
                .unwrap()
                .factor_sizes,
            vec![4, 3]
        );
        // The one-element lattice is the empty product.
        assert!(decompose_chain_product(&Lattice::chain(1).unwrap())
            .unwrap()
            .factor_sizes
            .is_empty());
    }

    #[test]
    fn decomposition_rejects_non_square_lattices() {
        assert!(matches!(
            decompose_chain_product(&demo_lattice()),
            Err(Error::NotSquare)
        ));
        assert!(matches!(
            decompose_chain_product(&n_poset_lattice()),
            Err(Error::NotSquare)
        ));
    }

    #[test]
    fn pruning_the_demo_lattice() {
        let l = demo_lattice();
        let pruned = prune(&l, "5").unwrap();
        assert_eq!(pruned.sublattice.len(), 6);
        assert_eq!(pruned.removed.len(), 4);
        let removed_labels: Vec<&str> =
            pruned.removed.iter().map(|&e| l.label(e)).collect();
        assert_eq!(
            removed_labels,
            vec!["{2,5}", "{2,3,5}", "{2,4,5}", "{2,3,4,5}"]
        );

        let pruned3 = prune(&l, "3").unwrap();
        assert_eq!(pruned3.sublattice.len(), 5);
        assert_eq!(pruned3.removed.len(), 5);
    }

    #[test]
    fn pruning_rejects_non_maximal_elements() {
        let l = demo_lattice();
        assert!(matches!(
            prune(&l, "2"),
            Err(Error::NotMaximalJoinIrreducible { .. })
        ));
        assert!(matches!(prune(&l, "zzz"), Err(Error::UnknownElement { .. })));
    }

    #[test]
    fn pruning_simple_examples() {
        let b2 = Lattice::chain_product(&[2, 2]).unwrap();
        let pruned = prune(&b2, "c1_1").unwrap();
        assert_eq!(pruned.sublattice.len(), 2);
        assert_eq!(pruned.removed.len(), 2);

        let c4 = Lattice::chain(4).unwrap();
        let top_ji = maximal_ji_names(&c4);
        assert_eq!(top_ji.len(), 1);
        let pruned = prune(&c4, &top_ji[0]).unwrap();
        assert_eq!(pruned.sublattice.len(), 3);
        assert_eq!(pruned.removed, vec![c4.top()]);
    }

    #[test]
    fn pruning_a_square_lattice_stays_square() {
        let l = Lattice::chain_product(&[3, 3]).unwrap();
        for beta in maximal_ji_names(&l) {
            let pruned = prune(&l, &beta).unwrap();
            assert!(is_square_lattice(&pruned.sublattice));
        }
    }

    #[test]
    fn bijection_lemma_on_the_demo_lattice() {
        let l = demo_lattice();
        let check = verify_bijection_lemma(&l, "5").unwrap();
        assert_eq!(check.beta1, "2");
        assert_eq!(check.upset_size, 4);
        assert_eq!(check.removed_size, 4);
        assert!(check.holds);

        // `3` sits directly on the root, so beta1 is the root itself.
        let check = verify_bijection_lemma(&l, "3").unwrap();
        assert_eq!(check.beta1, l.root_name());
        assert_eq!(check.upset_size, 5);
        assert_eq!(check.removed_size, 5);
    }

    #[test]
    fn bijection_lemma_needs_a_unique_predecessor() {
        let ji = Poset::from_covers("vee", &["a", "b", "c"], &[("a", "c"), ("b", "c")])
            .unwrap();
        let l = Lattice::birkhoff(&ji).unwrap();
        assert!(matches!(
            verify_bijection_lemma(&l, "c"),
            Err(Error::NoUniquePredecessor { .. })
        ));
    }

    #[test]
    fn bijection_lemma_on_chains_and_products() {
        for (l, beta) in [
            (Lattice::chain(2).unwrap(), "c1_1".to_owned()),
            (Lattice::chain(5).unwrap(), "c1_4".to_owned()),
            (Lattice::chain_product(&[3, 2]).unwrap(), "c2_1".to_owned()),
            (Lattice::chain_product(&[3, 2]).unwrap(), "c1_2".to_owned()),
        ] {
            let names = maximal_ji_names(&l);
            assert!(names.contains(&beta), "{beta} not maximal in {names:?}");
            let check = verify_bijection_lemma(&l, &beta).unwrap();
            assert_eq!(check.upset_size, check.removed_size);
            assert!(check.holds);
        }
    }

    #[test]
    fn lemma_inequality_on_squares() {
        let b2 = Lattice::chain_product(&[2, 2]).unwrap();
        let report = verify_lemma_inequality(&b2, "c1_1").unwrap();
        assert_eq!(report.bound, 1);
        assert!(report.holds);
        assert!(report.strict_at.is_empty());

        let g33 = Lattice::chain_product(&[3, 3]).unwrap();
        for beta in maximal_ji_names(&g33) {
            let report = verify_lemma_inequality(&g33, &beta).unwrap();
            assert_eq!(report.bound, 2);
            assert!(report.holds);
            assert!(report.strict_at.is_empty());
        }
    }

    #[test]
    fn lemma_checks_require_square_lattices() {
        let l = demo_lattice();
        assert!(matches!(
            verify_lemma_inequality(&l, "5"),
            Err(Error::NotSquare)
        ));
        assert!(matches!(
            verify_lemma_greater(&l, "5"),
            Err(Error::NotSquare)
        ));
    }

    #[test]
    fn lemma_greater_reconstructs_all_diamonds() {
        let b3 = Lattice::chain_product(&[2, 2, 2]).unwrap();
        let report = verify_lemma_greater(&b3, "c1_1").unwrap();
        assert_eq!(report.bound, 3);
        assert!(report.holds);

        for factors in [vec![4, 3], vec![3, 3], vec![2, 2], vec![5, 2]] {
            let l = Lattice::chain_product(&factors).unwrap();
            for beta in maximal_ji_names(&l) {
                let report = verify_lemma_greater(&l, &beta).unwrap();
                assert!(report.holds, "{factors:?} beta={beta}");
                // Two-factor products attain the bound exactly.
                assert!(report.strict_at.is_empty(), "{factors:?} beta={beta}");
            }
        }
    }

    #[test]
    fn lemma_checks_on_chains_are_vacuous() {
        let c5 = Lattice::chain(5).unwrap();
        for beta in maximal_ji_names(&c5) {
            let report = verify_lemma_inequality(&c5, &beta).unwrap();
            assert_eq!(report.bound, 0);
            assert!(report.holds);
            let report = verify_lemma_greater(&c5, &beta).unwrap();
            assert!(report.holds);
        }
    }

    #[test]
    fn join_irreducibles_are_prime() {
        for l in [
            demo_lattice(),
            n_poset_lattice(),
            Lattice::chain(5).unwrap(),
            Lattice::chain_product(&[3, 2, 2]).unwrap(),
        ] {
            assert!(verify_join_check(&l));
        }
    }

    #[test]
    fn classification_reports() {
        let demo = classification_report(&demo_lattice()).unwrap();
        assert!(demo.tree && demo.honest && !demo.square);
        assert_eq!(demo.factors, None);
        assert!(demo.lemma_violations.is_empty());

        let grid = classification_report(&Lattice::chain_product(&[3, 2]).unwrap()).unwrap();
        assert!(grid.square);
        assert_eq!(grid.factors, Some(vec![3, 2]));
        assert!(grid.lemma_violations.is_empty());

        let n = classification_report(&n_poset_lattice()).unwrap();
        assert!(!n.tree && !n.honest && !n.square);
    }
}
