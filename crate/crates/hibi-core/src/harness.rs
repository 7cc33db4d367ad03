//! Lattice-family generators and verification campaigns.
//!
//! A campaign sweeps a deterministic family of lattices — exhaustive
//! naturally-labeled join-irreducible posets, chain-product multisets, or
//! seeded random join-irreducible trees — and re-checks the smoothness and
//! structure statements on every member, collecting violations with full
//! witnesses. Reports are plain data and byte-stable across runs.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::{
    decompose_chain_product, is_square_lattice, is_tree_lattice, maximal_ji_names,
    verify_bijection_lemma, verify_join_check, verify_lemma_greater, verify_lemma_inequality,
    verify_tree_honest_equivalence,
};
use crate::lattice::Lattice;
use crate::polytope::verify_oracle_agreement;
use crate::poset::{OrderIdeal, Poset, PosetSpec};
use crate::smooth::{smoothness_report, verify_theorem_a, verify_theorem_b, verify_theorem_c};
use crate::{Error, Result};

/// Default bound on the number of elements of any lattice a family may
/// produce.
pub const DEFAULT_FAMILY_CAP: usize = 4096;

/// Above this size, the polytope-based checks are skipped inside campaigns
/// (the pairwise face test grows cubically); smaller families cover them.
pub const ORACLE_SIZE_LIMIT: usize = 512;

/// Size guard for the cubic whole-lattice identity checks.
const STRUCTURE_SIZE_LIMIT: usize = 64;

/// A deterministic family of lattices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FamilySpec {
    /// All naturally-labeled posets on `0..=max_elements` vertices, used as
    /// proper join-irreducible posets. Natural labeling (relations only
    /// point from smaller to larger label) hits every isomorphism class.
    AllPosets { max_elements: usize },
    /// All multisets of chain sizes `n_i >= 2` with product at most
    /// `max_size`, ordered by factor count, then lexicographically.
    ChainProducts { max_size: usize },
    /// Random rooted join-irreducible trees within the given shape limits,
    /// reproducible from the seed.
    RandomTrees {
        count: usize,
        max_depth: usize,
        max_branches: usize,
        seed: u64,
    },
}

impl FamilySpec {
    /// Human-readable one-line description used in reports.
    pub fn describe(&self) -> String {
        match self {
            FamilySpec::AllPosets { max_elements } => format!("all-posets(<={max_elements})"),
            FamilySpec::ChainProducts { max_size } => format!("chain-products(<={max_size})"),
            FamilySpec::RandomTrees {
                count,
                max_depth,
                max_branches,
                seed,
            } => format!(
                "random-trees(count={count},depth<={max_depth},branches<={max_branches},seed={seed})"
            ),
        }
    }
}

/// Enumerates all transitively closed relation sets on `n` naturally
/// labeled vertices and returns each as a join-irreducible poset.
fn naturally_labeled_posets(n: usize) -> Vec<Poset> {
    let names: Vec<String> = (1..=n).map(|i| format!("p{i}")).collect();
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let has = |a: usize, b: usize| {
            pairs
                .iter()
                .position(|&p| p == (a, b))
                .is_some_and(|k| mask >> k & 1 == 1)
        };
        let closed = pairs.iter().enumerate().all(|(k, &(i, j))| {
            mask >> k & 1 == 0
                || (j + 1..n).all(|l| !has(j, l) || has(i, l))
        });
        if !closed {
            continue;
        }
        // Transitive reduction: keep relations not implied by a middle leg.
        let covers: Vec<(&str, &str)> = pairs
            .iter()
            .enumerate()
            .filter(|&(k, &(i, j))| {
                mask >> k & 1 == 1 && !(i + 1..j).any(|m| has(i, m) && has(m, j))
            })
            .map(|(_, &(i, j))| (name_refs[i], name_refs[j]))
            .collect();
        let poset = Poset::from_covers(&format!("poset-n{n}-{}", out.len()), &name_refs, &covers)
            .expect("reduced natural relation set is a valid poset");
        out.push(poset);
    }
    out
}

/// All non-decreasing factor lists with entries >= 2 and product <= max,
/// ordered by length and then lexicographically.
fn chain_product_factor_lists(max_size: usize) -> Vec<Vec<usize>> {
    fn extend(min: usize, budget: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let mut f = min;
        while f <= budget {
            prefix.push(f);
            out.push(prefix.clone());
            extend(f, budget / f, prefix, out);
            prefix.pop();
            f += 1;
        }
    }
    let mut out = Vec::new();
    if max_size >= 2 {
        extend(2, max_size, &mut Vec::new(), &mut out);
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Samples one rooted join-irreducible tree within the shape limits.
fn sample_tree(
    rng: &mut ChaCha8Rng,
    index: usize,
    max_depth: usize,
    max_branches: usize,
) -> PosetSpec {
    let extra = rng.random_range(0..=15usize);
    let mut depths = vec![0usize];
    let mut children = vec![0usize];
    let mut names = vec!["r".to_owned()];
    let mut covers: Vec<(String, String)> = Vec::new();
    for k in 0..extra {
        let eligible: Vec<usize> = (0..names.len())
            .filter(|&i| depths[i] < max_depth && children[i] < max_branches)
            .collect();
        if eligible.is_empty() {
            break;
        }
        let parent = eligible[rng.random_range(0..eligible.len())];
        let child = format!("t{}", k + 1);
        covers.push((names[parent].clone(), child.clone()));
        depths.push(depths[parent] + 1);
        children.push(0);
        children[parent] += 1;
        names.push(child);
    }
    PosetSpec {
        name: format!("random-tree-{index}"),
        elements: names,
        covers,
    }
}

/// Builds the family as a deterministic list of named lattices, each of
/// size at most `cap`.
pub fn generate_family(spec: &FamilySpec, cap: usize) -> Result<Vec<(String, Lattice)>> {
    match *spec {
        FamilySpec::AllPosets { max_elements } => {
            if max_elements >= 64 || 1usize << max_elements > cap {
                return Err(Error::SizeLimitExceeded {
                    detail: format!(
                        "all-posets(<={max_elements}) can reach 2^{max_elements} elements, above the cap {cap}"
                    ),
                });
            }
            let mut out = Vec::new();
            for n in 0..=max_elements {
                for ji in naturally_labeled_posets(n) {
                    let lattice = Lattice::birkhoff_with_limit(&ji, cap)?;
                    out.push((ji.name().to_owned(), lattice));
                }
            }
            Ok(out)
        }
        FamilySpec::ChainProducts { max_size } => {
            if max_size > cap {
                return Err(Error::SizeLimitExceeded {
                    detail: format!("chain-products(<={max_size}) exceeds the cap {cap}"),
                });
            }
            chain_product_factor_lists(max_size)
                .into_iter()
                .map(|factors| {
                    let l = Lattice::chain_product(&factors)?;
                    Ok((l.name().to_owned(), l))
                })
                .collect()
        }
        FamilySpec::RandomTrees {
            count,
            max_depth,
            max_branches,
            seed,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::with_capacity(count);
            for i in 0..count {
                let mut attempts = 0;
                let lattice = loop {
                    attempts += 1;
                    if attempts > 10_000 {
                        return Err(Error::SizeLimitExceeded {
                            detail: format!(
                                "random tree {i} kept exceeding the cap {cap} after {attempts} attempts"
                            ),
                        });
                    }
                    let tree = sample_tree(&mut rng, i, max_depth, max_branches);
                    let rooted = Poset::from_spec(&tree)?;
                    let l = Lattice::from_rooted_ji(&rooted)?;
                    if l.len() <= cap {
                        break l;
                    }
                };
                out.push((format!("random-tree-{i}"), lattice));
            }
            Ok(out)
        }
    }
}

/// One verification pass a campaign can run per lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    TheoremA,
    TheoremB,
    TheoremC,
    TreeHonest,
    LemmaInequality,
    LemmaGreater,
    Bijection,
    BirkhoffRoundtrip,
    OracleAgreement,
    Smoothness,
}

impl CheckKind {
    /// Every check, in report order.
    pub fn all() -> &'static [CheckKind] {
        &[
            CheckKind::TheoremA,
            CheckKind::TheoremB,
            CheckKind::TheoremC,
            CheckKind::TreeHonest,
            CheckKind::LemmaInequality,
            CheckKind::LemmaGreater,
            CheckKind::Bijection,
            CheckKind::BirkhoffRoundtrip,
            CheckKind::OracleAgreement,
            CheckKind::Smoothness,
        ]
    }

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::TheoremA => "theorem-a",
            CheckKind::TheoremB => "theorem-b",
            CheckKind::TheoremC => "theorem-c",
            CheckKind::TreeHonest => "tree-honest",
            CheckKind::LemmaInequality => "lemma-inequality",
            CheckKind::LemmaGreater => "lemma-greater",
            CheckKind::Bijection => "bijection",
            CheckKind::BirkhoffRoundtrip => "birkhoff-roundtrip",
            CheckKind::OracleAgreement => "oracle-agreement",
            CheckKind::Smoothness => "smoothness",
        }
    }
}

/// Aggregate tally for one check across the family.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CheckOutcome {
    pub check: CheckKind,
    pub lattices_checked: usize,
    /// Members where the check's hypothesis does not apply (for example a
    /// square-lattice statement on a non-square member) or a size guard
    /// kicked in.
    pub skipped: usize,
    pub violations: usize,
}

/// One failed statement with its witness.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ViolationRecord {
    pub check: CheckKind,
    pub lattice: String,
    pub detail: String,
}

/// Deterministic summary of a campaign run.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CampaignReport {
    pub family: String,
    pub lattice_count: usize,
    pub checks: Vec<CheckOutcome>,
    pub violations: Vec<ViolationRecord>,
    pub notes: Vec<String>,
    pub passed: bool,
}

/// Whether the transitive reduction of the containment order steps one
/// ideal member at a time, which forces every maximal chain to have exactly
/// `rooted_ji_count` elements.
fn grading_ok(l: &Lattice) -> bool {
    let n = l.len();
    for a in 0..n {
        for b in 0..n {
            if a == b || !l.leq(a, b) {
                continue;
            }
            let has_middle =
                (0..n).any(|c| c != a && c != b && l.leq(a, c) && l.leq(c, b));
            if !has_middle && l.ideal(b).card() != l.ideal(a).card() + 1 {
                return false;
            }
        }
    }
    // Bottom reaches top, so chains span the whole height.
    l.leq(l.bottom(), l.top())
}

/// Re-derives the lattice from its own Hasse diagram and compares the two
/// structures through their shared element labels.
fn roundtrip_ok(l: &Lattice) -> Result<bool> {
    let labels: Vec<&str> = l.labels().iter().map(String::as_str).collect();
    let covers: Vec<(&str, &str)> = l
        .cover_pairs()
        .into_iter()
        .map(|(a, b)| (labels[a], labels[b]))
        .collect();
    let spec = PosetSpec::new(l.name(), &labels, &covers);
    let rebuilt = Lattice::from_raw(&spec)?;
    if rebuilt.len() != l.len() {
        return Ok(false);
    }
    let index_of = |lat: &Lattice, label: &str| -> Option<usize> {
        lat.labels().iter().position(|x| x == label)
    };
    for a in 0..l.len() {
        for b in 0..l.len() {
            let (Some(ra), Some(rb)) = (index_of(&rebuilt, labels[a]), index_of(&rebuilt, labels[b]))
            else {
                return Ok(false);
            };
            if l.leq(a, b) != rebuilt.leq(ra, rb) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Brute-force ideal count over all subsets, feasible for small posets.
fn brute_force_ideal_count(ji: &Poset) -> usize {
    (0u64..1 << ji.len())
        .filter(|&bits| ji.is_ideal(OrderIdeal::from_bits(bits)))
        .count()
}

enum Applied {
    Yes,
    Skipped,
}

fn run_check(
    kind: CheckKind,
    name: &str,
    l: &Lattice,
    violations: &mut Vec<ViolationRecord>,
    notes: &mut Vec<String>,
) -> Result<Applied> {
    let violate = |detail: String, violations: &mut Vec<ViolationRecord>| {
        violations.push(ViolationRecord {
            check: kind,
            lattice: name.to_owned(),
            detail,
        });
    };
    match kind {
        CheckKind::TheoremA => {
            let check = verify_theorem_a(l)?;
            for v in check.violations {
                violate(
                    format!("partner bound holds at {v} but the point is singular"),
                    violations,
                );
            }
        }
        CheckKind::TheoremB => {
            if !is_square_lattice(l) {
                return Ok(Applied::Skipped);
            }
            let check = verify_theorem_b(l)?;
            for v in check.violations {
                violate(format!("partner count below codimension at {v}"), violations);
            }
        }
        CheckKind::TheoremC => {
            if !is_square_lattice(l) {
                return Ok(Applied::Skipped);
            }
            if l.len() > ORACLE_SIZE_LIMIT {
                notes.push(format!(
                    "theorem-c skipped on {name}: {} elements exceed the polytope budget",
                    l.len()
                ));
                return Ok(Applied::Skipped);
            }
            let check = verify_theorem_c(l)?;
            for v in check.violations {
                violate(format!("coordinate point {v} is singular"), violations);
            }
        }
        CheckKind::TreeHonest => {
            let check = verify_tree_honest_equivalence(l);
            if !check.holds {
                violate(
                    format!("tree={} but honest={}", check.tree, check.honest),
                    violations,
                );
            }
        }
        CheckKind::LemmaInequality => {
            if !is_square_lattice(l) {
                return Ok(Applied::Skipped);
            }
            for beta in maximal_ji_names(l) {
                let report = verify_lemma_inequality(l, &beta)?;
                for alpha in report.violations {
                    violate(
                        format!("difference below {} at alpha={alpha} beta={beta}", report.bound),
                        violations,
                    );
                }
            }
        }
        CheckKind::LemmaGreater => {
            if !is_square_lattice(l) {
                return Ok(Applied::Skipped);
            }
            let two_factor = decompose_chain_product(l)?.factor_sizes.len() == 2;
            for beta in maximal_ji_names(l) {
                let report = verify_lemma_greater(l, &beta)?;
                for alpha in report.violations {
                    violate(
                        format!("difference below {} at alpha={alpha} beta={beta}", report.bound),
                        violations,
                    );
                }
                if two_factor && !report.strict_at.is_empty() {
                    notes.push(format!(
                        "equality deviation on two-factor product {name} beta={beta} at {:?}",
                        report.strict_at
                    ));
                }
            }
        }
        CheckKind::Bijection => {
            for beta in maximal_ji_names(l) {
                match verify_bijection_lemma(l, &beta) {
                    Ok(check) => {
                        if !check.holds || check.upset_size != check.removed_size {
                            violate(format!("bijection fails at beta={beta}"), violations);
                        }
                    }
                    // Without a unique predecessor the lemma does not
                    // apply — except on tree lattices, where uniqueness is
                    // itself a theorem.
                    Err(Error::NoUniquePredecessor { .. }) => {
                        if is_tree_lattice(l) {
                            violate(
                                format!("tree lattice has no unique predecessor below beta={beta}"),
                                violations,
                            );
                        }
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        CheckKind::BirkhoffRoundtrip => {
            if l.len() > STRUCTURE_SIZE_LIMIT {
                notes.push(format!(
                    "birkhoff-roundtrip skipped on {name}: {} elements exceed the structure budget",
                    l.len()
                ));
                return Ok(Applied::Skipped);
            }
            let ji = l.ji_poset();
            if ji.len() <= 16 && brute_force_ideal_count(ji) != l.len() {
                violate("element count differs from brute-force ideal count".into(), violations);
            }
            for x in 0..l.len() {
                for y in 0..l.len() {
                    if l.join(x, l.meet(x, y)) != x || l.meet(x, l.join(x, y)) != x {
                        violate(
                            format!("absorption fails at {} / {}", l.label(x), l.label(y)),
                            violations,
                        );
                    }
                    for z in 0..l.len() {
                        let lhs = l.meet(l.join(x, y), z);
                        let rhs = l.join(l.meet(x, z), l.meet(y, z));
                        if lhs != rhs {
                            violate(
                                format!(
                                    "distributivity fails at {} / {} / {}",
                                    l.label(x),
                                    l.label(y),
                                    l.label(z)
                                ),
                                violations,
                            );
                        }
                    }
                }
            }
            if !grading_ok(l) {
                violate("a maximal chain has the wrong cardinality".into(), violations);
            }
            if !verify_join_check(l) {
                violate("a join-irreducible is not prime".into(), violations);
            }
            if !roundtrip_ok(l)? {
                violate("rebuilding from the Hasse diagram changed the lattice".into(), violations);
            }
        }
        CheckKind::OracleAgreement => {
            if l.len() > ORACLE_SIZE_LIMIT {
                notes.push(format!(
                    "oracle-agreement skipped on {name}: {} elements exceed the polytope budget",
                    l.len()
                ));
                return Ok(Applied::Skipped);
            }
            verify_oracle_agreement(l)?;
        }
        CheckKind::Smoothness => {
            let report = smoothness_report(l)?;
            if !report.all_smooth {
                notes.push(format!(
                    "{name}: singular at {:?}",
                    report.singular_labels
                ));
            }
        }
    }
    Ok(Applied::Yes)
}

/// Runs the selected checks over every member of the family.
pub fn run_campaign(
    spec: &FamilySpec,
    checks: &[CheckKind],
    cap: usize,
) -> Result<CampaignReport> {
    let lattices = generate_family(spec, cap)?;
    let mut outcomes = Vec::with_capacity(checks.len());
    let mut violations = Vec::new();
    let mut notes = Vec::new();
    for &kind in checks {
        let mut checked = 0;
        let mut skipped = 0;
        let before = violations.len();
        for (name, l) in &lattices {
            match run_check(kind, name, l, &mut violations, &mut notes)? {
                Applied::Yes => checked += 1,
                Applied::Skipped => skipped += 1,
            }
        }
        outcomes.push(CheckOutcome {
            check: kind,
            lattices_checked: checked,
            skipped,
            violations: violations.len() - before,
        });
    }
    let passed = violations.is_empty();
    Ok(CampaignReport {
        family: spec.describe(),
        lattice_count: lattices.len(),
        checks: outcomes,
        violations,
        notes,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_poset_counts() {
        let expected = [1usize, 1, 2, 7, 40, 357];
        for (n, &count) in expected.iter().enumerate() {
            assert_eq!(naturally_labeled_posets(n).len(), count, "n={n}");
        }
    }

    #[test]
    fn all_posets_family_is_cumulative() {
        let family = generate_family(&FamilySpec::AllPosets { max_elements: 2 }, 4096).unwrap();
        let sizes: Vec<usize> = family.iter().map(|(_, l)| l.len()).collect();
        assert_eq!(sizes, vec![1, 2, 4, 3]);

        let family = generate_family(&FamilySpec::AllPosets { max_elements: 5 }, 4096).unwrap();
        assert_eq!(family.len(), 408);
    }

    #[test]
    fn chain_product_enumeration_matches_the_expected_order() {
        let lists = chain_product_factor_lists(8);
        assert_eq!(
            lists,
            vec![
                vec![2],
                vec![3],
                vec![4],
                vec![5],
                vec![6],
                vec![7],
                vec![8],
                vec![2, 2],
                vec![2, 3],
                vec![2, 4],
                vec![2, 2, 2],
            ]
        );
        let family = generate_family(&FamilySpec::ChainProducts { max_size: 8 }, 4096).unwrap();
        assert_eq!(family.len(), 11);
        assert!(family.iter().all(|(_, l)| l.len() <= 8));
    }

    #[test]
    fn random_trees_are_reproducible() {
        let spec = FamilySpec::RandomTrees {
            count: 10,
            max_depth: 3,
            max_branches: 3,
            seed: 42,
        };
        let a = generate_family(&spec, 4096).unwrap();
        let b = generate_family(&spec, 4096).unwrap();
        assert_eq!(a.len(), 10);
        for ((na, la), (nb, lb)) in a.iter().zip(&b) {
            assert_eq!(na, nb);
            assert_eq!(la.ideals(), lb.ideals());
            assert!(is_tree_lattice(la));
        }
    }

    #[test]
    fn family_cap_is_enforced() {
        assert!(matches!(
            generate_family(&FamilySpec::ChainProducts { max_size: 8192 }, 4096),
            Err(Error::SizeLimitExceeded { .. })
        ));
        assert!(matches!(
            generate_family(&FamilySpec::AllPosets { max_elements: 13 }, 4096),
            Err(Error::SizeLimitExceeded { .. })
        ));
    }

    #[test]
    fn campaign_over_small_posets_passes_every_check() {
        let report = run_campaign(
            &FamilySpec::AllPosets { max_elements: 3 },
            CheckKind::all(),
            4096,
        )
        .unwrap();
        assert_eq!(report.lattice_count, 11);
        assert!(report.passed, "{:?}", report.violations);
        assert!(report.violations.is_empty());
        // Square-only checks skip the non-square members.
        let theorem_b = report
            .checks
            .iter()
            .find(|c| c.check == CheckKind::TheoremB)
            .unwrap();
        assert!(theorem_b.skipped > 0);
        assert_eq!(theorem_b.lattices_checked + theorem_b.skipped, 11);
    }

    #[test]
    fn campaign_over_products_passes_the_square_checks() {
        let report = run_campaign(
            &FamilySpec::ChainProducts { max_size: 16 },
            &[
                CheckKind::TheoremB,
                CheckKind::TheoremC,
                CheckKind::LemmaInequality,
                CheckKind::LemmaGreater,
                CheckKind::Bijection,
            ],
            4096,
        )
        .unwrap();
        assert!(report.passed, "{:?}", report.violations);
        for outcome in &report.checks {
            assert_eq!(outcome.skipped, 0);
            assert_eq!(outcome.violations, 0);
        }
    }

    #[test]
    fn campaign_reports_are_byte_identical_across_runs() {
        let spec = FamilySpec::RandomTrees {
            count: 6,
            max_depth: 3,
            max_branches: 3,
            seed: 7,
        };
        let checks = [
            CheckKind::TheoremA,
            CheckKind::TreeHonest,
            CheckKind::Bijection,
            CheckKind::Smoothness,
        ];
        let a = serde_json::to_string_pretty(&run_campaign(&spec, &checks, 512).unwrap()).unwrap();
        let b = serde_json::to_string_pretty(&run_campaign(&spec, &checks, 512).unwrap()).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("\"passed\": true"));
    }

    #[test]
    fn check_kind_names_are_kebab_case() {
        for &kind in CheckKind::all() {
            let json = serde_json::to_string(&kind).unwrap();
            assert_eq!(json, format!("\"{}\"", kind.name()));
        }
    }
}
