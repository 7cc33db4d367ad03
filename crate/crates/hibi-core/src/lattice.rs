//! Finite distributive lattices via their join-irreducible posets.
//!
//! A lattice is stored as the poset `J'` of its proper join-irreducibles
//! together with the list of order ideals of `J'`; the ideal lattice under
//! union/intersection is (by Birkhoff's theorem) the lattice itself. The
//! bottom element is the empty ideal and is *not* a member of `J'`, but the
//! counting convention used throughout the crate treats the bottom as a
//! join-irreducible, so `rooted_ji_count = |J'| + 1`.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::Error;
use crate::poset::{OrderIdeal, Poset, PosetSpec, DEFAULT_IDEAL_LIMIT};
use crate::Result;

/// Index of a lattice element in canonical order (cardinality, then bitmask).
pub type ElementId = usize;

/// A finite distributive lattice realized as the ideal lattice of `J'`.
#[derive(Debug, Clone)]
pub struct Lattice {
    ji: Poset,
    root_name: String,
    ideals: Vec<OrderIdeal>,
    index: HashMap<OrderIdeal, ElementId>,
    labels: Vec<String>,
}

/// Serialized lattice: the `J'` poset, each element as a list of `J'`
/// members, and the derived counts.
#[derive(Debug, Clone, Serialize)]
pub struct LatticeExport {
    pub ji_poset: PosetSpec,
    pub elements: Vec<Vec<String>>,
    pub rooted_ji_count: usize,
    pub codim: usize,
}

fn ideal_label(ji: &Poset, ideal: OrderIdeal) -> String {
    let members: Vec<&str> = ideal.members().map(|i| ji.element_name(i)).collect();
    format!("{{{}}}", members.join(","))
}

fn fresh_root_name(ji: &Poset) -> String {
    let mut name = "root".to_string();
    while ji.names().iter().any(|n| n == &name) {
        name.insert(0, '_');
    }
    name
}

impl Lattice {
    /// Ideal lattice of a proper join-irreducible poset.
    pub fn birkhoff(ji: &Poset) -> Result<Lattice> {
        Lattice::birkhoff_with_limit(ji, DEFAULT_IDEAL_LIMIT)
    }

    pub fn birkhoff_with_limit(ji: &Poset, limit: usize) -> Result<Lattice> {
        let ideals = ji.order_ideals_with_limit(limit)?;
        let index: HashMap<OrderIdeal, ElementId> = ideals
            .iter()
            .enumerate()
            .map(|(i, &m)| (m, i))
            .collect();
        let labels = ideals.iter().map(|&m| ideal_label(ji, m)).collect();
        Ok(Lattice {
            root_name: fresh_root_name(ji),
            ji: ji.clone(),
            ideals,
            index,
            labels,
        })
    }

    /// Builds from a join-irreducible poset that includes the lattice bottom
    /// as its unique minimum; the minimum is stripped and the rest is `J'`.
    pub fn from_rooted_ji(rooted: &Poset) -> Result<Lattice> {
        let root = rooted.unique_minimum().ok_or(Error::NoUniqueMinimum)?;
        let root_name = rooted.element_name(root).to_string();
        let ji = rooted.without(root, rooted.name());
        let mut lattice = Lattice::birkhoff(&ji)?;
        lattice.root_name = root_name;
        Ok(lattice)
    }

    /// Builds from an arbitrary Hasse diagram, checking the lattice and
    /// distributivity axioms, then normalizing through the ideal
    /// representation. Original element names are kept as labels.
    pub fn from_raw(spec: &PosetSpec) -> Result<Lattice> {
        let raw = Poset::from_spec(spec)?;
        let n = raw.len();
        if n == 0 {
            return Err(Error::NoUniqueMinimum);
        }

        // Inclusive up-sets and down-sets as masks.
        let mut up = vec![OrderIdeal::EMPTY; n];
        let mut down = vec![OrderIdeal::EMPTY; n];
        for i in 0..n {
            for j in 0..n {
                if raw.leq(i, j) {
                    up[i] = up[i].with(j);
                    down[j] = down[j].with(i);
                }
            }
        }
        let find_bound =
            |candidates: OrderIdeal, dominated: &dyn Fn(usize) -> OrderIdeal| -> Option<usize> {
                candidates
                    .members()
                    .find(|&m| candidates.is_subset_of(dominated(m)))
            };

        let mut join = vec![vec![0usize; n]; n];
        let mut meet = vec![vec![0usize; n]; n];
        for x in 0..n {
            for y in 0..n {
                let ub = up[x].intersection(up[y]);
                let lb = down[x].intersection(down[y]);
                join[x][y] = find_bound(ub, &|m| up[m]).ok_or_else(|| Error::NotALattice {
                    x: raw.element_name(x).to_string(),
                    y: raw.element_name(y).to_string(),
                    bound: "join".to_string(),
                })?;
                meet[x][y] = find_bound(lb, &|m| down[m]).ok_or_else(|| Error::NotALattice {
                    x: raw.element_name(x).to_string(),
                    y: raw.element_name(y).to_string(),
                    bound: "meet".to_string(),
                })?;
            }
        }

        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if meet[join[x][y]][z] != join[meet[x][z]][meet[y][z]] {
                        return Err(Error::NotDistributive {
                            x: raw.element_name(x).to_string(),
                            y: raw.element_name(y).to_string(),
                            z: raw.element_name(z).to_string(),
                        });
                    }
                }
            }
        }

        // Proper join-irreducibles: exactly one lower cover.
        let ji_elements: Vec<usize> = (0..n)
            .filter(|&i| raw.lower_covers(i).len() == 1)
            .collect();
        let ji = raw.induced(&ji_elements, raw.name());
        let mut lattice = Lattice::birkhoff(&ji)?;

        // Birkhoff isomorphism: raw element -> ideal of the J' it dominates.
        let mut image = vec![usize::MAX; n];
        let mut hit = vec![false; lattice.len()];
        for alpha in 0..n {
            let mut mask = OrderIdeal::EMPTY;
            for (new_j, &old_j) in ji_elements.iter().enumerate() {
                if raw.leq(old_j, alpha) {
                    mask = mask.with(new_j);
                }
            }
            let id = *lattice
                .index
                .get(&mask)
                .expect("order ideal of extracted join-irreducibles must exist");
            assert!(!hit[id], "raw lattice maps two elements to one ideal");
            hit[id] = true;
            image[alpha] = id;
        }
        assert_eq!(n, lattice.len(), "raw lattice and ideal lattice sizes differ");
        for x in 0..n {
            for y in 0..n {
                let raw_le = raw.leq(x, y);
                let ideal_le = lattice.leq(image[x], image[y]);
                assert_eq!(raw_le, ideal_le, "raw order does not match ideal order");
            }
        }

        for alpha in 0..n {
            lattice.labels[image[alpha]] = raw.element_name(alpha).to_string();
        }
        let bottom_raw = (0..n)
            .find(|&i| image[i] == 0)
            .expect("lattice bottom exists");
        lattice.root_name = raw.element_name(bottom_raw).to_string();
        Ok(lattice)
    }

    /// The chain lattice with `n` elements.
    pub fn chain(n: usize) -> Result<Lattice> {
        Lattice::chain_product(&[n])
    }

    /// Product of chain lattices `c(n_1) x ... x c(n_k)`.
    ///
    /// `J'` is a disjoint union of chains (one branch per factor with
    /// `n_i - 1` elements), so the result is the generic "square" lattice.
    pub fn chain_product(factors: &[usize]) -> Result<Lattice> {
        if let Some(&factor) = factors.iter().find(|&&f| f == 0) {
            return Err(Error::InvalidChainFactor { factor });
        }
        let mut elements: Vec<String> = Vec::new();
        let mut covers: Vec<(String, String)> = Vec::new();
        for (fi, &nf) in factors.iter().enumerate() {
            let branch: Vec<String> = (1..nf).map(|j| format!("c{}_{}", fi + 1, j)).collect();
            for pair in branch.windows(2) {
                covers.push((pair[0].clone(), pair[1].clone()));
            }
            elements.extend(branch);
        }
        let name = format!(
            "chain-product-{}",
            factors
                .iter()
                .map(|f| f.to_string())
                .collect::<Vec<_>>()
                .join("x")
        );
        let spec = PosetSpec {
            name,
            elements,
            covers,
        };
        Lattice::birkhoff(&Poset::from_spec(&spec)?)
    }

    /// Binary product, realized as the disjoint union of the `J'` posets.
    pub fn product(a: &Lattice, b: &Lattice) -> Result<Lattice> {
        let mut elements = Vec::new();
        let mut covers = Vec::new();
        for (prefix, side) in [("l.", a), ("r.", b)] {
            let spec = side.ji.spec();
            elements.extend(spec.elements.iter().map(|e| format!("{prefix}{e}")));
            covers.extend(
                spec.covers
                    .iter()
                    .map(|(lo, hi)| (format!("{prefix}{lo}"), format!("{prefix}{hi}"))),
            );
        }
        let spec = PosetSpec {
            name: format!("({})x({})", a.ji.name(), b.ji.name()),
            elements,
            covers,
        };
        Lattice::birkhoff(&Poset::from_spec(&spec)?)
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn name(&self) -> &str {
        self.ji.name()
    }

    /// The proper join-irreducible poset `J'`.
    pub fn ji_poset(&self) -> &Poset {
        &self.ji
    }

    /// Label used for the lattice bottom when the full join-irreducible
    /// poset (with the bottom adjoined) is drawn or exported.
    pub fn root_name(&self) -> &str {
        &self.root_name
    }

    pub fn ideal(&self, e: ElementId) -> OrderIdeal {
        self.ideals[e]
    }

    pub fn ideals(&self) -> &[OrderIdeal] {
        &self.ideals
    }

    pub fn label(&self, e: ElementId) -> &str {
        &self.labels[e]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element_of_ideal(&self, ideal: OrderIdeal) -> Option<ElementId> {
        self.index.get(&ideal).copied()
    }

    pub fn bottom(&self) -> ElementId {
        0
    }

    pub fn top(&self) -> ElementId {
        self.len() - 1
    }

    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.ideals[a].is_subset_of(self.ideals[b])
    }

    pub fn incomparable(&self, a: ElementId, b: ElementId) -> bool {
        !self.leq(a, b) && !self.leq(b, a)
    }

    pub fn join(&self, a: ElementId, b: ElementId) -> ElementId {
        self.index[&self.ideals[a].union(self.ideals[b])]
    }

    pub fn meet(&self, a: ElementId, b: ElementId) -> ElementId {
        self.index[&self.ideals[a].intersection(self.ideals[b])]
    }

    /// Whether `b` covers `a`; in an ideal lattice that means adding one
    /// generator.
    pub fn is_cover(&self, a: ElementId, b: ElementId) -> bool {
        self.ideals[a].is_subset_of(self.ideals[b])
            && self.ideals[b].card() == self.ideals[a].card() + 1
    }

    /// All cover pairs `(lower, upper)` in canonical order.
    pub fn cover_pairs(&self) -> Vec<(ElementId, ElementId)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in 0..self.len() {
                if self.is_cover(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Size of the rooted join-irreducible poset: `|J'|` plus the bottom
    /// element adjoined as root.
    pub fn rooted_ji_count(&self) -> usize {
        self.ji.len() + 1
    }

    /// Dimension of the lattice variety: cardinality of every maximal chain,
    /// which equals `rooted_ji_count`.
    pub fn dimension(&self) -> usize {
        self.rooted_ji_count()
    }

    /// Codimension of the lattice variety in its ambient affine space.
    pub fn codim(&self) -> usize {
        self.len() - self.rooted_ji_count()
    }

    /// Lattice element corresponding to a proper join-irreducible.
    pub fn principal(&self, ji_index: usize) -> ElementId {
        self.index[&self.ji.down_set(ji_index)]
    }

    /// The rooted join-irreducibles: the bottom plus all principal ideals,
    /// as lattice elements in canonical order.
    pub fn rooted_ji_elements(&self) -> Vec<ElementId> {
        let mut out: Vec<ElementId> = std::iter::once(self.bottom())
            .chain((0..self.ji.len()).map(|j| self.principal(j)))
            .collect();
        out.sort_unstable();
        out
    }

    /// The join-irreducible poset with the bottom adjoined as the root.
    pub fn rooted_ji_poset(&self) -> Poset {
        let spec = self.ji.spec();
        let mut elements = vec![self.root_name.clone()];
        elements.extend(spec.elements.iter().cloned());
        let mut covers: Vec<(String, String)> = self
            .ji
            .minimals()
            .into_iter()
            .map(|m| (self.root_name.clone(), self.ji.element_name(m).to_string()))
            .collect();
        covers.extend(spec.covers.iter().cloned());
        let spec = PosetSpec {
            name: spec.name,
            elements,
            covers,
        };
        Poset::from_spec(&spec).expect("rooted join-irreducible poset is valid")
    }

    /// Resolves a user-facing element reference: an element label, a proper
    /// join-irreducible name (meaning its principal ideal), or the root
    /// name (meaning the bottom).
    pub fn resolve_element(&self, name: &str) -> Result<ElementId> {
        if let Some(id) = self.labels.iter().position(|l| l == name) {
            return Ok(id);
        }
        if let Ok(j) = self.ji.index_of(name) {
            return Ok(self.principal(j));
        }
        if name == self.root_name {
            return Ok(self.bottom());
        }
        Err(Error::UnknownElement { name: name.to_string() })
    }

    /// The order dual, together with the element bijection (complement of
    /// ideals). The bijection reverses order and swaps join with meet.
    pub fn dual(&self) -> (Lattice, Vec<ElementId>) {
        let dual_ji = self.ji.dualize();
        let dual = Lattice::birkhoff(&dual_ji).expect("dual of an enumerated lattice fits the limit");
        let full = OrderIdeal::full(self.ji.len());
        let map: Vec<ElementId> = self
            .ideals
            .iter()
            .map(|m| dual.index[&full.difference(*m)])
            .collect();
        (dual, map)
    }

    pub fn export(&self) -> LatticeExport {
        LatticeExport {
            ji_poset: self.ji.spec(),
            elements: self
                .ideals
                .iter()
                .map(|m| {
                    m.members()
                        .map(|j| self.ji.element_name(j).to_string())
                        .collect()
                })
                .collect(),
            rooted_ji_count: self.rooted_ji_count(),
            codim: self.codim(),
        }
    }
}
