//! Finite posets given by labeled cover relations.
//!
//! Elements are kept in canonical order (sorted labels) so every downstream
//! enumeration, report, and export is deterministic. Posets are capped at 64
//! elements and order-ideal sets are represented as `u64` bitmasks.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// Hard cap on poset size so ideals fit in a fixed-width bitset.
pub const MAX_ELEMENTS: usize = 256;

/// Machine words backing one bitset.
const WORDS: usize = MAX_ELEMENTS / 64;

/// Default cap on the number of order ideals enumerated from one poset.
pub const DEFAULT_IDEAL_LIMIT: usize = 1 << 20;

/// Serialized form of a poset: labeled elements plus a list of cover pairs
/// `[lo, hi]` meaning `lo` is covered by `hi`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetSpec {
    #[serde(default)]
    pub name: String,
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

impl PosetSpec {
    pub fn new(name: &str, elements: &[&str], covers: &[(&str, &str)]) -> Self {
        PosetSpec {
            name: name.to_string(),
            elements: elements.iter().map(|s| s.to_string()).collect(),
            covers: covers
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
        }
    }
}

/// A downward-closed subset of a poset, stored as a fixed-width bitset over
/// the canonical element order (general subsets reuse the same type where a
/// plain element mask is needed, e.g. Hasse adjacency).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct OrderIdeal([u64; WORDS]);

impl OrderIdeal {
    pub const EMPTY: OrderIdeal = OrderIdeal([0; WORDS]);

    /// Bitset from the low 64 bits; convenient for brute-force loops over
    /// small posets.
    pub fn from_bits(bits: u64) -> Self {
        let mut words = [0; WORDS];
        words[0] = bits;
        OrderIdeal(words)
    }

    /// The low 64 bits; panics if any higher element is present.
    pub fn bits(self) -> u64 {
        assert!(
            self.0[1..].iter().all(|&w| w == 0),
            "bitset does not fit in one word"
        );
        self.0[0]
    }

    pub fn singleton(i: usize) -> Self {
        OrderIdeal::EMPTY.with(i)
    }

    /// All of `0..n` set.
    pub fn full(n: usize) -> Self {
        let mut words = [0; WORDS];
        for (k, w) in words.iter_mut().enumerate() {
            let lo = k * 64;
            *w = match n.saturating_sub(lo) {
                0 => 0,
                64.. => u64::MAX,
                rest => (1u64 << rest) - 1,
            };
        }
        OrderIdeal(words)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0[i / 64] & (1u64 << (i % 64)) != 0
    }

    pub fn with(self, i: usize) -> Self {
        let mut words = self.0;
        words[i / 64] |= 1u64 << (i % 64);
        OrderIdeal(words)
    }

    pub fn union(self, other: Self) -> Self {
        let mut words = self.0;
        for (w, o) in words.iter_mut().zip(other.0) {
            *w |= o;
        }
        OrderIdeal(words)
    }

    pub fn intersection(self, other: Self) -> Self {
        let mut words = self.0;
        for (w, o) in words.iter_mut().zip(other.0) {
            *w &= o;
        }
        OrderIdeal(words)
    }

    /// Members of `self` not in `other`.
    pub fn difference(self, other: Self) -> Self {
        let mut words = self.0;
        for (w, o) in words.iter_mut().zip(other.0) {
            *w &= !o;
        }
        OrderIdeal(words)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0.iter().zip(other.0).all(|(&w, o)| w & !o == 0)
    }

    pub fn card(self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(self) -> bool {
        self.0 == [0; WORDS]
    }

    /// The least member, if any.
    pub fn first_member(self) -> Option<usize> {
        self.0
            .iter()
            .position(|&w| w != 0)
            .map(|k| k * 64 + self.0[k].trailing_zeros() as usize)
    }

    pub fn members(self) -> Members {
        Members {
            words: self.0,
            word: 0,
        }
    }
}

/// Iterator over the set bits of a bitset, in increasing order.
pub struct Members {
    words: [u64; WORDS],
    word: usize,
}

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.word < WORDS {
            let w = &mut self.words[self.word];
            if *w != 0 {
                let b = w.trailing_zeros() as usize;
                *w &= *w - 1;
                return Some(self.word * 64 + b);
            }
            self.word += 1;
        }
        None
    }
}

impl Ord for OrderIdeal {
    /// Integer order of the bitset value (element `i` weighs `2^i`), which
    /// the canonical element ordering of lattices is built on.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

impl PartialOrd for OrderIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for OrderIdeal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "OrderIdeal{{")?;
        for (k, i) in self.members().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// A validated finite poset.
///
/// Construction rejects duplicate labels, unknown cover endpoints, cycles,
/// and redundant covers (pairs implied by the transitive closure of the
/// others), so a `Poset` always carries an irredundant Hasse diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    name: String,
    names: Vec<String>,
    covers: Vec<(usize, usize)>,
    below: Vec<OrderIdeal>,
}

impl Poset {
    /// Validates a spec and builds the poset.
    pub fn from_spec(spec: &PosetSpec) -> Result<Poset> {
        let mut seen = HashSet::new();
        for name in &spec.elements {
            if !seen.insert(name.clone()) {
                return Err(Error::DuplicateElement { name: name.clone() });
            }
        }
        if spec.elements.len() > MAX_ELEMENTS {
            return Err(Error::TooManyElements {
                count: spec.elements.len(),
                max: MAX_ELEMENTS,
            });
        }

        let mut names: Vec<String> = spec.elements.clone();
        names.sort();
        let index: HashMap<&str, usize> = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let n = names.len();

        let mut cover_pairs = Vec::with_capacity(spec.covers.len());
        let mut seen_pairs = HashSet::new();
        for (lo, hi) in &spec.covers {
            let li = *index
                .get(lo.as_str())
                .ok_or_else(|| Error::UnknownElement { name: lo.clone() })?;
            let hi_i = *index
                .get(hi.as_str())
                .ok_or_else(|| Error::UnknownElement { name: hi.clone() })?;
            if li == hi_i {
                return Err(Error::CycleDetected { lo: lo.clone(), hi: hi.clone() });
            }
            if !seen_pairs.insert((li, hi_i)) {
                return Err(Error::RedundantCover { lo: lo.clone(), hi: hi.clone() });
            }
            cover_pairs.push((li, hi_i));
        }

        // Strict reachability along covers, by fixpoint iteration; cycles
        // show up as an element reaching itself.
        let mut above = vec![OrderIdeal::EMPTY; n];
        for &(lo, hi) in &cover_pairs {
            above[lo] = above[lo].with(hi);
        }
        loop {
            let mut changed = false;
            for i in 0..n {
                let mut acc = above[i];
                for j in above[i].members() {
                    acc = acc.union(above[j]);
                }
                if acc != above[i] {
                    above[i] = acc;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        for &(lo, hi) in &cover_pairs {
            if above[hi].contains(lo) || above[lo].contains(lo) {
                return Err(Error::CycleDetected {
                    lo: names[lo].clone(),
                    hi: names[hi].clone(),
                });
            }
        }

        // A cover is redundant when some third element sits strictly between
        // its endpoints.
        for &(lo, hi) in &cover_pairs {
            let between = above[lo].difference(OrderIdeal::singleton(hi));
            if between.members().any(|c| above[c].contains(hi)) {
                return Err(Error::RedundantCover {
                    lo: names[lo].clone(),
                    hi: names[hi].clone(),
                });
            }
        }

        let mut below = vec![OrderIdeal::EMPTY; n];
        for i in 0..n {
            below[i] = below[i].with(i);
            for j in 0..n {
                if above[j].contains(i) {
                    below[i] = below[i].with(j);
                }
            }
        }

        cover_pairs.sort_unstable();
        Ok(Poset {
            name: spec.name.clone(),
            names,
            covers: cover_pairs,
            below,
        })
    }

    /// Test convenience: builds from string slices.
    pub fn from_covers(name: &str, elements: &[&str], covers: &[(&str, &str)]) -> Result<Poset> {
        Poset::from_spec(&PosetSpec::new(name, elements, covers))
    }

    /// Rebuilds the serialized form, in canonical order.
    pub fn spec(&self) -> PosetSpec {
        PosetSpec {
            name: self.name.clone(),
            elements: self.names.clone(),
            covers: self
                .covers
                .iter()
                .map(|&(a, b)| (self.names[a].clone(), self.names[b].clone()))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .binary_search_by(|probe| probe.as_str().cmp(name))
            .map_err(|_| Error::UnknownElement { name: name.to_string() })
    }

    /// `i <= j` in the partial order.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.below[j].contains(i)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// Principal ideal of `i`: everything at or below it.
    pub fn down_set(&self, i: usize) -> OrderIdeal {
        self.below[i]
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn upper_covers(&self, i: usize) -> Vec<usize> {
        self.covers
            .iter()
            .filter(|&&(lo, _)| lo == i)
            .map(|&(_, hi)| hi)
            .collect()
    }

    pub fn lower_covers(&self, i: usize) -> Vec<usize> {
        self.covers
            .iter()
            .filter(|&&(_, hi)| hi == i)
            .map(|&(lo, _)| lo)
            .collect()
    }

    pub fn minimals(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.below[i] == OrderIdeal::singleton(i))
            .collect()
    }

    pub fn maximals(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.upper_covers(i).is_empty())
            .collect()
    }

    /// The unique minimum, if the poset has one.
    pub fn unique_minimum(&self) -> Option<usize> {
        let mins = self.minimals();
        if mins.len() == 1 {
            Some(mins[0])
        } else {
            None
        }
    }

    /// Whether the bitmask is downward closed.
    pub fn is_ideal(&self, ideal: OrderIdeal) -> bool {
        self.covers
            .iter()
            .all(|&(lo, hi)| !ideal.contains(hi) || ideal.contains(lo))
    }

    /// All order ideals under the default size cap.
    pub fn order_ideals(&self) -> Result<Vec<OrderIdeal>> {
        self.order_ideals_with_limit(DEFAULT_IDEAL_LIMIT)
    }

    /// All order ideals, sorted by cardinality then by bitset value.
    pub fn order_ideals_with_limit(&self, limit: usize) -> Result<Vec<OrderIdeal>> {
        let n = self.len();
        let mut seen: HashSet<OrderIdeal> = HashSet::new();
        let mut queue: Vec<OrderIdeal> = vec![OrderIdeal::EMPTY];
        seen.insert(OrderIdeal::EMPTY);
        while let Some(mask) = queue.pop() {
            for e in 0..n {
                if mask.contains(e) {
                    continue;
                }
                let strictly_below = self.below[e].difference(OrderIdeal::singleton(e));
                if !strictly_below.is_subset_of(mask) {
                    continue;
                }
                let next = mask.with(e);
                if seen.insert(next) {
                    if seen.len() > limit {
                        return Err(Error::SizeLimitExceeded {
                            detail: format!(
                                "poset `{}` has more than {} order ideals",
                                self.name, limit
                            ),
                        });
                    }
                    queue.push(next);
                }
            }
        }
        let mut ideals: Vec<OrderIdeal> = seen.into_iter().collect();
        ideals.sort_unstable_by_key(|m| (m.card(), *m));
        Ok(ideals)
    }

    /// Undirected adjacency masks of the Hasse diagram.
    pub fn hasse_adjacency(&self) -> Vec<OrderIdeal> {
        let mut adj = vec![OrderIdeal::EMPTY; self.len()];
        for &(lo, hi) in &self.covers {
            adj[lo] = adj[lo].with(hi);
            adj[hi] = adj[hi].with(lo);
        }
        adj
    }

    /// Whether the undirected Hasse diagram is a single tree.
    pub fn hasse_is_tree(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return false;
        }
        if self.covers.len() != n - 1 {
            return false;
        }
        self.connected_within(OrderIdeal::full(n))
    }

    /// Connectivity of the Hasse diagram restricted to `mask`; empty masks
    /// count as connected.
    pub fn connected_within(&self, mask: OrderIdeal) -> bool {
        let Some(start) = mask.first_member() else {
            return true;
        };
        let adj = self.hasse_adjacency();
        let mut visited = OrderIdeal::singleton(start);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for w in adj[v].intersection(mask).difference(visited).members() {
                visited = visited.with(w);
                stack.push(w);
            }
        }
        visited == mask
    }

    /// Maximum Hasse degree over all elements except the unique minimum.
    ///
    /// Returns 0 when the minimum is the only element.
    pub fn max_degree_except_root(&self) -> Result<usize> {
        let root = self.unique_minimum().ok_or(Error::NoUniqueMinimum)?;
        let adj = self.hasse_adjacency();
        Ok((0..self.len())
            .filter(|&i| i != root)
            .map(|i| adj[i].card())
            .max()
            .unwrap_or(0))
    }

    /// The order dual: same elements, all covers reversed.
    pub fn dualize(&self) -> Poset {
        let n = self.len();
        let mut covers: Vec<(usize, usize)> = self.covers.iter().map(|&(a, b)| (b, a)).collect();
        covers.sort_unstable();
        // In the dual, j <= i exactly when i <= j held before.
        let mut dual_below = vec![OrderIdeal::EMPTY; n];
        for i in 0..n {
            dual_below[i] = dual_below[i].with(i);
            for j in 0..n {
                if i != j && self.leq(i, j) {
                    dual_below[i] = dual_below[i].with(j);
                }
            }
        }
        Poset {
            name: self.name.clone(),
            names: self.names.clone(),
            covers,
            below: dual_below,
        }
    }

    /// Induced subposet on the elements of `keep`, with covers recomputed as
    /// the transitive reduction of the induced order.
    pub fn induced(&self, keep: &[usize], name: &str) -> Poset {
        let mut keep_sorted: Vec<usize> = keep.to_vec();
        keep_sorted.sort_unstable();
        keep_sorted.dedup();
        let names: Vec<String> = keep_sorted
            .iter()
            .map(|&i| self.names[i].clone())
            .collect();
        let n = keep_sorted.len();
        let mut below = vec![OrderIdeal::EMPTY; n];
        for (new_j, &old_j) in keep_sorted.iter().enumerate() {
            below[new_j] = below[new_j].with(new_j);
            for (new_i, &old_i) in keep_sorted.iter().enumerate() {
                if old_i != old_j && self.leq(old_i, old_j) {
                    below[new_j] = below[new_j].with(new_i);
                }
            }
        }
        let mut covers = Vec::new();
        for j in 0..n {
            for i in 0..n {
                if i == j || !below[j].contains(i) {
                    continue;
                }
                // i < j; cover unless something sits strictly between.
                let strictly_between = (0..n).any(|c| {
                    c != i && c != j && below[c].contains(i) && below[j].contains(c)
                });
                if !strictly_between {
                    covers.push((i, j));
                }
            }
        }
        covers.sort_unstable();
        Poset {
            name: name.to_string(),
            names,
            covers,
            below,
        }
    }

    /// Induced subposet with one element removed.
    pub fn without(&self, drop: usize, name: &str) -> Poset {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| i != drop).collect();
        self.induced(&keep, name)
    }
}
