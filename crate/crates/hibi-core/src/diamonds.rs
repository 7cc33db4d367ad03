//! Diamond sublattices and the binomial generators of the Hibi ideal.
//!
//! Every incomparable pair `{x, y}` of a lattice spans the diamond
//! `{x, y, x v y, x ^ y}` and contributes one generator
//! `x_x x_y - x_{x v y} x_{x ^ y}` to the Hibi ideal. The partner set of an
//! element collects the variables it is multiplied with across all
//! generators; its cardinality is what the Jacobian rank at a coordinate
//! point turns out to be.

use std::collections::BTreeSet;

use crate::lattice::{ElementId, Lattice};

/// Four-element diamond sublattice. `x < y` in canonical element order and
/// the pair `(x, y)` is the unique incomparable pair inside the diamond.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Diamond {
    pub x: ElementId,
    pub y: ElementId,
    pub top: ElementId,
    pub bottom: ElementId,
}

impl Diamond {
    /// The element `alpha` is multiplied with inside this diamond's
    /// generator, if `alpha` occurs in it at all.
    pub fn partner_of(&self, alpha: ElementId) -> Option<ElementId> {
        if alpha == self.x {
            Some(self.y)
        } else if alpha == self.y {
            Some(self.x)
        } else if alpha == self.top {
            Some(self.bottom)
        } else if alpha == self.bottom {
            Some(self.top)
        } else {
            None
        }
    }

    pub fn members(&self) -> [ElementId; 4] {
        [self.x, self.y, self.top, self.bottom]
    }

    pub fn contains(&self, e: ElementId) -> bool {
        self.members().contains(&e)
    }
}

/// Binomial generator `x_a x_b - x_c x_d` of the Hibi ideal, with each
/// factor pair in canonical element order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinomialRelation {
    pub plus: (ElementId, ElementId),
    pub minus: (ElementId, ElementId),
}

/// Partner data of one element across all diamond generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartnerSet {
    pub alpha: ElementId,
    /// Elements `gamma` such that the monomial `x_alpha x_gamma` occurs in
    /// some generator; sorted canonically.
    pub partners: Vec<ElementId>,
    /// Distinct elements sharing *any* diamond with `alpha` (the looser
    /// co-membership reading); recorded so the two counts stay comparable.
    pub comember_count: usize,
}

impl PartnerSet {
    pub fn count(&self) -> usize {
        self.partners.len()
    }
}

/// All diamonds, one per unordered incomparable pair, in canonical pair
/// order.
pub fn enumerate_diamonds(l: &Lattice) -> Vec<Diamond> {
    let n = l.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in (x + 1)..n {
            if l.incomparable(x, y) {
                out.push(Diamond {
                    x,
                    y,
                    top: l.join(x, y),
                    bottom: l.meet(x, y),
                });
            }
        }
    }
    out
}

/// The binomial generators of the Hibi ideal, one per diamond.
pub fn ideal_generators(l: &Lattice) -> Vec<BinomialRelation> {
    enumerate_diamonds(l)
        .into_iter()
        .map(|d| BinomialRelation {
            plus: (d.x, d.y),
            minus: (d.bottom.min(d.top), d.bottom.max(d.top)),
        })
        .collect()
}

/// Partner set of a single element.
pub fn partner_set(l: &Lattice, alpha: ElementId) -> PartnerSet {
    let mut partners = BTreeSet::new();
    let mut comembers = BTreeSet::new();
    for d in enumerate_diamonds(l) {
        if let Some(p) = d.partner_of(alpha) {
            partners.insert(p);
        }
        if d.contains(alpha) {
            for m in d.members() {
                if m != alpha {
                    comembers.insert(m);
                }
            }
        }
    }
    PartnerSet {
        alpha,
        partners: partners.into_iter().collect(),
        comember_count: comembers.len(),
    }
}

/// Partner sets of every element, in one sweep over the diamonds.
pub fn partner_sets_all(l: &Lattice) -> Vec<PartnerSet> {
    let n = l.len();
    let mut partners: Vec<BTreeSet<ElementId>> = vec![BTreeSet::new(); n];
    let mut comembers: Vec<BTreeSet<ElementId>> = vec![BTreeSet::new(); n];
    for d in enumerate_diamonds(l) {
        for (a, b) in [(d.x, d.y), (d.top, d.bottom)] {
            partners[a].insert(b);
            partners[b].insert(a);
        }
        let members = d.members();
        for &a in &members {
            for &b in &members {
                if a != b {
                    comembers[a].insert(b);
                }
            }
        }
    }
    partners
        .into_iter()
        .zip(comembers)
        .enumerate()
        .map(|(alpha, (p, c))| PartnerSet {
            alpha,
            partners: p.into_iter().collect(),
            comember_count: c.len(),
        })
        .collect()
}

/// `|E_alpha|` for every element.
pub fn partner_count_all(l: &Lattice) -> Vec<usize> {
    partner_sets_all(l).into_iter().map(|p| p.count()).collect()
}
