//! Shared fixtures for unit tests: the ten-element demo lattice whose
//! variety is singular at exactly two coordinate points.

use crate::lattice::Lattice;
use crate::poset::{Poset, PosetSpec};

/// Proper join-irreducible poset of the demo lattice, with the root `1`
/// adjoined below everything.
pub fn demo_rooted() -> Poset {
    Poset::from_covers(
        "demo",
        &["1", "2", "3", "4", "5"],
        &[("1", "2"), ("1", "3"), ("2", "4"), ("2", "5")],
    )
    .unwrap()
}

/// The ten-element demo lattice, built from the rooted join-irreducibles.
pub fn demo_lattice() -> Lattice {
    Lattice::from_rooted_ji(&demo_rooted()).unwrap()
}

/// The demo lattice described directly by its ten-element Hasse diagram,
/// with elements numbered `1` (bottom) through `10` (top).
pub fn demo_raw_spec() -> PosetSpec {
    PosetSpec::new(
        "demo-hasse",
        &["1", "2", "3", "4", "5", "6", "7", "8", "9", "10"],
        &[
            ("1", "2"),
            ("1", "3"),
            ("2", "4"),
            ("2", "5"),
            ("2", "6"),
            ("3", "6"),
            ("4", "7"),
            ("4", "8"),
            ("5", "7"),
            ("5", "9"),
            ("6", "8"),
            ("6", "9"),
            ("7", "10"),
            ("8", "10"),
            ("9", "10"),
        ],
    )
}

