//! Deterministic exports and file ingestion.
//!
//! DOT graphs of the lattice Hasse diagram and of the rooted
//! join-irreducible poset, the Hibi relations as plain text, the order
//! polytope as a diff-able vertex/edge listing, and JSON loaders for the
//! shared poset file format. Every export walks elements in canonical order
//! so repeated runs produce byte-identical files.

use std::fs;
use std::path::Path;

use crate::diamonds::ideal_generators;
use crate::lattice::Lattice;
use crate::polytope::OrderPolytope;
use crate::poset::PosetSpec;
use crate::Result;

/// Escapes a label for use inside a double-quoted DOT string.
fn dot_escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT digraph of the lattice's Hasse diagram, edges pointing upward from
/// the covered element to its cover.
pub fn lattice_dot(l: &Lattice) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph \"{}\" {{\n", dot_escape(l.name())));
    out.push_str("  rankdir=BT;\n  node [shape=box];\n");
    for e in 0..l.len() {
        out.push_str(&format!("  n{e} [label=\"{}\"];\n", dot_escape(l.label(e))));
    }
    for (lo, hi) in l.cover_pairs() {
        out.push_str(&format!("  n{lo} -> n{hi};\n"));
    }
    out.push_str("}\n");
    out
}

/// DOT digraph of the rooted join-irreducible poset: the root (the lattice
/// bottom) below the proper join-irreducibles.
pub fn ji_dot(l: &Lattice) -> String {
    let ji = l.ji_poset();
    let mut out = String::new();
    out.push_str(&format!("digraph \"{}-ji\" {{\n", dot_escape(l.name())));
    out.push_str("  rankdir=BT;\n  node [shape=circle];\n");
    out.push_str(&format!("  r [label=\"{}\"];\n", dot_escape(l.root_name())));
    for i in 0..ji.len() {
        out.push_str(&format!(
            "  j{i} [label=\"{}\"];\n",
            dot_escape(ji.element_name(i))
        ));
    }
    for i in ji.minimals() {
        out.push_str(&format!("  r -> j{i};\n"));
    }
    for &(lo, hi) in ji.covers() {
        out.push_str(&format!("  j{lo} -> j{hi};\n"));
    }
    out.push_str("}\n");
    out
}

/// The Hibi relations, one line per diamond:
/// `x[a]*x[b] - x[c]*x[d]` with labels in canonical order.
pub fn relations_text(l: &Lattice) -> String {
    let mut out = String::new();
    for r in ideal_generators(l) {
        out.push_str(&format!(
            "x[{}]*x[{}] - x[{}]*x[{}]\n",
            l.label(r.plus.0),
            l.label(r.plus.1),
            l.label(r.minus.0),
            l.label(r.minus.1)
        ));
    }
    out
}

/// Plain-text order polytope: the 0/1 vertex matrix in canonical element
/// order followed by the edge list.
pub fn polytope_text(l: &Lattice) -> Result<String> {
    let p = OrderPolytope::of(l);
    let edges = p.edges()?;
    let mut out = String::new();
    out.push_str(&format!(
        "vertices {} dim {}\n",
        p.vertex_count(),
        p.ambient_dim()
    ));
    for e in 0..p.vertex_count() {
        let row: Vec<String> = p.vertex_vector(e).iter().map(i64::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out.push_str(&format!("edges {}\n", edges.len()));
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    Ok(out)
}

/// Pretty JSON of the lattice export (the `J'` poset plus each element as a
/// list of `J'` members).
pub fn lattice_json(l: &Lattice) -> String {
    let mut s = serde_json::to_string_pretty(&l.export()).expect("export serializes");
    s.push('\n');
    s
}

/// Reads a poset spec from a JSON file.
pub fn load_poset_spec(path: &Path) -> Result<PosetSpec> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Builds a lattice from a rooted join-irreducible poset file (the unique
/// minimum is the lattice bottom).
pub fn lattice_from_ji_file(path: &Path) -> Result<Lattice> {
    let spec = load_poset_spec(path)?;
    let rooted = crate::poset::Poset::from_spec(&spec)?;
    Lattice::from_rooted_ji(&rooted)
}

/// Builds a lattice from a file holding its full Hasse diagram, validating
/// the lattice and distributivity axioms.
pub fn lattice_from_raw_file(path: &Path) -> Result<Lattice> {
    let spec = load_poset_spec(path)?;
    Lattice::from_raw(&spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{demo_lattice, demo_raw_spec};

    #[test]
    fn chain_dot_is_a_path() {
        let l = Lattice::chain(3).unwrap();
        let dot = lattice_dot(&l);
        assert_eq!(
            dot,
            "digraph \"chain-product-3\" {\n  rankdir=BT;\n  node [shape=box];\n  n0 [label=\"{}\"];\n  n1 [label=\"{c1_1}\"];\n  n2 [label=\"{c1_1,c1_2}\"];\n  n0 -> n1;\n  n1 -> n2;\n}\n"
        );
    }

    #[test]
    fn demo_lattice_dot_has_every_cover_edge() {
        let l = demo_lattice();
        let dot = lattice_dot(&l);
        assert_eq!(dot.matches(" -> ").count(), l.cover_pairs().len());
        assert_eq!(dot.matches("label=").count(), 10);
        // Byte-stable across runs.
        assert_eq!(dot, lattice_dot(&demo_lattice()));
    }

    #[test]
    fn ji_dot_draws_the_root_under_the_minimals() {
        let l = demo_lattice();
        let dot = ji_dot(&l);
        assert!(dot.contains("r [label=\"1\"]"));
        // "2" and "3" are the minimal proper join-irreducibles.
        assert_eq!(dot.matches("r -> ").count(), 2);
        // The two covers inside J': 2 < 4 and 2 < 5.
        assert_eq!(dot.matches(" -> ").count(), 4);
    }

    #[test]
    fn square_lattice_has_one_relation_line() {
        let l = Lattice::chain_product(&[2, 2]).unwrap();
        let text = relations_text(&l);
        assert_eq!(text, "x[{c1_1}]*x[{c2_1}] - x[{}]*x[{c1_1,c2_1}]\n");
    }

    #[test]
    fn demo_relations_count_matches_the_diamonds() {
        let l = demo_lattice();
        let text = relations_text(&l);
        assert_eq!(text.lines().count(), 13);
        assert!(text.contains("x[{2,4}]*x[{2,5}] - x[{2}]*x[{2,4,5}]"));
    }

    #[test]
    fn polytope_text_lists_vertices_then_edges() {
        let l = Lattice::chain_product(&[2, 2]).unwrap();
        let text = polytope_text(&l).unwrap();
        assert_eq!(
            text,
            "vertices 4 dim 2\n0 0\n1 0\n0 1\n1 1\nedges 4\n0 1\n0 2\n1 3\n2 3\n"
        );
    }

    #[test]
    fn poset_files_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("demo.json");
        let spec = demo_raw_spec();
        fs::write(&path, serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(load_poset_spec(&path).unwrap(), spec);
        let l = lattice_from_raw_file(&path).unwrap();
        assert_eq!(l.len(), 10);
        assert_eq!(l.codim(), 5);
    }

    #[test]
    fn lattice_json_embeds_the_ji_poset() {
        let l = demo_lattice();
        let json = lattice_json(&l);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["rooted_ji_count"], 5);
        assert_eq!(value["codim"], 5);
        assert_eq!(value["ji_poset"]["elements"].as_array().unwrap().len(), 4);
    }
}
