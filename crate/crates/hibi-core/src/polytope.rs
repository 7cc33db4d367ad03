//! Order polytope of the join-irreducible poset and the toric smoothness
//! oracle it provides.
//!
//! The polytope lives in one real coordinate per proper join-irreducible
//! and is cut out by `0 <= x_j <= 1` together with `x_hi <= x_lo` for every
//! cover `lo < hi` (indicator vectors of order ideals are down-closed). Its
//! vertices are exactly the indicator vectors of the lattice elements. A
//! vertex is unimodular when it is simple (as many edges as the dimension)
//! and its primitive edge directions span the integer lattice; that holds
//! exactly when the lattice variety is smooth at the corresponding
//! coordinate point, which gives an oracle entirely independent of the
//! Jacobian rank computation.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::exact::determinant_abs;
use crate::lattice::{ElementId, Lattice};
use crate::poset::OrderIdeal;
use crate::smooth::smoothness_report;
use crate::{Error, Result};

/// One defining inequality of the order polytope.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    /// `x_j >= 0`
    NonNeg(usize),
    /// `x_j <= 1`
    AtMostOne(usize),
    /// `x_hi <= x_lo` for a cover `lo < hi` of the join-irreducible poset.
    Cover { lo: usize, hi: usize },
}

impl Constraint {
    fn satisfied(&self, v: &[i64]) -> bool {
        match *self {
            Constraint::NonNeg(j) => v[j] >= 0,
            Constraint::AtMostOne(j) => v[j] <= 1,
            Constraint::Cover { lo, hi } => v[hi] <= v[lo],
        }
    }

    fn tight(&self, v: &[i64]) -> bool {
        match *self {
            Constraint::NonNeg(j) => v[j] == 0,
            Constraint::AtMostOne(j) => v[j] == 1,
            Constraint::Cover { lo, hi } => v[hi] == v[lo],
        }
    }
}

/// Order polytope of the proper join-irreducible poset of a lattice, with
/// one vertex per lattice element.
#[derive(Debug, Clone)]
pub struct OrderPolytope {
    name: String,
    ambient_dim: usize,
    constraints: Vec<Constraint>,
    /// Vertex per lattice element, as the ideal it indicates.
    vertices: Vec<OrderIdeal>,
    labels: Vec<String>,
    /// Undirected Hasse adjacency of the join-irreducible poset.
    hasse: Vec<(usize, usize)>,
    /// Containment order among the vertices' ideals.
    leq: Vec<Vec<bool>>,
}

impl OrderPolytope {
    pub fn of(l: &Lattice) -> OrderPolytope {
        let dim = l.ji_poset().len();
        let mut constraints = Vec::with_capacity(2 * dim + l.ji_poset().covers().len());
        constraints.extend((0..dim).map(Constraint::NonNeg));
        constraints.extend((0..dim).map(Constraint::AtMostOne));
        constraints.extend(
            l.ji_poset()
                .covers()
                .iter()
                .map(|&(lo, hi)| Constraint::Cover { lo, hi }),
        );
        let leq = (0..l.len())
            .map(|a| (0..l.len()).map(|b| l.leq(a, b)).collect())
            .collect();
        OrderPolytope {
            name: l.name().to_owned(),
            ambient_dim: dim,
            constraints,
            vertices: l.ideals().to_vec(),
            labels: l.labels().to_vec(),
            hasse: l.ji_poset().covers().to_vec(),
            leq,
        }
    }

    /// Name of the lattice the polytope was built from.
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// 0/1 coordinates of the vertex belonging to a lattice element.
    pub fn vertex_vector(&self, e: ElementId) -> Vec<i64> {
        (0..self.ambient_dim)
            .map(|j| i64::from(self.vertices[e].contains(j)))
            .collect()
    }

    /// Whether an arbitrary integer vector satisfies every inequality.
    pub fn is_feasible(&self, v: &[i64]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        self.constraints.iter().all(|c| c.satisfied(v))
    }

    fn tight_mask(&self, v: &[i64]) -> Vec<u64> {
        let blocks = self.constraints.len().div_ceil(64);
        let mut mask = vec![0u64; blocks];
        for (i, c) in self.constraints.iter().enumerate() {
            if c.tight(v) {
                mask[i / 64] |= 1 << (i % 64);
            }
        }
        mask
    }

    /// Whether the difference of two nested ideals induces a connected
    /// subgraph of the join-irreducible Hasse diagram.
    fn difference_connected(&self, small: OrderIdeal, large: OrderIdeal) -> bool {
        let diff = large.difference(small);
        let Some(start) = diff.first_member() else {
            return false;
        };
        // Flood fill over Hasse edges restricted to the difference.
        let mut seen = OrderIdeal::singleton(start);
        let mut frontier = vec![start];
        while let Some(j) = frontier.pop() {
            for &(a, b) in &self.hasse {
                let other = if a == j {
                    b
                } else if b == j {
                    a
                } else {
                    continue;
                };
                if diff.contains(other) && !seen.contains(other) {
                    seen = seen.with(other);
                    frontier.push(other);
                }
            }
        }
        seen == diff
    }

    /// Edge test from the defining inequalities: `u` and `v` span an edge
    /// exactly when the face of constraints tight at both contains no third
    /// vertex.
    fn is_edge_by_faces(&self, tight: &[Vec<u64>], u: usize, v: usize) -> bool {
        let common: Vec<u64> = tight[u]
            .iter()
            .zip(&tight[v])
            .map(|(a, b)| a & b)
            .collect();
        let mut on_face = 0usize;
        for t in tight {
            if common.iter().zip(t).all(|(c, w)| c & !w == 0) {
                on_face += 1;
                if on_face > 2 {
                    return false;
                }
            }
        }
        on_face == 2
    }

    /// Combinatorial edge test: nested ideals whose difference is connected
    /// in the join-irreducible Hasse diagram.
    fn is_edge_combinatorial(&self, u: usize, v: usize) -> bool {
        if self.leq[u][v] {
            self.difference_connected(self.vertices[u], self.vertices[v])
        } else if self.leq[v][u] {
            self.difference_connected(self.vertices[v], self.vertices[u])
        } else {
            false
        }
    }

    /// All polytope edges as element pairs `(u, v)` with `u < v`, computed
    /// from the defining inequalities and cross-checked against the
    /// combinatorial criterion.
    pub fn edges(&self) -> Result<Vec<(ElementId, ElementId)>> {
        let tight: Vec<Vec<u64>> = (0..self.vertex_count())
            .map(|e| self.tight_mask(&self.vertex_vector(e)))
            .collect();
        let mut out = Vec::new();
        for u in 0..self.vertex_count() {
            for v in u + 1..self.vertex_count() {
                let by_faces = self.is_edge_by_faces(&tight, u, v);
                let by_ideals = self.is_edge_combinatorial(u, v);
                if by_faces != by_ideals {
                    return Err(Error::CriterionMismatch {
                        u: self.labels[u].clone(),
                        v: self.labels[v].clone(),
                    });
                }
                if by_faces {
                    out.push((u, v));
                }
            }
        }
        Ok(out)
    }
}

/// Unimodularity verdict for one vertex of the order polytope.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct VertexReport {
    pub element: ElementId,
    pub label: String,
    pub degree: usize,
    pub ambient_dim: usize,
    pub simple: bool,
    /// `|det|` of the edge-direction matrix, present only for simple
    /// vertices; rendered as a string to keep the report serializable.
    pub determinant_abs: Option<String>,
    pub unimodular: bool,
    /// Why a vertex fails to be unimodular without a determinant, if so.
    pub reason: Option<String>,
}

/// Toric smoothness report over all vertices of the order polytope.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ToricReport {
    pub lattice: String,
    pub ambient_dim: usize,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub vertices: Vec<VertexReport>,
    pub all_unimodular: bool,
}

/// Classifies every vertex of the order polytope as unimodular or not.
pub fn toric_report(l: &Lattice) -> Result<ToricReport> {
    let poly = OrderPolytope::of(l);
    let edges = poly.edges()?;
    let mut neighbors: Vec<Vec<usize>> = vec![Vec::new(); poly.vertex_count()];
    for &(u, v) in &edges {
        neighbors[u].push(v);
        neighbors[v].push(u);
    }
    let mut vertices = Vec::with_capacity(poly.vertex_count());
    for e in 0..poly.vertex_count() {
        let degree = neighbors[e].len();
        let simple = degree == poly.ambient_dim();
        let (det, unimodular, reason) = if simple {
            let base = poly.vertex_vector(e);
            let rows: Vec<Vec<BigInt>> = neighbors[e]
                .iter()
                .map(|&n| {
                    let dir: Vec<BigInt> = poly
                        .vertex_vector(n)
                        .iter()
                        .zip(&base)
                        .map(|(a, b)| BigInt::from(a - b))
                        .collect();
                    // Edge directions of a 0/1 polytope are primitive as
                    // soon as they are nonzero.
                    assert!(
                        dir.iter().any(|c| !num_traits::Zero::is_zero(c)),
                        "degenerate edge direction at `{}`",
                        poly.labels[e]
                    );
                    dir
                })
                .collect();
            let det = determinant_abs(rows);
            let unimodular = det == BigInt::one();
            (Some(det.to_string()), unimodular, None)
        } else {
            (None, false, Some("not simple".to_owned()))
        };
        vertices.push(VertexReport {
            element: e,
            label: poly.labels[e].clone(),
            degree,
            ambient_dim: poly.ambient_dim(),
            simple,
            determinant_abs: det,
            unimodular,
            reason,
        });
    }
    let all_unimodular = vertices.iter().all(|v| v.unimodular);
    Ok(ToricReport {
        lattice: l.name().to_owned(),
        ambient_dim: poly.ambient_dim(),
        vertex_count: poly.vertex_count(),
        edge_count: edges.len(),
        vertices,
        all_unimodular,
    })
}

/// Cross-validates the Jacobian rank test against the toric oracle at every
/// coordinate point; returns how many points were compared.
pub fn verify_oracle_agreement(l: &Lattice) -> Result<usize> {
    let jacobian = smoothness_report(l)?;
    let toric = toric_report(l)?;
    assert_eq!(jacobian.points.len(), toric.vertices.len());
    for (j, t) in jacobian.points.iter().zip(&toric.vertices) {
        debug_assert_eq!(j.element, t.element);
        if j.smooth != t.unimodular {
            return Err(Error::OracleDisagreement {
                point: j.label.clone(),
                jacobian_smooth: j.smooth,
                polytope_smooth: t.unimodular,
            });
        }
    }
    Ok(jacobian.points.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{demo_lattice, demo_raw_spec};

    #[test]
    fn square_and_cube_polytopes() {
        let square = toric_report(&Lattice::chain_product(&[2, 2]).unwrap()).unwrap();
        assert_eq!(square.ambient_dim, 2);
        assert_eq!(square.vertex_count, 4);
        assert_eq!(square.edge_count, 4);
        assert!(square.all_unimodular);

        let cube = toric_report(&Lattice::chain_product(&[2, 2, 2]).unwrap()).unwrap();
        assert_eq!(cube.vertex_count, 8);
        assert_eq!(cube.edge_count, 12);
        assert!(cube.all_unimodular);
        assert!(cube.vertices.iter().all(|v| v.simple && v.degree == 3));
    }

    #[test]
    fn chain_polytopes_are_simplices() {
        for n in 1..=5 {
            let report = toric_report(&Lattice::chain(n).unwrap()).unwrap();
            assert_eq!(report.ambient_dim, n - 1);
            assert_eq!(report.vertex_count, n);
            assert_eq!(report.edge_count, n * (n - 1) / 2);
            assert!(report.all_unimodular);
        }
    }

    #[test]
    fn demo_polytope_shape() {
        let report = toric_report(&demo_lattice()).unwrap();
        assert_eq!(report.ambient_dim, 4);
        assert_eq!(report.vertex_count, 10);
        assert_eq!(report.edge_count, 21);
        let degrees: Vec<usize> = report.vertices.iter().map(|v| v.degree).collect();
        assert_eq!(degrees, vec![5, 4, 5, 4, 4, 4, 4, 4, 4, 4]);
        assert!(!report.all_unimodular);
        let bad: Vec<&str> = report
            .vertices
            .iter()
            .filter(|v| !v.unimodular)
            .map(|v| v.label.as_str())
            .collect();
        assert_eq!(bad, vec!["{}", "{3}"]);
        for v in &report.vertices {
            if v.unimodular {
                assert_eq!(v.determinant_abs.as_deref(), Some("1"));
            } else {
                assert!(!v.simple);
                assert_eq!(v.reason.as_deref(), Some("not simple"));
            }
        }
    }

    #[test]
    fn feasible_01_vectors_are_exactly_the_vertices() {
        for l in [demo_lattice(), Lattice::chain_product(&[3, 3]).unwrap()] {
            let poly = OrderPolytope::of(&l);
            let dim = poly.ambient_dim();
            let vertex_set: std::collections::BTreeSet<Vec<i64>> =
                (0..l.len()).map(|e| poly.vertex_vector(e)).collect();
            let mut feasible = 0;
            for bits in 0u32..1 << dim {
                let v: Vec<i64> = (0..dim).map(|j| i64::from(bits >> j & 1)).collect();
                if poly.is_feasible(&v) {
                    feasible += 1;
                    assert!(vertex_set.contains(&v));
                }
            }
            assert_eq!(feasible, l.len());
        }
    }

    #[test]
    fn oracles_agree_everywhere_on_samples() {
        for l in [
            demo_lattice(),
            Lattice::from_raw(&demo_raw_spec()).unwrap(),
            Lattice::chain(4).unwrap(),
            Lattice::chain_product(&[3, 2]).unwrap(),
            Lattice::chain_product(&[2, 2, 2]).unwrap(),
            Lattice::chain_product(&[4, 3]).unwrap(),
        ] {
            assert_eq!(verify_oracle_agreement(&l).unwrap(), l.len());
        }
    }

    #[test]
    fn raw_labels_flow_into_vertex_reports() {
        let report = toric_report(&Lattice::from_raw(&demo_raw_spec()).unwrap()).unwrap();
        let bad: Vec<&str> = report
            .vertices
            .iter()
            .filter(|v| !v.unimodular)
            .map(|v| v.label.as_str())
            .collect();
        assert_eq!(bad, vec!["1", "3"]);
    }

    #[test]
    fn single_point_lattice_polytope() {
        let report = toric_report(&Lattice::chain(1).unwrap()).unwrap();
        assert_eq!(report.ambient_dim, 0);
        assert_eq!(report.vertex_count, 1);
        assert_eq!(report.edge_count, 0);
        assert!(report.all_unimodular);
        assert_eq!(report.vertices[0].determinant_abs.as_deref(), Some("1"));
    }
}
