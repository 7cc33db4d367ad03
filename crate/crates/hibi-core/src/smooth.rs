//! Exact smoothness tests for lattice varieties at coordinate points.
//!
//! The variety of a finite distributive lattice `L` lives in affine space
//! with one coordinate per lattice element and is cut out by the diamond
//! binomials `x_a x_b - x_{a v b} x_{a ^ b}`. A coordinate point `p_alpha`
//! has a single nonzero coordinate, at `alpha`. The variety is smooth at
//! `p_alpha` exactly when the Jacobian of the generators has rank equal to
//! the codimension there; the rank is computed by fraction-free elimination
//! over arbitrary-precision integers, never floating point.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::diamonds::{enumerate_diamonds, partner_sets_all, Diamond};
use crate::exact::{clear_denominators, sparse_rank};
use crate::lattice::{ElementId, Lattice};
use crate::{Error, Result};

/// A point whose only nonzero coordinate sits at one lattice element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinatePoint {
    element: ElementId,
    value: BigRational,
}

impl CoordinatePoint {
    /// The coordinate point with value `1` at `element`.
    pub fn unit(element: ElementId) -> CoordinatePoint {
        CoordinatePoint {
            element,
            value: BigRational::one(),
        }
    }

    /// A coordinate point with an arbitrary nonzero value.
    pub fn with_value(element: ElementId, value: BigRational) -> Result<CoordinatePoint> {
        if value.is_zero() {
            return Err(Error::ZeroCoordinateValue);
        }
        Ok(CoordinatePoint { element, value })
    }

    pub fn element(&self) -> ElementId {
        self.element
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    /// Full coordinate vector of the point in the ambient space of `l`.
    pub fn vector(&self, l: &Lattice) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); l.len()];
        v[self.element] = self.value.clone();
        v
    }
}

/// Values of all diamond binomials at the point `v`.
pub fn evaluate_generators(diamonds: &[Diamond], v: &[BigRational]) -> Vec<BigRational> {
    diamonds
        .iter()
        .map(|d| &v[d.x] * &v[d.y] - &v[d.bottom] * &v[d.top])
        .collect()
}

/// Jacobian of the diamond binomials evaluated at an arbitrary point `v`:
/// one sparse row of partial derivatives per diamond.
pub fn gradient_rows(diamonds: &[Diamond], v: &[BigRational]) -> Vec<Vec<(usize, BigRational)>> {
    diamonds
        .iter()
        .map(|d| {
            let mut row: Vec<(usize, BigRational)> = vec![
                (d.x, v[d.y].clone()),
                (d.y, v[d.x].clone()),
                (d.bottom, -v[d.top].clone()),
                (d.top, -v[d.bottom].clone()),
            ];
            row.retain(|(_, c)| !c.is_zero());
            row.sort_by_key(|&(c, _)| c);
            row
        })
        .collect()
}

/// Rank of a rational sparse matrix, via integer fraction-free elimination.
pub fn rational_rank(rows: &[Vec<(usize, BigRational)>]) -> usize {
    sparse_rank(rows.iter().map(|r| clear_denominators(r)))
}

/// Jacobian rank at a coordinate point, computed by executing the
/// elimination on the evaluated rows.
pub fn rank_at(l: &Lattice, point: &CoordinatePoint) -> usize {
    let diamonds = enumerate_diamonds(l);
    rational_rank(&gradient_rows(&diamonds, &point.vector(l)))
}

/// Verdict of the smoothness test at one coordinate point.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct PointVerdict {
    pub element: ElementId,
    pub label: String,
    pub rank: usize,
    pub codim: usize,
    pub smooth: bool,
}

/// Decides smoothness at a coordinate point. Rank strictly above the
/// codimension cannot happen on these varieties, so it is reported as an
/// internal consistency failure rather than a verdict.
pub fn is_smooth_at(l: &Lattice, point: &CoordinatePoint) -> Result<PointVerdict> {
    let rank = rank_at(l, point);
    let codim = l.codim();
    let label = l.label(point.element()).to_owned();
    if rank > codim {
        return Err(Error::RankExceedsCodim {
            point: label,
            rank,
            codim,
        });
    }
    Ok(PointVerdict {
        element: point.element(),
        label,
        rank,
        codim,
        smooth: rank == codim,
    })
}

/// Per-point entry of a whole-lattice smoothness report.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct PointSmoothness {
    #[serde(rename = "id")]
    pub element: ElementId,
    pub label: String,
    #[serde(rename = "partners")]
    pub partner_labels: Vec<String>,
    #[serde(rename = "E")]
    pub partner_count: usize,
    pub comember_count: usize,
    pub rank: usize,
    pub codim: usize,
    pub smooth: bool,
    pub verdict: String,
}

/// Smoothness of the lattice variety at the origin and at every coordinate
/// point.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SmoothnessReport {
    pub lattice: String,
    pub size: usize,
    pub rooted_ji_count: usize,
    pub codim: usize,
    /// The origin (all coordinates zero) is smooth exactly when the variety
    /// is the whole ambient space.
    pub origin_smooth: bool,
    pub points: Vec<PointSmoothness>,
    pub all_smooth: bool,
    pub singular_labels: Vec<String>,
}

/// Runs the Jacobian rank test at every coordinate point of `l`.
///
/// A single pass over the diamonds distributes each evaluated row to the
/// one element whose coordinate point makes it nonzero; the elimination is
/// then executed per element on its rows.
pub fn smoothness_report(l: &Lattice) -> Result<SmoothnessReport> {
    let diamonds = enumerate_diamonds(l);
    let partner_sets = partner_sets_all(l);
    let codim = l.codim();

    let mut rows_by_element: Vec<Vec<Vec<(usize, num_bigint::BigInt)>>> =
        vec![Vec::new(); l.len()];
    let one = num_bigint::BigInt::one();
    for d in &diamonds {
        // Gradient of `x_x x_y - x_b x_t` at the unit coordinate point of a
        // member has a single entry, at the member's partner column.
        rows_by_element[d.x].push(vec![(d.y, one.clone())]);
        rows_by_element[d.y].push(vec![(d.x, one.clone())]);
        rows_by_element[d.bottom].push(vec![(d.top, -one.clone())]);
        rows_by_element[d.top].push(vec![(d.bottom, -one.clone())]);
    }

    let mut points = Vec::with_capacity(l.len());
    for (e, rows) in rows_by_element.into_iter().enumerate() {
        let rank = sparse_rank(rows);
        let ps = &partner_sets[e];
        debug_assert_eq!(ps.alpha, e);
        // The rank of a matrix whose rows each have one nonzero entry is the
        // number of distinct occupied columns, i.e. the partner count; any
        // discrepancy means the elimination itself is broken.
        assert_eq!(
            rank,
            ps.count(),
            "eliminated rank differs from partner count at `{}`",
            l.label(e)
        );
        if rank > codim {
            return Err(Error::RankExceedsCodim {
                point: l.label(e).to_owned(),
                rank,
                codim,
            });
        }
        let smooth = rank == codim;
        points.push(PointSmoothness {
            element: e,
            label: l.label(e).to_owned(),
            partner_labels: ps.partners.iter().map(|&p| l.label(p).to_owned()).collect(),
            partner_count: ps.count(),
            comember_count: ps.comember_count,
            rank,
            codim,
            smooth,
            verdict: if smooth { "smooth" } else { "singular" }.to_owned(),
        });
    }

    let singular_labels: Vec<String> = points
        .iter()
        .filter(|p| !p.smooth)
        .map(|p| p.label.clone())
        .collect();
    let all_smooth = singular_labels.is_empty();
    Ok(SmoothnessReport {
        lattice: l.name().to_owned(),
        size: l.len(),
        rooted_ji_count: l.rooted_ji_count(),
        codim,
        origin_smooth: codim == 0,
        points,
        all_smooth,
        singular_labels,
    })
}

/// Outcome of checking one of the smoothness statements on one lattice.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct TheoremCheck {
    pub lattice: String,
    pub points_checked: usize,
    /// Points where the statement's hypothesis applies.
    pub premise_points: usize,
    /// Labels of points where the hypothesis holds but the conclusion fails.
    pub violations: Vec<String>,
    pub holds: bool,
}

/// Checks that a product of chains satisfies the partner-count bound
/// `|E_alpha| >= |L| - |J|` at every element.
pub fn verify_theorem_b(l: &Lattice) -> Result<TheoremCheck> {
    if !crate::classify::is_square_lattice(l) {
        return Err(Error::NotSquare);
    }
    let codim = l.codim();
    let partner_sets = partner_sets_all(l);
    let violations: Vec<String> = partner_sets
        .iter()
        .filter(|ps| ps.count() < codim)
        .map(|ps| l.label(ps.alpha).to_owned())
        .collect();
    Ok(TheoremCheck {
        lattice: l.name().to_owned(),
        points_checked: l.len(),
        premise_points: l.len(),
        holds: violations.is_empty(),
        violations,
    })
}

/// Checks that the variety of a product of chains is smooth at every
/// coordinate point, by the Jacobian rank test and by the toric oracle,
/// and that the two verdicts agree pointwise.
pub fn verify_theorem_c(l: &Lattice) -> Result<TheoremCheck> {
    if !crate::classify::is_square_lattice(l) {
        return Err(Error::NotSquare);
    }
    crate::polytope::verify_oracle_agreement(l)?;
    let report = smoothness_report(l)?;
    let toric = crate::polytope::toric_report(l)?;
    assert_eq!(toric.all_unimodular, report.all_smooth);
    Ok(TheoremCheck {
        lattice: l.name().to_owned(),
        points_checked: l.len(),
        premise_points: l.len(),
        holds: report.all_smooth,
        violations: report.singular_labels,
    })
}

/// Checks, point by point: if the partner count at `alpha` is at least the
/// codimension, then the variety is smooth at `p_alpha`.
pub fn verify_theorem_a(l: &Lattice) -> Result<TheoremCheck> {
    let report = smoothness_report(l)?;
    let mut premise_points = 0;
    let mut violations = Vec::new();
    for p in &report.points {
        if p.partner_count >= report.codim {
            premise_points += 1;
            if !p.smooth {
                violations.push(p.label.clone());
            }
        }
    }
    Ok(TheoremCheck {
        lattice: l.name().to_owned(),
        points_checked: report.points.len(),
        premise_points,
        holds: violations.is_empty(),
        violations,
    })
}
