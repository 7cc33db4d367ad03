//! Exact integer linear algebra.
//!
//! Rank and determinant computations used in the smoothness verdicts run
//! over arbitrary-precision integers with fraction-free elimination; no
//! floating point enters any verdict path.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Sparse row: sorted `(column, value)` entries with nonzero values.
pub type SparseRow = Vec<(usize, BigInt)>;

/// Merges duplicate columns, drops zeros, sorts, and divides out the gcd.
fn normalize(mut row: SparseRow) -> SparseRow {
    row.sort_by_key(|&(c, _)| c);
    let mut merged: SparseRow = Vec::with_capacity(row.len());
    for (c, v) in row {
        match merged.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += v,
            _ => merged.push((c, v)),
        }
    }
    merged.retain(|(_, v)| !v.is_zero());
    if merged.is_empty() {
        return merged;
    }
    let mut g = BigInt::zero();
    for (_, v) in &merged {
        g = g.gcd(v);
    }
    if !g.is_one() {
        for (_, v) in &mut merged {
            *v = &*v / &g;
        }
    }
    merged
}

/// Fraction-free combination `pivot_lead * row - row_lead * pivot`, which
/// cancels the shared leading column.
fn eliminate(row: &SparseRow, pivot: &SparseRow) -> SparseRow {
    let a = &row[0].1;
    let b = &pivot[0].1;
    let mut out: SparseRow = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0usize, 0usize);
    while i < row.len() || j < pivot.len() {
        let (c, v) = match (row.get(i), pivot.get(j)) {
            (Some(&(rc, ref rv)), Some(&(pc, ref pv))) => {
                if rc < pc {
                    i += 1;
                    (rc, rv * b)
                } else if pc < rc {
                    j += 1;
                    (pc, -(pv * a))
                } else {
                    i += 1;
                    j += 1;
                    (rc, rv * b - pv * a)
                }
            }
            (Some(&(rc, ref rv)), None) => {
                i += 1;
                (rc, rv * b)
            }
            (None, Some(&(pc, ref pv))) => {
                j += 1;
                (pc, -(pv * a))
            }
            (None, None) => unreachable!(),
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    normalize(out)
}

/// Rank of a sparse integer matrix.
pub fn sparse_rank<I: IntoIterator<Item = SparseRow>>(rows: I) -> usize {
    let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for row in rows {
        let mut row = normalize(row);
        while let Some(&(lead, _)) = row.first() {
            match pivots.get(&lead) {
                Some(p) => row = eliminate(&row, p),
                None => break,
            }
        }
        if let Some(&(lead, _)) = row.first() {
            pivots.insert(lead, row);
        }
    }
    pivots.len()
}

/// Scales a rational sparse row to integers (multiplying by the lcm of the
/// denominators), which preserves rank.
pub fn clear_denominators(row: &[(usize, BigRational)]) -> SparseRow {
    let mut lcm = BigInt::one();
    for (_, v) in row {
        lcm = lcm.lcm(v.denom());
    }
    row.iter()
        .map(|(c, v)| (*c, (v * BigRational::from_integer(lcm.clone())).to_integer()))
        .collect()
}

/// Bareiss elimination over `i128` with overflow checking; `None` when an
/// entry does not fit or an intermediate product would overflow, in which
/// case the caller falls back to arbitrary precision.
fn determinant_i128(m: &[Vec<BigInt>]) -> Option<i128> {
    use num_traits::ToPrimitive;
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|row| row.iter().map(|v| v.to_i128()).collect())
        .collect::<Option<_>>()?;
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Some(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j]
                    .checked_mul(a[k][k])?
                    .checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = t / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign.checked_mul(a[n - 1][n - 1])
}

/// Determinant by Bareiss fraction-free elimination. The empty matrix has
/// determinant 1. Runs in machine integers when the intermediates fit,
/// falling back to arbitrary precision otherwise; both paths are exact.
pub fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    for row in &m {
        assert_eq!(row.len(), n, "determinant needs a square matrix");
    }
    if n == 0 {
        return BigInt::one();
    }
    if let Some(det) = determinant_i128(&m) {
        return BigInt::from(det);
    }
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = t / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

/// Absolute value of the determinant.
pub fn determinant_abs(m: Vec<Vec<BigInt>>) -> BigInt {
    determinant(m).abs()
}
