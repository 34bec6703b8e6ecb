//! The square system whose determinant detects a derivation of degree
//! `ñ/2 - 1`, with its determinant `d` and the reduced factor `d1`.
//!
//! Rows come in blocks, one per free point `z_i` (`i = 3..n`), with one row
//! per derivative order `k < m_i`. Columns split into an f-block (coefficients
//! of `px / x^m1`) and a g-block (coefficients of `py / y^m2`).

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::matrix::{det_fraction_free, det_rational, RingMatrix};
use crate::algebra::rational::Rational;
use crate::algebra::wronskian::falling_factorial;
use crate::algebra::MultiPoly;
use crate::divisor::{Derivation, MultiplicityVector, PointDivisor};
use crate::error::{Error, Result};
use crate::exponents::degree_kernel;

/// Which block a column of M belongs to, with its top-row degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "block", rename_all = "lowercase")]
pub enum Column {
    /// Derivatives of `x^degree`.
    F { degree: u32 },
    /// `x` times derivatives of `x^(degree-1)`.
    G { degree: u32 },
}

impl Column {
    pub fn degree(self) -> u32 {
        match self {
            Column::F { degree } | Column::G { degree } => degree,
        }
    }

    /// Coefficient of the row-`k` entry, which is that times `z^(degree - k)`.
    pub fn entry_coefficient(self, k: u32) -> num_bigint::BigInt {
        match self {
            Column::F { degree } => falling_factorial(degree, k),
            Column::G { degree } => falling_factorial(degree - 1, k),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixMLayout {
    /// `ñ/2 - 1`
    pub e: u32,
    /// Multiplicity of each row block, for the points `z3, ..., zn`.
    pub row_blocks: Vec<u32>,
    pub f_cols: usize,
    pub g_cols: usize,
    /// All columns in matrix order: f-block then g-block.
    pub columns: Vec<Column>,
}

impl MatrixMLayout {
    pub fn new(m: &MultiplicityVector) -> Result<Self> {
        if m.n() < 3 {
            return Err(Error::InvalidInput(format!("{m} needs at least three points")));
        }
        let total = m.total();
        if total % 2 == 1 {
            return Err(Error::OddTotal(total));
        }
        let e = total / 2 - 1;
        let (m1, m2) = (m.entries()[0], m.entries()[1]);
        if e < m1 {
            return Err(Error::BlockSize(format!(
                "m1 = {m1} exceeds e = {e}; requires m1 < m2 + ... + mn"
            )));
        }
        let f_cols = (e - m1 + 1) as usize;
        let g_cols = (e - m2 + 1) as usize;
        let mut columns: Vec<Column> =
            (0..f_cols as u32).map(|j| Column::F { degree: e - j }).collect();
        columns.extend((0..g_cols as u32).map(|j| Column::G { degree: e - m2 - j + 1 }));
        let row_blocks = m.free_part().to_vec();
        let rows: u32 = row_blocks.iter().sum();
        debug_assert_eq!(rows as usize, columns.len());
        Ok(MatrixMLayout { e, row_blocks, f_cols, g_cols, columns })
    }

    pub fn size(&self) -> usize {
        self.columns.len()
    }

    /// `(block, k)` for each row in order.
    pub fn rows(&self) -> Vec<(usize, u32)> {
        self.row_blocks
            .iter()
            .enumerate()
            .flat_map(|(b, &mi)| (0..mi).map(move |k| (b, k)))
            .collect()
    }
}

/// M with entries in `z3, ..., zn`.
pub fn build_m_symbolic(m: &MultiplicityVector) -> Result<(RingMatrix<MultiPoly>, MatrixMLayout)> {
    let layout = MatrixMLayout::new(m)?;
    let nvars = layout.row_blocks.len();
    let mut entries = Vec::with_capacity(layout.size() * layout.size());
    for (block, k) in layout.rows() {
        for &col in &layout.columns {
            let c = col.entry_coefficient(k);
            entries.push(if c.is_zero() {
                MultiPoly::zero(nvars)
            } else {
                let mut exps = vec![0; nvars];
                exps[block] = col.degree() - k;
                MultiPoly::term(nvars, c, exps)
            });
        }
    }
    let n = layout.size();
    Ok((RingMatrix::new(n, n, entries), layout))
}

/// M evaluated at the divisor's coordinates.
pub fn build_m_numeric(d: &PointDivisor) -> Result<RingMatrix<Rational>> {
    let layout = MatrixMLayout::new(d.mult())?;
    let mut entries = Vec::with_capacity(layout.size() * layout.size());
    for (block, k) in layout.rows() {
        let z = &d.z()[block];
        for &col in &layout.columns {
            let c = col.entry_coefficient(k);
            entries.push(if c.is_zero() {
                Rational::zero()
            } else {
                Rational::from_integer(c) * num_traits::pow(z.clone(), (col.degree() - k) as usize)
            });
        }
    }
    let n = layout.size();
    Ok(RingMatrix::new(n, n, entries))
}

/// `d = det M`.
pub fn det_d(m: &MultiplicityVector) -> Result<MultiPoly> {
    let (matrix, layout) = build_m_symbolic(m)?;
    det_fraction_free(&matrix, layout.row_blocks.len())
}

/// The forced factors `Π z_k^m_k` and `(z_j - z_i)^m_i` for `j < i`, as a
/// list of `(factor, power)`.
pub fn forced_factors(m: &MultiplicityVector) -> Vec<(MultiPoly, u32)> {
    let free = m.free_part();
    let nvars = free.len();
    let mut out: Vec<(MultiPoly, u32)> =
        free.iter().enumerate().map(|(k, &mk)| (MultiPoly::var(nvars, k), mk)).collect();
    for i in 0..nvars {
        for j in 0..i {
            let diff = &MultiPoly::var(nvars, j) - &MultiPoly::var(nvars, i);
            out.push((diff, free[i]));
        }
    }
    out
}

/// Divides the forced factors out of `d`.
pub fn reduce(m: &MultiplicityVector, d: &MultiPoly) -> Result<MultiPoly> {
    if d.is_zero() {
        return Err(Error::InvalidInput(format!("d vanishes identically for {m}")));
    }
    let mut acc = d.clone();
    for (factor, power) in forced_factors(m) {
        for _ in 0..power {
            acc = acc.exact_divide(&factor)?;
        }
    }
    Ok(acc)
}

pub fn reduce_d1(m: &MultiplicityVector) -> Result<MultiPoly> {
    reduce(m, &det_d(m)?)
}

/// Whether the divisor admits a derivation of degree `ñ/2 - 1`.
pub fn is_degenerate(d: &PointDivisor) -> Result<bool> {
    Ok(det_rational(&build_m_numeric(d)?)?.is_zero())
}

/// A derivation of degree `ñ/2 - 1` when one exists.
pub fn degeneracy_witness(d: &PointDivisor) -> Result<Option<Derivation>> {
    let layout = MatrixMLayout::new(d.mult())?;
    Ok(degree_kernel(d, layout.e as usize).into_iter().next())
}

/// Largest number of grid tuples a scan will evaluate.
pub const SCAN_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegenerationScan {
    pub d1: MultiPoly,
    /// Zeros of `d1` with nonzero pairwise distinct coordinates.
    #[serde(serialize_with = "serialize_points")]
    pub degenerate: Vec<Vec<Rational>>,
    /// Zeros of `d1` where coordinates vanish or coincide.
    #[serde(serialize_with = "serialize_points")]
    pub non_arrangement_zeros: Vec<Vec<Rational>>,
    /// Labels of the factors `z_i`, `z_i - z_j` that divide `d1` exactly.
    pub divisible_by: Vec<String>,
    pub points_evaluated: usize,
}

fn serialize_points<S: serde::Serializer>(
    pts: &[Vec<Rational>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use crate::algebra::rational::format_rational;
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(pts.len()))?;
    for p in pts {
        let v: Vec<String> = p.iter().map(format_rational).collect();
        seq.serialize_element(&v)?;
    }
    seq.end()
}

/// Evaluates `d1` on every tuple of grid values and probes whether any `z_i`
/// or `z_i - z_j` divides it.
pub fn degeneration_scan(m: &MultiplicityVector, grid: &[Rational]) -> Result<DegenerationScan> {
    let d1 = reduce_d1(m)?;
    let nvars = d1.nvars();
    let count = grid
        .len()
        .checked_pow(nvars as u32)
        .filter(|&c| c <= SCAN_LIMIT)
        .ok_or_else(|| {
            Error::InvalidInput(format!("grid of {} values in {nvars} variables is too large", grid.len()))
        })?;
    let mut degenerate = Vec::new();
    let mut non_arrangement_zeros = Vec::new();
    let mut idx = vec![0usize; nvars];
    for _ in 0..count {
        let point: Vec<Rational> = idx.iter().map(|&i| grid[i].clone()).collect();
        if d1.evaluate(&point).is_zero() {
            let valid = point.iter().all(|z| !z.is_zero())
                && (0..nvars).all(|i| !point[i + 1..].contains(&point[i]));
            if valid {
                degenerate.push(point);
            } else {
                non_arrangement_zeros.push(point);
            }
        }
        // odometer, last variable fastest
        for pos in (0..nvars).rev() {
            idx[pos] += 1;
            if idx[pos] < grid.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
    let mut divisible_by = Vec::new();
    for i in 0..nvars {
        if d1.exact_divide(&MultiPoly::var(nvars, i)).is_ok() {
            divisible_by.push(MultiPoly::var_name(i));
        }
    }
    for i in 0..nvars {
        for j in i + 1..nvars {
            let diff = &MultiPoly::var(nvars, i) - &MultiPoly::var(nvars, j);
            if d1.exact_divide(&diff).is_ok() {
                divisible_by.push(format!("{} - {}", MultiPoly::var_name(i), MultiPoly::var_name(j)));
            }
        }
    }
    Ok(DegenerationScan { d1, degenerate, non_arrangement_zeros, divisible_by, points_evaluated: count })
}
