//! Leading-monomial combinatorics of `d = det M`.
//!
//! Every minor of M taken on one row block is a single monomial in that
//! block's variable, so Laplace development along the row blocks writes `d`
//! as a signed sum of monomials indexed by ordered column partitions. Columns
//! of equal degree shared by the f- and g-blocks (the overlap) are what can
//! make several partitions compete for the leading monomial; the admissible
//! partitions below enumerate those competitors and `sigma` sums their
//! normalized coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::matrix::{det_rational, RingMatrix};
use crate::algebra::multipoly::Monomial;
use crate::algebra::rational::Rational;
use crate::algebra::wronskian::{factorial, superfactorial, wronskian_closed_form};
use crate::algebra::MultiPoly;
use crate::divisor::MultiplicityVector;
use crate::error::{Error, Result};
use crate::matrix_m::{det_d, Column, MatrixMLayout};

/// Overlap between the f-block and g-block column degrees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OverlapSpec {
    /// `ñ/2 + 1 - (m1 + m2)` before clamping at zero.
    pub raw: i64,
    /// Number of shared degrees.
    pub s: usize,
    pub e: u32,
    /// Matrix column index of `a_1..a_s` (f-block).
    pub a_columns: Vec<usize>,
    /// Matrix column index of `b_1..b_s` (g-block).
    pub b_columns: Vec<usize>,
    /// Common degree of `a_i` and `b_i`.
    pub degrees: Vec<u32>,
}

pub fn overlap(m: &MultiplicityVector) -> Result<OverlapSpec> {
    let layout = MatrixMLayout::new(m)?;
    let (m1, m2) = (m.entries()[0] as i64, m.entries()[1] as i64);
    let raw = m.total() as i64 / 2 + 1 - (m1 + m2);
    let s = raw.max(0) as usize;
    let e = layout.e;
    // a_i has degree e - m2 + 2 - i; as f-column j its degree is e - j
    let mut a_columns = Vec::with_capacity(s);
    let mut b_columns = Vec::with_capacity(s);
    let mut degrees = Vec::with_capacity(s);
    for i in 1..=s {
        let deg = e + 2 - m2 as u32 - i as u32;
        a_columns.push((e - deg) as usize);
        b_columns.push(layout.f_cols + i - 1);
        degrees.push(deg);
    }
    debug_assert!(a_columns
        .iter()
        .zip(&b_columns)
        .all(|(&a, &b)| layout.columns[a].degree() == layout.columns[b].degree()));
    Ok(OverlapSpec { raw, s, e, a_columns, b_columns, degrees })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Letter {
    A,
    B,
}

/// An overlap column `a_j` or `b_j`, indices starting at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct OverlapColumn {
    pub letter: Letter,
    pub index: usize,
}

impl std::fmt::Display for OverlapColumn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let l = match self.letter {
            Letter::A => 'a',
            Letter::B => 'b',
        };
        write!(f, "{l}{}", self.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissiblePartition {
    pub blocks: Vec<Vec<OverlapColumn>>,
    /// Sign of the column permutation relative to `a_1..a_w, b_1..b_w`.
    pub sign: i32,
}

impl std::fmt::Display for AdmissiblePartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(ToString::to_string).collect::<String>())
            .collect();
        write!(f, "{}", blocks.join("|"))
    }
}

const fn col(letter: Letter, index: usize) -> OverlapColumn {
    OverlapColumn { letter, index }
}

fn other(l: Letter) -> Letter {
    match l {
        Letter::A => Letter::B,
        Letter::B => Letter::A,
    }
}

/// Admissible partitions of `{a_1..a_w, b_1..b_w}`: a single-column first
/// block, two-column middle blocks, a single-column last block, with
///  - a block ending in `a_j` followed by one starting with `b_j` and vice versa,
///  - a block starting with `a_j` continuing with `a_{j+1}` or `b_{j+1}`,
///  - a block starting with `b_j` continuing with `b_{j+1}`.
pub fn enumerate_admissible(width: usize) -> Vec<AdmissiblePartition> {
    if width == 0 {
        return vec![AdmissiblePartition { blocks: Vec::new(), sign: 1 }];
    }
    let mut out = Vec::new();
    for first in [Letter::A, Letter::B] {
        let mut blocks = vec![vec![col(first, 1)]];
        extend_admissible(width, &mut blocks, &mut out);
    }
    out
}

fn extend_admissible(
    width: usize,
    blocks: &mut Vec<Vec<OverlapColumn>>,
    out: &mut Vec<AdmissiblePartition>,
) {
    let last = *blocks.last().unwrap().last().unwrap();
    let start = col(other(last.letter), last.index);
    let used = |c: OverlapColumn, blocks: &Vec<Vec<OverlapColumn>>| {
        blocks.iter().flatten().any(|&u| u == c)
    };
    if used(start, blocks) {
        return;
    }
    let placed: usize = blocks.iter().map(Vec::len).sum();
    if placed + 1 == 2 * width {
        blocks.push(vec![start]);
        let flat: Vec<OverlapColumn> = blocks.iter().flatten().copied().collect();
        out.push(AdmissiblePartition { blocks: blocks.clone(), sign: permutation_sign(&flat, width) });
        blocks.pop();
        return;
    }
    let j = start.index;
    if j >= width {
        return;
    }
    let seconds: &[Letter] = match start.letter {
        Letter::A => &[Letter::A, Letter::B],
        Letter::B => &[Letter::B],
    };
    for &l in seconds {
        let second = col(l, j + 1);
        if used(second, blocks) {
            continue;
        }
        blocks.push(vec![start, second]);
        extend_admissible(width, blocks, out);
        blocks.pop();
    }
}

fn natural_position(c: OverlapColumn, width: usize) -> usize {
    match c.letter {
        Letter::A => c.index - 1,
        Letter::B => width + c.index - 1,
    }
}

fn permutation_sign(seq: &[OverlapColumn], width: usize) -> i32 {
    let pos: Vec<usize> = seq.iter().map(|&c| natural_position(c, width)).collect();
    inversion_sign(&pos)
}

fn inversion_sign(pos: &[usize]) -> i32 {
    let mut inversions = 0usize;
    for i in 0..pos.len() {
        for j in i + 1..pos.len() {
            if pos[i] > pos[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Checks that the block sizes have the admissible shape `1, 2, ..., 2, 1`
/// (or are empty) and enumerates.
pub fn enumerate_admissible_for(
    ov: &OverlapSpec,
    block_sizes: &[usize],
) -> Result<Vec<AdmissiblePartition>> {
    let width = match block_sizes {
        [] => 0,
        [_] => return Err(Error::BlockSize("a single block cannot cover the overlap".into())),
        [1, middle @ .., 1] if middle.iter().all(|&b| b == 2) => middle.len() + 1,
        _ => {
            return Err(Error::BlockSize(format!(
                "expected sizes 1, 2, ..., 2, 1; got {block_sizes:?}"
            )))
        }
    };
    if width > ov.s {
        return Err(Error::BlockSize(format!(
            "blocks cover {width} overlap pairs but only {} exist",
            ov.s
        )));
    }
    Ok(enumerate_admissible(width))
}

fn check_sigma_domain(m_r: u32, u: u32) -> Result<()> {
    if m_r < 2 || u < 2 {
        return Err(Error::InvalidInput(format!("sigma needs m_r >= 2 and u >= 2, got ({m_r}, {u})")));
    }
    Ok(())
}

/// Normalized coefficient of one admissible partition when the trailing
/// blocks all have multiplicity 2: the first block contributes 1 for `a`
/// and `m_r` for `b`; a middle block contributes -1 when both columns share a
/// letter and -2 otherwise; the last block contributes -2 for `a`, -1 for `b`.
pub fn partition_coefficient(p: &AdmissiblePartition, m_r: u32) -> BigInt {
    let mut c = BigInt::one();
    let last = p.blocks.len() - 1;
    for (i, block) in p.blocks.iter().enumerate() {
        let factor: i64 = if i == 0 {
            match block[0].letter {
                Letter::A => 1,
                Letter::B => m_r as i64,
            }
        } else if i == last {
            match block[0].letter {
                Letter::A => -2,
                Letter::B => -1,
            }
        } else if block[0].letter == block[1].letter {
            -1
        } else {
            -2
        };
        c *= factor;
    }
    c
}

/// `Σ_P sign(P) C(P)` over the admissible partitions into `u` blocks.
pub fn sigma(m_r: u32, u: u32) -> Result<BigInt> {
    check_sigma_domain(m_r, u)?;
    Ok(enumerate_admissible(u as usize - 1)
        .iter()
        .map(|p| partition_coefficient(p, m_r) * p.sign)
        .sum())
}

/// `(-1)^⌈(u+2)/2⌉ ((m_r - 1) u + 1)`
pub fn sigma_closed_form(m_r: u32, u: u32) -> Result<BigInt> {
    check_sigma_domain(m_r, u)?;
    let value = BigInt::from((m_r as i64 - 1) * u as i64 + 1);
    let exponent = (u + 2).div_ceil(2);
    Ok(if exponent % 2 == 0 { value } else { -value })
}

/// Product `1! 2! ... (m-2)!`, one when `m <= 2`.
pub fn pi_factor(m: u32) -> BigInt {
    superfactorial(m.saturating_sub(2))
}

/// Two-block sum with minor coefficients normalized by the sign
/// `(-1)^(⌊m_r/2⌋ + ⌊m_last/2⌋)` and `π'(m_r - 1)!`: partition `a|b`
/// contributes `π (m_last - 1)!`, partition `b|a` contributes `-m_r π m_last!`.
pub fn two_block_sum(m_r: u32, m_last: u32) -> Result<BigInt> {
    if m_r < 1 || m_last < 2 {
        return Err(Error::InvalidInput(format!("two-block sum needs m_last >= 2, got {m_last}")));
    }
    let pi = pi_factor(m_last);
    Ok(enumerate_admissible(1)
        .iter()
        .map(|p| {
            let c = match p.blocks[0][0].letter {
                Letter::A => &pi * factorial(m_last - 1),
                Letter::B => &pi * factorial(m_last) * m_r,
            };
            c * p.sign
        })
        .sum())
}

/// `π (m_last - 1)! (1 - m_r m_last)`
pub fn two_block_closed_form(m_r: u32, m_last: u32) -> BigInt {
    pi_factor(m_last) * factorial(m_last.saturating_sub(1)) * (1 - m_r as i64 * m_last as i64)
}

/// Integer coefficient of the minor on one row block with the given columns
/// (the minor is that coefficient times a power of the block's variable).
pub fn minor_coefficient(columns: &[Column]) -> BigInt {
    let all_f = columns.iter().all(|c| matches!(c, Column::F { .. }));
    let all_g = columns.iter().all(|c| matches!(c, Column::G { .. }));
    if all_f || all_g {
        let shift = u32::from(all_g);
        let lambda: Vec<u32> = columns.iter().map(|c| c.degree() - shift).collect();
        if let Ok((_, coeff)) = wronskian_closed_form(&lambda) {
            return coeff;
        }
    }
    minor_coefficient_numeric(columns)
}

/// Same as `minor_coefficient`, by direct elimination.
pub fn minor_coefficient_numeric(columns: &[Column]) -> BigInt {
    let k = columns.len();
    let mut entries = Vec::with_capacity(k * k);
    for row in 0..k as u32 {
        for c in columns {
            entries.push(Rational::from_integer(c.entry_coefficient(row)));
        }
    }
    let det = det_rational(&RingMatrix::new(k, k, entries)).expect("square");
    assert!(det.is_integer());
    det.to_integer()
}

/// Degree in the block variable of a nonvanishing minor.
fn minor_degree(columns: &[Column]) -> u32 {
    let k = columns.len() as u32;
    columns.iter().map(|c| c.degree()).sum::<u32>() - k * (k - 1) / 2
}

/// Upper bound on the free-part size accepted by the Laplace routines.
pub const LAPLACE_LIMIT: u32 = 8;

/// `d` expanded along the row blocks. Also returns, per monomial, the number
/// of column partitions contributing a nonzero product.
pub fn laplace_expansion(m: &MultiplicityVector) -> Result<(MultiPoly, BTreeMap<Monomial, usize>)> {
    let layout = MatrixMLayout::new(m)?;
    let free: u32 = layout.row_blocks.iter().sum();
    if free > LAPLACE_LIMIT {
        return Err(Error::InvalidInput(format!(
            "free part of {m} has size {free}, above {LAPLACE_LIMIT}"
        )));
    }
    let nvars = layout.row_blocks.len();
    let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
    let mut counts: BTreeMap<Monomial, usize> = BTreeMap::new();
    let mut chosen: Vec<Vec<usize>> = Vec::with_capacity(nvars);
    let mut used = vec![false; layout.size()];
    laplace_rec(&layout, &mut chosen, &mut used, &mut acc, &mut counts);
    let poly = MultiPoly::from_terms(nvars, acc);
    Ok((poly, counts))
}

fn laplace_rec(
    layout: &MatrixMLayout,
    chosen: &mut Vec<Vec<usize>>,
    used: &mut [bool],
    acc: &mut BTreeMap<Monomial, BigInt>,
    counts: &mut BTreeMap<Monomial, usize>,
) {
    let block = chosen.len();
    if block == layout.row_blocks.len() {
        let mut coeff = BigInt::one();
        let mut mono = Vec::with_capacity(block);
        for cols in chosen.iter() {
            let columns: Vec<Column> = cols.iter().map(|&c| layout.columns[c]).collect();
            let c = minor_coefficient(&columns);
            if c.is_zero() {
                return;
            }
            coeff *= c;
            mono.push(minor_degree(&columns));
        }
        let order: Vec<usize> = chosen.iter().flatten().copied().collect();
        if inversion_sign(&order) < 0 {
            coeff = -coeff;
        }
        *counts.entry(mono.clone()).or_default() += 1;
        *acc.entry(mono).or_default() += coeff;
        return;
    }
    let size = layout.row_blocks[block] as usize;
    let free: Vec<usize> = (0..used.len()).filter(|&c| !used[c]).collect();
    for combo in combinations(&free, size) {
        for &c in &combo {
            used[c] = true;
        }
        chosen.push(combo.clone());
        laplace_rec(layout, chosen, used, acc, counts);
        chosen.pop();
        for &c in &combo {
            used[c] = false;
        }
    }
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

/// Product of block minors for the partition taking columns in matrix order.
pub fn identity_partition_term(m: &MultiplicityVector) -> Result<(Monomial, BigInt)> {
    let layout = MatrixMLayout::new(m)?;
    let mut start = 0usize;
    let mut mono = Vec::new();
    let mut coeff = BigInt::one();
    for &size in &layout.row_blocks {
        let cols = &layout.columns[start..start + size as usize];
        coeff *= minor_coefficient(cols);
        mono.push(minor_degree(cols));
        start += size as usize;
    }
    Ok((mono, coeff))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeadingTermReport {
    pub monomial: Monomial,
    pub det_coefficient: String,
    pub laplace_coefficient: String,
    /// Number of column partitions whose minor product is the leading monomial.
    pub contributing_partitions: usize,
    pub overlap: usize,
    pub agree: bool,
}

/// Compares the lex-leading term of the symbolic determinant with the sum of
/// signed minor products predicted by Laplace development.
pub fn leading_coefficient_report(m: &MultiplicityVector) -> Result<LeadingTermReport> {
    let d = det_d(m)?;
    let (expansion, counts) = laplace_expansion(m)?;
    let ov = overlap(m)?;
    let (mono, det_c) = match d.leading_term() {
        Ok((mo, c)) => (mo.clone(), c.clone()),
        Err(_) => {
            return Ok(LeadingTermReport {
                monomial: Vec::new(),
                det_coefficient: "0".into(),
                laplace_coefficient: if expansion.is_zero() { "0".into() } else { "nonzero".into() },
                contributing_partitions: 0,
                overlap: ov.s,
                agree: expansion.is_zero(),
            })
        }
    };
    let lap_c = expansion.coeff(&mono);
    let lap_lead_matches = expansion.leading_term().map(|(lm, _)| *lm == mono).unwrap_or(false);
    Ok(LeadingTermReport {
        contributing_partitions: counts.get(&mono).copied().unwrap_or(0),
        agree: lap_c == det_c && lap_lead_matches,
        monomial: mono,
        det_coefficient: det_c.to_string(),
        laplace_coefficient: lap_c.to_string(),
        overlap: ov.s,
    })
}

pub fn leading_coefficient_check(m: &MultiplicityVector) -> Result<bool> {
    Ok(leading_coefficient_report(m)?.agree)
}

/// Sign helper used when comparing against closed forms.
pub fn sign_of(v: &BigInt) -> i32 {
    if v.is_negative() {
        -1
    } else if v.is_zero() {
        0
    } else {
        1
    }
}
