//! Dense matrices over polynomial rings and the rationals, with exact
//! determinant and kernel computations.

use num_traits::{One, Zero};

use super::multipoly::MultiPoly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Clone> RingMatrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entries must fill the matrix");
        RingMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RingMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> RingMatrix<U> {
        RingMatrix::new(self.rows, self.cols, self.entries.iter().map(f).collect())
    }

    /// Submatrix on the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                entries.push(self.get(r, c).clone());
            }
        }
        RingMatrix::new(rows.len(), cols.len(), entries)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn require_square(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(self.rows)
    }
}

/// Largest dimension for which `det_fraction_free` expands cofactors instead
/// of eliminating.
pub const COFACTOR_LIMIT: usize = 4;

/// Exact determinant over the polynomial ring: cofactor expansion up to
/// `COFACTOR_LIMIT`, fraction-free elimination above it.
pub fn det_fraction_free(m: &RingMatrix<MultiPoly>, nvars: usize) -> Result<MultiPoly> {
    let n = m.require_square()?;
    if n <= COFACTOR_LIMIT {
        Ok(det_cofactor(m, nvars))
    } else {
        bareiss(m, nvars)
    }
}

/// Bareiss elimination. Every intermediate entry is a minor of the input, so
/// each division is exact in the polynomial ring.
pub fn bareiss(m: &RingMatrix<MultiPoly>, nvars: usize) -> Result<MultiPoly> {
    let n = m.require_square()?;
    if n == 0 {
        return Ok(MultiPoly::one(nvars));
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = MultiPoly::one(nvars);
    for k in 0..n - 1 {
        // pivot: first nonzero entry with the fewest terms, ties by row
        let pivot = (k..n)
            .filter(|&r| !a.get(r, k).is_zero())
            .min_by_key(|&r| (a.get(r, k).num_terms(), r));
        let Some(p) = pivot else {
            return Ok(MultiPoly::zero(nvars));
        };
        if p != k {
            a.swap_rows(p, k);
            negate = !negate;
        }
        let akk = a.get(k, k).clone();
        for i in k + 1..n {
            let aik = a.get(i, k).clone();
            for j in k + 1..n {
                let num = &(&akk * a.get(i, j)) - &(&aik * a.get(k, j));
                let v = if prev.is_zero() { num } else { num.exact_divide(&prev)? };
                a.set(i, j, v);
            }
            a.set(i, k, MultiPoly::zero(nvars));
        }
        prev = akk;
    }
    let det = a.get(n - 1, n - 1).clone();
    Ok(if negate { -&det } else { det })
}

/// Laplace expansion along the first row.
pub fn det_cofactor(m: &RingMatrix<MultiPoly>, nvars: usize) -> MultiPoly {
    let n = m.rows;
    assert_eq!(n, m.cols, "cofactor expansion needs a square matrix");
    match n {
        0 => MultiPoly::one(nvars),
        1 => m.get(0, 0).clone(),
        2 => &(m.get(0, 0) * m.get(1, 1)) - &(m.get(0, 1) * m.get(1, 0)),
        _ => {
            let mut acc = MultiPoly::zero(nvars);
            let rows: Vec<usize> = (1..n).collect();
            for c in 0..n {
                if m.get(0, c).is_zero() {
                    continue;
                }
                let cols: Vec<usize> = (0..n).filter(|&j| j != c).collect();
                let minor = det_cofactor(&m.select(&rows, &cols), nvars);
                let term = m.get(0, c) * &minor;
                acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// Determinant over the rationals by Gaussian elimination.
pub fn det_rational(m: &RingMatrix<Rational>) -> Result<Rational> {
    let n = m.require_square()?;
    let mut a = m.clone();
    let mut det = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a.get(r, k).is_zero()) else {
            return Ok(Rational::zero());
        };
        if p != k {
            a.swap_rows(p, k);
            det = -det;
        }
        let pivot = a.get(k, k).clone();
        det *= &pivot;
        for i in k + 1..n {
            let factor = a.get(i, k) / &pivot;
            if factor.is_zero() {
                continue;
            }
            for j in k..n {
                let v = a.get(i, j) - &factor * a.get(k, j);
                a.set(i, j, v);
            }
        }
    }
    Ok(det)
}

/// Reduced row echelon form; returns the matrix and its pivot columns.
pub fn rref(m: &RingMatrix<Rational>) -> (RingMatrix<Rational>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        a.swap_rows(p, row);
        let inv = a.get(row, col).recip();
        for j in col..a.cols {
            let v = a.get(row, j) * &inv;
            a.set(row, j, v);
        }
        for i in 0..a.rows {
            if i == row || a.get(i, col).is_zero() {
                continue;
            }
            let factor = a.get(i, col).clone();
            for j in col..a.cols {
                let v = a.get(i, j) - &factor * a.get(row, j);
                a.set(i, j, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

pub fn rank(m: &RingMatrix<Rational>) -> usize {
    rref(m).1.len()
}

/// Basis of the right kernel, one vector per free column, each with a 1 in
/// its free column and zeros in the other free columns.
pub fn nullspace(m: &RingMatrix<Rational>) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); m.cols];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, f).clone();
            }
            v
        })
        .collect()
}

pub fn mat_vec(m: &RingMatrix<Rational>, v: &[Rational]) -> Vec<Rational> {
    assert_eq!(m.cols, v.len());
    (0..m.rows)
        .map(|r| m.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn q(rows: Vec<Vec<i64>>) -> RingMatrix<Rational> {
        RingMatrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(rat).collect()).collect())
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(nullspace(&q(vec![vec![0, 0], vec![0, 0]])).len(), 2);
        assert!(nullspace(&q(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])).is_empty());
        assert_eq!(nullspace(&q(vec![vec![1, -1]])), vec![vec![rat(1), rat(1)]]);
    }

    #[test]
    fn one_by_one_symbolic() {
        let m = RingMatrix::from_rows(vec![vec![MultiPoly::var(1, 0)]]);
        assert_eq!(det_fraction_free(&m, 1).unwrap(), MultiPoly::var(1, 0));
    }

    #[test]
    fn two_by_two_symbolic() {
        // [[z3^3, z3], [z4^3, z4]] -> z3 z4 (z3 - z4)(z3 + z4)
        let (a, b) = (MultiPoly::var(2, 0), MultiPoly::var(2, 1));
        let m = RingMatrix::from_rows(vec![vec![a.pow(3), a.clone()], vec![b.pow(3), b.clone()]]);
        let expected = &(&(&a * &b) * &(&a - &b)) * &(&a + &b);
        assert_eq!(det_fraction_free(&m, 2).unwrap(), expected);
        assert_eq!(bareiss(&m, 2).unwrap(), expected);
    }

    #[test]
    fn equal_rows_vanish() {
        let a = MultiPoly::var(2, 0);
        let b = MultiPoly::var(2, 1);
        let row = vec![a.clone(), b.clone(), &a + &b, a.pow(2), b.pow(3)];
        let other = vec![b.clone(), a.clone(), a.pow(3), MultiPoly::one(2), &a * &b];
        let m = RingMatrix::from_rows(vec![
            row.clone(),
            other.clone(),
            row,
            other.iter().map(|p| p * &a).collect(),
            other.iter().map(|p| p + &b).collect(),
        ]);
        assert!(det_fraction_free(&m, 2).unwrap().is_zero());
    }

    #[test]
    fn non_square_is_rejected() {
        let m = RingMatrix::new(1, 2, vec![MultiPoly::one(1), MultiPoly::one(1)]);
        assert_eq!(
            det_fraction_free(&m, 1),
            Err(Error::NotSquare { rows: 1, cols: 2 })
        );
    }

    #[test]
    fn rational_det() {
        assert_eq!(det_rational(&q(vec![vec![2, 1], vec![7, 4]])).unwrap(), rat(1));
        assert_eq!(det_rational(&q(vec![vec![0, 1], vec![1, 0]])).unwrap(), rat(-1));
    }
}
