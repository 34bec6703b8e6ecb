//! Rectangular Schur polynomials and their match with `d1` when every free
//! point is simple.

use serde::{Deserialize, Serialize};

use crate::algebra::matrix::{det_fraction_free, RingMatrix};
use crate::algebra::MultiPoly;
use crate::divisor::MultiplicityVector;
use crate::error::{Error, Result};
use crate::matrix_m::reduce_d1;

/// The partition `(base, ..., base)` with `height` parts, in `nvars` variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RectPartition {
    pub base: u32,
    pub height: u32,
    pub nvars: usize,
}

impl RectPartition {
    /// A zero base is accepted and gives the empty partition.
    pub fn new(base: u32, height: u32, nvars: usize) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::InvalidInput("a Schur polynomial needs at least one variable".into()));
        }
        if height == 0 {
            return Err(Error::InvalidInput("height must be positive".into()));
        }
        if height as usize > nvars {
            return Err(Error::InvalidInput(format!(
                "height {height} exceeds the {nvars} variables; the polynomial vanishes"
            )));
        }
        Ok(RectPartition { base, height, nvars })
    }

    /// Parts padded with zeros to `nvars`.
    pub fn parts(&self) -> Vec<u32> {
        (0..self.nvars).map(|j| if j < self.height as usize { self.base } else { 0 }).collect()
    }
}

fn alternant(exponents: &[u32]) -> Result<MultiPoly> {
    let n = exponents.len();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for &e in exponents {
            let mut mono = vec![0; n];
            mono[i] = e;
            entries.push(MultiPoly::term(n, 1, mono));
        }
    }
    det_fraction_free(&RingMatrix::new(n, n, entries), n)
}

/// `det(z_i^(λ_j + N - j)) / det(z_i^(N - j))`.
pub fn schur_rectangular(p: &RectPartition) -> Result<MultiPoly> {
    let n = p.nvars;
    let staircase: Vec<u32> = (0..n as u32).rev().collect();
    let shifted: Vec<u32> = p.parts().iter().zip(&staircase).map(|(l, s)| l + s).collect();
    alternant(&shifted)?.exact_divide(&alternant(&staircase)?)
}

/// Invariance under every transposition of variables.
pub fn is_symmetric(p: &MultiPoly) -> bool {
    let n = p.nvars();
    (0..n).all(|i| {
        (i + 1..n).all(|j| {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.swap(i, j);
            p.permute_vars(&perm) == *p
        })
    })
}

/// The rectangle predicted for `(m1, m2, 1, ..., 1)`: base `(m1 + m2 - n)/2`,
/// height `(m2 - m1 + n - 2)/2`.
pub fn predicted_rectangle(m: &MultiplicityVector) -> Result<RectPartition> {
    let e = m.entries();
    let n = e.len() as i64;
    if n < 3 || e[2..].iter().any(|&v| v != 1) {
        return Err(Error::InvalidInput(format!("{m} is not of the form (m1, m2, 1, ..., 1)")));
    }
    if m.total() % 2 == 1 {
        return Err(Error::OddTotal(m.total()));
    }
    let (m1, m2) = (e[0] as i64, e[1] as i64);
    if !(m1 - m2 < n - 2 && n - 2 < m1 + m2) {
        return Err(Error::Hypothesis(format!("{m} violates m1 - m2 < n - 2 < m1 + m2")));
    }
    RectPartition::new(((m1 + m2 - n) / 2) as u32, ((m2 - m1 + n - 2) / 2) as u32, (n - 2) as usize)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchurCheck {
    #[serde(rename = "match")]
    pub matches: bool,
    /// `d1 = sign * s_λ`, reported as the ratio of leading coefficients.
    pub sign: i32,
    pub lambda: [u32; 2],
}

pub fn schur_identity_report(m: &MultiplicityVector) -> Result<SchurCheck> {
    let rect = predicted_rectangle(m)?;
    let s = schur_rectangular(&rect)?;
    let d1 = reduce_d1(m)?;
    let sign = d1.leading_sign() * s.leading_sign();
    Ok(SchurCheck {
        matches: d1.equal_up_to_sign(&s).is_some(),
        sign,
        lambda: [rect.base, rect.height],
    })
}

pub fn schur_identity_check(m: &MultiplicityVector) -> Result<bool> {
    Ok(schur_identity_report(m)?.matches)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn small_rectangles() {
        let e1 = &z(2, 0) + &z(2, 1);
        assert_eq!(schur_rectangular(&RectPartition::new(1, 1, 2).unwrap()).unwrap(), e1);

        let mut e2 = MultiPoly::zero(4);
        for i in 0..4 {
            for j in i + 1..4 {
                e2 = &e2 + &(&z(4, i) * &z(4, j));
            }
        }
        assert_eq!(schur_rectangular(&RectPartition::new(1, 2, 4).unwrap()).unwrap(), e2);

        let (a, b) = (z(2, 0), z(2, 1));
        let h2 = &(&(&a * &a) + &(&a * &b)) + &(&b * &b);
        assert_eq!(schur_rectangular(&RectPartition::new(2, 1, 2).unwrap()).unwrap(), h2);
    }

    #[test]
    fn empty_rectangle_is_one() {
        let s = schur_rectangular(&RectPartition::new(0, 2, 3).unwrap()).unwrap();
        assert_eq!(s, MultiPoly::one(3));
    }

    #[test]
    fn rejects_tall_rectangles() {
        assert!(RectPartition::new(1, 3, 2).is_err());
    }

    #[test]
    fn identity_examples() {
        let mv = |v: &[u32]| MultiplicityVector::new(v.to_vec()).unwrap();
        let r = schur_identity_report(&mv(&[3, 3, 1, 1])).unwrap();
        assert!(r.matches);
        assert_eq!(r.lambda, [1, 1]);
        let r = schur_identity_report(&mv(&[4, 4, 1, 1, 1, 1])).unwrap();
        assert!(r.matches);
        assert_eq!(r.lambda, [1, 2]);
        assert!(matches!(schur_identity_check(&mv(&[4, 2, 1, 1])), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn symmetry() {
        let s = schur_rectangular(&RectPartition::new(2, 2, 3).unwrap()).unwrap();
        assert!(is_symmetric(&s));
        assert!(!is_symmetric(&z(2, 0)));
    }
}
