//! Exponents of a divisor by a degreewise sweep of the derivation module, and
//! the closed-form classification of multiplicity vectors.

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::matrix::{nullspace, RingMatrix};
use crate::algebra::rational::{rat, Rational};
use crate::algebra::wronskian::falling_factorial;
use crate::divisor::{
    is_member, saito_check, saito_determinant, Derivation, MultiplicityVector, PointDivisor,
};
use crate::error::{Error, Result};

/// Linear conditions on the `2(deg+1)` coefficients `(px_0..px_deg,
/// py_0..py_deg)` of a degree-`deg` derivation in the module of `d`.
pub fn membership_system(d: &PointDivisor, deg: usize) -> RingMatrix<Rational> {
    let m = d.mult().entries();
    let cols = 2 * (deg + 1);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let unit = |c: usize| {
        let mut r = vec![Rational::zero(); cols];
        r[c] = rat(1);
        r
    };
    // x^m1 | px: coefficients of x^(deg-j) y^j with deg - j < m1 vanish
    for j in 0..=deg {
        if deg - j < m[0] as usize {
            rows.push(unit(j));
        }
    }
    // y^m2 | py
    for j in 0..=deg.min(m[1] as usize - 1) {
        rows.push(unit(deg + 1 + j));
    }
    // (x - z)^m_i | px(x,1) - z py(x,1): derivatives k < m_i vanish at x = z
    for (z, &mi) in d.z().iter().zip(&m[2..]) {
        for k in 0..mi {
            let mut row = vec![Rational::zero(); cols];
            for j in 0..=deg {
                let power = (deg - j) as u32;
                let ff = falling_factorial(power, k);
                if ff.is_zero() {
                    continue;
                }
                let v = Rational::from_integer(ff) * num_traits::pow(z.clone(), (power - k) as usize);
                row[deg + 1 + j] = -(z * &v);
                row[j] = v;
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return RingMatrix::new(0, cols, Vec::new());
    }
    RingMatrix::from_rows(rows)
}

/// Basis of the degree-`deg` part of the derivation module.
pub fn degree_kernel(d: &PointDivisor, deg: usize) -> Vec<Derivation> {
    let system = membership_system(d, deg);
    nullspace(&system)
        .into_iter()
        .map(|v| {
            let (px, py) = v.split_at(deg + 1);
            Derivation::from_coefficients(px.to_vec(), py.to_vec())
                .expect("kernel vector has matching halves")
        })
        .collect()
}

/// Dimension of the space of degree-`deg` members.
pub fn dimension_at_degree(d: &PointDivisor, deg: usize) -> usize {
    let system = membership_system(d, deg);
    system.cols() - crate::algebra::matrix::rank(&system)
}

/// Exponents `e1 <= e2` together with a certified free basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExponentPair {
    pub e1: u32,
    pub e2: u32,
    pub basis: (Derivation, Derivation),
}

/// Smallest degree with a nonzero member, then a partner of degree `ñ - e1`
/// that passes Saito's criterion with it.
pub fn compute_exponents(d: &PointDivisor) -> Result<ExponentPair> {
    let total = d.mult().total() as usize;
    let ceiling = total / 2;
    let (e1, low) = (1..=ceiling)
        .find_map(|deg| {
            let kernel = degree_kernel(d, deg);
            (!kernel.is_empty()).then_some((deg, kernel))
        })
        .ok_or_else(|| Error::Certification(format!("no member of degree <= {ceiling}")))?;
    let e2 = total - e1;
    let first = low[0].clone();
    let high = if e2 == e1 { low } else { degree_kernel(d, e2) };
    // The partners with zero Saito determinant form a proper subspace, so
    // some basis vector lies outside it.
    let second = high
        .into_iter()
        .find(|cand| !saito_determinant(&first, cand).is_zero())
        .ok_or_else(|| Error::Certification(format!("no degree-{e2} partner")))?;
    if !saito_check(&first, &second, d)? {
        return Err(Error::Certification("Saito determinant is not a multiple of Q".into()));
    }
    debug_assert!(is_member(&first, d)? && is_member(&second, d)?);
    Ok(ExponentPair { e1: e1 as u32, e2: e2 as u32, basis: (first, second) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseTag {
    /// `m1 >= m2 + ... + mn`
    Dominant,
    /// `ñ <= 2n - 2`
    LowTotal,
    /// `ñ = 2n - 1`
    OddReduction,
    /// every multiplicity is 2
    AllTwos,
    /// at most three points
    SmallN,
    /// the balanced regime where exponents depend on position
    MainRegime,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::Dominant => "dominant",
            CaseTag::LowTotal => "low-total",
            CaseTag::OddReduction => "odd-reduction",
            CaseTag::AllTwos => "all-twos",
            CaseTag::SmallN => "small-n",
            CaseTag::MainRegime => "main-regime",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub tag: CaseTag,
    pub predicted: Option<(u32, u32)>,
}

/// The first applicable case, in the order Dominant, LowTotal, OddReduction,
/// AllTwos, SmallN, MainRegime.
pub fn classify(m: &MultiplicityVector) -> Result<Classification> {
    let n = m.n() as u32;
    let total = m.total();
    let m1 = m.entries()[0];
    let tail = m.tail_sum();
    let (tag, predicted) = if m1 >= tail {
        (CaseTag::Dominant, Some((tail, m1)))
    } else if total <= 2 * n - 2 {
        (CaseTag::LowTotal, Some((total - n + 1, n - 1)))
    } else if total == 2 * n - 1 {
        (CaseTag::OddReduction, Some((n - 1, n)))
    } else if m.entries().iter().all(|&v| v == 2) {
        (CaseTag::AllTwos, Some((n, n)))
    } else if n <= 3 {
        let canonical = canonical_configuration(m)?;
        let pair = compute_exponents(&canonical)?;
        (CaseTag::SmallN, Some((pair.e1, pair.e2)))
    } else {
        (CaseTag::MainRegime, None)
    };
    Ok(Classification { tag, predicted })
}

/// The configuration `0, inf, 1, 2, ..., n-2`.
pub fn canonical_configuration(m: &MultiplicityVector) -> Result<PointDivisor> {
    let z = (1..=m.n() as i64 - 2).map(rat).collect();
    PointDivisor::from_normalized(m.clone(), z)
}

/// The balanced pair `(⌊ñ/2⌋, ⌈ñ/2⌉)` taken by points in general position.
pub fn generic_exponents(m: &MultiplicityVector) -> Result<(u32, u32)> {
    let n = m.n() as u32;
    let total = m.total();
    if m.entries()[0] > m.tail_sum() {
        return Err(Error::Hypothesis(format!("m1 exceeds the sum of the others in {m}")));
    }
    if total < 2 * n - 2 {
        return Err(Error::Hypothesis(format!("total {total} is below 2n-2 for {m}")));
    }
    Ok((total / 2, total - total / 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::divisor::defining_polynomial;

    fn mv(v: &[u32]) -> MultiplicityVector {
        MultiplicityVector::new(v.to_vec()).unwrap()
    }

    fn div(m: &[u32], z: &[i64]) -> PointDivisor {
        PointDivisor::from_normalized(mv(m), z.iter().map(|&v| rat(v)).collect()).unwrap()
    }

    fn exps(m: &[u32], z: &[i64]) -> (u32, u32) {
        let p = compute_exponents(&div(m, z)).unwrap();
        (p.e1, p.e2)
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dimension_at_degree(&div(&[1, 1, 1], &[1]), 1), 1);
        assert_eq!(dimension_at_degree(&div(&[3, 3, 1, 1], &[1, 2]), 3), 0);
        assert_eq!(dimension_at_degree(&div(&[3, 3, 1, 1], &[1, -1]), 3), 1);
    }

    #[test]
    fn exponent_examples() {
        assert_eq!(exps(&[1, 1, 1, 1, 1], &[1, 2, 3]), (1, 4));
        assert_eq!(exps(&[5, 1, 1, 1], &[1, 2]), (3, 5));
        assert_eq!(exps(&[5, 1, 1, 1], &[-7, 3]), (3, 5));
        assert_eq!(exps(&[2, 2, 2, 2], &[1, 2]), (4, 4));
        assert_eq!(exps(&[3, 2, 2, 1], &[1, 2]), (3, 5));
        assert_eq!(exps(&[3, 2, 2, 1], &[1, 3]), (4, 4));
    }

    #[test]
    fn basis_is_certified() {
        let d = div(&[3, 3, 1, 1], &[1, -1]);
        let p = compute_exponents(&d).unwrap();
        assert_eq!(p.basis.0.degree(), p.e1 as usize);
        assert_eq!(p.basis.1.degree(), p.e2 as usize);
        let det = saito_determinant(&p.basis.0, &p.basis.1);
        assert!(det.proportionality(&defining_polynomial(&d)).is_some());
    }

    #[test]
    fn classify_examples() {
        let c = classify(&mv(&[5, 1, 1, 1])).unwrap();
        assert_eq!((c.tag, c.predicted), (CaseTag::Dominant, Some((3, 5))));
        assert_eq!(classify(&mv(&[4, 1, 1, 1, 1])).unwrap().predicted, Some((4, 4)));
        let c = classify(&mv(&[2, 2, 2, 2, 2])).unwrap();
        assert_eq!((c.tag, c.predicted), (CaseTag::AllTwos, Some((5, 5))));
        let c = classify(&mv(&[3, 3, 1, 1])).unwrap();
        assert_eq!((c.tag, c.predicted), (CaseTag::MainRegime, None));
        assert_eq!(classify(&mv(&[2, 2, 1, 1])).unwrap().tag, CaseTag::LowTotal);
        assert_eq!(classify(&mv(&[2, 2, 2, 1])).unwrap().tag, CaseTag::OddReduction);
        let c = classify(&mv(&[3, 2, 2])).unwrap();
        assert_eq!((c.tag, c.predicted), (CaseTag::SmallN, Some((3, 4))));
    }

    #[test]
    fn generic_examples() {
        assert_eq!(generic_exponents(&mv(&[3, 3, 1, 1])).unwrap(), (4, 4));
        assert_eq!(generic_exponents(&mv(&[3, 2, 2, 1])).unwrap(), (4, 4));
        assert_eq!(generic_exponents(&mv(&[2, 1, 1])).unwrap(), (2, 2));
        assert!(matches!(generic_exponents(&mv(&[5, 1, 1])), Err(Error::Hypothesis(_))));
        assert!(matches!(generic_exponents(&mv(&[1, 1, 1, 1])), Err(Error::Hypothesis(_))));
    }
}
