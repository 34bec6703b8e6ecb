//! Wronskians of power functions `x^λ1, ..., x^λk`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::{det_fraction_free, RingMatrix};
use super::multipoly::MultiPoly;
use crate::error::{Error, Result};

/// `n (n-1) ... (n-k+1)`, zero when `k > n`.
pub fn falling_factorial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (n - k + 1..=n).fold(BigInt::one(), |acc, v| acc * v)
}

pub fn factorial(n: u32) -> BigInt {
    falling_factorial(n, n)
}

/// Product of `1! 2! ... n!`; one for `n = 0`.
pub fn superfactorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * factorial(j))
}

fn validate(lambda: &[u32]) -> Result<()> {
    if lambda.is_empty() {
        return Err(Error::InvalidInput("empty exponent tuple".into()));
    }
    if lambda.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::InvalidInput(format!(
            "exponents must be strictly decreasing: {lambda:?}"
        )));
    }
    Ok(())
}

/// Degree and coefficient of the Wronskian monomial, from the closed form
/// `deg = Σλ - k(k-1)/2`, `coeff = (-1)^⌊k/2⌋ Π_{i<j} (λi - λj)`.
pub fn wronskian_closed_form(lambda: &[u32]) -> Result<(u32, BigInt)> {
    validate(lambda)?;
    let k = lambda.len() as u32;
    let degree = lambda.iter().sum::<u32>() - k * (k - 1) / 2;
    let mut coeff = BigInt::one();
    for i in 0..lambda.len() {
        for j in i + 1..lambda.len() {
            coeff *= lambda[i] - lambda[j];
        }
    }
    if (k / 2) % 2 == 1 {
        coeff = -coeff;
    }
    Ok((degree, coeff))
}

/// Univariate polynomial in `x` with integer coefficients, ascending powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    pub coeffs: Vec<BigInt>,
}

impl UniPoly {
    /// `(degree, coefficient)` when the polynomial is a single nonzero term.
    pub fn as_monomial(&self) -> Option<(u32, BigInt)> {
        let mut nonzero = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero());
        let (d, c) = nonzero.next()?;
        nonzero.next().is_none().then(|| (d as u32, c.clone()))
    }
}

/// The literal `k x k` determinant of `d^r/dx^r x^λj`, rows `r = 0..k`.
pub fn wronskian_symbolic(lambda: &[u32]) -> Result<UniPoly> {
    validate(lambda)?;
    let k = lambda.len();
    let mut entries = Vec::with_capacity(k * k);
    for r in 0..k as u32 {
        for &l in lambda {
            let c = falling_factorial(l, r);
            entries.push(if c.is_zero() {
                MultiPoly::zero(1)
            } else {
                MultiPoly::term(1, c, vec![l - r])
            });
        }
    }
    let det = det_fraction_free(&RingMatrix::new(k, k, entries), 1)?;
    let top = det.terms().map(|(m, _)| m[0] as usize).max().unwrap_or(0);
    let mut coeffs = vec![BigInt::zero(); top + 1];
    for (m, c) in det.terms() {
        coeffs[m[0] as usize] = c.clone();
    }
    if det.is_zero() {
        coeffs.clear();
    }
    Ok(UniPoly { coeffs })
}
