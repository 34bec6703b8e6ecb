//! Homogeneous polynomials in `x, y` over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{format_rational, Rational};

/// A homogeneous bivariate polynomial. Index `j` of `coeffs` holds the
/// coefficient of `x^(degree-j) y^j`. The zero polynomial has no coefficients
/// and no degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    coeffs: Vec<Rational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^a * y^b`
    pub fn monomial(c: Rational, a: usize, b: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); a + b + 1];
        coeffs[b] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    /// `u*x + v*y`
    pub fn linear(u: Rational, v: Rational) -> Self {
        Self::from_coeffs(vec![u, v])
    }

    /// Builds from coefficients of `x^(d-j) y^j`; all-zero input gives zero.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        if coeffs.iter().all(Zero::is_zero) {
            Self::zero()
        } else {
            BiPoly { coeffs }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficients padded to `degree + 1` entries; zero gives all zeros.
    pub fn coeffs_at_degree(&self, degree: usize) -> Vec<Rational> {
        match self.degree() {
            None => vec![Rational::zero(); degree + 1],
            Some(d) => {
                assert_eq!(d, degree, "degree mismatch");
                self.coeffs.clone()
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `x^a y^b`.
    pub fn shift(&self, a: usize, b: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); b];
        coeffs.extend(self.coeffs.iter().cloned());
        coeffs.extend(std::iter::repeat(Rational::zero()).take(a));
        BiPoly { coeffs }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(Rational::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn product<'a>(factors: impl IntoIterator<Item = &'a BiPoly>) -> Self {
        factors
            .into_iter()
            .fold(Self::constant(Rational::one()), |acc, f| &acc * f)
    }

    /// Coefficients of `p(x, 1)` in ascending powers of `x`.
    pub fn dehomogenize(&self) -> Vec<Rational> {
        self.coeffs.iter().rev().cloned().collect()
    }

    /// Largest `k` with `y^k` dividing `self`; `None` for zero.
    pub fn y_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Largest `k` with `x^k` dividing `self`; `None` for zero.
    pub fn x_valuation(&self) -> Option<usize> {
        self.coeffs.iter().rev().position(|c| !c.is_zero())
    }

    /// Whether `(u x + v y)^m` divides `self`. Zero is divisible by anything.
    pub fn divisible_by_linear_power(&self, u: &Rational, v: &Rational, m: u32) -> bool {
        if self.is_zero() || m == 0 {
            return true;
        }
        if u.is_zero() {
            return self.y_valuation().unwrap() >= m as usize;
        }
        // u x + v y = u (x - z y) with z = -v/u; test (x - z)^m | p(x, 1).
        let z = -(v / u);
        let mut poly = self.dehomogenize();
        for _ in 0..m {
            match synthetic_divide(&poly, &z) {
                Some(q) => poly = q,
                None => return false,
            }
        }
        true
    }

    /// Substitutes `x -> a x + b y`, `y -> c x + d y`.
    pub fn compose_linear(&self, a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Self {
        let Some(deg) = self.degree() else {
            return Self::zero();
        };
        let lx = Self::linear(a.clone(), b.clone());
        let ly = Self::linear(c.clone(), d.clone());
        let mut acc = Self::zero();
        for (j, coef) in self.coeffs.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let term = (&lx.pow((deg - j) as u32) * &ly.pow(j as u32)).scale(coef);
            acc = &acc + &term;
        }
        acc
    }

    /// The rational `c` with `self = c * other`, if one exists.
    pub fn proportionality(&self, other: &BiPoly) -> Option<Rational> {
        if other.is_zero() {
            return if self.is_zero() { Some(Rational::zero()) } else { None };
        }
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.degree() != other.degree() {
            return None;
        }
        let pivot = other.coeffs.iter().position(|c| !c.is_zero())?;
        let c = &self.coeffs[pivot] / &other.coeffs[pivot];
        let ok = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(s, o)| *s == o * &c);
        ok.then_some(c)
    }
}

/// Divides an ascending-coefficient polynomial by `(x - z)`; `None` if the
/// remainder is nonzero.
fn synthetic_divide(poly: &[Rational], z: &Rational) -> Option<Vec<Rational>> {
    if poly.is_empty() {
        return Some(Vec::new());
    }
    let n = poly.len();
    let mut quotient = vec![Rational::zero(); n - 1];
    let mut carry = Rational::zero();
    for i in (0..n).rev() {
        let value = &poly[i] + &carry * z;
        if i == 0 {
            return value.is_zero().then_some(quotient);
        }
        quotient[i - 1] = value.clone();
        carry = value;
    }
    unreachable!()
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree(), rhs.degree(), "adding non-homogeneous pieces");
        BiPoly::from_coeffs(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        BiPoly::from_coeffs(coeffs)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(deg) = self.degree() else {
            return write!(f, "0");
        };
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (a, b) = (deg - j, j);
            let negative = c < &Rational::zero();
            let mag = if negative { -c } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            first = false;
            let mut parts = Vec::new();
            if !mag.is_one() || (a == 0 && b == 0) {
                parts.push(format_rational(&mag));
            }
            match a {
                0 => {}
                1 => parts.push("x".into()),
                _ => parts.push(format!("x^{a}")),
            }
            match b {
                0 => {}
                1 => parts.push("y".into()),
                _ => parts.push(format!("y^{b}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct BiPolyRepr {
    degree: Option<usize>,
    #[serde(with = "super::rational::serde_rational_vec")]
    coeffs: Vec<Rational>,
}

impl Serialize for BiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        BiPolyRepr { degree: self.degree(), coeffs: self.coeffs.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = BiPolyRepr::deserialize(d)?;
        Ok(BiPoly::from_coeffs(repr.coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn product_of_linear_forms() {
        // (x - y)(x + y) = x^2 - y^2
        let p = &BiPoly::linear(rat(1), rat(-1)) * &BiPoly::linear(rat(1), rat(1));
        assert_eq!(p.coeffs(), &[rat(1), rat(0), rat(-1)]);
        assert_eq!(p.to_string(), "x^2 - y^2");
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(BiPoly::zero().degree(), None);
        let p = BiPoly::x();
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn linear_power_divisibility() {
        let a = BiPoly::linear(rat(1), rat(-2));
        let p = &a.pow(3) * &BiPoly::y();
        assert!(p.divisible_by_linear_power(&rat(1), &rat(-2), 3));
        assert!(!p.divisible_by_linear_power(&rat(1), &rat(-2), 4));
        assert!(p.divisible_by_linear_power(&rat(0), &rat(5), 1));
        assert!(!p.divisible_by_linear_power(&rat(0), &rat(1), 2));
        assert!(!p.divisible_by_linear_power(&rat(1), &rat(0), 1));
        // scaled form 2x - 4y is the same line
        assert!(p.divisible_by_linear_power(&rat(2), &rat(-4), 3));
    }

    #[test]
    fn compose_swaps_variables() {
        let p = BiPoly::monomial(rat(3), 2, 1);
        let q = p.compose_linear(&rat(0), &rat(1), &rat(1), &rat(0));
        assert_eq!(q, BiPoly::monomial(rat(3), 1, 2));
    }

    #[test]
    fn proportionality() {
        let p = BiPoly::linear(rat(1), rat(2));
        assert_eq!(p.scale(&rat(-3)).proportionality(&p), Some(rat(-3)));
        assert_eq!(BiPoly::x().proportionality(&BiPoly::y()), None);
    }
}
