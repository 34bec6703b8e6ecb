//! Sparse multivariate polynomials with big-integer coefficients.
//!
//! Variables are displayed as `z3, z4, ...` (the first variable is `z3`).
//! Monomials are ordered lexicographically with `z3 > z4 > ...`, which is the
//! natural ordering of exponent vectors, so the leading term is the last entry
//! of the term map.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Index displayed for variable 0.
pub const FIRST_VAR_LABEL: usize = 3;

pub type Monomial = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::term(nvars, c, vec![0; nvars])
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    /// The variable with index `i` (displayed as `z{i+3}`).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Self::term(nvars, 1, exps)
    }

    pub fn term(nvars: usize, c: impl Into<BigInt>, exps: Monomial) -> Self {
        assert_eq!(exps.len(), nvars);
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MultiPoly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.len(), nvars);
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &[u32]) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn leading_term(&self) -> Result<(&Monomial, &BigInt)> {
        self.terms.iter().next_back().ok_or(Error::ZeroDegree)
    }

    pub fn total_degree(&self) -> Result<u32> {
        self.terms
            .keys()
            .map(|m| m.iter().sum::<u32>())
            .max()
            .ok_or(Error::ZeroDegree)
    }

    /// Whether all monomials share one total degree. Zero counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = Rational::from_integer(c.clone());
            for (z, &e) in point.iter().zip(m) {
                if e > 0 {
                    t *= num_traits::pow(z.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Renames variable `i` to `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars);
        Self::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, c)| {
                let mut out = vec![0; self.nvars];
                for (i, &e) in m.iter().enumerate() {
                    out[perm[i]] = e;
                }
                (out, c.clone())
            }),
        )
    }

    /// Exact quotient `self / divisor`; errors if the division leaves a
    /// remainder.
    pub fn exact_divide(&self, divisor: &MultiPoly) -> Result<MultiPoly> {
        assert_eq!(self.nvars, divisor.nvars);
        let (lead_m, lead_c) = divisor.leading_term().map_err(|_| Error::DivisionByZero)?;
        let lead_m = lead_m.clone();
        let lead_c = lead_c.clone();
        let mut rem = self.clone();
        let mut quotient = Self::zero(self.nvars);
        while let Some((m, c)) = rem.terms.last_key_value().map(|(m, c)| (m.clone(), c.clone())) {
            let not_divisible = || Error::NotDivisible(format!("{self} by {divisor}"));
            if m.iter().zip(&lead_m).any(|(a, b)| a < b) {
                return Err(not_divisible());
            }
            let (qc, r) = c.div_rem(&lead_c);
            if !r.is_zero() {
                return Err(not_divisible());
            }
            let qm: Monomial = m.iter().zip(&lead_m).map(|(a, b)| a - b).collect();
            for (dm, dc) in &divisor.terms {
                let prod: Monomial = dm.iter().zip(&qm).map(|(a, b)| a + b).collect();
                rem.add_term(prod, -(dc * &qc));
            }
            quotient.add_term(qm, qc);
        }
        Ok(quotient)
    }

    /// Sign of the leading coefficient; zero for the zero polynomial.
    pub fn leading_sign(&self) -> i32 {
        match self.terms.iter().next_back() {
            None => 0,
            Some((_, c)) if c.is_negative() => -1,
            Some(_) => 1,
        }
    }

    /// Whether `self == other` or `self == -other`; returns the sign.
    pub fn equal_up_to_sign(&self, other: &MultiPoly) -> Option<i32> {
        if self == other {
            Some(1)
        } else if *self == -other {
            Some(-1)
        } else {
            None
        }
    }

    pub fn var_name(i: usize) -> String {
        format!("z{}", i + FIRST_VAR_LABEL)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                *acc.entry(m).or_default() += ca * cb;
            }
        }
        MultiPoly {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            let mut parts = Vec::new();
            let constant = m.iter().all(|&e| e == 0);
            if !mag.is_one() || constant {
                parts.push(mag.to_string());
            }
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(Self::var_name(i)),
                    _ => parts.push(format!("{}^{e}", Self::var_name(i))),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// Wire form of one term: `{exponents: [..], coeff: "int"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRepr {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

impl MultiPoly {
    /// Terms in descending monomial order, the declared wire order.
    pub fn to_repr(&self) -> Vec<TermRepr> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| TermRepr { exponents: m.clone(), coeff: c.to_string() })
            .collect()
    }

    pub fn from_repr(nvars: usize, repr: &[TermRepr]) -> Result<Self> {
        let mut terms = Vec::with_capacity(repr.len());
        for t in repr {
            if t.exponents.len() != nvars {
                return Err(Error::Parse(format!(
                    "term has {} exponents, expected {nvars}",
                    t.exponents.len()
                )));
            }
            let c: BigInt = t
                .coeff
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {:?}", t.coeff)))?;
            terms.push((t.exponents.clone(), c));
        }
        Ok(Self::from_terms(nvars, terms))
    }
}

impl Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_repr().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn z(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn difference_of_squares_divides() {
        let (a, b) = (z(2, 0), z(2, 1));
        let num = &(&a * &a) - &(&b * &b);
        let q = num.exact_divide(&(&a - &b)).unwrap();
        assert_eq!(q, &a + &b);
    }

    #[test]
    fn not_divisible() {
        let (a, b) = (z(2, 0), z(2, 1));
        let err = (&a + &b).exact_divide(&a).unwrap_err();
        assert!(matches!(err, Error::NotDivisible(_)));
        assert_eq!(a.exact_divide(&MultiPoly::zero(2)), Err(Error::DivisionByZero));
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = z(3, 1);
        assert!((&a - &a).is_zero());
        assert_eq!((&a - &a).total_degree(), Err(Error::ZeroDegree));
    }

    #[test]
    fn lex_leading_term_prefers_first_variable() {
        // z3*z4^5 + z3^2 : leading is z3^2
        let p = &(&z(2, 0) * &z(2, 1).pow(5)) + &z(2, 0).pow(2);
        assert_eq!(p.leading_term().unwrap().0, &vec![2, 0]);
        assert_eq!(p.to_string(), "z3^2 + z3*z4^5");
    }

    #[test]
    fn evaluation() {
        let p = &(&z(2, 0) * &z(2, 0)) - &z(2, 1).scale(&BigInt::from(3));
        assert_eq!(p.evaluate(&[rat(2), rat(5)]), rat(-11));
    }

    #[test]
    fn wire_order_is_descending() {
        let p = &z(2, 1) + &z(2, 0);
        let repr = p.to_repr();
        assert_eq!(repr[0].exponents, vec![1, 0]);
        assert_eq!(MultiPoly::from_repr(2, &repr).unwrap(), p);
    }
}
