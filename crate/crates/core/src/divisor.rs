//! Multi-arrangements of points on the projective line and their logarithmic
//! derivations.
//!
//! A divisor is normalized so that its defining polynomial reads
//! `x^m1 y^m2 Π_{i>=3} (x - z_i y)^m_i`: the two heaviest points sit at `0`
//! (the zero of `x`) and at infinity (the zero of `y`).

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{format_rational, parse_rational, rat, Rational};
use crate::algebra::BiPoly;
use crate::error::{Error, Result};

/// Weakly decreasing positive multiplicities `m1 >= m2 >= ... >= mn`, `n >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiplicityVector {
    entries: Vec<u32>,
    total: u32,
}

impl MultiplicityVector {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::TooFewPoints);
        }
        if entries.contains(&0) {
            return Err(Error::ZeroMultiplicity);
        }
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!(
                "multiplicities must be weakly decreasing: {entries:?}"
            )));
        }
        let total = entries.iter().sum();
        Ok(MultiplicityVector { entries, total })
    }

    /// Sorts into weakly decreasing order first.
    pub fn from_unsorted(mut entries: Vec<u32>) -> Result<Self> {
        entries.sort_by(|a, b| b.cmp(a));
        Self::new(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    /// `ñ`, the sum of all multiplicities.
    pub fn total(&self) -> u32 {
        self.total
    }

    /// Sum of all multiplicities but the first.
    pub fn tail_sum(&self) -> u32 {
        self.total - self.entries[0]
    }

    /// Multiplicities of the points other than `0` and infinity.
    pub fn free_part(&self) -> &[u32] {
        &self.entries[2..]
    }

    /// Same vector with entry `i` raised by one, re-sorted.
    pub fn incremented(&self, i: usize) -> Self {
        let mut e = self.entries.clone();
        e[i] += 1;
        Self::from_unsorted(e).expect("incrementing keeps the vector valid")
    }
}

impl fmt::Display for MultiplicityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A point `[a:b]` of the projective line, identified with `z = a/b`. Stored
/// canonically as `[z:1]` or `[1:0]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    a: Rational,
    b: Rational,
}

impl ProjPoint {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        if b.is_zero() {
            if a.is_zero() {
                return Err(Error::InvalidInput("point [0:0] is not projective".into()));
            }
            return Ok(Self::infinity());
        }
        Ok(ProjPoint { a: a / &b, b: Rational::one() })
    }

    pub fn finite(z: Rational) -> Self {
        ProjPoint { a: z, b: Rational::one() }
    }

    pub fn infinity() -> Self {
        ProjPoint { a: Rational::one(), b: Rational::zero() }
    }

    pub fn is_infinity(&self) -> bool {
        self.b.is_zero()
    }

    pub fn coords(&self) -> (&Rational, &Rational) {
        (&self.a, &self.b)
    }

    /// Coefficients `(u, v)` of a linear form `u x + v y` vanishing here.
    pub fn linear_form(&self) -> (Rational, Rational) {
        (self.b.clone(), -self.a.clone())
    }

    /// Parses `"inf"` or a rational `"p/q"`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" {
            Ok(Self::infinity())
        } else {
            Ok(Self::finite(parse_rational(t)?))
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            write!(f, "inf")
        } else {
            write!(f, "{}", format_rational(&self.a))
        }
    }
}

/// Points with multiplicities, normalized to the `x^m1 y^m2 Π (x - z_i y)^m_i`
/// shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointDivisor {
    /// Input points, reordered to follow `mult`.
    points: Vec<ProjPoint>,
    /// For each sorted position, the index of the point in the caller's input.
    input_order: Vec<usize>,
    mult: MultiplicityVector,
    z: Vec<Rational>,
    /// Rows of the 2x2 matrix applied to homogeneous point coordinates.
    mobius: [Rational; 4],
}

impl PointDivisor {
    /// Builds a divisor directly in normalized coordinates.
    pub fn from_normalized(mult: MultiplicityVector, z: Vec<Rational>) -> Result<Self> {
        if z.len() + 2 != mult.n() {
            return Err(Error::InvalidInput(format!(
                "{} coordinates given for {} points",
                z.len(),
                mult.n()
            )));
        }
        validate_free_coordinates(&z)?;
        let mut points = vec![ProjPoint::finite(Rational::zero()), ProjPoint::infinity()];
        points.extend(z.iter().cloned().map(ProjPoint::finite));
        Ok(PointDivisor {
            points,
            input_order: (0..mult.n()).collect(),
            mult,
            z,
            mobius: [rat(1), rat(0), rat(0), rat(1)],
        })
    }

    pub fn mult(&self) -> &MultiplicityVector {
        &self.mult
    }

    /// Normalized coordinates `z3, ..., zn`.
    pub fn z(&self) -> &[Rational] {
        &self.z
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn input_order(&self) -> &[usize] {
        &self.input_order
    }

    /// The matrix `[[p, q], [r, s]]` sending `[a:b]` to `[p a + q b : r a + s b]`.
    pub fn mobius(&self) -> &[Rational; 4] {
        &self.mobius
    }

    /// Linear forms with their multiplicities in normalized coordinates:
    /// `x`, `y`, then `x - z_i y`.
    pub fn forms(&self) -> Vec<(Rational, Rational, u32)> {
        let m = self.mult.entries();
        let mut out = vec![(rat(1), rat(0), m[0]), (rat(0), rat(1), m[1])];
        for (z, &mi) in self.z.iter().zip(&m[2..]) {
            out.push((rat(1), -z.clone(), mi));
        }
        out
    }
}

fn validate_free_coordinates(z: &[Rational]) -> Result<()> {
    if z.iter().any(Zero::is_zero) {
        return Err(Error::DuplicatePoints);
    }
    for i in 0..z.len() {
        if z[i + 1..].contains(&z[i]) {
            return Err(Error::DuplicatePoints);
        }
    }
    Ok(())
}

/// Sorts multiplicities into weakly decreasing order (ties keep input order)
/// and moves the first two points to `0` and infinity by a Möbius map.
pub fn normalize(points: &[ProjPoint], mult: &[u32]) -> Result<PointDivisor> {
    if points.len() != mult.len() {
        return Err(Error::InvalidInput(format!(
            "{} points but {} multiplicities",
            points.len(),
            mult.len()
        )));
    }
    if points.len() < 2 {
        return Err(Error::TooFewPoints);
    }
    if mult.contains(&0) {
        return Err(Error::ZeroMultiplicity);
    }
    for i in 0..points.len() {
        if points[i + 1..].contains(&points[i]) {
            return Err(Error::DuplicatePoints);
        }
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| mult[j].cmp(&mult[i]));
    let sorted_mult = MultiplicityVector::new(order.iter().map(|&i| mult[i]).collect())?;

    let (a1, b1) = points[order[0]].coords();
    let (a2, b2) = points[order[1]].coords();
    // [a:b] -> [b1 a - a1 b : a2 b - b2 a]; the first point goes to 0, the second to infinity.
    let mobius = [b1.clone(), -a1.clone(), -b2.clone(), a2.clone()];
    let z: Vec<Rational> = order[2..]
        .iter()
        .map(|&i| {
            let (a, b) = points[i].coords();
            let num = &mobius[0] * a + &mobius[1] * b;
            let den = &mobius[2] * a + &mobius[3] * b;
            num / den
        })
        .collect();
    validate_free_coordinates(&z)?;
    Ok(PointDivisor {
        points: order.iter().map(|&i| points[i].clone()).collect(),
        input_order: order,
        mult: sorted_mult,
        z,
        mobius,
    })
}

/// `x^m1 y^m2 Π (x - z_i y)^m_i`.
pub fn defining_polynomial(d: &PointDivisor) -> BiPoly {
    BiPoly::product(
        &d.forms()
            .into_iter()
            .map(|(u, v, m)| BiPoly::linear(u, v).pow(m))
            .collect::<Vec<_>>(),
    )
}

/// The reduced polynomial `x y Π (x - z_i y)`.
pub fn reduced_polynomial(d: &PointDivisor) -> BiPoly {
    BiPoly::product(
        &d.forms()
            .into_iter()
            .map(|(u, v, _)| BiPoly::linear(u, v))
            .collect::<Vec<_>>(),
    )
}

/// A homogeneous derivation `px ∂x + py ∂y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    px: BiPoly,
    py: BiPoly,
    degree: usize,
}

impl Derivation {
    pub fn new(px: BiPoly, py: BiPoly, degree: usize) -> Result<Self> {
        for p in [&px, &py] {
            if let Some(d) = p.degree() {
                if d != degree {
                    return Err(Error::InvalidInput(format!(
                        "coefficient of degree {d} in a derivation of degree {degree}"
                    )));
                }
            }
        }
        Ok(Derivation { px, py, degree })
    }

    /// Builds from the coefficient vectors of `px` and `py` (each of length
    /// `degree + 1`).
    pub fn from_coefficients(px: Vec<Rational>, py: Vec<Rational>) -> Result<Self> {
        if px.len() != py.len() || px.is_empty() {
            return Err(Error::InvalidInput("coefficient vectors must match in length".into()));
        }
        let degree = px.len() - 1;
        Self::new(BiPoly::from_coeffs(px), BiPoly::from_coeffs(py), degree)
    }

    pub fn euler() -> Self {
        Derivation { px: BiPoly::x(), py: BiPoly::y(), degree: 1 }
    }

    pub fn px(&self) -> &BiPoly {
        &self.px
    }

    pub fn py(&self) -> &BiPoly {
        &self.py
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.px.is_zero() && self.py.is_zero()
    }

    /// `θ(u x + v y) = u px + v py`.
    pub fn apply_linear(&self, u: &Rational, v: &Rational) -> BiPoly {
        &self.px.scale(u) + &self.py.scale(v)
    }

    /// Multiplies both coefficients by a homogeneous polynomial.
    pub fn times(&self, h: &BiPoly) -> Self {
        let extra = h.degree().unwrap_or(0);
        Derivation { px: &self.px * h, py: &self.py * h, degree: self.degree + extra }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Derivation { px: self.px.scale(c), py: self.py.scale(c), degree: self.degree }
    }

    /// Conjugates by the linear substitution `G = [[a, b], [c, d]]`, i.e. the
    /// vector field `v -> G⁻¹ V(G v)`. If `θ` preserves the form `α`, the
    /// result preserves `α ∘ G` with the same multiplicity.
    pub fn pullback(&self, g: &[Rational; 4]) -> Result<Self> {
        let [a, b, c, d] = g;
        let det = a * d - b * c;
        if det.is_zero() {
            return Err(Error::InvalidInput("singular coordinate change".into()));
        }
        let px = self.px.compose_linear(a, b, c, d);
        let py = self.py.compose_linear(a, b, c, d);
        let inv = det.recip();
        let new_px = (&px.scale(d) - &py.scale(b)).scale(&inv);
        let new_py = (&py.scale(a) - &px.scale(c)).scale(&inv);
        Ok(Derivation { px: new_px, py: new_py, degree: self.degree })
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})∂x + ({})∂y", self.px, self.py)
    }
}

#[derive(Serialize, Deserialize)]
struct DerivationRepr {
    degree: usize,
    #[serde(with = "crate::algebra::rational::serde_rational_vec")]
    px: Vec<Rational>,
    #[serde(with = "crate::algebra::rational::serde_rational_vec")]
    py: Vec<Rational>,
}

impl Serialize for Derivation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DerivationRepr {
            degree: self.degree,
            px: self.px.coeffs_at_degree(self.degree),
            py: self.py.coeffs_at_degree(self.degree),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Derivation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = DerivationRepr::deserialize(d)?;
        if r.px.len() != r.degree + 1 {
            return Err(serde::de::Error::custom("coefficient count does not match degree"));
        }
        Derivation::from_coefficients(r.px, r.py).map_err(serde::de::Error::custom)
    }
}

/// Whether `θ(α)` is divisible by `α^m` for every `(u, v, m)` with
/// `α = u x + v y`.
pub fn is_member_of_forms(theta: &Derivation, forms: &[(Rational, Rational, u32)]) -> Result<bool> {
    if theta.is_zero() {
        return Err(Error::ZeroDerivation);
    }
    Ok(forms
        .iter()
        .all(|(u, v, m)| theta.apply_linear(u, v).divisible_by_linear_power(u, v, *m)))
}

pub fn is_member(theta: &Derivation, d: &PointDivisor) -> Result<bool> {
    is_member_of_forms(theta, &d.forms())
}

/// `(Q̃ / x^m1) ∂y`.
pub fn theta1(d: &PointDivisor) -> Derivation {
    let forms = d.forms();
    let py = BiPoly::product(
        &forms[1..]
            .iter()
            .map(|(u, v, m)| BiPoly::linear(u.clone(), v.clone()).pow(*m))
            .collect::<Vec<_>>(),
    );
    let degree = (d.mult().total() - d.mult().entries()[0]) as usize;
    Derivation { px: BiPoly::zero(), py, degree }
}

/// `(Q̃ / Q) θ_E`.
pub fn theta2(d: &PointDivisor) -> Derivation {
    let h = BiPoly::product(
        &d.forms()
            .into_iter()
            .map(|(u, v, m)| BiPoly::linear(u, v).pow(m - 1))
            .collect::<Vec<_>>(),
    );
    Derivation::euler().times(&h)
}

/// The degree-`n` basis for a divisor with every multiplicity equal to 2.
pub fn xi_basis(d: &PointDivisor) -> Result<(Derivation, Derivation)> {
    if d.mult().entries().iter().any(|&m| m != 2) {
        return Err(Error::InvalidInput("every multiplicity must be 2".into()));
    }
    let n = d.mult().n();
    if n == 2 {
        return Ok((
            Derivation { px: BiPoly::monomial(rat(1), 2, 0), py: BiPoly::zero(), degree: 2 },
            Derivation { px: BiPoly::zero(), py: BiPoly::monomial(rat(1), 0, 2), degree: 2 },
        ));
    }
    let factors: Vec<BiPoly> = d.z().iter().map(|z| BiPoly::linear(rat(1), -z.clone())).collect();
    let product_except = |skip: Option<usize>| {
        BiPoly::product(factors.iter().enumerate().filter(|(i, _)| Some(*i) != skip).map(|(_, f)| f))
    };
    let xy = BiPoly::monomial(rat(1), 1, 1);
    // Q_i = Q / (x - z_i y)
    let q_i: Vec<BiPoly> = (0..factors.len()).map(|i| &xy * &product_except(Some(i))).collect();
    let h1 = q_i.iter().fold(BiPoly::zero(), |acc, q| &acc + q);
    let h2 = q_i
        .iter()
        .zip(d.z())
        .fold(BiPoly::zero(), |acc, (q, z)| &acc + &q.scale(z));
    let rest = product_except(None);
    // (y/x) Q = y^2 Π, (x/y) Q = x^2 Π
    let y_over_x_q = rest.shift(0, 2);
    let x_over_y_q = rest.shift(2, 0);
    let euler = Derivation::euler();
    let xi1 = euler.times(&h1);
    let xi1 = Derivation { py: &xi1.py + &y_over_x_q, ..xi1 };
    let xi2 = euler.times(&h2);
    let xi2 = Derivation { px: &xi2.px - &x_over_y_q, ..xi2 };
    Ok((xi1, xi2))
}

/// `px_a py_b - py_a px_b`.
pub fn saito_determinant(a: &Derivation, b: &Derivation) -> BiPoly {
    &(a.px() * b.py()) - &(a.py() * b.px())
}

/// Whether the Saito determinant of `a, b` is a nonzero constant times `Q̃`;
/// both derivations must be members.
pub fn saito_check(a: &Derivation, b: &Derivation, d: &PointDivisor) -> Result<bool> {
    if !is_member(a, d)? || !is_member(b, d)? {
        return Err(Error::NonMember);
    }
    Ok(saito_constant(a, b, d).is_some())
}

/// The nonzero constant `c` with `det = c Q̃`, if any.
pub fn saito_constant(a: &Derivation, b: &Derivation, d: &PointDivisor) -> Option<Rational> {
    let det = saito_determinant(a, b);
    if det.is_zero() {
        return None;
    }
    det.proportionality(&defining_polynomial(d)).filter(|c| !c.is_zero())
}
