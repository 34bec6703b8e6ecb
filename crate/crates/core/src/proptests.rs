//! Randomized invariants across modules.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;

use crate::algebra::matrix::{det_cofactor, det_fraction_free, mat_vec, nullspace, rank, RingMatrix};
use crate::algebra::multipoly::MultiPoly;
use crate::algebra::rational::{rat, ratio, Rational};
use crate::algebra::wronskian::{wronskian_closed_form, wronskian_symbolic};
use crate::divisor::{
    is_member, is_member_of_forms, saito_check, theta1, theta2, xi_basis, Derivation, MultiplicityVector,
    PointDivisor,
};
use crate::exponents::{compute_exponents, degree_kernel};
use crate::leading_term::{
    identity_partition_term, leading_coefficient_check, overlap, sigma, sigma_closed_form,
};
use crate::matrix_m::{det_d, is_degenerate};
use crate::schur::{is_symmetric, schur_rectangular, RectPartition};
use crate::terao::{restriction_multiplicities, LineArrangement};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

fn mv(v: &[u32]) -> MultiplicityVector {
    MultiplicityVector::new(v.to_vec()).unwrap()
}

/// Strictly decreasing exponents, at most five, largest at most 12.
fn decreasing_tuple() -> impl Strategy<Value = Vec<u32>> {
    proptest::sample::subsequence((0..=12u32).collect::<Vec<_>>(), 1..=5).prop_map(|mut v| {
        v.reverse();
        v
    })
}

fn small_poly(nvars: usize) -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec((proptest::collection::vec(0..3u32, nvars), -4..=4i64), 0..5).prop_map(
        move |terms| MultiPoly::from_terms(nvars, terms.into_iter().map(|(m, c)| (m, BigInt::from(c)))),
    )
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6..=6i64, 1..=3i64).prop_map(|(n, d)| ratio(n, d))
}

/// Distinct nonzero rationals.
fn distinct_z(count: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::btree_set(small_rational().prop_filter("nonzero", |z| !z.is_zero()), count)
        .prop_map(|s| s.into_iter().collect())
        .prop_shuffle()
}

/// A non-increasing multiplicity vector with `n` entries.
fn mult(n: std::ops::RangeInclusive<usize>, max: u32) -> impl Strategy<Value = Vec<u32>> {
    n.prop_flat_map(move |n| proptest::collection::vec(1..=max, n)).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    })
}

fn divisor(n: std::ops::RangeInclusive<usize>, max: u32) -> impl Strategy<Value = PointDivisor> {
    mult(n, max).prop_flat_map(|m| {
        let k = m.len() - 2;
        distinct_z(k).prop_map(move |z| PointDivisor::from_normalized(mv(&m), z).unwrap())
    })
}

fn invertible() -> impl Strategy<Value = [Rational; 4]> {
    [small_rational(), small_rational(), small_rational(), small_rational()]
        .prop_filter("invertible", |[a, b, c, d]| !(a * d - b * c).is_zero())
}

fn transform_forms(forms: &[(Rational, Rational, u32)], g: &[Rational; 4]) -> Vec<(Rational, Rational, u32)> {
    let [a, b, c, d] = g;
    forms.iter().map(|(u, v, m)| (u * a + v * c, u * b + v * d, *m)).collect()
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn wronskian_matches_closed_form(lambda in decreasing_tuple()) {
        let (degree, coeff) = wronskian_closed_form(&lambda).unwrap();
        let sym = wronskian_symbolic(&lambda).unwrap();
        prop_assert_eq!(sym.as_monomial(), Some((degree, coeff)));
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn bareiss_matches_cofactor(k in 1..=4usize, entries in proptest::collection::vec(small_poly(2), 16)) {
        let m = RingMatrix::new(k, k, entries[..k * k].to_vec());
        prop_assert_eq!(det_fraction_free(&m, 2).unwrap(), det_cofactor(&m, 2));
    }

    #[test]
    fn exact_divide_recovers_factor(a in small_poly(3), b in small_poly(3)) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_divide(&b).unwrap(), a);
    }

    #[test]
    fn nullspace_is_kernel(
        rows in 1..=5usize,
        cols in 1..=6usize,
        entries in proptest::collection::vec(-3..=3i64, 36),
    ) {
        let m = RingMatrix::new(rows, cols, entries[..rows * cols].iter().map(|&v| rat(v)).collect());
        let kernel = nullspace(&m);
        prop_assert_eq!(rank(&m) + kernel.len(), cols);
        for v in &kernel {
            prop_assert!(mat_vec(&m, v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn theta_constructions_are_members(d in divisor(2..=6, 4)) {
        prop_assert!(is_member(&theta1(&d), &d).unwrap());
        prop_assert!(is_member(&theta2(&d), &d).unwrap());
    }

    #[test]
    fn xi_basis_is_saito_basis(n in 2..=6usize, z in distinct_z(4)) {
        let d = PointDivisor::from_normalized(mv(&vec![2; n]), z[..n - 2].to_vec()).unwrap();
        let (a, b) = xi_basis(&d).unwrap();
        prop_assert_eq!(a.degree() + b.degree(), d.mult().total() as usize);
        prop_assert!(saito_check(&a, &b, &d).unwrap());
    }

    #[test]
    fn membership_is_coordinate_free(d in divisor(2..=5, 3), g in invertible(), pick in any::<prop::sample::Index>()) {
        let deg = d.mult().total() as usize / 2;
        let mut candidates: Vec<Derivation> = degree_kernel(&d, deg);
        candidates.push(theta2(&d));
        candidates.push(Derivation::euler());
        candidates.push(Derivation::from_coefficients(vec![rat(1), rat(2), rat(0)], vec![rat(0), rat(-1), rat(3)]).unwrap());
        let theta = pick.get(&candidates);
        let forms = d.forms();
        let moved = transform_forms(&forms, &g);
        prop_assert_eq!(
            is_member_of_forms(theta, &forms).unwrap(),
            is_member_of_forms(&theta.pullback(&g).unwrap(), &moved).unwrap()
        );
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn exponents_balanced_and_certified(d in divisor(2..=6, 4)) {
        let pair = compute_exponents(&d).unwrap();
        let total = d.mult().total();
        prop_assert_eq!(pair.e1 + pair.e2, total);
        prop_assert!(pair.e1 <= total / 2);
        let (a, b) = &pair.basis;
        prop_assert_eq!(a.degree() + b.degree(), total as usize);
        prop_assert!(saito_check(a, b, &d).unwrap());
    }

    #[test]
    fn det_is_homogeneous(m in mult(3..=5, 3)) {
        let m = mv(&m);
        if let Ok(d) = det_d(&m) {
            prop_assert!(d.is_homogeneous());
        }
    }

    #[test]
    fn opposite_points_degenerate(num in 1..=50i64, den in 1..=7i64, neg in any::<bool>()) {
        let c = if neg { ratio(-num, den) } else { ratio(num, den) };
        let d = PointDivisor::from_normalized(mv(&[3, 3, 1, 1]), vec![c.clone(), -c]).unwrap();
        prop_assert!(is_degenerate(&d).unwrap());
        prop_assert!(compute_exponents(&d).unwrap().e1 < 4);
    }

    #[test]
    fn restriction_sums_to_lines_minus_one(n in 3..=10usize, seed in any::<u64>()) {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let a = LineArrangement::random(&mut rng, n, 3);
        for line in 0..a.len() {
            let r = restriction_multiplicities(&a, line).unwrap();
            prop_assert_eq!(r.iter().sum::<u32>() as usize, a.len() - 1);
        }
    }

    #[test]
    fn schur_quotient_is_exact_and_symmetric(base in 0..=3u32, nvars in 1..=4usize, height in 1..=4u32) {
        prop_assume!(height as usize <= nvars);
        let s = schur_rectangular(&RectPartition::new(base, height, nvars).unwrap()).unwrap();
        prop_assert!(!s.is_zero());
        prop_assert!(is_symmetric(&s));
    }
}

#[test]
fn not_degenerate_at_one_two() {
    let d = PointDivisor::from_normalized(mv(&[3, 3, 1, 1]), vec![rat(1), rat(2)]).unwrap();
    assert!(!is_degenerate(&d).unwrap());
}

#[test]
fn sigma_recursions() {
    for u in 4..=8u32 {
        let sign = if u % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let lhs = sigma(2, u).unwrap();
        let rhs = sigma(2, u - 2).unwrap() + &sign * 2 * sigma(2, u - 1).unwrap();
        assert_eq!(lhs, rhs, "u={u}");
        for m_r in 3..=5u32 {
            let rhs = sigma(2, u - 2).unwrap() + &sign * m_r * sigma(2, u - 1).unwrap();
            assert_eq!(sigma(m_r, u).unwrap(), rhs, "m_r={m_r} u={u}");
        }
    }
}

#[test]
fn sigma_closed_form_and_nonvanishing() {
    for m_r in 2..=5 {
        for u in 2..=8 {
            let v = sigma(m_r, u).unwrap();
            assert_eq!(v, sigma_closed_form(m_r, u).unwrap());
            assert!(!v.is_zero());
        }
    }
}

#[test]
fn no_overlap_leading_term_is_block_product() {
    let mut checked = 0;
    for m in [
        vec![3, 3, 2, 2],
        vec![4, 3, 2, 2, 1],
        vec![4, 4, 2, 2],
        vec![5, 4, 3, 2],
        vec![4, 3, 3, 2],
        vec![5, 5, 2, 2, 2],
        vec![4, 4, 2, 1, 1],
    ] {
        let m = mv(&m);
        if overlap(&m).unwrap().s != 0 {
            continue;
        }
        let d = det_d(&m).unwrap();
        let (mono, coeff) = d.leading_term().unwrap();
        assert_eq!((mono.clone(), coeff.clone()), identity_partition_term(&m).unwrap(), "{m}");
        checked += 1;
    }
    assert!(checked >= 4);
}

#[test]
fn leading_check_on_mixed_blocks() {
    // (3,3,2,2) decides which of the two block multiplicities comes first.
    for m in [[3, 3, 2, 2], [2, 2, 2, 2], [3, 3, 3, 3], [4, 3, 3, 2]] {
        assert!(leading_coefficient_check(&mv(&m)).unwrap(), "{m:?}");
    }
}
