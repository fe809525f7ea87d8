mod common;

use common::{
    linear_terms, naive_multiply, naive_rank, permanent_by_enumeration, permutations, q,
    to_term_map,
};
use conespan::algebra::{binomial, HomogPoly, Rational, VarGroup};
use conespan::geometry::{
    linear_form_for, moment_points, random_plane, random_points, PlaneSpan, PointConfiguration,
};
use conespan::linalg::{random_prime, rank_exact};
use conespan::spans::{
    apply_directions, apply_point_functional, build_m, coefficient_span_dimension,
    coefficient_spanning_set, cone_polynomial, cone_span_dimension_sampled, conjectured_dimension,
    expected_vanishing_dimension, lemma2_witness, m_matrix_dimension, pairing_matrix,
    proven_upper_bound, restriction_rank_check, sample_cone, vanishes_on, FieldMode, SpanMethod,
    WitnessMethod, DEFAULT_SATURATION,
};
use conespan::Error;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn cone_polynomial_matches_naive_product() {
    let s = moment_points(3, 2).unwrap();
    let plane = PlaneSpan::from_i64(2, &[vec![1, 0, 0]]).unwrap();
    let cone = cone_polynomial(&s, &plane).unwrap();
    // det[x, P, (1,0,0)] = x2*P3 - x3*P2 for each moment point
    let mut expect = linear_terms(&[q(0), q(1), q(-1)]);
    expect = naive_multiply(&expect, &linear_terms(&[q(0), q(4), q(-2)]));
    expect = naive_multiply(&expect, &linear_terms(&[q(0), q(9), q(-3)]));
    assert_eq!(to_term_map(&cone.poly), expect);
    assert_eq!(cone.forms.len(), 3);
}

#[test]
fn plane_through_a_point_is_degenerate() {
    let s = moment_points(3, 2).unwrap();
    let plane = PlaneSpan::from_i64(2, &[vec![1, 2, 4]]).unwrap();
    assert!(matches!(
        cone_polynomial(&s, &plane),
        Err(Error::DegenerateSample { index: 1 })
    ));
}

#[test]
fn functional_of_square_along_repeated_axis() {
    let f = HomogPoly::from_terms(
        vec![VarGroup::new("x", 3)],
        vec![2],
        &[(vec![vec![2, 0, 0]], q(1))],
    )
    .unwrap();
    let e1 = [q(1), q(0), q(0)];
    assert_eq!(apply_directions(&[&e1, &e1], &f).unwrap(), q(2));
}

#[test]
fn functional_equals_pairing_permanent() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for k in 0..20 {
        let n = 2 + k % 2;
        let d = 2 + k % 6;
        let s = random_points(d, n, 100 + k as u64, 30).unwrap();
        let cone = sample_cone(&s, &mut rng, 30).unwrap();
        let a = pairing_matrix(&s, &cone.forms).unwrap();
        let value = apply_point_functional(&s, &cone.poly).unwrap();
        assert_eq!(value, permanent_by_enumeration(&a.to_rows()), "n={n} d={d}");
    }
}

#[test]
fn functional_vanishes_for_odd_degree() {
    for (n, d) in [(2, 3), (2, 5), (3, 3), (2, 7), (4, 3)] {
        let s = random_points(d, n, 9, 1000).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(d as u64);
        for _ in 0..10 {
            let cone = sample_cone(&s, &mut rng, 1000).unwrap();
            assert!(apply_point_functional(&s, &cone.poly).unwrap().is_zero());
        }
    }
}

#[test]
fn functional_detects_even_degree() {
    for d in [2, 4, 6] {
        let s = random_points(d, 2, 1, 1000).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let hit = (0..20).any(|_| {
            let cone = sample_cone(&s, &mut rng, 1000).unwrap();
            !apply_point_functional(&s, &cone.poly).unwrap().is_zero()
        });
        assert!(hit, "d={d}");
    }
}

#[test]
fn functional_is_multilinear_in_representatives() {
    let s = random_points(4, 2, 5, 50).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let cone = sample_cone(&s, &mut rng, 50).unwrap();
    let base = apply_point_functional(&s, &cone.poly).unwrap();
    let c = Rational::new(5.into(), 2.into());
    let t = s.with_rescaled_point(2, &c).unwrap();
    // rescaling a representative rescales both its form and its direction
    let cone_t = cone_polynomial(&t, &cone.plane).unwrap();
    assert_eq!(
        apply_point_functional(&t, &cone_t.poly).unwrap(),
        base * &c * &c
    );
}

#[test]
fn m_matrix_symmetry_type() {
    for d in 1..=8 {
        let s = random_points(d, 2, d as u64, 1000).unwrap();
        let m = build_m(&s).unwrap();
        let size = binomial(d + 2, 2);
        assert_eq!((m.rows(), m.cols()), (size, size));
        let t = m.transpose();
        if d % 2 == 0 {
            assert_eq!(t, m, "d={d}");
        } else {
            assert_eq!(t, m.neg(), "d={d}");
            assert_eq!(rank_exact(&m) % 2, 0);
        }
    }
}

#[test]
fn m_rank_matches_sampling() {
    for d in 1..=8 {
        let s = random_points(d, 2, 70 + d as u64, 1000).unwrap();
        let m = m_matrix_dimension(&s, FieldMode::Exact).unwrap();
        let sampled = cone_span_dimension_sampled(&s, d, 0, DEFAULT_SATURATION).unwrap();
        assert_eq!(m.dimension, sampled.dimension, "d={d}");
        assert_eq!(m.dimension, conjectured_dimension(d), "d={d}");
        assert!(m.certified);
    }
}

#[test]
fn m_rank_matches_oracle_rank() {
    let s = random_points(4, 2, 8, 100).unwrap();
    let m = build_m(&s).unwrap();
    assert_eq!(rank_exact(&m), naive_rank(m.to_rows()));
}

#[test]
fn m_matrix_needs_the_plane() {
    let s = random_points(3, 3, 0, 100).unwrap();
    assert!(matches!(build_m(&s), Err(Error::UnsupportedDimension(3))));
}

#[test]
fn coefficient_set_vanishes_on_points() {
    for (n, d) in [(2, 3), (2, 4), (3, 2), (3, 3)] {
        let s = random_points(d, n, 4, 100).unwrap();
        for f in coefficient_spanning_set(&s, d).unwrap() {
            assert!(vanishes_on(&s, &f).unwrap());
        }
    }
}

#[test]
fn coefficient_extraction_in_p3() {
    let s = random_points(3, 3, 2, 1000).unwrap();
    let coeff = coefficient_span_dimension(&s, FieldMode::Exact).unwrap();
    let sampled = cone_span_dimension_sampled(&s, 3, 0, DEFAULT_SATURATION).unwrap();
    assert_eq!(coeff.method, SpanMethod::CoefficientExtraction);
    assert_eq!(coeff.dimension, sampled.dimension);
    assert_eq!(sampled.dimension, expected_vanishing_dimension(3, 3) - 1);
    assert!(sampled.certified);
    assert!(coeff.expected.is_none());
}

#[test]
fn coefficient_extraction_matches_m_in_plane() {
    for d in 2..=6 {
        let s = random_points(d, 2, 50 + d as u64, 1000).unwrap();
        let c = coefficient_span_dimension(&s, FieldMode::Exact).unwrap();
        let m = m_matrix_dimension(&s, FieldMode::Exact).unwrap();
        assert_eq!(c.dimension, m.dimension);
        assert!(c.certified);
    }
}

/// `sum over permutations` of the product of Vandermonde factors, written
/// out with explicit 3x3 determinants.
fn witness_by_permutations(d: usize) -> Rational {
    let phi = |i: usize| [q(1), q(i as i64), q((i * i) as i64)];
    let pts: Vec<_> = (1..=d).map(phi).collect();
    let b = |i: usize, j: usize| common::det3(&pts[i], &pts[j], &pts[(j + 1) % d]);
    permutations(d)
        .iter()
        .map(|s| (0..d).fold(Rational::one(), |acc, j| acc * b(s[j], j)))
        .sum()
}

#[test]
fn witness_methods_agree() {
    assert_eq!(witness_by_permutations(3), q(8));
    for d in 3..=7 {
        let values: Vec<Rational> = WitnessMethod::ALL
            .iter()
            .map(|&m| lemma2_witness(d, 2, m).unwrap())
            .collect();
        assert!(values.windows(2).all(|w| w[0] == w[1]), "d={d}: {values:?}");
        assert!(values[0].is_positive());
        if d <= 6 {
            assert_eq!(values[0], witness_by_permutations(d));
        }
    }
    for d in [3, 4, 5] {
        assert_eq!(
            lemma2_witness(d, 3, WitnessMethod::Symbolic).unwrap(),
            lemma2_witness(d, 2, WitnessMethod::Permanent).unwrap()
        );
    }
}

#[test]
fn witness_stays_positive() {
    for d in 8..=9 {
        let p = lemma2_witness(d, 2, WitnessMethod::Permanent).unwrap();
        assert!(p.is_positive());
        assert_eq!(p, lemma2_witness(d, 2, WitnessMethod::ClosedForm).unwrap());
    }
    assert!(matches!(
        lemma2_witness(10, 2, WitnessMethod::ClosedForm),
        Err(Error::Size { .. })
    ));
    assert!(matches!(
        lemma2_witness(2, 2, WitnessMethod::Symbolic),
        Err(Error::Domain(_))
    ));
}

#[test]
fn restriction_bounds() {
    let s = random_points(3, 2, 0, 1000).unwrap();
    assert_eq!(restriction_rank_check(&s, 3).unwrap(), 6);
    let sampled = cone_span_dimension_sampled(&s, 3, 0, DEFAULT_SATURATION).unwrap();
    assert_eq!(sampled.dimension, 6);

    let s = random_points(5, 2, 0, 1000).unwrap();
    assert_eq!(restriction_rank_check(&s, 5).unwrap(), 15);
    let sampled = cone_span_dimension_sampled(&s, 5, 0, DEFAULT_SATURATION).unwrap();
    assert_eq!(sampled.dimension, 14);

    let s = random_points(3, 3, 0, 1000).unwrap();
    assert_eq!(restriction_rank_check(&s, 3).unwrap(), 16);
}

#[test]
fn sampled_small_cases() {
    for (d, expect) in [(1, 2), (2, 4), (3, 6), (4, 11), (5, 14)] {
        let s = random_points(d, 2, 3, 1000).unwrap();
        let r = cone_span_dimension_sampled(&s, d, 1, DEFAULT_SATURATION).unwrap();
        assert_eq!(r.dimension, expect, "d={d}");
        assert_eq!(r.expected, Some(expect));
        assert!(r.rank_trace.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(r.rank_trace.len(), r.samples_used);
        assert!(r.dimension <= r.upper_bound());
    }
}

#[test]
fn sampled_on_the_moment_curve() {
    // these points lie on a conic, which the small degrees do not notice
    for (d, expect) in [(2, 4), (3, 6), (5, 14)] {
        let s = moment_points(d, 2).unwrap();
        let r = cone_span_dimension_sampled(&s, d, 0, DEFAULT_SATURATION).unwrap();
        assert_eq!(r.dimension, expect);
    }
}

#[test]
fn modular_sampling_agrees() {
    let s = random_points(6, 2, 3, 1000).unwrap();
    let exact = cone_span_dimension_sampled(&s, 6, 0, DEFAULT_SATURATION).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let opts = conespan::spans::SamplingOptions {
        field: FieldMode::Modular([random_prime(&mut rng, 61), random_prime(&mut rng, 61)]),
        ..Default::default()
    };
    let modular = conespan::spans::cone_span_dimension_sampled_with(&s, 6, &opts).unwrap();
    assert_eq!(modular.dimension, exact.dimension);
    assert!(!modular.certified);
}

#[test]
fn bounds_table() {
    assert_eq!(proven_upper_bound(2, 5), 14);
    assert_eq!(proven_upper_bound(2, 7), 28);
    assert_eq!(proven_upper_bound(3, 5), 50);
    assert_eq!(conjectured_dimension(7), 28);
    assert_eq!(conjectured_dimension(9), 44);
    assert_eq!(conjectured_dimension(4), 11);
    assert_eq!(conjectured_dimension(1), 2);
}

#[test]
fn degree_mismatch_is_rejected() {
    let s = random_points(3, 2, 0, 100).unwrap();
    assert!(matches!(
        cone_span_dimension_sampled(&s, 4, 0, 5),
        Err(Error::Degree(_))
    ));
}

fn point_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6)
        .prop_flat_map(|d| proptest::collection::vec(proptest::collection::vec(-20i64..=20, 3), d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn cone_polynomials_vanish_on_their_points(rows in point_matrix(), seed in any::<u64>()) {
        let Ok(s) = PointConfiguration::from_i64(2, &rows) else { return Ok(()); };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Ok(cone) = sample_cone(&s, &mut rng, 50) else { return Ok(()); };
        prop_assert!(vanishes_on(&s, &cone.poly).unwrap());
        let lhs = apply_point_functional(&s, &cone.poly).unwrap();
        let a = pairing_matrix(&s, &cone.forms).unwrap();
        prop_assert_eq!(lhs.clone(), permanent_by_enumeration(&a.to_rows()));
        if s.d() % 2 == 1 {
            prop_assert!(lhs.is_zero());
        }
    }

    #[test]
    fn forms_vanish_on_plane(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_points(3, 3, seed, 40).unwrap();
        let plane = random_plane(&mut rng, 3, 40).unwrap();
        if let Ok(cone) = cone_polynomial(&s, &plane) {
            for (p, l) in s.points().iter().zip(&cone.forms) {
                prop_assert_eq!(l, &linear_form_for(p, &plane).unwrap());
            }
            for qpt in plane.spanning_points() {
                prop_assert!(cone.poly.evaluate_at(qpt.coords()).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn span_is_scale_invariant(seed in 0u64..1000, num in 1i64..9, den in 1i64..9) {
        let s = random_points(4, 2, seed, 100).unwrap();
        let c = Rational::new(num.into(), den.into());
        let t = s.with_rescaled_point(1, &c).unwrap();
        prop_assert_eq!(
            m_matrix_dimension(&s, FieldMode::Exact).unwrap().dimension,
            m_matrix_dimension(&t, FieldMode::Exact).unwrap().dimension
        );
    }
}
