mod common;

use common::{det3, det_by_permutations, q};
use conespan::algebra::{binomial, Rational};
use conespan::geometry::{
    linear_form_for, moment_points, passes_genericity_screen, plane_pencil_form, random_plane,
    random_points, PlaneSpan, PointConfiguration, ProjectivePoint,
};
use conespan::spans::vanishing_dimension;
use conespan::Error;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn unit(n: usize, k: usize) -> Vec<Rational> {
    (0..=n).map(|i| q(i64::from(i == k))).collect()
}

#[test]
fn plane_form_matches_sarrus() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..25 {
        let plane = random_plane(&mut rng, 2, 30).unwrap();
        let p = random_plane(&mut rng, 2, 30).unwrap().spanning_points()[0].clone();
        let l = linear_form_for(&p, &plane).unwrap();
        let qpt = plane.spanning_points()[0].coords();
        for k in 0..3 {
            assert_eq!(l.coeffs()[k], det3(&unit(2, k), p.coords(), qpt));
        }
    }
}

#[test]
fn form_in_p3_matches_leibniz() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..10 {
        let plane = random_plane(&mut rng, 3, 20).unwrap();
        let p = random_points(1, 3, 99, 20).unwrap().point(0).clone();
        let l = linear_form_for(&p, &plane).unwrap();
        let sp = plane.spanning_points();
        for k in 0..4 {
            let e = unit(3, k);
            let cols = [e.as_slice(), p.coords(), sp[0].coords(), sp[1].coords()];
            assert_eq!(l.coeffs()[k], det_by_permutations(&cols));
        }
    }
}

#[test]
fn form_vanishes_on_point_and_plane() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in 2..=4 {
        let s = random_points(3, n, 10 + n as u64, 50).unwrap();
        let plane = random_plane(&mut rng, n, 50).unwrap();
        for p in s.points() {
            let l = linear_form_for(p, &plane).unwrap();
            assert!(!l.is_degenerate());
            assert!(l.evaluate(p.coords()).is_zero());
            for qpt in plane.spanning_points() {
                assert!(l.evaluate(qpt.coords()).is_zero());
            }
        }
    }
}

#[test]
fn derivative_pairing_is_antisymmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in 2..=3 {
        let s = random_points(4, n, 3, 40).unwrap();
        let plane = random_plane(&mut rng, n, 40).unwrap();
        let forms: Vec<_> = s
            .points()
            .iter()
            .map(|p| linear_form_for(p, &plane).unwrap())
            .collect();
        for i in 0..4 {
            for j in 0..4 {
                let a = forms[j].derivative_along(s.point(i).coords());
                let b = forms[i].derivative_along(s.point(j).coords());
                assert_eq!(a, -b);
            }
        }
    }
}

#[test]
fn rescaling_scales_the_form() {
    let p = ProjectivePoint::from_i64(&[1, 2, 4]).unwrap();
    let plane = PlaneSpan::from_i64(2, &[vec![3, -1, 5]]).unwrap();
    let l = linear_form_for(&p, &plane).unwrap();
    let c = Rational::new(7.into(), 3.into());
    let lp = linear_form_for(&p.scaled(&c).unwrap(), &plane).unwrap();
    let lq = linear_form_for(&p, &plane.with_rescaled_point(0, &q(-2)).unwrap()).unwrap();
    for k in 0..3 {
        assert_eq!(lp.coeffs()[k], &l.coeffs()[k] * &c);
        assert_eq!(lq.coeffs()[k], &l.coeffs()[k] * q(-2));
    }
}

#[test]
fn pencil_form_specializes_to_linear_form() {
    let p = ProjectivePoint::from_i64(&[2, -1, 3]).unwrap();
    let pencil = plane_pencil_form(&p, 2).unwrap();
    let y = [q(4), q(1), q(-5)];
    let plane = PlaneSpan::new(2, vec![ProjectivePoint::new(y.to_vec()).unwrap()]).unwrap();
    let l = linear_form_for(&p, &plane).unwrap();
    let x = [q(3), q(7), q(-2)];
    assert_eq!(pencil.evaluate(&[&x, &y]).unwrap(), l.evaluate(&x));
}

#[test]
fn degenerate_inputs() {
    assert!(matches!(
        ProjectivePoint::from_i64(&[0, 0, 0]),
        Err(Error::InvalidPoint(_))
    ));
    assert!(PointConfiguration::from_i64(2, &[vec![1, 2, 3], vec![2, 4, 6]]).is_err());
    assert!(PointConfiguration::from_i64(2, &[vec![1, 2]]).is_err());
    assert!(matches!(
        PlaneSpan::from_i64(3, &[vec![1, 0, 0, 0], vec![2, 0, 0, 0]]),
        Err(Error::InvalidPlane(_))
    ));
}

#[test]
fn moment_points_pass_screen() {
    for n in 2..=4 {
        for d in 1..=12 {
            let s = moment_points(d, n).unwrap();
            assert!(passes_genericity_screen(&s), "n={n} d={d}");
        }
    }
}

#[test]
fn collinear_points_still_impose_independent_conditions() {
    // d distinct points always impose independent conditions on degree-d forms
    let s = PointConfiguration::from_i64(
        2,
        &[
            vec![1, 0, 0],
            vec![1, 1, 0],
            vec![1, 2, 0],
            vec![1, 3, 0],
            vec![1, 4, 0],
        ],
    )
    .unwrap();
    assert!(passes_genericity_screen(&s));
    assert_eq!(vanishing_dimension(&s, 5), binomial(7, 2) - 5);
    // but not on forms of lower degree
    assert_eq!(vanishing_dimension(&s, 3), binomial(5, 2) - 4);
}

#[test]
fn configuration_json_round_trip() {
    let s = random_points(4, 3, 12, 100).unwrap();
    let text = s.to_json().unwrap();
    assert!(text.starts_with("{\"n\":3,\"points\":[["));
    assert_eq!(PointConfiguration::from_json(&text).unwrap(), s);
}

#[test]
fn random_points_are_reproducible() {
    assert_eq!(
        random_points(6, 2, 42, 1000).unwrap(),
        random_points(6, 2, 42, 1000).unwrap()
    );
    assert_ne!(
        random_points(6, 2, 42, 1000).unwrap(),
        random_points(6, 2, 43, 1000).unwrap()
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_configurations_have_expected_vanishing_dimension(
        seed in any::<u64>(), n in 2usize..4, d in 1usize..8
    ) {
        let s = random_points(d, n, seed, 1000).unwrap();
        prop_assert_eq!(vanishing_dimension(&s, d), binomial(d + n, n) - d);
    }

    #[test]
    fn form_is_well_defined_up_to_scale(
        seed in any::<u64>(), num in 1i64..20, den in 1i64..20
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let plane = random_plane(&mut rng, 3, 25).unwrap();
        let p = random_points(1, 3, seed, 25).unwrap().point(0).clone();
        let c = Rational::new(num.into(), den.into());
        let l = linear_form_for(&p, &plane).unwrap();
        let scaled = linear_form_for(&p, &plane.with_rescaled_point(1, &c).unwrap()).unwrap();
        for k in 0..4 {
            prop_assert_eq!(&scaled.coeffs()[k], &(&l.coeffs()[k] * &c));
        }
    }
}
