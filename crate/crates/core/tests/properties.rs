use std::f64::consts::TAU;

use kmspan::degree::loop_winding;
use kmspan::obstruct::{lambda_forcing_check, Forcing};
use kmspan::section::{chord_map, d_sym};
use kmspan::{Chord, ConvexBody, Vector};
use proptest::prelude::*;

fn body_strategy() -> impl Strategy<Value = ConvexBody> {
    prop_oneof![
        (1.0f64..12.0).prop_map(|p| ConvexBody::lp(p, 2).unwrap()),
        (1.0f64..12.0, 0.3f64..3.0, 0.3f64..3.0).prop_map(|(p, a, b)| ConvexBody::lp_with_radii(p, vec![a, b]).unwrap()),
        (0.3f64..3.0, 0.3f64..3.0).prop_map(|(a, b)| ConvexBody::ellipsoid(vec![a, b]).unwrap()),
        Just(ConvexBody::square()),
        Just(ConvexBody::hexagon()),
    ]
}

fn strictly_convex_strategy() -> impl Strategy<Value = ConvexBody> {
    prop_oneof![
        (1.3f64..8.0).prop_map(|p| ConvexBody::lp(p, 2).unwrap()),
        (0.4f64..2.5, 0.4f64..2.5).prop_map(|(a, b)| ConvexBody::ellipsoid(vec![a, b]).unwrap()),
    ]
}

fn vec2() -> impl Strategy<Value = Vector> {
    (-3.0f64..3.0, -3.0f64..3.0).prop_map(|(x, y)| Vector::new2(x, y))
}

fn planar_chord() -> impl Strategy<Value = Chord> {
    (vec2(), vec2()).prop_map(|(a, b)| Chord::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gauge_is_a_norm(k in body_strategy(), a in vec2(), b in vec2(), t in -4.0f64..4.0) {
        let g = |v: &Vector| k.gauge(v).unwrap();
        let scale = 1e-12 * (1.0 + g(&a) + g(&b));
        prop_assert!((g(&(a * t)) - t.abs() * g(&a)).abs() <= 1e-12 * (1.0 + t.abs() * g(&a)));
        prop_assert!((g(&-a) - g(&a)).abs() <= scale);
        prop_assert!(g(&(a + b)) <= g(&a) + g(&b) + scale);
        prop_assert!(g(&a) >= 0.0);
    }

    #[test]
    fn boundary_points_have_unit_gauge(k in body_strategy(), theta in 0.0f64..TAU) {
        let b = k.boundary_at(theta).unwrap();
        prop_assert!((k.gauge(&b).unwrap() - 1.0).abs() < 1e-12);
        prop_assert!(b.cross2(&Vector::polar(theta)).abs() < 1e-9 * b.norm());
    }

    #[test]
    fn support_dominates_the_body(k in body_strategy(), u in vec2(), x in vec2()) {
        prop_assume!(!u.is_zero() && !x.is_zero());
        let (h, arg) = k.support(&u).unwrap();
        let y = x / k.gauge(&x).unwrap();
        prop_assert!(u.dot(&y) <= h + 1e-9 * (1.0 + h.abs()));
        prop_assert!((u.dot(&arg) - h).abs() <= 1e-9 * (1.0 + h.abs()));
    }

    #[test]
    fn d_sym_is_a_metric(a in planar_chord(), b in planar_chord(), c in planar_chord()) {
        prop_assert_eq!(a.d_sym(&b), b.d_sym(&a));
        prop_assert_eq!(a.d_sym(&a), 0.0);
        prop_assert_eq!(a.d_sym(&b), a.swapped().d_sym(&b));
        prop_assert!(a.d_sym(&c) <= a.d_sym(&b) + b.d_sym(&c) + 1e-12);
        prop_assert_eq!(a.d_sym(&b), d_sym((a.p1, a.p2), (b.p1, b.p2)));
    }

    #[test]
    fn chord_map_bisects(k in strictly_convex_strategy(), theta in 0.0f64..TAU, r in 0.01f64..0.99) {
        let p = k.boundary_at(theta).unwrap() * r;
        let c = chord_map(&k, &p).unwrap();
        prop_assert!(c.midpoint().distance(&p) <= 1e-12);
        prop_assert!(c.gauge_defect(&k).unwrap() <= 1e-9);
        prop_assert!(c.p1.cross2(&c.p2) > 0.0);
    }

    #[test]
    fn winding_of_power_maps(k in -5i64..=5, n in 64usize..400, phase in 0.0f64..TAU) {
        let image: Vec<Vector> = (0..n).map(|j| Vector::polar(phase + k as f64 * TAU * j as f64 / n as f64)).collect();
        prop_assert_eq!(loop_winding(&image).unwrap().winding, k);
    }

    #[test]
    fn antipodes_with_equal_weights_are_forced(k in body_strategy(), theta in 0.0f64..TAU, a in 0.0f64..1.0) {
        let s = k.boundary_at(theta).unwrap();
        prop_assert_eq!(lambda_forcing_check(0.5, 0.5, &s, &-s, &k).unwrap().outcome, Forcing::Forced);
        prop_assume!((a - 0.5).abs() > 1e-6);
        let r = lambda_forcing_check(a, 1.0 - a, &s, &-s, &k).unwrap();
        match r.outcome {
            Forcing::Violated { residual } => prop_assert!((residual - (2.0 * a - 1.0).abs()).abs() < 1e-9),
            Forcing::Forced => prop_assert!(false, "unbalanced weights forced"),
        }
    }
}
