//! Invariants that must hold across randomly generated inputs.

use kmspan::body::Polytope;
use kmspan::obstruct::{
    builtin_heuristics, convex_decomposition_refuter, discontinuity_witness, face_containment_check, partial_candidates,
    theta_bound, FaceOutcome,
};
use kmspan::sampling::{self, SeededRng};
use kmspan::{ConvexBody, Vector};
use rand::Rng;

#[test]
fn refuter_never_certifies_a_partial_candidate() {
    for body in [ConvexBody::disk(), ConvexBody::lp(4.0, 2).unwrap(), ConvexBody::hexagon()] {
        for (i, c) in partial_candidates(&body, 50, 9).unwrap().iter().enumerate() {
            let out = convex_decomposition_refuter(&body, &c.components, &c.lambdas).unwrap();
            assert!(out.certificate().is_none(), "{} candidate {i}: {out:?}", body.label());
        }
    }
}

fn symmetric_polytope(rng: &mut SeededRng, dim: usize) -> Polytope {
    loop {
        let k = rng.gen_range(dim..=dim + 5);
        let mut pts = Vec::new();
        for _ in 0..k {
            let u = sampling::random_unit(rng, dim) * rng.gen_range(0.5..1.5);
            pts.push(-u.clone());
            pts.push(u);
        }
        if let Ok(p) = Polytope::from_points(&pts) {
            if p.contains_origin_in_interior() {
                return p;
            }
        }
    }
}

/// A random point in the relative interior of a random facet, written as a
/// convex combination of the facet's vertices with Dirichlet(1) weights.
fn facet_point(rng: &mut SeededRng, p: &Polytope) -> (usize, Vec<Vector>, Vec<f64>) {
    let f = rng.gen_range(0..p.facets().len());
    let comps: Vec<Vector> = p.facets()[f].vertices.iter().map(|&i| p.vertices()[i].clone()).collect();
    let raw: Vec<f64> = comps.iter().map(|_| -rng.gen_range(1e-3f64..1.0).ln()).collect();
    let total: f64 = raw.iter().sum();
    (f, comps, raw.iter().map(|w| w / total).collect())
}

#[test]
fn facet_points_pass_the_face_check() {
    let mut rng = sampling::rng(21);
    let mut checked = 0;
    while checked < 1000 {
        let dim = if checked % 2 == 0 { 2 } else { 3 };
        let p = symmetric_polytope(&mut rng, dim);
        let body = ConvexBody::from_polytope(p.clone()).unwrap();
        for _ in 0..10 {
            let (f, comps, lambdas) = facet_point(&mut rng, &p);
            let v = comps.iter().zip(&lambdas).fold(Vector::zeros(dim), |acc, (c, l)| acc + c.clone() * *l);
            let r = face_containment_check(&body, &v, &comps, &lambdas).unwrap();
            assert_eq!(r.outcome, FaceOutcome::Pass, "{v}");

            let mut moved = comps.clone();
            moved[0] = moved[0].clone() - p.facets()[f].normal.clone() * 1e-3;
            // At a sharp vertex the moved point can leave the body through a
            // neighbouring facet, which is rejected as malformed input.
            if let Ok(r) = face_containment_check(&body, &v, &moved, &lambdas) {
                assert_ne!(r.outcome, FaceOutcome::Pass, "{v}");
            } else {
                assert!(body.gauge(&moved[0]).unwrap() > 1.0);
            }
            checked += 1;
        }
    }
}

#[test]
fn witness_chords_are_bisected_chords() {
    let body = ConvexBody::lp(4.0, 2).unwrap();
    for h in builtin_heuristics(&body) {
        let out = discontinuity_witness(&body, |p| h.chord(p), 0.1, 64).unwrap();
        let w = out.witness().unwrap_or_else(|| panic!("{}: {out:?}", h.name));
        for (p, c) in [(&w.p, &w.chord), (&w.p_prime, &w.chord_prime)] {
            assert!(c.midpoint().distance(p) <= 1e-8, "{}", h.name);
            assert!(c.gauge_defect(&body).unwrap() <= 1e-8, "{}", h.name);
        }
        assert!((w.chord.d_sym(&w.chord_prime) - w.jump).abs() < 1e-12, "{}", h.name);
        assert!(w.jump >= 0.5 && w.distance <= 2.0 * w.grid_spacing + 1e-12, "{}", h.name);
    }
}

#[test]
fn theta_shrinks_as_the_neighbourhood_grows() {
    // Doubling the radius and the ring count gives a superset of midpoints.
    for body in [ConvexBody::lp(4.0, 2).unwrap(), ConvexBody::ellipsoid(vec![2.0, 1.0]).unwrap(), ConvexBody::hexagon()] {
        let mut last = f64::INFINITY;
        for (u, m) in [(0.025, 200), (0.05, 400), (0.1, 800), (0.2, 1600)] {
            let t = theta_bound(&body, u, m, 2000).unwrap().theta;
            assert!(t <= last + 1e-12, "{}: {t} after {last}", body.label());
            last = t;
        }
    }
}
