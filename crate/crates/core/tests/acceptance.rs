//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::time::Instant;

use kmspan::body::{hausdorff_distance, polytope_approx, radial_transport, HausdorffTarget};
use kmspan::decompose::{
    ball_grid, decompose_four_extreme, decompose_three, interval_grid, shell_convex_decomposition, three_term_params,
    two_nonvanishing_average, SampledMap,
};
use kmspan::degree::{fix_extreme_degree_check, loop_winding, random_polygon, vertex_fixing_map, EdgeMotion, SphereMapSamples};
use kmspan::obstruct::{
    adversarial_candidates, builtin_heuristics, convex_decomposition_refuter, discontinuity_witness, lambda_forcing_check,
    line_angle, theta_bound, Forcing, DEFAULT_MIDPOINTS, DEFAULT_THETA_RESOLUTION, SHRINK_ROUNDS,
};
use kmspan::sampling::{self, SeededRng};
use kmspan::section::bisected_chords_2d;
use kmspan::{ConvexBody, Vector};
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn three_term() -> Outcome {
    let bodies = [
        ("l2 disk", ConvexBody::disk()),
        ("l4 ball", ConvexBody::lp(4.0, 2).unwrap()),
        ("ellipse(2,1)", ConvexBody::ellipsoid(vec![2.0, 1.0]).unwrap()),
        ("hexagon", ConvexBody::hexagon()),
        ("l2 ball in R3", ConvexBody::ball3()),
    ];
    let mut parts = Vec::new();
    for (name, body) in bodies {
        let start = Instant::now();
        let params = three_term_params(&body, 0).map_err(|e| format!("{name}: {e}"))?;
        let target = SampledMap::identity(ball_grid(&body, 100).unwrap()).unwrap();
        let cert = decompose_three(&body, &params, &target).map_err(|e| format!("{name}: {e}"))?;
        let secs = start.elapsed().as_secs_f64();
        let e = &cert.errors;
        ensure(target.len() >= 10_000, || format!("{name}: only {} samples", target.len()))?;
        ensure(cert.components.len() == 3, || format!("{name}: {} components", cert.components.len()))?;
        ensure(e.sup_reconstruction_error <= 1e-7, || format!("{name}: reconstruction {:e}", e.sup_reconstruction_error))?;
        ensure(e.sphere_error <= 1e-8, || format!("{name}: sphere error {:e}", e.sphere_error))?;
        ensure(secs < 60.0, || format!("{name}: {secs:.1} s"))?;
        parts.push(format!("{name} rec {:.1e} sph {:.1e} {secs:.2}s", e.sup_reconstruction_error, e.sphere_error));
    }
    Ok(parts.join("; "))
}

/// Independent chord scan: gauge written out by hand, boundary by radial
/// scaling, roots by linear interpolation on 10⁵ samples.
struct Oracle {
    p: f64,
    radii: [f64; 2],
    ellipse: bool,
}

impl Oracle {
    fn gauge(&self, x: f64, y: f64) -> f64 {
        let (a, b) = (x / self.radii[0], y / self.radii[1]);
        if self.ellipse {
            (a * a + b * b).sqrt()
        } else {
            (a.abs().powf(self.p) + b.abs().powf(self.p)).powf(1.0 / self.p)
        }
    }

    fn boundary(&self, t: f64) -> (f64, f64) {
        let g = self.gauge(t.cos(), t.sin());
        (t.cos() / g, t.sin() / g)
    }

    /// Chords as endpoint pairs, each found once (at its counter-clockwise first endpoint).
    fn chords(&self, v: (f64, f64), n: usize) -> Vec<[(f64, f64); 2]> {
        let f = |t: f64| {
            let (bx, by) = self.boundary(t);
            self.gauge(2.0 * v.0 - bx, 2.0 * v.1 - by) - 1.0
        };
        let mut out = Vec::new();
        let mut prev = f(0.0);
        for i in 1..=n {
            let t1 = TAU * i as f64 / n as f64;
            let cur = f(t1);
            if (prev < 0.0) != (cur < 0.0) {
                let t0 = TAU * (i - 1) as f64 / n as f64;
                let t = t0 + (t1 - t0) * prev / (prev - cur);
                let b = self.boundary(t);
                if b.0 * v.1 - b.1 * v.0 >= 0.0 {
                    out.push([b, (2.0 * v.0 - b.0, 2.0 * v.1 - b.1)]);
                }
            }
            prev = cur;
        }
        out
    }
}

fn chord_oracle() -> Outcome {
    let mut rng = sampling::rng(2024);
    let mut worst: f64 = 0.0;
    let mut total = 0;
    for b in 0..20 {
        let radii = [rng.gen_range(0.5..2.0), rng.gen_range(0.5..2.0)];
        let (body, oracle) = if b % 4 == 3 {
            (ConvexBody::ellipsoid(radii.to_vec()).unwrap(), Oracle { p: 2.0, radii, ellipse: true })
        } else {
            let p = rng.gen_range(1.5..8.0);
            (ConvexBody::lp_with_radii(p, radii.to_vec()).unwrap(), Oracle { p, radii, ellipse: false })
        };
        for _ in 0..50 {
            let v = sampling::random_in_unit_ball(&mut rng, 2) * 0.95;
            let g = oracle.gauge(v.x(), v.y());
            if g < 1e-3 {
                continue;
            }
            let v = v * (rng.gen_range(0.02..0.95) / g);
            let lib = bisected_chords_2d(&body, &v, 10_000).map_err(|e| format!("body {b}: {e}"))?;
            let brute = oracle.chords((v.x(), v.y()), 100_000);
            ensure(lib.len() == brute.len(), || format!("body {b} at {v}: {} vs {} chords", lib.len(), brute.len()))?;
            for c in &brute {
                let c = kmspan::Chord::new(Vector::new2(c[0].0, c[0].1), Vector::new2(c[1].0, c[1].1));
                let d = lib.iter().map(|l| l.d_sym(&c)).fold(f64::INFINITY, f64::min);
                worst = worst.max(d);
            }
            total += 1;
        }
    }
    ensure(worst <= 1e-6, || format!("max d_sym {worst:e}"))?;
    Ok(format!("{total} midpoints on 20 bodies, max d_sym {worst:.1e}"))
}

fn theta() -> Outcome {
    let disk = ConvexBody::disk();
    let t = theta_bound(&disk, 0.1, DEFAULT_MIDPOINTS, DEFAULT_THETA_RESOLUTION).map_err(|e| e.to_string())?;
    ensure((t.theta - FRAC_PI_2).abs() <= 1e-6, || format!("disk theta {}", t.theta))?;
    let l4 = ConvexBody::lp(4.0, 2).unwrap();
    let a = theta_bound(&l4, 0.05, DEFAULT_MIDPOINTS, DEFAULT_THETA_RESOLUTION).map_err(|e| e.to_string())?;
    let b = theta_bound(&l4, 0.05, DEFAULT_MIDPOINTS, DEFAULT_THETA_RESOLUTION).map_err(|e| e.to_string())?;
    ensure(a.theta > 0.0, || format!("l4 theta {}", a.theta))?;
    let w = &a.witness;
    let again = line_angle(&w.p, &(w.chord.p2 - w.chord.p1));
    ensure((again - a.theta).abs() <= 1e-9, || format!("witness angle {again} vs {}", a.theta))?;
    ensure(a.theta == b.theta && w.p == b.witness.p && w.chord == b.witness.chord, || "witness not reproducible".into())?;
    let mut min_jump = f64::INFINITY;
    let mut max_round = 0;
    for h in builtin_heuristics(&l4) {
        let out = discontinuity_witness(&l4, |p| h.chord(p), 0.1, 256).map_err(|e| format!("{}: {e}", h.name))?;
        let w = out.witness().ok_or_else(|| format!("{}: {out:?}", h.name))?;
        ensure(w.jump >= 0.5 && w.round < SHRINK_ROUNDS, || format!("{}: jump {}", h.name, w.jump))?;
        min_jump = min_jump.min(w.jump);
        max_round = max_round.max(w.round);
    }
    Ok(format!(
        "disk {:.9}, l4 {:.6} rad at p = {}, 20/20 heuristics defeated (min jump {min_jump:.3}, last round {max_round})",
        t.theta, a.theta, w.p
    ))
}

fn degree_obstruction() -> Outcome {
    let mut rng = sampling::rng(77);
    for i in 0..100u64 {
        let k = rng.gen_range(3..=12);
        let poly = random_polygon(&mut rng, k).map_err(|e| e.to_string())?;
        let motion = if i % 2 == 0 { EdgeMotion::Monotone } else { EdgeMotion::Excursion };
        let f = vertex_fixing_map(&poly, i, motion).map_err(|e| e.to_string())?;
        let r = fix_extreme_degree_check(&poly, &f).map_err(|e| format!("map {i}: {e}"))?;
        ensure(r.degree == 1 && r.holds, || format!("map {i}: winding {} / {}", r.degree, r.transported_degree))?;
    }
    let disk = ConvexBody::disk();
    let candidates = adversarial_candidates(&disk, 50, 5).map_err(|e| e.to_string())?;
    for (i, c) in candidates.iter().enumerate() {
        let out = convex_decomposition_refuter(&disk, &c.components, &c.lambdas).map_err(|e| e.to_string())?;
        let cert = out.certificate().ok_or_else(|| format!("candidate {i}: {:?}", out.rejection()))?;
        ensure(cert.extreme_point_degree == 1 && cert.radial_degree == 0, || format!("candidate {i}: degrees differ from 1 vs 0"))?;
    }
    Ok("100/100 vertex-fixing maps have winding 1; 50/50 candidates certified (1 vs 0)".into())
}

fn forcing() -> Outcome {
    let bodies = [
        ConvexBody::disk(),
        ConvexBody::lp(4.0, 2).unwrap(),
        ConvexBody::hexagon(),
        ConvexBody::ellipsoid(vec![2.0, 1.0, 0.5]).unwrap(),
    ];
    let mut rng = sampling::rng(5);
    let (mut forced, mut violated) = (0, 0);
    for i in 0..1000 {
        let k = &bodies[i % bodies.len()];
        let s = k.boundary_point(&sampling::random_unit(&mut rng, k.dim())).unwrap();
        let r = lambda_forcing_check(0.5, 0.5, &s, &-s, k).map_err(|e| e.to_string())?;
        ensure(r.outcome == Forcing::Forced, || format!("antipodal pair {s} not forced"))?;
        forced += 1;
        // Unbalanced weights, antipodal pair.
        let a = rng.gen_range(0.0..1.0);
        let r = lambda_forcing_check(a, 1.0 - a, &s, &-s, k).map_err(|e| e.to_string())?;
        ensure(matches!(r.outcome, Forcing::Violated { .. }), || format!("weights ({a}, {}) forced", 1.0 - a))?;
        // Balanced weights, non-antipodal pair.
        let t = k.boundary_point(&sampling::random_unit(&mut rng, k.dim())).unwrap();
        let r = lambda_forcing_check(0.5, 0.5, &s, &t, k).map_err(|e| e.to_string())?;
        ensure(matches!(r.outcome, Forcing::Violated { .. }), || format!("pair {s}, {t} forced"))?;
        violated += 2;
    }
    Ok(format!("{forced} antipodal pairs Forced, {violated} other configurations Violated"))
}

fn random_path(rng: &mut SeededRng, body: &ConvexBody, samples: usize) -> SampledMap {
    let k = rng.gen_range(2..=8);
    let pts: Vec<Vector> = (0..k)
        .map(|_| {
            let v = sampling::random_in_unit_ball(rng, 2);
            let g = body.gauge(&v).unwrap().max(1e-12);
            v * (rng.gen_range(0.0..0.98) / g)
        })
        .collect();
    SampledMap::from_fn(interval_grid(samples), |t| {
        let s = t.x() * (k - 1) as f64;
        let i = (s.floor() as usize).min(k - 2);
        let r = s - i as f64;
        pts[i] * (1.0 - r) + pts[i + 1] * r
    })
    .unwrap()
}

fn paths() -> Outcome {
    let mut worst: f64 = 0.0;
    for (name, body) in [("disk", ConvexBody::disk()), ("l4 ball", ConvexBody::lp(4.0, 2).unwrap())] {
        let mut rng = sampling::rng(6);
        for i in 0..100u64 {
            let f = random_path(&mut rng, &body, 400);
            let avg = two_nonvanishing_average(&body, &f, i).map_err(|e| format!("{name} path {i}: {e}"))?;
            ensure(avg.errors.shell_min_gauge > 1e-6, || format!("{name} path {i}: min gauge {}", avg.errors.shell_min_gauge))?;
            let cert = shell_convex_decomposition(&body, &f, 0.5, i).map_err(|e| format!("{name} path {i}: {e}"))?;
            let sum: f64 = cert.coefficients.iter().sum();
            ensure(cert.errors.sup_reconstruction_error <= 1e-6, || format!("{name} path {i}: reconstruction {:e}", cert.errors.sup_reconstruction_error))?;
            ensure((sum - 1.0).abs() <= 1e-12 && cert.coefficients.iter().all(|c| *c >= 0.0), || format!("{name} path {i}: coefficients {:?}", cert.coefficients))?;
            ensure(cert.errors.sphere_error <= 1e-8, || format!("{name} path {i}: sphere error {:e}", cert.errors.sphere_error))?;
            worst = worst.max(cert.errors.sup_reconstruction_error);
        }
    }
    Ok(format!("200 paths (100 per body) decomposed, max reconstruction {worst:.1e}"))
}

fn approximation() -> Outcome {
    let disk = ConvexBody::disk();
    let mut prev = f64::INFINITY;
    let mut parts = Vec::new();
    for m in [4, 6, 12, 64] {
        let p = polytope_approx(&disk, m).map_err(|e| e.to_string())?;
        let d = hausdorff_distance(&p, HausdorffTarget::Body(&disk), 4096).map_err(|e| e.to_string())?.distance;
        let expect = 1.0 - (PI / m as f64).cos();
        ensure((d - expect).abs() <= 1e-9, || format!("m = {m}: {d} vs {expect}"))?;
        ensure(d < prev, || format!("not monotone at m = {m}"))?;
        prev = d;
        parts.push(format!("m={m} {d:.3e}"));
    }
    let mut rng = sampling::rng(8);
    for i in 0..50 {
        let k = rng.gen_range(3..=12);
        let poly = random_polygon(&mut rng, k).map_err(|e| e.to_string())?;
        let degree = rng.gen_range(-3i64..=3);
        let wobble = rng.gen_range(0.0..1.0);
        let n = 720;
        let (mut domain, mut image) = (Vec::new(), Vec::new());
        for j in 0..n {
            let t = TAU * j as f64 / n as f64;
            domain.push(kmspan::RadialBody::boundary_point(&poly, &Vector::polar(t)).unwrap());
            let s = degree as f64 * t + wobble * (3.0 * t).sin();
            image.push(kmspan::RadialBody::boundary_point(&poly, &Vector::polar(s)).unwrap());
        }
        let f = SphereMapSamples::Loop { domain, image };
        let before = loop_winding(f.image()).map_err(|e| e.to_string())?.winding;
        let moved = radial_transport(&poly, &disk, &f).map_err(|e| e.to_string())?;
        let after = loop_winding(moved.image()).map_err(|e| e.to_string())?.winding;
        ensure(before == degree && after == before, || format!("map {i}: {before} -> {after} (expected {degree})"))?;
    }
    Ok(format!("{}; 50/50 windings invariant under transport", parts.join(", ")))
}

fn four_extreme() -> Outcome {
    let disk = ConvexBody::disk();
    let samples = ball_grid(&disk, 40).unwrap();
    let mut rng = sampling::rng(9);
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let m = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let b = Vector::new2(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
        let w = rng.gen_range(1.0..6.0);
        let raw: Vec<Vector> = samples
            .iter()
            .map(|x| Vector::new2(m[0] * x.x() + m[1] * x.y(), m[2] * x.x() + m[3] * (w * x.y()).sin()) + b)
            .collect();
        let scale = raw.iter().map(Vector::norm).fold(0.0, f64::max).max(1.0);
        let f = SampledMap::new(samples.clone(), raw.iter().map(|v| *v / scale).collect()).unwrap();
        let cert = decompose_four_extreme(&disk, &f).map_err(|e| format!("map {i}: {e}"))?;
        ensure(cert.components.len() <= 4, || format!("map {i}: {} components", cert.components.len()))?;
        ensure(cert.errors.sup_reconstruction_error <= 1e-7, || format!("map {i}: reconstruction {:e}", cert.errors.sup_reconstruction_error))?;
        ensure(cert.errors.sphere_error <= 1e-8, || format!("map {i}: sphere error {:e}", cert.errors.sphere_error))?;
        worst = worst.max(cert.errors.sup_reconstruction_error);
    }
    Ok(format!("50 maps, at most 4 unit-gauge components, max reconstruction {worst:.1e}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("three-term decomposition", three_term),
        ("chord solver vs brute-force scan", chord_oracle),
        ("theta bound and discontinuity witnesses", theta),
        ("degree obstruction", degree_obstruction),
        ("equal-weight forcing", forcing),
        ("path pipeline", paths),
        ("polytope approximation", approximation),
        ("four extreme points", four_extreme),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(detail) => println!("PASS criterion {} ({name}) [{secs:.1}s]: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} ({name}) [{secs:.1}s]: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
