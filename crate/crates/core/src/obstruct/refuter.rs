//! Refuter for claimed convex decompositions of the identity of a planar
//! unit ball into sphere-valued maps.
//!
//! On the boundary every component must fix the extreme points, so its
//! boundary loop has degree one. Shrinking the loop radially through
//! sphere-valued maps ends in a near-constant loop of degree zero. A
//! candidate that passes the pointwise checks on concentric rings therefore
//! exhibits the two incompatible degrees, which is what the certificate
//! records.

use rand::Rng;
use serde::Serialize;

use crate::body::ConvexBody;
use crate::decompose::SampledMap;
use crate::degree::loop_winding;
use crate::error::{Error, Result};
use crate::sampling;
use crate::section::chord_map;
use crate::vector::Vector;

pub const RECONSTRUCTION_TOLERANCE: f64 = 1e-6;
pub const SPHERE_TOLERANCE: f64 = 1e-6;
/// Ring radii of the built-in candidate generators.
pub const CANDIDATE_RINGS: [f64; 5] = [1.0, 0.75, 0.5, 0.25, 0.01];

#[derive(Clone, Debug, Serialize)]
pub struct RingWindings {
    pub t: f64,
    pub windings: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContradictionCertificate {
    pub body: String,
    pub coefficients: Vec<f64>,
    pub components: Vec<SampledMap>,
    /// Index of the component exhibiting the contradiction.
    pub component: usize,
    /// Degree on `∂K` forced by fixing the extreme points (computed).
    pub extreme_point_degree: i64,
    /// Degree at the innermost ring, reached by the radial homotopy (computed).
    pub radial_degree: i64,
    pub center_radius: f64,
    /// Largest distance between values of the component on the innermost ring.
    pub center_spread: f64,
    pub rings: Vec<RingWindings>,
    pub discrepancy: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RefuterCheck {
    Reconstruction,
    SphereValued,
    ExtremePointsFixed,
    Winding,
    CenterLoopNotContracted,
}

#[derive(Clone, Debug, Serialize)]
pub struct Rejection {
    pub check: RefuterCheck,
    pub detail: String,
    pub component: Option<usize>,
    pub sample: Option<usize>,
    pub t: Option<f64>,
    pub value: f64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum RefuterOutcome {
    Certificate(Box<ContradictionCertificate>),
    Rejected(Rejection),
}

impl RefuterOutcome {
    pub fn certificate(&self) -> Option<&ContradictionCertificate> {
        match self {
            RefuterOutcome::Certificate(c) => Some(c),
            RefuterOutcome::Rejected(_) => None,
        }
    }

    pub fn rejection(&self) -> Option<&Rejection> {
        match self {
            RefuterOutcome::Rejected(r) => Some(r),
            RefuterOutcome::Certificate(_) => None,
        }
    }
}

fn check_convex(lambdas: &[f64]) -> Result<()> {
    if lambdas.iter().any(|l| !(*l >= -1e-12 && *l <= 1.0 + 1e-12)) {
        return Err(Error::MalformedInput(format!("coefficients {lambdas:?} are not in [0, 1]")));
    }
    let sum: f64 = lambdas.iter().sum();
    if (sum - 1.0).abs() > 1e-12 {
        return Err(Error::MalformedInput(format!("coefficients sum to {sum}, not 1")));
    }
    Ok(())
}

/// Sample indices grouped by gauge, outermost ring first, each ring in
/// angular order.
fn rings(body: &ConvexBody, samples: &[Vector]) -> Result<Vec<(f64, Vec<usize>)>> {
    let mut by_gauge = samples
        .iter()
        .enumerate()
        .map(|(i, x)| Ok((body.gauge(x)?, i)))
        .collect::<Result<Vec<_>>>()?;
    by_gauge.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut out: Vec<(f64, Vec<usize>)> = Vec::new();
    for (g, i) in by_gauge {
        match out.last_mut() {
            Some((t, idx)) if (*t - g).abs() <= 1e-9 * t.max(1e-3) => idx.push(i),
            _ => out.push((g, vec![i])),
        }
    }
    for (_, idx) in &mut out {
        idx.sort_by(|&a, &b| samples[a].angle().total_cmp(&samples[b].angle()));
    }
    Ok(out)
}

fn is_extreme(body: &ConvexBody, x: &Vector) -> bool {
    match body.as_polytope() {
        Some(p) => p.vertices().iter().any(|v| v.distance(x) <= 1e-9 * p.circumradius()),
        None => body.is_strictly_convex(),
    }
}

fn reject(check: RefuterCheck, detail: String) -> Rejection {
    Rejection { check, detail, component: None, sample: None, t: None, value: 0.0 }
}

/// Runs the reconstruction, sphere, extreme-point and winding checks on a
/// claimed decomposition `id = Σ λᵢ fᵢ` sampled on concentric rings `t·∂K`
/// (the outermost at `t = 1`). Emits a certificate when some component has
/// boundary degree one and degree zero on the innermost ring; otherwise
/// names the first check the input fails.
pub fn convex_decomposition_refuter(body: &ConvexBody, components: &[SampledMap], lambdas: &[f64]) -> Result<RefuterOutcome> {
    if body.dim() != 2 {
        return Err(Error::UnsupportedDimension(body.dim()));
    }
    if components.is_empty() || components.len() != lambdas.len() {
        return Err(Error::MalformedInput(format!(
            "{} components but {} coefficients",
            components.len(),
            lambdas.len()
        )));
    }
    check_convex(lambdas)?;
    let samples = &components[0].samples;
    for (i, c) in components.iter().enumerate() {
        c.validate()?;
        if c.samples != *samples {
            return Err(Error::MalformedInput(format!("component {i} is sampled on different points")));
        }
        if c.values.iter().chain(&c.samples).any(|v| v.dim() != 2) {
            return Err(Error::MalformedInput(format!("component {i} is not planar")));
        }
    }
    let rings = rings(body, samples)?;
    if rings.len() < 2 || (rings[0].0 - 1.0).abs() > 1e-9 {
        return Err(Error::MalformedInput("samples must lie on ∂K and at least one inner ring".into()));
    }
    let ring_of = |k: usize| rings.iter().find(|(_, idx)| idx.contains(&k)).map(|r| r.0);

    // (i) reconstruction
    let mut worst = (0usize, 0.0f64);
    for (k, x) in samples.iter().enumerate() {
        let mut s = Vector::zeros(2);
        for (c, l) in components.iter().zip(lambdas) {
            s += c.values[k] * *l;
        }
        let e = s.distance(x);
        if e > worst.1 {
            worst = (k, e);
        }
    }
    if worst.1 > RECONSTRUCTION_TOLERANCE {
        let t = ring_of(worst.0);
        return Ok(RefuterOutcome::Rejected(Rejection {
            detail: format!("Σλᵢfᵢ misses the identity by {:e} at t = {}", worst.1, t.unwrap_or(f64::NAN)),
            sample: Some(worst.0),
            t,
            value: worst.1,
            ..reject(RefuterCheck::Reconstruction, String::new())
        }));
    }

    // (ii) sphere-valued
    for (i, c) in components.iter().enumerate() {
        for (k, v) in c.values.iter().enumerate() {
            let d = (body.gauge(v)? - 1.0).abs();
            if d > SPHERE_TOLERANCE {
                return Ok(RefuterOutcome::Rejected(Rejection {
                    detail: format!("component {i} has gauge defect {d:e}"),
                    component: Some(i),
                    sample: Some(k),
                    t: ring_of(k),
                    value: d,
                    ..reject(RefuterCheck::SphereValued, String::new())
                }));
            }
        }
    }

    // (iii) extreme points fixed
    let boundary = &rings[0].1;
    let extreme: Vec<usize> = boundary.iter().copied().filter(|&k| is_extreme(body, &samples[k])).collect();
    if extreme.is_empty() {
        return Ok(RefuterOutcome::Rejected(reject(
            RefuterCheck::ExtremePointsFixed,
            "no sampled boundary point is known to be extreme".into(),
        )));
    }
    for (i, c) in components.iter().enumerate() {
        if lambdas[i] <= 0.0 {
            continue;
        }
        for &k in &extreme {
            let d = c.values[k].distance(&samples[k]);
            if d > RECONSTRUCTION_TOLERANCE {
                return Ok(RefuterOutcome::Rejected(Rejection {
                    detail: format!("component {i} moves an extreme point by {d:e}"),
                    component: Some(i),
                    sample: Some(k),
                    t: Some(1.0),
                    value: d,
                    ..reject(RefuterCheck::ExtremePointsFixed, String::new())
                }));
            }
        }
    }

    // (iv) windings along the radial homotopy
    let mut table = Vec::with_capacity(rings.len());
    for (t, idx) in &rings {
        let mut windings = Vec::with_capacity(components.len());
        for (i, c) in components.iter().enumerate() {
            let image: Vec<Vector> = idx.iter().map(|&k| c.values[k]).collect();
            match loop_winding(&image) {
                Ok(w) => windings.push(w.winding),
                Err(e) => {
                    return Ok(RefuterOutcome::Rejected(Rejection {
                        detail: format!("component {i} at t = {t}: {e}"),
                        component: Some(i),
                        t: Some(*t),
                        ..reject(RefuterCheck::Winding, String::new())
                    }))
                }
            }
        }
        table.push(RingWindings { t: *t, windings });
    }
    let (first, last) = (&table[0], &table[table.len() - 1]);
    for (i, w) in first.windings.iter().enumerate() {
        if lambdas[i] > 0.0 && *w != 1 {
            return Ok(RefuterOutcome::Rejected(Rejection {
                detail: format!("component {i} has boundary winding {w}, not 1"),
                component: Some(i),
                t: Some(1.0),
                value: *w as f64,
                ..reject(RefuterCheck::Winding, String::new())
            }));
        }
    }
    // Among contracted components, report the one closest to constant.
    let center = &rings[rings.len() - 1].1;
    let spread = |i: usize| {
        let mut s: f64 = 0.0;
        for &a in center {
            for &b in center {
                s = s.max(components[i].values[a].distance(&components[i].values[b]));
            }
        }
        s
    };
    let Some((i, spread)) = (0..components.len())
        .filter(|&i| lambdas[i] > 0.0 && last.windings[i] == 0)
        .map(|i| (i, spread(i)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
    else {
        return Ok(RefuterOutcome::Rejected(Rejection {
            t: Some(last.t),
            ..reject(
                RefuterCheck::CenterLoopNotContracted,
                format!("no component has winding 0 on the innermost ring t = {}", last.t),
            )
        }));
    };
    Ok(RefuterOutcome::Certificate(Box::new(ContradictionCertificate {
        body: body.label(),
        coefficients: lambdas.to_vec(),
        components: components.to_vec(),
        component: i,
        extreme_point_degree: first.windings[i],
        radial_degree: last.windings[i],
        center_radius: last.t,
        center_spread: spread,
        discrepancy: format!(
            "component {i} fixes the extreme points, so its boundary loop has degree {}; \
             the sphere-valued radial homotopy f(t·x) carries it to degree {} at t = {}",
            first.windings[i], last.windings[i], last.t
        ),
        rings: table,
    })))
}

/// A claimed decomposition of the identity.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub components: Vec<SampledMap>,
    pub lambdas: Vec<f64>,
}

/// `n` points on each ring `t·∂K`, at angles offset by half a step from the axes.
pub fn ring_samples(body: &ConvexBody, ts: &[f64], n: usize) -> Result<Vec<Vector>> {
    let mut out = Vec::with_capacity(ts.len() * n);
    for t in ts {
        for j in 0..n {
            let theta = std::f64::consts::TAU * (j as f64 + 0.5) / n as f64;
            out.push(body.boundary_at(theta)? * *t);
        }
    }
    Ok(out)
}

/// Candidates that satisfy every pointwise check on [`CANDIDATE_RINGS`]:
/// weights `(a/2, a/2, 1 − a)` with `a ∈ [0.9, 0.97]`; on `∂K` all three
/// components are the identity, inside `f₃ ≡ c` is a constant unit vector
/// and `(f₁, f₂)` is the chord bisected by `(x − (1 − a)c)/a`. The
/// discontinuity between the boundary ring and the first inner ring is
/// invisible to pointwise checks; the refuter must expose it by degrees.
pub fn adversarial_candidates(body: &ConvexBody, count: usize, seed: u64) -> Result<Vec<Candidate>> {
    if body.dim() != 2 {
        return Err(Error::UnsupportedDimension(body.dim()));
    }
    if !body.is_strictly_convex() {
        return Err(Error::NotStrictlyConvex);
    }
    let mut rng = sampling::rng(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let a = rng.gen_range(0.9..=0.97);
        let c = body.boundary_point(&sampling::random_unit(&mut rng, 2))?;
        let n = rng.gen_range(96..=256);
        let samples = ring_samples(body, &CANDIDATE_RINGS, n)?;
        let mut values = [Vec::new(), Vec::new(), Vec::new()];
        for x in &samples {
            if (body.gauge(x)? - 1.0).abs() <= 1e-12 {
                for v in &mut values {
                    v.push(*x);
                }
                continue;
            }
            let y = (*x - c * (1.0 - a)) / a;
            let chord = chord_map(body, &y)?;
            values[0].push(chord.p1);
            values[1].push(y * 2.0 - chord.p1);
            values[2].push(c);
        }
        let components = values
            .into_iter()
            .map(|v| SampledMap::new(samples.clone(), v))
            .collect::<Result<Vec<_>>>()?;
        out.push(Candidate { components, lambdas: vec![a / 2.0, a / 2.0, 1.0 - a] });
    }
    Ok(out)
}

/// Decompositions valid only on `∂K`: each component sends `x` to a boundary
/// point (its radial projection, turned by an angle vanishing at `t = 1`),
/// with random convex weights. The refuter must reject them by
/// reconstruction in the interior.
pub fn partial_candidates(body: &ConvexBody, count: usize, seed: u64) -> Result<Vec<Candidate>> {
    if body.dim() != 2 {
        return Err(Error::UnsupportedDimension(body.dim()));
    }
    let mut rng = sampling::rng(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let k = rng.gen_range(1..=4);
        let raw: Vec<f64> = (0..k).map(|_| -rng.gen_range(1e-3f64..1.0).ln()).collect();
        let sum: f64 = raw.iter().sum();
        let mut lambdas: Vec<f64> = raw.iter().map(|r| r / sum).collect();
        let rest: f64 = lambdas[1..].iter().sum();
        lambdas[0] = 1.0 - rest;
        let n = rng.gen_range(64..=192);
        let samples = ring_samples(body, &CANDIDATE_RINGS, n)?;
        let mut components = Vec::with_capacity(k);
        for _ in 0..k {
            let turn = rng.gen_range(-1.0..1.0);
            let values = samples
                .iter()
                .map(|x| {
                    let t = body.gauge(x)?;
                    body.boundary_at(x.angle() + turn * (1.0 - t))
                })
                .collect::<Result<Vec<_>>>()?;
            components.push(SampledMap::new(samples.clone(), values)?);
        }
        out.push(Candidate { components, lambdas });
    }
    Ok(out)
}
