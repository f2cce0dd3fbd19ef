//! Path domains: averages of two nonvanishing maps, and the resulting
//! four-term convex decomposition into sphere-valued maps.

use rayon::prelude::*;

use super::{CertificateKind, DecompositionCertificate, SampledMap};
use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::sampling;
use crate::section::{chord_map, Chord};
use crate::vector::Vector;

const MIN_GAUGE: f64 = 1e-6;
const DIRECTIONS: usize = 16;
const DELTAS: [f64; 4] = [0.5, 0.25, 0.75, 1.0];

fn check_interval(f: &SampledMap) -> Result<()> {
    f.validate()?;
    if f.samples.iter().any(|x| x.dim() != 1) {
        return Err(Error::InvalidSampledMap("path maps need scalar (interval) samples".into()));
    }
    Ok(())
}

/// `(g₊, g₋, min gauge)` for `g± = f ± δ0(1 − ‖f‖)·w`.
fn split(body: &ConvexBody, f: &SampledMap, w: &Vector, delta0: f64) -> Result<(Vec<Vector>, Vec<Vector>, f64)> {
    let mut plus = Vec::with_capacity(f.len());
    let mut minus = Vec::with_capacity(f.len());
    let mut min_gauge = f64::INFINITY;
    for v in &f.values {
        let d = *w * (delta0 * (1.0 - body.gauge(v)?).max(0.0));
        let (a, b) = (*v + d, *v - d);
        min_gauge = min_gauge.min(body.gauge(&a)?).min(body.gauge(&b)?);
        plus.push(a);
        minus.push(b);
    }
    Ok((plus, minus, min_gauge))
}

/// `f = (g₊ + g₋)/2` with `g± = f ± δ0(1 − ‖f‖)·w` for the given unit-gauge
/// direction `w` and `δ0 ∈ (0, 1]`. Both `g±` stay in the unit ball.
pub fn two_nonvanishing_average_with(
    body: &ConvexBody,
    f: &SampledMap,
    w: &Vector,
    delta0: f64,
) -> Result<DecompositionCertificate> {
    check_interval(f)?;
    if !(delta0 > 0.0 && delta0 <= 1.0) {
        return Err(Error::Config(format!("delta0 = {delta0} must lie in (0, 1]")));
    }
    let w = body.boundary_point(w)?;
    let (plus, minus, min_gauge) = split(body, f, &w, delta0)?;
    if !(min_gauge > MIN_GAUGE) {
        let obstructing = obstructions(body, &plus, &minus)?;
        return Err(Error::SearchFailed { obstructing });
    }
    let components = vec![
        SampledMap::new(f.samples.clone(), plus)?,
        SampledMap::new(f.samples.clone(), minus)?,
    ];
    DecompositionCertificate::assemble(
        CertificateKind::Convex,
        vec![0.5, 0.5],
        components,
        f.clone(),
        body,
        serde_json::json!({ "w": w, "delta0": delta0 }),
        None,
    )
}

fn obstructions(body: &ConvexBody, plus: &[Vector], minus: &[Vector]) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, (a, b)) in plus.iter().zip(minus).enumerate() {
        if body.gauge(a)?.min(body.gauge(b)?) <= MIN_GAUGE {
            out.push(i);
        }
    }
    Ok(out)
}

/// Seeded grid search over directions `w` and amplitudes `δ0`, keeping the
/// pair with the largest minimum gauge of `g±`. Fails when no pair keeps
/// both maps above 10⁻⁶, reporting the samples that obstruct the best pair.
pub fn two_nonvanishing_average(body: &ConvexBody, f: &SampledMap, seed: u64) -> Result<DecompositionCertificate> {
    check_interval(f)?;
    let mut rng = sampling::rng(seed);
    let mut candidates = Vec::new();
    for _ in 0..DIRECTIONS {
        let w = body.boundary_point(&sampling::random_unit(&mut rng, body.dim()))?;
        for d in DELTAS {
            candidates.push((w, d));
        }
    }
    let scores = candidates
        .par_iter()
        .map(|(w, d)| split(body, f, w, *d).map(|s| s.2))
        .collect::<Result<Vec<_>>>()?;
    let (best, score) = scores
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, s)| if *s > acc.1 { (i, *s) } else { acc });
    let (w, d) = candidates[best];
    if !(score > MIN_GAUGE) {
        let (plus, minus, _) = split(body, f, &w, d)?;
        return Err(Error::SearchFailed { obstructing: obstructions(body, &plus, &minus)? });
    }
    let mut cert = two_nonvanishing_average_with(body, f, &w, d)?;
    cert.seed = Some(seed);
    Ok(cert)
}

/// Convex decomposition of a path into four sphere-valued maps, each with
/// weight 1/4: the two nonvanishing maps of [`two_nonvanishing_average`],
/// each split by the chord map. Components are unit-gauge, hence valued in
/// every shell `r ≤ ‖·‖ ≤ 1`.
pub fn shell_convex_decomposition(body: &ConvexBody, f: &SampledMap, r: f64, seed: u64) -> Result<DecompositionCertificate> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Config(format!("shell radius r = {r} must lie in (0, 1)")));
    }
    if !body.is_strictly_convex() {
        return Err(Error::NotStrictlyConvex);
    }
    let avg = two_nonvanishing_average(body, f, seed)?;
    let mut components = Vec::with_capacity(4);
    for g in &avg.components {
        let chords = g
            .values
            .par_iter()
            .map(|x| chord_map(body, x).map(|c| Chord::from_midpoint(c.p1, *x)))
            .collect::<Result<Vec<_>>>()?;
        components.push(SampledMap::new(f.samples.clone(), chords.iter().map(|c| c.p1).collect())?);
        components.push(SampledMap::new(f.samples.clone(), chords.iter().map(|c| c.p2).collect())?);
    }
    let mut params = avg.params.clone();
    params["r"] = serde_json::json!(r);
    let cert = DecompositionCertificate::assemble(
        CertificateKind::Convex,
        vec![0.25; 4],
        components,
        f.clone(),
        body,
        params,
        Some(seed),
    )?;
    Ok(cert)
}
